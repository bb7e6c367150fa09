//! One function per subcommand. Data goes to the writer passed in;
//! diagnostics go to standard error.

use std::io::{Read, Write};

use anyhow::{bail, Context, Result};
use onecut::asymptotics::{fit_inverse_powers, verify_theorem, ExpansionFit, VerificationConfig, VerificationReport};
use onecut::equilibrium::{endpoint_laurent, EquilibriumConfig, EquilibriumMeasure};
use onecut::potential::Potential;
use onecut::recurrence::{compute_recurrence_for, jacobi_recurrence_closed, RecurrenceConfig, RecurrenceTable};
use onecut::rh_expansion::{beta1_closed, beta1_from_data, r1_moments_from, PauliCoefficients};
use onecut::{fmt_compact, fmt_float, Complex, Float};
use serde::Serialize;

use crate::config::{Column, Format, RunConfig};

/// Whether the command's own checks passed; decides exit code 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Serialize)]
pub struct Metadata {
    pub potential: Option<String>,
    pub precision_bits: u32,
    pub node_count: usize,
    pub tool_version: &'static str,
}

fn metadata(cfg: &RunConfig, node_count: usize) -> Metadata {
    Metadata {
        potential: cfg.potential.as_ref().map(Potential::to_string),
        precision_bits: cfg.precision.bits,
        node_count,
        tool_version: env!("CARGO_PKG_VERSION"),
    }
}

fn s(x: &Float) -> String {
    fmt_compact(x)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_meta(cfg: &RunConfig, meta: &Metadata) -> Result<()> {
    if let Some(path) = &cfg.meta_out {
        let text = serde_json::to_string_pretty(meta)? + "\n";
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn potential(cfg: &RunConfig) -> &Potential {
    cfg.potential.as_ref().expect("validated configuration carries a potential")
}

fn measure(cfg: &RunConfig) -> Result<EquilibriumMeasure> {
    Ok(EquilibriumMeasure::compute(potential(cfg), &EquilibriumConfig::with_precision(cfg.precision))?)
}

fn regular_measure(cfg: &RunConfig) -> Result<EquilibriumMeasure> {
    let m = measure(cfg)?;
    m.require_regular()?;
    Ok(m)
}

#[derive(Serialize)]
struct Diagnostics {
    h_min: String,
    h_min_at: String,
    h_max: String,
    phi_min: String,
    tilde_phi_min: String,
    normalization_residual: String,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct EqmOutput {
    a: String,
    b: String,
    h_kind: &'static str,
    h_coeffs: Vec<String>,
    lagrange: Option<String>,
    regular: bool,
    diagnostics: Option<Diagnostics>,
    metadata: Metadata,
}

pub fn eqm(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let m = measure(cfg)?;
    let diagnostics = m.report().map(|r| Diagnostics {
        h_min: s(&r.h_min),
        h_min_at: s(&r.h_min_at),
        h_max: s(&r.h_max),
        phi_min: s(&r.phi_min),
        tilde_phi_min: s(&r.tilde_phi_min),
        normalization_residual: s(&r.normalization_residual),
        failures: r.failures(),
    });
    let meta = metadata(cfg, m.config().quad_nodes);
    write_meta(cfg, &meta)?;
    let doc = EqmOutput {
        a: s(m.a()),
        b: s(m.b()),
        h_kind: m.h().kind_name(),
        h_coeffs: m.h().coefficients().iter().map(s).collect(),
        lagrange: m.lagrange_const().map(s),
        regular: m.is_regular(),
        diagnostics,
        metadata: meta,
    };
    emit_json(out, &doc)?;
    Ok(Outcome::Pass)
}

fn recurrence(cfg: &RunConfig, m: &EquilibriumMeasure) -> Result<RecurrenceTable> {
    Ok(compute_recurrence_for(m, cfg.n_max, &RecurrenceConfig::with_precision(cfg.precision))?)
}

#[derive(Serialize)]
struct RecRow {
    n: usize,
    a_nn: String,
    b_nn: String,
}

#[derive(Serialize)]
struct RecOutput {
    entries: Vec<RecRow>,
    metadata: Metadata,
}

pub fn rec(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let m = regular_measure(cfg)?;
    let table = recurrence(cfg, &m)?;
    let meta = metadata(cfg, table.node_count);
    write_meta(cfg, &meta)?;
    let digits = cfg.precision.digits_target as usize;
    let rows: Vec<RecRow> =
        table.entries.iter().map(|e| RecRow { n: e.n, a_nn: fmt_float(&e.a_nn, digits), b_nn: fmt_float(&e.b_nn, digits) }).collect();
    match cfg.format {
        Format::Json => emit_json(out, &RecOutput { entries: rows, metadata: meta })?,
        _ => {
            writeln!(out, "n,a_nn,b_nn")?;
            for r in rows {
                writeln!(out, "{},{},{}", r.n, r.a_nn, r.b_nn)?;
            }
        }
    }
    Ok(Outcome::Pass)
}

/// A 2×2 matrix in the basis `{I, σ₁, σ₂, σ₃}`; each entry is `[re, im]`.
#[derive(Serialize)]
struct PauliJson {
    #[serde(rename = "I")]
    identity: [String; 2],
    sigma1: [String; 2],
    sigma2: [String; 2],
    sigma3: [String; 2],
}

fn pauli_json(p: &PauliCoefficients) -> PauliJson {
    let c = |z: &Complex| [s(z.real()), s(z.imag())];
    PauliJson { identity: c(&p.ci), sigma1: c(&p.c1), sigma2: c(&p.c2), sigma3: c(&p.c3) }
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct RhOutput {
    beta1_closed: String,
    beta1_via_R: String,
    A0: String,
    A1: String,
    B0: String,
    B1: String,
    R11: PauliJson,
    R12: PauliJson,
    metadata: Metadata,
}

pub fn rh(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let m = regular_measure(cfg)?;
    let data = endpoint_laurent(&m, potential(cfg))?;
    let r = r1_moments_from(&data, m.a(), m.b());
    let via = beta1_from_data(&data, m.a(), m.b())?;
    let closed = beta1_closed(&m)?;
    let meta = metadata(cfg, m.config().quad_nodes);
    write_meta(cfg, &meta)?;
    let doc = RhOutput {
        beta1_closed: s(&closed),
        beta1_via_R: s(&via),
        A0: s(&data.a0),
        A1: s(&data.a1),
        B0: s(&data.b0),
        B1: s(&data.b1),
        R11: pauli_json(&r.r11),
        R12: pauli_json(&r.r12),
        metadata: meta,
    };
    emit_json(out, &doc)?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct FitJson {
    window: [usize; 2],
    powers: Vec<u32>,
    coefficients: Vec<String>,
    uncertainty: Vec<String>,
    residual_max: String,
    condition: String,
}

fn fit_json(f: &ExpansionFit) -> FitJson {
    FitJson {
        window: [f.window.0, f.window.1],
        powers: f.powers.clone(),
        coefficients: f.coefficients.iter().map(s).collect(),
        uncertainty: f.uncertainty.iter().map(|u| fmt_float(u, 3)).collect(),
        residual_max: fmt_float(&f.residual_max, 6),
        condition: fmt_float(&f.condition, 6),
    }
}

/// Reads the CSV written by `rec`.
type Sequence = Vec<(usize, Float)>;

pub fn parse_rec_csv(text: &str, prec: u32) -> Result<(Sequence, Sequence)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == "n,a_nn,b_nn" => {}
        Some(h) => bail!("expected header `n,a_nn,b_nn`, got `{h}`"),
        None => bail!("empty recurrence table"),
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            bail!("row {}: expected 3 fields, got {}", i + 2, fields.len());
        }
        let n: usize = fields[0].parse().with_context(|| format!("row {}: bad index `{}`", i + 2, fields[0]))?;
        let value = |t: &str| -> Result<Float> {
            Float::parse(t).map(|v| Float::with_val(prec, v)).map_err(|e| anyhow::anyhow!("row {}: bad value `{t}`: {e}", i + 2))
        };
        a.push((n, value(fields[1])?));
        b.push((n, value(fields[2])?));
    }
    if a.is_empty() {
        bail!("recurrence table has no rows");
    }
    Ok((a, b))
}

#[derive(Serialize)]
struct FitOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<FitJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<FitJson>,
    metadata: Metadata,
}

pub fn fit(cfg: &RunConfig, input: &mut dyn Read, out: &mut dyn Write) -> Result<Outcome> {
    let mut text = String::new();
    match &cfg.input {
        Some(path) => text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => {
            input.read_to_string(&mut text).context("reading standard input")?;
        }
    }
    let (a_seq, b_seq) = parse_rec_csv(&text, cfg.precision.bits)?;
    let n_max = a_seq.iter().map(|e| e.0).max().unwrap_or(0);
    let window = cfg.window.unwrap_or((n_max / 2, n_max));
    let run = |seq: &[(usize, Float)], default: &[u32]| -> Result<FitJson> {
        let powers = cfg.powers.clone().unwrap_or_else(|| default.to_vec());
        Ok(fit_json(&fit_inverse_powers(seq, &powers, window)?))
    };
    let a = matches!(cfg.column, Column::A | Column::Both).then(|| run(&a_seq, &[0, 1, 2, 3, 4])).transpose()?;
    let b = matches!(cfg.column, Column::B | Column::Both).then(|| run(&b_seq, &[0, 1, 2, 3])).transpose()?;
    let meta = metadata(cfg, 0);
    write_meta(cfg, &meta)?;
    emit_json(out, &FitOutput { a, b, metadata: meta })?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct RichardsonJson {
    beta0: String,
    beta1: String,
    consistent: bool,
}

#[derive(Serialize)]
struct VerifyOutput {
    window: [usize; 2],
    a_limit_expected: String,
    a_limit_fitted: String,
    a_limit_pass: bool,
    b_limit_expected: String,
    b_limit_fitted: String,
    b_limit_pass: bool,
    beta1_expected: String,
    beta1_fitted: String,
    beta1_pass: bool,
    odd_alpha_max: String,
    odd_alpha_bound: String,
    odd_alpha_pass: bool,
    a_fit: FitJson,
    b_fit: FitJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    richardson: Option<RichardsonJson>,
    pass: bool,
    metadata: Metadata,
}

fn report_table(r: &VerificationReport) -> String {
    let mut t = format!("{:<10} {:>24} {:>24}  {}\n", "check", "expected", "fitted", "result");
    for (name, expected, fitted, pass) in r.rows() {
        t += &format!(
            "{:<10} {:>24} {:>24}  {}\n",
            name,
            fmt_float(expected, 12),
            fmt_float(fitted, 12),
            if pass { "pass" } else { "FAIL" }
        );
    }
    t += &format!("overall: {}\n", if r.pass { "pass" } else { "FAIL" });
    t
}

pub fn verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let m = regular_measure(cfg)?;
    let table = recurrence(cfg, &m)?;
    let vcfg = VerificationConfig {
        window: cfg.window,
        limit_tol: cfg.tol("limit"),
        beta1_tol: cfg.tol("beta1"),
        odd_alpha_rel: cfg.tol("odd_alpha"),
        richardson: cfg.richardson,
        ..VerificationConfig::default()
    };
    let report = verify_theorem(potential(cfg), &m, &table, &vcfg)?;
    if let Some(path) = &cfg.plot {
        let mut text = String::from("# n  b_nn - beta0_fit\n");
        for (n, b) in table.b_sequence() {
            text += &format!("{n} {}\n", fmt_float(&(b - &report.b_limit_fitted), 12));
        }
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let meta = metadata(cfg, table.node_count);
    write_meta(cfg, &meta)?;
    let table_text = report_table(&report);
    match cfg.format {
        Format::Table => write!(out, "{table_text}")?,
        _ => {
            eprint!("{table_text}");
            let doc = VerifyOutput {
                window: [report.window.0, report.window.1],
                a_limit_expected: s(&report.a_limit_expected),
                a_limit_fitted: s(&report.a_limit_fitted),
                a_limit_pass: report.a_limit_pass,
                b_limit_expected: s(&report.b_limit_expected),
                b_limit_fitted: s(&report.b_limit_fitted),
                b_limit_pass: report.b_limit_pass,
                beta1_expected: s(&report.beta1_expected),
                beta1_fitted: s(&report.beta1_fitted),
                beta1_pass: report.beta1_pass,
                odd_alpha_max: fmt_float(&report.odd_alpha_max, 6),
                odd_alpha_bound: fmt_float(&report.odd_alpha_bound, 6),
                odd_alpha_pass: report.odd_alpha_pass,
                a_fit: fit_json(&report.a_fit),
                b_fit: fit_json(&report.b_fit),
                richardson: report.richardson.as_ref().map(|r| RichardsonJson {
                    beta0: s(&r.beta0),
                    beta1: s(&r.beta1),
                    consistent: r.consistent,
                }),
                pass: report.pass,
                metadata: meta,
            };
            emit_json(out, &doc)?;
        }
    }
    Ok(if report.pass { Outcome::Pass } else { Outcome::Fail })
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct JacobiOutput {
    A: String,
    B: String,
    n_max: usize,
    max_rel_error: String,
    window: [usize; 2],
    beta0_expected: String,
    beta0_fitted: String,
    beta1_closed: String,
    beta1_fitted: String,
    beta2_expected: String,
    beta2_fitted: String,
    recurrence_pass: bool,
    beta0_pass: bool,
    beta1_pass: bool,
    pass: bool,
    metadata: Metadata,
}

pub fn jacobi_check(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let (ra, rb) = match potential(cfg) {
        Potential::Jacobi { right, left } => (right.clone(), left.clone()),
        _ => unreachable!("jacobi-check builds a Jacobi field"),
    };
    let m = regular_measure(cfg)?;
    let table = recurrence(cfg, &m)?;
    let prec = cfg.precision.bits;
    let mut worst = Float::with_val(prec, 0);
    for e in &table.entries {
        let (a, b) = jacobi_recurrence_closed(&ra, &rb, e.n);
        let ea = Float::with_val(prec, &e.a_nn - &a).abs() / a.abs();
        let eb = if b.is_zero() { Float::with_val(prec, e.b_nn.abs_ref()) } else { Float::with_val(prec, &e.b_nn - &b).abs() / b.abs() };
        worst = worst.max(&ea).max(&eb);
    }
    let window = cfg.window.unwrap_or(((cfg.n_max / 4).max(1), cfg.n_max));
    let fit = fit_inverse_powers(&table.b_sequence(), &[0, 1, 2, 3], window)?;
    // b_nn = β₀ / (1 + 2/(sn)), s = 2 + A + B, so β₀ = (B²-A²)/s², β₂ = β₀·4/s²
    let sum = Float::with_val(prec, &ra + &rb) + 2u32;
    let s2 = Float::with_val(prec, sum.square_ref());
    let beta0 = (Float::with_val(prec, rb.square_ref()) - Float::with_val(prec, ra.square_ref())) / &s2;
    let beta2 = Float::with_val(prec, &beta0 * 4u32) / &s2;
    let beta1 = beta1_closed(&m)?;
    let diff = |x: &Float, y: &Float| Float::with_val(prec, x - y).abs().to_f64();
    let recurrence_pass = worst.to_f64() <= cfg.tol("jacobi_rel");
    let beta0_pass = diff(&fit.coefficients[0], &beta0) <= cfg.tol("limit");
    let beta1_pass = diff(&fit.coefficients[1], &beta1) <= cfg.tol("beta1");
    let pass = recurrence_pass && beta0_pass && beta1_pass;
    let meta = metadata(cfg, table.node_count);
    write_meta(cfg, &meta)?;
    let doc = JacobiOutput {
        A: s(&ra),
        B: s(&rb),
        n_max: cfg.n_max,
        max_rel_error: fmt_float(&worst, 6),
        window: [window.0, window.1],
        beta0_expected: s(&beta0),
        beta0_fitted: s(&fit.coefficients[0]),
        beta1_closed: s(&beta1),
        beta1_fitted: s(&fit.coefficients[1]),
        beta2_expected: s(&beta2),
        beta2_fitted: s(&fit.coefficients[2]),
        recurrence_pass,
        beta0_pass,
        beta1_pass,
        pass,
        metadata: meta,
    };
    emit_json(out, &doc)?;
    Ok(if pass { Outcome::Pass } else { Outcome::Fail })
}
