//! End-to-end acceptance suite. Runs without the libtest harness so that the
//! one-line verdicts are always printed; exits non-zero if any check fails.

mod common;

use std::time::{Duration, Instant};

use common::{circle_fit, circle_radius, measure, PREC};
use onecut::asymptotics::{fit_inverse_powers, verify_theorem, VerificationConfig};
use onecut::equilibrium::{endpoint_laurent, solve_endpoints, Endpoint, EquilibriumConfig, EquilibriumMeasure};
use onecut::potential::Potential;
use onecut::recurrence::{compute_recurrence, compute_recurrence_for, hankel_oracle, jacobi_recurrence_closed, RecurrenceConfig};
use onecut::rh_expansion::{
    beta1_assembly, beta1_closed, beta1_from_data, beta1_via_r, delta1_laurent, r1_moments_from, LocalExpansion, DEFAULT_DISK_FRACTION,
};
use onecut::{Complex, Float, PrecisionConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn f(x: f64) -> Float {
    Float::with_val(PREC, x)
}

fn abs_diff(x: &Float, y: &Float) -> f64 {
    Float::with_val(PREC, x - y).abs().to_f64()
}

fn rel_diff(x: &Float, y: &Float) -> f64 {
    abs_diff(x, y) / y.to_f64().abs()
}

fn ensure(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn err(e: onecut::Error) -> String {
    e.to_string()
}

fn semicircle_exactness() -> Check {
    let start = Instant::now();
    let p = Potential::parse("poly:0,0,0.5", PREC).unwrap();
    let cfg = EquilibriumConfig::default();
    let (a, b) = solve_endpoints(&p, &cfg).map_err(err)?;
    let endpoint_err = abs_diff(&a, &f(-2.0)).max(abs_diff(&b, &f(2.0)));
    ensure(endpoint_err <= 1e-10, format!("endpoints off by {endpoint_err:e}"))?;

    let table = compute_recurrence(&p, 40, &PrecisionConfig::default()).map_err(err)?;
    let mut worst = 0f64;
    for e in &table.entries {
        worst = worst.max(abs_diff(&e.a_nn, &f(1.0))).max(e.b_nn.to_f64().abs());
    }
    ensure(table.entries.len() == 40 && worst <= 1e-18, format!("recurrence deviates by {worst:e}"))?;

    let m = EquilibriumMeasure::compute_regular(&p, &cfg).map_err(err)?;
    let closed = beta1_closed(&m).map_err(err)?.to_f64().abs();
    let via = beta1_via_r(&m, &p).map_err(err)?.to_f64().abs();
    ensure(closed <= 1e-20 && via <= 1e-20, format!("beta1 closed {closed:e}, via R {via:e}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(30), format!("took {elapsed:?}"))?;
    Ok(format!("endpoint err {endpoint_err:.1e}, max |a-1|,|b| {worst:.1e} for n<=40, {elapsed:.1?}"))
}

fn jacobi_cross_validation() -> Check {
    let start = Instant::now();
    let (p, m) = measure("jacobi:1,2");
    let table = compute_recurrence_for(&m, 64, &RecurrenceConfig::default()).map_err(err)?;
    let mut worst = 0f64;
    for e in table.entries.iter().filter(|e| e.n <= 30) {
        let (a, b) = jacobi_recurrence_closed(&f(1.0), &f(2.0), e.n);
        worst = worst.max(rel_diff(&e.a_nn, &a)).max(rel_diff(&e.b_nn, &b));
    }
    ensure(worst <= 1e-12, format!("closed-form mismatch {worst:e}"))?;

    let fit = fit_inverse_powers(&table.b_sequence(), &[0, 1, 2, 3], (16, 64)).map_err(err)?;
    let b0 = fit.coefficients[0].to_f64();
    let b1 = fit.coefficients[1].to_f64();
    let b2 = fit.coefficients[2].to_f64();
    ensure((b0 - 0.12).abs() <= 1e-6, format!("beta0 fitted {b0}"))?;
    ensure((b1 + 0.048).abs() <= 1e-3, format!("beta1 fitted {b1}"))?;
    ensure((b2 - 0.0192).abs() <= 1e-2, format!("beta2 fitted {b2}"))?;
    let closed = beta1_closed(&m).map_err(err)?;
    ensure(abs_diff(&closed, &f(-0.048)) <= 1e-12, format!("beta1 closed {}", closed.to_f64()))?;
    let _ = p;
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!("rel err {worst:.1e} (n<=30), beta0 {b0:.9}, beta1 {b1:.6}, beta2 {b2:.5}, {elapsed:.1?}"))
}

fn even_power_structure() -> Check {
    let (p, m) = measure("poly:0,0,0,0,0.25");
    let table = compute_recurrence_for(&m, 64, &RecurrenceConfig::default()).map_err(err)?;
    let report = verify_theorem(&p, &m, &table, &VerificationConfig::default()).map_err(err)?;
    let c = &report.a_fit.coefficients;
    let bound = 1e-3 * c[2].to_f64().abs().max(1.0);
    let (c1, c3) = (c[1].to_f64().abs(), c[3].to_f64().abs());
    ensure(c1 <= bound && c3 <= bound, format!("odd coefficients {c1:e}, {c3:e} above {bound:e}"))?;
    // (b-a)²/16 = c²/4 with c⁴ = 16/3, i.e. 1/√3
    let limit = Float::with_val(PREC, 3).sqrt().recip();
    let c0_err = abs_diff(&c[0], &limit);
    ensure(c0_err <= 1e-6, format!("constant term {} vs {}", c[0].to_f64(), limit.to_f64()))?;
    let b_max = table.entries.iter().map(|e| e.b_nn.to_f64().abs()).fold(0f64, f64::max);
    ensure(b_max <= 1e-15, format!("max |b_nn| {b_max:e}"))?;
    Ok(format!("|c1| {c1:.1e}, |c3| {c3:.1e} (bound {bound:.1e}), c0 - 1/sqrt(3) {c0_err:.1e}, max |b| {b_max:.1e}"))
}

fn beta1_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let cfg = EquilibriumConfig::default();
    let mut accepted = 0;
    let mut tried = 0;
    let (mut worst_id, mut worst_im, mut worst_pert) = (0f64, 0f64, 0f64);
    while accepted < 20 {
        tried += 1;
        if tried > 400 {
            return Err(format!("only {accepted} regular quartics in {tried} draws"));
        }
        let coeffs = [0.0, rng.gen_range(-0.5..0.5), rng.gen_range(-0.4..0.8), rng.gen_range(-0.4..0.4), rng.gen_range(0.1..0.6)];
        let p = Potential::polynomial(coeffs.iter().map(|&c| f(c)).collect()).unwrap();
        let m = match EquilibriumMeasure::compute(&p, &cfg) {
            Ok(m) if m.is_regular() => m,
            _ => continue,
        };
        accepted += 1;
        let data = endpoint_laurent(&m, &p).map_err(err)?;
        let via = beta1_from_data(&data, m.a(), m.b()).map_err(err)?;
        let closed = beta1_closed(&m).map_err(err)?;
        worst_id = worst_id.max(abs_diff(&via, &closed));
        let assembled: Complex = beta1_assembly(&r1_moments_from(&data, m.a(), m.b()), m.a(), m.b());
        worst_im = worst_im.max(assembled.imag().to_f64().abs());
        for (sa, sb) in [(1.1, 1.0), (0.9, 1.0), (1.0, 1.1), (1.0, 0.9), (1.1, 0.9), (0.9, 1.1)] {
            let mut moved = data.clone();
            moved.a1 *= sa;
            moved.b1 *= sb;
            let v = beta1_from_data(&moved, m.a(), m.b()).map_err(err)?;
            worst_pert = worst_pert.max(abs_diff(&v, &via));
        }
    }
    ensure(worst_id <= 1e-20, format!("via R vs closed {worst_id:e}"))?;
    ensure(worst_im <= 1e-25, format!("imaginary part {worst_im:e}"))?;
    ensure(worst_pert <= 1e-25, format!("A1/B1 sensitivity {worst_pert:e}"))?;
    Ok(format!("20 quartics ({tried} draws): identity {worst_id:.1e}, imag {worst_im:.1e}, A1/B1 shift {worst_pert:.1e}"))
}

fn asymmetric_end_to_end() -> Check {
    let (p, m) = measure("poly:0,0,0,0.1,0.25");
    let table = compute_recurrence_for(&m, 64, &RecurrenceConfig::default()).map_err(err)?;
    let report = verify_theorem(&p, &m, &table, &VerificationConfig::default()).map_err(err)?;
    let rel = rel_diff(&report.beta1_fitted, &report.beta1_expected);
    ensure(rel <= 1e-2, format!("fitted {} vs closed {}", report.beta1_fitted.to_f64(), report.beta1_expected.to_f64()))?;
    Ok(format!("beta1 fitted {:.8}, closed {:.8}, rel err {rel:.1e}", report.beta1_fitted.to_f64(), report.beta1_expected.to_f64()))
}

fn oracle_equivalence() -> Check {
    let cfg = PrecisionConfig::default();
    let mut worst = 0f64;
    for spec in ["poly:0,0,0.5", "poly:0,0,0,0,0.25", "poly:0,0,0,0.1,0.25", "poly:0.3,-0.2,0.4,0.05,0.3", "jacobi:1,2", "jacobi:0.5,1.5"] {
        let p = Potential::parse(spec, PREC).unwrap();
        let t = compute_recurrence(&p, 8, &cfg).map_err(err)?;
        let o = hankel_oracle(&p, 8, &cfg).map_err(err)?;
        for (x, y) in t.entries.iter().zip(&o.entries) {
            let ea = rel_diff(&x.a_nn, &y.a_nn);
            let scale = y.b_nn.to_f64().abs().max(1e-300);
            let eb = if y.b_nn.to_f64().abs() < 1e-30 { abs_diff(&x.b_nn, &y.b_nn) } else { abs_diff(&x.b_nn, &y.b_nn) / scale };
            worst = worst.max(ea).max(eb);
            ensure(ea <= 1e-10 && eb <= 1e-10, format!("{spec} n={}: {ea:e} {eb:e}", x.n))?;
        }
    }
    Ok(format!("6 fields, n<=8, worst rel err {worst:.1e}"))
}

fn delta1_laurent_consistency() -> Check {
    let mut worst = 0f64;
    for spec in ["poly:0,0,0.5", "poly:0,0,0,0,0.25", "poly:0,0,0,0.1,0.25", "jacobi:1,2"] {
        let (p, m) = measure(spec);
        let parts = delta1_laurent(&m, &p).map_err(err)?;
        let local = LocalExpansion::new(&m, Endpoint::Right, DEFAULT_DISK_FRACTION).map_err(err)?;
        let fit = circle_fit(&local, m.b(), &circle_radius(&m, &local), 64);
        let e = fit.pole2.distance(&parts.right.pole2).to_f64().max(fit.pole1.distance(&parts.right.pole1).to_f64());
        worst = worst.max(e);
        ensure(e <= 1e-8, format!("{spec}: circle fit off by {e:e}"))?;

        for endpoint in [Endpoint::Right, Endpoint::Left] {
            let local = LocalExpansion::new(&m, endpoint, DEFAULT_DISK_FRACTION).map_err(err)?;
            let centre = if endpoint == Endpoint::Right { m.b() } else { m.a() };
            let r = local.disk_radius().to_f64() * 0.5;
            for j in 0..4 {
                let ang = 0.4 + 1.5 * j as f64;
                let z = Complex::with_val(PREC, (Float::with_val(PREC, centre + r * ang.cos()), r * ang.sin()));
                for k in 1..=6 {
                    let d = local.delta(&z, k).map_err(err)?;
                    let ok = if k % 2 == 1 { d.ci.is_zero() && d.c2.is_zero() } else { d.c1.is_zero() && d.c3.is_zero() };
                    ensure(ok, format!("{spec} {endpoint:?}: parity broken at k={k}"))?;
                }
            }
        }
    }
    Ok(format!("4 fields, circle fit err {worst:.1e}, parity exact for k<=6"))
}

fn endpoint_series_self_check() -> Check {
    let mut worst = 0f64;
    for spec in ["poly:0,0,0.5", "poly:0,0,0,0.1,0.25", "poly:0.3,-0.2,0.4,0.05,0.3", "jacobi:1,2"] {
        let (p, m) = measure(spec);
        let data = endpoint_laurent(&m, &p).map_err(err)?;
        let two_pi = Float::with_val(PREC, rug::float::Constant::Pi) * 2u32;
        let a0 = Float::with_val(PREC, 3) / (Float::with_val(PREC, &two_pi * m.h().eval(m.a())));
        let b0 = Float::with_val(PREC, 3) / (Float::with_val(PREC, &two_pi * m.h().eval(m.b())));
        let e = rel_diff(&data.a0, &a0).max(rel_diff(&data.b0, &b0));
        worst = worst.max(e);
        ensure(e <= 1e-20, format!("{spec}: A0/B0 rel err {e:e}"))?;
    }
    let (p, m) = measure("poly:0,0,0.5");
    let data = endpoint_laurent(&m, &p).map_err(err)?;
    let b1 = abs_diff(&data.b1, &(Float::with_val(PREC, 3) / 20u32));
    ensure(b1 <= 1e-18, format!("semicircle B1 off by {b1:e}"))?;
    Ok(format!("A0/B0 worst rel err {worst:.1e}, semicircle B1 err {b1:.1e}"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("semicircle exactness", semicircle_exactness),
        ("jacobi cross-validation", jacobi_cross_validation),
        ("even-power structure of a_nn", even_power_structure),
        ("beta1 identity on random quartics", beta1_identity),
        ("asymmetric end-to-end beta1", asymmetric_end_to_end),
        ("oracle equivalence", oracle_equivalence),
        ("first jump Laurent consistency", delta1_laurent_consistency),
        ("endpoint series self-check", endpoint_series_self_check),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
