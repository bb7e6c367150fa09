use rug::Float;

use super::{fit_inverse_powers, richardson_coefficients, ExpansionFit};
use crate::equilibrium::EquilibriumMeasure;
use crate::potential::Potential;
use crate::recurrence::RecurrenceTable;
use crate::rh_expansion::beta1_closed;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationConfig {
    /// Fit window; `None` means `[n_max/2, n_max]`.
    pub window: Option<(usize, usize)>,
    pub a_powers: Vec<u32>,
    pub b_powers: Vec<u32>,
    /// Absolute tolerance for both limits.
    pub limit_tol: f64,
    /// Absolute tolerance for `β₁`.
    pub beta1_tol: f64,
    /// Odd `a` coefficients must stay below `odd_alpha_rel · max(1, |α₂|)`.
    pub odd_alpha_rel: f64,
    /// Also run Richardson extrapolation on `b_{n,n}` as a cross-check.
    pub richardson: bool,
    pub richardson_order: usize,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig {
            window: None,
            a_powers: vec![0, 1, 2, 3, 4],
            b_powers: vec![0, 1, 2, 3],
            limit_tol: 1e-6,
            beta1_tol: 1e-3,
            odd_alpha_rel: 1e-3,
            richardson: false,
            richardson_order: 8,
        }
    }
}

/// Richardson estimates of `β₀`, `β₁` and whether they agree with the
/// least-squares values within the configured tolerances. Informational;
/// does not enter `pass`.
#[derive(Clone, Debug, PartialEq)]
pub struct RichardsonCheck {
    pub beta0: Float,
    pub beta1: Float,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub window: (usize, usize),
    pub a_fit: ExpansionFit,
    pub b_fit: ExpansionFit,
    pub a_limit_expected: Float,
    pub a_limit_fitted: Float,
    pub a_limit_pass: bool,
    pub b_limit_expected: Float,
    pub b_limit_fitted: Float,
    pub b_limit_pass: bool,
    pub beta1_expected: Float,
    pub beta1_fitted: Float,
    pub beta1_pass: bool,
    pub odd_alpha_max: Float,
    pub odd_alpha_bound: Float,
    pub odd_alpha_pass: bool,
    pub richardson: Option<RichardsonCheck>,
    pub pass: bool,
}

impl VerificationReport {
    /// `(name, expected, fitted, pass)` rows for display.
    pub fn rows(&self) -> Vec<(&'static str, &Float, &Float, bool)> {
        vec![
            ("a_limit", &self.a_limit_expected, &self.a_limit_fitted, self.a_limit_pass),
            ("b_limit", &self.b_limit_expected, &self.b_limit_fitted, self.b_limit_pass),
            ("beta1", &self.beta1_expected, &self.beta1_fitted, self.beta1_pass),
            ("odd_alpha", &self.odd_alpha_bound, &self.odd_alpha_max, self.odd_alpha_pass),
        ]
    }
}

fn within(x: &Float, y: &Float, tol: f64) -> bool {
    Float::with_val(x.prec(), x - y).abs() <= tol
}

/// Fits both diagonal sequences and compares the leading terms with
/// `(b-a)²/16`, `(a+b)/2` and the closed form of `β₁`; the `1/n` and `1/n³`
/// coefficients of the `a` fit test that only even powers occur.
pub fn verify_theorem(
    p: &Potential,
    m: &EquilibriumMeasure,
    table: &RecurrenceTable,
    cfg: &VerificationConfig,
) -> Result<VerificationReport> {
    if m.potential() != p {
        return Err(Error::Argument("equilibrium measure belongs to a different potential".into()));
    }
    if table.potential_spec != p.to_string() {
        return Err(Error::Argument(format!("table was computed for `{}`, not `{p}`", table.potential_spec)));
    }
    m.require_regular()?;
    let n_max = table.n_max();
    let window = cfg.window.unwrap_or((n_max / 2, n_max));
    let prec = m.prec();

    let a_fit = fit_inverse_powers(&table.a_sequence(), &cfg.a_powers, window)?;
    let b_fit = fit_inverse_powers(&table.b_sequence(), &cfg.b_powers, window)?;
    let zero = Float::with_val(prec, 0);
    let coeff = |f: &ExpansionFit, power: u32| f.coefficient(power).cloned().unwrap_or_else(|| zero.clone());

    let width = Float::with_val(prec, m.b() - m.a());
    let a_limit_expected = Float::with_val(prec, width.square_ref()) / 16u32;
    let b_limit_expected = Float::with_val(prec, m.a() + m.b()) / 2u32;
    let beta1_expected = beta1_closed(m)?;

    let a_limit_fitted = coeff(&a_fit, 0);
    let b_limit_fitted = coeff(&b_fit, 0);
    let beta1_fitted = coeff(&b_fit, 1);

    let odd_alpha_max =
        [1u32, 3].iter().map(|&k| Float::with_val(prec, coeff(&a_fit, k).abs_ref())).fold(Float::with_val(prec, 0), |acc, x| acc.max(&x));
    let alpha2 = Float::with_val(prec, coeff(&a_fit, 2).abs_ref());
    let odd_alpha_bound = alpha2.max(&Float::with_val(prec, 1)) * cfg.odd_alpha_rel;

    let a_limit_pass = within(&a_limit_expected, &a_limit_fitted, cfg.limit_tol);
    let b_limit_pass = within(&b_limit_expected, &b_limit_fitted, cfg.limit_tol);
    let beta1_pass = within(&beta1_expected, &beta1_fitted, cfg.beta1_tol);
    let odd_alpha_pass = odd_alpha_max <= odd_alpha_bound;

    let richardson = if cfg.richardson {
        let seq: Vec<(usize, Float)> = table.b_sequence().into_iter().filter(|(n, _)| *n <= window.1).collect();
        let c = richardson_coefficients(&seq, cfg.richardson_order, 2)?;
        let consistent = within(&c[0], &b_limit_fitted, cfg.limit_tol) && within(&c[1], &beta1_fitted, cfg.beta1_tol);
        let mut it = c.into_iter();
        Some(RichardsonCheck { beta0: it.next().unwrap(), beta1: it.next().unwrap(), consistent })
    } else {
        None
    };

    Ok(VerificationReport {
        window,
        a_fit,
        b_fit,
        pass: a_limit_pass && b_limit_pass && beta1_pass && odd_alpha_pass,
        a_limit_expected,
        a_limit_fitted,
        a_limit_pass,
        b_limit_expected,
        b_limit_fitted,
        b_limit_pass,
        beta1_expected,
        beta1_fitted,
        beta1_pass,
        odd_alpha_max,
        odd_alpha_bound,
        odd_alpha_pass,
        richardson,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::EquilibriumConfig;
    use crate::recurrence::compute_recurrence;
    use crate::PrecisionConfig;

    #[test]
    fn semicircle_passes() {
        let p = Potential::parse("poly:0,0,0.5", 256).unwrap();
        let m = EquilibriumMeasure::compute_regular(&p, &EquilibriumConfig::default()).unwrap();
        let t = compute_recurrence(&p, 24, &PrecisionConfig::default()).unwrap();
        let cfg = VerificationConfig { richardson: true, ..VerificationConfig::default() };
        let r = verify_theorem(&p, &m, &t, &cfg).unwrap();
        assert!(r.pass);
        assert_eq!(r.window, (12, 24));
        assert!(within(&r.a_limit_fitted, &Float::with_val(256, 1), 1e-10));
        assert!(within(&r.b_limit_fitted, &Float::with_val(256, 0), 1e-10));
        assert!(r.odd_alpha_max <= 1e-8);
        assert!(r.richardson.unwrap().consistent);
    }

    #[test]
    fn rejects_mismatched_table() {
        let p = Potential::parse("poly:0,0,0.5", 256).unwrap();
        let q = Potential::parse("poly:0,0,0,0,0.25", 256).unwrap();
        let m = EquilibriumMeasure::compute_regular(&p, &EquilibriumConfig::default()).unwrap();
        let t = compute_recurrence(&q, 8, &PrecisionConfig::default()).unwrap();
        assert!(matches!(verify_theorem(&p, &m, &t, &VerificationConfig::default()), Err(Error::Argument(_))));
    }
}
