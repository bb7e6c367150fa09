//! Equilibrium measure `dμ_V = √((b-x)(x-a)) h(x) dx` of a one-cut field.

mod density;
mod endpoints;
mod laurent;
mod potential_theory;
mod regularity;

use rug::Float;

use crate::potential::Potential;
use crate::{Error, PrecisionConfig, Result};

pub use density::{compute_h, DensityFactor};
pub use endpoints::{endpoint_residuals, jacobi_endpoints_closed, solve_endpoints};
pub use laurent::{endpoint_laurent, local_series, EndpointLaurentData, LocalSeries};
pub use potential_theory::{lagrange_constant, lagrange_constant_at, phi_real, tilde_phi_real};
pub use regularity::{verify_one_cut_regular, GridConfig, RegularityReport};

/// Which end of the support a local object lives at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    /// `a`
    Left,
    /// `b`
    Right,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumConfig {
    pub precision: PrecisionConfig,
    /// Initial Gauss–Chebyshev node count for the endpoint conditions.
    pub quad_nodes: usize,
    pub max_quad_nodes: usize,
    pub max_newton_iter: usize,
    /// Terms kept in the endpoint Laurent series.
    pub taylor_order: usize,
    pub grid: GridConfig,
}

impl Default for EquilibriumConfig {
    fn default() -> Self {
        EquilibriumConfig {
            precision: PrecisionConfig::default(),
            quad_nodes: 512,
            max_quad_nodes: 1 << 16,
            max_newton_iter: 200,
            taylor_order: 8,
            grid: GridConfig::default(),
        }
    }
}

impl EquilibriumConfig {
    pub fn with_precision(precision: PrecisionConfig) -> Self {
        EquilibriumConfig { precision, ..Self::default() }
    }
}

/// Immutable once built; safe to share between threads.
#[derive(Clone, Debug)]
pub struct EquilibriumMeasure {
    potential: Potential,
    a: Float,
    b: Float,
    h: DensityFactor,
    lagrange: Option<Float>,
    report: Option<RegularityReport>,
    config: EquilibriumConfig,
}

impl EquilibriumMeasure {
    /// Solves for the support, builds `h`, checks regularity and, when the
    /// field is regular, evaluates the Lagrange constant.
    ///
    /// A non-regular field is not an error here: the measure is returned with
    /// its report and every downstream operation refuses with
    /// [`Error::NotOneCut`].
    pub fn compute(p: &Potential, cfg: &EquilibriumConfig) -> Result<Self> {
        let (a, b) = solve_endpoints(p, cfg)?;
        let h = compute_h(p, &a, &b);
        let mut m = EquilibriumMeasure { potential: p.clone(), a, b, h, lagrange: None, report: None, config: cfg.clone() };
        let report = verify_one_cut_regular(&m, p, &cfg.grid);
        m.report = Some(report);
        if m.is_regular() {
            m.lagrange = Some(lagrange_constant(&m, p)?);
        }
        Ok(m)
    }

    /// [`EquilibriumMeasure::compute`] followed by [`Self::require_regular`].
    pub fn compute_regular(p: &Potential, cfg: &EquilibriumConfig) -> Result<Self> {
        let m = Self::compute(p, cfg)?;
        m.require_regular()?;
        Ok(m)
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn a(&self) -> &Float {
        &self.a
    }

    pub fn b(&self) -> &Float {
        &self.b
    }

    pub fn h(&self) -> &DensityFactor {
        &self.h
    }

    pub fn prec(&self) -> u32 {
        self.a.prec()
    }

    pub fn config(&self) -> &EquilibriumConfig {
        &self.config
    }

    pub fn center(&self) -> Float {
        Float::with_val(self.prec(), &self.a + &self.b) / 2u32
    }

    pub fn half_width(&self) -> Float {
        Float::with_val(self.prec(), &self.b - &self.a) / 2u32
    }

    /// `ℓ`; `None` when the field failed the regularity checks.
    pub fn lagrange_const(&self) -> Option<&Float> {
        self.lagrange.as_ref()
    }

    pub fn report(&self) -> Option<&RegularityReport> {
        self.report.as_ref()
    }

    pub fn is_regular(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.regular)
    }

    pub fn require_regular(&self) -> Result<()> {
        match &self.report {
            Some(r) if r.regular => Ok(()),
            Some(r) => Err(Error::NotOneCut(r.failures().join("; "))),
            None => Err(Error::NotOneCut("regularity has not been verified".into())),
        }
    }

    /// `√((b-x)(x-a)) h(x)` on `[a, b]`, zero elsewhere.
    pub fn density(&self, x: &Float) -> Float {
        equilibrium_density(self, x)
    }
}

/// `√((b-x)(x-a)) h(x)` on `[a, b]`, zero elsewhere.
pub fn equilibrium_density(m: &EquilibriumMeasure, x: &Float) -> Float {
    let prec = m.prec();
    if x <= m.a() || x >= m.b() {
        return Float::with_val(prec, 0);
    }
    let w = Float::with_val(prec, m.b() - x) * Float::with_val(prec, x - m.a());
    w.sqrt() * m.h().eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::pi;

    fn measure(spec: &str) -> (Potential, EquilibriumMeasure) {
        let p = Potential::parse(spec, 256).unwrap();
        let m = EquilibriumMeasure::compute(&p, &EquilibriumConfig::default()).unwrap();
        (p, m)
    }

    fn close(x: &Float, y: f64, tol: f64) -> bool {
        (x.to_f64() - y).abs() <= tol
    }

    #[test]
    fn semicircle_density_and_report() {
        let (_, m) = measure("poly:0,0,0.5");
        assert!(m.is_regular());
        let at0 = m.density(&Float::with_val(256, 0));
        let expected = Float::with_val(256, 1) / pi(256);
        assert!(Float::with_val(256, at0 - expected).abs() < 1e-60);
        assert_eq!(m.density(m.a()), 0);
        assert_eq!(m.density(m.b()), 0);
        let r = m.report().unwrap();
        assert!(r.normalization_residual < 1e-30);
        let min_h = Float::with_val(256, 1) / (pi(256) * 2u32);
        assert!(Float::with_val(256, &r.h_min - min_h).abs() < 1e-60);
    }

    #[test]
    fn jacobi_density_at_origin() {
        let (_, m) = measure("jacobi:1,2");
        assert!(m.is_regular());
        // ab = -3/5 exactly, so the density at 0 is √(3/5)·5/(2π)
        let expected = (Float::with_val(256, 3) / 5u32).sqrt() * 5u32 / (pi(256) * 2u32);
        let got = m.density(&Float::with_val(256, 0));
        assert!(Float::with_val(256, &got - &expected).abs() < 1e-28);
        assert!(close(&got, 0.616404, 1e-6));
    }

    #[test]
    fn double_well_is_not_regular() {
        for spec in ["poly:0,0,-1,0,0.25", "poly:0,0,-1.5,0,0.25"] {
            let (p, m) = measure(spec);
            assert!(!m.is_regular(), "{spec}");
            assert!(m.lagrange_const().is_none());
            assert!(matches!(endpoint_laurent(&m, &p), Err(Error::NotOneCut(_))));
            assert!(matches!(lagrange_constant(&m, &p), Err(Error::NotOneCut(_))));
        }
    }

    #[test]
    fn semicircle_lagrange_constant() {
        // ∫ log|y| dμ = -1/2 for the semicircle on [-2, 2], so ℓ = 1
        let (p, m) = measure("poly:0,0,0.5");
        let l = m.lagrange_const().unwrap();
        assert!(Float::with_val(256, l - 1u32).abs() < 1e-28);
        let x1 = Float::with_val(256, 1);
        let l1 = lagrange_constant_at(&m, &p, &x1).unwrap();
        assert!(Float::with_val(256, l1 - 1u32).abs() < 1e-28);
    }

    #[test]
    fn lagrange_constant_is_position_independent() {
        for spec in ["poly:0,0,0,0,0.25", "poly:0.1,0.3,-0.2,0.1,0.2", "jacobi:1,2"] {
            let (p, m) = measure(spec);
            let width = Float::with_val(256, m.b() - m.a());
            let x0 = m.center();
            let x1 = Float::with_val(256, m.a() + Float::with_val(256, &width * 0.75f64));
            let x2 = Float::with_val(256, m.a() + Float::with_val(256, &width * 0.1f64));
            let l0 = lagrange_constant_at(&m, &p, &x0).unwrap();
            for x in [x1, x2] {
                let l = lagrange_constant_at(&m, &p, &x).unwrap();
                assert!(Float::with_val(256, &l - &l0).abs() < 1e-20, "{spec}");
            }
        }
    }

    #[test]
    fn semicircle_phi_at_three() {
        // (1/2)∫₂³ √(s²-4) ds = 3√5/4 - log((3+√5)/2)
        let (_, m) = measure("poly:0,0,0.5");
        let v = phi_real(&m, &Float::with_val(256, 3)).unwrap();
        let s5 = Float::with_val(256, 5).sqrt();
        let anti = Float::with_val(256, &s5 * 3u32) / 4u32 - (Float::with_val(256, &s5 + 3u32) / 2u32).ln();
        assert!(Float::with_val(256, &v - &anti).abs() < 1e-28, "{}", v.to_f64());
        assert!(close(&v, 0.7146273, 1e-7));
        assert_eq!(phi_real(&m, m.b()).unwrap(), 0);
        assert!(matches!(phi_real(&m, &Float::with_val(256, 0)), Err(Error::Domain(_))));
        let t = tilde_phi_real(&m, &Float::with_val(256, -3)).unwrap();
        assert!(Float::with_val(256, &t - &v).abs() < 1e-28);
    }

    #[test]
    fn symmetric_field_invariants() {
        let (p, m) = measure("poly:0,0,0.3,0,0.25");
        assert!(Float::with_val(256, m.a() + m.b()).abs() < 1e-25);
        let d = endpoint_laurent(&m, &p).unwrap();
        assert!(Float::with_val(256, &d.a0 - &d.b0).abs() < 1e-25);
        assert!(Float::with_val(256, &d.a1 + &d.b1).abs() < 1e-25);
    }
}
