use rug::Float;

use super::potential_theory::outer_integral_on_grid;
use super::EquilibriumMeasure;
use crate::potential::Potential;
use crate::precision::{pi, pow10};

/// Sampling parameters for [`verify_one_cut_regular`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridConfig {
    /// Points of the uniform grid on `[a, b]` used to bracket the minimum of `h`.
    pub h_points: usize,
    /// Points on each side of the support for the `φ`, `φ̃` sign scan.
    pub outer_points: usize,
    /// Scan extent `X` as a multiple of `b - a`.
    pub outer_extent: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { h_points: 2049, outer_points: 400, outer_extent: 10.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub h_min: Float,
    pub h_min_at: Float,
    pub h_max: Float,
    pub h_positive: bool,
    /// Minimum of `φ` over `(b, b + X]`.
    pub phi_min: Float,
    pub phi_positive: bool,
    /// Minimum of `φ̃` over `[a - X, a)`.
    pub tilde_phi_min: Float,
    pub tilde_phi_positive: bool,
    pub normalization_residual: Float,
    pub normalized: bool,
    pub regular: bool,
}

impl RegularityReport {
    /// Human-readable reasons for a negative verdict.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.h_positive {
            out.push(format!("h is not positive on the support (min {:.6e} at x = {:.6})", self.h_min.to_f64(), self.h_min_at.to_f64()));
        }
        if !self.phi_positive {
            out.push(format!("phi is not positive right of the support (min {:.6e})", self.phi_min.to_f64()));
        }
        if !self.tilde_phi_positive {
            out.push(format!("tilde phi is not positive left of the support (min {:.6e})", self.tilde_phi_min.to_f64()));
        }
        if !self.normalized {
            out.push(format!("density does not integrate to one (residual {:.3e})", self.normalization_residual.to_f64()));
        }
        out
    }
}

/// Checks the three one-cut regularity conditions. Failures are reported,
/// never raised.
pub fn verify_one_cut_regular(m: &EquilibriumMeasure, p: &Potential, grid: &GridConfig) -> RegularityReport {
    let prec = m.prec();
    let digits = m.config().precision.digits_target;

    let (h_min, h_min_at, h_max) = h_extrema(m, grid.h_points.max(3));
    let threshold = pow10(prec, -(digits as i32)) * &h_max;
    let h_positive = h_min > threshold;

    let width = Float::with_val(prec, m.b() - m.a());
    let extent = Float::with_val(prec, &width * grid.outer_extent);
    let (right_reach, left_reach) = match p {
        Potential::Jacobi { .. } => {
            // stay inside (-1, 1)
            let r = Float::with_val(prec, 1 - m.b()) * Float::with_val(prec, 0.999);
            let l = Float::with_val(prec, m.a() + 1u32) * Float::with_val(prec, 0.999);
            (r.min(&extent), l.min(&extent))
        }
        Potential::Polynomial { .. } => (extent.clone(), extent),
    };
    let k = grid.outer_points.max(2);
    let offsets = |reach: &Float| -> Vec<Float> {
        // quadratic clustering towards the endpoint
        (1..=k)
            .map(|i| {
                let s = Float::with_val(prec, i as u32) / k as u32;
                Float::with_val(prec, s.square_ref()) * reach
            })
            .collect()
    };
    let right_grid: Vec<Float> = offsets(&right_reach).into_iter().map(|d| d + m.b()).collect();
    let left_grid: Vec<Float> = offsets(&left_reach).into_iter().map(|d| Float::with_val(prec, m.a() - d)).collect();
    let phi_min = min_of(outer_integral_on_grid(m, true, &right_grid));
    let tilde_phi_min = min_of(outer_integral_on_grid(m, false, &left_grid));
    let phi_positive = phi_min > 0;
    let tilde_phi_positive = tilde_phi_min > 0;

    let normalization_residual = Float::with_val(prec, density_mass(m) - 1u32).abs();
    let normalized = normalization_residual <= m.config().precision.attainable(25);

    let regular = h_positive && phi_positive && tilde_phi_positive && normalized;
    RegularityReport {
        h_min,
        h_min_at,
        h_max,
        h_positive,
        phi_min,
        phi_positive,
        tilde_phi_min,
        tilde_phi_positive,
        normalization_residual,
        normalized,
        regular,
    }
}

fn min_of(values: Vec<Float>) -> Float {
    values.into_iter().reduce(|x, y| if y < x { y } else { x }).expect("non-empty grid")
}

/// Minimum (value and location) and maximum of `h` on `[a, b]`: uniform grid,
/// then golden-section refinement of the smallest sample.
fn h_extrema(m: &EquilibriumMeasure, points: usize) -> (Float, Float, Float) {
    let prec = m.prec();
    let width = Float::with_val(prec, m.b() - m.a());
    let xs: Vec<Float> = (0..points).map(|i| Float::with_val(prec, &width * i as u32) / (points - 1) as u32 + m.a()).collect();
    let values: Vec<Float> = xs.iter().map(|x| m.h().eval(x)).collect();
    let mut imin = 0;
    let mut imax = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[imin] {
            imin = i;
        }
        if *v > values[imax] {
            imax = i;
        }
    }
    let mut lo = xs[imin.saturating_sub(1)].clone();
    let mut hi = xs[(imin + 1).min(points - 1)].clone();
    let mut best = (values[imin].clone(), xs[imin].clone());
    let ratio = (Float::with_val(prec, 5).sqrt() - 1u32) / 2u32;
    for _ in 0..120 {
        let span = Float::with_val(prec, &hi - &lo);
        let x1 = Float::with_val(prec, &hi - Float::with_val(prec, &span * &ratio));
        let x2 = Float::with_val(prec, &lo + Float::with_val(prec, &span * &ratio));
        let f1 = m.h().eval(&x1);
        let f2 = m.h().eval(&x2);
        if f1 < best.0 {
            best = (f1.clone(), x1.clone());
        }
        if f2 < best.0 {
            best = (f2.clone(), x2.clone());
        }
        if f1 < f2 {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    (best.0, best.1, values[imax].clone())
}

/// `∫_a^b √((b-x)(x-a)) h(x) dx` by second-kind Gauss–Chebyshev rules of
/// doubling size.
pub(crate) fn density_mass(m: &EquilibriumMeasure) -> Float {
    let prec = m.prec();
    let tol = m.config().precision.attainable(m.config().precision.working_digits().saturating_sub(8));
    let mut nodes = 64usize;
    let mut previous = chebyshev_second_kind_mass(m, nodes);
    while nodes < 16384 {
        nodes *= 2;
        let current = chebyshev_second_kind_mass(m, nodes);
        if Float::with_val(prec, &current - &previous).abs() <= tol {
            return current;
        }
        previous = current;
    }
    previous
}

fn chebyshev_second_kind_mass(m: &EquilibriumMeasure, nodes: usize) -> Float {
    let prec = m.prec();
    let c = m.center();
    let r = m.half_width();
    let pi = pi(prec);
    let mut acc = Float::with_val(prec, 0);
    for j in 1..=nodes {
        let theta = Float::with_val(prec, &pi * j as u32) / (nodes + 1) as u32;
        let (sin, cos) = theta.sin_cos(Float::new(prec));
        let x = Float::with_val(prec, &r * &cos) + &c;
        acc += sin.square() * m.h().eval(&x);
    }
    acc * pi * r.square() / (nodes + 1) as u32
}
