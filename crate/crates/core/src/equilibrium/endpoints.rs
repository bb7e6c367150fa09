//! Support endpoints from the two moment conditions
//!
//! ```text
//! (1/2π) ∫_a^b V'(s) / √((s-a)(b-s)) ds = 0
//! (1/2π) ∫_a^b s V'(s) / √((s-a)(b-s)) ds = 1
//! ```
//!
//! evaluated by Gauss–Chebyshev quadrature after `s = c + r t`, so that each
//! integral becomes `(1/2M) Σ_j f(s_j)` over first-kind Chebyshev points.

use rug::ops::Pow;
use rug::Float;

use super::EquilibriumConfig;
use crate::potential::Potential;
use crate::quadrature::chebyshev_first_kind;
use crate::{Error, Result};

struct Residual {
    f: [Float; 2],
    jac: [[Float; 2]; 2],
}

fn residual(p: &Potential, a: &Float, b: &Float, nodes: &[Float], with_jacobian: bool) -> Result<Residual> {
    let prec = a.prec();
    let m = nodes.len() as u32;
    let c = Float::with_val(prec, a + b) / 2u32;
    let r = Float::with_val(prec, b - a) / 2u32;
    let zero = || Float::with_val(prec, 0);
    let mut f = [zero(), zero()];
    let mut jac = [[zero(), zero()], [zero(), zero()]];
    for t in nodes {
        let s = Float::with_val(prec, &r * t) + &c;
        let vp = p.eval_vprime(&s)?;
        f[0] += &vp;
        f[1] += Float::with_val(prec, &s * &vp);
        if with_jacobian {
            let vpp = p.eval_vsecond(&s)?;
            // ∂s/∂a = (1 - t)/2, ∂s/∂b = (1 + t)/2
            let da = Float::with_val(prec, 1 - t) / 2u32;
            let db = Float::with_val(prec, 1 + t) / 2u32;
            let g2 = Float::with_val(prec, &s * &vpp) + &vp;
            jac[0][0] += Float::with_val(prec, &vpp * &da);
            jac[0][1] += Float::with_val(prec, &vpp * &db);
            jac[1][0] += Float::with_val(prec, &g2 * &da);
            jac[1][1] += Float::with_val(prec, &g2 * &db);
        }
    }
    let scale = 2 * m;
    for v in f.iter_mut() {
        *v /= scale;
    }
    f[1] -= 1u32;
    for row in jac.iter_mut() {
        for v in row.iter_mut() {
            *v /= scale;
        }
    }
    Ok(Residual { f, jac })
}

fn norm(f: &[Float; 2]) -> Float {
    Float::with_val(f[0].prec(), f[0].abs_ref()) + Float::with_val(f[1].prec(), f[1].abs_ref())
}

/// Residuals of both endpoint conditions at `(a, b)` with `m` quadrature
/// nodes; the second is reported as `(...) - 1`.
pub fn endpoint_residuals(p: &Potential, a: &Float, b: &Float, m: usize) -> Result<[Float; 2]> {
    let nodes = chebyshev_first_kind(m, a.prec());
    Ok(residual(p, a, b, &nodes, false)?.f)
}

/// Closed-form support of the varying Jacobi weight:
/// `(B² - A² ± 4√((1+A+B)(1+A)(1+B))) / (2+A+B)²`.
pub fn jacobi_endpoints_closed(big_a: &Float, big_b: &Float) -> (Float, Float) {
    let prec = big_a.prec();
    let s = Float::with_val(prec, big_a + big_b);
    let root = (Float::with_val(prec, &s + 1u32) * Float::with_val(prec, big_a + 1u32) * Float::with_val(prec, big_b + 1u32)).sqrt() * 4u32;
    let diff = Float::with_val(prec, big_b.square_ref()) - Float::with_val(prec, big_a.square_ref());
    let den = Float::with_val(prec, &s + 2u32).square();
    let lo = Float::with_val(prec, &diff - &root) / &den;
    let hi = Float::with_val(prec, &diff + &root) / &den;
    (lo, hi)
}

fn initial_guess(p: &Potential) -> (Float, Float) {
    let prec = p.prec();
    match p {
        Potential::Polynomial { coeffs } => {
            let d = coeffs.len() - 1;
            let lead = &coeffs[d];
            let r = (Float::with_val(prec, 2) / lead).pow(Float::with_val(prec, 1) / d as u32);
            (Float::with_val(prec, -&r), r)
        }
        Potential::Jacobi { right, left } => jacobi_endpoints_closed(right, left),
    }
}

fn admissible(p: &Potential, a: &Float, b: &Float) -> bool {
    a < b && a.is_finite() && b.is_finite() && p.admits(a) && p.admits(b)
}

/// Solves the endpoint conditions by damped Newton iteration.
///
/// The quadrature node count starts at `cfg.quad_nodes` and is doubled until
/// the residuals at `M` and `2M` nodes agree to the endpoint tolerance.
pub fn solve_endpoints(p: &Potential, cfg: &EquilibriumConfig) -> Result<(Float, Float)> {
    let prec = cfg.precision.bits.max(p.prec());
    let tol = cfg.precision.attainable(30);
    let newton_floor = cfg.precision.attainable(cfg.precision.working_digits().saturating_sub(6));
    let (mut a, mut b) = initial_guess(p);
    a.set_prec(prec);
    b.set_prec(prec);
    let mut m = cfg.quad_nodes.max(8);
    let mut iterations = 0usize;

    loop {
        let nodes = chebyshev_first_kind(m, prec);
        let mut res = residual(p, &a, &b, &nodes, true)?;
        let mut current = norm(&res.f);
        while current > newton_floor {
            iterations += 1;
            if iterations > cfg.max_newton_iter {
                return Err(Error::Convergence(format!(
                    "endpoint Newton iteration exceeded {} steps (residual {:.3e})",
                    cfg.max_newton_iter,
                    current.to_f64()
                )));
            }
            let [[j00, j01], [j10, j11]] = &res.jac;
            let det = Float::with_val(prec, j00 * j11) - Float::with_val(prec, j01 * j10);
            if det.is_zero() || !det.is_finite() {
                return Err(Error::Convergence("singular Jacobian in endpoint Newton step".into()));
            }
            let da = (Float::with_val(prec, j11 * &res.f[0]) - Float::with_val(prec, j01 * &res.f[1])) / &det;
            let db = (Float::with_val(prec, j00 * &res.f[1]) - Float::with_val(prec, j10 * &res.f[0])) / &det;

            let mut lambda = Float::with_val(prec, 1);
            let mut accepted = None;
            for _ in 0..80 {
                let a_new = Float::with_val(prec, &a - Float::with_val(prec, &da * &lambda));
                let b_new = Float::with_val(prec, &b - Float::with_val(prec, &db * &lambda));
                if admissible(p, &a_new, &b_new) {
                    let trial = residual(p, &a_new, &b_new, &nodes, true)?;
                    let trial_norm = norm(&trial.f);
                    if trial_norm < current {
                        accepted = Some((a_new, b_new, trial, trial_norm));
                        break;
                    }
                }
                lambda /= 2u32;
            }
            match accepted {
                Some((a_new, b_new, trial, trial_norm)) => {
                    a = a_new;
                    b = b_new;
                    res = trial;
                    current = trial_norm;
                }
                // no decrease possible: we are at the rounding floor or stuck
                None => break,
            }
        }
        if current > tol {
            return Err(Error::Convergence(format!("endpoint residual stalled at {:.3e}", current.to_f64())));
        }

        let refined = endpoint_residuals(p, &a, &b, 2 * m)?;
        let drift = Float::with_val(prec, &refined[0] - &res.f[0]).abs() + Float::with_val(prec, &refined[1] - &res.f[1]).abs();
        if drift <= tol {
            return Ok((a, b));
        }
        m *= 2;
        if m > cfg.max_quad_nodes {
            return Err(Error::Convergence(format!("endpoint quadrature not resolved with {} nodes", cfg.max_quad_nodes)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EquilibriumConfig {
        EquilibriumConfig::default()
    }

    #[test]
    fn semicircle_support() {
        let p = Potential::parse("poly:0,0,0.5", 256).unwrap();
        let (a, b) = solve_endpoints(&p, &cfg()).unwrap();
        assert!(Float::with_val(256, &a + 2u32).abs() < 1e-60);
        assert!(Float::with_val(256, &b - 2u32).abs() < 1e-60);
    }

    #[test]
    fn jacobi_closed_form_values() {
        let (a, b) = jacobi_endpoints_closed(&Float::with_val(256, 1), &Float::with_val(256, 2));
        // (3 ∓ 8√6)/25
        assert!((a.to_f64() + 0.663_836_717_690_617).abs() < 1e-14);
        assert!((b.to_f64() - 0.903_836_717_690_617).abs() < 1e-14);
    }

    #[test]
    fn residuals_vanish_at_solution() {
        for spec in ["poly:0,0,0,0,0.25", "poly:0,0,0,0.1,0.25", "jacobi:1,2", "poly:0.3,-0.2,0.4,0.05,0.3"] {
            let p = Potential::parse(spec, 256).unwrap();
            let (a, b) = solve_endpoints(&p, &cfg()).unwrap();
            let r = endpoint_residuals(&p, &a, &b, 1024).unwrap();
            assert!(Float::with_val(256, r[0].abs_ref()) < 1e-30, "{spec}");
            assert!(Float::with_val(256, r[1].abs_ref()) < 1e-30, "{spec}");
        }
    }
}
