//! Discretizations of the weight `e^{-nV}`.

use rug::Float;

use crate::equilibrium::{phi_real, tilde_phi_real, EquilibriumMeasure};
use crate::potential::Potential;
use crate::precision::pi;
use crate::quadrature::GaussRule;
use crate::Result;

/// Where the weight is sampled.
#[derive(Clone, Debug)]
pub(crate) enum Domain {
    /// Truncated real line `[lo, hi]`.
    Line { lo: Float, hi: Float },
    /// `(-1, 1)` through `x = cos θ`.
    Jacobi,
}

#[derive(Clone, Debug)]
pub(crate) struct Discretization {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

/// Truncation of the real line for index `n`.
///
/// Outside the support, `π_k² e^{-nV}` (k ≤ n) is bounded relative to its
/// bulk size by `e^{-2nφ}` on the right and `e^{-2nφ̃}` on the left, so the
/// line is cut where `2nφ` (resp. `2nφ̃`) reaches `threshold`.
pub(crate) fn line_domain(m: &EquilibriumMeasure, n: usize, threshold: f64) -> Result<Domain> {
    let prec = m.prec();
    let target = threshold / (2.0 * n as f64);
    let width = Float::with_val(prec, m.b() - m.a());
    let hi = outward(&width, target, |d| phi_real(m, &Float::with_val(prec, m.b() + d)))?;
    let lo = outward(&width, target, |d| tilde_phi_real(m, &Float::with_val(prec, m.a() - d)))?;
    let mut hi = hi + m.b();
    let mut lo = Float::with_val(prec, m.a() - &lo);
    if m.potential().is_even() {
        let r = Float::with_val(prec, hi.abs_ref()).max(&Float::with_val(prec, lo.abs_ref()));
        hi = r.clone();
        lo = -r;
    }
    Ok(Domain::Line { lo, hi })
}

/// Smallest offset `d` (to 1% relative) with `f(d) ≥ target`, for increasing `f`.
fn outward<F>(width: &Float, target: f64, f: F) -> Result<Float>
where
    F: Fn(&Float) -> Result<Float>,
{
    let prec = width.prec();
    let mut hi = Float::with_val(prec, width / 8u32);
    let mut lo = Float::with_val(prec, 0);
    let mut guard = 0;
    while f(&hi)?.to_f64() < target {
        lo = hi.clone();
        hi *= 2u32;
        guard += 1;
        if guard > 200 {
            return Err(crate::Error::Convergence("weight tail does not decay".into()));
        }
    }
    while Float::with_val(prec, &hi - &lo) > Float::with_val(prec, &hi * 0.01f64) {
        let mid = Float::with_val(prec, &hi + &lo) / 2u32;
        if f(&mid)?.to_f64() < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Composite Gauss–Legendre discretization with `panels` equal panels.
pub(crate) fn discretize(p: &Potential, domain: &Domain, n: usize, panels: usize, rule: &GaussRule) -> Result<Discretization> {
    let prec = rule.nodes[0].prec();
    let (lo, hi) = match domain {
        Domain::Line { lo, hi } => (lo.clone(), hi.clone()),
        Domain::Jacobi => (Float::with_val(prec, 0), pi(prec)),
    };
    let step = Float::with_val(prec, &hi - &lo) / panels as u32;
    let mut nodes = Vec::with_capacity(panels * rule.len());
    let mut log_weights = Vec::with_capacity(panels * rule.len());
    let mut quad = Vec::with_capacity(panels * rule.len());
    for k in 0..panels {
        let a = Float::with_val(prec, &step * k as u32) + &lo;
        let b = if k + 1 == panels { hi.clone() } else { Float::with_val(prec, &step * (k + 1) as u32) + &lo };
        for (t, w) in rule.mapped(&a, &b) {
            match (domain, p) {
                (Domain::Jacobi, Potential::Jacobi { right, left }) => {
                    // 1 - cos θ = 2 sin²(θ/2), 1 + cos θ = 2 cos²(θ/2)
                    let half = Float::with_val(prec, &t / 2u32);
                    let (s, c) = half.sin_cos(Float::new(prec));
                    let one_minus = s.square() * 2u32;
                    let one_plus = c.square() * 2u32;
                    let lw =
                        (Float::with_val(prec, one_minus.ln_ref()) * right + Float::with_val(prec, one_plus.ln_ref()) * left) * n as u32;
                    let jac = Float::with_val(prec, t.sin_ref());
                    nodes.push(t.cos());
                    log_weights.push(lw);
                    quad.push(w * jac);
                }
                _ => {
                    let lw = -(p.eval_v(&t)? * n as u32);
                    nodes.push(t);
                    log_weights.push(lw);
                    quad.push(w);
                }
            }
        }
    }
    // scale so the largest weight factor is one
    let top = log_weights.iter().fold(Float::with_val(prec, f64::NEG_INFINITY), |acc, v| acc.max(v));
    let weights = log_weights.into_iter().zip(quad).map(|(lw, q)| (lw - &top).exp() * q).collect();
    Ok(Discretization { nodes, weights })
}
