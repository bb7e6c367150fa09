//! Real-line potential-theoretic quantities: the Lagrange constant and the
//! functions `φ` (right of the support) and `φ̃` (left of it).

use rug::Float;

use super::EquilibriumMeasure;
use crate::potential::Potential;
use crate::precision::pi;
use crate::quadrature::{gauss_legendre, GaussRule};
use crate::{Error, Result};

const LAGRANGE_START_NODES: usize = 128;
const LAGRANGE_MAX_NODES: usize = 8192;

/// `ℓ = 2∫ log|x₀ - y|⁻¹ dμ_V(y) + V(x₀)` at the support midpoint.
pub fn lagrange_constant(m: &EquilibriumMeasure, p: &Potential) -> Result<Float> {
    let x0 = Float::with_val(m.prec(), m.a() + m.b()) / 2u32;
    lagrange_constant_at(m, p, &x0)
}

/// `ℓ` evaluated at an arbitrary `x₀ ∈ [a, b]`.
///
/// With `y = c + r cos θ` the measure becomes `f(θ) dθ` on `[0, π]` with
/// `f` smooth and even. Expanding `f = Σ f_k cos kθ` and using
/// `∫₀^π cos kθ log|cos θ₀ - cos θ| dθ = -π log 2 (k = 0), -(π/k) cos kθ₀`
/// integrates the logarithmic singularity exactly; only the cosine
/// coefficients are approximated. The node count is doubled until two
/// successive values agree.
pub fn lagrange_constant_at(m: &EquilibriumMeasure, p: &Potential, x0: &Float) -> Result<Float> {
    m.require_regular()?;
    if x0 < m.a() || x0 > m.b() {
        return Err(Error::Domain("Lagrange constant is evaluated on the support".into()));
    }
    let prec = m.prec();
    let tol = m.config().precision.attainable(m.config().precision.digits_target);
    let mut previous = log_potential(m, x0, LAGRANGE_START_NODES);
    let mut n = 2 * LAGRANGE_START_NODES;
    while n <= LAGRANGE_MAX_NODES {
        let current = log_potential(m, x0, n);
        if Float::with_val(prec, &current - &previous).abs() <= tol {
            return Ok(-(current * 2u32) + p.eval_v(x0)?);
        }
        previous = current;
        n *= 2;
    }
    Err(Error::Quadrature(format!("logarithmic potential not resolved with {LAGRANGE_MAX_NODES} nodes")))
}

/// `∫ log|x₀ - y| dμ_V(y)` with `n` cosine nodes.
fn log_potential(m: &EquilibriumMeasure, x0: &Float, n: usize) -> Float {
    let prec = m.prec();
    let c = m.center();
    let r = m.half_width();
    let t0 = Float::with_val(prec, x0 - &c) / &r;
    let pi = pi(prec);
    let r2 = Float::with_val(prec, r.square_ref());

    // Chebyshev values T_k(t0), k < n
    let mut tk0 = Vec::with_capacity(n);
    tk0.push(Float::with_val(prec, 1));
    tk0.push(t0.clone());
    for k in 2..n {
        let next = Float::with_val(prec, &t0 * &tk0[k - 1]) * 2u32 - &tk0[k - 2];
        tk0.push(next);
    }

    let mut mean = Float::with_val(prec, 0);
    let mut weighted = Float::with_val(prec, 0);
    for j in 0..n {
        let theta = Float::with_val(prec, &pi * (2 * j + 1) as u32) / (2 * n) as u32;
        let (sin, u) = theta.sin_cos(Float::new(prec));
        let y = Float::with_val(prec, &r * &u) + &c;
        let f = Float::with_val(prec, sin.square_ref()) * &r2 * m.h().eval(&y);
        // Σ_{k≥1} T_k(u) T_k(t0)/k
        let mut sum = Float::with_val(prec, 0);
        let mut t_prev = Float::with_val(prec, 1);
        let mut t_cur = u.clone();
        for (k, t0k) in tk0.iter().enumerate().skip(1) {
            sum += Float::with_val(prec, &t_cur * t0k) / k as u32;
            let next = Float::with_val(prec, &u * &t_cur) * 2u32 - &t_prev;
            t_prev = std::mem::replace(&mut t_cur, next);
        }
        weighted += Float::with_val(prec, &f * &sum);
        mean += f;
    }
    let n_f = n as u32;
    // f_0 = mean/n, f_k = (2/n) Σ f_j T_k(u_j)
    let f0 = mean / n_f;
    let log_integral = -(Float::with_val(prec, &pi * &f0) * Float::with_val(prec, 2).ln()) - weighted * &pi * 2u32 / n_f;
    let mass = Float::with_val(prec, &pi * &f0);
    log_integral + mass * r.ln()
}

/// `φ(x) = π ∫_b^x √((s-b)(s-a)) h(s) ds` for `x ≥ b`.
pub fn phi_real(m: &EquilibriumMeasure, x: &Float) -> Result<Float> {
    if x < m.b() {
        return Err(Error::Domain("phi is evaluated to the right of the support".into()));
    }
    endpoint_integral(m, m.b(), m.a(), x)
}

/// `φ̃(x) = π ∫_x^a √((a-s)(b-s)) h(s) ds` for `x ≤ a`; the real-line value
/// of the branch of `((s-b)(s-a))^{1/2}` behaving like `s` at infinity.
pub fn tilde_phi_real(m: &EquilibriumMeasure, x: &Float) -> Result<Float> {
    if x > m.a() {
        return Err(Error::Domain("tilde phi is evaluated to the left of the support".into()));
    }
    endpoint_integral(m, m.a(), m.b(), x)
}

const PHI_RULE: usize = 32;
const PHI_MAX_PANELS: usize = 4096;

/// `π ∫ √|s-e| √|s-o| h(s) ds` between endpoint `e` and `x`, where `o` is the
/// opposite endpoint. `s = e + (x-e)u²` removes the square-root singularity.
fn endpoint_integral(m: &EquilibriumMeasure, e: &Float, o: &Float, x: &Float) -> Result<Float> {
    let prec = m.prec();
    if x == e {
        return Ok(Float::with_val(prec, 0));
    }
    if let Some(d) = m.h().singularity_distance(x) {
        if d <= 0 {
            return Err(Error::Domain("integration reaches a singularity of h".into()));
        }
    }
    let rule = gauss_legendre(PHI_RULE, prec);
    let tol = m.config().precision.attainable(m.config().precision.digits_target);
    let mut panels = 1usize;
    let mut previous = substituted_integral(m, &rule, e, o, x, panels);
    while panels < PHI_MAX_PANELS {
        panels *= 2;
        let current = substituted_integral(m, &rule, e, o, x, panels);
        let scale = Float::with_val(prec, current.abs_ref()).max(&Float::with_val(prec, 1));
        if Float::with_val(prec, &current - &previous).abs() <= Float::with_val(prec, &tol * &scale) {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::Quadrature("endpoint integral did not converge".into()))
}

fn substituted_integral(m: &EquilibriumMeasure, rule: &GaussRule, e: &Float, o: &Float, x: &Float, panels: usize) -> Float {
    let prec = m.prec();
    let span = Float::with_val(prec, x - e);
    let dist = Float::with_val(prec, span.abs_ref());
    let mut total = Float::with_val(prec, 0);
    for k in 0..panels {
        let lo = Float::with_val(prec, k as u32) / panels as u32;
        let hi = Float::with_val(prec, (k + 1) as u32) / panels as u32;
        for (u, w) in rule.mapped(&lo, &hi) {
            let u2 = Float::with_val(prec, u.square_ref());
            let s = Float::with_val(prec, &span * &u2) + e;
            let far = Float::with_val(prec, &s - o).abs().sqrt();
            total += u2 * far * m.h().eval(&s) * w;
        }
    }
    // ds = 2 (x-e) u du, √|s-e| = √|x-e| u
    total * dist.clone() * dist.sqrt() * pi(prec) * 2u32
}

/// `φ` (or `φ̃`) on an ordered grid moving away from the support, integrating
/// cell by cell. Cheaper than independent evaluations; used for sign scans.
pub(crate) fn outer_integral_on_grid(m: &EquilibriumMeasure, right: bool, grid: &[Float]) -> Vec<Float> {
    let prec = m.prec();
    let rule = gauss_legendre(PHI_RULE, prec);
    let (e, o) = if right { (m.b(), m.a()) } else { (m.a(), m.b()) };
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = Float::with_val(prec, 0);
    let mut last = e.clone();
    for (i, x) in grid.iter().enumerate() {
        if i == 0 {
            acc = substituted_integral(m, &rule, e, o, x, 4);
        } else {
            let (lo, hi) = if right { (&last, x) } else { (x, &last) };
            let mut cell = Float::with_val(prec, 0);
            for (s, w) in rule.mapped(lo, hi) {
                let g = Float::with_val(prec, &s - e).abs() * Float::with_val(prec, &s - o).abs();
                cell += g.sqrt() * m.h().eval(&s) * w;
            }
            acc += cell * pi(prec);
        }
        out.push(acc.clone());
        last = x.clone();
    }
    out
}
