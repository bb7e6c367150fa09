//! Local expansions at the support endpoints.
//!
//! Near `b`, with `w = z - b`, `φ(b + w) = w^{3/2} P(w)` where
//! `P_k = g_k/(k + 3/2)` and `g(w) = π (b-a+w)^{1/2} h(b+w)`. Then
//! `β^{-2}/φ = w^{-2} (b-a+w)^{1/2}/P(w) = w^{-2} Σ B_m w^m`.
//!
//! Near `a`, with `v = a - z`, `φ̃(a - v) = v^{3/2} Q(v)` built the same way
//! from `h(a - v)`, and `β²/φ̃ = v^{-2} S(v)` with `S = (b-a+v)^{1/2}/Q`.
//! In powers of `z - a` this reads `Σ A_m (z-a)^{m-2}` with `A_m = (-1)^m S_m`.

use rug::ops::NegAssign;
use rug::Float;

use super::{Endpoint, EquilibriumMeasure};
use crate::potential::Potential;
use crate::precision::pi;
use crate::{series, Error, Result};

/// Taylor data of `φ` (or `φ̃`) and of the Laurent ratio at one endpoint, in
/// the local variable `u` (`u = z - b` on the right, `u = a - z` on the left).
#[derive(Clone, Debug)]
pub struct LocalSeries {
    pub endpoint: Endpoint,
    /// `φ = u^{3/2} Σ phi[k] u^k`.
    pub phi: Vec<Float>,
    /// `β^{∓2}/φ = u^{-2} Σ ratio[k] u^k`.
    pub ratio: Vec<Float>,
    /// Radius of guaranteed convergence of the `φ` series.
    pub radius: Float,
}

/// Builds the local series with `len` terms.
pub fn local_series(m: &EquilibriumMeasure, endpoint: Endpoint, len: usize) -> Result<LocalSeries> {
    m.require_regular()?;
    let prec = m.prec();
    let width = Float::with_val(prec, m.b() - m.a());
    let (e, sign) = match endpoint {
        Endpoint::Right => (m.b(), 1),
        Endpoint::Left => (m.a(), -1),
    };
    let mut h = m.h().taylor(e, len);
    if sign < 0 {
        for c in h.iter_mut().skip(1).step_by(2) {
            c.neg_assign();
        }
    }
    let root = series::shifted_power(&width, &Float::with_val(prec, 0.5), len);
    let g = series::mul(&root, &h, len);
    let pi = pi(prec);
    let phi: Vec<Float> =
        g.iter().enumerate().map(|(k, gk)| Float::with_val(prec, gk * &pi) / (Float::with_val(prec, k as u32) + 1.5f64)).collect();
    let ratio = series::div(&root, &phi, len)?;
    let radius = match m.h().singularity_distance(e) {
        Some(d) => d.min(&width),
        None => width,
    };
    Ok(LocalSeries { endpoint, phi, ratio, radius })
}

/// First Laurent coefficients at both endpoints, with the series they come from.
#[derive(Clone, Debug)]
pub struct EndpointLaurentData {
    pub a0: Float,
    pub a1: Float,
    pub b0: Float,
    pub b1: Float,
    /// `A_m`, `m < order`.
    pub a_series: Vec<Float>,
    /// `B_m`, `m < order`.
    pub b_series: Vec<Float>,
}

/// `A_m` and `B_m` to the configured Taylor order.
///
/// Two self-checks guard the result: the leading terms must equal
/// `3/(2π h(a))`, `3/(2π h(b))` to relative `10^-20`, and the truncated
/// `B` series must reproduce `δ² β^{-2}/φ` at `x = b + δ` (with `φ` from
/// quadrature) to relative `10^-10`.
pub fn endpoint_laurent(m: &EquilibriumMeasure, _p: &Potential) -> Result<EndpointLaurentData> {
    let order = m.config().taylor_order.max(2);
    let right = local_series(m, Endpoint::Right, order)?;
    let left = local_series(m, Endpoint::Left, order)?;
    let b_series = right.ratio.clone();
    let a_series: Vec<Float> =
        left.ratio.iter().enumerate().map(|(k, s)| if k % 2 == 1 { Float::with_val(s.prec(), -s) } else { s.clone() }).collect();

    let prec = m.prec();
    let tol = Float::with_val(prec, 1e-20);
    for (label, got, x) in [("B0", &b_series[0], m.b()), ("A0", &a_series[0], m.a())] {
        let closed = Float::with_val(prec, 3) / (pi(prec) * 2u32 * m.h().eval(x));
        let rel = Float::with_val(prec, got - &closed).abs() / closed.abs();
        if rel > tol {
            return Err(Error::Series(format!("{label} deviates from its closed form by {:.3e}", rel.to_f64())));
        }
    }

    let delta = Float::with_val(prec, &right.radius * 0.02f64);
    let x = Float::with_val(prec, m.b() + &delta);
    let phi = super::phi_real(m, &x)?;
    let beta_m2 = (Float::with_val(prec, &x - m.a()) / &delta).sqrt();
    let direct = delta.clone().square() * beta_m2 / phi;
    let via = series::eval(&b_series, &delta);
    let rel = Float::with_val(prec, &via - &direct).abs() / direct.abs();
    if rel > 1e-10 {
        return Err(Error::Series(format!("endpoint series disagrees with quadrature by {:.3e}", rel.to_f64())));
    }

    Ok(EndpointLaurentData {
        a0: a_series[0].clone(),
        a1: a_series[1].clone(),
        b0: b_series[0].clone(),
        b1: b_series[1].clone(),
        a_series,
        b_series,
    })
}
