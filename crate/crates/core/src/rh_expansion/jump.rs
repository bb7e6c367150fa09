//! Jump corrections `Δ_k` near `b` and `Δ̃_k` near `a`.
//!
//! With `s_k = Γ(3k+½)/(√π 9^k (2k)!)`, `t_k = Γ(3k-3/2)/(√π 9^{k-1} (2k-2)!)`
//! and `f = 3φ/2`:
//!
//! ```text
//! k even:  Δ_k = (s_k - t_k/4) f^{-k} I - (t_k/4) f^{-k} σ₂
//! k odd:   Δ_k = -½ (s_k - t_k/2) β² f^{-k} (σ₃ + iσ₁) - ½ s_k β^{-2} f^{-k} (σ₃ - iσ₁)
//! ```
//!
//! `Δ̃_k` is the same with `a ↔ b` and conjugation by `σ₃` (`σ₁, σ₂ → -σ₁, -σ₂`),
//! which swaps `β² ↔ β^{-2}` and `φ → φ̃`.
//!
//! Everything is evaluated through single-valued combinations: with `u` the
//! local variable, `φ = u^{3/2} P(u)` and `β^{∓2}/φ = u^{-2} R(u)`, so odd `k`
//! only needs `φ^{k-1}` and even `k` only `φ^k`, both integer powers of `u`.

use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use super::PauliCoefficients;
use crate::equilibrium::{local_series, Endpoint, EquilibriumMeasure};
use crate::potential::Potential;
use crate::{series, Error, Result};

/// Largest `|u|/radius` accepted by [`LocalExpansion::delta`] by default.
pub const DEFAULT_DISK_FRACTION: f64 = 0.75;

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// `Γ(m + ½)/√π = (2m)!/(4^m m!)`.
fn half_gamma(m: u32) -> Rational {
    Rational::from((factorial(2 * m), Integer::from(4u32).pow(m) * factorial(m)))
}

/// The exact rationals `(s_k, t_k)` for `k ≥ 1`.
pub fn airy_constants(k: u32) -> Result<(Rational, Rational)> {
    if k < 1 {
        return Err(Error::Argument("jump correction order must be at least 1".into()));
    }
    let s = half_gamma(3 * k) / Rational::from(Integer::from(9u32).pow(k) * factorial(2 * k));
    let t = half_gamma(3 * k - 2) / Rational::from(Integer::from(9u32).pow(k - 1) * factorial(2 * k - 2));
    Ok((s, t))
}

/// Endpoint series prepared once for repeated `Δ_k` evaluations.
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    endpoint: Endpoint,
    a: Float,
    b: Float,
    phi: Vec<Float>,
    ratio: Vec<Float>,
    radius: Float,
    max_fraction: f64,
}

impl LocalExpansion {
    /// Series with enough terms for working accuracy on `|u| ≤ max_fraction·radius`.
    pub fn new(m: &EquilibriumMeasure, endpoint: Endpoint, max_fraction: f64) -> Result<Self> {
        if !(max_fraction > 0.0 && max_fraction < 1.0) {
            return Err(Error::Argument("disk fraction must lie in (0, 1)".into()));
        }
        let bits = f64::from(m.prec());
        let terms = (bits * std::f64::consts::LN_2 / -max_fraction.ln()).ceil() as usize + 16;
        let s = local_series(m, endpoint, terms)?;
        Ok(LocalExpansion { endpoint, a: m.a().clone(), b: m.b().clone(), phi: s.phi, ratio: s.ratio, radius: s.radius, max_fraction })
    }

    pub fn endpoint(&self) -> Endpoint {
        self.endpoint
    }

    /// Radius of the disk in which `delta` may be evaluated.
    pub fn disk_radius(&self) -> Float {
        Float::with_val(self.radius.prec(), &self.radius * self.max_fraction)
    }

    /// `Δ_k(z)` (right endpoint) or `Δ̃_k(z)` (left endpoint).
    pub fn delta(&self, z: &Complex, k: u32) -> Result<PauliCoefficients> {
        let (s, t) = airy_constants(k)?;
        let prec = self.a.prec();
        let u = match self.endpoint {
            Endpoint::Right => Complex::with_val(prec, z - &self.b),
            Endpoint::Left => Complex::with_val(prec, &self.a - z),
        };
        let dist = Float::with_val(prec, u.abs_ref());
        if dist.is_zero() {
            return Err(Error::Domain("jump correction has a pole at the endpoint".into()));
        }
        if dist > self.disk_radius() {
            return Err(Error::Domain("point lies outside the endpoint series disk".into()));
        }
        let s = Float::with_val(prec, &s);
        let t = Float::with_val(prec, &t);
        let p = series::eval_complex(&self.phi, &u);
        let two_thirds_k = Float::with_val(prec, Rational::from((2u32, 3u32)).pow(k));
        let mut out = PauliCoefficients::zero(prec);

        if k.is_multiple_of(2) {
            // f^{-k} = (2/3)^k u^{-3k/2} P^{-k}
            let e = Complex::with_val(prec, (&u).pow(-(3 * k as i32) / 2)) * Complex::with_val(prec, (&p).pow(-(k as i32))) * &two_thirds_k;
            out.ci = Complex::with_val(prec, &e * Float::with_val(prec, &s - Float::with_val(prec, &t / 4u32)));
            let quarter_t = Float::with_val(prec, &t / 4u32);
            out.c2 = match self.endpoint {
                Endpoint::Right => -Complex::with_val(prec, &e * &quarter_t),
                Endpoint::Left => Complex::with_val(prec, &e * &quarter_t),
            };
            return Ok(out);
        }

        // (2/3)^k φ^{-(k-1)} = (2/3)^k u^{-3(k-1)/2} P^{-(k-1)}
        let km1 = (k - 1) as i32;
        let x = Complex::with_val(prec, (&u).pow(-(3 * km1) / 2)) * Complex::with_val(prec, (&p).pow(-km1)) * &two_thirds_k;
        let width = Float::with_val(prec, &self.b - &self.a);
        // near: u^{-2} R(u); far: u^{-1} R(u)/(b-a+u)
        let r = series::eval_complex(&self.ratio, &u);
        let near = Complex::with_val(prec, &r / Complex::with_val(prec, u.square_ref())) * &x;
        let far = Complex::with_val(prec, &r / (Complex::with_val(prec, &u * Complex::with_val(prec, &u + &width)))) * &x;
        let s_half = Float::with_val(prec, &s - Float::with_val(prec, &t / 2u32));
        // on the right near = β^{-2}f^{-k}, far = β² f^{-k}; the left swaps roles of β^{±2}
        let (with_plus, with_minus) = match self.endpoint {
            Endpoint::Right => (Complex::with_val(prec, &far * &s_half), Complex::with_val(prec, &near * &s)),
            Endpoint::Left => (Complex::with_val(prec, &near * &s), Complex::with_val(prec, &far * &s_half)),
        };
        // with_plus multiplies (σ₃ + iσ₁), with_minus multiplies (σ₃ - iσ₁), both with factor -½
        out.c3 = -(Complex::with_val(prec, &with_plus + &with_minus) / 2u32);
        out.c1 = -(Complex::with_val(prec, &with_plus - &with_minus) / 2u32).mul_i(false);
        Ok(out)
    }
}

/// One-shot `Δ_k(z)` at the given endpoint; builds the endpoint series each call.
pub fn delta_k(m: &EquilibriumMeasure, _p: &Potential, z: &Complex, k: u32, endpoint: Endpoint) -> Result<PauliCoefficients> {
    if k < 1 {
        return Err(Error::Argument("jump correction order must be at least 1".into()));
    }
    LocalExpansion::new(m, endpoint, DEFAULT_DISK_FRACTION)?.delta(z, k)
}
