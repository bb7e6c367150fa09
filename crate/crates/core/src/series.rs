//! Truncated power series and polynomial helpers over MPFR floats.
//!
//! Coefficients are stored in ascending order: `c[k]` multiplies `w^k`.

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::{Error, Result};

/// Horner evaluation at a real point.
pub fn eval(coeffs: &[Float], x: &Float) -> Float {
    let mut acc = Float::with_val(x.prec(), 0);
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

/// Horner evaluation at a complex point.
pub fn eval_complex(coeffs: &[Float], z: &Complex) -> Complex {
    let mut acc = Complex::with_val(z.prec(), 0);
    for c in coeffs.iter().rev() {
        acc *= z;
        acc += c;
    }
    acc
}

/// Product truncated to `len` terms.
pub fn mul(a: &[Float], b: &[Float], len: usize) -> Vec<Float> {
    let prec = precision_of(a, b);
    let mut out: Vec<Float> = (0..len).map(|_| Float::with_val(prec, 0)).collect();
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += Float::with_val(prec, ai * bj);
        }
    }
    out
}

/// Reciprocal series `1/a` truncated to `len` terms.
pub fn recip(a: &[Float], len: usize) -> Result<Vec<Float>> {
    let a0 = a.first().ok_or_else(|| Error::Series("empty series".into()))?;
    if a0.is_zero() || !a0.is_finite() {
        return Err(Error::Series("leading coefficient vanishes".into()));
    }
    let prec = a0.prec();
    let inv0 = Float::with_val(prec, 1) / a0;
    let mut out: Vec<Float> = Vec::with_capacity(len);
    for k in 0..len {
        if k == 0 {
            out.push(inv0.clone());
            continue;
        }
        let mut acc = Float::with_val(prec, 0);
        for j in 1..=k.min(a.len() - 1) {
            acc += Float::with_val(prec, &a[j] * &out[k - j]);
        }
        out.push(-acc * &inv0);
    }
    Ok(out)
}

/// Quotient `a/b` truncated to `len` terms.
pub fn div(a: &[Float], b: &[Float], len: usize) -> Result<Vec<Float>> {
    Ok(mul(a, &recip(b, len)?, len))
}

/// Binomial series of `(c + w)^alpha` for `c > 0`, truncated to `len` terms.
pub fn shifted_power(c: &Float, alpha: &Float, len: usize) -> Vec<Float> {
    let prec = c.prec();
    let mut out = Vec::with_capacity(len);
    let mut term = Float::with_val(prec, c.pow(alpha));
    for k in 0..len {
        out.push(term.clone());
        // binom(alpha, k+1)/binom(alpha, k) = (alpha - k)/(k + 1)
        let ratio = Float::with_val(prec, alpha - k as u32) / (k as u32 + 1);
        term *= ratio;
        term /= c;
    }
    out
}

/// Coefficients of `p(x0 + w)` in powers of `w`.
pub fn taylor_shift(poly: &[Float], x0: &Float) -> Vec<Float> {
    let mut c: Vec<Float> = poly.to_vec();
    let n = c.len();
    // repeated synthetic division
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = Float::with_val(x0.prec(), &c[j + 1] * x0);
            c[j] += t;
        }
    }
    c
}

/// Polynomial product (no truncation).
pub fn poly_mul(a: &[Float], b: &[Float]) -> Vec<Float> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    mul(a, b, a.len() + b.len() - 1)
}

/// Coefficients of the derivative.
pub fn derivative(poly: &[Float]) -> Vec<Float> {
    poly.iter().enumerate().skip(1).map(|(k, c)| Float::with_val(c.prec(), c * k as u32)).collect()
}

fn precision_of(a: &[Float], b: &[Float]) -> u32 {
    a.iter().chain(b).map(Float::prec).max().unwrap_or(53)
}
