//! Richardson extrapolation with successive elimination of leading powers;
//! a cross-check for the least-squares fits.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::{Error, Result};

/// Limit of `s(n) = Σ c_k n^{-k}` from `s(n0), …, s(n0+order)`, exact when
/// the expansion stops at `k = order`:
/// `Σ_k s(n0+k)(n0+k)^order (-1)^{k+order} / (k!(order-k)!)`.
fn extrapolate(values: &[(usize, Float)], order: usize) -> Float {
    let prec = values[0].1.prec();
    let mut acc = Float::with_val(prec, 0);
    for (k, (n, v)) in values.iter().enumerate() {
        let binom = Integer::from(Integer::binomial_u(order as u32, k as u32));
        let fact = Integer::from(Integer::factorial(order as u32));
        let mut term = Float::with_val(prec, v * Float::with_val(prec, Integer::from(*n).pow(order as u32)));
        term *= binom;
        term /= fact;
        if (k + order) % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

/// Estimates of `c_0, …, c_{count-1}` from the `order + 1` largest
/// consecutive indices of `seq`: `c_j` is the limit of
/// `n^j (s(n) - Σ_{i<j} c_i n^{-i})`.
pub fn richardson_coefficients(seq: &[(usize, Float)], order: usize, count: usize) -> Result<Vec<Float>> {
    if seq.len() < order + 1 || count == 0 {
        return Err(Error::Argument(format!("Richardson of order {order} needs {} points", order + 1)));
    }
    let tail = &seq[seq.len() - order - 1..];
    if tail.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(Error::Argument("Richardson extrapolation needs consecutive indices".into()));
    }
    let prec = tail[0].1.prec();
    let mut current: Vec<(usize, Float)> = tail.to_vec();
    let mut out: Vec<Float> = Vec::with_capacity(count);
    for _ in 0..count {
        let c = extrapolate(&current, order);
        for (n, v) in current.iter_mut() {
            *v -= &c;
            *v *= Float::with_val(prec, *n);
        }
        out.push(c);
    }
    Ok(out)
}
