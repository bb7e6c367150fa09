//! Moment-determinant route to the recurrence coefficients. Exponentially
//! ill-conditioned in `n`; kept only as an independent check for small `n`.

use rug::Float;

use super::{RecurrenceEntry, RecurrenceTable};
use crate::equilibrium::{solve_endpoints, EquilibriumConfig};
use crate::potential::Potential;
use crate::quadrature::{de_integrate, tanh_sinh_t_max, DeKind, DePoint};
use crate::{Error, PrecisionConfig, Result};

/// Largest `n` the oracle accepts.
pub const HANKEL_MAX_N: usize = 10;

/// Extra working bits used for moments and determinants.
const GUARD_BITS: u32 = 128;

/// `a_{n,n} = Δ_{n+1}Δ_{n-1}/Δ_n²` and `b_{n,n} = s_{n+1} - s_n`, where
/// `s_k` is the ratio of the once-shifted Hankel determinant to `Δ_k`
/// (the sum of the zeros of `π_k`), for `n = 1..=n_small`.
pub fn hankel_oracle(p: &Potential, n_small: usize, cfg: &PrecisionConfig) -> Result<RecurrenceTable> {
    if n_small == 0 || n_small > HANKEL_MAX_N {
        return Err(Error::Argument(format!("hankel oracle needs 1 <= n <= {HANKEL_MAX_N}, got {n_small}")));
    }
    let inner = PrecisionConfig::new(cfg.bits + GUARD_BITS, cfg.digits_target);
    let prec = inner.bits;
    let lifted = lift(p, prec)?;
    // centre and scale of the bulk, so the moments are of order one
    let (centre, scale) = match &lifted {
        Potential::Polynomial { .. } => {
            let (a, b) = solve_endpoints(&lifted, &EquilibriumConfig::with_precision(inner))?;
            (Float::with_val(prec, &a + &b) / 2u32, Float::with_val(prec, &b - &a) / 2u32)
        }
        Potential::Jacobi { .. } => (Float::with_val(prec, 0), Float::with_val(prec, 1)),
    };
    let mut entries = Vec::with_capacity(n_small);
    for n in 1..=n_small {
        let moments = moments(&lifted, n, 2 * n + 1, &centre, &scale)?;
        let (a_y, b_y) = from_moments(&moments, n, &inner)?;
        let a_nn = Float::with_val(cfg.bits, a_y * Float::with_val(prec, scale.square_ref()));
        let b_nn = Float::with_val(cfg.bits, b_y * &scale + &centre);
        entries.push(RecurrenceEntry { n, a_nn, b_nn });
    }
    Ok(RecurrenceTable { entries, precision_bits: cfg.bits, node_count: 0, potential_spec: p.to_string() })
}

fn lift(p: &Potential, prec: u32) -> Result<Potential> {
    match p {
        Potential::Polynomial { coeffs } => Potential::polynomial(coeffs.iter().map(|c| Float::with_val(prec, c)).collect()),
        Potential::Jacobi { right, left } => Potential::jacobi(Float::with_val(prec, right), Float::with_val(prec, left)),
    }
}

/// `∫ y^k w(centre + scale·y) dy`, `k = 0..=top`, with the weight divided by
/// a constant so its bulk is of order one (the coefficients are invariant
/// under that rescaling).
fn moments(p: &Potential, n: usize, top: usize, centre: &Float, scale: &Float) -> Result<Vec<Float>> {
    let prec = centre.prec();
    let tol = Float::with_val(prec, 1) >> (prec as i32 - 24);
    let powers = |y: &Float, w: Float| {
        let mut out = Vec::with_capacity(top + 1);
        let mut acc = w;
        for _ in 0..=top {
            out.push(acc.clone());
            acc *= y;
        }
        out
    };
    match p {
        Potential::Polynomial { .. } => {
            let reference = p.eval_v(centre)?;
            let f = |pt: &DePoint| {
                let x = Float::with_val(prec, &pt.x * scale) + centre;
                let v = p.eval_v(&x).expect("polynomial fields are defined everywhere");
                let w = (-((v - &reference) * n as u32)).exp();
                powers(&pt.x, w)
            };
            de_integrate(DeKind::SinhSinh, f, prec, 3.5, &tol, 14)
        }
        Potential::Jacobi { right, left } => {
            // weight maximal at x* = (B - A)/(A + B)
            let sum = Float::with_val(prec, right + left);
            let peak_minus = Float::with_val(prec, right * 2u32) / &sum;
            let peak_plus = Float::with_val(prec, left * 2u32) / &sum;
            let log_peak = Float::with_val(prec, peak_minus.ln_ref()) * right + Float::with_val(prec, peak_plus.ln_ref()) * left;
            let f = |pt: &DePoint| {
                let lw = Float::with_val(prec, pt.one_minus.ln_ref()) * right + Float::with_val(prec, pt.one_plus.ln_ref()) * left;
                let w = ((lw - &log_peak) * n as u32).exp();
                powers(&pt.x, w)
            };
            de_integrate(DeKind::TanhSinh, f, prec, tanh_sinh_t_max(prec), &tol, 14)
        }
    }
}

/// Determinant and pivot-ratio condition estimate by Gaussian elimination
/// with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn determinant(mut m: Vec<Vec<Float>>) -> (Float, f64) {
    let k = m.len();
    let prec = m[0][0].prec();
    let mut det = Float::with_val(prec, 1);
    let mut largest = 0f64;
    let mut smallest = f64::INFINITY;
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| m[i][col].clone().abs().partial_cmp(&m[j][col].clone().abs()).unwrap()).unwrap();
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        let size = Float::with_val(prec, p.abs_ref()).log2().to_f64();
        largest = largest.max(size);
        smallest = smallest.min(size);
        if p.is_zero() {
            return (Float::with_val(prec, 0), f64::INFINITY);
        }
        det *= &p;
        for row in col + 1..k {
            let factor = Float::with_val(prec, &m[row][col] / &p);
            for c in col..k {
                let t = Float::with_val(prec, &factor * &m[col][c]);
                m[row][c] -= t;
            }
        }
    }
    (det, largest - smallest)
}

fn hankel(moments: &[Float], k: usize, shifted: bool) -> Vec<Vec<Float>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let idx = if shifted && j + 1 == k { i + k } else { i + j };
                    moments[idx].clone()
                })
                .collect()
        })
        .collect()
}

fn from_moments(moments: &[Float], n: usize, cfg: &PrecisionConfig) -> Result<(Float, Float)> {
    let prec = cfg.bits;
    let budget = f64::from(cfg.working_digits()) - f64::from(cfg.digits_target);
    let det = |k: usize, shifted: bool| -> Result<Float> {
        if k == 0 {
            return Ok(Float::with_val(prec, if shifted { 0 } else { 1 }));
        }
        let (d, log2_cond) = determinant(hankel(moments, k, shifted));
        // the shifted matrices are indefinite (zero for even fields); only
        // the positive-definite ones carry a meaningful pivot ratio
        if !shifted && log2_cond * std::f64::consts::LOG10_2 > budget {
            return Err(Error::Precision(format!(
                "Hankel matrix of order {k} has condition ~1e{:.0}, beyond {budget:.0} digits",
                log2_cond * std::f64::consts::LOG10_2
            )));
        }
        Ok(d)
    };
    let d_prev = det(n - 1, false)?;
    let d_n = det(n, false)?;
    let d_next = det(n + 1, false)?;
    let s_n = Float::with_val(prec, det(n, true)? / &d_n);
    let s_next = Float::with_val(prec, det(n + 1, true)? / &d_next);
    let a = Float::with_val(prec, &d_next * &d_prev) / Float::with_val(prec, d_n.square_ref());
    Ok((a, s_next - s_n))
}
