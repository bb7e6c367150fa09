//! Weighted least-squares fits `value(n) ≈ Σ c_m n^{-m}` over a window.

use rug::Float;

use crate::precision::pow10;
use crate::{Error, Result, DEFAULT_DIGITS_TARGET};

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionFit {
    pub powers: Vec<u32>,
    pub coefficients: Vec<Float>,
    /// Max `|model - data|` over the window (unweighted).
    pub residual_max: Float,
    /// Condition number of the (column-equilibrated) normal system, ≥ 1.
    pub condition: Float,
    pub window: (usize, usize),
    /// Heuristic per-coefficient uncertainty: `residual_max` times the
    /// ℓ¹ norm of the matching row of the least-squares solution operator.
    pub uncertainty: Vec<Float>,
}

impl ExpansionFit {
    /// Coefficient of `n^{-power}`, if that power was fitted.
    pub fn coefficient(&self, power: u32) -> Option<&Float> {
        self.powers.iter().position(|&p| p == power).map(|i| &self.coefficients[i])
    }

    pub fn uncertainty_of(&self, power: u32) -> Option<&Float> {
        self.powers.iter().position(|&p| p == power).map(|i| &self.uncertainty[i])
    }

    /// Model value at `n`.
    pub fn eval(&self, n: usize) -> Float {
        let prec = self.residual_max.prec();
        let x = Float::with_val(prec, n).recip();
        self.powers
            .iter()
            .zip(&self.coefficients)
            .fold(Float::with_val(prec, 0), |acc, (&p, c)| acc + Float::with_val(prec, c * Float::with_val(prec, x.pow_u_ref(p))))
    }
}

trait PowU {
    fn pow_u_ref(&self, p: u32) -> Float;
}

impl PowU for Float {
    fn pow_u_ref(&self, p: u32) -> Float {
        use rug::ops::Pow;
        Float::with_val(self.prec(), self.pow(p))
    }
}

/// Default ill-conditioning threshold: `1e12 · 10^(working digits - 30)`.
pub fn default_max_condition(prec: u32) -> Float {
    let digits = (f64::from(prec) * std::f64::consts::LOG10_2).floor() as i32;
    pow10(prec, 12 + (digits - DEFAULT_DIGITS_TARGET as i32).max(0))
}

pub fn fit_inverse_powers(seq: &[(usize, Float)], powers: &[u32], window: (usize, usize)) -> Result<ExpansionFit> {
    let prec = seq.first().map_or(crate::DEFAULT_PRECISION_BITS, |s| s.1.prec());
    fit_inverse_powers_with(seq, powers, window, &default_max_condition(prec))
}

/// Fit with weights `n^{max power}`, solved by Householder QR on the
/// column-equilibrated design matrix (no normal equations).
pub fn fit_inverse_powers_with(
    seq: &[(usize, Float)],
    powers: &[u32],
    window: (usize, usize),
    max_condition: &Float,
) -> Result<ExpansionFit> {
    let (lo, hi) = window;
    if powers.is_empty() {
        return Err(Error::Argument("no powers to fit".into()));
    }
    let mut sorted = powers.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != powers.len() {
        return Err(Error::Argument("repeated power in fit basis".into()));
    }
    let seq_lo = seq.iter().map(|s| s.0).min().unwrap_or(0);
    let seq_hi = seq.iter().map(|s| s.0).max().unwrap_or(0);
    if lo == 0 || lo > hi || lo < seq_lo || hi > seq_hi {
        return Err(Error::Argument(format!("window {lo}:{hi} is not inside the data range {seq_lo}:{seq_hi}")));
    }
    let points: Vec<&(usize, Float)> = seq.iter().filter(|s| s.0 >= lo && s.0 <= hi).collect();
    let rows = points.len();
    let cols = powers.len();
    if rows < cols + 2 {
        return Err(Error::Argument(format!("{rows} points cannot fit {cols} coefficients (need at least {})", cols + 2)));
    }
    let prec = points[0].1.prec();
    let top = *sorted.last().unwrap();

    // design matrix and right-hand side, weighted by n^top
    let mut a: Vec<Vec<Float>> = Vec::with_capacity(rows);
    let mut rhs: Vec<Float> = Vec::with_capacity(rows);
    let mut weights = Vec::with_capacity(rows);
    for (n, y) in &points {
        let nf = Float::with_val(prec, *n);
        let w = nf.pow_u_ref(top);
        a.push(powers.iter().map(|&p| nf.pow_u_ref(top - p)).collect());
        rhs.push(Float::with_val(prec, y * &w));
        weights.push(w);
    }
    // column equilibration
    let scales: Vec<Float> = (0..cols)
        .map(|j| a.iter().fold(Float::with_val(prec, 0), |acc, row| acc + Float::with_val(prec, row[j].square_ref())).sqrt())
        .collect();
    for row in a.iter_mut() {
        for (x, s) in row.iter_mut().zip(&scales) {
            *x /= s;
        }
    }

    let reflectors = householder(&mut a, &mut rhs)?;
    let r: Vec<Vec<Float>> = (0..cols).map(|i| a[i][..cols].to_vec()).collect();
    let r_inv = upper_inverse(&r)?;

    let frob =
        |m: &[Vec<Float>]| m.iter().flatten().fold(Float::with_val(prec, 0), |acc, x| acc + Float::with_val(prec, x.square_ref())).sqrt();
    let cond_r = frob(&r) * frob(&r_inv);
    let condition = Float::with_val(prec, cond_r.square_ref());
    if condition > *max_condition {
        return Err(Error::IllConditioned(format!(
            "condition {:.3e} of powers {powers:?} on window {lo}:{hi} exceeds {:.3e}",
            condition.to_f64(),
            max_condition.to_f64()
        )));
    }

    // z = R^{-1} (Qᵀ rhs)[..cols], c = z / scale
    let coefficients: Vec<Float> = (0..cols)
        .map(|i| {
            let z = (i..cols).fold(Float::with_val(prec, 0), |acc, j| acc + Float::with_val(prec, &r_inv[i][j] * &rhs[j]));
            z / &scales[i]
        })
        .collect();

    // solution operator rows: D^{-1} R^{-1} Q₁ᵀ W, taken against unweighted data
    let mut q1t = vec![vec![Float::with_val(prec, 0); rows]; cols];
    for i in 0..rows {
        let mut e = vec![Float::with_val(prec, 0); rows];
        e[i] = Float::with_val(prec, 1);
        apply_reflectors(&reflectors, &mut e);
        for (j, row) in q1t.iter_mut().enumerate() {
            row[i] = e[j].clone();
        }
    }

    let mut fit = ExpansionFit {
        powers: powers.to_vec(),
        coefficients,
        residual_max: Float::with_val(prec, 0),
        condition,
        window,
        uncertainty: Vec::new(),
    };
    let residual_max =
        points.iter().map(|(n, y)| Float::with_val(prec, fit.eval(*n) - y).abs()).fold(Float::with_val(prec, 0), |acc, x| acc.max(&x));
    fit.uncertainty = (0..cols)
        .map(|i| {
            let l1 = (0..rows).fold(Float::with_val(prec, 0), |acc, k| {
                let entry = (i..cols).fold(Float::with_val(prec, 0), |s, j| s + Float::with_val(prec, &r_inv[i][j] * &q1t[j][k]));
                acc + (entry * &weights[k]).abs()
            });
            l1 / &scales[i] * &residual_max
        })
        .collect();
    fit.residual_max = residual_max;
    Ok(fit)
}

/// In-place Householder triangularization of `a` (rows × cols), applying the
/// same reflections to `rhs`. Returns the unit reflector vectors.
#[allow(clippy::needless_range_loop)]
fn householder(a: &mut [Vec<Float>], rhs: &mut [Float]) -> Result<Vec<(usize, Vec<Float>)>> {
    let rows = a.len();
    let cols = a[0].len();
    let prec = a[0][0].prec();
    let mut out = Vec::with_capacity(cols);
    for j in 0..cols {
        let norm = (j..rows).fold(Float::with_val(prec, 0), |acc, i| acc + Float::with_val(prec, a[i][j].square_ref())).sqrt();
        if norm.is_zero() {
            return Err(Error::IllConditioned(format!("design matrix is rank deficient at column {j}")));
        }
        let alpha = if a[j][j].is_sign_negative() { norm } else { -norm };
        let mut v: Vec<Float> = (j..rows).map(|i| a[i][j].clone()).collect();
        v[0] -= &alpha;
        let vnorm = v.iter().fold(Float::with_val(prec, 0), |acc, x| acc + Float::with_val(prec, x.square_ref())).sqrt();
        for x in v.iter_mut() {
            *x /= &vnorm;
        }
        for c in j..cols {
            let dot = v.iter().enumerate().fold(Float::with_val(prec, 0), |acc, (k, x)| acc + Float::with_val(prec, x * &a[j + k][c]));
            let twice = dot * 2u32;
            for (k, x) in v.iter().enumerate() {
                let t = Float::with_val(prec, x * &twice);
                a[j + k][c] -= t;
            }
        }
        let mut tail = rhs[j..].to_vec();
        reflect(&v, &mut tail);
        rhs[j..].clone_from_slice(&tail);
        out.push((j, v));
    }
    Ok(out)
}

fn reflect(v: &[Float], x: &mut [Float]) {
    let prec = v[0].prec();
    let dot = v.iter().zip(x.iter()).fold(Float::with_val(prec, 0), |acc, (a, b)| acc + Float::with_val(prec, a * b));
    let twice = dot * 2u32;
    for (a, b) in v.iter().zip(x.iter_mut()) {
        *b -= Float::with_val(prec, a * &twice);
    }
}

fn apply_reflectors(reflectors: &[(usize, Vec<Float>)], x: &mut [Float]) {
    for (j, v) in reflectors {
        reflect(v, &mut x[*j..]);
    }
}

#[allow(clippy::needless_range_loop)]
fn upper_inverse(r: &[Vec<Float>]) -> Result<Vec<Vec<Float>>> {
    let m = r.len();
    let prec = r[0][0].prec();
    let mut inv = vec![vec![Float::with_val(prec, 0); m]; m];
    for i in (0..m).rev() {
        if r[i][i].is_zero() {
            return Err(Error::IllConditioned("singular triangular factor".into()));
        }
        inv[i][i] = Float::with_val(prec, r[i][i].recip_ref());
        for j in i + 1..m {
            let s = (i + 1..=j).fold(Float::with_val(prec, 0), |acc, k| acc + Float::with_val(prec, &r[i][k] * &inv[k][j]));
            inv[i][j] = -(s / &r[i][i]);
        }
    }
    Ok(inv)
}
