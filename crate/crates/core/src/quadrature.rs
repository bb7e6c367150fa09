//! Quadrature rules in working precision.
//!
//! Gauss–Legendre panels and Chebyshev nodes drive the production paths.
//! The double-exponential rules (tanh–sinh on `(-1, 1)`, sinh–sinh on the
//! real line) are used by the moment-based oracle and by tests, and share no
//! code with the Gauss rules.

use rug::float::Constant;
use rug::Float;

use crate::{Error, Result};

/// Nodes and weights of an `n`-point rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights affinely mapped to `[lo, hi]`.
    pub fn mapped(&self, lo: &Float, hi: &Float) -> impl Iterator<Item = (Float, Float)> + '_ {
        let prec = lo.prec();
        let half = Float::with_val(prec, hi - lo) / 2u32;
        let mid = Float::with_val(prec, hi + lo) / 2u32;
        self.nodes.iter().zip(&self.weights).map(move |(t, w)| {
            let x = Float::with_val(prec, t * &half) + &mid;
            (x, Float::with_val(prec, w * &half))
        })
    }
}

/// `n`-point Gauss–Legendre rule, nodes ascending.
pub fn gauss_legendre(n: usize, prec: u32) -> GaussRule {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![Float::new(prec); n];
    let mut weights = vec![Float::new(prec); n];
    let tol = Float::with_val(prec, 1) >> (prec as i32 - 8);
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi-style initial guess, largest root first
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(prec, guess);
        let mut dp = Float::new(prec);
        for _ in 0..200 {
            let (p, d) = legendre_with_derivative(n, &x);
            let step = Float::with_val(prec, &p / &d);
            x -= &step;
            dp = d;
            if step.abs() <= tol {
                let (_, d) = legendre_with_derivative(n, &x);
                dp = d;
                break;
            }
        }
        let one_minus_x2 = Float::with_val(prec, 1) - Float::with_val(prec, x.square_ref());
        let w = Float::with_val(prec, 2) / (one_minus_x2 * dp.square());
        nodes[n - 1 - i] = x.clone();
        weights[n - 1 - i] = w.clone();
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = Float::with_val(prec, 0);
    }
    GaussRule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let k = k as u32;
        let t = Float::with_val(prec, x * &p1) * (2 * k - 1);
        let p2 = (t - Float::with_val(prec, &p0 * (k - 1))) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (Float::with_val(prec, 1), Float::with_val(prec, 0));
    }
    // (1 - x^2) P_n' = n (P_{n-1} - x P_n)
    let num = (p0 - Float::with_val(prec, x * &p1)) * n as u32;
    let den = Float::with_val(prec, 1) - Float::with_val(prec, x.square_ref());
    (p1, num / den)
}

/// Chebyshev points of the first kind `cos((2j-1)π/(2m))`, `j = 1..=m`
/// (descending).
pub fn chebyshev_first_kind(m: usize, prec: u32) -> Vec<Float> {
    let pi = Float::with_val(prec, Constant::Pi);
    (1..=m)
        .map(|j| {
            let theta = Float::with_val(prec, &pi * (2 * j - 1) as u32) / (2 * m) as u32;
            theta.cos()
        })
        .collect()
}

/// A point of a double-exponential rule. For tanh–sinh, `one_minus` and
/// `one_plus` hold `1 - x` and `1 + x` without cancellation.
#[derive(Clone, Debug)]
pub struct DePoint {
    pub x: Float,
    pub one_minus: Float,
    pub one_plus: Float,
    pub weight: Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeKind {
    /// `x = tanh(π/2 sinh t)` on `(-1, 1)`.
    TanhSinh,
    /// `x = sinh(π/2 sinh t)` on the real line.
    SinhSinh,
}

fn de_point(kind: DeKind, t: &Float, h: &Float) -> DePoint {
    let prec = t.prec();
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let u = Float::with_val(prec, t.sinh_ref()) * &half_pi;
    let du = Float::with_val(prec, t.cosh_ref()) * &half_pi;
    match kind {
        DeKind::TanhSinh => {
            let x = Float::with_val(prec, u.tanh_ref());
            let cu = Float::with_val(prec, u.cosh_ref());
            // 1 - tanh u = e^{-u}/cosh u, 1 + tanh u = e^{u}/cosh u
            let one_minus = Float::with_val(prec, (-u.clone()).exp()) / &cu;
            let one_plus = Float::with_val(prec, u.exp_ref()) / &cu;
            let weight = du * h / cu.square();
            DePoint { x, one_minus, one_plus, weight }
        }
        DeKind::SinhSinh => {
            let x = Float::with_val(prec, u.sinh_ref());
            let weight = du * h * Float::with_val(prec, u.cosh_ref());
            let one_minus = Float::with_val(prec, 1) - &x;
            let one_plus = Float::with_val(prec, 1) + &x;
            DePoint { x, one_minus, one_plus, weight }
        }
    }
}

/// Adaptive double-exponential integration of a vector-valued integrand.
///
/// The step is halved until every component changes by at most
/// `rel_tol · max(1, |value|)`; only the new odd-indexed points are
/// evaluated at each refinement. `t_max` bounds the transformed variable.
pub fn de_integrate<F>(kind: DeKind, f: F, prec: u32, t_max: f64, rel_tol: &Float, max_level: u32) -> Result<Vec<Float>>
where
    F: Fn(&DePoint) -> Vec<Float>,
{
    let mut h = Float::with_val(prec, 0.5);
    let steps = (t_max / 0.5).ceil() as i64;
    let mut raw: Vec<Float> = Vec::new();
    let accumulate = |raw: &mut Vec<Float>, vals: Vec<Float>| {
        if raw.is_empty() {
            *raw = vals;
        } else {
            for (r, v) in raw.iter_mut().zip(vals) {
                *r += v;
            }
        }
    };
    // level 0: t = j h, weights carry h so we work with unit-h sums
    let unit = Float::with_val(prec, 1);
    for j in -steps..=steps {
        let t = Float::with_val(prec, j) * &h;
        let pt = de_point(kind, &t, &unit);
        let vals = f(&pt).into_iter().map(|v| v * &pt.weight).collect();
        accumulate(&mut raw, vals);
    }
    let mut previous: Vec<Float> = raw.iter().map(|s| Float::with_val(prec, s * &h)).collect();
    let mut n_half = steps;
    for _level in 1..=max_level {
        h /= 2u32;
        n_half *= 2;
        for j in (-n_half + 1..n_half).step_by(2) {
            let t = Float::with_val(prec, j) * &h;
            let pt = de_point(kind, &t, &unit);
            let vals = f(&pt).into_iter().map(|v| v * &pt.weight).collect();
            accumulate(&mut raw, vals);
        }
        let current: Vec<Float> = raw.iter().map(|s| Float::with_val(prec, s * &h)).collect();
        let converged = current.iter().zip(&previous).all(|(c, p)| {
            let scale = Float::with_val(prec, c.abs_ref()).max(&Float::with_val(prec, 1));
            Float::with_val(prec, c - p).abs() <= Float::with_val(prec, rel_tol * &scale)
        });
        if converged {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::Quadrature(format!("double-exponential rule did not converge within {max_level} refinements")))
}

/// `t_max` for tanh–sinh such that the abscissae reach within `2^-2prec` of
/// the endpoints.
pub fn tanh_sinh_t_max(prec: u32) -> f64 {
    let u = f64::from(prec) * std::f64::consts::LN_2 + 10.0;
    (2.0 * u / std::f64::consts::PI).asinh()
}
