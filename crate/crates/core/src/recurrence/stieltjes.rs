use rug::Float;

use super::grid::Discretization;

/// Monic recurrence coefficients `(a_n, b_n)` of the discrete measure
/// `Σ w_j δ_{x_j}`, by the Stieltjes procedure:
/// `b_k = ⟨xπ_k, π_k⟩/‖π_k‖²`, `a_k = ‖π_k‖²/‖π_{k-1}‖²`,
/// `π_{k+1} = (x - b_k)π_k - a_k π_{k-1}`.
pub(crate) fn stieltjes(d: &Discretization, n: usize) -> (Float, Float) {
    let prec = d.nodes[0].prec();
    let len = d.nodes.len();
    let mut prev = vec![Float::with_val(prec, 0); len];
    let mut cur = vec![Float::with_val(prec, 1); len];
    let mut prev_norm = Float::with_val(prec, 1);
    let mut tmp = Float::new(prec);
    for k in 0..=n {
        let mut norm = Float::with_val(prec, 0);
        let mut first = Float::with_val(prec, 0);
        for ((x, w), p) in d.nodes.iter().zip(&d.weights).zip(&cur) {
            tmp.assign_mul(p, p);
            tmp *= w;
            norm += &tmp;
            tmp *= x;
            first += &tmp;
        }
        let b = Float::with_val(prec, &first / &norm);
        let a = if k == 0 { Float::with_val(prec, 0) } else { Float::with_val(prec, &norm / &prev_norm) };
        if k == n {
            return (a, b);
        }
        for ((x, p), q) in d.nodes.iter().zip(cur.iter_mut()).zip(prev.iter_mut()) {
            // q ← (x - b) p - a q, then swap roles
            tmp.assign_sub(x, &b);
            tmp *= &*p;
            *q *= &a;
            tmp -= &*q;
            std::mem::swap(p, q);
            *p = tmp.clone();
        }
        prev_norm = norm;
    }
    unreachable!("loop returns at k = n")
}

trait AssignOps {
    fn assign_mul(&mut self, x: &Float, y: &Float);
    fn assign_sub(&mut self, x: &Float, y: &Float);
}

impl AssignOps for Float {
    fn assign_mul(&mut self, x: &Float, y: &Float) {
        rug::Assign::assign(self, x * y);
    }

    fn assign_sub(&mut self, x: &Float, y: &Float) {
        rug::Assign::assign(self, x - y);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_chebyshev_measure() {
        // Gauss–Chebyshev points carry the first-kind Chebyshev measure exactly
        // for low degrees: a_1 = 1/2, a_k = 1/4, b_k = 0.
        let prec = 128;
        let m = 40;
        let nodes = crate::quadrature::chebyshev_first_kind(m, prec);
        let weights = vec![Float::with_val(prec, 1); m];
        let d = Discretization { nodes, weights };
        let (a1, b1) = stieltjes(&d, 1);
        assert!(Float::with_val(prec, a1 - 0.5f64).abs() < 1e-30);
        assert!(b1.abs() < 1e-30);
        let (a5, _) = stieltjes(&d, 5);
        assert!(Float::with_val(prec, a5 - 0.25f64).abs() < 1e-30);
    }
}
