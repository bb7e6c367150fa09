use rug::Float;

use crate::potential::Potential;
use crate::precision::pi;
use crate::series;

/// The analytic factor `h` in the density `√((b-x)(x-a)) h(x)`.
///
/// Downstream code only evaluates it and asks for Taylor coefficients, so
/// the two representations are interchangeable there.
#[derive(Clone, Debug, PartialEq)]
pub enum DensityFactor {
    /// Ascending coefficients in `x`.
    Polynomial(Vec<Float>),
    /// `h(x) = scale / (1 - x²)` with `scale = (2 + A + B)/(2π)`.
    Jacobi { scale: Float },
}

impl DensityFactor {
    pub fn eval(&self, x: &Float) -> Float {
        match self {
            DensityFactor::Polynomial(c) => series::eval(c, x),
            DensityFactor::Jacobi { scale } => {
                let prec = x.prec().max(scale.prec());
                let d = Float::with_val(prec, 1) - Float::with_val(prec, x.square_ref());
                Float::with_val(prec, scale / d)
            }
        }
    }

    /// Taylor coefficients of `h(x0 + ε)` in powers of `ε`.
    pub fn taylor(&self, x0: &Float, len: usize) -> Vec<Float> {
        let prec = x0.prec();
        match self {
            DensityFactor::Polynomial(c) => {
                let mut t = series::taylor_shift(c, x0);
                t.resize(len.max(t.len()), Float::with_val(prec, 0));
                t.truncate(len);
                t
            }
            DensityFactor::Jacobi { scale } => {
                // 1/(1-x²) = ½ (1/(1-x) + 1/(1+x))
                let inv_m = Float::with_val(prec, 1) / Float::with_val(prec, 1 - x0);
                let inv_p = Float::with_val(prec, 1) / Float::with_val(prec, 1 + x0);
                let mut pm = inv_m.clone();
                let mut pp = inv_p.clone();
                let half_scale = Float::with_val(prec, scale / 2u32);
                (0..len)
                    .map(|k| {
                        let term = if k % 2 == 0 { Float::with_val(prec, &pm + &pp) } else { Float::with_val(prec, &pm - &pp) };
                        pm *= &inv_m;
                        pp *= &inv_p;
                        term * &half_scale
                    })
                    .collect()
            }
        }
    }

    /// Distance from `x0` to the nearest singularity of `h`, if any.
    pub fn singularity_distance(&self, x0: &Float) -> Option<Float> {
        match self {
            DensityFactor::Polynomial(_) => None,
            DensityFactor::Jacobi { .. } => {
                let prec = x0.prec();
                let dm = Float::with_val(prec, 1 - x0);
                let dp = Float::with_val(prec, 1 + x0);
                Some(dm.min(&dp))
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            DensityFactor::Polynomial(_) => "polynomial",
            DensityFactor::Jacobi { .. } => "jacobi",
        }
    }

    /// Polynomial coefficients, or the single numerator of the Jacobi form.
    pub fn coefficients(&self) -> Vec<Float> {
        match self {
            DensityFactor::Polynomial(c) => c.clone(),
            DensityFactor::Jacobi { scale } => vec![scale.clone()],
        }
    }
}

/// Builds `h` for support `[a, b]`.
///
/// For polynomial fields `V'(c + r t)` is expanded as `Σ v_k T_k(t)` and
/// `h(c + r t) = (1/(2π r)) Σ_{k≥1} v_k U_{k-1}(t)`, which is exact. Jacobi
/// fields use the closed form.
pub fn compute_h(p: &Potential, a: &Float, b: &Float) -> DensityFactor {
    let prec = a.prec().max(p.prec());
    match p {
        Potential::Jacobi { right, left } => {
            let scale = Float::with_val(prec, right + left) + 2u32;
            DensityFactor::Jacobi { scale: scale / (pi(prec) * 2u32) }
        }
        Potential::Polynomial { coeffs } => {
            let degree = coeffs.len() - 1;
            let c = Float::with_val(prec, a + b) / 2u32;
            let r = Float::with_val(prec, b - a) / 2u32;
            let cheb = chebyshev_coefficients(p, &c, &r, degree + 2);

            // Σ_{k≥1} v_k U_{k-1}(t) in monomials of t
            let mut acc = vec![Float::with_val(prec, 0); degree.max(1)];
            let mut u_prev: Vec<Float> = Vec::new();
            let mut u_cur = vec![Float::with_val(prec, 1)];
            for v in cheb.iter().take(degree).skip(1) {
                for (slot, coef) in acc.iter_mut().zip(&u_cur) {
                    *slot += Float::with_val(prec, v * coef);
                }
                // U_{k+1} = 2t U_k - U_{k-1}
                let mut next = vec![Float::with_val(prec, 0); u_cur.len() + 1];
                for (j, coef) in u_cur.iter().enumerate() {
                    next[j + 1] += Float::with_val(prec, coef * 2u32);
                }
                for (j, coef) in u_prev.iter().enumerate() {
                    next[j] -= coef;
                }
                u_prev = std::mem::replace(&mut u_cur, next);
            }
            let norm = Float::with_val(prec, &r * 2u32) * pi(prec);
            for x in acc.iter_mut() {
                *x /= &norm;
            }

            // substitute t = (x - c)/r
            let lin = [Float::with_val(prec, -&c) / &r, Float::with_val(prec, 1) / &r];
            let mut h = vec![Float::with_val(prec, 0)];
            for coef in acc.iter().rev() {
                h = series::poly_mul(&h, &lin);
                h[0] += coef;
            }
            h.truncate(degree - 1);
            DensityFactor::Polynomial(h)
        }
    }
}

/// Chebyshev coefficients `v_k`, `k < m`, of `V'(c + r t)` from a discrete
/// cosine transform on `m` first-kind points. Exact when `deg V' < m`.
pub(crate) fn chebyshev_coefficients(p: &Potential, c: &Float, r: &Float, m: usize) -> Vec<Float> {
    let prec = c.prec();
    let nodes = crate::quadrature::chebyshev_first_kind(m, prec);
    let values: Vec<Float> = nodes
        .iter()
        .map(|t| {
            let s = Float::with_val(prec, r * t) + c;
            p.eval_vprime(&s).expect("Chebyshev node inside the field's domain")
        })
        .collect();
    let mut coeffs = vec![Float::with_val(prec, 0); m];
    for (t, f) in nodes.iter().zip(&values) {
        let mut t_prev = Float::with_val(prec, 1);
        let mut t_cur = t.clone();
        coeffs[0] += f;
        for slot in coeffs.iter_mut().skip(1) {
            *slot += Float::with_val(prec, f * &t_cur);
            let next = Float::with_val(prec, t * &t_cur) * 2u32 - &t_prev;
            t_prev = std::mem::replace(&mut t_cur, next);
        }
    }
    coeffs[0] /= m as u32;
    for v in coeffs.iter_mut().skip(1) {
        *v *= 2u32;
        *v /= m as u32;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: &Float, y: &Float, tol: f64) -> bool {
        Float::with_val(x.prec(), x - y).abs() <= tol
    }

    #[test]
    fn semicircle_h_is_constant() {
        let p = Potential::parse("poly:0,0,0.5", 256).unwrap();
        let h = compute_h(&p, &Float::with_val(256, -2), &Float::with_val(256, 2));
        let DensityFactor::Polynomial(c) = &h else { panic!() };
        assert_eq!(c.len(), 1);
        let expected = Float::with_val(256, 1) / (pi(256) * 2u32);
        assert!(close(&c[0], &expected, 1e-70));
    }

    #[test]
    fn quartic_h_matches_hand_expansion() {
        // h(x) = (x² + c²/2)/(2π) with c = (16/3)^{1/4}
        let p = Potential::parse("poly:0,0,0,0,0.25", 256).unwrap();
        let c = (Float::with_val(256, 16) / 3u32).root(4);
        let h = compute_h(&p, &Float::with_val(256, -&c), &c);
        let DensityFactor::Polynomial(k) = &h else { panic!() };
        let two_pi = pi(256) * 2u32;
        assert!(close(&k[0], &(Float::with_val(256, c.square_ref()) / 2u32 / &two_pi), 1e-70));
        assert!(Float::with_val(256, k[1].abs_ref()) < 1e-70);
        assert!(close(&k[2], &(Float::with_val(256, 1) / &two_pi), 1e-70));
    }

    #[test]
    fn jacobi_taylor_matches_evaluation() {
        let h = DensityFactor::Jacobi { scale: Float::with_val(256, 0.8) };
        let x0 = Float::with_val(256, 0.3);
        let t = h.taylor(&x0, 40);
        let eps = Float::with_val(256, 0.05);
        let via = series::eval(&t, &eps);
        let direct = h.eval(&Float::with_val(256, &x0 + &eps));
        assert!(close(&via, &direct, 1e-30));
    }
}
