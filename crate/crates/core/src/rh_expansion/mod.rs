//! Explicit objects of the Riemann–Hilbert steepest-descent analysis: the
//! outer parametrix, the endpoint jump corrections `Δ_k`, the first
//! correction moments and the coefficient `β₁` of `b_{n,n}`.
//!
//! All assembly happens in Pauli coordinates, so odd orders live in
//! `span{σ₁, σ₃}` and even orders in `span{I, σ₂}` by construction.

mod jump;
mod moments;
mod parametrix;
mod pauli;

pub use jump::{airy_constants, delta_k, LocalExpansion, DEFAULT_DISK_FRACTION};
pub use moments::{
    beta1_assembly, beta1_closed, beta1_from_data, beta1_via_r, delta1_laurent, delta1_laurent_from, r1_from_laurent_parts, r1_moments,
    r1_moments_from, Delta1Laurent, LaurentPart, R1Moments,
};
pub use parametrix::{beta, outer_expansion_moments, outer_parametrix, outer_parametrix_pauli};
pub use pauli::{Mat2, PauliCoefficients};

#[cfg(test)]
mod tests {
    use rug::{Complex, Float};

    use super::*;
    use crate::equilibrium::{Endpoint, EquilibriumConfig, EquilibriumMeasure};
    use crate::potential::Potential;

    fn measure(spec: &str) -> (Potential, EquilibriumMeasure) {
        let p = Potential::parse(spec, 256).unwrap();
        let m = EquilibriumMeasure::compute(&p, &EquilibriumConfig::default()).unwrap();
        (p, m)
    }

    fn cz(re: f64, im: f64) -> Complex {
        Complex::with_val(256, (re, im))
    }

    #[test]
    fn semicircle_beta_at_three() {
        let (_, m) = measure("poly:0,0,0.5");
        let b = beta(&m, &cz(3.0, 0.0)).unwrap();
        let expected = Float::with_val(256, 5).recip().sqrt().sqrt();
        assert!(Float::with_val(256, Complex::with_val(256, &b - &expected).abs_ref()) < 1e-70);
        assert!(beta(&m, &cz(1.0, 0.0)).is_err());
        assert!(beta(&m, &cz(1.0, 1e-30)).is_ok());
    }

    #[test]
    fn parametrix_is_unimodular_and_normalized() {
        let (_, m) = measure("poly:0.1,0.2,-0.3,0.1,0.25");
        for (re, im) in [(3.0, 0.5), (-2.0, -1.0), (0.1, 0.2), (0.0, -0.01), (10.0, 0.0), (-10.0, 0.0)] {
            let n = outer_parametrix(&m, &cz(re, im)).unwrap();
            let d = Complex::with_val(256, n.det() - 1u32);
            assert!(Float::with_val(256, d.abs_ref()) < 1e-70);
        }
        let far = outer_parametrix(&m, &cz(1e8, 0.0)).unwrap();
        assert!((&far - &Mat2::identity(256)).max_abs() < 1e-7);
    }

    #[test]
    fn outer_moments_match_large_z_behaviour() {
        let (_, m) = measure("poly:0.1,0.2,-0.3,0.1,0.25");
        let (n1, n2) = outer_expansion_moments(&m);
        let mut previous: Option<f64> = None;
        for k in [4, 5, 6] {
            let z = Complex::with_val(256, (10f64.powi(k), 0.3));
            let n = outer_parametrix_pauli(&m, &z).unwrap();
            let zi = Complex::with_val(256, z.recip_ref());
            let zi2 = Complex::with_val(256, zi.square_ref());
            let mut rest = &n - &n1.scale(&zi);
            rest = &rest - &n2.scale(&zi2);
            rest.ci -= 1u32;
            let z3 = Complex::with_val(256, z.square_ref()) * &z;
            let scaled = rest.scale(&z3).max_abs().to_f64();
            if let Some(p) = previous {
                assert!((scaled - p).abs() < 1e-2 * scaled.abs().max(1.0));
            }
            previous = Some(scaled);
        }
        let (_, sym) = measure("poly:0,0,0.5");
        let (s1, s2) = outer_expansion_moments(&sym);
        assert_eq!(s1.c2, Complex::with_val(256, -1));
        assert_eq!(s2.ci, Complex::with_val(256, 0.5));
        assert!(s2.c2.is_zero());
    }

    #[test]
    fn semicircle_r1_and_beta1() {
        let (p, m) = measure("poly:0,0,0.5");
        let r = r1_moments(&m, &p).unwrap();
        assert!(Float::with_val(256, r.r11.c3.abs_ref()) < 1e-70);
        // A₀ = B₀ = 3, A₁ = -B₁ = -3/20: -5i(A₁-B₁)/144 + 7i(A₀+B₀)/(144·4) = i/96 + 7i/96
        let expected = Complex::with_val(256, (0, Float::with_val(256, 1) / 12u32));
        assert!(Float::with_val(256, Complex::with_val(256, &r.r11.c1 - &expected).abs_ref()) < 1e-70);
        assert!(Float::with_val(256, beta1_via_r(&m, &p).unwrap().abs_ref()) < 1e-70);
        assert!(Float::with_val(256, beta1_closed(&m).unwrap().abs_ref()) < 1e-70);
    }

    #[test]
    fn residue_route_matches_explicit_moments() {
        let (p, m) = measure("poly:0.3,-0.2,0.4,0.05,0.3");
        let parts = delta1_laurent(&m, &p).unwrap();
        let via = r1_from_laurent_parts(&parts, m.a(), m.b());
        let explicit = r1_moments(&m, &p).unwrap();
        assert!(via.r11.distance(&explicit.r11) < 1e-70);
        assert!(via.r12.distance(&explicit.r12) < 1e-70);
        for r in [&explicit.r11, &explicit.r12] {
            assert!(r.ci.is_zero() && r.c2.is_zero());
            assert!(r.c3.imag().is_zero());
            assert!(r.c1.real().is_zero());
        }
    }

    #[test]
    fn jacobi_beta1() {
        for (spec, expected) in [("jacobi:1,2", -0.048), ("jacobi:2,1", 0.048)] {
            let (p, m) = measure(spec);
            let closed = beta1_closed(&m).unwrap();
            let via = beta1_via_r(&m, &p).unwrap();
            assert!((closed.to_f64() - expected).abs() < 1e-12, "{spec}");
            assert!(Float::with_val(256, &closed - &via).abs() < 1e-20, "{spec}");
        }
    }

    #[test]
    fn semicircle_first_jump_pole() {
        let (p, m) = measure("poly:0,0,0.5");
        let parts = delta1_laurent(&m, &p).unwrap();
        // -(5·3/144)(σ₃ - iσ₁) = -(5/48)(σ₃ - iσ₁)
        let c = Float::with_val(256, -5) / 48u32;
        let expected = PauliCoefficients::sigma3_with_sigma1(&c, -1);
        assert!(parts.right.pole2.distance(&expected) < 1e-70);
        // mirror: the left part is the σ₃-conjugate of the right part
        let conj = |q: &PauliCoefficients| {
            let mut q = q.clone();
            q.c1 = -q.c1;
            q.c2 = -q.c2;
            q
        };
        assert!(parts.left.pole2.distance(&conj(&parts.right.pole2)) < 1e-70);
        // 1/(z-a) = -1/(a-z): the simple-pole parts are mirrored up to sign
        let neg = |q: &PauliCoefficients| q.scale_real(&Float::with_val(256, -1));
        assert!(parts.left.pole1.distance(&neg(&conj(&parts.right.pole1))) < 1e-70);
    }

    #[test]
    fn delta_parity_structure() {
        let (_, m) = measure("poly:0.2,0.1,-0.3,0.2,0.25");
        for endpoint in [Endpoint::Right, Endpoint::Left] {
            let local = LocalExpansion::new(&m, endpoint, DEFAULT_DISK_FRACTION).unwrap();
            let exact = match endpoint {
                Endpoint::Right => m.b().clone(),
                Endpoint::Left => m.a().clone(),
            };
            let e = exact.to_f64();
            let r = local.disk_radius().to_f64() * 0.5;
            for j in 0..5 {
                let ang = 0.3 + j as f64 * 1.1;
                let z = cz(e + r * ang.cos(), r * ang.sin());
                for k in 1..=6 {
                    let d = local.delta(&z, k).unwrap();
                    if k % 2 == 1 {
                        assert!(d.ci.is_zero() && d.c2.is_zero());
                        assert!(!d.c3.is_zero());
                    } else {
                        assert!(d.c1.is_zero() && d.c3.is_zero());
                        assert!(!d.ci.is_zero());
                    }
                }
            }
            let far = cz(e + 2.0 * local.disk_radius().to_f64(), 0.0);
            assert!(local.delta(&far, 1).is_err());
            assert!(local.delta(&Complex::with_val(256, &exact), 1).is_err());
        }
    }
}
