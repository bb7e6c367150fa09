//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use onecut::equilibrium::{EquilibriumConfig, EquilibriumMeasure};
use onecut::potential::Potential;
use onecut::rh_expansion::{LaurentPart, LocalExpansion, PauliCoefficients};
use rug::float::Constant;
use rug::{Complex, Float};

pub const PREC: u32 = 256;

pub fn measure(spec: &str) -> (Potential, EquilibriumMeasure) {
    let p = Potential::parse(spec, PREC).unwrap();
    let m = EquilibriumMeasure::compute_regular(&p, &EquilibriumConfig::default()).unwrap();
    (p, m)
}

/// Coefficients of `w^-2` and `w^-1`, `w = z - e`, of the first jump
/// correction around the endpoint `e`, from `n` samples on `|w| = radius`
/// (trapezoidal rule on the circle).
pub fn circle_fit(local: &LocalExpansion, centre: &Float, radius: &Float, n: u32) -> LaurentPart {
    let two_pi = Float::with_val(PREC, Constant::Pi) * 2u32;
    let mut c2 = PauliCoefficients::zero(PREC);
    let mut c1 = PauliCoefficients::zero(PREC);
    for j in 0..n {
        let theta = Float::with_val(PREC, &two_pi * j) / n;
        let (s, c) = theta.sin_cos(Float::new(PREC));
        let w = Complex::with_val(PREC, (Float::with_val(PREC, radius * &c), Float::with_val(PREC, radius * &s)));
        let z = Complex::with_val(PREC, &w + centre);
        let d = local.delta(&z, 1).unwrap();
        let w2 = Complex::with_val(PREC, w.square_ref());
        c2 = &c2 + &d.scale(&w2);
        c1 = &c1 + &d.scale(&w);
    }
    let inv = Float::with_val(PREC, n).recip();
    LaurentPart { pole2: c2.scale_real(&inv), pole1: c1.scale_real(&inv) }
}

/// Radius inside both the `[5%, 25%]·(b-a)` annulus and the series disk.
pub fn circle_radius(m: &EquilibriumMeasure, local: &LocalExpansion) -> Float {
    let width = Float::with_val(PREC, m.b() - m.a());
    Float::with_val(PREC, &width * 0.1f64).min(&Float::with_val(PREC, local.disk_radius() * 0.5f64))
}
