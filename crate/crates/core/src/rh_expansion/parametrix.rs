use rug::{Complex, Float};

use super::{Mat2, PauliCoefficients};
use crate::equilibrium::EquilibriumMeasure;
use crate::{Error, Result};

/// `β(z) = ((z-b)/(z-a))^{1/4}`, cut on `[a, b]`, positive for real `z > b`.
///
/// The ratio is a negative real exactly on `(a, b)`, so the principal fourth
/// root of the ratio already has the required cut.
pub fn beta(m: &EquilibriumMeasure, z: &Complex) -> Result<Complex> {
    let prec = m.prec();
    let (re, im) = z.clone().into_real_imag();
    if im.is_zero() && re >= *m.a() && re <= *m.b() {
        return Err(Error::Domain("beta is evaluated off the support".into()));
    }
    let q = Complex::with_val(prec, z - m.b()) / Complex::with_val(prec, z - m.a());
    Ok(q.sqrt().sqrt())
}

/// `N = ½(β + β⁻¹) I + ½(β - β⁻¹) σ₂`; `det N = 1`, `N → I` at infinity.
pub fn outer_parametrix(m: &EquilibriumMeasure, z: &Complex) -> Result<Mat2> {
    Ok(outer_parametrix_pauli(m, z)?.to_matrix())
}

pub fn outer_parametrix_pauli(m: &EquilibriumMeasure, z: &Complex) -> Result<PauliCoefficients> {
    let prec = m.prec();
    let b = beta(m, z)?;
    let inv = Complex::with_val(prec, b.recip_ref());
    let mut out = PauliCoefficients::zero(prec);
    out.ci = Complex::with_val(prec, &b + &inv) / 2u32;
    out.c2 = Complex::with_val(prec, &b - &inv) / 2u32;
    Ok(out)
}

/// Coefficients of `1/z` and `1/z²` in `N(z) - I`:
/// `N₁ = -((b-a)/4) σ₂`, `N₂ = ((b-a)²/32) I - ((b²-a²)/8) σ₂`.
pub fn outer_expansion_moments(m: &EquilibriumMeasure) -> (PauliCoefficients, PauliCoefficients) {
    let prec = m.prec();
    let width = Float::with_val(prec, m.b() - m.a());
    let mut n1 = PauliCoefficients::zero(prec);
    n1.c2 = Complex::with_val(prec, -Float::with_val(prec, &width / 4u32));
    let mut n2 = PauliCoefficients::zero(prec);
    n2.ci = Complex::with_val(prec, Float::with_val(prec, width.square_ref()) / 32u32);
    let diff = Float::with_val(prec, m.b().square_ref()) - Float::with_val(prec, m.a().square_ref());
    n2.c2 = Complex::with_val(prec, -diff / 8u32);
    (n1, n2)
}
