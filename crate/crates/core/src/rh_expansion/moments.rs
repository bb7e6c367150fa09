//! Laurent parts of `Δ₁`, `Δ̃₁`, the moments `R₁₁`, `R₁₂` of the first
//! correction and the coefficient `β₁`.

use rug::{Complex, Float};

use super::PauliCoefficients;
use crate::equilibrium::{endpoint_laurent, EndpointLaurentData, EquilibriumMeasure};
use crate::potential::Potential;
use crate::precision::pi;
use crate::{Error, Result};

/// Singular part `pole2/(z-e)² + pole1/(z-e)` at one endpoint `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPart {
    pub pole2: PauliCoefficients,
    pub pole1: PauliCoefficients,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Delta1Laurent {
    /// At `b`.
    pub right: LaurentPart,
    /// At `a`.
    pub left: LaurentPart,
}

/// `R₁(z) = R₁₁/z + R₁₂/z² + O(z⁻³)`.
#[derive(Clone, Debug, PartialEq)]
pub struct R1Moments {
    pub r11: PauliCoefficients,
    pub r12: PauliCoefficients,
}

fn frac(x: &Float, num: i32, den: u32) -> Float {
    Float::with_val(x.prec(), x * num) / den
}

/// `x(σ₃ + iσ₁)`.
fn plus(x: &Float) -> PauliCoefficients {
    PauliCoefficients::sigma3_with_sigma1(x, 1)
}

/// `x(σ₃ - iσ₁)`.
fn minus(x: &Float) -> PauliCoefficients {
    PauliCoefficients::sigma3_with_sigma1(x, -1)
}

/// Laurent parts assembled from `A₀, A₁, B₀, B₁`:
///
/// ```text
/// at b: -(5B₀/144)(σ₃-iσ₁)/(z-b)² + [-(5B₁/144)(σ₃-iσ₁) + (7B₀/(144(b-a)))(σ₃+iσ₁)]/(z-b)
/// at a: -(5A₀/144)(σ₃+iσ₁)/(z-a)² + [-(5A₁/144)(σ₃+iσ₁) - (7A₀/(144(b-a)))(σ₃-iσ₁)]/(z-a)
/// ```
pub fn delta1_laurent_from(data: &EndpointLaurentData, a: &Float, b: &Float) -> Delta1Laurent {
    let prec = a.prec();
    let width = Float::with_val(prec, b - a);
    let right = LaurentPart {
        pole2: minus(&frac(&data.b0, -5, 144)),
        pole1: &minus(&frac(&data.b1, -5, 144)) + &plus(&(frac(&data.b0, 7, 144) / &width)),
    };
    let left = LaurentPart {
        pole2: plus(&frac(&data.a0, -5, 144)),
        pole1: &plus(&frac(&data.a1, -5, 144)) + &minus(&(frac(&data.a0, -7, 144) / &width)),
    };
    Delta1Laurent { right, left }
}

pub fn delta1_laurent(m: &EquilibriumMeasure, p: &Potential) -> Result<Delta1Laurent> {
    let data = endpoint_laurent(m, p)?;
    Ok(delta1_laurent_from(&data, m.a(), m.b()))
}

/// Expands the sum of the two Laurent parts at infinity:
/// `1/(z-e) = 1/z + e/z² + …`, `1/(z-e)² = 1/z² + …`.
pub fn r1_from_laurent_parts(parts: &Delta1Laurent, a: &Float, b: &Float) -> R1Moments {
    let r11 = &parts.left.pole1 + &parts.right.pole1;
    let moved = &parts.left.pole1.scale_real(a) + &parts.right.pole1.scale_real(b);
    let r12 = &(&moved + &parts.left.pole2) + &parts.right.pole2;
    R1Moments { r11, r12 }
}

/// `R₁₁`, `R₁₂` from their closed component formulas
///
/// ```text
/// R₁₁σ₃ = -5(A₁+B₁)/144 - 7(A₀-B₀)/(144(b-a))
/// R₁₁σ₁ = -i 5(A₁-B₁)/144 + i 7(A₀+B₀)/(144(b-a))
/// R₁₂σ₃ = -5(aA₁+bB₁)/144 - 7(aA₀-bB₀)/(144(b-a)) - 5(A₀+B₀)/144
/// R₁₂σ₁ = -i 5(aA₁-bB₁)/144 + i 7(aA₀+bB₀)/(144(b-a)) - i 5(A₀-B₀)/144
/// ```
pub fn r1_moments_from(data: &EndpointLaurentData, a: &Float, b: &Float) -> R1Moments {
    let prec = a.prec();
    let width = Float::with_val(prec, b - a);
    let (a0, a1, b0, b1) = (&data.a0, &data.a1, &data.b0, &data.b1);
    let aa0 = Float::with_val(prec, a * a0);
    let aa1 = Float::with_val(prec, a * a1);
    let bb0 = Float::with_val(prec, b * b0);
    let bb1 = Float::with_val(prec, b * b1);

    let r11_s3 = -(Float::with_val(prec, a1 + b1) * 5u32 / 144u32) - Float::with_val(prec, a0 - b0) * 7u32 / 144u32 / &width;
    let r11_s1 = -(Float::with_val(prec, a1 - b1) * 5u32 / 144u32) + Float::with_val(prec, a0 + b0) * 7u32 / 144u32 / &width;
    let r12_s3 = -(Float::with_val(prec, &aa1 + &bb1) * 5u32 / 144u32)
        - Float::with_val(prec, &aa0 - &bb0) * 7u32 / 144u32 / &width
        - Float::with_val(prec, a0 + b0) * 5u32 / 144u32;
    let r12_s1 = -(Float::with_val(prec, &aa1 - &bb1) * 5u32 / 144u32) + Float::with_val(prec, &aa0 + &bb0) * 7u32 / 144u32 / &width
        - Float::with_val(prec, a0 - b0) * 5u32 / 144u32;

    let build = |s3: Float, s1: Float| {
        let mut out = PauliCoefficients::zero(prec);
        out.c3 = Complex::with_val(prec, s3);
        out.c1 = Complex::with_val(prec, (0, s1));
        out
    };
    R1Moments { r11: build(r11_s3, r11_s1), r12: build(r12_s3, r12_s1) }
}

pub fn r1_moments(m: &EquilibriumMeasure, p: &Potential) -> Result<R1Moments> {
    let data = endpoint_laurent(m, p)?;
    Ok(r1_moments_from(&data, m.a(), m.b()))
}

/// `2R₁₁σ₃ - (4/(b-a)) i R₁₂σ₁ + (2(b+a)/(b-a)) i R₁₁σ₁`; real when the
/// moments have the expected structure.
pub fn beta1_assembly(r: &R1Moments, a: &Float, b: &Float) -> Complex {
    let prec = a.prec();
    let width = Float::with_val(prec, b - a);
    let t1 = Complex::with_val(prec, &r.r11.c3 * 2u32);
    let t2 = r.r12.c1.clone().mul_i(false) * (Float::with_val(prec, 4) / &width);
    let t3 = r.r11.c1.clone().mul_i(false) * (Float::with_val(prec, a + b) * 2u32 / &width);
    t1 - t2 + t3
}

/// `β₁` through the correction moments, with both structural checks.
pub fn beta1_from_data(data: &EndpointLaurentData, a: &Float, b: &Float) -> Result<Float> {
    let prec = a.prec();
    let r = r1_moments_from(data, a, b);
    let assembled = beta1_assembly(&r, a, b);
    let (re, im) = assembled.into_real_imag();
    if Float::with_val(prec, im.abs_ref()) > 1e-25 {
        return Err(Error::Cancellation(format!("imaginary part {:.3e} survives the assembly", im.to_f64())));
    }
    let width = Float::with_val(prec, b - a);
    let simplified = Float::with_val(prec, &data.b0 - &data.a0) / (width * 3u32);
    if Float::with_val(prec, &re - &simplified).abs() > 1e-20 {
        return Err(Error::Cancellation(format!(
            "assembled value {:.6e} differs from (B0-A0)/(3(b-a)) = {:.6e}",
            re.to_f64(),
            simplified.to_f64()
        )));
    }
    Ok(re)
}

pub fn beta1_via_r(m: &EquilibriumMeasure, p: &Potential) -> Result<Float> {
    let data = endpoint_laurent(m, p)?;
    beta1_from_data(&data, m.a(), m.b())
}

/// `β₁ = (1/h(b) - 1/h(a)) / (2π(b-a))`.
pub fn beta1_closed(m: &EquilibriumMeasure) -> Result<Float> {
    m.require_regular()?;
    let prec = m.prec();
    let inv_b = Float::with_val(prec, 1) / m.h().eval(m.b());
    let inv_a = Float::with_val(prec, 1) / m.h().eval(m.a());
    let width = Float::with_val(prec, m.b() - m.a());
    Ok((inv_b - inv_a) / (pi(prec) * 2u32 * width))
}
