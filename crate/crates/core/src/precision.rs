use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float};

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const DEFAULT_DIGITS_TARGET: u32 = 30;

/// Working precision and the number of decimal digits the pipeline tries to
/// certify in its outputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionConfig {
    /// MPFR significand size in bits.
    pub bits: u32,
    /// Self-validation target: quantities are refined until successive
    /// discretizations agree to `10^-digits_target`.
    pub digits_target: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { bits: DEFAULT_PRECISION_BITS, digits_target: DEFAULT_DIGITS_TARGET }
    }
}

impl PrecisionConfig {
    pub fn new(bits: u32, digits_target: u32) -> Self {
        PrecisionConfig { bits, digits_target }
    }

    pub fn float<T>(&self, v: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits, v)
    }

    /// Decimal digits carried by the significand.
    pub fn working_digits(&self) -> u32 {
        (f64::from(self.bits) * std::f64::consts::LOG10_2).floor() as u32
    }

    /// `10^-digits_target`.
    pub fn target_tolerance(&self) -> Float {
        pow10(self.bits, -(self.digits_target as i32))
    }

    /// A tolerance of `10^-digits`, but never tighter than what the working
    /// precision can resolve (2^20 ulps of unity).
    pub fn attainable(&self, digits: u32) -> Float {
        let requested = pow10(self.bits, -(digits as i32));
        let floor = Float::with_val(self.bits, 1) >> (self.bits as i32 - 20);
        requested.max(&floor)
    }
}

pub(crate) fn pow10(prec: u32, e: i32) -> Float {
    Float::with_val(prec, 10).pow(e)
}

pub(crate) fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Scientific notation with `digits` significant digits, e.g. `-6.6383e-1`.
/// The output only depends on the value and `digits`.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits.max(1)))
}

/// Shortest decimal form that parses back to the same value at the same
/// precision, with trailing mantissa zeros removed (`5e-1`, `2`, `1e-1`).
pub fn fmt_compact(x: &Float) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let max_digits = (f64::from(x.prec()) * std::f64::consts::LOG10_2).ceil() as usize + 2;
    let mut s = x.to_string_radix(10, None);
    for d in 1..=max_digits {
        let candidate = x.to_string_radix(10, Some(d));
        if Float::parse(&candidate).map(|v| Float::with_val(x.prec(), v)).is_ok_and(|v| v == *x) {
            s = candidate;
            break;
        }
    }
    let (mantissa, exponent) = match s.find('e') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s.as_str(), ""),
    };
    let mantissa = if mantissa.contains('.') { mantissa.trim_end_matches('0').trim_end_matches('.') } else { mantissa };
    format!("{mantissa}{exponent}")
}
