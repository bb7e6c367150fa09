//! External fields `V`.
//!
//! Two families are supported: even-degree polynomials with positive leading
//! coefficient, and the varying Jacobi field
//! `V(x) = -A log(1-x) - B log(1+x)` on `(-1, 1)`, for which
//! `e^{-nV(x)} = (1-x)^{An} (1+x)^{Bn}`.
//!
//! Text form: `poly:c0,c1,...,cd` (ascending degree) or `jacobi:A,B`.

use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::precision::DEFAULT_PRECISION_BITS;
use crate::series;
use crate::{fmt_compact, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialKind {
    PolynomialField,
    JacobiField,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Potential {
    /// Coefficients in ascending degree; degree even and at least 2, leading
    /// coefficient positive.
    Polynomial { coeffs: Vec<Float> },
    /// Weight `(1-x)^{n·right} (1+x)^{n·left}`; both exponents positive.
    Jacobi { right: Float, left: Float },
}

impl Potential {
    pub fn polynomial(coeffs: Vec<Float>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPotential("non-finite coefficient".into()));
        }
        let degree = coeffs.len().saturating_sub(1);
        if degree < 2 || !degree.is_multiple_of(2) {
            return Err(Error::InvalidPotential(format!("polynomial degree must be even and >= 2, got {degree}")));
        }
        if !coeffs[degree].is_sign_positive() {
            return Err(Error::InvalidPotential("leading coefficient must be positive".into()));
        }
        Ok(Potential::Polynomial { coeffs })
    }

    /// The field `-A log(1-x) - B log(1+x)`.
    pub fn jacobi(a: Float, b: Float) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a <= 0 || b <= 0 {
            return Err(Error::InvalidPotential("Jacobi exponents A and B must be positive".into()));
        }
        Ok(Potential::Jacobi { right: a, left: b })
    }

    /// Parses the text form at the given precision.
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let text = text.trim();
        let (kind, body) =
            text.split_once(':').ok_or_else(|| Error::parse("potential", format!("expected `poly:...` or `jacobi:A,B`, got `{text}`")))?;
        let values = body
            .split(',')
            .map(|s| {
                let s = s.trim();
                Float::parse(s).map(|v| Float::with_val(prec, v)).map_err(|e| Error::parse("potential", format!("`{s}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match kind.trim() {
            "poly" => Potential::polynomial(values),
            "jacobi" => match <[Float; 2]>::try_from(values) {
                Ok([a, b]) => Potential::jacobi(a, b),
                Err(v) => Err(Error::parse("potential", format!("jacobi takes two parameters, got {}", v.len()))),
            },
            other => Err(Error::parse("potential", format!("unknown family `{other}`"))),
        }
    }

    pub fn kind(&self) -> PotentialKind {
        match self {
            Potential::Polynomial { .. } => PotentialKind::PolynomialField,
            Potential::Jacobi { .. } => PotentialKind::JacobiField,
        }
    }

    pub fn prec(&self) -> u32 {
        match self {
            Potential::Polynomial { coeffs } => coeffs[0].prec(),
            Potential::Jacobi { right, .. } => right.prec(),
        }
    }

    /// `true` when `V(x) = V(-x)`.
    pub fn is_even(&self) -> bool {
        match self {
            Potential::Polynomial { coeffs } => coeffs.iter().skip(1).step_by(2).all(Float::is_zero),
            Potential::Jacobi { right, left } => right == left,
        }
    }

    /// Whether `x` lies where `V` is defined.
    pub fn admits(&self, x: &Float) -> bool {
        match self {
            Potential::Polynomial { .. } => x.is_finite(),
            Potential::Jacobi { .. } => *x > -1 && *x < 1,
        }
    }

    fn check(&self, x: &Float) -> Result<()> {
        if self.admits(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!("V is undefined at x = {}", x.to_f64())))
        }
    }

    pub fn eval_v(&self, x: &Float) -> Result<Float> {
        self.check(x)?;
        Ok(match self {
            Potential::Polynomial { coeffs } => series::eval(coeffs, x),
            Potential::Jacobi { right, left } => {
                let prec = x.prec().max(right.prec());
                let lm = Float::with_val(prec, 1 - x).ln();
                let lp = Float::with_val(prec, 1 + x).ln();
                -(lm * right) - lp * left
            }
        })
    }

    pub fn eval_vprime(&self, x: &Float) -> Result<Float> {
        self.check(x)?;
        Ok(match self {
            Potential::Polynomial { coeffs } => {
                let prec = x.prec();
                let mut acc = Float::with_val(prec, 0);
                for (k, c) in coeffs.iter().enumerate().skip(1).rev() {
                    acc *= x;
                    acc += Float::with_val(prec, c * k as u32);
                }
                acc
            }
            Potential::Jacobi { right, left } => {
                let prec = x.prec().max(right.prec());
                Float::with_val(prec, right / Float::with_val(prec, 1 - x)) - Float::with_val(prec, left / Float::with_val(prec, 1 + x))
            }
        })
    }

    pub fn eval_vsecond(&self, x: &Float) -> Result<Float> {
        self.check(x)?;
        Ok(match self {
            Potential::Polynomial { coeffs } => {
                let prec = x.prec();
                let mut acc = Float::with_val(prec, 0);
                for (k, c) in coeffs.iter().enumerate().skip(2).rev() {
                    acc *= x;
                    acc += Float::with_val(prec, c * (k * (k - 1)) as u32);
                }
                acc
            }
            Potential::Jacobi { right, left } => {
                let prec = x.prec().max(right.prec());
                let dm = Float::with_val(prec, 1 - x).square();
                let dp = Float::with_val(prec, 1 + x).square();
                Float::with_val(prec, right / dm) + Float::with_val(prec, left / dp)
            }
        })
    }

    /// Coefficients of `V'` (polynomial fields only).
    pub fn derivative_coeffs(&self) -> Option<Vec<Float>> {
        match self {
            Potential::Polynomial { coeffs } => Some(series::derivative(coeffs)),
            Potential::Jacobi { .. } => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            Potential::Polynomial { coeffs } => Some(coeffs.len() - 1),
            Potential::Jacobi { .. } => None,
        }
    }
}

impl FromStr for Potential {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Potential::parse(s, DEFAULT_PRECISION_BITS)
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Potential::Polynomial { coeffs } => {
                let parts: Vec<String> = coeffs.iter().map(fmt_compact).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            Potential::Jacobi { right, left } => write!(f, "jacobi:{},{}", fmt_compact(right), fmt_compact(left)),
        }
    }
}
