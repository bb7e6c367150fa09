//! Numerics for orthogonal polynomials with varying weights `e^{-nV}` and
//! one-cut regular external fields `V`.
//!
//! The crate is organised bottom-up:
//!
//! - [`potential`]: the external field (even-degree polynomial or varying Jacobi).
//! - [`equilibrium`]: support endpoints, density factor `h`, Lagrange constant,
//!   the real-line `φ`/`φ̃` functions, regularity diagnostics and endpoint
//!   Laurent data.
//! - [`rh_expansion`]: outer parametrix, endpoint jump corrections `Δ_k`,
//!   the first correction moments `R₁₁`, `R₁₂` and two routes to `β₁`.
//! - [`recurrence`]: diagonal recurrence coefficients `a_{n,n}`, `b_{n,n}`
//!   by a discretized Stieltjes procedure, plus a Hankel-determinant oracle
//!   and the closed-form Jacobi values.
//! - [`asymptotics`]: inverse-power fits of the diagonal sequences and the
//!   end-to-end comparison against the predicted leading coefficients.
//!
//! All arithmetic is carried out in MPFR floating point through [`rug`];
//! the working precision is chosen by [`PrecisionConfig`].

pub mod asymptotics;
pub mod equilibrium;
mod error;
pub mod potential;
mod precision;
pub mod quadrature;
pub mod recurrence;
pub mod rh_expansion;
pub mod series;

pub use error::{Error, Result};
pub use precision::{fmt_compact, fmt_float, PrecisionConfig, DEFAULT_DIGITS_TARGET, DEFAULT_PRECISION_BITS};

pub use rug::{Complex, Float};
