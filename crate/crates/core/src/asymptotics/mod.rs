//! Inverse-power expansions of the diagonal recurrence coefficients and the
//! end-to-end comparison with the predicted leading terms:
//!
//! ```text
//! a_{n,n} ~ (b-a)²/16 + Σ_{m≥1} α_{2m} n^{-2m}
//! b_{n,n} ~ (a+b)/2   + Σ_{m≥1} β_m n^{-m},  β₁ = (1/h(b) - 1/h(a)) / (2π(b-a))
//! ```

mod fit;
mod richardson;
mod verify;

pub use fit::{default_max_condition, fit_inverse_powers, fit_inverse_powers_with, ExpansionFit};
pub use richardson::richardson_coefficients;
pub use verify::{verify_theorem, RichardsonCheck, VerificationConfig, VerificationReport};
