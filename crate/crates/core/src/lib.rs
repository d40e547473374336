//! Partial-fraction coefficients of `∏_{j=1}^N (1 - x^j)^{-1}` at the pole `x = 1`.
//!
//! The crate computes the coefficients `C_{0,1,l}(N)` of
//!
//! ```text
//! ∏_{j=1}^N 1/(1 - x^j) = Σ_{l=1}^N C_{0,1,l}(N) / (x - 1)^l + (terms at other roots of unity)
//! ```
//!
//! in three independent ways:
//!
//! - [`exact`]: exact rationals from a truncated Laurent expansion at `x = 1`,
//! - [`saddle`]: the closed-form saddle-point main term `b^N N^{-l-1} H_l(N)`,
//! - [`contour`]: numerical contour integrals (a Cauchy-formula oracle and the
//!   dilogarithm-based approximate integral on `|z| = 5`).
//!
//! All analytic work runs on [`hp::Complex`], a complex number over MPFR floats
//! with an explicit binary precision.

pub mod contour;
pub mod error;
pub mod exact;
pub mod hp;
pub mod saddle;
pub mod specfun;

pub use error::{Error, Result};
pub use hp::Complex;

/// Smallest precision (mantissa bits) accepted by the public numeric API.
pub const MIN_PRECISION: u32 = 64;

/// Default precision used by the command line front end.
pub const DEFAULT_PRECISION: u32 = 256;

pub(crate) fn check_precision(prec: u32) -> Result<()> {
    if prec < MIN_PRECISION {
        return Err(Error::Precision { bits: prec, min: MIN_PRECISION });
    }
    Ok(())
}
