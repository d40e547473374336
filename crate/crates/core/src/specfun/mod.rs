//! High-precision special functions: `Li₂`, Hurwitz zeta, the polylogarithm
//! through the Jonquière relation, and the saddle function
//!
//! ```text
//! φ(z) = log(1 - e^z) + (Li₂(e^z) - π²/6) / z
//! ```
//!
//! whose root near `-1.61 + 7.42i` is the saddle point of the exponent rate
//! `(Li₂(e^z) - π²/6) / z`.
//!
//! Every function takes its precision from its arguments and evaluates with
//! 32 guard bits.

mod bernoulli;
mod dilog;
mod zeta;

pub use bernoulli::scaled_bernoulli;
pub use dilog::dilog;
pub use zeta::{hurwitz_zeta, polylog_jonquiere, SINGULARITY_CLEARANCE};

use rug::Float;

use crate::hp::Complex;
use crate::{Error, Result};

/// A value together with an upper bound on its truncation error.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Complex,
    pub error_estimate: f64,
}

impl EvalResult {
    pub(crate) fn exact(value: Complex) -> Self {
        EvalResult { value, error_estimate: 0.0 }
    }
}

pub(crate) fn guard_precision(prec: u32) -> u32 {
    prec + 32
}

/// Series stop rule: `|term| < 2^{-(prec+8)} · |acc|`.
pub(crate) fn stop_threshold(acc: &Complex, prec: u32) -> Float {
    let mut t = acc.abs();
    t >>= prec + 8;
    t
}

/// `π²/6` at `prec` bits.
pub fn zeta_two(prec: u32) -> Float {
    dilog::zeta2(prec)
}

/// The pieces shared by `φ`, `φ'` and the exponent rate.
struct SaddleParts {
    z: Complex,
    /// `e^z`
    w: Complex,
    /// `log(1 - e^z)`
    log1m: Complex,
    /// `Li₂(e^z) - π²/6`
    shifted_dilog: Complex,
}

impl SaddleParts {
    fn new(z: &Complex) -> Result<Self> {
        let prec = z.prec();
        crate::check_precision(prec)?;
        if z.is_zero() {
            return Err(Error::Singularity("z = 0".into()));
        }
        if z.re > 0 {
            return Err(Error::Domain("saddle function needs Re z <= 0".into()));
        }
        let wp = guard_precision(prec);
        let z = z.with_prec(wp);
        let w = z.exp();
        let one_minus = &Complex::one(wp) - &w;
        let mut tiny = Float::with_val(wp, 1);
        tiny >>= prec / 2;
        if one_minus.abs() < tiny {
            return Err(Error::Singularity("e^z = 1".into()));
        }
        if one_minus.re <= 0 && one_minus.im.is_zero() {
            return Err(Error::Domain("1 - e^z on the branch cut of log".into()));
        }
        let log1m = one_minus.ln();
        let li2 = dilog(&w)?.value;
        let shifted_dilog = &li2 - &Complex::from_real(dilog::zeta2(wp));
        Ok(SaddleParts { z, w, log1m, shifted_dilog })
    }

    fn rate(&self) -> Complex {
        &self.shifted_dilog / &self.z
    }

    fn phi(&self) -> Complex {
        &self.log1m + &self.rate()
    }

    fn phi_derivative(&self) -> Complex {
        let wp = self.z.prec();
        let one_minus = &Complex::one(wp) - &self.w;
        let first = -(&self.w / &one_minus);
        let second = &self.log1m / &self.z;
        let third = &self.shifted_dilog / &self.z.square();
        &(&first - &second) - &third
    }

    fn rate_derivative(&self) -> Complex {
        // d/dz Li₂(e^z) = -log(1 - e^z)
        let first = -(&self.log1m / &self.z);
        let second = &self.shifted_dilog / &self.z.square();
        &first - &second
    }
}

/// `φ(z) = log(1 - e^z) + (Li₂(e^z) - π²/6)/z` with principal logarithm.
pub fn phi(z: &Complex) -> Result<Complex> {
    let prec = z.prec();
    Ok(SaddleParts::new(z)?.phi().with_prec(prec))
}

/// `φ'(z) = -e^z/(1 - e^z) - log(1 - e^z)/z - (Li₂(e^z) - π²/6)/z²`.
pub fn phi_derivative(z: &Complex) -> Result<Complex> {
    let prec = z.prec();
    Ok(SaddleParts::new(z)?.phi_derivative().with_prec(prec))
}

/// `(φ(z), φ'(z))` sharing one dilogarithm evaluation.
pub fn phi_with_derivative(z: &Complex) -> Result<(Complex, Complex)> {
    let prec = z.prec();
    let parts = SaddleParts::new(z)?;
    Ok((parts.phi().with_prec(prec), parts.phi_derivative().with_prec(prec)))
}

/// The exponent rate `(Li₂(e^z) - π²/6)/z`.
pub fn exponent_rate(z: &Complex) -> Result<Complex> {
    let prec = z.prec();
    Ok(SaddleParts::new(z)?.rate().with_prec(prec))
}

/// `d/dz (Li₂(e^z) - π²/6)/z = -φ(z)/z`, evaluated term by term.
pub fn exponent_rate_derivative(z: &Complex) -> Result<Complex> {
    let prec = z.prec();
    Ok(SaddleParts::new(z)?.rate_derivative().with_prec(prec))
}
