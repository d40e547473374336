//! Hurwitz zeta by Euler–Maclaurin summation, and the polylogarithm of
//! negative integer order through its Hurwitz-zeta representation.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::bernoulli::scaled_bernoulli;
use super::{guard_precision, stop_threshold, EvalResult};
use crate::hp::Complex;
use crate::{Error, Result};

/// Minimum distance of `z` from `0` and `±2πi` accepted by
/// [`polylog_jonquiere`].
pub const SINGULARITY_CLEARANCE: f64 = 1e-3;

fn is_integer(x: &Complex) -> bool {
    x.im.is_zero() && x.re.is_integer()
}

/// `ζ(s, q) = Σ_{n≥0} (q + n)^{-s}` for `Re s > 1`, principal powers.
///
/// `Re q > 0` is required, except that for integer `s` any `q` that is not a
/// non-positive integer is accepted (the powers are then single-valued).
pub fn hurwitz_zeta(s: &Complex, q: &Complex) -> Result<EvalResult> {
    let prec = s.prec().min(q.prec());
    crate::check_precision(prec)?;
    if s.re <= 1 {
        return Err(Error::Convergence(format!("hurwitz_zeta needs Re s > 1, got {}", s.re.to_f64())));
    }
    if q.re <= 0 {
        if is_integer(q) {
            return Err(Error::Singularity(format!("q = {} is a non-positive integer", q.re.to_f64())));
        }
        if !is_integer(s) {
            return Err(Error::Domain("Re q <= 0 requires integer s".into()));
        }
    }
    let wp = guard_precision(prec);
    let s = s.with_prec(wp);
    let q = q.with_prec(wp);

    // shift so that |q + M| is large enough for the asymptotic tail
    let target = 0.12 * wp as f64 + s.abs().to_f64() + 8.0;
    let m = (target - q.re.to_f64()).ceil().max(0.0) as u64;

    let neg_s = -&s;
    let mut head: Vec<Complex> = Vec::with_capacity(m as usize);
    for n in 0..m {
        let base = &q + &Complex::from_f64(wp, n as f64, 0.0);
        head.push((&neg_s * &base.ln()).exp());
    }
    let mut acc = crate::hp::pairwise_sum(&head, wp);

    let a = &q + &Complex::from_f64(wp, m as f64, 0.0);
    let ln_a = a.ln();
    let a_neg_s = (&neg_s * &ln_a).exp();
    let s_minus_1 = &s - &Complex::one(wp);
    acc = &acc + &(&(&a * &a_neg_s) / &s_minus_1);
    acc = &acc + &a_neg_s.scale_f64(0.5);

    let inv_a = a.recip();
    let inv_a2 = inv_a.square();
    let mut rising = s.clone();
    let mut power = &a_neg_s * &inv_a;
    let mut n_max = 64usize;
    let mut beta = scaled_bernoulli(n_max);
    let mut prev = Float::with_val(wp, f64::INFINITY);
    let err;
    let mut k = 1usize;
    loop {
        if 2 * k > n_max {
            n_max *= 2;
            beta = scaled_bernoulli(n_max);
        }
        let term = (&rising * &power).scale(&Float::with_val(wp, &beta[2 * k]));
        let size = term.abs();
        if size > prev {
            // asymptotic series started to diverge; the smallest term bounds the error
            err = prev.to_f64();
            break;
        }
        acc = &acc + &term;
        if size < stop_threshold(&acc, prec) || k > 4 * wp as usize {
            err = 2.0 * size.to_f64();
            break;
        }
        prev = size;
        let s2k1 = &s + &Complex::from_f64(wp, (2 * k - 1) as f64, 0.0);
        let s2k = &s + &Complex::from_f64(wp, (2 * k) as f64, 0.0);
        rising = &(&rising * &s2k1) * &s2k;
        power = &power * &inv_a2;
        k += 1;
    }
    let rounding = acc.abs().to_f64() * 2f64.powi(-(prec as i32));
    Ok(EvalResult {
        value: acc.with_prec(prec),
        error_estimate: err + rounding,
    })
}

/// `Li_{1-s}(e^z)` via
/// `Γ(s)/(2π)^s · (i^s ζ(s, 1/2 + L/(2πi)) + i^{-s} ζ(s, 1/2 - L/(2πi)))`,
/// `L = log(-e^z)`.
///
/// `s` must be an integer `≥ 2` (`Γ` is evaluated as a factorial). `z` must
/// satisfy `Re z ≤ 0`, `|Im z| < 8` and stay [`SINGULARITY_CLEARANCE`] away
/// from `0` and `±2πi`.
pub fn polylog_jonquiere(s: &Complex, z: &Complex) -> Result<EvalResult> {
    let prec = s.prec().min(z.prec());
    crate::check_precision(prec)?;
    if s.re <= 1 || !is_integer(s) {
        return Err(Error::Domain(format!(
            "polylog_jonquiere needs integer s >= 2, got {} + {}i",
            s.re.to_f64(),
            s.im.to_f64()
        )));
    }
    let s_int = s.re.to_integer().and_then(|i: Integer| i.to_u32()).ok_or_else(|| {
        Error::Domain("s too large".into())
    })?;
    if z.re > 0 || z.im.to_f64().abs() >= 8.0 {
        return Err(Error::Domain("polylog_jonquiere needs Re z <= 0 and |Im z| < 8".into()));
    }
    let (zr, zi) = z.to_f64_pair();
    let two_pi = 2.0 * std::f64::consts::PI;
    for pole in [0.0, two_pi, -two_pi] {
        if zr.hypot(zi - pole) < SINGULARITY_CLEARANCE {
            return Err(Error::Domain(format!("z = {zr} + {zi}i is too close to a singularity")));
        }
    }

    let wp = guard_precision(prec);
    let z = z.with_prec(wp);
    let pi = Complex::pi(wp);
    let two_pi_i = Complex::new(Float::new(wp), Float::with_val(wp, &pi * 2));
    let log_term = &(-z.exp()).ln() / &two_pi_i;
    let half = Complex::from_f64(wp, 0.5, 0.0);
    let q_plus = &half + &log_term;
    let q_minus = &half - &log_term;

    let s_wp = s.with_prec(wp);
    let zp = hurwitz_zeta(&s_wp, &q_plus)?;
    let zm = hurwitz_zeta(&s_wp, &q_minus)?;

    // i^s for integer s
    let i_pow = |k: i64| -> Complex {
        match k.rem_euclid(4) {
            0 => Complex::one(wp),
            1 => Complex::i(wp),
            2 => -Complex::one(wp),
            _ => -Complex::i(wp),
        }
    };
    let sum = &(&i_pow(s_int as i64) * &zp.value) + &(&i_pow(-(s_int as i64)) * &zm.value);
    let gamma = Float::with_val(wp, Integer::from(Integer::factorial(s_int - 1)));
    let two_pi_pow = Float::with_val(wp, &pi * 2).pow(s_int);
    let factor = Float::with_val(wp, &gamma / &two_pi_pow);
    let value = sum.scale(&factor);
    let err = factor.to_f64() * (zp.error_estimate + zm.error_estimate)
        + value.abs().to_f64() * 2f64.powi(-(prec as i32));
    Ok(EvalResult {
        value: value.with_prec(prec),
        error_estimate: err,
    })
}
