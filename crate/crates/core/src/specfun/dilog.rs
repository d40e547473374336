//! Complex dilogarithm on the closed unit disk.
//!
//! Three regimes:
//! - `|w| ≤ 1/2`: the defining series `Σ w^k / k²`;
//! - `Re w > 1/2`: reflection `Li₂(w) = π²/6 - ln w ln(1-w) - Li₂(1-w)`;
//! - otherwise: the Bernoulli expansion `Li₂(w) = Σ_n B_n u^{n+1} / (n+1)!`
//!   with `u = -ln(1-w)`, which converges like `(|u| / 2π)^n`.
//!
//! After reflection the argument satisfies `|w| ≤ 1`, `Re w ≤ 1/2`, where
//! `|u| ≤ 1.25`, so every regime converges geometrically, including the points
//! `e^{±iπ/3}` where `|w| = |1-w| = |w/(w-1)| = 1`.

use rug::{Float, Rational};

use super::bernoulli::scaled_bernoulli;
use super::{guard_precision, stop_threshold, EvalResult};
use crate::hp::Complex;
use crate::{Error, Result};

/// `Li₂(w)` for `|w| ≤ 1`. The precision of `w` is the requested precision.
pub fn dilog(w: &Complex) -> Result<EvalResult> {
    let prec = w.prec();
    crate::check_precision(prec)?;
    let wp = guard_precision(prec);
    let w = w.with_prec(wp);

    let slack = Float::with_val(wp, Float::i_exp(1, -(prec as i32 - 8)));
    if w.norm_sqr() > Float::with_val(wp, 1 + &slack) {
        return Err(Error::Domain(format!("dilog needs |w| <= 1, got |w| = {}", w.abs().to_f64())));
    }
    if w.is_zero() {
        return Ok(EvalResult::exact(Complex::zero(prec)));
    }
    if w.re == 1 && w.im.is_zero() {
        return Ok(EvalResult::exact(Complex::from_real(zeta2(prec))));
    }

    let (value, err) = if w.re > 0.5 {
        let v = &Complex::one(wp) - &w;
        let (inner, err) = reduced(&v, prec);
        let log_prod = &w.ln() * &v.ln();
        let value = &(&Complex::from_real(zeta2(wp)) - &log_prod) - &inner;
        (value, err)
    } else {
        reduced(&w, prec)
    };
    let rounding = value.abs().to_f64() * 2f64.powi(-(prec as i32));
    Ok(EvalResult {
        value: value.with_prec(prec),
        error_estimate: err + rounding,
    })
}

/// `π²/6`.
pub(crate) fn zeta2(prec: u32) -> Float {
    let pi = Complex::pi(prec);
    Float::with_val(prec, pi.square_ref()) / 6
}

/// Dilog for `|w| ≤ 1`, `Re w ≤ 1/2`, at the precision of `w`.
fn reduced(w: &Complex, prec: u32) -> (Complex, f64) {
    let half_sq = 0.25;
    if w.norm_sqr() <= half_sq {
        direct_series(w, prec)
    } else {
        bernoulli_series(w, prec)
    }
}

/// `Σ_{k≥1} w^k / k²`, valid for `|w| ≤ 1/2`.
pub(crate) fn direct_series(w: &Complex, prec: u32) -> (Complex, f64) {
    let wp = w.prec();
    let mut power = w.clone();
    let mut acc = w.clone();
    let mut last = w.abs();
    let max_terms = 4 * wp as u64;
    for k in 2..=max_terms {
        power = &power * w;
        let term = power.scale(&Float::with_val(wp, Float::u_pow_u(k as u32, 2)).recip());
        acc = &acc + &term;
        last = term.abs();
        if last < stop_threshold(&acc, prec) {
            break;
        }
    }
    (acc, 2.0 * last.to_f64())
}

fn bernoulli_series(w: &Complex, prec: u32) -> (Complex, f64) {
    let wp = w.prec();
    let u = -(&Complex::one(wp) - w).ln();
    let u2 = u.square();
    // u - u²/4
    let mut acc = &u - &u2.scale_f64(0.25);
    let mut upow = u.clone();
    let mut last;
    let mut n_max = 64usize;
    let mut beta = scaled_bernoulli(n_max);
    let mut k = 1usize;
    loop {
        if 2 * k > n_max {
            n_max *= 2;
            beta = scaled_bernoulli(n_max);
        }
        upow = &upow * &u2;
        // B_{2k} / (2k+1)! = β_{2k} / (2k + 1)
        let coeff = Float::with_val(wp, Rational::from(&beta[2 * k] / (2 * k as u32 + 1)));
        let term = upow.scale(&coeff);
        acc = &acc + &term;
        last = term.abs();
        if last < stop_threshold(&acc, prec) || k > 2 * wp as usize {
            break;
        }
        k += 1;
    }
    (acc, 2.0 * last.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(P, re, im)
    }

    /// Direct partial sums with a geometric tail bound, independent of the
    /// transforms above. Only used for |w| well inside the disk or at -1.
    fn series_oracle(w: &Complex, terms: u32) -> Complex {
        let wp = 320;
        let w = w.with_prec(wp);
        let mut acc = Complex::zero(wp);
        let mut power = Complex::one(wp);
        for k in 1..=terms {
            power = &power * &w;
            acc = &acc + &power.scale(&Float::with_val(wp, Float::u_pow_u(k, 2)).recip());
        }
        acc
    }

    fn diff(a: &Complex, b: &Complex) -> f64 {
        (a - b).abs().to_f64()
    }

    #[test]
    fn special_values() {
        assert!(dilog(&c(0.0, 0.0)).unwrap().value.is_zero());
        let one = dilog(&c(1.0, 0.0)).unwrap().value;
        assert!(diff(&one, &Complex::from_real(zeta2(P))) < 1e-70);

        let minus_one = dilog(&c(-1.0, 0.0)).unwrap().value;
        let expected = Complex::from_real(-zeta2(P) / 2);
        assert!(diff(&minus_one, &expected) < 1e-70);

        let half = dilog(&c(0.5, 0.0)).unwrap().value;
        let ln2 = Float::with_val(P, rug::float::Constant::Log2);
        let expected = Float::with_val(P, zeta2(P) / 2) - Float::with_val(P, ln2.square_ref()) / 2;
        assert!(diff(&half, &Complex::from_real(expected)) < 1e-70);
        // and against plain summation
        assert!(diff(&half, &series_oracle(&c(0.5, 0.0), 120)) < 1e-30);
    }

    #[test]
    fn alternating_series_at_minus_one() {
        // Σ (-1)^k / k² with the averaged endpoint; error O(1/K³).
        let k = 20_000u32;
        let s = series_oracle(&c(-1.0, 0.0), k);
        let last: Float = Float::with_val(P, Float::u_pow_u(k + 1, 2)).recip() / 2;
        let s = &s + &Complex::from_real(last.clone() * if k.is_multiple_of(2) { -1 } else { 1 });
        let v = dilog(&c(-1.0, 0.0)).unwrap().value;
        assert!(diff(&s, &v) < 1e-11);
    }

    #[test]
    fn hard_unit_circle_points() {
        // w = e^{iπ/3}: Li₂ = π²/36 + i·Cl₂(π/3), Cl₂(π/3) = 1.01494160640965362502...
        let pi = Complex::pi(P);
        let theta = Float::with_val(P, &pi / 3);
        let w = Complex::from_polar(&Float::with_val(P, 1), &theta);
        let v = dilog(&w).unwrap().value;
        let re = Float::with_val(P, pi.square_ref()) / 36;
        assert!((Float::with_val(P, &v.re - &re)).abs() < 1e-70);
        assert!((v.im.to_f64() - 1.014_941_606_409_653_6).abs() < 1e-15);
    }

    #[test]
    fn domain_error_outside_disk() {
        assert!(matches!(dilog(&c(1.01, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(dilog(&c(0.8, 0.7)), Err(Error::Domain(_))));
    }

    #[test]
    fn agrees_with_series_inside_disk() {
        for &(re, im) in &[(0.3, 0.6), (-0.7, 0.2), (0.62, -0.5), (-0.1, -0.8)] {
            let w = c(re, im);
            let n = 1200;
            let r: f64 = (re * re + im * im).sqrt();
            let tail = r.powi(n as i32 + 1) / (1.0 - r);
            let oracle = series_oracle(&w, n);
            let v = dilog(&w).unwrap();
            assert!(diff(&oracle, &v.value) < tail + 1e-60, "{re} {im}");
        }
    }

    #[test]
    fn error_estimate_is_small_and_reported() {
        let r = dilog(&c(-0.4, 0.85)).unwrap();
        assert!(r.error_estimate >= 0.0);
        assert!(r.error_estimate < 2f64.powi(-(P as i32 - 8)));
    }

    #[test]
    fn precision_below_minimum_rejected() {
        let w = Complex::from_f64(32, 0.1, 0.1);
        assert!(matches!(dilog(&w), Err(Error::Precision { .. })));
    }
}
