//! Complex numbers over MPFR floats with an explicit binary precision.
//!
//! Binary operations produce results at the smaller of the two operand
//! precisions. Elementary functions use principal branches: `ln` has imaginary
//! part in `(-π, π]`, `sqrt` has non-negative real part.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex::from_f64(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Complex::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Complex::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Complex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Complex { re, im }
    }

    /// Real value `n / d` rounded to `prec` bits.
    pub fn from_ratio(prec: u32, n: i64, d: i64) -> Self {
        let re = Float::with_val(prec, n) / d;
        Complex::from_real(re)
    }

    /// `r · e^{iθ}`.
    pub fn from_polar(r: &Float, theta: &Float) -> Self {
        let prec = r.prec().min(theta.prec());
        let (s, c) = sin_cos(theta, prec);
        Complex {
            re: Float::with_val(prec, &c * r),
            im: Float::with_val(prec, &s * r),
        }
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().min(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Complex {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        let re2 = Float::with_val(prec, self.re.square_ref());
        let im2 = Float::with_val(prec, self.im.square_ref());
        re2 + im2
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let prec = self.prec().min(k.prec());
        Complex {
            re: Float::with_val(prec, &self.re * k),
            im: Float::with_val(prec, &self.im * k),
        }
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        Complex {
            re: Float::with_val(self.re.prec(), &self.re * k),
            im: Float::with_val(self.im.prec(), &self.im * k),
        }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Complex {
            re: Float::with_val(self.im.prec(), -&self.im),
            im: self.re.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        Complex::one(self.prec()) / self
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let r = Float::with_val(prec, self.re.exp_ref());
        let (s, c) = sin_cos(&self.im, prec);
        Complex {
            re: Float::with_val(prec, &c * &r),
            im: Float::with_val(prec, &s * &r),
        }
    }

    /// Principal logarithm. The logarithm of zero has real part `-∞`.
    pub fn ln(&self) -> Self {
        let prec = self.prec();
        Complex {
            re: Float::with_val(prec, self.abs().ln_ref()),
            im: self.arg(),
        }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return Complex::zero(prec);
        }
        let r = self.abs();
        let mut t = if self.re >= 0 {
            Float::with_val(prec, &r + &self.re)
        } else {
            Float::with_val(prec, &r - &self.re)
        };
        t /= 2;
        t.sqrt_mut();
        let mut other = Float::with_val(prec, self.im.abs_ref());
        other /= &t;
        other /= 2;
        if self.re >= 0 {
            let im = if self.im.is_sign_negative() { -other } else { other };
            Complex { re: t, im }
        } else {
            let im = if self.im.is_sign_negative() { -t } else { t };
            Complex { re: other, im }
        }
    }

    /// Principal power `self^w = exp(w · ln self)`; `0^w = 0` for `Re w > 0`.
    pub fn pow(&self, w: &Complex) -> Self {
        if self.is_zero() {
            return Complex::zero(self.prec().min(w.prec()));
        }
        (w * &self.ln()).exp()
    }

    /// Principal power with a real exponent.
    pub fn pow_real(&self, e: &Float) -> Self {
        self.pow(&Complex::from_real(e.clone()))
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i64) -> Self {
        let prec = self.prec();
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Complex::one(prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

fn sin_cos(x: &Float, prec: u32) -> (Float, Float) {
    let s = Float::with_val(prec, x.sin_ref());
    let c = Float::with_val(prec, x.cos_ref());
    (s, c)
}

/// Sum in a fixed pairwise order, so results are reproducible for a given
/// input order.
pub fn pairwise_sum(terms: &[Complex], prec: u32) -> Complex {
    match terms.len() {
        0 => Complex::zero(prec),
        1 => terms[0].clone(),
        n => {
            let (left, right) = terms.split_at(n / 2);
            &pairwise_sum(left, prec) + &pairwise_sum(right, prec)
        }
    }
}

/// Scientific decimal with `digits` significant digits: `-1.2345e-3`.
pub fn format_float(x: &Float, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return if digits == 1 { "0e0".to_string() } else { format!("0.{}e0", "0".repeat(digits - 1)) };
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    let Some(exp) = exp else {
        return mantissa;
    };
    let sign = if neg { "-" } else { "" };
    let (lead, rest) = mantissa.split_at(1);
    if rest.is_empty() {
        format!("{sign}{lead}e{}", exp - 1)
    } else {
        format!("{sign}{lead}.{rest}e{}", exp - 1)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let re = self.re.to_string_radix(10, Some(digits));
        let im = Float::with_val(self.im.prec(), self.im.abs_ref()).to_string_radix(10, Some(digits));
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{re} {sign} {im}i")
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        let prec = self.prec().min(rhs.prec());
        Complex {
            re: Float::with_val(prec, &self.re + &rhs.re),
            im: Float::with_val(prec, &self.im + &rhs.im),
        }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        let prec = self.prec().min(rhs.prec());
        Complex {
            re: Float::with_val(prec, &self.re - &rhs.re),
            im: Float::with_val(prec, &self.im - &rhs.im),
        }
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let prec = self.prec().min(rhs.prec());
        // extra bits absorb the cancellation in ac - bd
        let wp = prec + 16;
        let ac = Float::with_val(wp, &self.re * &rhs.re);
        let bd = Float::with_val(wp, &self.im * &rhs.im);
        let ad = Float::with_val(wp, &self.re * &rhs.im);
        let bc = Float::with_val(wp, &self.im * &rhs.re);
        Complex {
            re: Float::with_val(prec, &ac - &bd),
            im: Float::with_val(prec, &ad + &bc),
        }
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let prec = self.prec().min(rhs.prec());
        let wp = prec + 16;
        let den = rhs.with_prec(wp).norm_sqr();
        let conj = rhs.conj().with_prec(wp);
        let num = &self.with_prec(wp) * &conj;
        Complex {
            re: Float::with_val(prec, &num.re / &den),
            im: Float::with_val(prec, &num.im / &den),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex { (&self).$m(&rhs) }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex { (&self).$m(rhs) }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(128, re, im)
    }

    fn close(a: &Complex, b: &Complex, tol: f64) -> bool {
        (a - b).abs().to_f64() < tol
    }

    #[test]
    fn field_operations() {
        let a = c(1.5, -2.0);
        let b = c(-0.25, 3.0);
        let q = &(&a * &b) / &b;
        assert!(close(&q, &a, 1e-35));
        assert!(close(&(&a + &b), &c(1.25, 1.0), 1e-40));
        assert!(close(&(&a - &b), &c(1.75, -5.0), 1e-40));
    }

    #[test]
    fn result_precision_is_minimum_of_operands() {
        let a = Complex::from_f64(200, 1.0, 1.0);
        let b = Complex::from_f64(80, 2.0, 0.5);
        assert_eq!((&a * &b).prec(), 80);
        assert_eq!((&a + &b).prec(), 80);
        assert_eq!((&a / &b).prec(), 80);
    }

    #[test]
    fn principal_sqrt_and_log() {
        let z = c(-4.0, 0.0);
        assert!(close(&z.sqrt(), &c(0.0, 2.0), 1e-35));
        let w = c(-4.0, -0.0);
        assert!(close(&w.sqrt(), &c(0.0, -2.0), 1e-35));
        let z = c(-3.0, 4.0);
        let s = z.sqrt();
        assert!(close(&s, &c(1.0, 2.0), 1e-35));
        let l = c(-1.0, 0.0).ln();
        assert!((l.im.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let z = c(0.3, -1.7);
        assert!(close(&z.ln().exp(), &z, 1e-35));
    }

    #[test]
    fn powers() {
        let z = c(0.7, 0.2);
        assert!(close(&z.powi(5), &(&(&(&z * &z) * &z) * &(&z * &z)), 1e-35));
        assert!(close(&z.powi(-2), &(&z * &z).recip(), 1e-35));
        let half = Float::with_val(128, 0.5);
        assert!(close(&z.pow_real(&half), &z.sqrt(), 1e-35));
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let terms: Vec<Complex> = (0..37).map(|k| c(k as f64 * 0.5, -(k as f64))).collect();
        let s = pairwise_sum(&terms, 128);
        assert!(close(&s, &c(333.0, -666.0), 1e-30));
    }
}
