//! Exact Laurent coefficients of `∏_{j=1}^N (1 - x^j)^{-1}` at `x = 1`.
//!
//! With `x = 1 + t` every factor splits as
//! `1 / (1 - (1+t)^j) = -v_j(t) / (j t)` where `v_j` is a unit power series,
//! so the product is `(-1)^N / (N! t^N) · ∏ v_j(t)` and
//!
//! ```text
//! C_{0,1,l}(N) = (-1)^N / N! · [t^{N-l}] ∏_{j=1}^N v_j(t).
//! ```
//!
//! Only the first `N` coefficients of the product are needed, so it is
//! accumulated truncated at order `N - 1`. Coefficients of order `k` do not
//! depend on the truncation order, which lets [`ExactTable`] produce every
//! `N ≤ n_max` from a single running product.

mod series;

pub use series::{series_reciprocal, unit_factor, unit_polynomial, RationalTaylorSeries};

use rug::{Float, Integer, Rational};

use crate::hp::format_float;
use crate::{Error, Result};

/// The principal part `{C_{0,1,l}(N)}_{l=1..N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    n: u32,
    values: Vec<Rational>,
}

impl CoefficientVector {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `C_{0,1,l}(N)` for `1 ≤ l ≤ N`.
    pub fn get(&self, l: u32) -> Result<&Rational> {
        if l == 0 || l > self.n {
            return Err(Error::Range { l, n: self.n });
        }
        Ok(&self.values[(l - 1) as usize])
    }

    /// Values ordered by `l = 1..=N`.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Integer coefficients of `w_j(t) = ((1 + t)^j - 1) / t`, so `v_j = j / w_j`.
fn integer_unit_polynomial(j: u32) -> Vec<Integer> {
    (0..j).map(|m| Integer::from(Integer::binomial_u(j, m + 1))).collect()
}

/// `p ← p · v_j`, computed as `j · p / w_j` by forward substitution.
fn apply_unit_factor(p: &[Rational], j: u32) -> Vec<Rational> {
    let w = integer_unit_polynomial(j);
    let mut out: Vec<Rational> = Vec::with_capacity(p.len());
    for k in 0..p.len() {
        let mut acc = Rational::from(&p[k] * j);
        for (m, wm) in w.iter().enumerate().take(k + 1).skip(1) {
            acc -= Rational::from(&out[k - m] * wm);
        }
        acc /= j;
        out.push(acc);
    }
    out
}

fn principal_part_from_product(n: u32, product: &[Rational]) -> CoefficientVector {
    let mut scale = Rational::from((Integer::from(1), Integer::from(Integer::factorial(n))));
    if n % 2 == 1 {
        scale = -scale;
    }
    let values = (1..=n)
        .map(|l| Rational::from(&product[(n - l) as usize] * &scale))
        .collect();
    CoefficientVector { n, values }
}

/// All `C_{0,1,l}(N)`, `l = 1..=N`, as exact rationals.
pub fn exact_coefficients(n: u32) -> Result<CoefficientVector> {
    if n == 0 {
        return Err(Error::EmptyProduct);
    }
    let mut product = vec![Rational::new(); n as usize];
    product[0] = Rational::from(1);
    for j in 1..=n {
        product = apply_unit_factor(&product, j);
    }
    Ok(principal_part_from_product(n, &product))
}

/// Coefficient vectors for every `N = 1..=n_max` from one running product.
#[derive(Clone, Debug)]
pub struct ExactTable {
    rows: Vec<CoefficientVector>,
}

impl ExactTable {
    pub fn compute(n_max: u32) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::EmptyProduct);
        }
        let mut product = vec![Rational::new(); n_max as usize];
        product[0] = Rational::from(1);
        let mut rows = Vec::with_capacity(n_max as usize);
        for j in 1..=n_max {
            product = apply_unit_factor(&product, j);
            rows.push(principal_part_from_product(j, &product[..j as usize]));
        }
        Ok(ExactTable { rows })
    }

    pub fn n_max(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn get(&self, n: u32) -> Result<&CoefficientVector> {
        if n == 0 {
            return Err(Error::EmptyProduct);
        }
        self.rows
            .get((n - 1) as usize)
            .ok_or_else(|| Error::Precondition(format!("N = {n} exceeds table size {}", self.n_max())))
    }
}

/// The same pipeline as [`exact_coefficients`] carried out in `prec`-bit
/// floats. Intended for `N` beyond the range where rationals are practical.
pub fn exact_coefficients_float(n: u32, prec: u32) -> Result<Vec<Float>> {
    if n == 0 {
        return Err(Error::EmptyProduct);
    }
    crate::check_precision(prec)?;
    let len = n as usize;
    let mut product = vec![Float::new(prec); len];
    product[0] = Float::with_val(prec, 1);
    for j in 1..=n {
        let w: Vec<Float> = integer_unit_polynomial(j)
            .into_iter()
            .map(|c| Float::with_val(prec, c))
            .collect();
        let mut out: Vec<Float> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = Float::with_val(prec, &product[k] * j);
            for (m, wm) in w.iter().enumerate().take(k + 1).skip(1) {
                acc -= Float::with_val(prec, &out[k - m] * wm);
            }
            acc /= j;
            out.push(acc);
        }
        product = out;
    }
    let mut scale = Float::with_val(prec, Integer::from(Integer::factorial(n)));
    scale.recip_mut();
    if n % 2 == 1 {
        scale = -scale;
    }
    Ok((1..=n)
        .map(|l| Float::with_val(prec, &product[(n - l) as usize] * &scale))
        .collect())
}

/// `∏_{j=1}^N (1 - x^j)^{-1} - Σ_{l=1}^N C_{0,1,l}(N) / (x - 1)^l`, exactly.
///
/// The result is the part of the product analytic at `x = 1`.
pub fn principal_part_remainder(n: u32, x: &Rational) -> Result<Rational> {
    let coeffs = exact_coefficients(n)?;
    principal_part_remainder_with(&coeffs, x)
}

pub fn principal_part_remainder_with(coeffs: &CoefficientVector, x: &Rational) -> Result<Rational> {
    let n = coeffs.n();
    if *x == 1 {
        return Err(Error::Pole("x = 1".into()));
    }
    if *x == -1 && n >= 2 {
        return Err(Error::Pole("x = -1 is a root of 1 - x^2".into()));
    }
    let mut product = Rational::from(1);
    let mut power = Rational::from(1);
    for _ in 1..=n {
        power *= x;
        product *= Rational::from(1 - &power);
    }
    let mut value = Rational::from(product.recip_ref());

    let shift = Rational::from(x - 1u32);
    let mut shift_pow = Rational::from(1);
    for c in coeffs.values() {
        shift_pow *= &shift;
        value -= Rational::from(c / &shift_pow);
    }
    Ok(value)
}

/// Canonical `p/q` form with `q > 0` and `gcd(p, q) = 1`.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::parse(s.trim())
        .map(Rational::from)
        .map_err(|e| Error::Domain(format!("invalid rational {s:?}: {e}")))
}

/// Scientific decimal with `digits` significant digits, e.g. `-4.45026e0`.
pub fn format_decimal(x: &Rational, digits: usize) -> String {
    let prec = (digits as f64 * 3.33).ceil() as u32 + 64;
    format_float(&Float::with_val(prec, x), digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn hand_values() {
        let c1 = exact_coefficients(1).unwrap();
        assert_eq!(c1.values(), &[q(-1, 1)]);
        let c2 = exact_coefficients(2).unwrap();
        assert_eq!(c2.get(1).unwrap(), &q(-1, 4));
        assert_eq!(c2.get(2).unwrap(), &q(1, 2));
        let c5 = exact_coefficients(5).unwrap();
        assert_eq!(c5.get(5).unwrap(), &q(-1, 120));
    }

    #[test]
    fn hand_values_n3() {
        // 1/((1-x)(1-x^2)(1-x^3)) = -1/((x-1)^3 (x+1)(x^2+x+1)), so with
        // g(x) = -1/((x+1)(x^2+x+1)): C_3 = g(1), C_2 = g'(1), C_1 = g''(1)/2.
        let c = exact_coefficients(3).unwrap();
        assert_eq!(c.values(), &[q(-17, 72), q(1, 4), q(-1, 6)]);
    }

    #[test]
    fn errors() {
        assert_eq!(exact_coefficients(0), Err(Error::EmptyProduct));
        let c = exact_coefficients(3).unwrap();
        assert_eq!(c.get(4), Err(Error::Range { l: 4, n: 3 }));
        assert_eq!(c.get(0), Err(Error::Range { l: 0, n: 3 }));
    }

    #[test]
    fn table_matches_direct_computation() {
        let table = ExactTable::compute(25).unwrap();
        for n in [1, 2, 7, 13, 25] {
            assert_eq!(table.get(n).unwrap(), &exact_coefficients(n).unwrap());
        }
        assert!(table.get(26).is_err());
    }

    #[test]
    fn remainder_examples() {
        assert_eq!(principal_part_remainder(1, &q(1, 2)).unwrap(), q(0, 1));
        assert_eq!(principal_part_remainder(2, &q(0, 1)).unwrap(), q(1, 4));
        assert!(principal_part_remainder(2, &q(1, 1)).is_err());
        assert!(principal_part_remainder(2, &q(-1, 1)).is_err());
        assert!(principal_part_remainder(1, &q(-1, 1)).is_ok());
    }

    #[test]
    fn remainder_is_analytic_at_one() {
        for n in [2u32, 6, 12] {
            let coeffs = exact_coefficients(n).unwrap();
            let vals: Vec<f64> = [100i64, 1000, 10_000]
                .iter()
                .map(|&d| {
                    principal_part_remainder_with(&coeffs, &(q(1, 1) + q(1, d))).unwrap().to_f64()
                })
                .collect();
            let d1 = (vals[1] - vals[0]).abs();
            let d2 = (vals[2] - vals[1]).abs();
            assert!(d2 < d1 / 5.0, "N={n}: {vals:?}");
            if n == 2 {
                // 1/((x-1)²(x+1)) minus its principal part tends to the
                // (x-1)² Taylor coefficient of 1/(x+1), which is 1/8
                assert!((vals[2] - 0.125).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn float_pipeline_matches_rationals() {
        let exact = exact_coefficients(40).unwrap();
        let approx = exact_coefficients_float(40, 512).unwrap();
        for (e, a) in exact.values().iter().zip(&approx) {
            let e = Float::with_val(512, e);
            let rel = Float::with_val(512, &e - a).abs() / e.abs();
            assert!(rel < 1e-60, "{rel}");
        }
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&q(-1, 1)), "-1/1");
        assert_eq!(format_rational(&q(6, -8)), "-3/4");
        assert_eq!(parse_rational("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_decimal(&q(-1, 4), 5), "-2.5000e-1");
        assert_eq!(format_decimal(&q(-1, 1), 3), "-1.00e0");
        assert_eq!(format_decimal(&q(2, 3), 4), "6.667e-1");
    }
}
