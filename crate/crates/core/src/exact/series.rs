//! Truncated power series in `t` with exact rational coefficients.

use rug::{Integer, Rational};

use crate::{Error, Result};

/// `Σ_{k=0}^{order} c_k t^k + O(t^{order+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTaylorSeries {
    coeffs: Vec<Rational>,
}

impl RationalTaylorSeries {
    /// Builds a series from explicit coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    ///
    /// # Panics
    ///
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        RationalTaylorSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rational::new(); order + 1];
        coeffs[0] = Rational::from(1);
        RationalTaylorSeries { coeffs }
    }

    /// Polynomial coefficients truncated or zero-padded to `order`.
    pub fn from_polynomial(poly: &[Rational], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| poly.get(k).cloned().unwrap_or_default())
            .collect();
        RationalTaylorSeries { coeffs }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul_truncated(&self, other: &Self) -> Self {
        let order = self.truncation_order().min(other.truncation_order());
        let mut out = vec![Rational::new(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        RationalTaylorSeries { coeffs: out }
    }

    /// `self / u` where `u` is a polynomial with nonzero constant term.
    ///
    /// Equivalent to multiplying by the reciprocal series of `u`, but costs
    /// `O(order · deg u)` instead of a full series product.
    pub fn div_by_polynomial(&self, u: &[Rational]) -> Result<Self> {
        let u0 = u.first().filter(|c| **c != 0).ok_or(Error::NotAUnit)?;
        let order = self.truncation_order();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[k].clone();
            for (m, um) in u.iter().enumerate().take(k + 1).skip(1) {
                if *um != 0 {
                    acc -= Rational::from(um * &out[k - m]);
                }
            }
            if *u0 != 1 {
                acc /= u0;
            }
            out.push(acc);
        }
        Ok(RationalTaylorSeries { coeffs: out })
    }
}

/// Reciprocal series `r` with `s · r ≡ 1` up to the truncation order of `s`.
pub fn series_reciprocal(s: &RationalTaylorSeries) -> Result<RationalTaylorSeries> {
    RationalTaylorSeries::one(s.truncation_order()).div_by_polynomial(s.coeffs())
}

/// Coefficients `binom(j, m + 1) / j` for `m = 0..j`, i.e. the polynomial
/// `u_j(t) = ((1 + t)^j - 1) / (j t)`.
pub fn unit_polynomial(j: u32) -> Vec<Rational> {
    let jj = Integer::from(j);
    (0..j)
        .map(|m| Rational::from((Integer::from(Integer::binomial_u(j, m + 1)), jj.clone())))
        .collect()
}

/// The unit series `v_j(t) = 1 / u_j(t)`, defined by
/// `1 / (1 - (1 + t)^j) = -v_j(t) / (j t)`, truncated at `order`.
pub fn unit_factor(j: u32, order: usize) -> Result<RationalTaylorSeries> {
    if j == 0 {
        return Err(Error::Precondition("unit_factor requires j >= 1".into()));
    }
    RationalTaylorSeries::one(order).div_by_polynomial(&unit_polynomial(j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn series(c: &[(i64, i64)]) -> RationalTaylorSeries {
        RationalTaylorSeries::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn unit_factor_examples() {
        assert_eq!(unit_factor(1, 3).unwrap(), series(&[(1, 1), (0, 1), (0, 1), (0, 1)]));
        assert_eq!(unit_factor(2, 2).unwrap(), series(&[(1, 1), (-1, 2), (1, 4)]));
        assert_eq!(unit_factor(3, 1).unwrap(), series(&[(1, 1), (-1, 1)]));
        assert!(unit_factor(0, 2).is_err());
    }

    #[test]
    fn reciprocal_examples() {
        let r = series_reciprocal(&series(&[(1, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(r, series(&[(1, 1), (0, 1), (0, 1)]));
        let r = series_reciprocal(&series(&[(1, 1), (1, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(r, series(&[(1, 1), (-1, 1), (1, 1), (-1, 1)]));
        let r = series_reciprocal(&series(&[(2, 1), (1, 1)])).unwrap();
        assert_eq!(r, series(&[(1, 2), (-1, 4)]));
    }

    #[test]
    fn reciprocal_of_non_unit_fails() {
        let s = series(&[(0, 1), (1, 1)]);
        assert_eq!(series_reciprocal(&s), Err(Error::NotAUnit));
    }

    #[test]
    fn unit_factor_inverts_unit_polynomial() {
        for j in 1..8 {
            let v = unit_factor(j, 10).unwrap();
            let u = RationalTaylorSeries::from_polynomial(&unit_polynomial(j), 10);
            assert_eq!(u.mul_truncated(&v), RationalTaylorSeries::one(10));
        }
    }

    #[test]
    fn truncated_product_uses_smaller_order() {
        let a = series(&[(1, 1), (1, 1), (1, 1)]);
        let b = series(&[(1, 1), (-1, 1)]);
        assert_eq!(a.mul_truncated(&b), series(&[(1, 1), (0, 1)]));
    }
}
