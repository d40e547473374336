//! Exact scaled Bernoulli numbers `β_n = B_n / n!` (with `B_1 = -1/2`).

use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

fn cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// `β_0, …, β_{n_max}` where `β_n = B_n / n!`.
///
/// Uses `Σ_{j=0}^{m} β_j / (m + 1 - j)! = 0` for `m ≥ 1`. The table only
/// grows; values are exact so concurrent callers always see the same numbers.
pub fn scaled_bernoulli(n_max: usize) -> Vec<Rational> {
    let mut table = cache().lock().unwrap_or_else(|e| e.into_inner());
    if table.len() <= n_max {
        let inv_fact: Vec<Rational> = (0..=n_max + 1)
            .map(|k| Rational::from((Integer::from(1), Integer::from(Integer::factorial(k as u32)))))
            .collect();
        for m in table.len()..=n_max {
            if m >= 3 && m % 2 == 1 {
                table.push(Rational::new());
                continue;
            }
            let mut acc = Rational::new();
            for (j, beta) in table.iter().enumerate() {
                if *beta != 0 {
                    acc += Rational::from(beta * &inv_fact[m + 1 - j]);
                }
            }
            table.push(-acc);
        }
    }
    table[..=n_max].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let b = scaled_bernoulli(8);
        let fact = |n: u32| Integer::from(Integer::factorial(n));
        let raw: Vec<Rational> = b.iter().enumerate().map(|(n, x)| Rational::from(x * fact(n as u32))).collect();
        let expected = [(1, 1), (-1, 2), (1, 6), (0, 1), (-1, 30), (0, 1), (1, 42), (0, 1), (-1, 30)];
        for (got, &(n, d)) in raw.iter().zip(&expected) {
            assert_eq!(*got, Rational::from((n, d)));
        }
    }

    #[test]
    fn b12() {
        let b = scaled_bernoulli(12);
        let raw = Rational::from(&b[12] * Integer::from(Integer::factorial(12)));
        assert_eq!(raw, Rational::from((-691, 2730)));
    }
}
