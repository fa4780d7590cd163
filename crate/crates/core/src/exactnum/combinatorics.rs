use num::{BigInt, One, Zero};

use super::{Poly, Rational};

/// `n!`.
pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
///
/// Multiplicative formula: after step `i` the accumulator equals `C(n-k+i, i)`,
/// so every division is exact.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// Number of `k`-element multisets over an `n`-element set, `C(n+k-1, k)`.
pub fn multiset_coeff(n: u64, k: u64) -> BigInt {
    if n == 0 {
        return if k == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    binomial(n + k - 1, k as i64)
}

/// Triangular table of signed Stirling numbers of the first kind, filled by
/// `s(n+1, k) = s(n, k-1) - n s(n, k)`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Table covering rows `0..=max_n`.
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 0..max_n {
            let prev = &rows[n];
            let mut next = vec![BigInt::zero(); n + 2];
            for (k, slot) in next.iter_mut().enumerate() {
                let left = if k >= 1 {
                    prev.get(k - 1).cloned().unwrap_or_default()
                } else {
                    BigInt::zero()
                };
                let here = prev.get(k).cloned().unwrap_or_default();
                *slot = left - here * n;
            }
            rows.push(next);
        }
        StirlingTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `s(n, k)`; zero outside `0 <= k <= n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: i64) -> BigInt {
        assert!(n <= self.max_n(), "Stirling row {n} outside table");
        if k < 0 {
            return BigInt::zero();
        }
        self.rows[n].get(k as usize).cloned().unwrap_or_default()
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

/// Signed Stirling number of the first kind `s(n, k)`.
pub fn stirling_first(n: usize, k: i64) -> BigInt {
    StirlingTable::new(n).get(n, k)
}

/// Power-basis coefficients of the falling factorial `x(x-1)...(x-k+1)`.
pub fn falling_factorial_poly(k: usize) -> Poly {
    let table = StirlingTable::new(k);
    Poly::new(
        table
            .row(k)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(4, 0), int(1));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(3, -1), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(
            binomial(60, 30),
            "118264581564861424".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 1..40u64 {
            for k in 0..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn multiset_values() {
        assert_eq!(multiset_coeff(2, 3), int(4));
        assert_eq!(multiset_coeff(5, 0), int(1));
        assert_eq!(multiset_coeff(0, 0), int(1));
        assert_eq!(multiset_coeff(0, 4), int(0));
    }

    #[test]
    fn multiset_counts_nondecreasing_words() {
        // nondecreasing words of length m over {1..x-1}
        for x in 1u64..6 {
            for m in 0usize..5 {
                let alphabet = x.saturating_sub(1) as u32;
                let count = if m == 0 {
                    1
                } else {
                    itertools::Itertools::multi_cartesian_product((0..m).map(|_| 1..=alphabet))
                        .filter(|w| w.windows(2).all(|p| p[0] <= p[1]))
                        .count()
                };
                assert_eq!(
                    multiset_coeff(x - 1, m as u64),
                    int(count as i64),
                    "x={x} m={m}"
                );
            }
        }
        // x = 3, m = 2: 11, 12, 22
        assert_eq!(multiset_coeff(2, 2), int(3));
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling_first(3, 2), int(-3));
        assert_eq!(stirling_first(5, 1), int(24));
        assert_eq!(stirling_first(4, 4), int(1));
        assert_eq!(stirling_first(0, 0), int(1));
        assert_eq!(stirling_first(4, 0), int(0));
        assert_eq!(stirling_first(4, 5), int(0));
        assert_eq!(stirling_first(4, -1), int(0));
    }

    #[test]
    fn stirling_rows_expand_falling_factorial() {
        // independent route: multiply out x(x-1)...(x-n+1) directly
        let mut poly = vec![int(1)];
        for n in 0..15usize {
            let table = StirlingTable::new(n);
            let row: Vec<BigInt> = (0..=n as i64).map(|k| table.get(n, k)).collect();
            assert_eq!(row, poly, "row {n}");
            let mut next = vec![int(0); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * n;
            }
            poly = next;
        }
    }

    #[test]
    fn stirling_recurrence_holds() {
        let t = StirlingTable::new(30);
        for n in 0..30usize {
            for k in 0..=(n as i64 + 1) {
                assert_eq!(t.get(n + 1, k), t.get(n, k - 1) - t.get(n, k) * n);
            }
        }
    }
}
