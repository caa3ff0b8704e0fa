use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(2k, k)`.
pub fn central_binomial(k: u64) -> BigInt {
    binomial(2 * k, k)
}

/// `[C(n,0), ..., C(n,n)]`.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    PascalRows::new().nth(n).expect("PascalRows is infinite")
}

/// Successive rows of Pascal's triangle, each derived from the previous one
/// with `O(n)` exact additions.
#[derive(Debug, Clone, Default)]
pub struct PascalRows {
    row: Vec<BigInt>,
}

impl PascalRows {
    pub fn new() -> Self {
        Self { row: Vec::new() }
    }

    /// Advances to the next row and returns a view of it.
    pub fn advance(&mut self) -> &[BigInt] {
        if self.row.is_empty() {
            self.row.push(BigInt::one());
        } else {
            self.row.push(BigInt::one());
            for k in (1..self.row.len() - 1).rev() {
                let prev = self.row[k - 1].clone();
                self.row[k] += prev;
            }
        }
        &self.row
    }
}

impl Iterator for PascalRows {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.advance().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(7, 0), BigInt::one());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn rows() {
        assert_eq!(binomial_row(0), vec![BigInt::one()]);
        let r3: Vec<BigInt> = [1, 3, 3, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(binomial_row(3), r3);
    }

    #[test]
    fn row_sums_are_powers_of_two() {
        let mut rows = PascalRows::new();
        for n in 0..=500usize {
            let row = rows.advance();
            assert_eq!(row.len(), n + 1);
            let sum: BigInt = row.iter().sum();
            assert_eq!(sum, BigInt::one() << n, "row {n}");
        }
    }

    #[test]
    fn large_binomial_is_exact() {
        // C(10000, 5000) has 3009 decimal digits
        let c = binomial(10_000, 5_000);
        assert_eq!(c.to_string().len(), 3009);
        assert_eq!(c, binomial(9_999, 4_999) + binomial(9_999, 5_000));
    }

    proptest! {
        #[test]
        fn symmetry(n in 0u64..=500, k in 0u64..=500) {
            prop_assume!(k <= n);
            prop_assert_eq!(binomial(n, k), binomial(n, n - k));
        }

        #[test]
        fn row_matches_pointwise(n in 0usize..120) {
            let row = binomial_row(n);
            for (k, c) in row.iter().enumerate() {
                prop_assert_eq!(c, &binomial(n as u64, k as u64));
            }
        }
    }
}
