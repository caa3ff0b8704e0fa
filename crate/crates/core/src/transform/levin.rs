//! Levin u-transform for slowly (algebraically) converging outer series.

use crate::exactmath::{binomial, Real};

/// Levin u estimate of `sum a_j` from `terms = [a_0, ..., a_k]`, with
/// remainder model `omega_j = (j + 1) a_j`. `None` if some term vanishes.
pub fn levin_u(terms: &[Real]) -> Option<Real> {
    let k = terms.len().checked_sub(1)?;
    let bits = terms[0].bits();
    let mut partial = Real::zero(bits);
    let mut num = Real::zero(bits);
    let mut den = Real::zero(bits);
    let kp1 = Real::from_u64(k as u64 + 1, bits);
    for (j, a) in terms.iter().enumerate() {
        if a.is_zero() {
            return None;
        }
        partial += a;
        let jp1 = Real::from_u64(j as u64 + 1, bits);
        let omega = &jp1 * a;
        let mut c = Real::from_bigint(&binomial(k as u64, j as u64), bits) * (&jp1 / &kp1).powi(k as i64 - 1);
        if j % 2 == 1 {
            c = -c;
        }
        let c = c / omega;
        num += &c * &partial;
        den += c;
    }
    Some(num / den)
}

/// Feeds terms one at a time and tracks successive Levin estimates.
#[derive(Debug, Clone, Default)]
pub struct LevinAccelerator {
    terms: Vec<Real>,
    estimates: Vec<Real>,
}

impl LevinAccelerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, term: Real) -> Option<&Real> {
        self.terms.push(term);
        let est = levin_u(&self.terms)?;
        self.estimates.push(est);
        self.estimates.last()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `|L_k - L_{k-1}|` for the two most recent estimates.
    pub fn last_change(&self) -> Option<Real> {
        let n = self.estimates.len();
        (n >= 2).then(|| (&self.estimates[n - 1] - &self.estimates[n - 2]).abs())
    }

    pub fn estimate(&self) -> Option<&Real> {
        self.estimates.last()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accelerates_basel() {
        let bits = 512;
        let target = Real::pi(bits).powi(2) / Real::from_u64(6, bits);
        let mut acc = LevinAccelerator::new();
        for n in 1..=40u64 {
            acc.push(Real::from_u64(n * n, bits).recip());
        }
        let err = (acc.estimate().unwrap() - &target).abs();
        assert!(err < Real::pow2(-100, bits), "error {}", err.to_sci_string(3));
        let plain_err = Real::pow2(-5, bits);
        assert!(err < plain_err);
    }

    #[test]
    fn single_term_is_identity() {
        let t = [Real::from_ratio(3, 7, 128)];
        assert!((levin_u(&t).unwrap() - &t[0]).abs() < Real::pow2(-120, 128));
        assert!(levin_u(&[]).is_none());
        assert!(levin_u(&[Real::one(64), Real::zero(64)]).is_none());
    }
}
