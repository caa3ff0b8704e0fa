use num_bigint::BigInt;
use num_traits::Zero;

use super::{bernoulli_2j, roundoff, target_log2, working_bits, OracleValue, BERNOULLI_EVEN};
use crate::exactmath::{ExactRational, Real};

/// `atan(1/q)` by its Taylor series, stopped once the next term is at most
/// `eps`. Returns the value and that next term, which bounds the error.
fn atan_recip(q: u64, eps: &Real, bits: usize) -> (Real, Real) {
    let q2 = Real::from_u64(q * q, bits);
    let mut power = Real::from_u64(q, bits).recip();
    let mut acc = Real::zero(bits);
    let mut k = 0u64;
    loop {
        let term = &power / Real::from_u64(2 * k + 1, bits);
        if term <= *eps {
            return (acc, term);
        }
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= &term;
        }
        power = power / &q2;
        k += 1;
    }
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_ref(target_error: &Real) -> OracleValue {
    let wp = working_bits(target_error);
    let eps = target_error.with_bits(wp) / Real::from_u64(64, wp);
    let (a5, e5) = atan_recip(5, &eps, wp);
    let (a239, e239) = atan_recip(239, &eps, wp);
    let value = Real::from_u64(16, wp) * a5 - Real::from_u64(4, wp) * a239;
    let bound = Real::from_u64(16, wp) * e5 + Real::from_u64(4, wp) * e239;
    OracleValue {
        value,
        method: "machin-arctan",
        claimed_error: bound + roundoff(wp),
    }
}

/// Exact harmonic number `H_n`.
pub fn harmonic_exact(n: u64) -> ExactRational {
    let mut h = ExactRational::zero();
    for k in 1..=n {
        h += ExactRational::new(BigInt::from(1), BigInt::from(k));
    }
    h
}

/// `|B_{2j}| / (2j n^{2j})` as an `f64` log2, for parameter selection.
fn em_term_log2(j: usize, n: f64) -> f64 {
    let (num, den) = BERNOULLI_EVEN[j - 1];
    ((num.abs() as f64) / (den as f64 * 2.0 * j as f64)).log2() - 2.0 * j as f64 * n.log2()
}

/// Euler's constant from `H_n - ln n - 1/(2n) + sum_{i<=j} B_2i / (2i n^2i)`,
/// with `n = 10^5` unless the target needs a larger `n`. The claimed error
/// is the first dropped correction plus roundoff.
pub fn gamma_ref(target_error: &Real) -> OracleValue {
    let need = target_log2(target_error) + 1.0;
    let mut n = 100_000f64;
    let j = (4..=7).find(|&j| -em_term_log2(j + 1, n) >= need);
    let j = match j {
        Some(j) => j,
        None => {
            // B_16 / (16 n^16) <= target / 2
            let lhs = (BERNOULLI_EVEN[7].0.abs() as f64 / (BERNOULLI_EVEN[7].1 as f64 * 16.0)).log2();
            n = ((need + lhs) / 16.0).exp2().ceil();
            7
        }
    };
    gamma_ref_at(n as u64, j, working_bits(target_error) + (n.log2().ceil() as usize))
}

/// The Euler-Maclaurin estimate at a fixed `n` and correction depth
/// `j <= 7`.
pub fn gamma_ref_at(n: u64, j: usize, bits: usize) -> OracleValue {
    assert!(n >= 1 && j <= 7);
    let mut h = Real::zero(bits);
    for k in (1..=n).rev() {
        h += Real::from_u64(k, bits).recip();
    }
    let nr = Real::from_u64(n, bits);
    let mut v = h - nr.ln() - (Real::from_u64(2, bits) * &nr).recip();
    let n2 = &nr * &nr;
    let mut np = n2.clone();
    for i in 1..=j {
        v += bernoulli_2j(i, bits) / (Real::from_u64(2 * i as u64, bits) * &np);
        np *= &n2;
    }
    let dropped = bernoulli_2j(j + 1, bits).abs() / (Real::from_u64(2 * (j as u64 + 1), bits) * np);
    let rounding = Real::from_u64(n, bits) * Real::pow2(-(bits as i64) + 2, 64) + roundoff(bits);
    OracleValue {
        value: v,
        method: "euler-maclaurin",
        claimed_error: dropped + rounding,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits_and_substrate_agreement() {
        let p = pi_ref(&Real::pow2(-200, 64));
        assert!(p.value.to_decimal_string(20).starts_with("3.14159265358"));
        let lib = Real::pi(p.value.bits());
        assert!((&p.value - lib).abs() <= Real::pow2(-198, 64));
    }

    #[test]
    fn arctan_zero_term() {
        // atan(1/q) for huge q is below any coarse eps immediately
        let (v, _) = atan_recip(1 << 20, &Real::pow2(-10, 64), 128);
        assert!(v.is_zero());
    }

    #[test]
    fn gamma_two_depths_agree() {
        let a = gamma_ref_at(10_000, 4, 220);
        let b = gamma_ref_at(100_000, 4, 220);
        assert!((&a.value - &b.value).abs() <= &a.claimed_error + &b.claimed_error);
        assert!(b.value.to_decimal_string(20).starts_with("0.577215664901"));
    }

    #[test]
    fn gamma_meets_target() {
        let t = Real::pow2(-150, 64);
        let g = gamma_ref(&t);
        assert!(g.claimed_error <= t);
        assert!(g.value.to_decimal_string(30).starts_with("0.5772156649015328606065120900"));
    }

    #[test]
    fn harmonic_small() {
        assert_eq!(harmonic_exact(1), ExactRational::from_integer(1.into()));
        assert_eq!(harmonic_exact(4), ExactRational::new(25.into(), 12.into()));
        let h = harmonic_exact(1000);
        assert!(h > ExactRational::from_integer(7.into()) && h < ExactRational::from_integer(8.into()));
    }
}
