use super::{roundoff, working_bits, zeta_int, OracleValue};
use crate::exactmath::Real;

/// `M = sum_{n>=1} H_n (zeta(n+1) - 1)`.
///
/// Since `zeta(n+1) - 1 < 3 * 2^-(n+1)` and `H_n <= n`, the tail after `N`
/// terms is below `3 (N+2) 2^-(N+1)`.
pub fn m_ref(target_error: &Real) -> OracleValue {
    let wp = working_bits(target_error);
    let half = target_error.with_bits(wp) / Real::from_u64(2, wp);
    let tail_after = |n: u64| Real::from_u64(3 * (n + 2), wp) * Real::pow2(-(n as i64) - 1, 64);
    let mut n_max = 1u64;
    while tail_after(n_max) > half {
        n_max += 1;
    }
    let zeta_target = &half / Real::from_u64(n_max * n_max, wp);

    let one = Real::one(wp);
    let mut h = Real::zero(wp);
    let mut acc = Real::zero(wp);
    let mut zeta_err = Real::zero(wp);
    for n in 1..=n_max {
        h += Real::from_u64(n, wp).recip();
        let z = zeta_int(n + 1, &zeta_target);
        acc += &h * (z.value.with_bits(wp) - &one);
        zeta_err += &h * z.claimed_error;
    }
    OracleValue {
        value: acc,
        method: "harmonic-weighted-zeta-excess",
        claimed_error: tail_after(n_max) + zeta_err + roundoff(wp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::zeta_ref;

    #[test]
    fn headline_value() {
        let m = m_ref(&Real::pow2(-100, 64));
        assert!(m.value.to_decimal_string(20).starts_with("1.2577468869"));
        assert!(m.claimed_error <= Real::pow2(-100, 64));
    }

    #[test]
    fn first_term() {
        let z = zeta_ref(&Real::from_u64(2, 128), &Real::pow2(-100, 64)).unwrap();
        let first = z.value - Real::one(128);
        assert!(first.to_decimal_string(10).starts_with("0.6449340668"));
    }
}
