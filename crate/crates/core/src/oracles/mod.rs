//! Reference values computed by classical algorithms that share nothing with
//! the transform engine. Every value reports an error bound.

mod constants;
mod elliptic;
mod functions;
mod mconst;
mod zeta;

use crate::exactmath::{bits_for_error, Real};

pub use constants::{gamma_ref, gamma_ref_at, harmonic_exact, pi_ref};
pub use elliptic::{agm, elliptic_e_agm, elliptic_k_agm};
pub use functions::{digamma_ref, hurwitz_zeta_ref, lerch_ref, lngamma_ref, polylog_ref};
pub use mconst::m_ref;
pub use zeta::{zeta_int, zeta_ref};

#[derive(Debug, Clone)]
pub struct OracleValue {
    pub value: Real,
    pub method: &'static str,
    pub claimed_error: Real,
}

impl OracleValue {
    /// `|self - other| <= self.claimed_error + other.claimed_error + slack`
    pub fn agrees_with(&self, other: &Real, slack: &Real) -> bool {
        (&self.value - other).abs() <= &self.claimed_error + slack
    }
}

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_16`.
pub(crate) const BERNOULLI_EVEN: [(i64, i64); 8] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
];

/// `B_{2j}` for `1 <= j <= 8`.
pub(crate) fn bernoulli_2j(j: usize, bits: usize) -> Real {
    let (n, d) = BERNOULLI_EVEN[j - 1];
    Real::from_ratio(n, d, bits)
}

/// Guard bits on top of the target; roundoff is charged as
/// `2^-(wp - ROUNDOFF_SLACK)`.
const GUARD: usize = 40;
const ROUNDOFF_SLACK: usize = 24;

pub(crate) fn working_bits(target_error: &Real) -> usize {
    bits_for_error(target_error) + GUARD
}

pub(crate) fn roundoff(wp: usize) -> Real {
    Real::pow2(-((wp - ROUNDOFF_SLACK) as i64), 64)
}

/// `-log2(target)` as a float, for choosing truncation parameters.
pub(crate) fn target_log2(target_error: &Real) -> f64 {
    -target_error.log2_abs()
}
