/// Working-precision rule for binomial-weighted sums.
///
/// Inner sums `sum_k C(n,k) (...)` can cancel up to `n` bits because
/// `sum_k C(n,k) = 2^n`, so evaluation runs at
/// `target_bits + max_terms + 32` bits and rounds the result back to
/// `target_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub target_bits: usize,
}

impl PrecisionPolicy {
    pub const EXTRA_GUARD: usize = 32;

    pub fn new(target_bits: usize) -> Self {
        assert!(target_bits > 0, "target precision must be positive");
        Self { target_bits }
    }

    pub fn guard_bits(&self, terms: usize) -> usize {
        terms + Self::EXTRA_GUARD
    }

    pub fn working_bits(&self, terms: usize) -> usize {
        self.target_bits + self.guard_bits(terms)
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self::new(256)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_covers_full_cancellation() {
        let p = PrecisionPolicy::new(256);
        for n in [0, 1, 50, 400, 10_000] {
            assert!(p.guard_bits(n) >= n + 32);
            assert_eq!(p.working_bits(n), 256 + p.guard_bits(n));
        }
    }
}
