use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::exactmath::Real;
use crate::oracles::zeta_int;

/// Deliberate corruption of one zeta value, used to prove that the
/// verification suite notices bad coefficients.
#[derive(Debug, Clone)]
pub struct ZetaFault {
    pub m: u64,
    pub delta: Real,
}

/// Shared memo tables for the expensive coefficients: `zeta(m)` and
/// `S(k) = sum_{n>=1} 1/(2^n + k)`. Keyed by precision; internally
/// synchronized.
#[derive(Debug, Default)]
pub struct Context {
    zeta: Mutex<HashMap<(u64, usize), Real>>,
    s_sums: Mutex<HashMap<(u64, usize), Real>>,
    fault: Option<ZetaFault>,
}

static GLOBAL: OnceLock<Arc<Context>> = OnceLock::new();

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// A fresh context whose `zeta(m)` is shifted by `delta`.
    pub fn with_fault(m: u64, delta: Real) -> Self {
        Self {
            fault: Some(ZetaFault { m, delta }),
            ..Self::default()
        }
    }

    /// The process-wide context.
    pub fn global() -> Arc<Context> {
        GLOBAL.get_or_init(|| Arc::new(Context::new())).clone()
    }

    pub fn is_faulty(&self) -> bool {
        self.fault.is_some()
    }

    /// `zeta(m)` for integer `m >= 2`, accurate to `2^-bits`.
    pub fn zeta(&self, m: u64, bits: usize) -> Real {
        if let Some(v) = self.zeta.lock().expect("zeta memo").get(&(m, bits)) {
            return v.clone();
        }
        let mut v = zeta_int(m, &Real::pow2(-(bits as i64), 64)).value.with_bits(bits);
        if let Some(f) = &self.fault {
            if f.m == m {
                v += &f.delta;
            }
        }
        self.zeta
            .lock()
            .expect("zeta memo")
            .entry((m, bits))
            .or_insert(v)
            .clone()
    }

    /// `S(k) = sum_{n>=1} 1/(2^n + k)`, truncated where the remainder is
    /// below `2^-(bits+2)`.
    pub fn s_sum(&self, k: u64, bits: usize) -> Real {
        if let Some(v) = self.s_sums.lock().expect("S memo").get(&(k, bits)) {
            return v.clone();
        }
        let wp = bits + 16;
        let kr = Real::from_u64(k, wp);
        let mut acc = Real::zero(wp);
        for n in (1..=(bits as i64 + 2)).rev() {
            acc += (Real::pow2(n, wp) + &kr).recip();
        }
        let v = acc.with_bits(bits);
        self.s_sums
            .lock()
            .expect("S memo")
            .entry((k, bits))
            .or_insert(v)
            .clone()
    }

    pub fn zeta_cached(&self) -> usize {
        self.zeta.lock().expect("zeta memo").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_at_zero_is_one() {
        let c = Context::new();
        let s0 = c.s_sum(0, 128);
        assert!((s0 - Real::one(128)).abs() < Real::pow2(-126, 64));
    }

    #[test]
    fn zeta_memo_and_fault() {
        let c = Context::new();
        let a = c.zeta(2, 128);
        let b = c.zeta(2, 128);
        assert_eq!(a, b);
        assert_eq!(c.zeta_cached(), 1);

        let f = Context::with_fault(2, Real::parse("1e-8", 128).unwrap());
        let d = f.zeta(2, 128) - a;
        assert!((d - Real::parse("1e-8", 128).unwrap()).abs() < Real::pow2(-100, 64));
        assert_eq!(f.zeta(3, 128), c.zeta(3, 128));
    }
}
