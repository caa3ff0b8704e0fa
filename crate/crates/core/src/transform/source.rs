use std::collections::HashMap;
use std::sync::Mutex;

use crate::exactmath::{ExactRational, Real};

/// A single Taylor coefficient, exact when the source can provide it.
#[derive(Debug, Clone)]
pub enum Coefficient {
    Exact(ExactRational),
    Approx(Real),
}

impl Coefficient {
    pub fn to_real(&self, bits: usize) -> Real {
        match self {
            Coefficient::Exact(q) => Real::from_rational(q, bits),
            Coefficient::Approx(r) => r.with_bits(bits),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactRational> {
        match self {
            Coefficient::Exact(q) => Some(q),
            Coefficient::Approx(_) => None,
        }
    }
}

/// Radius of convergence of the Taylor series at the origin. `closed` marks
/// series that still converge on the boundary circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radius {
    pub value: f64,
    pub closed: bool,
}

impl Radius {
    pub fn open(value: f64) -> Self {
        Self { value, closed: false }
    }

    pub fn closed(value: f64) -> Self {
        Self { value, closed: true }
    }

    pub fn admits(&self, x: &Real) -> bool {
        let r = Real::from_f64(self.value, x.bits().max(64));
        let ax = x.abs();
        if self.closed {
            ax <= r
        } else {
            ax < r
        }
    }
}

/// Provider of the coefficients `a_k` of `f(t) = sum a_k t^k`.
///
/// `coeff` must be deterministic: repeated calls with the same arguments
/// return the same value.
pub trait CoefficientSource: Send + Sync {
    fn name(&self) -> String;

    fn coeff(&self, k: usize, bits: usize) -> Coefficient;

    fn radius(&self) -> Option<Radius> {
        None
    }
}

impl<S: CoefficientSource + ?Sized> CoefficientSource for &S {
    fn name(&self) -> String {
        (**self).name()
    }
    fn coeff(&self, k: usize, bits: usize) -> Coefficient {
        (**self).coeff(k, bits)
    }
    fn radius(&self) -> Option<Radius> {
        (**self).radius()
    }
}

/// Caches another source's coefficients across evaluations, keyed by index
/// and precision. Safe to share between threads.
pub struct Memoized<S> {
    inner: S,
    cache: Mutex<HashMap<(usize, usize), Coefficient>>,
}

impl<S: CoefficientSource> Memoized<S> {
    pub fn new(inner: S) -> Self {
        Self {
            inner,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn cached_len(&self) -> usize {
        self.cache.lock().expect("memo lock").len()
    }
}

impl<S: CoefficientSource> CoefficientSource for Memoized<S> {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn coeff(&self, k: usize, bits: usize) -> Coefficient {
        if let Some(c) = self.cache.lock().expect("memo lock").get(&(k, bits)) {
            return c.clone();
        }
        // computed outside the lock; a racing duplicate computes the same value
        let c = self.inner.coeff(k, bits);
        self.cache
            .lock()
            .expect("memo lock")
            .entry((k, bits))
            .or_insert(c)
            .clone()
    }

    fn radius(&self) -> Option<Radius> {
        self.inner.radius()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    struct Counting(AtomicUsize);

    impl CoefficientSource for Counting {
        fn name(&self) -> String {
            "counting".into()
        }
        fn coeff(&self, k: usize, bits: usize) -> Coefficient {
            self.0.fetch_add(1, Ordering::SeqCst);
            Coefficient::Approx(Real::from_u64(k as u64, bits))
        }
    }

    #[test]
    fn memo_fetches_once() {
        let m = Memoized::new(Counting(AtomicUsize::new(0)));
        for _ in 0..5 {
            for k in 0..10 {
                assert_eq!(m.coeff(k, 128).to_real(128), Real::from_u64(k as u64, 128));
            }
        }
        assert_eq!(m.inner.0.load(Ordering::SeqCst), 10);
        assert_eq!(m.cached_len(), 10);
    }

    #[test]
    fn radius_admission() {
        let one = Real::one(64);
        assert!(Radius::closed(1.0).admits(&-one.clone()));
        assert!(!Radius::open(1.0).admits(&one));
        assert!(Radius::open(1.0).admits(&Real::from_ratio(99, 100, 64)));
    }
}
