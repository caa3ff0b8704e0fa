//! The parameterized binomial transform of a power series.
//!
//! For `f(t) = sum a_k t^k` and a real parameter `mu`:
//!
//! ```text
//! f(mu x) = sum_n mu^n / (mu+1)^(n+1) * sum_k C(n,k) x^k a_k            (ParamAtArgument)
//! f(x)    = sum_n 1 / (mu+1)^(n+1)    * sum_k C(n,k) mu^(n-k) x^k a_k   (ParamFree)
//! ```

mod engine;
mod exact;
mod levin;
mod source;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{PrecisionPolicy, Real};

pub use engine::{inner_sum, Series, SeriesRun};
pub use exact::{exact_partial_sums, exact_terms};
pub use levin::{levin_u, LevinAccelerator};
pub use source::{Coefficient, CoefficientSource, Memoized, Radius};

pub(crate) use engine::outer_ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    /// Targets `f(mu x)`.
    ParamAtArgument,
    /// Targets `f(x)`.
    ParamFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MuValidity {
    /// `-1/3 <= mu <= 1`
    Safe,
    /// `-1/2 < mu < -1/3`, or `mu > 1`
    Extended,
    /// `mu <= -1/2`: the outer ratio `|mu/(mu+1)|` is at least one
    Invalid,
}

impl MuValidity {
    pub fn as_str(&self) -> &'static str {
        match self {
            MuValidity::Safe => "safe",
            MuValidity::Extended => "extended",
            MuValidity::Invalid => "invalid",
        }
    }
}

impl fmt::Display for MuValidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn mu_validity(mu: &Real) -> MuValidity {
    let bits = mu.bits().max(64);
    let third = Real::from_ratio(-1, 3, bits);
    let half = Real::from_ratio(-1, 2, bits);
    let one = Real::one(bits);
    if *mu <= half {
        MuValidity::Invalid
    } else if *mu >= third && *mu <= one {
        MuValidity::Safe
    } else {
        MuValidity::Extended
    }
}

#[derive(Debug, Clone)]
pub struct StoppingRule {
    pub tolerance: Real,
    pub max_terms: usize,
    /// Successive tail estimates that must fall below `tolerance`.
    pub consecutive_small: usize,
}

impl StoppingRule {
    pub fn new(tolerance: Real, max_terms: usize) -> Result<Self> {
        if !tolerance.is_positive() {
            return Err(Error::domain("tolerance must be positive"));
        }
        if max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        Ok(Self {
            tolerance,
            max_terms,
            consecutive_small: 3,
        })
    }

    /// `tolerance = 2^-tol_bits`
    pub fn bits(tol_bits: i64, max_terms: usize) -> Self {
        Self::new(Real::pow2(-tol_bits, 64), max_terms).expect("positive tolerance")
    }

    pub fn with_consecutive_small(mut self, k: usize) -> Self {
        self.consecutive_small = k.max(1);
        self
    }
}

#[derive(Debug, Clone)]
pub struct TransformSpec {
    pub x: Real,
    pub mu: Real,
    pub form: Form,
    pub stop: StoppingRule,
}

#[derive(Debug, Clone)]
pub struct EvaluationReport {
    pub value: Real,
    pub terms_used: usize,
    pub last_increment: Real,
    pub estimated_tail: Real,
    pub validity: MuValidity,
    pub converged: bool,
}

/// `mu^n / (mu+1)^(n+1)` with `0^0 = 1`.
pub fn weight(n: usize, mu: &Real) -> Result<Real> {
    let mu1 = mu + Real::one(mu.bits());
    if mu1.is_zero() {
        return Err(Error::DivisionByZero("weight at mu = -1"));
    }
    Ok(mu.powi(n as i64) / mu1.powi(n as i64 + 1))
}

/// Geometric majorant `|last| r / (1 - r)` of the remaining terms, with
/// `r = |mu/(mu+1)|`.
pub fn tail_estimate(last_term: &Real, mu: &Real) -> Result<Real> {
    let r = outer_ratio(mu);
    if r >= Real::one(r.bits()) {
        return Err(Error::InvalidMu {
            mu: mu.to_decimal_string(12),
        });
    }
    Ok(engine::tail_from_ratio(&last_term.abs(), &r))
}

/// Evaluates the transform described by `spec`. The result is rounded to
/// `precision.target_bits`; terms are accumulated with extra guard bits.
pub fn evaluate(
    source: &dyn CoefficientSource,
    spec: &TransformSpec,
    precision: PrecisionPolicy,
) -> Result<EvaluationReport> {
    let wp = precision.working_bits(spec.stop.max_terms);
    Series::transform(source, &spec.x, &spec.mu, spec.form, wp)?
        .run(&spec.stop, precision.target_bits, false)
        .into_result()
}

/// Like [`evaluate`], also returning the partial value after every term.
pub fn trace(
    source: &dyn CoefficientSource,
    spec: &TransformSpec,
    precision: PrecisionPolicy,
) -> Result<SeriesRun> {
    let wp = precision.working_bits(spec.stop.max_terms);
    Ok(Series::transform(source, &spec.x, &spec.mu, spec.form, wp)?.run(&spec.stop, precision.target_bits, true))
}

fn implied_precision(x: &Real, mu: &Real) -> PrecisionPolicy {
    PrecisionPolicy::new(x.bits().max(mu.bits()))
}

/// Approximates `f(mu x)`. Target precision is the larger of the input
/// precisions.
pub fn transform_eval(
    coeffs: &dyn CoefficientSource,
    x: &Real,
    mu: &Real,
    stop: &StoppingRule,
) -> Result<EvaluationReport> {
    let spec = TransformSpec {
        x: x.clone(),
        mu: mu.clone(),
        form: Form::ParamAtArgument,
        stop: stop.clone(),
    };
    evaluate(coeffs, &spec, implied_precision(x, mu))
}

/// Approximates `f(x)` through the parameter-free form.
pub fn transform_eval_paramfree(
    coeffs: &dyn CoefficientSource,
    x: &Real,
    mu: &Real,
    stop: &StoppingRule,
) -> Result<EvaluationReport> {
    let spec = TransformSpec {
        x: x.clone(),
        mu: mu.clone(),
        form: Form::ParamFree,
        stop: stop.clone(),
    };
    evaluate(coeffs, &spec, implied_precision(x, mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ExactRational;
    use num_bigint::BigInt;

    struct Ones;
    impl CoefficientSource for Ones {
        fn name(&self) -> String {
            "ones".into()
        }
        fn coeff(&self, _k: usize, _bits: usize) -> Coefficient {
            Coefficient::Exact(ExactRational::from_integer(BigInt::from(1)))
        }
        fn radius(&self) -> Option<Radius> {
            Some(Radius::open(1.0))
        }
    }

    struct Harmonic;
    impl CoefficientSource for Harmonic {
        fn name(&self) -> String {
            "1/(k+1)".into()
        }
        fn coeff(&self, k: usize, _bits: usize) -> Coefficient {
            Coefficient::Exact(ExactRational::new(1.into(), BigInt::from(k + 1)))
        }
    }

    fn r(n: i64, d: i64) -> Real {
        Real::from_ratio(n, d, 256)
    }

    #[test]
    fn inner_sum_examples() {
        assert_eq!(inner_sum(3, &r(1, 1), &Ones, 256), r(8, 1));
        assert_eq!(inner_sum(2, &r(1, 2), &Ones, 256), r(9, 4));
        assert_eq!(inner_sum(2, &r(1, 1), &Harmonic, 256), r(7, 3));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(3, &r(1, 1)).unwrap(), r(1, 16));
        assert_eq!(weight(0, &r(0, 1)).unwrap(), r(1, 1));
        assert!(weight(4, &r(0, 1)).unwrap().is_zero());
        assert!(matches!(weight(1, &r(-1, 1)), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn validity_classes() {
        assert_eq!(mu_validity(&r(1, 1)), MuValidity::Safe);
        assert_eq!(mu_validity(&r(-1, 3)), MuValidity::Safe);
        assert_eq!(mu_validity(&r(-2, 5)), MuValidity::Extended);
        assert_eq!(mu_validity(&r(3, 1)), MuValidity::Extended);
        assert_eq!(mu_validity(&r(-3, 5)), MuValidity::Invalid);
        assert_eq!(mu_validity(&r(-1, 2)), MuValidity::Invalid);
    }

    #[test]
    fn tail_examples() {
        assert_eq!(tail_estimate(&Real::pow2(-20, 256), &r(1, 1)).unwrap(), Real::pow2(-20, 256));
        assert!(tail_estimate(&r(0, 1), &r(1, 2)).unwrap().is_zero());
        let t = tail_estimate(&r(3, 1), &r(1, 3)).unwrap();
        assert!((t - r(1, 1)).abs() < Real::pow2(-250, 256));
    }

    #[test]
    fn geometric_at_argument() {
        let stop = StoppingRule::new(Real::parse("1e-20", 256).unwrap(), 400).unwrap();
        let rep = transform_eval(&Ones, &r(1, 2), &r(1, 1), &stop).unwrap();
        assert!((rep.value - r(2, 1)).abs() < Real::parse("1e-20", 256).unwrap());
        assert!(rep.converged);
        assert_eq!(rep.validity, MuValidity::Safe);
    }

    #[test]
    fn mu_zero_stops_quickly() {
        let stop = StoppingRule::bits(100, 50);
        let rep = transform_eval(&Harmonic, &r(1, 2), &r(0, 1), &stop).unwrap();
        assert_eq!(rep.value, r(1, 1));
        assert!(rep.terms_used <= 3);
    }

    #[test]
    fn zero_argument_is_immediate() {
        let stop = StoppingRule::bits(100, 50);
        for form in [Form::ParamAtArgument, Form::ParamFree] {
            let spec = TransformSpec {
                x: r(0, 1),
                mu: r(1, 2),
                form,
                stop: stop.clone(),
            };
            let rep = evaluate(&Harmonic, &spec, PrecisionPolicy::default()).unwrap();
            assert_eq!(rep.terms_used, 1);
            assert_eq!(rep.value, r(1, 1));
        }
    }

    #[test]
    fn paramfree_geometric() {
        let stop = StoppingRule::bits(80, 400);
        let rep = transform_eval_paramfree(&Ones, &r(1, 3), &r(1, 2), &stop).unwrap();
        assert!((rep.value - r(3, 2)).abs() < Real::pow2(-75, 256));
    }

    #[test]
    fn invalid_mu_and_radius() {
        let stop = StoppingRule::bits(80, 400);
        assert!(matches!(transform_eval(&Ones, &r(1, 2), &r(-3, 5), &stop), Err(Error::InvalidMu { .. })));
        assert!(matches!(transform_eval(&Ones, &r(1, 2), &r(-1, 1), &stop), Err(Error::DivisionByZero(_))));
        assert!(matches!(transform_eval(&Ones, &r(3, 2), &r(1, 2), &stop), Err(Error::Domain(_))));
    }

    #[test]
    fn not_converged_keeps_partial_report() {
        let stop = StoppingRule::bits(200, 5);
        match transform_eval(&Ones, &r(1, 2), &r(1, 1), &stop) {
            Err(Error::NotConverged(rep)) => {
                assert_eq!(rep.terms_used, 5);
                assert!(!rep.converged);
                assert!(rep.estimated_tail > stop.tolerance);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn converged_tail_within_tolerance() {
        let stop = StoppingRule::bits(120, 1000);
        let rep = transform_eval(&Harmonic, &r(-1, 2), &r(1, 3), &stop).unwrap();
        assert!(rep.estimated_tail <= stop.tolerance);
    }
}
