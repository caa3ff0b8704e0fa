//! Concrete representations built on the transform: zeta, Lerch, polylog,
//! digamma, log-gamma, Euler's constant, elliptic integrals, the Laguerre
//! form of `e^-x`, and the constant `M`.
//!
//! Every evaluator returns the full [`EvaluationReport`]; the value is in
//! `report.value`.

mod catalog;
mod context;
mod mconst;
mod sources;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{binomial, ExactRational, PrecisionPolicy, Real};
use crate::oracles::zeta_int;
use crate::transform::{EvaluationReport, StoppingRule};

pub use catalog::{laguerre_eval, ReprParams, Representation, REPRESENTATION_IDS};
pub use context::{Context, ZetaFault};
pub use mconst::{m_constant_alternatives, M_ALTERNATIVE_IDS};
pub use sources::{
    AlzerKoumandos, BinomialBeta, EllipticE, EllipticForm, EllipticK, ExpNeg, Geometric, LerchTerms, LogOnePlus,
    PolylogTerms, ZetaSeries, ZetaSeriesKind,
};

/// Stopping rule, precision and coefficient context for one evaluation.
#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub stop: StoppingRule,
    pub precision: PrecisionPolicy,
    pub context: Arc<Context>,
}

impl EvalConfig {
    pub fn new(stop: StoppingRule, precision: PrecisionPolicy) -> Self {
        Self {
            stop,
            precision,
            context: Context::global(),
        }
    }

    /// `tolerance = 10^-digits`, at the default 256-bit target.
    pub fn digits(digits: u32, max_terms: usize) -> Self {
        let tol = Real::parse(&format!("1e-{digits}"), 256).expect("literal");
        Self::new(
            StoppingRule::new(tol, max_terms).expect("positive tolerance"),
            PrecisionPolicy::default(),
        )
    }

    pub fn with_context(mut self, context: Arc<Context>) -> Self {
        self.context = context;
        self
    }

    pub fn working_bits(&self) -> usize {
        self.precision.working_bits(self.stop.max_terms)
    }
}

/// Constant prefix added to the `zeta - 1` series for Euler's constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrefixVariant {
    /// `(mu + 1 - ln(mu+1)) / mu`
    AsPrinted,
    /// `1 - ln 2`, the sum of `(-1)^(k-1)/(k+1)` split off from the series.
    Corrected,
    /// `(mu - ln(mu+1)) / mu`, which agrees with `1 - ln 2` only at `mu = 1`.
    ProofLiteral,
}

impl PrefixVariant {
    pub const ALL: [PrefixVariant; 3] = [Self::AsPrinted, Self::Corrected, Self::ProofLiteral];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::AsPrinted => "as-printed",
            Self::Corrected => "corrected",
            Self::ProofLiteral => "proof-literal",
        }
    }
}

impl fmt::Display for PrefixVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PrefixVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown prefix variant `{s}` (as-printed|corrected|proof-literal)")))
    }
}

pub fn gamma_prefix(mu: &Real, variant: PrefixVariant, bits: usize) -> Result<Real> {
    let mu = mu.with_bits(bits);
    let one = Real::one(bits);
    if variant != PrefixVariant::Corrected && mu.is_zero() {
        return Err(Error::domain("this prefix divides by mu; mu must be nonzero"));
    }
    Ok(match variant {
        PrefixVariant::AsPrinted => (&mu + &one - (&mu + &one).ln()) / &mu,
        PrefixVariant::Corrected => &one - Real::from_u64(2, bits).ln(),
        PrefixVariant::ProofLiteral => (&mu - (&mu + &one).ln()) / &mu,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantName {
    Pi,
    Gamma,
    M,
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pi => "pi",
            Self::Gamma => "gamma",
            Self::M => "M",
        })
    }
}

/// A constant together with the representation that produced it.
#[derive(Debug, Clone)]
pub struct ConstantResult {
    pub name: ConstantName,
    pub value: Real,
    pub representation_id: String,
    pub report: EvaluationReport,
}

/// `zeta(s)` for real `s > 1`.
pub fn zeta_hasse(s: &Real, mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::Zeta { s: s.clone() }.evaluate(mu, cfg)
}

/// `Phi(-x, a, s) = sum (-x)^n / (n+a)^s` for `x > -1/2`, `a > 0`, `s > 1`.
pub fn lerch_param(x: &Real, a: &Real, s: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::Lerch {
        x: x.clone(),
        a: a.clone(),
        s: s.clone(),
    }
    .evaluate(x, cfg)
}

/// `Li_s(x)` for `|x| <= 1`, `s > 1`.
pub fn polylog_param(x: &Real, s: &Real, mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::Polylog {
        x: x.clone(),
        s: s.clone(),
    }
    .evaluate(mu, cfg)
}

pub fn amore_pi(mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::PiAmore.evaluate(mu, cfg)
}

/// `pi` as `[psi(3/4) + gamma] - [psi(1/4) + gamma]`.
pub fn pi_via_digamma(mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::PiDigamma.evaluate(mu, cfg)
}

/// `psi(1+x) + gamma` for `-1 < x <= 1`.
pub fn digamma_param(x: &Real, mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::Digamma { x: x.clone() }.evaluate(mu, cfg)
}

/// `ln Gamma(1+x) + gamma x` for `-1 < x <= 1`.
pub fn loggamma_param(x: &Real, mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::LogGamma { x: x.clone() }.evaluate(mu, cfg)
}

pub fn euler_gamma_param(mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::GammaLogGamma.evaluate(mu, cfg)
}

pub fn euler_gamma_accel(mu: &Real, variant: PrefixVariant, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::GammaZetaExcess { variant }.evaluate(mu, cfg)
}

pub fn alzer_koumandos_gamma(mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::GammaAlzerKoumandos.evaluate(mu, cfg)
}

pub fn elliptic_k_param(x: &Real, mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    elliptic_k_with(x, mu, EllipticForm::Squared, cfg)
}

pub fn elliptic_e_param(x: &Real, mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    elliptic_e_with(x, mu, EllipticForm::Squared, cfg)
}

pub fn elliptic_k_with(x: &Real, mu: &Real, form: EllipticForm, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::EllipticK { x: x.clone(), form }.evaluate(mu, cfg)
}

pub fn elliptic_e_with(x: &Real, mu: &Real, form: EllipticForm, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::EllipticE { x: x.clone(), form }.evaluate(mu, cfg)
}

/// `sum mu^n/(mu+1)^(n+1) L_n(x/mu)`, which equals `e^-x`.
pub fn exp_laguerre_identity(x: &Real, mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::ExpLaguerre { x: x.clone() }.evaluate(mu, cfg)
}

pub fn m_constant_param(mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
    Representation::MConstant.evaluate(mu, cfg)
}

/// `sum_{k=1}^n C(n,k) (-1)^(k-1) / (k+1)`, exactly; equals `n/(n+1)`.
pub fn binomial_identity_check(n: u64) -> ExactRational {
    let mut acc = ExactRational::zero();
    for k in 1..=n {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc += ExactRational::new(binomial(n, k) * sign, BigInt::from(k + 1));
    }
    acc
}

/// Whether `2^-(n+1) < zeta(n+1) - 1 < 2^-(n+1) (1 + 2/n)` holds, using the
/// oracle value and its error bound.
pub fn zeta_bounds_check(n: u64) -> bool {
    assert!(n >= 1, "zeta_bounds_check needs n >= 1");
    let bits = n as usize + 160;
    let z = zeta_int(n + 1, &Real::pow2(-(bits as i64), 64));
    let excess = z.value.with_bits(bits) - Real::one(bits);
    let lower = Real::pow2(-(n as i64) - 1, bits);
    let upper = &lower * (Real::one(bits) + Real::from_ratio(2, n as i64, bits));
    &excess - &z.claimed_error > lower && &excess + &z.claimed_error < upper
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_identity_small() {
        assert!(binomial_identity_check(0).is_zero());
        assert_eq!(binomial_identity_check(2), ExactRational::new(2.into(), 3.into()));
    }

    #[test]
    fn zeta_bounds_small() {
        assert!(zeta_bounds_check(1));
        assert!(zeta_bounds_check(10));
    }

    #[test]
    fn prefix_variants() {
        let bits = 128;
        let one = Real::one(bits);
        let c = gamma_prefix(&one, PrefixVariant::Corrected, bits).unwrap();
        let p = gamma_prefix(&one, PrefixVariant::ProofLiteral, bits).unwrap();
        assert!((&c - &p).abs() < Real::pow2(-120, 64));
        let a = gamma_prefix(&one, PrefixVariant::AsPrinted, bits).unwrap();
        assert!((a - c - one).abs() < Real::pow2(-120, 64));
        assert!(gamma_prefix(&Real::zero(bits), PrefixVariant::AsPrinted, bits).is_err());
        assert_eq!("corrected".parse::<PrefixVariant>().unwrap(), PrefixVariant::Corrected);
    }
}
