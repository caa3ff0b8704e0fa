//! Taylor coefficient sources for the elementary and special functions.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Context;
use crate::exactmath::{central_binomial, ExactRational, Real};
use crate::transform::{Coefficient, CoefficientSource, Radius};

fn exact(q: ExactRational) -> Coefficient {
    Coefficient::Exact(q)
}

fn ratio(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `1/(1-t)`: every coefficient is one.
#[derive(Debug, Clone, Copy, Default)]
pub struct Geometric;

impl CoefficientSource for Geometric {
    fn name(&self) -> String {
        "geometric".into()
    }
    fn coeff(&self, _k: usize, _bits: usize) -> Coefficient {
        exact(ExactRational::one())
    }
    fn radius(&self) -> Option<Radius> {
        Some(Radius::open(1.0))
    }
}

/// `ln(1+t) = sum_{k>=1} (-1)^(k-1) t^k / k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LogOnePlus;

impl CoefficientSource for LogOnePlus {
    fn name(&self) -> String {
        "log1p".into()
    }
    fn coeff(&self, k: usize, _bits: usize) -> Coefficient {
        if k == 0 {
            return exact(ExactRational::zero());
        }
        exact(ratio(-sign(k), k as i64))
    }
    fn radius(&self) -> Option<Radius> {
        Some(Radius::open(1.0))
    }
}

/// `e^-t = sum (-1)^k t^k / k!`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExpNeg;

impl CoefficientSource for ExpNeg {
    fn name(&self) -> String {
        "exp(-t)".into()
    }
    fn coeff(&self, k: usize, _bits: usize) -> Coefficient {
        let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
        exact(ExactRational::new(BigInt::from(sign(k)), fact))
    }
}

/// `(1+t)^beta = sum C(beta, k) t^k` for rational `beta`.
#[derive(Debug)]
pub struct BinomialBeta {
    beta: ExactRational,
    cache: Mutex<Vec<ExactRational>>,
}

impl BinomialBeta {
    pub fn new(beta: ExactRational) -> Self {
        Self {
            beta,
            cache: Mutex::new(vec![ExactRational::one()]),
        }
    }

    pub fn beta(&self) -> &ExactRational {
        &self.beta
    }
}

impl CoefficientSource for BinomialBeta {
    fn name(&self) -> String {
        format!("binomial(beta={})", self.beta)
    }
    fn coeff(&self, k: usize, _bits: usize) -> Coefficient {
        let mut c = self.cache.lock().expect("binomial cache");
        while c.len() <= k {
            let j = c.len() - 1;
            let next = &c[j] * (&self.beta - ExactRational::from_integer(j.into())) / ExactRational::from_integer((j + 1).into());
            c.push(next);
        }
        exact(c[k].clone())
    }
    fn radius(&self) -> Option<Radius> {
        if self.beta.is_integer() && self.beta >= ExactRational::zero() {
            None
        } else {
            Some(Radius::open(1.0))
        }
    }
}

/// Which coefficient sequence the elliptic sources use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipticForm {
    /// `(C(2k,k)/4^k)^2`, the Taylor coefficients of `(2/pi) K` in `x^2`.
    Squared,
    /// `C(2k,k)/16^k`, which sums to `(1 - t/4)^(-1/2)` instead.
    Printed,
}

/// `(2/pi) K(x)` as a series in `t = x^2`.
#[derive(Debug, Clone, Copy)]
pub struct EllipticK(pub EllipticForm);

/// `(2/pi) E(x)` as a series in `t = x^2`: the K coefficients over `1 - 2k`.
#[derive(Debug, Clone, Copy)]
pub struct EllipticE(pub EllipticForm);

fn elliptic_base(form: EllipticForm, k: usize) -> ExactRational {
    let c = central_binomial(k as u64);
    match form {
        EllipticForm::Squared => {
            let q = ExactRational::new(c, BigInt::from(4).pow(k as u32));
            &q * &q
        }
        EllipticForm::Printed => ExactRational::new(c, BigInt::from(16).pow(k as u32)),
    }
}

fn elliptic_radius(form: EllipticForm) -> Radius {
    match form {
        EllipticForm::Squared => Radius::open(1.0),
        EllipticForm::Printed => Radius::open(4.0),
    }
}

impl CoefficientSource for EllipticK {
    fn name(&self) -> String {
        format!("elliptic-k({:?})", self.0)
    }
    fn coeff(&self, k: usize, _bits: usize) -> Coefficient {
        exact(elliptic_base(self.0, k))
    }
    fn radius(&self) -> Option<Radius> {
        Some(elliptic_radius(self.0))
    }
}

impl CoefficientSource for EllipticE {
    fn name(&self) -> String {
        format!("elliptic-e({:?})", self.0)
    }
    fn coeff(&self, k: usize, _bits: usize) -> Coefficient {
        exact(elliptic_base(self.0, k) / ExactRational::from_integer((1 - 2 * k as i64).into()))
    }
    fn radius(&self) -> Option<Radius> {
        Some(elliptic_radius(self.0))
    }
}

/// `sum t^k / (k+a)^s`, the Lerch series in its argument.
#[derive(Debug, Clone)]
pub struct LerchTerms {
    pub a: Real,
    pub s: Real,
}

impl CoefficientSource for LerchTerms {
    fn name(&self) -> String {
        format!("lerch(a={}, s={})", self.a.to_decimal_string(10), self.s.to_decimal_string(10))
    }
    fn coeff(&self, k: usize, bits: usize) -> Coefficient {
        let base = Real::from_u64(k as u64, bits) + self.a.with_bits(bits);
        Coefficient::Approx(base.powf(&-self.s.with_bits(bits)))
    }
    fn radius(&self) -> Option<Radius> {
        Some(Radius::closed(1.0))
    }
}

/// `Li_s(t)/t = sum t^k / (k+1)^s`.
#[derive(Debug, Clone)]
pub struct PolylogTerms {
    pub s: Real,
}

impl CoefficientSource for PolylogTerms {
    fn name(&self) -> String {
        format!("polylog(s={})", self.s.to_decimal_string(10))
    }
    fn coeff(&self, k: usize, bits: usize) -> Coefficient {
        Coefficient::Approx(Real::from_u64(k as u64 + 1, bits).powf(&-self.s.with_bits(bits)))
    }
    fn radius(&self) -> Option<Radius> {
        Some(Radius::closed(1.0))
    }
}

/// The zeta-weighted series, all built from `zeta(k+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaSeriesKind {
    /// `-psi(1-t) - gamma = sum_{k>=1} zeta(k+1) t^k`
    DigammaNeg,
    /// `psi(1+t) + gamma = sum_{k>=1} (-1)^(k-1) zeta(k+1) t^k`
    DigammaPos,
    /// `(ln Gamma(1+t) + gamma t)/t = sum_{k>=1} (-1)^(k-1) zeta(k+1) t^k / (k+1)`
    LogGamma,
    /// `sum_{k>=1} (-1)^(k-1) (zeta(k+1) - 1) t^k / (k+1)`
    GammaTail,
    /// `sum_{k>=1} (-1)^(k-1) zeta(k+1) t^k / k`, equal to `M` at `t = 1`
    MConstant,
    /// `sum_{k>=1} (3^k - 1)/4^k zeta(k+1) t^k`, equal to `pi` at `t = 1`
    Amore,
}

#[derive(Debug, Clone)]
pub struct ZetaSeries {
    pub kind: ZetaSeriesKind,
    ctx: Arc<Context>,
}

impl ZetaSeries {
    pub fn new(kind: ZetaSeriesKind, ctx: Arc<Context>) -> Self {
        Self { kind, ctx }
    }
}

impl CoefficientSource for ZetaSeries {
    fn name(&self) -> String {
        format!("{:?}", self.kind)
    }

    fn coeff(&self, k: usize, bits: usize) -> Coefficient {
        use ZetaSeriesKind::*;
        if k == 0 {
            return exact(ExactRational::zero());
        }
        let z = self.ctx.zeta(k as u64 + 1, bits);
        let alt = -sign(k);
        let v = match self.kind {
            DigammaNeg => z,
            DigammaPos => z * Real::from_i64(alt, bits),
            LogGamma => z * Real::from_ratio(alt, k as i64 + 1, bits),
            GammaTail => (z - Real::one(bits)) * Real::from_ratio(alt, k as i64 + 1, bits),
            MConstant => z * Real::from_ratio(alt, k as i64, bits),
            Amore => {
                let three = BigInt::from(3).pow(k as u32);
                let q = ExactRational::new(three - 1, BigInt::from(4).pow(k as u32));
                z * Real::from_rational(&q, bits)
            }
        };
        Coefficient::Approx(v)
    }

    fn radius(&self) -> Option<Radius> {
        use ZetaSeriesKind::*;
        Some(match self.kind {
            DigammaNeg => Radius::open(1.0),
            Amore => Radius::open(4.0 / 3.0),
            _ => Radius::closed(1.0),
        })
    }
}

/// `sum_k (-1)^k S(k) t^k` with `S(k) = sum_{n>=1} 1/(2^n + k)`; equal to
/// Euler's constant at `t = 1`.
#[derive(Debug, Clone)]
pub struct AlzerKoumandos {
    ctx: Arc<Context>,
}

impl AlzerKoumandos {
    pub fn new(ctx: Arc<Context>) -> Self {
        Self { ctx }
    }
}

impl CoefficientSource for AlzerKoumandos {
    fn name(&self) -> String {
        "alzer-koumandos".into()
    }
    fn coeff(&self, k: usize, bits: usize) -> Coefficient {
        Coefficient::Approx(self.ctx.s_sum(k as u64, bits) * Real::from_i64(sign(k), bits))
    }
    fn radius(&self) -> Option<Radius> {
        Some(Radius::closed(1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_beta_coefficients() {
        let b = BinomialBeta::new(ratio(1, 2));
        let c: Vec<_> = (0..4).map(|k| b.coeff(k, 64).as_exact().unwrap().clone()).collect();
        assert_eq!(c, vec![ratio(1, 1), ratio(1, 2), ratio(-1, 8), ratio(1, 16)]);
        let three = BinomialBeta::new(ratio(3, 1));
        assert!(three.coeff(4, 64).as_exact().unwrap().is_zero());
        assert!(three.radius().is_none());
    }

    #[test]
    fn elliptic_coefficients() {
        let k = EllipticK(EllipticForm::Squared);
        assert_eq!(k.coeff(1, 64).as_exact().unwrap(), &ratio(1, 4));
        assert_eq!(k.coeff(2, 64).as_exact().unwrap(), &ratio(9, 64));
        let e = EllipticE(EllipticForm::Squared);
        assert_eq!(e.coeff(1, 64).as_exact().unwrap(), &ratio(-1, 4));
        let p = EllipticK(EllipticForm::Printed);
        assert_eq!(p.coeff(1, 64).as_exact().unwrap(), &ratio(1, 8));
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(LogOnePlus.coeff(3, 64).as_exact().unwrap(), &ratio(1, 3));
        assert_eq!(ExpNeg.coeff(3, 64).as_exact().unwrap(), &ratio(-1, 6));
        let amore = ZetaSeries::new(ZetaSeriesKind::Amore, Arc::new(Context::new()));
        assert!(amore.coeff(0, 64).to_real(64).is_zero());
    }
}
