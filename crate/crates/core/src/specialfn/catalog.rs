//! Named representations: one place that knows how to build each series,
//! which oracle checks it, and which parameters it takes.

use std::fmt;

use super::sources::{
    AlzerKoumandos, EllipticE, EllipticForm, EllipticK, Geometric, LerchTerms, PolylogTerms, ZetaSeries,
    ZetaSeriesKind,
};
use super::{gamma_prefix, EvalConfig, PrefixVariant};
use crate::error::{Error, Result};
use crate::exactmath::Real;
use crate::oracles::{
    digamma_ref, elliptic_e_agm, elliptic_k_agm, gamma_ref, lerch_ref, lngamma_ref, m_ref, pi_ref, polylog_ref,
    zeta_ref, OracleValue,
};
use crate::transform::{EvaluationReport, Form, Series, SeriesRun};

#[derive(Debug, Clone)]
pub enum Representation {
    /// `1/(1 - mu x)` through the transform at the argument.
    Geometric { x: Real },
    /// `zeta(s)` from the alternating series at `-1`.
    Zeta { s: Real },
    /// `Phi(-x, a, s)` with the parameter tied to `x`.
    Lerch { x: Real, a: Real, s: Real },
    /// `Li_s(x)`.
    Polylog { x: Real, s: Real },
    /// `pi` from the `(3^k - 1)/4^k zeta(k+1)` series.
    PiAmore,
    /// `pi = psi(3/4) - psi(1/4)` from two digamma series.
    PiDigamma,
    /// `psi(1+x) + gamma`.
    Digamma { x: Real },
    /// `ln Gamma(1+x) + gamma x`.
    LogGamma { x: Real },
    /// Euler's constant from the log-gamma series at one.
    GammaLogGamma,
    /// Euler's constant from the `zeta - 1` series plus a closed prefix.
    GammaZetaExcess { variant: PrefixVariant },
    /// Euler's constant from the `S(k)` series.
    GammaAlzerKoumandos,
    EllipticK { x: Real, form: EllipticForm },
    EllipticE { x: Real, form: EllipticForm },
    /// `e^-x` as a Laguerre series.
    ExpLaguerre { x: Real },
    /// The constant `M = sum (-1)^(n-1) zeta(n+1)/n`.
    MConstant,
}

/// Parameters accepted by [`Representation::from_id`].
#[derive(Debug, Clone, Default)]
pub struct ReprParams {
    pub x: Option<Real>,
    pub s: Option<Real>,
    pub a: Option<Real>,
    pub variant: Option<String>,
}

pub const REPRESENTATION_IDS: [&str; 15] = [
    "geometric",
    "zeta",
    "lerch",
    "polylog",
    "pi-amore",
    "pi-digamma",
    "digamma",
    "loggamma",
    "gamma-loggamma",
    "gamma-zeta-excess",
    "gamma-alzer-koumandos",
    "elliptic-k",
    "elliptic-e",
    "exp-laguerre",
    "m-constant",
];

fn need(v: &Option<Real>, name: &str, id: &str) -> Result<Real> {
    v.clone()
        .ok_or_else(|| Error::domain(format!("representation `{id}` needs --{name}")))
}

fn parse_form(v: &Option<String>) -> Result<EllipticForm> {
    match v.as_deref() {
        None | Some("squared") => Ok(EllipticForm::Squared),
        Some("printed") => Ok(EllipticForm::Printed),
        Some(other) => Err(Error::domain(format!("unknown elliptic variant `{other}` (squared|printed)"))),
    }
}

impl Representation {
    pub fn from_id(id: &str, p: &ReprParams) -> Result<Self> {
        let r = match id {
            "geometric" => Self::Geometric { x: need(&p.x, "x", id)? },
            "zeta" => Self::Zeta { s: need(&p.s, "s", id)? },
            "lerch" => Self::Lerch {
                x: need(&p.x, "x", id)?,
                a: need(&p.a, "a", id)?,
                s: need(&p.s, "s", id)?,
            },
            "polylog" => Self::Polylog {
                x: need(&p.x, "x", id)?,
                s: need(&p.s, "s", id)?,
            },
            "pi-amore" => Self::PiAmore,
            "pi-digamma" => Self::PiDigamma,
            "digamma" => Self::Digamma { x: need(&p.x, "x", id)? },
            "loggamma" => Self::LogGamma { x: need(&p.x, "x", id)? },
            "gamma-loggamma" => Self::GammaLogGamma,
            "gamma-zeta-excess" => Self::GammaZetaExcess {
                variant: match p.variant.as_deref() {
                    None => PrefixVariant::Corrected,
                    Some(v) => v.parse()?,
                },
            },
            "gamma-alzer-koumandos" => Self::GammaAlzerKoumandos,
            "elliptic-k" => Self::EllipticK {
                x: need(&p.x, "x", id)?,
                form: parse_form(&p.variant)?,
            },
            "elliptic-e" => Self::EllipticE {
                x: need(&p.x, "x", id)?,
                form: parse_form(&p.variant)?,
            },
            "exp-laguerre" => Self::ExpLaguerre { x: need(&p.x, "x", id)? },
            "m-constant" => Self::MConstant,
            other => {
                return Err(Error::domain(format!(
                    "unknown representation `{other}`; expected one of {}",
                    REPRESENTATION_IDS.join(", ")
                )))
            }
        };
        r.validate()?;
        Ok(r)
    }

    pub fn id(&self) -> &'static str {
        match self {
            Self::Geometric { .. } => "geometric",
            Self::Zeta { .. } => "zeta",
            Self::Lerch { .. } => "lerch",
            Self::Polylog { .. } => "polylog",
            Self::PiAmore => "pi-amore",
            Self::PiDigamma => "pi-digamma",
            Self::Digamma { .. } => "digamma",
            Self::LogGamma { .. } => "loggamma",
            Self::GammaLogGamma => "gamma-loggamma",
            Self::GammaZetaExcess { .. } => "gamma-zeta-excess",
            Self::GammaAlzerKoumandos => "gamma-alzer-koumandos",
            Self::EllipticK { .. } => "elliptic-k",
            Self::EllipticE { .. } => "elliptic-e",
            Self::ExpLaguerre { .. } => "exp-laguerre",
            Self::MConstant => "m-constant",
        }
    }

    /// False when the parameter is fixed by the other arguments, as for the
    /// Lerch form where it equals `x`.
    pub fn has_free_mu(&self) -> bool {
        !matches!(self, Self::Lerch { .. })
    }

    /// Checks the argument domain without evaluating anything.
    pub fn validate(&self) -> Result<()> {
        let one = || Real::one(64);
        let gt_one = |s: &Real, what: &str| {
            if *s > one() {
                Ok(())
            } else {
                Err(Error::domain(format!("{what} needs s > 1, got s = {}", s.to_decimal_string(10))))
            }
        };
        match self {
            Self::Zeta { s } => gt_one(s, "zeta"),
            Self::Lerch { x, a, s } => {
                gt_one(s, "lerch")?;
                if !a.is_positive() {
                    return Err(Error::domain("lerch needs a > 0"));
                }
                if *x <= Real::from_ratio(-1, 2, 64) {
                    return Err(Error::domain("lerch needs x > -1/2"));
                }
                Ok(())
            }
            Self::Polylog { x, s } => {
                gt_one(s, "polylog")?;
                if x.abs() > one() {
                    return Err(Error::domain("polylog needs |x| <= 1"));
                }
                Ok(())
            }
            Self::Digamma { x } | Self::LogGamma { x } => {
                if *x <= -one() || *x > one() {
                    return Err(Error::domain("needs -1 < x <= 1"));
                }
                Ok(())
            }
            Self::EllipticK { x, .. } | Self::EllipticE { x, .. } => {
                if x.abs() >= one() {
                    return Err(Error::domain("complete elliptic integrals need |x| < 1"));
                }
                Ok(())
            }
            Self::Geometric { .. }
            | Self::PiAmore
            | Self::PiDigamma
            | Self::GammaLogGamma
            | Self::GammaZetaExcess { .. }
            | Self::GammaAlzerKoumandos
            | Self::ExpLaguerre { .. }
            | Self::MConstant => Ok(()),
        }
    }

    pub fn evaluate(&self, mu: &Real, cfg: &EvalConfig) -> Result<EvaluationReport> {
        self.run(mu, cfg, false)?.into_result()
    }

    /// Partial values after every term, without failing on non-convergence.
    pub fn trace(&self, mu: &Real, cfg: &EvalConfig) -> Result<SeriesRun> {
        self.run(mu, cfg, true)
    }

    fn run(&self, mu: &Real, cfg: &EvalConfig, keep: bool) -> Result<SeriesRun> {
        self.validate()?;
        let wp = cfg.working_bits();
        let target = cfg.precision.target_bits;
        let stop = &cfg.stop;
        let ctx = cfg.context.clone();
        let mu = &mu.with_bits(wp);
        macro_rules! plain {
            ($series:expr) => {
                {
                    let series = $series;
                    series.run(stop, target, keep)
                }
            };
        }
        let one = Real::one(wp);
        let pi_half = || Real::pi(wp) / Real::from_u64(2, wp);

        Ok(match self {
            Self::Geometric { x } => plain!(Series::transform(&Geometric, x, mu, Form::ParamAtArgument, wp)?),
            Self::Zeta { s } => {
                let src = LerchTerms { a: one.clone(), s: s.clone() };
                let s = s.with_bits(wp);
                let eta_factor = &one - Real::from_u64(2, wp).powf(&(&one - &s));
                plain!(Series::transform(&src, &-&one, mu, Form::ParamFree, wp)?.scaled(eta_factor.recip()))
            }
            Self::Lerch { x, a, s } => {
                let src = LerchTerms { a: a.clone(), s: s.clone() };
                let x = x.with_bits(wp);
                plain!(Series::transform(&src, &-&one, &x, Form::ParamAtArgument, wp)?)
            }
            Self::Polylog { x, s } => {
                let src = PolylogTerms { s: s.clone() };
                let x = x.with_bits(wp);
                let series = Series::transform(&src, &x, mu, Form::ParamFree, wp)?.scaled(x.clone());
                if x == one {
                    series.run_levin(stop, target, keep)
                } else {
                    plain!(series)
                }
            }
            Self::PiAmore => {
                let src = ZetaSeries::new(ZetaSeriesKind::Amore, ctx);
                plain!(Series::transform(&src, &one, mu, Form::ParamFree, wp)?)
            }
            Self::PiDigamma => {
                let src = ZetaSeries::new(ZetaSeriesKind::DigammaPos, ctx);
                let a = Series::transform(&src, &Real::from_ratio(-1, 4, wp), mu, Form::ParamFree, wp)?;
                let b = Series::transform(&src, &Real::from_ratio(-3, 4, wp), mu, Form::ParamFree, wp)?;
                plain!(a.minus(b))
            }
            Self::Digamma { x } => {
                let src = ZetaSeries::new(ZetaSeriesKind::DigammaPos, ctx);
                plain!(Series::transform(&src, x, mu, Form::ParamFree, wp)?)
            }
            Self::LogGamma { x } => {
                let src = ZetaSeries::new(ZetaSeriesKind::LogGamma, ctx);
                plain!(Series::transform(&src, x, mu, Form::ParamFree, wp)?.scaled(x.with_bits(wp)))
            }
            Self::GammaLogGamma => {
                let src = ZetaSeries::new(ZetaSeriesKind::LogGamma, ctx);
                plain!(Series::transform(&src, &one, mu, Form::ParamFree, wp)?)
            }
            Self::GammaZetaExcess { variant } => {
                let prefix = gamma_prefix(mu, *variant, wp)?;
                let src = ZetaSeries::new(ZetaSeriesKind::GammaTail, ctx);
                plain!(Series::transform(&src, &one, mu, Form::ParamFree, wp)?.offset(prefix))
            }
            Self::GammaAlzerKoumandos => {
                let src = AlzerKoumandos::new(ctx);
                plain!(Series::transform(&src, &one, mu, Form::ParamFree, wp)?)
            }
            Self::EllipticK { x, form } => {
                let t = x.with_bits(wp).powi(2);
                let src = EllipticK(*form);
                plain!(Series::transform(&src, &t, mu, Form::ParamFree, wp)?.scaled(pi_half()))
            }
            Self::EllipticE { x, form } => {
                let t = x.with_bits(wp).powi(2);
                let src = EllipticE(*form);
                plain!(Series::transform(&src, &t, mu, Form::ParamFree, wp)?.scaled(pi_half()))
            }
            Self::ExpLaguerre { x } => {
                if mu.is_zero() {
                    return Err(Error::domain("the Laguerre form needs mu != 0"));
                }
                let terms = LaguerreTerms::new(&(x.with_bits(wp) / mu), mu);
                plain!(Series::from_terms(terms, mu, wp)?)
            }
            Self::MConstant => {
                let src = ZetaSeries::new(ZetaSeriesKind::MConstant, ctx);
                plain!(Series::transform(&src, &one, mu, Form::ParamFree, wp)?)
            }
        })
    }

    /// Independent reference value for the quantity this representation
    /// targets, accurate to `target_error`.
    pub fn reference(&self, mu: &Real, target_error: &Real) -> Result<OracleValue> {
        self.validate()?;
        let wp = crate::oracles::working_bits(target_error);
        let one = Real::one(wp);
        match self {
            Self::Geometric { x } => {
                let v = (&one - &(mu.with_bits(wp) * x.with_bits(wp))).recip();
                Ok(exact_ref(v, "closed-form"))
            }
            Self::Zeta { s } => zeta_ref(s, target_error),
            Self::Lerch { x, a, s } => lerch_ref(&-x, a, s, target_error),
            Self::Polylog { x, s } => polylog_ref(x, s, target_error),
            Self::PiAmore | Self::PiDigamma => Ok(pi_ref(target_error)),
            Self::Digamma { x } => {
                let d = digamma_ref(&(x.with_bits(wp) + &one), target_error)?;
                let g = gamma_ref(target_error);
                Ok(OracleValue {
                    value: d.value + g.value,
                    method: "recurrence-shift+asymptotic",
                    claimed_error: d.claimed_error + g.claimed_error,
                })
            }
            Self::LogGamma { x } => {
                let x = x.with_bits(wp);
                let l = lngamma_ref(&(&x + &one), target_error)?;
                let g = gamma_ref(target_error);
                Ok(OracleValue {
                    value: l.value + &g.value * &x,
                    method: "recurrence-shift+stirling",
                    claimed_error: l.claimed_error + g.claimed_error * x.abs(),
                })
            }
            Self::GammaLogGamma | Self::GammaZetaExcess { .. } | Self::GammaAlzerKoumandos => {
                Ok(gamma_ref(target_error))
            }
            Self::EllipticK { x, .. } => elliptic_k_agm(x, target_error),
            Self::EllipticE { x, .. } => elliptic_e_agm(x, target_error),
            Self::ExpLaguerre { x } => Ok(exact_ref((-x.with_bits(wp)).exp(), "exp")),
            Self::MConstant => Ok(m_ref(target_error)),
        }
    }
}

fn exact_ref(value: Real, method: &'static str) -> OracleValue {
    let bits = value.bits();
    OracleValue {
        value,
        method,
        claimed_error: Real::pow2(-(bits as i64) + 2, 64),
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Outer terms `mu^n/(mu+1)^(n+1) L_n(y)`, with `L_n` by the three-term
/// recurrence.
pub(crate) struct LaguerreTerms {
    y: Real,
    weight: Real,
    ratio: Real,
    prev: Real,
    cur: Real,
    n: u64,
}

impl LaguerreTerms {
    pub(crate) fn new(y: &Real, mu: &Real) -> Self {
        let bits = y.bits().max(mu.bits());
        let mu1 = mu + Real::one(bits);
        Self {
            y: y.with_bits(bits),
            weight: mu1.recip(),
            ratio: mu / &mu1,
            prev: Real::zero(bits),
            cur: Real::one(bits),
            n: 0,
        }
    }
}

impl Iterator for LaguerreTerms {
    type Item = Real;

    fn next(&mut self) -> Option<Real> {
        let bits = self.y.bits();
        let term = &self.weight * &self.cur;
        let n = self.n;
        let next = ((Real::from_u64(2 * n + 1, bits) - &self.y) * &self.cur - Real::from_u64(n, bits) * &self.prev)
            / Real::from_u64(n + 1, bits);
        self.prev = std::mem::replace(&mut self.cur, next);
        self.weight *= &self.ratio;
        self.n += 1;
        Some(term)
    }
}

/// `L_n(x)`.
pub fn laguerre_eval(n: usize, x: &Real) -> Real {
    let bits = x.bits();
    let (mut prev, mut cur) = (Real::zero(bits), Real::one(bits));
    for k in 0..n as u64 {
        let next = ((Real::from_u64(2 * k + 1, bits) - x) * &cur - Real::from_u64(k, bits) * &prev)
            / Real::from_u64(k + 1, bits);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
