//! Built-in self-check suite: identities, cross-representation agreement,
//! oracle consistency and the two coefficient adjudications.
//!
//! Checks are independent and run through [`Execution`]; the report lists
//! them in the order of [`CHECK_IDS`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{binomial, binomial_row, ExactRational, PrecisionPolicy, Real};
use crate::oracles::{
    digamma_ref, elliptic_e_agm, elliptic_k_agm, gamma_ref, m_ref, pi_ref, zeta_ref, OracleValue,
};
use crate::par::Execution;
use crate::specialfn::{
    binomial_identity_check, gamma_prefix, m_constant_alternatives, zeta_bounds_check, BinomialBeta, Context,
    EllipticForm, EvalConfig, ExpNeg, Geometric, LogOnePlus, PrefixVariant, Representation,
};
use crate::studies::{error_curve, fitted_log_ratio, mu_sweep, StudyConfig};
use crate::transform::{exact_partial_sums, transform_eval, CoefficientSource, Form, StoppingRule};

pub const CHECK_IDS: [&str; 22] = [
    "binomial-symmetry",
    "pascal-row-sum",
    "rational-roundtrip",
    "transform-identity",
    "euler-weights-exact",
    "mu-zero-degeneracy",
    "monotone-tail",
    "binomial-series",
    "hasse-consistency",
    "mu-independence",
    "amore-pi",
    "digamma-reflection-pi",
    "laguerre-identity",
    "gamma-representations",
    "gamma-prefix-adjudication",
    "elliptic-form-adjudication",
    "m-constant",
    "binomial-identity",
    "zeta-bounds",
    "oracle-stability",
    "oracle-cross",
    "study-invariants",
];

/// The zeta value corrupted in fault mode and by how much: enough to move
/// `zeta(2)` in its eighth decimal.
pub const FAULT_ZETA_ARG: u64 = 2;
pub const FAULT_DELTA: &str = "1e-8";

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Restrict to these check ids; empty means all.
    pub only: Vec<String>,
    /// Upper `n` for the exact binomial identity.
    pub n_max: u64,
    pub context: Arc<Context>,
    pub execution: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            only: Vec::new(),
            n_max: 200,
            context: Context::global(),
            execution: Execution::default(),
        }
    }
}

impl VerifyConfig {
    /// Same suite, but every zeta-derived coefficient sees a corrupted
    /// `zeta(2)`. The suite is expected to fail.
    pub fn with_fault(mut self) -> Self {
        let delta = Real::parse(FAULT_DELTA, 256).expect("literal");
        self.context = Arc::new(Context::with_fault(FAULT_ZETA_ARG, delta));
        self
    }

    fn selected(&self) -> Result<Vec<&'static str>> {
        if self.only.is_empty() {
            return Ok(CHECK_IDS.to_vec());
        }
        for id in &self.only {
            if !CHECK_IDS.contains(&id.as_str()) {
                return Err(Error::domain(format!(
                    "unknown check `{id}`; expected one of {}",
                    CHECK_IDS.join(", ")
                )));
            }
        }
        Ok(CHECK_IDS
            .iter()
            .copied()
            .filter(|id| self.only.iter().any(|o| o == id))
            .collect())
    }

    fn eval(&self, digits: u32, max_terms: usize) -> EvalConfig {
        EvalConfig::digits(digits, max_terms).with_context(self.context.clone())
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Set by the adjudication checks: which variant the oracle supports.
    pub finding: Option<String>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn findings(&self) -> impl Iterator<Item = (&'static str, &str)> {
        self.outcomes
            .iter()
            .filter_map(|o| o.finding.as_deref().map(|f| (o.id, f)))
    }
}

pub fn run_checks(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let ids = cfg.selected()?;
    let outcomes = cfg.execution.map(&ids, |id| run_one(id, cfg));
    Ok(VerifyReport { outcomes })
}

fn run_one(id: &'static str, cfg: &VerifyConfig) -> CheckOutcome {
    let result = match id {
        "binomial-symmetry" => binomial_symmetry(),
        "pascal-row-sum" => pascal_row_sum(),
        "rational-roundtrip" => rational_roundtrip(),
        "transform-identity" => transform_identity(),
        "euler-weights-exact" => euler_weights_exact(),
        "mu-zero-degeneracy" => mu_zero_degeneracy(),
        "monotone-tail" => monotone_tail(),
        "binomial-series" => binomial_series(),
        "hasse-consistency" => hasse_consistency(cfg),
        "mu-independence" => mu_independence(cfg),
        "amore-pi" => amore(cfg),
        "digamma-reflection-pi" => digamma_pi(cfg),
        "laguerre-identity" => laguerre(cfg),
        "gamma-representations" => gamma_forms(cfg),
        "gamma-prefix-adjudication" => return gamma_prefix_adjudication(cfg),
        "elliptic-form-adjudication" => return elliptic_adjudication(cfg),
        "m-constant" => m_constant(cfg),
        "binomial-identity" => binomial_identity(cfg.n_max),
        "zeta-bounds" => zeta_bounds(),
        "oracle-stability" => oracle_stability(),
        "oracle-cross" => oracle_cross(),
        "study-invariants" => study_invariants(),
        other => Err(format!("no such check `{other}`")),
    };
    match result {
        Ok(detail) => CheckOutcome {
            id,
            passed: true,
            detail,
            finding: None,
        },
        Err(detail) => CheckOutcome {
            id,
            passed: false,
            detail,
            finding: None,
        },
    }
}

type Check = std::result::Result<String, String>;

fn r(s: &str) -> Real {
    Real::parse(s, 256).expect("literal")
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

fn sci(v: &Real) -> String {
    v.to_sci_string(3)
}

/// `|a - b| <= tol`, or a message naming `what`.
fn close(what: &str, a: &Real, b: &Real, tol: &Real) -> std::result::Result<Real, String> {
    let d = (a - b).abs();
    if d <= *tol {
        Ok(d)
    } else {
        Err(format!(
            "{what}: {} vs {} differ by {} > {}",
            a.to_decimal_string(20),
            b.to_decimal_string(20),
            sci(&d),
            sci(tol)
        ))
    }
}

/// Value of a representation, or an error string with context.
fn value(rep: &Representation, mu: &Real, ecfg: &EvalConfig) -> std::result::Result<Real, String> {
    rep.evaluate(mu, ecfg)
        .map(|rep| rep.value)
        .map_err(|e| format!("{} at mu={}: {e}", rep.id(), mu.to_decimal_string(6)))
}

fn binomial_symmetry() -> Check {
    for n in 0..=500u64 {
        let row = binomial_row(n as usize);
        for k in 0..=n as usize {
            if row[k] != row[n as usize - k] {
                return Err(format!("C({n},{k}) != C({n},{})", n as usize - k));
            }
        }
        for k in [0, n / 3, n / 2, n] {
            if binomial(n, k) != row[k as usize] || binomial(n, n - k) != row[k as usize] {
                return Err(format!("binomial({n},{k}) disagrees with the Pascal row"));
            }
        }
    }
    Ok("C(n,k) = C(n,n-k) for n <= 500".into())
}

fn pascal_row_sum() -> Check {
    for n in 0..=500usize {
        let sum: BigInt = binomial_row(n).iter().sum();
        if sum != BigInt::one() << n {
            return Err(format!("row {n} does not sum to 2^{n}"));
        }
    }
    Ok("row sums equal 2^n for n <= 500".into())
}

fn rational_roundtrip() -> Check {
    let cases = [q(1, 3), q(-22, 7), q(355, 113), q(1, 1 << 40), q(123_456_789, 1_000)];
    for p in [64usize, 128, 256] {
        for c in &cases {
            let lo = Real::from_rational(c, p);
            let hi = Real::from_rational(c, 2 * p);
            let rel = ((&lo.with_bits(2 * p) - &hi) / &hi).abs();
            if rel > Real::pow2(-(p as i64) + 1, 64) {
                return Err(format!("{c} at {p} bits: relative error {}", sci(&rel)));
            }
        }
    }
    Ok("relative error <= 2^(1-p) at p = 64, 128, 256".into())
}

/// Closed forms of the elementary sources at `mu x`.
fn elementary_cases() -> Vec<(Box<dyn CoefficientSource>, fn(&Real) -> Real, Vec<&'static str>)> {
    fn geo(t: &Real) -> Real {
        (Real::one(t.bits()) - t).recip()
    }
    fn log1p(t: &Real) -> Real {
        (Real::one(t.bits()) + t).ln()
    }
    fn expneg(t: &Real) -> Real {
        (-t).exp()
    }
    fn sqrt1p(t: &Real) -> Real {
        (Real::one(t.bits()) + t).sqrt()
    }
    fn rsqrt1p(t: &Real) -> Real {
        (Real::one(t.bits()) + t).sqrt().recip()
    }
    fn cube1p(t: &Real) -> Real {
        (Real::one(t.bits()) + t).powi(3)
    }
    let unit = vec!["-0.8", "-0.3", "0.3", "0.8"];
    vec![
        (Box::new(Geometric), geo as fn(&Real) -> Real, unit.clone()),
        (Box::new(LogOnePlus), log1p, unit.clone()),
        (Box::new(ExpNeg), expneg, vec!["-2", "-0.5", "0.5", "2"]),
        (Box::new(BinomialBeta::new(q(1, 2))), sqrt1p, unit.clone()),
        (Box::new(BinomialBeta::new(q(-1, 2))), rsqrt1p, unit.clone()),
        (Box::new(BinomialBeta::new(q(3, 1))), cube1p, vec!["-2", "-0.5", "0.5", "2"]),
    ]
}

/// Fixed grid over `|x| <= 0.8 radius` and `mu` in the safe band. At the
/// corners the outer ratio reaches 0.9, so 600 terms are allowed.
fn transform_identity() -> Check {
    let stop = StoppingRule::new(r("1e-22"), 600).expect("positive");
    let tol = r("1e-20");
    let mut count = 0;
    for (src, f, xs) in elementary_cases() {
        for x in &xs {
            for mu in ["-0.3333333333333333333333333333", "-0.1", "0.5", "1"] {
                let (x, mu) = (r(x), r(mu));
                let got = transform_eval(src.as_ref(), &x, &mu, &stop)
                    .map_err(|e| format!("{} x={} mu={}: {e}", src.name(), x.to_decimal_string(4), mu.to_decimal_string(4)))?;
                close(&src.name(), &got.value, &f(&(&mu * &x)), &tol)?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (source, x, mu) cases within 1e-20"))
}

/// At `mu = 1` the weights are `1/2^(n+1)`; compare partial sums exactly.
fn euler_weights_exact() -> Check {
    let n_max = 30;
    for (src, x) in [
        (Box::new(Geometric) as Box<dyn CoefficientSource>, q(1, 3)),
        (Box::new(LogOnePlus), q(-2, 5)),
        (Box::new(ExpNeg), q(3, 2)),
    ] {
        let sums = exact_partial_sums(src.as_ref(), &x, &ExactRational::one(), Form::ParamAtArgument, n_max)
            .map_err(|e| e.to_string())?;
        let mut acc = ExactRational::zero();
        for (n, s) in sums.iter().enumerate() {
            let mut inner = ExactRational::zero();
            for k in 0..=n as u64 {
                let a = src.coeff(k as usize, 64).as_exact().cloned().expect("exact source");
                inner += ExactRational::from_integer(binomial(n as u64, k)) * x.pow(k as i32) * a;
            }
            acc += inner / ExactRational::from_integer(BigInt::one() << (n + 1));
            if *s != acc {
                return Err(format!("{} partial sum {n} differs", src.name()));
            }
        }
    }
    Ok(format!("exact equality through n = {n_max}"))
}

/// The parameter-free form at `mu = 0` is the raw Taylor series.
fn mu_zero_degeneracy() -> Check {
    let n_max = 50;
    for (src, x) in [
        (Box::new(Geometric) as Box<dyn CoefficientSource>, q(1, 2)),
        (Box::new(LogOnePlus), q(-1, 3)),
        (Box::new(ExpNeg), q(2, 1)),
        (Box::new(BinomialBeta::new(q(1, 2))), q(1, 4)),
    ] {
        let sums = exact_partial_sums(src.as_ref(), &x, &ExactRational::zero(), Form::ParamFree, n_max)
            .map_err(|e| e.to_string())?;
        let mut acc = ExactRational::zero();
        for (n, s) in sums.iter().enumerate() {
            acc += src.coeff(n, 64).as_exact().cloned().expect("exact source") * x.pow(n as i32);
            if *s != acc {
                return Err(format!("{} partial sum {n} differs from the Taylor sum", src.name()));
            }
        }
    }
    Ok(format!("exact equality through n = {n_max}"))
}

/// Increments of the geometric source at `x = -1/20` decay like
/// `(0.95 mu/(mu+1))^n`; the fitted exponent over the last 20 terms must be
/// within 10% of `ln(mu/(mu+1))`.
fn monotone_tail() -> Check {
    let stop = StoppingRule::new(r("1e-300"), 60).expect("positive");
    let mut notes = Vec::new();
    for mu in ["0.25", "0.5", "1"] {
        let mu = r(mu);
        let spec = crate::transform::TransformSpec {
            x: r("-0.05"),
            mu: mu.clone(),
            form: Form::ParamAtArgument,
            stop: stop.clone(),
        };
        let run = crate::transform::trace(&Geometric, &spec, PrecisionPolicy::new(256)).map_err(|e| e.to_string())?;
        let p = &run.partial_values;
        let incs: Vec<(usize, Real)> = (p.len() - 20..p.len()).map(|i| (i, (&p[i] - &p[i - 1]).abs())).collect();
        let slope = fitted_log_ratio(&incs).ok_or("no usable increments")?;
        let want = (mu.to_f64() / (mu.to_f64() + 1.0)).ln();
        if (slope - want).abs() > 0.1 * want.abs() {
            return Err(format!("mu={}: slope {slope:.4} vs ln r = {want:.4}", mu.to_decimal_string(4)));
        }
        notes.push(format!("{slope:.3}/{want:.3}"));
    }
    Ok(format!("fitted/predicted exponents {}", notes.join(", ")))
}

fn binomial_series() -> Check {
    let stop = StoppingRule::new(r("1e-24"), 400).expect("positive");
    let got = transform_eval(&BinomialBeta::new(q(1, 2)), &r("0.3"), &r("1"), &stop).map_err(|e| e.to_string())?;
    let d = close("(1+x)^(1/2) at 0.3", &got.value, &r("1.3").sqrt(), &r("1e-20"))?;
    Ok(format!("sqrt(1.3) to {}", sci(&d)))
}

fn hasse_consistency(cfg: &VerifyConfig) -> Check {
    let ecfg = cfg.eval(24, 400);
    let one = r("1");
    for s in ["2", "3", "5.5"] {
        let s = r(s);
        let z = value(&Representation::Zeta { s: s.clone() }, &one, &ecfg)?;
        let lerch = Representation::Lerch {
            x: one.clone(),
            a: one.clone(),
            s: s.clone(),
        };
        let eta = value(&lerch, &one, &ecfg)?;
        let factor = &one - Real::from_u64(2, 256).powf(&(&one - &s));
        close(&format!("s = {}", s.to_decimal_string(3)), &z, &(eta / factor), &r("1e-20"))?;
    }
    Ok("zeta = Phi(-1,1,s)/(1-2^(1-s)) to 1e-20 for s = 2, 3, 5.5".into())
}

fn parameterized() -> Vec<Representation> {
    let half = r("0.5");
    vec![
        Representation::PiAmore,
        Representation::Polylog {
            x: half.clone(),
            s: r("2"),
        },
        Representation::EllipticK {
            x: half.clone(),
            form: EllipticForm::Squared,
        },
        Representation::EllipticE {
            x: half.clone(),
            form: EllipticForm::Squared,
        },
        Representation::Digamma { x: half.clone() },
        Representation::LogGamma { x: half },
        Representation::GammaLogGamma,
        Representation::GammaZetaExcess {
            variant: PrefixVariant::Corrected,
        },
        Representation::MConstant,
    ]
}

fn mu_independence(cfg: &VerifyConfig) -> Check {
    let ecfg = cfg.eval(14, 500);
    let tol = r("1e-10");
    let mus = [r("1") / r("3"), r("0.5"), r("1")];
    for rep in parameterized() {
        let vals = mus.iter().map(|mu| value(&rep, mu, &ecfg)).collect::<std::result::Result<Vec<_>, _>>()?;
        for i in 0..vals.len() {
            for j in i + 1..vals.len() {
                close(rep.id(), &vals[i], &vals[j], &tol)?;
            }
        }
    }
    Ok(format!("{} representations agree across mu = 1/3, 1/2, 1", parameterized().len()))
}

fn against_oracle(rep: &Representation, mus: &[&str], ecfg: &EvalConfig, tol: &str) -> Check {
    let tol = r(tol);
    let mut worst = Real::zero(64);
    for mu in mus {
        let mu = r(mu);
        let o = rep.reference(&mu, &r("1e-40")).map_err(|e| e.to_string())?;
        let v = value(rep, &mu, ecfg)?;
        let d = close(&format!("{} mu={}", rep.id(), mu.to_decimal_string(4)), &v, &o.value, &tol)?;
        worst = worst.max(d);
    }
    Ok(format!("{} within {} (worst {})", rep.id(), sci(&tol), sci(&worst)))
}

fn amore(cfg: &VerifyConfig) -> Check {
    against_oracle(&Representation::PiAmore, &["1", "0.5"], &cfg.eval(14, 500), "1e-10")
}

fn digamma_pi(cfg: &VerifyConfig) -> Check {
    against_oracle(&Representation::PiDigamma, &["1"], &cfg.eval(14, 500), "1e-10")
}

fn laguerre(cfg: &VerifyConfig) -> Check {
    let ecfg = cfg.eval(14, 500);
    for x in ["0.5", "1", "2"] {
        against_oracle(&Representation::ExpLaguerre { x: r(x) }, &["0.5", "1", "2"], &ecfg, "1e-10")?;
    }
    Ok("sum weight(n,mu) L_n(x/mu) = e^-x to 1e-10 on the 3x3 grid".into())
}

fn gamma_forms(cfg: &VerifyConfig) -> Check {
    let ecfg = cfg.eval(16, 500);
    let a = against_oracle(&Representation::GammaLogGamma, &["0.3333333333333333333333333333", "1"], &ecfg, "1e-12")?;
    let b = against_oracle(&Representation::GammaAlzerKoumandos, &["1", "0.5"], &ecfg, "1e-10")?;
    Ok(format!("{a}; {b}"))
}

/// Which prefix for the `zeta - 1` series of Euler's constant reproduces
/// the oracle. Passes when exactly one of the printed and corrected forms
/// matches.
fn gamma_prefix_adjudication(cfg: &VerifyConfig) -> CheckOutcome {
    let id = "gamma-prefix-adjudication";
    let ecfg = cfg.eval(14, 500);
    let gamma = gamma_ref(&r("1e-40")).value;
    let tol = r("1e-10");
    let mut matches = Vec::new();
    let mut lines = Vec::new();
    for variant in PrefixVariant::ALL {
        let mut ok = true;
        for mu in ["1", "0.5"] {
            let rep = Representation::GammaZetaExcess { variant };
            match value(&rep, &r(mu), &ecfg) {
                Ok(v) => {
                    let d = (&v - &gamma).abs();
                    lines.push(format!("{variant} mu={mu}: off by {}", sci(&d)));
                    ok &= d <= tol;
                }
                Err(e) => {
                    lines.push(e);
                    ok = false;
                }
            }
        }
        if ok {
            matches.push(variant);
        }
    }
    let printed_or_corrected: Vec<_> = matches
        .iter()
        .filter(|v| matches!(v, PrefixVariant::AsPrinted | PrefixVariant::Corrected))
        .collect();
    let passed = printed_or_corrected.len() == 1;
    let finding = match printed_or_corrected.as_slice() {
        [v] => {
            let ln2 = gamma_prefix(&r("1"), PrefixVariant::Corrected, 256).map(|c| c.to_decimal_string(12));
            format!(
                "the {v} prefix matches Euler's constant; the split-off sum is 1 - ln 2 = {} for every mu",
                ln2.unwrap_or_default()
            )
        }
        _ => format!("no unique prefix: matching variants {matches:?}"),
    };
    CheckOutcome {
        id,
        passed,
        detail: lines.join("; "),
        finding: Some(finding),
    }
}

/// Squared versus printed central-binomial coefficients for K and E against
/// the AGM. Passes when exactly one form matches to 1e-12 and the other
/// misses by more than 1e-3.
fn elliptic_adjudication(cfg: &VerifyConfig) -> CheckOutcome {
    let id = "elliptic-form-adjudication";
    let ecfg = cfg.eval(16, 500);
    let x = r("0.5");
    let mu = r("1");
    let k = elliptic_k_agm(&x, &r("1e-40")).expect("|x| < 1").value;
    let e = elliptic_e_agm(&x, &r("1e-40")).expect("|x| < 1").value;
    let mut lines = Vec::new();
    let mut verdict = Vec::new();
    for form in [EllipticForm::Squared, EllipticForm::Printed] {
        let kv = value(&Representation::EllipticK { x: x.clone(), form }, &mu, &ecfg);
        let ev = value(&Representation::EllipticE { x: x.clone(), form }, &mu, &ecfg);
        match (kv, ev) {
            (Ok(kv), Ok(ev)) => {
                let dk = (&kv - &k).abs();
                let de = (&ev - &e).abs();
                lines.push(format!("{form:?}: K off by {}, E off by {}", sci(&dk), sci(&de)));
                verdict.push((form, dk.max(de)));
            }
            (a, b) => {
                lines.push(format!("{form:?}: {:?} {:?}", a.err(), b.err()));
                verdict.push((form, r("1")));
            }
        }
    }
    let good: Vec<_> = verdict.iter().filter(|(_, d)| *d <= r("1e-12")).collect();
    let bad = verdict.iter().filter(|(_, d)| *d > r("1e-3")).count();
    let passed = good.len() == 1 && bad == 1 && good[0].0 == EllipticForm::Squared;
    let finding = if passed {
        "squared central binomials (C(2k,k)/4^k)^2 match the AGM; the unsquared C(2k,k)/16^k form does not".to_string()
    } else {
        "neither coefficient form is uniquely supported by the AGM".to_string()
    };
    CheckOutcome {
        id,
        passed,
        detail: lines.join("; "),
        finding: Some(finding),
    }
}

fn m_constant(cfg: &VerifyConfig) -> Check {
    let ecfg = cfg.eval(14, 500);
    let tol = r("1e-8");
    let m = m_ref(&r("1e-30")).value;
    let param = value(&Representation::MConstant, &r("1"), &ecfg)?;
    close("m-constant mu=1", &param, &m, &tol)?;
    let alts = m_constant_alternatives(&ecfg).map_err(|e| e.to_string())?;
    for a in &alts {
        close(&a.representation_id, &a.value, &m, &tol)?;
    }
    Ok(format!("parameterized form and {} classical series agree to 1e-8; M = {}", alts.len(), m.to_decimal_string(12)))
}

fn binomial_identity(n_max: u64) -> Check {
    for n in 0..=n_max {
        let got = binomial_identity_check(n);
        let want = ExactRational::new(BigInt::from(n), BigInt::from(n + 1));
        if got != want {
            return Err(format!("n = {n}: {got} != {want}"));
        }
    }
    Ok(format!("sum C(n,k)(-1)^(k-1)/(k+1) = n/(n+1) exactly for n <= {n_max}"))
}

fn zeta_bounds() -> Check {
    match (1..=64u64).find(|&n| !zeta_bounds_check(n)) {
        None => Ok("2^-(n+1) < zeta(n+1) - 1 < 2^-(n+1)(1 + 2/n) for 1 <= n <= 64".into()),
        Some(n) => Err(format!("bounds fail at n = {n}")),
    }
}

fn stable(name: &str, f: impl Fn(&Real) -> OracleValue) -> std::result::Result<(), String> {
    let coarse = f(&Real::pow2(-100, 64));
    let fine = f(&Real::pow2(-200, 64));
    let d = (&coarse.value - &fine.value).abs();
    if d < coarse.claimed_error {
        Ok(())
    } else {
        Err(format!("{name}: refining moved the value by {} >= claimed {}", sci(&d), sci(&coarse.claimed_error)))
    }
}

fn oracle_stability() -> Check {
    stable("zeta(2)", |t| zeta_ref(&r("2"), t).expect("s > 1"))?;
    stable("zeta(5.5)", |t| zeta_ref(&r("5.5"), t).expect("s > 1"))?;
    stable("pi", pi_ref)?;
    stable("gamma", gamma_ref)?;
    stable("psi(3/4)", |t| digamma_ref(&r("0.75"), t).expect("x > 0"))?;
    stable("M", m_ref)?;
    stable("K(0.7)", |t| elliptic_k_agm(&r("0.7"), t).expect("|x| < 1"))?;
    Ok("values move by less than their claimed error when the target is refined".into())
}

fn oracle_cross() -> Check {
    let t = Real::pow2(-120, 64);
    let psi1 = digamma_ref(&r("1"), &t).map_err(|e| e.to_string())?;
    let g = gamma_ref(&t);
    let s = (&psi1.value + &g.value).abs();
    if s > &psi1.claimed_error + &g.claimed_error {
        return Err(format!("psi(1) + gamma = {}", sci(&s)));
    }
    let a = digamma_ref(&r("0.75"), &t).map_err(|e| e.to_string())?;
    let b = digamma_ref(&r("0.25"), &t).map_err(|e| e.to_string())?;
    let p = pi_ref(&t);
    let d = (&a.value - &b.value - &p.value).abs();
    if d > a.claimed_error + b.claimed_error + p.claimed_error {
        return Err(format!("psi(3/4) - psi(1/4) - pi = {}", sci(&d)));
    }
    Ok("psi(1) = -gamma and psi(3/4) - psi(1/4) = pi within claimed errors".into())
}

fn study_invariants() -> Check {
    let rep = Representation::Geometric { x: r("-0.05") };
    let mut notes = Vec::new();
    for mu in ["0.25", "0.5", "1"] {
        let mu = r(mu);
        let a = error_curve(&rep, &mu, 60, 256).map_err(|e| e.to_string())?;
        let b = error_curve(&rep, &mu, 60, 256).map_err(|e| e.to_string())?;
        if a.iter().zip(&b).any(|(p, q)| p.1 != q.1) {
            return Err("error_curve is not reproducible".into());
        }
        let slope = fitted_log_ratio(&a[20..]).ok_or("empty error curve")?;
        let want = (mu.to_f64() / (mu.to_f64() + 1.0)).ln();
        if (slope - want).abs() > 0.15 * want.abs() {
            return Err(format!("mu={}: slope {slope:.4} vs {want:.4}", mu.to_decimal_string(4)));
        }
        notes.push(format!("{slope:.3}/{want:.3}"));
    }
    let grid = vec![r("0.25"), r("0.5"), r("1")];
    let sweep = StudyConfig::new(rep, grid, r("1e-15"), 200);
    let recs = mu_sweep(&sweep).map_err(|e| e.to_string())?;
    let at_one = recs[2].terms_to_tolerance.ok_or("mu = 1 never reached tolerance")?;
    let best = recs.iter().filter_map(|r| r.terms_to_tolerance).min().unwrap_or(usize::MAX);
    if best > at_one {
        return Err("grid minimum exceeds the mu = 1 count".into());
    }
    Ok(format!("error-curve exponents {}; sweep minimum {best} <= {at_one} at mu = 1", notes.join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_check_is_rejected() {
        let cfg = VerifyConfig {
            only: vec!["nope".into()],
            ..Default::default()
        };
        assert!(run_checks(&cfg).is_err());
    }

    #[test]
    fn exact_checks_pass() {
        let cfg = VerifyConfig {
            only: vec!["binomial-identity".into(), "mu-zero-degeneracy".into(), "euler-weights-exact".into()],
            ..Default::default()
        };
        let rep = run_checks(&cfg).unwrap();
        assert_eq!(rep.outcomes.len(), 3);
        assert!(rep.passed(), "{:?}", rep.outcomes);
    }
}
