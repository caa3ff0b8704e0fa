//! Convergence experiments over the free parameter: sweeps, error curves and
//! a search for the `mu` that needs the fewest terms.
//!
//! Every error here is measured against the representation's oracle value,
//! never against the engine's own tail estimate.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{PrecisionPolicy, Real};
use crate::oracles::OracleValue;
use crate::par::Execution;
use crate::specialfn::{Context, EvalConfig, Representation};
use crate::transform::{mu_validity, MuValidity, StoppingRule};

pub const SWEEP_CSV_HEADER: &str = "mu,terms_to_tolerance,final_error,tolerance";

/// Grid points tried by [`optimal_mu`] before refinement.
pub const OPTIMAL_MU_GRID: usize = 17;
const GOLDEN_STEPS: usize = 16;

#[derive(Debug, Clone)]
pub struct StudyConfig {
    pub representation: Representation,
    pub mu_grid: Vec<Real>,
    pub tolerance: Real,
    pub max_terms: usize,
    pub precision_bits: usize,
    pub execution: Execution,
    pub context: Arc<Context>,
}

impl StudyConfig {
    pub fn new(representation: Representation, mu_grid: Vec<Real>, tolerance: Real, max_terms: usize) -> Self {
        Self {
            representation,
            mu_grid,
            tolerance,
            max_terms,
            precision_bits: PrecisionPolicy::default().target_bits,
            execution: Execution::default(),
            context: Context::global(),
        }
    }

    /// Rejects grids containing an `Invalid` parameter, and any grid for a
    /// representation whose parameter is not free.
    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 64 {
            return Err(Error::domain("studies need at least 64 bits of precision"));
        }
        if !self.tolerance.is_positive() {
            return Err(Error::domain("tolerance must be positive"));
        }
        if !self.representation.has_free_mu() && !self.mu_grid.is_empty() {
            return Err(Error::domain(format!(
                "`{}` fixes mu by its arguments and cannot be swept",
                self.representation.id()
            )));
        }
        for mu in &self.mu_grid {
            if mu_validity(mu) == MuValidity::Invalid {
                return Err(Error::InvalidMu {
                    mu: mu.to_decimal_string(12),
                });
            }
        }
        self.representation.validate()
    }

    fn eval_config(&self) -> Result<EvalConfig> {
        let stop = StoppingRule::new(self.tolerance.clone(), self.max_terms)?;
        Ok(EvalConfig::new(stop, PrecisionPolicy::new(self.precision_bits)).with_context(self.context.clone()))
    }

    /// Oracle accuracy used for measuring errors: well below the tolerance.
    fn oracle_target(&self) -> Real {
        let tl = self.tolerance.with_bits(self.precision_bits) * Real::pow2(-20, 64);
        tl.max(Real::pow2(-(self.precision_bits as i64), 64))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    #[serde(serialize_with = "ser_real")]
    pub mu: Real,
    /// `None` when the series never came within the tolerance of the oracle.
    pub terms_to_tolerance: Option<usize>,
    #[serde(serialize_with = "ser_real")]
    pub final_error: Real,
    #[serde(serialize_with = "ser_real")]
    pub tolerance: Real,
}

fn ser_real<S: serde::Serializer>(v: &Real, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_sci_string(12))
}

impl SweepRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.mu.to_decimal_string(20),
            self.terms_to_tolerance
                .map(|n| n.to_string())
                .unwrap_or_else(|| "NotReached".into()),
            self.final_error.to_sci_string(6),
            self.tolerance.to_sci_string(6),
        )
    }

    fn rank(&self) -> (usize, &Real) {
        (self.terms_to_tolerance.unwrap_or(usize::MAX), &self.final_error)
    }
}

/// Smallest `N` from which every partial sum stays within `tol` of `target`.
fn first_within(partials: &[Real], target: &Real, tol: &Real) -> Option<usize> {
    let mut first = None;
    for (i, p) in partials.iter().enumerate() {
        if (p - target).abs() <= *tol {
            first.get_or_insert(i + 1);
        } else {
            first = None;
        }
    }
    first
}

fn measure(cfg: &StudyConfig, ecfg: &EvalConfig, mu: &Real, oracle: &OracleValue) -> Result<SweepRecord> {
    let run = cfg.representation.trace(mu, ecfg)?;
    let final_value = run.partial_values.last().cloned().unwrap_or_else(|| run.report.value.clone());
    let tol = cfg.tolerance.with_bits(cfg.precision_bits);
    Ok(SweepRecord {
        mu: mu.clone(),
        terms_to_tolerance: first_within(&run.partial_values, &oracle.value, &tol),
        final_error: (final_value - &oracle.value).abs().with_bits(64),
        tolerance: tol,
    })
}

fn oracle_for(cfg: &StudyConfig, mu: &Real, shared: &Option<OracleValue>) -> Result<OracleValue> {
    match shared {
        Some(o) => Ok(o.clone()),
        None => cfg.representation.reference(mu, &cfg.oracle_target()),
    }
}

/// Only the geometric reference moves with `mu`; every other target is a
/// fixed number.
fn shared_oracle(cfg: &StudyConfig) -> Result<Option<OracleValue>> {
    match &cfg.representation {
        Representation::Geometric { .. } => Ok(None),
        r => {
            let any_mu = Real::one(cfg.precision_bits);
            Ok(Some(r.reference(&any_mu, &cfg.oracle_target())?))
        }
    }
}

/// One record per grid point, in grid order. Non-convergence shows up as
/// `terms_to_tolerance = None`.
pub fn mu_sweep(cfg: &StudyConfig) -> Result<Vec<SweepRecord>> {
    cfg.validate()?;
    if cfg.mu_grid.is_empty() {
        return Ok(Vec::new());
    }
    let ecfg = cfg.eval_config()?;
    let shared = shared_oracle(cfg)?;
    cfg.execution
        .map(&cfg.mu_grid, |mu| {
            let oracle = oracle_for(cfg, mu, &shared)?;
            measure(cfg, &ecfg, mu, &oracle)
        })
        .into_iter()
        .collect()
}

/// `|partial_sum(N) - oracle|` for `N = 1..=n_max`. The run ignores the
/// stopping rule so every `N` is present unless the series terminates.
pub fn error_curve(
    representation: &Representation,
    mu: &Real,
    n_max: usize,
    precision_bits: usize,
) -> Result<Vec<(usize, Real)>> {
    representation.validate()?;
    let never = Real::pow2(-4 * precision_bits as i64 - 64, 64);
    let stop = StoppingRule::new(never, n_max.max(1))?;
    let ecfg = EvalConfig::new(stop, PrecisionPolicy::new(precision_bits));
    let oracle = representation.reference(mu, &Real::pow2(-(precision_bits as i64) - 8, 64))?;
    let run = representation.trace(mu, &ecfg)?;
    Ok(run
        .partial_values
        .iter()
        .take(n_max)
        .enumerate()
        .map(|(i, p)| (i + 1, (p - &oracle.value).abs().with_bits(64)))
        .collect())
}

/// Least-squares slope of `ln(error)` against `N` over the given points,
/// skipping exact zeros. `None` with fewer than two usable points.
pub fn fitted_log_ratio(points: &[(usize, Real)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, e)| !e.is_zero())
        .map(|(n, e)| (*n as f64, e.log2_abs() * std::f64::consts::LN_2))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

#[derive(Debug, Clone)]
pub struct OptimalMu {
    pub mu: Real,
    pub terms: usize,
    pub final_error: Real,
    /// Every point evaluated, grid first, then the refinement probes.
    pub evaluated: Vec<SweepRecord>,
}

/// A 17-point grid over `[lo, hi]`, then one golden-section pass on the
/// bracket around the best grid point. Ranked by terms to tolerance, then
/// by final error. Deterministic.
pub fn optimal_mu(
    representation: &Representation,
    tolerance: &Real,
    interval: (&Real, &Real),
    max_terms: usize,
    precision_bits: usize,
) -> Result<OptimalMu> {
    let (lo, hi) = interval;
    if lo > hi {
        return Err(Error::domain("optimal_mu needs lo <= hi"));
    }
    let bits = precision_bits;
    let (lo, hi) = (lo.with_bits(bits), hi.with_bits(bits));
    let grid: Vec<Real> = if lo == hi {
        vec![lo.clone()]
    } else {
        let step = (&hi - &lo) / Real::from_u64(OPTIMAL_MU_GRID as u64 - 1, bits);
        (0..OPTIMAL_MU_GRID)
            .map(|i| &lo + &step * Real::from_u64(i as u64, bits))
            .collect()
    };
    let mut cfg = StudyConfig::new(representation.clone(), grid.clone(), tolerance.clone(), max_terms);
    cfg.precision_bits = precision_bits;
    let mut evaluated = mu_sweep(&cfg)?;

    let best_index = |recs: &[SweepRecord]| {
        (0..recs.len())
            .min_by(|&a, &b| recs[a].rank().partial_cmp(&recs[b].rank()).expect("finite errors"))
            .expect("nonempty")
    };

    if grid.len() > 1 {
        let i = best_index(&evaluated);
        let (mut a, mut b) = (grid[i.saturating_sub(1)].clone(), grid[(i + 1).min(grid.len() - 1)].clone());
        let inv_phi = (Real::from_u64(5, bits).sqrt() - Real::one(bits)) / Real::from_u64(2, bits);
        let probe = |mu: Real, cfg: &mut StudyConfig| -> Result<SweepRecord> {
            cfg.mu_grid = vec![mu];
            Ok(mu_sweep(cfg)?.remove(0))
        };
        let mut c = &b - &(&inv_phi * (&b - &a));
        let mut d = &a + &(&inv_phi * (&b - &a));
        let mut fc = probe(c.clone(), &mut cfg)?;
        let mut fd = probe(d.clone(), &mut cfg)?;
        for _ in 0..GOLDEN_STEPS {
            if fc.rank() <= fd.rank() {
                b = d;
                d = c;
                evaluated.push(fd);
                fd = fc;
                c = &b - &(&inv_phi * (&b - &a));
                fc = probe(c.clone(), &mut cfg)?;
            } else {
                a = c;
                c = d;
                evaluated.push(fc);
                fc = fd;
                d = &a + &(&inv_phi * (&b - &a));
                fd = probe(d.clone(), &mut cfg)?;
            }
        }
        evaluated.push(fc);
        evaluated.push(fd);
    }

    let best = &evaluated[best_index(&evaluated)];
    match best.terms_to_tolerance {
        Some(terms) => Ok(OptimalMu {
            mu: best.mu.clone(),
            terms,
            final_error: best.final_error.clone(),
            evaluated: evaluated.clone(),
        }),
        None => Err(Error::NoConvergentMu),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Real {
        Real::parse(s, 256).unwrap()
    }

    #[test]
    fn first_within_requires_staying_inside() {
        let parts = vec![r("0.5"), r("0.99"), r("1.5"), r("0.999"), r("1.0001")];
        assert_eq!(first_within(&parts, &r("1"), &r("0.01")), Some(4));
        assert_eq!(first_within(&parts[..3], &r("1"), &r("0.01")), None);
    }

    #[test]
    fn invalid_grid_is_rejected_before_work() {
        let rep = Representation::PiAmore;
        let cfg = StudyConfig::new(rep, vec![r("1"), r("-0.6")], r("1e-10"), 100);
        assert!(matches!(mu_sweep(&cfg), Err(Error::InvalidMu { .. })));
    }

    #[test]
    fn empty_grid_gives_no_records() {
        let cfg = StudyConfig::new(Representation::PiAmore, vec![], r("1e-10"), 100);
        assert!(mu_sweep(&cfg).unwrap().is_empty());
    }

    #[test]
    fn geometric_curve_halves() {
        let rep = Representation::Geometric { x: r("0.5") };
        let curve = error_curve(&rep, &r("1"), 40, 256).unwrap();
        assert_eq!(curve.len(), 40);
        let slope = fitted_log_ratio(&curve[10..]).unwrap();
        // mu x = 1/2, so the outer ratio is mu (1 + x) / (mu + 1) = 3/4
        assert!((slope - (0.75f64).ln()).abs() < 0.1 * (0.75f64).ln().abs(), "{slope}");
        assert_eq!(error_curve(&rep, &r("1"), 1, 256).unwrap().len(), 1);
    }

    #[test]
    fn degenerate_interval_returns_lo() {
        let rep = Representation::Geometric { x: r("0.3") };
        let lo = r("0.5");
        let best = optimal_mu(&rep, &r("1e-10"), (&lo, &lo), 400, 128).unwrap();
        assert_eq!(best.mu, lo.with_bits(128));
    }
}
