//! Term generation and summation for the parameterized transform.
//!
//! Row `n` of the outer series is built from Pascal row `n` (derived from row
//! `n - 1`) and the cached products `x^k a_k`, so an `N`-term evaluation
//! fetches each coefficient once and performs `O(N^2)` multiply-adds.

use crate::error::{Error, Result};
use crate::exactmath::{PascalRows, Real};

use super::levin::LevinAccelerator;
use super::source::CoefficientSource;
use super::{mu_validity, EvaluationReport, Form, MuValidity, StoppingRule};

struct TransformTerms<'a> {
    source: &'a dyn CoefficientSource,
    form: Form,
    bits: usize,
    x: Real,
    x_pow: Real,
    /// `x^k a_k` for `k < n`
    scaled: Vec<Real>,
    /// `mu^j`, `ParamFree` only; `mu^0 = 1` even for `mu = 0`
    mu_pows: Vec<Real>,
    mu: Real,
    rows: PascalRows,
    weight: Real,
    ratio: Real,
}

impl<'a> TransformTerms<'a> {
    fn new(source: &'a dyn CoefficientSource, x: &Real, mu: &Real, form: Form, bits: usize) -> Self {
        let x = x.with_bits(bits);
        let mu = mu.with_bits(bits);
        let one = Real::one(bits);
        let mu1 = &mu + &one;
        let (weight, ratio) = match form {
            Form::ParamAtArgument => (mu1.recip(), &mu / &mu1),
            Form::ParamFree => (mu1.recip(), mu1.recip()),
        };
        Self {
            source,
            form,
            bits,
            x,
            x_pow: one.clone(),
            scaled: Vec::new(),
            mu_pows: vec![one],
            mu,
            rows: PascalRows::new(),
            weight,
            ratio,
        }
    }
}

impl Iterator for TransformTerms<'_> {
    type Item = Real;

    fn next(&mut self) -> Option<Real> {
        let n = self.scaled.len();
        let a_n = self.source.coeff(n, self.bits).to_real(self.bits);
        self.scaled.push(&self.x_pow * &a_n);
        self.x_pow *= &self.x;
        if self.form == Form::ParamFree && n > 0 {
            let next = self.mu_pows.last().expect("mu^0 present") * &self.mu;
            self.mu_pows.push(next);
        }

        let row = self.rows.advance();
        let mut inner = Real::zero(self.bits);
        for (k, c) in row.iter().enumerate() {
            if self.scaled[k].is_zero() {
                continue;
            }
            let mut t = Real::from_bigint(c, self.bits) * &self.scaled[k];
            if self.form == Form::ParamFree {
                t *= &self.mu_pows[n - k];
            }
            inner += t;
        }
        let term = &self.weight * &inner;
        self.weight *= &self.ratio;
        Some(term)
    }
}

/// Binomial-weighted inner sum `sum_{k=0}^n C(n,k) x^k a_k` at `bits`.
pub fn inner_sum(n: usize, x: &Real, source: &dyn CoefficientSource, bits: usize) -> Real {
    let x = x.with_bits(bits);
    let row = PascalRows::new().nth(n).expect("PascalRows is infinite");
    let mut x_pow = Real::one(bits);
    let mut acc = Real::zero(bits);
    for (k, c) in row.iter().enumerate() {
        let a = source.coeff(k, bits).to_real(bits);
        acc += Real::from_bigint(c, bits) * &x_pow * a;
        x_pow *= &x;
    }
    acc
}

type Terms<'a> = Box<dyn Iterator<Item = Real> + Send + 'a>;

/// An outer series ready to be summed under a [`StoppingRule`].
///
/// Built from the transform of a coefficient source, or from any other term
/// stream whose decay is governed by the same outer ratio `|mu/(mu+1)|`.
/// The final value is `offset + sum(terms)`.
pub struct Series<'a> {
    terms: Terms<'a>,
    mu: Real,
    validity: MuValidity,
    degenerate: bool,
    offset: Option<Real>,
    bits: usize,
}

impl<'a> Series<'a> {
    /// Outer terms of the transform of `source` at `x` with parameter `mu`,
    /// generated at `bits` of working precision.
    pub fn transform(
        source: &'a dyn CoefficientSource,
        x: &Real,
        mu: &Real,
        form: Form,
        bits: usize,
    ) -> Result<Self> {
        let validity = check_mu(mu)?;
        if let Some(r) = source.radius() {
            if !r.admits(x) {
                return Err(Error::domain(format!(
                    "|x| = {} outside the radius of convergence {} of `{}`",
                    x.abs().to_sci_string(6),
                    r.value,
                    source.name()
                )));
            }
        }
        if x.is_zero() {
            let a0 = source.coeff(0, bits).to_real(bits);
            return Ok(Self {
                terms: Box::new(std::iter::once(a0).chain(std::iter::repeat(Real::zero(bits)))),
                mu: mu.with_bits(bits),
                validity,
                degenerate: true,
                offset: None,
                bits,
            });
        }
        Ok(Self {
            terms: Box::new(TransformTerms::new(source, x, mu, form, bits)),
            mu: mu.with_bits(bits),
            validity,
            degenerate: false,
            offset: None,
            bits,
        })
    }

    /// Wraps an arbitrary term stream whose outer ratio is set by `mu`.
    pub fn from_terms(terms: impl Iterator<Item = Real> + Send + 'a, mu: &Real, bits: usize) -> Result<Self> {
        let validity = check_mu(mu)?;
        Ok(Self {
            terms: Box::new(terms),
            mu: mu.with_bits(bits),
            validity,
            degenerate: false,
            offset: None,
            bits,
        })
    }

    pub fn scaled(mut self, factor: Real) -> Self {
        let factor = factor.with_bits(self.bits);
        self.offset = self.offset.map(|c| c * &factor);
        let terms = self.terms;
        self.terms = Box::new(terms.map(move |t| t * &factor));
        self
    }

    /// Adds a constant to the final value.
    pub fn offset(mut self, c: Real) -> Self {
        self.offset = Some(match self.offset.take() {
            Some(o) => o + c,
            None => c,
        });
        self
    }

    /// Term-by-term difference `self - other`. Both must share `mu`.
    pub fn minus(self, other: Series<'a>) -> Self {
        let offset = match (self.offset, other.offset) {
            (Some(a), Some(b)) => Some(a - b),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(-b),
            (None, None) => None,
        };
        Self {
            terms: Box::new(self.terms.zip(other.terms).map(|(a, b)| a - b)),
            mu: self.mu,
            validity: self.validity,
            degenerate: self.degenerate && other.degenerate,
            offset,
            bits: self.bits,
        }
    }

    pub fn validity(&self) -> MuValidity {
        self.validity
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Sums terms until the stopping rule fires or `max_terms` is reached.
    /// `keep_trace` records every partial value (offset and scale applied).
    pub fn run(self, stop: &StoppingRule, target_bits: usize, keep_trace: bool) -> SeriesRun {
        let bits = self.bits;
        let ratio = outer_ratio(&self.mu);
        let tol = stop.tolerance.with_bits(bits);
        let mut sum = self.offset.map(|c| c.with_bits(bits)).unwrap_or_else(|| Real::zero(bits));
        let mut trace = Vec::new();
        let mut prev_abs: Option<Real> = None;
        let mut small = 0usize;
        let mut terms_used = 0usize;
        let mut last = Real::zero(bits);
        let mut tail = Real::zero(bits);
        let mut converged = false;

        for (n, t) in self.terms.take(stop.max_terms).enumerate() {
            sum += &t;
            terms_used = n + 1;
            if keep_trace {
                trace.push(sum.clone());
            }
            if self.degenerate {
                last = t;
                tail = Real::zero(bits);
                converged = true;
                break;
            }
            let mag = t.abs();
            let observed = match &prev_abs {
                None => Some(ratio.clone()),
                Some(p) if p.is_zero() => mag.is_zero().then(|| Real::zero(bits)),
                Some(p) => Some(&mag / p),
            };
            let one = Real::one(bits);
            tail = match observed.map(|o| o.max(ratio.clone())) {
                Some(r) if r < one => tail_from_ratio(&mag, &r),
                _ => &mag * Real::from_u64((stop.max_terms - n) as u64, bits),
            };
            small = if tail <= tol { small + 1 } else { 0 };
            prev_abs = Some(mag);
            last = t;
            if small >= stop.consecutive_small.max(1) {
                converged = true;
                break;
            }
        }

        SeriesRun {
            report: EvaluationReport {
                value: sum.with_bits(target_bits),
                terms_used,
                last_increment: last,
                estimated_tail: tail,
                validity: self.validity,
                converged,
            },
            partial_values: trace,
        }
    }
}

impl Series<'_> {
    /// Sums with the Levin u-transform applied to the partial sums, for
    /// series whose terms decay only algebraically. The reported tail is the
    /// change between successive accelerated estimates.
    pub fn run_levin(self, stop: &StoppingRule, target_bits: usize, keep_trace: bool) -> SeriesRun {
        let bits = self.bits;
        let tol = stop.tolerance.with_bits(bits);
        let offset = self.offset.map(|c| c.with_bits(bits)).unwrap_or_else(|| Real::zero(bits));
        let mut acc = LevinAccelerator::new();
        let mut trace = Vec::new();
        let mut value = offset.clone();
        let mut last = Real::zero(bits);
        let mut tail = Real::zero(bits);
        let mut small = 0usize;
        let mut terms_used = 0usize;
        let mut converged = false;

        for (n, t) in self.terms.take(stop.max_terms).enumerate() {
            terms_used = n + 1;
            if self.degenerate {
                value = &offset + &t;
                if keep_trace {
                    trace.push(value.clone());
                }
                converged = true;
                break;
            }
            // the trace keeps one entry per term, repeating the estimate when
            // the accelerator has nothing new
            let est = if t.is_zero() { None } else { acc.push(t) };
            let Some(est) = est else {
                if keep_trace {
                    trace.push(value.clone());
                }
                continue;
            };
            let next = &offset + est;
            last = &next - &value;
            value = next;
            if keep_trace {
                trace.push(value.clone());
            }
            match acc.last_change() {
                Some(c) => {
                    small = if c <= tol { small + 1 } else { 0 };
                    tail = c;
                }
                None => tail = last.abs(),
            }
            if small >= stop.consecutive_small.max(1) {
                converged = true;
                break;
            }
        }

        SeriesRun {
            report: EvaluationReport {
                value: value.with_bits(target_bits),
                terms_used,
                last_increment: last,
                estimated_tail: tail,
                validity: self.validity,
                converged,
            },
            partial_values: trace,
        }
    }
}

/// Result of [`Series::run`], converged or not.
#[derive(Debug, Clone)]
pub struct SeriesRun {
    pub report: EvaluationReport,
    /// Partial values after each term, when tracing was requested.
    pub partial_values: Vec<Real>,
}

impl SeriesRun {
    pub fn into_result(self) -> Result<EvaluationReport> {
        if self.report.converged {
            Ok(self.report)
        } else {
            Err(Error::NotConverged(Box::new(self.report)))
        }
    }
}

fn check_mu(mu: &Real) -> Result<MuValidity> {
    if (mu + Real::one(mu.bits())).is_zero() {
        return Err(Error::DivisionByZero("mu = -1 makes the weight mu^n/(mu+1)^(n+1) singular"));
    }
    match mu_validity(mu) {
        MuValidity::Invalid => Err(Error::InvalidMu {
            mu: mu.to_decimal_string(12),
        }),
        v => Ok(v),
    }
}

/// `|mu/(mu+1)|`
pub(crate) fn outer_ratio(mu: &Real) -> Real {
    (mu / (mu + Real::one(mu.bits()))).abs()
}

pub(crate) fn tail_from_ratio(last_abs: &Real, r: &Real) -> Real {
    last_abs * r / (Real::one(r.bits()) - r)
}
