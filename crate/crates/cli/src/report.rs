//! Text, CSV and JSON renderings. Values are always decimal strings.

use serde::Serialize;
use serde_json::{json, Map, Value};

use paramseries::oracles::{gamma_ref, m_ref, pi_ref};
use paramseries::specialfn::{
    alzer_koumandos_gamma, amore_pi, euler_gamma_accel, euler_gamma_param, m_constant_alternatives, m_constant_param,
    pi_via_digamma, EvalConfig, PrefixVariant,
};
use paramseries::studies::{SweepRecord, SWEEP_CSV_HEADER};
use paramseries::verify::VerifyReport;
use paramseries::{EvaluationReport, Real, Result};

use crate::Format;

/// Printed value headline for M.
const M_HEADLINE: &str = "1.257746";

/// `floor(bits * log10 2) - 5` significant digits.
pub fn value_digits(bits: usize) -> usize {
    ((bits as f64 * std::f64::consts::LOG10_2).floor() as usize).saturating_sub(5).max(1)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn params_json(params: &[(&str, String)]) -> Value {
    Value::Object(params.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect::<Map<_, _>>())
}

pub fn eval(
    format: Format,
    id: &str,
    params: &[(&str, String)],
    mu: &Real,
    bits: usize,
    r: &EvaluationReport,
) -> String {
    let digits = value_digits(bits);
    let value = r.value.to_decimal_string(digits);
    let mu_s = mu.to_decimal_string(20);
    let tail = r.estimated_tail.to_sci_string(6);
    let validity = r.validity.as_str();
    match format {
        Format::Json => json_text(&json!({
            "representation": id,
            "params": params_json(params),
            "mu": mu_s,
            "precision_bits": bits,
            "value": value,
            "terms": r.terms_used,
            "est_tail": tail,
            "validity": validity,
        })),
        Format::Csv => format!(
            "representation,mu,precision_bits,value,terms,est_tail,validity\n{id},{mu_s},{bits},{value},{},{tail},{validity}\n",
            r.terms_used
        ),
        Format::Plain => {
            let shown: String = params.iter().map(|(k, v)| format!(" {k}={v}")).collect();
            format!(
                "representation: {id}{}\nmu: {mu_s}\nvalue: {value}\nterms_used: {}\nestimated_tail: {tail}\nvalidity: {validity}\nconverged: {}\n",
                shown,
                r.terms_used,
                r.converged
            )
        }
    }
}

pub fn verify(format: Format, report: &VerifyReport) -> String {
    let passed = report.outcomes.iter().filter(|o| o.passed).count();
    let total = report.outcomes.len();
    if format == Format::Json {
        let checks: Vec<Value> = report
            .outcomes
            .iter()
            .map(|o| json!({"id": o.id, "passed": o.passed, "detail": o.detail, "finding": o.finding}))
            .collect();
        return json_text(&json!({"passed": report.passed(), "checks": checks}));
    }
    let mut out = String::new();
    for o in &report.outcomes {
        out += &format!("{} {}: {}\n", if o.passed { "PASS" } else { "FAIL" }, o.id, o.detail);
    }
    for (id, finding) in report.findings() {
        out += &format!("finding {id}: {finding}\n");
    }
    out += &format!("{passed}/{total} checks passed\n");
    out
}

pub fn sweep(format: Format, id: &str, params: &[(&str, String)], bits: usize, records: &[SweepRecord]) -> String {
    match format {
        Format::Json => json_text(&json!({
            "representation": id,
            "params": params_json(params),
            "precision_bits": bits,
            "records": records,
        })),
        Format::Csv | Format::Plain => {
            let mut out = format!("{SWEEP_CSV_HEADER}\n");
            for r in records {
                out += &r.csv_row();
                out.push('\n');
            }
            out
        }
    }
}

#[derive(Serialize)]
pub struct Route {
    label: String,
    value: String,
    delta: String,
    #[serde(skip)]
    raw: Real,
}

#[derive(Serialize)]
pub struct Block {
    name: &'static str,
    oracle: String,
    oracle_method: &'static str,
    routes: Vec<Route>,
    max_pairwise_delta: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    headline: Option<Headline>,
}

#[derive(Serialize)]
pub struct Headline {
    stated: &'static str,
    rounded: String,
    matches: bool,
}

fn block(name: &'static str, oracle: paramseries::oracles::OracleValue, routes: Vec<(String, Real)>, digits: usize) -> Block {
    let mut all: Vec<&Real> = routes.iter().map(|(_, v)| v).collect();
    all.push(&oracle.value);
    let mut spread = Real::zero(64);
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            spread = spread.max((all[i] - all[j]).abs());
        }
    }
    Block {
        name,
        oracle: oracle.value.to_decimal_string(digits),
        oracle_method: oracle.method,
        routes: routes
            .into_iter()
            .map(|(label, v)| Route {
                label,
                value: v.to_decimal_string(digits),
                delta: (&v - &oracle.value).abs().to_sci_string(3),
                raw: v,
            })
            .collect(),
        max_pairwise_delta: spread.to_sci_string(3),
        headline: None,
    }
}

/// Six-decimal rounding, as a string.
fn round6(v: &Real) -> String {
    let scaled = (v * Real::from_u64(1_000_000, v.bits())).round_to_bigint();
    let million = num_bigint::BigInt::from(1_000_000);
    format!("{}.{:06}", &scaled / &million, &scaled % &million)
}

pub fn constant_blocks(cfg: &EvalConfig) -> Result<Vec<Block>> {
    let bits = cfg.precision.target_bits;
    let digits = value_digits(bits).min(40);
    let oracle_tol = cfg.stop.tolerance.with_bits(bits) * Real::pow2(-20, 64);
    let one = Real::one(bits);
    let third = Real::from_ratio(1, 3, bits);

    let pi = block(
        "pi",
        pi_ref(&oracle_tol),
        vec![
            ("pi-amore mu=1".into(), amore_pi(&one, cfg)?.value),
            ("pi-digamma mu=1".into(), pi_via_digamma(&one, cfg)?.value),
        ],
        digits,
    );
    let gamma = block(
        "gamma",
        gamma_ref(&oracle_tol),
        vec![
            ("gamma-loggamma mu=1".into(), euler_gamma_param(&one, cfg)?.value),
            ("gamma-loggamma mu=1/3".into(), euler_gamma_param(&third, cfg)?.value),
            (
                "gamma-zeta-excess corrected mu=1".into(),
                euler_gamma_accel(&one, PrefixVariant::Corrected, cfg)?.value,
            ),
            ("gamma-alzer-koumandos mu=1".into(), alzer_koumandos_gamma(&one, cfg)?.value),
        ],
        digits,
    );
    let mut routes = vec![("m-constant mu=1".to_string(), m_constant_param(&one, cfg)?.value)];
    routes.extend(m_constant_alternatives(cfg)?.into_iter().map(|c| (c.representation_id, c.value)));
    let mut m = block("M", m_ref(&oracle_tol), routes, digits);
    let rounded = round6(&m.routes[0].raw);
    m.headline = Some(Headline {
        stated: M_HEADLINE,
        matches: rounded == M_HEADLINE,
        rounded,
    });
    Ok(vec![pi, gamma, m])
}

pub fn constants(format: Format, bits: usize, blocks: &[Block]) -> String {
    if format == Format::Json {
        return json_text(&json!({"precision_bits": bits, "constants": blocks}));
    }
    let mut out = String::new();
    for b in blocks {
        out += &format!("[{}]\n", b.name);
        out += &format!("  oracle ({}): {}\n", b.oracle_method, b.oracle);
        for r in &b.routes {
            out += &format!("  {}: {}  (delta {})\n", r.label, r.value, r.delta);
        }
        out += &format!("  max pairwise delta: {}\n", b.max_pairwise_delta);
        if let Some(h) = &b.headline {
            out += &format!(
                "  headline {}: rounds to {} ({})\n",
                h.stated,
                h.rounded,
                if h.matches { "match" } else { "mismatch" }
            );
        }
    }
    out
}
