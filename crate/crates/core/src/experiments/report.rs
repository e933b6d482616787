//! JSON and markdown renderings of sweep results.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::distance::{BlockContribution, Metric};
use crate::error::{Error, Result};
use crate::partition::Partition;

use super::{ConjectureRow, SweepResult};

/// Match tolerance for [`exact_form`].
pub const EXACT_FORM_TOL: f64 = 1e-12;

const MAX_DENOMINATOR: u64 = 24;
const SIGNIFICANT_DIGITS: usize = 12;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn fraction(p: u64, q: u64, unit: &str) -> String {
    let num = match (p, unit) {
        (1, "") => "1".to_string(),
        (1, u) => u.to_string(),
        (p, u) => format!("{p}{u}"),
    };
    if q == 1 {
        num
    } else {
        format!("{num}/{q}")
    }
}

/// `0`, `p/q`, `pi p/q` or `sqrt2 p/q` when `v` is within 1e-12 of one,
/// with `q <= 24`; e.g. `pi/6`, `3pi/4`, `sqrt2/3`, `1/2`.
pub fn exact_form(v: f64) -> Option<String> {
    if !v.is_finite() {
        return None;
    }
    if v.abs() <= EXACT_FORM_TOL {
        return Some("0".into());
    }
    let sign = if v < 0.0 { "-" } else { "" };
    let a = v.abs();
    for q in 1..=MAX_DENOMINATOR {
        for (unit, scale) in [("", 1.0), ("pi", PI), ("sqrt2", SQRT_2)] {
            let p = (a * q as f64 / scale).round();
            if p < 1.0 || gcd(p as u64, q) != 1 {
                continue;
            }
            if (p * scale / q as f64 - a).abs() <= EXACT_FORM_TOL {
                return Some(format!("{sign}{}", fraction(p as u64, q, unit)));
            }
        }
    }
    None
}

/// Rounds to 12 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v)
        .parse()
        .unwrap_or(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonBlock {
    pub qubits: Vec<usize>,
    pub distance: f64,
    pub weight: f64,
    pub term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonResult {
    pub error: String,
    pub standard: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_exact: Option<String>,
    pub weighted: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weighted_exact: Option<String>,
    pub optimal_partition: Partition,
    pub blocks: Vec<JsonBlock>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonGroup {
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_exact: Option<String>,
    pub errors: Vec<String>,
}

/// The JSON document emitted for one graph and one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub graph: String,
    pub metric: Metric,
    pub results: Vec<JsonResult>,
    #[serde(default)]
    pub groups: Vec<JsonGroup>,
}

fn block(c: &BlockContribution) -> JsonBlock {
    JsonBlock {
        qubits: c.qubits.clone(),
        distance: round_sig(c.distance),
        weight: round_sig(c.weight),
        term: round_sig(c.term),
    }
}

impl JsonReport {
    pub fn from_sweep(sweep: &SweepResult) -> JsonReport {
        let results = sweep
            .entries
            .iter()
            .map(|e| JsonResult {
                error: e.error.clone(),
                standard: round_sig(e.report.standard_value),
                standard_exact: exact_form(e.report.standard_value),
                weighted: round_sig(e.report.weighted_value),
                weighted_exact: exact_form(e.report.weighted_value),
                optimal_partition: e.report.optimal_partition.clone(),
                blocks: e.report.block_contributions.iter().map(block).collect(),
            })
            .collect();
        let groups = sweep
            .groups
            .iter()
            .map(|g| JsonGroup {
                value: round_sig(g.value),
                value_exact: exact_form(g.value),
                errors: g.errors.clone(),
            })
            .collect();
        JsonReport {
            graph: sweep.graph.clone(),
            metric: sweep.metric,
            results,
            groups,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are always serializable")
    }

    pub fn from_json(text: &str) -> Result<JsonReport> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A JSON array with one document per sweep.
pub fn sweeps_to_json(sweeps: &[SweepResult]) -> String {
    let docs: Vec<JsonReport> = sweeps.iter().map(JsonReport::from_sweep).collect();
    serde_json::to_string_pretty(&docs).expect("report fields are always serializable")
}

pub fn conjecture_to_json(rows: &[ConjectureRow]) -> String {
    let rows: Vec<ConjectureRow> = rows
        .iter()
        .map(|r| ConjectureRow {
            weighted: round_sig(r.weighted),
            ..r.clone()
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("rows are always serializable")
}

fn display_value(v: f64) -> String {
    match exact_form(v) {
        Some(f) => format!("{:.12} ({f})", round_sig(v)),
        None => format!("{:.12}", round_sig(v)),
    }
}

/// Per-error table followed by the value groups.
pub fn sweep_markdown(sweep: &SweepResult) -> String {
    let sym = sweep.metric.symbol();
    let mut out = format!("### {} / {}\n\n", sweep.graph, sweep.metric.name());
    out.push_str(&format!(
        "| Error | Standard {sym} | Weighted {sym} | Optimal partition |\n"
    ));
    out.push_str("|---|---|---|---|\n");
    for e in &sweep.entries {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            e.error,
            display_value(e.report.standard_value),
            display_value(e.report.weighted_value),
            e.report.optimal_partition
        ));
    }
    out.push_str(&format!("\n| Weighted {sym} | Errors |\n|---|---|\n"));
    for g in &sweep.groups {
        out.push_str(&format!(
            "| {} | {} |\n",
            display_value(g.value),
            g.errors.join(", ")
        ));
    }
    out
}

/// One row per graph and value group, for comparing several sweeps of the
/// same metric at a glance.
pub fn grouping_markdown(sweeps: &[SweepResult]) -> String {
    let mut metrics: Vec<Metric> = Vec::new();
    for s in sweeps {
        if !metrics.contains(&s.metric) {
            metrics.push(s.metric);
        }
    }
    let mut tables = Vec::new();
    for metric in metrics {
        let mut out = format!(
            "| Graph | Weighted {} | Errors |\n|---|---|---|\n",
            metric.symbol()
        );
        for s in sweeps.iter().filter(|s| s.metric == metric) {
            for g in &s.groups {
                let value =
                    exact_form(g.value).unwrap_or_else(|| format!("{:.12}", round_sig(g.value)));
                out.push_str(&format!(
                    "| {} | {value} | {} |\n",
                    s.graph,
                    g.errors.join(", ")
                ));
            }
        }
        tables.push(out);
    }
    tables.join("\n")
}

pub fn conjecture_markdown(rows: &[ConjectureRow]) -> String {
    let mut out = String::from("| n | Error | Weighted | Blocks | Optimal partition | Note |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for r in rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            r.n,
            r.error,
            display_value(r.weighted),
            r.partition_size,
            r.optimal_partition,
            if r.exploratory { "exploratory" } else { "" }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{run_sweep, ExperimentConfig};
    use crate::graph::Preset;

    #[test]
    fn exact_forms() {
        assert_eq!(exact_form(0.0).as_deref(), Some("0"));
        assert_eq!(exact_form(PI / 6.0).as_deref(), Some("pi/6"));
        assert_eq!(exact_form(PI / 4.0).as_deref(), Some("pi/4"));
        assert_eq!(exact_form(PI / 2.0).as_deref(), Some("pi/2"));
        assert_eq!(exact_form(3.0 * PI / 4.0).as_deref(), Some("3pi/4"));
        assert_eq!(exact_form(SQRT_2).as_deref(), Some("sqrt2"));
        assert_eq!(exact_form(SQRT_2 / 3.0).as_deref(), Some("sqrt2/3"));
        assert_eq!(exact_form(2.0 * SQRT_2 / 5.0).as_deref(), Some("2sqrt2/5"));
        assert_eq!(exact_form(0.5).as_deref(), Some("1/2"));
        assert_eq!(exact_form(1.0 / 3.0).as_deref(), Some("1/3"));
        assert_eq!(exact_form(-0.25).as_deref(), Some("-1/4"));
        assert_eq!(exact_form(0.123456789), None);
        assert_eq!(exact_form(PI / 6.0 + 1e-9), None);
        assert_eq!(exact_form(f64::NAN), None);
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(2.0 / 3.0), 0.666666666667);
        assert_eq!(round_sig(-1234.56789012345), -1234.56789012);
    }

    #[test]
    fn json_round_trip() {
        let mut cfg = ExperimentConfig::new(Preset::Line3.graph().unwrap(), "line3");
        cfg.metrics = vec![Metric::HilbertSchmidt];
        let sweep = &run_sweep(&cfg).unwrap()[0];
        let doc = JsonReport::from_sweep(sweep);
        let text = doc.to_json();
        assert_eq!(JsonReport::from_json(&text).unwrap(), doc);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["metric"], "hilbert_schmidt");
        assert_eq!(v["results"][0]["error"], "X1");
        assert_eq!(v["results"][0]["weighted_exact"], "sqrt2/3");
        assert!(v["results"][0]["optimal_partition"][0].is_array());
        assert!(JsonReport::from_json("{").is_err());
    }

    #[test]
    fn markdown_contains_groups() {
        let mut cfg = ExperimentConfig::new(Preset::Line3.graph().unwrap(), "line3");
        cfg.metrics = vec![Metric::Bures];
        let sweeps = run_sweep(&cfg).unwrap();
        let md = sweep_markdown(&sweeps[0]);
        assert!(md.contains("| X1 |"));
        assert!(md.contains("(pi/6) | X1, Z2, X3 |"));
        let table = grouping_markdown(&sweeps);
        assert!(table.contains("| line3 | pi/6 | X1, Z2, X3 |"));
        assert!(table.contains("| line3 | pi/4 | Y1, Z1, X2, Y2, Y3, Z3 |"));
    }
}
