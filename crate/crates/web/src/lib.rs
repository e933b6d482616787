//! Browser bindings for the demo page in `www/`. Every exported function
//! takes plain strings and returns a JSON document, so the page needs no
//! generated TypeScript types.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use clusterdist::distance::{weighted_distance_with, BlockContribution, DistanceOptions, Metric};
use clusterdist::experiments::report::exact_form;
use clusterdist::experiments::{parse_error, run_conjecture_sweep, run_sweep, ExperimentConfig};
use clusterdist::graph::Graph;
use clusterdist::{channel, cluster_state, Error, Partition, Preset, Result};

/// Largest graph the page will accept; keeps every call well under a second.
pub const WEB_MAX_QUBITS: usize = 8;

#[derive(Serialize)]
struct GraphView {
    label: String,
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct DistanceView {
    graph: GraphView,
    error: String,
    metric: Metric,
    standard: f64,
    standard_exact: Option<String>,
    weighted: f64,
    weighted_exact: Option<String>,
    optimal_partition: Partition,
    blocks: Vec<BlockContribution>,
}

#[derive(Serialize)]
struct SweepRow {
    error: String,
    weighted: f64,
    weighted_exact: Option<String>,
    optimal_partition: Partition,
}

#[derive(Serialize)]
struct SweepView {
    graph: GraphView,
    metric: Metric,
    rows: Vec<SweepRow>,
    groups: Vec<(Option<String>, f64, Vec<String>)>,
}

#[derive(Serialize)]
struct ProfilePoint {
    n: usize,
    position: usize,
    weighted: f64,
    exploratory: bool,
}

/// A preset name, or edge-list text when the input spans several lines.
fn load_graph(spec: &str) -> Result<(Graph, String)> {
    let (graph, label) = if spec.contains('\n') {
        (Graph::parse_edge_list(spec)?, "custom".to_string())
    } else {
        let preset: Preset = spec.parse()?;
        (preset.graph()?, preset.name())
    };
    if graph.n() > WEB_MAX_QUBITS {
        return Err(Error::SizeLimit {
            kind: "demo graph",
            n: graph.n(),
            limit: WEB_MAX_QUBITS,
        });
    }
    Ok((graph, label))
}

fn view(graph: &Graph, label: String) -> GraphView {
    GraphView {
        label,
        n: graph.n(),
        edges: graph.edges().collect(),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("views serialize")
}

/// Weighted distance between a cluster state and its image under one error.
pub fn distance_report(graph: &str, error: &str, metric: &str) -> Result<String> {
    let (g, label) = load_graph(graph)?;
    let metric: Metric = metric.parse()?;
    let e = parse_error(error, 0)?;
    if e.qubit() > g.n() {
        return Err(Error::QubitOutOfRange {
            qubit: e.qubit(),
            n: g.n(),
        });
    }
    let rho = cluster_state(&g)?;
    let sigma = channel::apply(&rho, &e)?;
    let r = weighted_distance_with(&rho, &sigma, metric, &DistanceOptions::fast())?;
    Ok(to_json(&DistanceView {
        graph: view(&g, label),
        error: error.trim().to_string(),
        metric,
        standard: r.standard_value,
        standard_exact: exact_form(r.standard_value),
        weighted: r.weighted_value,
        weighted_exact: exact_form(r.weighted_value),
        optimal_partition: r.optimal_partition,
        blocks: r.block_contributions,
    }))
}

/// Every single-qubit Pauli error on one graph, grouped by weighted value.
pub fn error_sweep(graph: &str, metric: &str) -> Result<String> {
    let (g, label) = load_graph(graph)?;
    let mut cfg = ExperimentConfig::new(g.clone(), label.clone());
    cfg.metrics = vec![metric.parse()?];
    cfg.options = DistanceOptions::fast();
    let s = run_sweep(&cfg)?.remove(0);
    Ok(to_json(&SweepView {
        graph: view(&g, label),
        metric: s.metric,
        rows: s
            .entries
            .iter()
            .map(|e| SweepRow {
                error: e.error.clone(),
                weighted: e.report.weighted_value,
                weighted_exact: exact_form(e.report.weighted_value),
                optimal_partition: e.report.optimal_partition.clone(),
            })
            .collect(),
        groups: s
            .groups
            .iter()
            .map(|gr| (exact_form(gr.value), gr.value, gr.errors.clone()))
            .collect(),
    }))
}

/// Weighted distance of each `Z_i` error along chains of 3..=n_max qubits.
pub fn z_profile(n_max: usize, metric: &str) -> Result<String> {
    if n_max > WEB_MAX_QUBITS {
        return Err(Error::SizeLimit {
            kind: "demo chain",
            n: n_max,
            limit: WEB_MAX_QUBITS,
        });
    }
    let rows = run_conjecture_sweep(n_max, metric.parse()?)?;
    let points: Vec<ProfilePoint> = rows
        .iter()
        .map(|r| ProfilePoint {
            n: r.n,
            position: r.position,
            weighted: r.weighted,
            exploratory: r.exploratory,
        })
        .collect();
    Ok(to_json(&points))
}

fn js(r: Result<String>) -> std::result::Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen(js_name = distanceReport)]
pub fn distance_report_js(
    graph: &str,
    error: &str,
    metric: &str,
) -> std::result::Result<String, JsValue> {
    js(distance_report(graph, error, metric))
}

#[wasm_bindgen(js_name = errorSweep)]
pub fn error_sweep_js(graph: &str, metric: &str) -> std::result::Result<String, JsValue> {
    js(error_sweep(graph, metric))
}

#[wasm_bindgen(js_name = zProfile)]
pub fn z_profile_js(n_max: usize, metric: &str) -> std::result::Result<String, JsValue> {
    js(z_profile(n_max, metric))
}
