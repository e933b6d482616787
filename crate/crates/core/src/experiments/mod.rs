//! Error sweeps over cluster states, grouping of errors by weighted value,
//! the central-error profile for chains, and report formatting.

pub mod catalog;
pub mod report;

use serde::{Deserialize, Serialize};

use crate::channel::{
    all_single_qubit_paulis, apply, random_single_qubit_channel, random_single_qubit_unitary,
    ErrorSpec,
};
use crate::distance::{
    weighted_distance_with, DistanceOptions, DistanceReport, Metric, TIE_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::graph::{cluster_state, line, Graph};
use crate::pauli::{Letter, PauliSum};

pub use catalog::{verify_marginals, MarginalReport};

/// Largest chain length accepted by [`run_conjecture_sweep`].
pub const CONJECTURE_MAX_QUBITS: usize = 10;

/// Chains longer than this have no reference values to compare with.
pub const REFERENCE_MAX_QUBITS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ErrorSelection {
    /// Every single-qubit Pauli error, qubit-major in X, Y, Z order.
    All,
    /// Error strings: `X2`, `Z1`, or `U3` / `K3` for a random unitary or
    /// random channel on qubit 3 drawn from the sweep seed.
    List(Vec<String>),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub graph: Graph,
    pub label: String,
    pub errors: ErrorSelection,
    pub metrics: Vec<Metric>,
    pub options: DistanceOptions,
    pub group_tolerance: f64,
    pub seed: u64,
    /// Compare each state with itself instead of with its image.
    pub self_test: bool,
}

impl ExperimentConfig {
    pub fn new(graph: Graph, label: impl Into<String>) -> ExperimentConfig {
        ExperimentConfig {
            graph,
            label: label.into(),
            errors: ErrorSelection::All,
            metrics: Metric::ALL.to_vec(),
            options: DistanceOptions::default(),
            group_tolerance: TIE_TOLERANCE,
            seed: 0,
            self_test: false,
        }
    }

    /// Resolves the error selection to labelled error specs.
    pub fn resolve_errors(&self) -> Result<Vec<(String, ErrorSpec)>> {
        let n = self.graph.n();
        let strings = match &self.errors {
            ErrorSelection::All => {
                return Ok(all_single_qubit_paulis(n)
                    .into_iter()
                    .map(|e| (e.to_string(), e))
                    .collect())
            }
            ErrorSelection::List(list) => list,
        };
        if strings.is_empty() {
            return Err(Error::InvalidErrorSpec("no errors selected".into()));
        }
        strings
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let e = parse_error(s, self.seed.wrapping_add(i as u64))?;
                if e.qubit() > n {
                    return Err(Error::InvalidErrorSpec(format!(
                        "{s} acts on qubit {} but the graph has {n} qubits",
                        e.qubit()
                    )));
                }
                Ok((s.trim().to_string(), e))
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.metrics.is_empty() {
            return Err(Error::Parse("at least one metric is required".into()));
        }
        Ok(())
    }
}

/// Parses `X2`, `Y1`, `Z3`, or `U<q>` / `K<q>` seeded from `seed`.
pub fn parse_error(s: &str, seed: u64) -> Result<ErrorSpec> {
    let s = s.trim();
    let qubit = |rest: &str| -> Result<usize> {
        match rest.parse::<usize>() {
            Ok(q) if q >= 1 && rest.chars().all(|c| c.is_ascii_digit()) => Ok(q),
            _ => Err(Error::InvalidErrorSpec(format!("bad qubit index in {s:?}"))),
        }
    };
    match s.split_at_checked(1) {
        Some(("U" | "u", rest)) => Ok(random_single_qubit_unitary(seed, qubit(rest)?)),
        Some(("K" | "k", rest)) => Ok(random_single_qubit_channel(seed, qubit(rest)?)),
        _ => s.parse(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub error: String,
    pub report: DistanceReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueGroup {
    pub value: f64,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub graph: String,
    pub metric: Metric,
    pub entries: Vec<SweepEntry>,
    pub groups: Vec<ValueGroup>,
}

impl SweepResult {
    pub fn standard_column(&self) -> Vec<f64> {
        self.entries
            .iter()
            .map(|e| e.report.standard_value)
            .collect()
    }

    pub fn group_of(&self, error: &str) -> Option<&ValueGroup> {
        self.groups
            .iter()
            .find(|g| g.errors.iter().any(|e| e == error))
    }
}

/// Groups errors whose weighted values lie within `tol` of the smallest
/// value of the group. Groups ascend by value; errors keep sweep order.
pub fn group_by_value(entries: &[SweepEntry], tol: f64) -> Vec<ValueGroup> {
    let mut values: Vec<f64> = entries.iter().map(|e| e.report.weighted_value).collect();
    values.sort_by(f64::total_cmp);
    let mut anchors: Vec<f64> = Vec::new();
    for v in values {
        if anchors.last().is_none_or(|&a| v - a >= tol) {
            anchors.push(v);
        }
    }
    let mut groups: Vec<ValueGroup> = anchors
        .iter()
        .map(|&value| ValueGroup {
            value,
            errors: Vec::new(),
        })
        .collect();
    for e in entries {
        let v = e.report.weighted_value;
        let idx = anchors.iter().rposition(|&a| a <= v).unwrap_or(0);
        groups[idx].errors.push(e.error.clone());
    }
    groups
}

#[cfg(feature = "parallel")]
fn try_map<T: Sync, R: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<R> + Sync + Send,
) -> Result<Vec<R>> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn try_map<T, R>(items: &[T], f: impl Fn(&T) -> Result<R>) -> Result<Vec<R>> {
    items.iter().map(f).collect()
}

/// One [`SweepResult`] per requested metric, in the order requested.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<SweepResult>> {
    cfg.validate()?;
    let errors = cfg.resolve_errors()?;
    let rho = cluster_state(&cfg.graph)?;
    let images: Vec<PauliSum> = if cfg.self_test {
        vec![rho.clone(); errors.len()]
    } else {
        errors
            .iter()
            .map(|(_, e)| apply(&rho, e))
            .collect::<Result<_>>()?
    };
    let jobs: Vec<(&str, &PauliSum)> = errors
        .iter()
        .map(|(label, _)| label.as_str())
        .zip(&images)
        .collect();
    cfg.metrics
        .iter()
        .map(|&metric| {
            let entries = try_map(&jobs, |&(label, sigma)| {
                let report = weighted_distance_with(&rho, sigma, metric, &cfg.options)?;
                Ok(SweepEntry {
                    error: label.to_string(),
                    report,
                })
            })?;
            let groups = group_by_value(&entries, cfg.group_tolerance);
            Ok(SweepResult {
                graph: cfg.label.clone(),
                metric,
                entries,
                groups,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub error: String,
    pub position: usize,
    pub weighted: f64,
    pub partition_size: usize,
    pub optimal_partition: crate::partition::Partition,
    /// No reference values exist for this chain length.
    pub exploratory: bool,
}

/// Weighted distance of every `Z_i` error on the chains `line(3..=n_max)`.
pub fn run_conjecture_sweep(n_max: usize, metric: Metric) -> Result<Vec<ConjectureRow>> {
    if !(3..=CONJECTURE_MAX_QUBITS).contains(&n_max) {
        return Err(Error::SizeLimit {
            kind: "conjecture chain",
            n: n_max,
            limit: CONJECTURE_MAX_QUBITS,
        });
    }
    let opts = DistanceOptions::fast();
    let mut rows = Vec::new();
    for n in 3..=n_max {
        let rho = cluster_state(&line(n)?)?;
        let errors: Vec<(String, ErrorSpec)> = (1..=n)
            .map(|q| {
                let e = ErrorSpec::Pauli {
                    letter: Letter::Z,
                    qubit: q,
                };
                (e.to_string(), e)
            })
            .collect();
        let entries = try_map(&errors, |(label, e)| {
            let report = weighted_distance_with(&rho, &apply(&rho, e)?, metric, &opts)?;
            Ok(SweepEntry {
                error: label.clone(),
                report,
            })
        })?;
        rows.extend(entries.into_iter().enumerate().map(|(i, e)| ConjectureRow {
            n,
            error: e.error,
            position: i + 1,
            weighted: e.report.weighted_value,
            partition_size: e.report.optimal_partition.len(),
            optimal_partition: e.report.optimal_partition,
            exploratory: n > REFERENCE_MAX_QUBITS,
        }));
    }
    Ok(rows)
}
