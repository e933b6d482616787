//! Weighted distances: the maximum over set partitions `P` of the qubits of
//! `sum_{a in P} d(rho_a, sigma_a) / |a|`, where `rho_a` is the marginal on
//! block `a` and `d` is the Bures length or the Hilbert-Schmidt distance.
//!
//! Block distances are evaluated once per subset (`2^n - 1` marginal pairs)
//! and the maximization runs as a subset dynamic program in `O(3^n)`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, TRACE_TOL};
use crate::partition::{mask_to_qubits, Partition, MAX_PARTITION_QUBITS};
use crate::pauli::{check_dims, PauliSum, DEFAULT_DENSE_LIMIT, PRUNE_THRESHOLD};

/// Values closer than this are treated as tied when picking the reported
/// partition.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Bures,
    HilbertSchmidt,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::Bures, Metric::HilbertSchmidt];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Bures => "bures",
            Metric::HilbertSchmidt => "hilbert_schmidt",
        }
    }

    /// Short label used in tables, `D_B` or `D_HS`.
    pub fn symbol(self) -> &'static str {
        match self {
            Metric::Bures => "D_B",
            Metric::HilbertSchmidt => "D_HS",
        }
    }

    /// Standard (unweighted) distance between two dense density operators.
    pub fn evaluate(
        self,
        rho: &linalg::DenseOperator,
        sigma: &linalg::DenseOperator,
    ) -> Result<f64> {
        match self {
            Metric::Bures => linalg::bures_length(rho, sigma),
            Metric::HilbertSchmidt => linalg::hs_distance(rho, sigma),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Metric> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "bures" | "b" => Ok(Metric::Bures),
            "hilbert_schmidt" | "hs" => Ok(Metric::HilbertSchmidt),
            _ => Err(Error::Parse(format!("unknown metric {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceOptions {
    pub dense_limit: usize,
    /// Skip the eigensolver when the answer is forced: identical marginals
    /// are at distance 0, marginals with `Tr(rho sigma) = 0` have orthogonal
    /// supports (Bures length pi/2), and the Hilbert-Schmidt distance is
    /// read off the Pauli coefficients.
    pub exact_shortcuts: bool,
    pub tie_tolerance: f64,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            dense_limit: DEFAULT_DENSE_LIMIT,
            exact_shortcuts: false,
            tie_tolerance: TIE_TOLERANCE,
        }
    }
}

impl DistanceOptions {
    pub fn fast() -> Self {
        DistanceOptions {
            exact_shortcuts: true,
            ..Self::default()
        }
    }
}

/// Distance between two operators already restricted to the same qubits.
pub fn block_distance(
    rho: &PauliSum,
    sigma: &PauliSum,
    metric: Metric,
    opts: &DistanceOptions,
) -> Result<f64> {
    check_dims(rho.n(), sigma.n())?;
    if opts.exact_shortcuts {
        if rho.max_difference(sigma)? <= PRUNE_THRESHOLD {
            return Ok(0.0);
        }
        match metric {
            Metric::HilbertSchmidt => {
                let sq = rho.purity() + sigma.purity() - 2.0 * rho.overlap(sigma)?;
                return Ok(sq.max(0.0).sqrt());
            }
            Metric::Bures if rho.overlap(sigma)?.abs() <= PRUNE_THRESHOLD => return Ok(FRAC_PI_2),
            Metric::Bures => {}
        }
    }
    let a = rho.to_dense_with_limit(opts.dense_limit)?;
    let b = sigma.to_dense_with_limit(opts.dense_limit)?;
    metric.evaluate(&a, &b)
}

/// Standard distance between two global states.
pub fn standard_distance(rho: &PauliSum, sigma: &PauliSum, metric: Metric) -> Result<f64> {
    check_pair(rho, sigma)?;
    block_distance(rho, sigma, metric, &DistanceOptions::default())
}

fn check_pair(rho: &PauliSum, sigma: &PauliSum) -> Result<()> {
    check_dims(rho.n(), sigma.n())?;
    for s in [rho, sigma] {
        let tr = s.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotDensity(tr));
        }
    }
    Ok(())
}

/// Distances between every pair of marginals, indexed by qubit bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTable {
    n: usize,
    metric: Metric,
    values: Vec<f64>,
}

impl BlockTable {
    /// Builds a table from explicit values, `values[mask]` for masks
    /// `1..2^n`; entry 0 is ignored.
    pub fn from_values(n: usize, metric: Metric, values: Vec<f64>) -> Result<BlockTable> {
        if n == 0 || n > MAX_PARTITION_QUBITS {
            return Err(Error::SizeLimit {
                kind: "partition",
                n,
                limit: MAX_PARTITION_QUBITS,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: values.len(),
            });
        }
        Ok(BlockTable { n, metric, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn get(&self, mask: u64) -> f64 {
        self.values[mask as usize]
    }

    pub fn get_block(&self, qubits: &[usize]) -> f64 {
        self.get(crate::partition::qubits_to_mask(qubits))
    }

    /// `(qubits, distance)` for every nonempty subset, by increasing mask.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        (1..self.values.len()).map(|m| (mask_to_qubits(m as u64), self.values[m]))
    }

    fn full_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }
}

pub fn block_distance_table(
    rho: &PauliSum,
    sigma: &PauliSum,
    metric: Metric,
) -> Result<BlockTable> {
    block_distance_table_with(rho, sigma, metric, &DistanceOptions::default())
}

pub fn block_distance_table_with(
    rho: &PauliSum,
    sigma: &PauliSum,
    metric: Metric,
    opts: &DistanceOptions,
) -> Result<BlockTable> {
    check_pair(rho, sigma)?;
    let n = rho.n();
    if n == 0 || n > MAX_PARTITION_QUBITS {
        return Err(Error::SizeLimit {
            kind: "partition",
            n,
            limit: MAX_PARTITION_QUBITS,
        });
    }
    let eval = |mask: u64| -> Result<f64> {
        let keep = mask_to_qubits(mask);
        block_distance(
            &rho.partial_trace(&keep)?,
            &sigma.partial_trace(&keep)?,
            metric,
            opts,
        )
    };
    let masks: Vec<u64> = (1..1u64 << n).collect();
    #[cfg(feature = "parallel")]
    let computed: Vec<Result<f64>> = {
        use rayon::prelude::*;
        masks.par_iter().map(|&m| eval(m)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let computed: Vec<Result<f64>> = masks.iter().map(|&m| eval(m)).collect();

    let mut values = vec![0.0; 1 << n];
    for (m, v) in masks.into_iter().zip(computed) {
        values[m as usize] = v?;
    }
    Ok(BlockTable { n, metric, values })
}

#[derive(Debug, Clone, Copy)]
struct Best {
    value: f64,
    blocks: usize,
    first: u64,
}

/// Maximizes the `1/|block|`-weighted sum over all partitions by a subset DP.
///
/// Among partitions within `tie_tolerance` of each other the one with fewer
/// blocks wins, then the lexicographically smaller canonical form. Returns
/// the chosen partition and its weighted sum.
pub fn maximize(table: &BlockTable, tie_tolerance: f64) -> (Partition, f64) {
    let full = table.full_mask();
    let mut best = vec![
        Best {
            value: 0.0,
            blocks: 0,
            first: 0
        };
        (full + 1) as usize
    ];
    for set in 1..=full {
        let low = set & set.wrapping_neg();
        let rest = set ^ low;
        let mut chosen: Option<Best> = None;
        // Blocks containing the lowest element of `set`: low | (submask of rest).
        let mut sub = rest;
        loop {
            let block = sub | low;
            let tail = best[(set ^ block) as usize];
            let cand = Best {
                value: table.get(block) / block.count_ones() as f64 + tail.value,
                blocks: tail.blocks + 1,
                first: block,
            };
            chosen = Some(match chosen {
                None => cand,
                Some(cur) if prefer(&cand, &cur, tie_tolerance) => cand,
                Some(cur) => cur,
            });
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[set as usize] = chosen.expect("nonempty set has a block");
    }

    let mut masks = Vec::new();
    let mut set = full;
    while set != 0 {
        let b = best[set as usize].first;
        masks.push(b);
        set ^= b;
    }
    let partition = Partition::from_masks(&masks);
    let value = weighted_sum(table, &partition);
    (partition, value)
}

fn prefer(cand: &Best, cur: &Best, tol: f64) -> bool {
    if cand.value > cur.value + tol {
        return true;
    }
    if cand.value < cur.value - tol {
        return false;
    }
    if cand.blocks != cur.blocks {
        return cand.blocks < cur.blocks;
    }
    // Both first blocks hold the lowest element; the rest of each partition
    // is the (unique) stored optimum for the remainder, so comparing first
    // blocks decides the canonical order.
    mask_to_qubits(cand.first) < mask_to_qubits(cur.first)
}

/// `sum_a d_a / |a|` for one partition.
pub fn weighted_sum(table: &BlockTable, partition: &Partition) -> f64 {
    partition
        .masks()
        .iter()
        .map(|&m| table.get(m) / m.count_ones() as f64)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockContribution {
    pub qubits: Vec<usize>,
    pub distance: f64,
    pub weight: f64,
    pub term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub metric: Metric,
    pub standard_value: f64,
    pub weighted_value: f64,
    pub optimal_partition: Partition,
    pub block_contributions: Vec<BlockContribution>,
}

impl DistanceReport {
    pub fn from_table(table: &BlockTable, tie_tolerance: f64) -> DistanceReport {
        let (partition, _) = maximize(table, tie_tolerance);
        let block_contributions: Vec<BlockContribution> = partition
            .blocks()
            .iter()
            .map(|b| {
                let distance = table.get_block(b);
                let weight = 1.0 / b.len() as f64;
                BlockContribution {
                    qubits: b.clone(),
                    distance,
                    weight,
                    term: distance * weight,
                }
            })
            .collect();
        DistanceReport {
            metric: table.metric(),
            standard_value: table.get(table.full_mask()),
            weighted_value: block_contributions.iter().map(|c| c.term).sum(),
            optimal_partition: partition,
            block_contributions,
        }
    }
}

pub fn weighted_distance(
    rho: &PauliSum,
    sigma: &PauliSum,
    metric: Metric,
) -> Result<DistanceReport> {
    weighted_distance_with(rho, sigma, metric, &DistanceOptions::default())
}

pub fn weighted_distance_with(
    rho: &PauliSum,
    sigma: &PauliSum,
    metric: Metric,
    opts: &DistanceOptions,
) -> Result<DistanceReport> {
    let table = block_distance_table_with(rho, sigma, metric, opts)?;
    Ok(DistanceReport::from_table(&table, opts.tie_tolerance))
}

/// Minimal energy-time product `E t` for any unitary `exp(-iHt)` taking one
/// state to the other: the weighted Bures length divided by `n`.
pub fn cost_lower_bound(report: &DistanceReport, n: usize) -> Result<f64> {
    if report.metric != Metric::Bures {
        return Err(Error::WrongMetric {
            expected: "bures",
            found: report.metric.name(),
        });
    }
    if n == 0 {
        return Err(Error::SizeLimit {
            kind: "qubit count",
            n,
            limit: MAX_PARTITION_QUBITS,
        });
    }
    Ok(report.weighted_value / n as f64)
}
