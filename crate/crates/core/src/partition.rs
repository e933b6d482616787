//! Set partitions of the qubits `{1..n}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_partitions`] and the subset DP.
pub const MAX_PARTITION_QUBITS: usize = 12;

/// Disjoint nonempty blocks covering `{1..n}`. Blocks are sorted and ordered
/// by their smallest element, so derived equality and ordering compare
/// canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::Parse("partition contains an empty block".into()));
            }
            block.sort_unstable();
            for &q in block.iter() {
                if q == 0 || q > n {
                    return Err(Error::QubitOutOfRange { qubit: q, n });
                }
                if seen[q] {
                    return Err(Error::DuplicateQubit(q));
                }
                seen[q] = true;
            }
        }
        if let Some(q) = (1..=n).find(|&q| !seen[q]) {
            return Err(Error::Parse(format!(
                "qubit {q} is not covered by the partition"
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { blocks })
    }

    /// Builds from block bitmasks (bit `i` is qubit `i + 1`).
    pub fn from_masks(masks: &[u64]) -> Partition {
        let mut blocks: Vec<Vec<usize>> = masks.iter().map(|&m| mask_to_qubits(m)).collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { blocks }
    }

    /// The single block `{1..n}`.
    pub fn whole(n: usize) -> Partition {
        Partition {
            blocks: vec![(1..=n).collect()],
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn masks(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| qubits_to_mask(b)).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Relabels qubit `q` as `perm[q - 1]`.
    pub fn permuted(&self, perm: &[usize]) -> Partition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&q| perm[q - 1]).collect())
            .collect();
        Partition::new(perm.len(), blocks).expect("a permutation maps partitions to partitions")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_block(b))?;
        }
        write!(f, "}}")
    }
}

/// `{1,2,3}`.
pub fn format_block(block: &[usize]) -> String {
    let inner: Vec<String> = block.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn mask_to_qubits(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

pub fn qubits_to_mask(qubits: &[usize]) -> u64 {
    qubits.iter().fold(0, |m, &q| m | 1 << (q - 1))
}

/// Number of set partitions of an `n`-element set.
pub fn bell_number(n: usize) -> u64 {
    // Bell triangle.
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

/// Every set partition of `{1..n}` exactly once, in restricted-growth-string
/// order (the first yielded is the single block).
pub fn enumerate_partitions(n: usize) -> Result<Partitions> {
    if n == 0 || n > MAX_PARTITION_QUBITS {
        return Err(Error::SizeLimit {
            kind: "partition",
            n,
            limit: MAX_PARTITION_QUBITS,
        });
    }
    Ok(Partitions {
        rgs: Some(vec![0; n]),
    })
}

#[derive(Debug, Clone)]
pub struct Partitions {
    rgs: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let rgs = self.rgs.as_mut()?;
        let out = partition_from_rgs(rgs);

        // Advance: bump the rightmost position that may still grow, zero the tail.
        let n = rgs.len();
        let mut prefix_max = vec![0usize; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(rgs[i - 1]);
        }
        match (1..n).rev().find(|&i| rgs[i] <= prefix_max[i]) {
            Some(i) => {
                rgs[i] += 1;
                rgs[i + 1..].iter_mut().for_each(|v| *v = 0);
            }
            None => self.rgs = None,
        }
        Some(out)
    }
}

fn partition_from_rgs(rgs: &[usize]) -> Partition {
    let count = rgs.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); count];
    for (i, &b) in rgs.iter().enumerate() {
        blocks[b].push(i + 1);
    }
    Partition { blocks }
}
