//! Graph states in stabilizer form.
//!
//! Generator `g_i` carries X on vertex `i` and Z on each neighbour; the state
//! is `prod_i (I + g_i) / 2`, expanded into its full stabilizer group.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliString, PauliSum, Phase, MAX_QUBITS};

/// Cap on the qubit count for symbolic expansion (2^n terms).
pub const SYMBOLIC_LIMIT: usize = 20;

/// Simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Rejects self-loops, out-of-range endpoints and repeated edges (in
    /// either orientation).
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "graph needs at least one vertex".into(),
            ));
        }
        if n > MAX_QUBITS {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds {MAX_QUBITS}"
            )));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {a}")));
            }
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::InvalidGraph(format!("vertex {v} outside 1..={n}")));
                }
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {a}-{b}")));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Parses the edge-list format: a first line `n <count>`, then one
    /// `i j` pair per line. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("edge list is empty".into()))?;
        let mut head = header.split_whitespace();
        let n = match (head.next(), head.next(), head.next()) {
            (Some("n"), Some(count), None) => count
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("line {line_no}: bad vertex count {count:?}")))?,
            _ => {
                return Err(Error::Parse(format!(
                    "line {line_no}: expected `n <count>`, found {header:?}"
                )))
            }
        };
        let mut edges = Vec::new();
        for (line_no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {line_no}: bad vertex {s:?}")))
            };
            match fields.as_slice() {
                [a, b] => edges.push((parse(a)?, parse(b)?)),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {line_no}: expected `i j`, found {line:?}"
                    )))
                }
            }
        }
        Graph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (a, b) in self.edges() {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    /// Relabels vertex `v` as `perm[v - 1]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        crate::pauli::check_subset(perm, self.n)?;
        Graph::new(
            self.n,
            self.edges().map(|(a, b)| (perm[a - 1], perm[b - 1])),
        )
    }
}

/// The generators `g_1..g_n` of a graph state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerSet {
    generators: Vec<PauliString>,
}

impl StabilizerSet {
    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }
}

pub fn stabilizer_generators(g: &Graph) -> StabilizerSet {
    let generators = (1..=g.n)
        .map(|i| {
            let mut p = PauliString::identity(g.n).with_letter(i, Letter::X);
            for j in g.neighbours(i) {
                p = p.with_letter(j, Letter::Z);
            }
            p
        })
        .collect();
    StabilizerSet { generators }
}

/// Full expansion `2^-n sum_{S} prod_{i in S} g_i` over all generator subsets.
pub fn cluster_state(g: &Graph) -> Result<PauliSum> {
    if g.n > SYMBOLIC_LIMIT {
        return Err(Error::SizeLimit {
            kind: "symbolic",
            n: g.n,
            limit: SYMBOLIC_LIMIT,
        });
    }
    stabilizer_projector(g.n, stabilizer_generators(g).generators())
}

/// `2^-n prod_j (I + g_j)` for pairwise commuting Pauli strings on `n` qubits.
///
/// With `n` independent generators this is a pure stabilizer state; with
/// fewer it is the normalized projector onto their joint +1 eigenspace
/// scaled down accordingly, i.e. the form graph-state marginals take.
pub fn stabilizer_projector(n: usize, gens: &[PauliString]) -> Result<PauliSum> {
    if gens.len() > SYMBOLIC_LIMIT {
        return Err(Error::SizeLimit {
            kind: "symbolic",
            n: gens.len(),
            limit: SYMBOLIC_LIMIT,
        });
    }
    for g in gens {
        crate::pauli::check_dims(n, g.n())?;
    }
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !a.commutes_unchecked(b) {
                return Err(Error::InvalidGraph(format!(
                    "generators {a} and {b} anticommute"
                )));
            }
        }
    }
    let coeff = 0.5f64.powi(n as i32);
    let mut state = PauliSum::zero(n);
    let mut phase = Phase::ONE;
    let mut current = PauliString::identity(n);
    state.add_term(current, coeff);
    // Gray code: step k toggles generator trailing_zeros(k). The generators
    // commute and square to I, so toggling either way is a right product.
    for k in 1u64..(1u64 << gens.len()) {
        let (ph, next) = current.multiply_unchecked(&gens[k.trailing_zeros() as usize]);
        phase = phase * ph;
        current = next;
        let sign = phase
            .sign()
            .expect("products of commuting Hermitian strings are Hermitian");
        state.add_term(current, sign * coeff);
    }
    Ok(state)
}

/// Named topologies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Line3,
    Line4,
    Line5,
    Ring4,
    Line(usize),
    Ring(usize),
    /// Open-boundary `rows x cols` lattice, vertices numbered row-major.
    Grid(usize, usize),
}

impl Preset {
    /// The four configurations with published marginal catalogs and tables.
    pub const REFERENCE: [Preset; 4] = [Preset::Line3, Preset::Line4, Preset::Ring4, Preset::Line5];

    pub fn graph(self) -> Result<Graph> {
        match self {
            Preset::Line3 => line(3),
            Preset::Line4 => line(4),
            Preset::Line5 => line(5),
            Preset::Ring4 => ring(4),
            Preset::Line(n) => line(n),
            Preset::Ring(n) => ring(n),
            Preset::Grid(r, c) => grid(r, c),
        }
    }

    pub fn name(self) -> String {
        match self {
            Preset::Line3 => "line3".into(),
            Preset::Line4 => "line4".into(),
            Preset::Line5 => "line5".into(),
            Preset::Ring4 => "ring4".into(),
            Preset::Line(n) => format!("line({n})"),
            Preset::Ring(n) => format!("ring({n})"),
            Preset::Grid(r, c) => format!("grid({r},{c})"),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    /// Accepts `line3`, `line4`, `line5`, `ring4`, `line(n)`, `ring(n)`,
    /// `grid(r,c)`; `line7` and `ring6` style shorthands also work.
    fn from_str(s: &str) -> Result<Preset> {
        let t: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect::<String>()
            .to_lowercase();
        match t.as_str() {
            "line3" => return Ok(Preset::Line3),
            "line4" => return Ok(Preset::Line4),
            "line5" => return Ok(Preset::Line5),
            "ring4" => return Ok(Preset::Ring4),
            _ => {}
        }
        let bad = || Error::Parse(format!("unknown graph preset {s:?}"));
        let args = |rest: &str| -> Result<Vec<usize>> {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .unwrap_or(rest);
            inner
                .split(',')
                .map(|v| v.parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        if let Some(rest) = t.strip_prefix("line") {
            if let [n] = args(rest)?[..] {
                return Ok(Preset::Line(n));
            }
        } else if let Some(rest) = t.strip_prefix("ring") {
            if let [n] = args(rest)?[..] {
                return Ok(Preset::Ring(n));
            }
        } else if let Some(rest) = t.strip_prefix("grid") {
            if let [r, c] = args(rest)?[..] {
                return Ok(Preset::Grid(r, c));
            }
        }
        Err(bad())
    }
}

/// Chain `1 - 2 - ... - n`.
pub fn line(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidGraph("line needs n >= 1".into()));
    }
    Graph::new(n, (1..n).map(|i| (i, i + 1)))
}

/// Cycle `1 - 2 - ... - n - 1`.
pub fn ring(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidGraph("ring needs n >= 3".into()));
    }
    Graph::new(n, (1..n).map(|i| (i, i + 1)).chain([(1, n)]))
}

pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidGraph("grid needs positive dimensions".into()));
    }
    let id = |r: usize, c: usize| r * cols + c + 1;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, edges)
}
