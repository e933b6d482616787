//! Reference expressions for the global and marginal states of the four
//! reference cluster states, and a term-by-term comparison against the
//! marginals computed by symbolic partial trace.
//!
//! Qubit labels in the fixtures are global; a marginal on `keep` is
//! expressed on `keep` relabelled in increasing order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{cluster_state, stabilizer_projector, Preset};
use crate::partition::format_block;
use crate::pauli::{PauliString, PauliSum, PRUNE_THRESHOLD};

#[derive(Debug, Clone, Copy)]
pub enum FixtureForm {
    /// `2^-k prod (I + g)` over the listed strings.
    Product(&'static [&'static str]),
    /// `2^-k (I + sum of +/- terms)`; each entry is a signed labeled string.
    Expansion(&'static [&'static str]),
    /// `I / 2^k`.
    MaximallyMixed,
}

#[derive(Debug, Clone, Copy)]
pub struct MarginalFixture {
    pub keep: &'static [usize],
    pub form: FixtureForm,
    /// Set when the reference text differs from the fixture in a way that is
    /// a transcription slip rather than a physics claim.
    pub erratum: Option<&'static str>,
}

const fn product(keep: &'static [usize], gens: &'static [&'static str]) -> MarginalFixture {
    MarginalFixture {
        keep,
        form: FixtureForm::Product(gens),
        erratum: None,
    }
}

const fn mixed(keep: &'static [usize]) -> MarginalFixture {
    MarginalFixture {
        keep,
        form: FixtureForm::MaximallyMixed,
        erratum: None,
    }
}

const fn expansion(keep: &'static [usize], terms: &'static [&'static str]) -> MarginalFixture {
    MarginalFixture {
        keep,
        form: FixtureForm::Expansion(terms),
        erratum: None,
    }
}

const LINE3: &[MarginalFixture] = &[
    product(&[1, 2, 3], &["X1 Z2", "Z1 X2 Z3", "Z2 X3"]),
    expansion(
        &[1, 2, 3],
        &[
            "+Z2 X3",
            "+X1 Z2",
            "+X1 X3",
            "+Z1 X2 Z3",
            "+Z1 Y2 Y3",
            "+Y1 Y2 Z3",
            "-Y1 X2 Y3",
        ],
    ),
    product(&[1, 2], &["X1 Z2"]),
    product(&[1, 3], &["X1 X3"]),
    product(&[2, 3], &["Z2 X3"]),
];

const LINE4: &[MarginalFixture] = &[
    product(&[1, 2, 3, 4], &["X1 Z2", "Z1 X2 Z3", "Z2 X3 Z4", "Z3 X4"]),
    expansion(
        &[1, 2, 3, 4],
        &[
            "+Z3 X4",
            "+X1 Z2",
            "+Z2 X3 Z4",
            "+Z2 Y3 Y4",
            "+Z1 X2 Z3",
            "+Z1 X2 X4",
            "+X1 X3 Z4",
            "+X1 Y3 Y4",
            "+Y1 Y2 Z3",
            "+Y1 Y2 X4",
            "+Z1 Y2 Y3 Z4",
            "-Z1 Y2 X3 Y4",
            "+X1 Z2 Z3 X4",
            "-Y1 X2 Y3 Z4",
            "+Y1 X2 X3 Y4",
        ],
    ),
    product(&[1, 2, 3], &["X1 Z2", "Z1 X2 Z3"]),
    product(&[1, 2, 4], &["X1 Z2", "Z1 X2 X4"]),
    product(&[1, 3, 4], &["Z3 X4", "X1 X3 Z4"]),
    product(&[2, 3, 4], &["Z2 X3 Z4", "Z3 X4"]),
    product(&[1, 2], &["X1 Z2"]),
    product(&[3, 4], &["Z3 X4"]),
    mixed(&[1, 3]),
    mixed(&[1, 4]),
    mixed(&[2, 3]),
    mixed(&[2, 4]),
];

const RING4: &[MarginalFixture] = &[
    product(
        &[1, 2, 3, 4],
        &["Z4 X1 Z2", "Z1 X2 Z3", "Z2 X3 Z4", "Z1 X4 Z3"],
    ),
    MarginalFixture {
        keep: &[1, 2, 3, 4],
        form: FixtureForm::Expansion(&[
            "+X1 X3",
            "+X2 X4",
            "+Z1 X4 Z3",
            "+Z2 X3 Z4",
            "-Y2 X3 Y4",
            "+X1 Z2 Z4",
            "-Y1 Y3 X4",
            "-X1 Y2 Y4",
            "-Y1 X2 Y3",
            "+Z1 X2 Z3",
            "+Z1 Z2 Y3 Y4",
            "+Z1 Y2 Y3 Z4",
            "+Y1 Z2 Z3 Y4",
            "+Y1 Y2 Z3 Z4",
            "+X1 X2 X3 X4",
        ]),
        erratum: Some(
            "the reference expansion prints `- Y2 X3 Z4`; that string is not in the \
             stabilizer group, whose element g2 g3 g4 is `- Y2 X3 Y4`",
        ),
    },
    product(&[1, 2, 3], &["Z1 X2 Z3", "X1 X3"]),
    product(&[1, 2, 4], &["Z4 X1 Z2", "X2 X4"]),
    product(&[1, 3, 4], &["Z1 X4 Z3", "X1 X3"]),
    product(&[2, 3, 4], &["Z2 X3 Z4", "X2 X4"]),
    product(&[1, 3], &["X1 X3"]),
    product(&[2, 4], &["X2 X4"]),
    mixed(&[1, 2]),
    mixed(&[1, 4]),
    mixed(&[2, 3]),
    mixed(&[3, 4]),
];

const LINE5: &[MarginalFixture] = &[
    product(
        &[1, 2, 3, 4, 5],
        &["X1 Z2", "Z1 X2 Z3", "Z2 X3 Z4", "Z3 X4 Z5", "Z4 X5"],
    ),
    expansion(
        &[1, 2, 3, 4, 5],
        &[
            "+Z4 X5",
            "+X1 Z2",
            "+Z3 X4 Z5",
            "+Z3 Y4 Y5",
            "+Z2 X3 Z4",
            "+Z2 X3 X5",
            "+Z1 X2 Z3",
            "+X1 X3 Z4",
            "+X1 X3 X5",
            "+Y1 Y2 Z3",
            "+Z2 Y3 Y4 Z5",
            "-Z2 Y3 X4 Y5",
            "+Z1 X2 X4 Z5",
            "+Z1 X2 Y4 Y5",
            "+Z1 Y2 Y3 Z4",
            "+Z1 Y2 Y3 X5",
            "+X1 Z2 Z4 X5",
            "+X1 Y3 Y4 Z5",
            "-X1 Y3 X4 Y5",
            "+Y1 Y2 X4 Z5",
            "+Y1 Y2 Y4 Y5",
            "-Y1 X2 Y3 Z4",
            "-Y1 X2 Y3 X5",
            "+Z1 X2 Z3 Z4 X5",
            "-Z1 Y2 X3 Y4 Z5",
            "+Z1 Y2 X3 X4 Y5",
            "+X1 Z2 Z3 X4 Z5",
            "+X1 Z2 Z3 Y4 Y5",
            "+Y1 Y2 Z3 Z4 X5",
            "+Y1 X2 X3 Y4 Z5",
            "-Y1 X2 X3 X4 Y5",
        ],
    ),
    product(&[1, 2, 3, 4], &["X1 Z2", "Z1 X2 Z3", "Z2 X3 Z4"]),
    product(&[1, 2, 3, 5], &["X1 Z2", "Z1 X2 Z3", "Z2 X3 X5"]),
    product(&[1, 2, 4, 5], &["X1 Z2", "Z4 X5", "Z1 X2 X4 Z5"]),
    product(&[1, 3, 4, 5], &["Z3 X4 Z5", "Z4 X5", "X1 X3 Z4"]),
    product(&[2, 3, 4, 5], &["Z2 X3 Z4", "Z3 X4 Z5", "Z4 X5"]),
    product(&[1, 2, 3], &["X1 Z2", "Z1 X2 Z3"]),
    product(&[1, 2, 4], &["X1 Z2"]),
    product(&[1, 2, 5], &["X1 Z2"]),
    product(&[1, 3, 4], &["X1 X3 Z4"]),
    product(&[1, 3, 5], &["X1 X3 X5"]),
    product(&[1, 4, 5], &["Z4 X5"]),
    product(&[2, 4, 5], &["Z4 X5"]),
    product(&[2, 3, 4], &["Z2 X3 Z4"]),
    product(&[2, 3, 5], &["Z2 X3 X5"]),
    product(&[3, 4, 5], &["Z3 X4 Z5", "Z4 X5"]),
    product(&[1, 2], &["X1 Z2"]),
    product(&[4, 5], &["Z4 X5"]),
    mixed(&[1, 3]),
    mixed(&[1, 4]),
    mixed(&[1, 5]),
    mixed(&[2, 3]),
    mixed(&[2, 4]),
    mixed(&[2, 5]),
    mixed(&[3, 4]),
    mixed(&[3, 5]),
];

/// Fixtures for one of the four reference presets.
pub fn fixtures(preset: Preset) -> Result<&'static [MarginalFixture]> {
    match preset {
        Preset::Line3 | Preset::Line(3) => Ok(LINE3),
        Preset::Line4 | Preset::Line(4) => Ok(LINE4),
        Preset::Ring4 => Ok(RING4),
        Preset::Line5 | Preset::Line(5) => Ok(LINE5),
        other => Err(Error::Parse(format!(
            "no reference marginals for preset {other}; use line3, line4, ring4 or line5"
        ))),
    }
}

fn global_string(n: usize, keep: &[usize], label: &str) -> Result<PauliString> {
    let p = PauliString::parse_labeled(n, label)?;
    let keep_mask = keep.iter().fold(0u64, |m, &q| m | 1 << (q - 1));
    if p.support_mask() & !keep_mask != 0 {
        return Err(Error::Parse(format!(
            "fixture term {label} acts outside {keep:?}"
        )));
    }
    Ok(p.restrict(keep))
}

impl MarginalFixture {
    /// The operator described by the fixture, on `keep.len()` qubits.
    pub fn expected(&self, n: usize) -> Result<PauliSum> {
        let k = self.keep.len();
        match self.form {
            FixtureForm::MaximallyMixed => Ok(PauliSum::maximally_mixed(k)),
            FixtureForm::Product(gens) => {
                let gens = gens
                    .iter()
                    .map(|g| global_string(n, self.keep, g))
                    .collect::<Result<Vec<_>>>()?;
                stabilizer_projector(k, &gens)
            }
            FixtureForm::Expansion(terms) => {
                let scale = 0.5f64.powi(k as i32);
                let mut sum = PauliSum::maximally_mixed(k);
                for t in terms {
                    let (sign, label) = match t.split_at(1) {
                        ("+", rest) => (1.0, rest),
                        ("-", rest) => (-1.0, rest),
                        _ => return Err(Error::Parse(format!("fixture term {t:?} lacks a sign"))),
                    };
                    sum.add_term(global_string(n, self.keep, label)?, sign * scale);
                }
                Ok(sum)
            }
        }
    }

    pub fn describe(&self) -> String {
        let kind = match self.form {
            FixtureForm::Product(_) => "product",
            FixtureForm::Expansion(_) => "expansion",
            FixtureForm::MaximallyMixed => "maximally mixed",
        };
        format!("rho{} ({kind})", format_block(self.keep))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermMismatch {
    pub term: String,
    pub expected: f64,
    pub computed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginalCheck {
    pub qubits: Vec<usize>,
    pub form: String,
    pub terms: usize,
    pub mismatches: Vec<TermMismatch>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub erratum: Option<String>,
}

impl MarginalCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginalReport {
    pub graph: String,
    pub checks: Vec<MarginalCheck>,
}

impl MarginalReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(MarginalCheck::passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "ok  " } else { "FAIL" };
            out.push_str(&format!(
                "{status} {} {}: {} terms\n",
                self.graph, c.form, c.terms
            ));
            for m in &c.mismatches {
                out.push_str(&format!(
                    "       {}: expected {:+.6}, computed {:+.6}\n",
                    m.term, m.expected, m.computed
                ));
            }
            if let Some(note) = &c.erratum {
                out.push_str(&format!("       note: {note}\n"));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        out.push_str(&format!(
            "{}: {} of {} checks passed\n",
            self.graph,
            self.checks.len() - failed,
            self.checks.len()
        ));
        out
    }
}

/// Compares every catalog entry for `preset` with the symbolic marginal of
/// its cluster state.
pub fn verify_marginals(preset: Preset) -> Result<MarginalReport> {
    let fixtures = fixtures(preset)?;
    let graph = preset.graph()?;
    let rho = cluster_state(&graph)?;
    let mut checks = Vec::with_capacity(fixtures.len());
    for f in fixtures {
        let computed = rho.partial_trace(f.keep)?;
        let expected = f.expected(graph.n())?;
        let mut strings: Vec<PauliString> = computed
            .iter()
            .chain(expected.iter())
            .map(|(p, _)| *p)
            .collect();
        strings.sort();
        strings.dedup();
        let mismatches = strings
            .into_iter()
            .filter_map(|p| {
                let (e, c) = (expected.coefficient(&p), computed.coefficient(&p));
                ((e - c).abs() > PRUNE_THRESHOLD).then(|| TermMismatch {
                    term: relabel(&p, f.keep),
                    expected: e,
                    computed: c,
                })
            })
            .collect();
        checks.push(MarginalCheck {
            qubits: f.keep.to_vec(),
            form: f.describe(),
            terms: computed.len(),
            mismatches,
            erratum: f.erratum.map(str::to_string),
        });
    }
    Ok(MarginalReport {
        graph: preset.name(),
        checks,
    })
}

/// Labeled form of a marginal string using the original qubit numbers.
fn relabel(p: &PauliString, keep: &[usize]) -> String {
    let parts: Vec<String> = keep
        .iter()
        .enumerate()
        .filter_map(|(i, &q)| match p.letter(i + 1) {
            crate::pauli::Letter::I => None,
            l => Some(format!("{l}{q}")),
        })
        .collect();
    if parts.is_empty() {
        "I".into()
    } else {
        parts.join(" ")
    }
}
