//! Acceptance checks. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, followed by details of any
//! failure. Exits nonzero if a criterion fails.

mod common;

use std::cell::RefCell;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use clusterdist::channel::{apply, random_single_qubit_channel};
use clusterdist::distance::{
    block_distance_table, maximize, standard_distance, weighted_distance, Metric, TIE_TOLERANCE,
};
use clusterdist::experiments::report::exact_form;
use clusterdist::experiments::{run_sweep, verify_marginals, ExperimentConfig, SweepResult};
use clusterdist::graph::stabilizer_generators;
use clusterdist::linalg::{bures_length, fidelity, DenseOperator};
use clusterdist::{cluster_state, PauliString, PauliSum, Preset};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

struct Expected {
    preset: Preset,
    lower: &'static [&'static str],
    upper: &'static [&'static str],
    hs_lower: f64,
}

const EXPECTED: [Expected; 4] = [
    Expected {
        preset: Preset::Line3,
        lower: &["X1", "X3", "Z2"],
        upper: &["Z1", "Z3", "X2", "Y1", "Y2", "Y3"],
        hs_lower: SQRT_2 / 3.0,
    },
    Expected {
        preset: Preset::Line4,
        lower: &["X1", "X4", "Z2", "Z3"],
        upper: &["Z1", "Z4", "X2", "X3", "Y1", "Y2", "Y3", "Y4"],
        hs_lower: SQRT_2 / 4.0,
    },
    Expected {
        preset: Preset::Ring4,
        lower: &["X1", "X2", "X3", "X4"],
        upper: &["Z1", "Z2", "Z3", "Z4", "Y1", "Y2", "Y3", "Y4"],
        hs_lower: SQRT_2 / 4.0,
    },
    Expected {
        preset: Preset::Line5,
        lower: &["X1", "X3", "X5", "Z2", "Z3", "Z4", "Y3"],
        upper: &["Z1", "Z5", "X2", "X4", "Y1", "Y2", "Y4", "Y5"],
        hs_lower: 1.0 / 3.0,
    },
];

fn sweep(preset: Preset, metric: Metric) -> SweepResult {
    let mut cfg = ExperimentConfig::new(preset.graph().unwrap(), preset.name());
    cfg.metrics = vec![metric];
    run_sweep(&cfg).unwrap().remove(0)
}

fn show(v: f64) -> String {
    match exact_form(v) {
        Some(f) => format!("{v:.12} ({f})"),
        None => format!("{v:.12}"),
    }
}

/// Every listed error must sit at its expected value, and the sweep must
/// cover exactly the listed errors.
fn check_groups(s: &SweepResult, e: &Expected, lower: f64, upper: f64) -> Vec<String> {
    let mut fails = Vec::new();
    let listed = e.lower.len() + e.upper.len();
    if s.entries.len() != listed || listed != 3 * e.preset.graph().unwrap().n() {
        fails.push(format!(
            "{}: {} errors swept, {listed} listed",
            s.graph,
            s.entries.len()
        ));
    }
    for (errors, want) in [(e.lower, lower), (e.upper, upper)] {
        for err in errors {
            match s.entries.iter().find(|x| x.error == *err) {
                None => fails.push(format!("{}: {err} missing from sweep", s.graph)),
                Some(x) if (x.report.weighted_value - want).abs() > TOL => fails.push(format!(
                    "{} {err}: weighted {} = {}, expected {} (optimal partition {})",
                    s.graph,
                    s.metric.symbol(),
                    show(x.report.weighted_value),
                    show(want),
                    x.report.optimal_partition
                )),
                Some(_) => {}
            }
        }
    }
    fails
}

fn weighted_bures_groups() -> Vec<String> {
    let start = Instant::now();
    let mut fails = Vec::new();
    for e in &EXPECTED {
        fails.extend(check_groups(
            &sweep(e.preset, Metric::Bures),
            e,
            PI / 6.0,
            FRAC_PI_4,
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    note(format!(
        "full weighted Bures sweep of the four states: {secs:.2} s"
    ));
    if secs > 30.0 {
        fails.push(format!("sweep took {secs:.1} s, target is under 30 s"));
    }
    fails
}

fn weighted_hs_groups() -> Vec<String> {
    let mut fails = Vec::new();
    for e in &EXPECTED {
        fails.extend(check_groups(
            &sweep(e.preset, Metric::HilbertSchmidt),
            e,
            e.hs_lower,
            0.5,
        ));
    }
    fails
}

fn standard_saturation() -> Vec<String> {
    let mut fails = Vec::new();
    for e in &EXPECTED {
        for (metric, want) in [(Metric::Bures, FRAC_PI_2), (Metric::HilbertSchmidt, SQRT_2)] {
            for x in &sweep(e.preset, metric).entries {
                if (x.report.standard_value - want).abs() > TOL {
                    fails.push(format!(
                        "{} {}: standard {} = {}",
                        e.preset,
                        x.error,
                        metric.symbol(),
                        show(x.report.standard_value)
                    ));
                }
            }
        }
    }
    fails
}

fn marginal_catalog() -> Vec<String> {
    let mut fails = Vec::new();
    for e in &EXPECTED {
        let report = verify_marginals(e.preset).unwrap();
        if !report.passed() {
            fails.push(report.render());
        }
        for c in report.checks.iter().filter(|c| c.erratum.is_some()) {
            note(format!(
                "{} {}: {}",
                report.graph,
                c.form,
                c.erratum.as_deref().unwrap_or("")
            ));
        }
        let full = report.checks.iter().find(|c| c.form.contains("expansion"));
        let n = e.preset.graph().unwrap().n();
        match full {
            Some(c) if c.terms == 1 << n => {}
            Some(c) => fails.push(format!("{}: expansion has {} terms", e.preset, c.terms)),
            None => fails.push(format!("{}: no full expansion in catalog", e.preset)),
        }
    }
    let signed = [
        (Preset::Line3, "Y1 X2 Y3", -1.0 / 8.0),
        (Preset::Line4, "Z1 Y2 X3 Y4", -1.0 / 16.0),
        (Preset::Ring4, "Y1 X2 Y3", -1.0 / 16.0),
        (Preset::Ring4, "Y2 X3 Y4", -1.0 / 16.0),
        (Preset::Ring4, "Y2 X3 Z4", 0.0),
        (Preset::Line5, "Y1 X2 X3 X4 Y5", -1.0 / 32.0),
        (Preset::Line5, "Z1 Y2 X3 Y4 Z5", -1.0 / 32.0),
    ];
    for (preset, label, want) in signed {
        let g = preset.graph().unwrap();
        let rho = cluster_state(&g).unwrap();
        let got = rho.coefficient(&PauliString::parse_labeled(g.n(), label).unwrap());
        if got != want {
            fails.push(format!(
                "{preset}: coefficient of {label} is {got}, expected {want}"
            ));
        }
    }
    fails
}

fn oracle_equivalences() -> Vec<String> {
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    // Symbolic against dense partial trace, every ordered-increasing subset.
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for _ in 0..10 {
            let s = random_sum(n, &mut rng);
            let dense = sum_mat(&s);
            for mask in 1u64..1 << n {
                let keep: Vec<usize> = (1..=n).filter(|q| mask >> (q - 1) & 1 == 1).collect();
                let sym = sum_mat(&s.partial_trace(&keep).unwrap());
                worst = worst.max(max_diff(&sym, &dense_partial_trace(&dense, n, &keep)));
            }
        }
    }
    if worst > 1e-12 {
        fails.push(format!(
            "partial trace differs from the dense oracle by {worst:e}"
        ));
    }

    // Subset DP against exhaustive enumeration.
    let mut worst: f64 = 0.0;
    for n in 1..=6 {
        let pairs = if n == 6 { 2 } else { 4 };
        for _ in 0..pairs {
            let rho = random_state(n, &mut rng);
            let sigma = random_state(n, &mut rng);
            for metric in Metric::ALL {
                let table = block_distance_table(&rho, &sigma, metric).unwrap();
                let (p, v) = maximize(&table, TIE_TOLERANCE);
                let (best, _) = exhaustive_max(&table);
                let direct: f64 = p
                    .blocks()
                    .iter()
                    .map(|b| table.get_block(b) / b.len() as f64)
                    .sum();
                worst = worst.max((v - best).abs()).max((direct - best).abs());
            }
        }
    }
    if worst > 1e-12 {
        fails.push(format!(
            "subset DP differs from exhaustive enumeration by {worst:e}"
        ));
    }

    // Symbolic Pauli conjugation against dense P rho P.
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for _ in 0..20 {
            let s = random_state(n, &mut rng);
            let mask = (1u64 << n) - 1;
            let e =
                PauliString::from_bits(n, rng.random::<u64>() & mask, rng.random::<u64>() & mask)
                    .unwrap();
            let u = pauli_mat(&e);
            let dense = mat_mul(&mat_mul(&u, &sum_mat(&s)), &dagger(&u));
            worst = worst.max(max_diff(&sum_mat(&s.conjugate_by(&e).unwrap()), &dense));
        }
    }
    if worst > 1e-10 {
        fails.push(format!(
            "conjugation differs from the dense oracle by {worst:e}"
        ));
    }
    fails
}

fn weighted(rho: &PauliSum, sigma: &PauliSum, metric: Metric) -> f64 {
    weighted_distance(rho, sigma, metric)
        .unwrap()
        .weighted_value
}

fn metric_axioms() -> Vec<String> {
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    type Dist = fn(&PauliSum, &PauliSum, Metric) -> f64;
    let standard: Dist = |a, b, m| standard_distance(a, b, m).unwrap();
    let kinds: [(&str, Dist); 2] = [("standard", standard), ("weighted", weighted)];
    for (kind, d) in kinds {
        for metric in Metric::ALL {
            let label = format!("{kind} {}", metric.name());
            let mut worst_slack = f64::INFINITY;
            for i in 0..1000 {
                let n = 1 + i % 3;
                let [a, b, c] = [0; 3].map(|_| random_state(n, &mut rng));
                let (ab, bc, ac) = (d(&a, &b, metric), d(&b, &c, metric), d(&a, &c, metric));
                worst_slack = worst_slack.min(ab + bc - ac);
                if i % 10 == 0 {
                    let ba = d(&b, &a, metric);
                    let aa = d(&a, &a, metric);
                    if ab < 0.0 || (ab - ba).abs() > TOL {
                        fails.push(format!("{label}: d(a,b) = {ab}, d(b,a) = {ba}"));
                    }
                    if aa != 0.0 {
                        fails.push(format!("{label}: d(a,a) = {aa:e}"));
                    }
                    if ab <= 0.0 {
                        fails.push(format!("{label}: distinct states at distance {ab:e}"));
                    }
                }
            }
            if worst_slack < -TOL {
                fails.push(format!(
                    "{label}: triangle inequality violated by {:e}",
                    -worst_slack
                ));
            }
        }
    }
    fails
}

fn contractivity() -> Vec<String> {
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200u64 {
        let n = 1 + (i % 3) as usize;
        let (rho, sigma) = (random_state(n, &mut rng), random_state(n, &mut rng));
        let channel = random_single_qubit_channel(1000 + i, rng.random_range(1..=n));
        let before = weighted(&rho, &sigma, Metric::Bures);
        let after = weighted(
            &apply(&rho, &channel).unwrap(),
            &apply(&sigma, &channel).unwrap(),
            Metric::Bures,
        );
        if after > before + TOL {
            fails.push(format!("channel seed {}: {after} > {before}", 1000 + i));
        }
    }
    fails
}

fn state_construction() -> Vec<String> {
    let mut fails = Vec::new();
    let mut presets = Preset::REFERENCE.to_vec();
    presets.extend([
        Preset::Line(1),
        Preset::Line(7),
        Preset::Ring(6),
        Preset::Grid(2, 3),
    ]);
    for preset in presets {
        let g = preset.graph().unwrap();
        let rho = cluster_state(&g).unwrap();
        if (rho.purity() - 1.0).abs() > 1e-12 || (rho.trace() - 1.0).abs() > 1e-12 {
            fails.push(format!(
                "{preset}: purity {} trace {}",
                rho.purity(),
                rho.trace()
            ));
        }
        if rho.len() != 1 << g.n() {
            fails.push(format!("{preset}: {} terms", rho.len()));
        }
        for gen in stabilizer_generators(&g).generators() {
            let (left, left_im) = rho.mul_left(gen).unwrap();
            let (right, right_im) = rho.mul_right(gen).unwrap();
            let exact = left == rho && right == rho && left_im.is_empty() && right_im.is_empty();
            if !exact {
                fails.push(format!("{preset}: not stabilized by {}", gen.labeled()));
            }
        }
    }
    fails
}

fn ghz_examples() -> Vec<String> {
    let mut fails = Vec::new();
    for n in 2..=5 {
        let dim = 1 << n;
        let mut psi = vec![c(0.0, 0.0); dim];
        psi[0] = c(0.5f64.sqrt(), 0.0);
        psi[dim - 1] = c(0.5f64.sqrt(), 0.0);
        let ghz = DenseOperator::projector(&psi).unwrap();
        let mut diag = vec![0.0; dim];
        diag[0] = 0.5;
        diag[dim - 1] = 0.5;
        let mixture = DenseOperator::from_real_diagonal(&diag).unwrap();
        let f = fidelity(&ghz, &mixture).unwrap();
        let b = bures_length(&ghz, &mixture).unwrap();
        if (f - 0.5).abs() > 1e-10 || (b - FRAC_PI_4).abs() > 1e-10 {
            fails.push(format!("N = {n}: fidelity {f}, Bures {b}"));
        }
    }
    fails
}

type Criterion = fn() -> Vec<String>;

thread_local! {
    static NOTES: RefCell<Vec<String>> = const { RefCell::new(Vec::new()) };
}

fn note(line: String) {
    NOTES.with(|n| n.borrow_mut().push(line));
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 9] = [
        (
            "weighted Bures groups of single-qubit Pauli errors",
            weighted_bures_groups,
        ),
        (
            "weighted Hilbert-Schmidt groups of single-qubit Pauli errors",
            weighted_hs_groups,
        ),
        (
            "standard distances saturate at pi/2 and sqrt2",
            standard_saturation,
        ),
        ("marginal catalog term by term", marginal_catalog),
        ("oracle equivalences", oracle_equivalences),
        ("metric axioms", metric_axioms),
        (
            "contractivity of weighted Bures under local channels",
            contractivity,
        ),
        ("cluster state construction", state_construction),
        ("GHZ against classical mixture", ghz_examples),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let fails = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| vec![format!("panicked: {:?}", p.downcast_ref::<String>())]);
        let status = if fails.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {status}: {name}", i + 1);
        for f in &fails {
            println!("    {f}");
        }
        for n in NOTES.with(|n| n.take()) {
            println!("    note: {n}");
        }
        failed += usize::from(!fails.is_empty());
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
