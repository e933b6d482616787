use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use clusterdist::distance::{block_distance_table_with, DistanceOptions, DistanceReport, Metric};
use clusterdist::experiments::report::{
    conjecture_markdown, conjecture_to_json, exact_form, grouping_markdown, round_sig,
    sweep_markdown, sweeps_to_json, JsonReport,
};
use clusterdist::experiments::{
    run_conjecture_sweep, run_sweep, verify_marginals, ErrorSelection, ExperimentConfig,
};
use clusterdist::graph::Graph;
use clusterdist::{channel, cluster_state, Error, Preset};

#[derive(Parser)]
#[command(
    name = "clusterdist",
    version,
    about = "Weighted distances between cluster states and their error images"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Bures,
    #[value(alias = "hs", alias = "hilbert-schmidt")]
    HilbertSchmidt,
    Both,
}

impl MetricArg {
    fn metrics(self) -> Vec<Metric> {
        match self {
            MetricArg::Bures => vec![Metric::Bures],
            MetricArg::HilbertSchmidt => vec![Metric::HilbertSchmidt],
            MetricArg::Both => Metric::ALL.to_vec(),
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "markdown")]
    format: Format,
    /// Write the report here instead of stdout. Nothing is written on failure.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct Compute {
    /// Largest block size handed to the dense eigensolver.
    #[arg(long)]
    dense_limit: Option<usize>,
    /// Tolerance for ties between partitions and for grouping errors.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Always use the eigensolver, even where a block distance is known exactly.
    #[arg(long)]
    no_shortcuts: bool,
}

impl Compute {
    fn options(&self) -> Result<DistanceOptions, Error> {
        let mut opts = if self.no_shortcuts {
            DistanceOptions::default()
        } else {
            DistanceOptions::fast()
        };
        if let Some(limit) = self.dense_limit {
            opts.dense_limit = limit;
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::Parse(format!(
                    "tolerance must be a nonnegative number, got {t}"
                )));
            }
            opts.tie_tolerance = t;
        }
        Ok(opts)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Weighted distance between each cluster state and its image under each error.
    Sweep {
        /// Preset (line3, line4, line5, ring4, line(n), ring(n), grid(r,c)) or edge-list file. Repeatable.
        #[arg(long, required = true)]
        graph: Vec<String>,
        /// `all`, or a comma-separated list such as `X1,Z2`. `U<q>` and `K<q>` draw a random unitary or channel on qubit q from --seed.
        #[arg(long, default_value = "all")]
        errors: String,
        #[arg(long, value_enum, default_value = "both")]
        metric: MetricArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Compare every state with itself; all distances must come out 0.
        #[arg(long)]
        self_test: bool,
        #[command(flatten)]
        compute: Compute,
        #[command(flatten)]
        common: Common,
    },
    /// Check computed marginals against the reference catalog.
    VerifyMarginals {
        /// line3, line4, line5, ring4, or `all`. Repeatable.
        #[arg(long, default_value = "all")]
        graph: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Weighted distance of every Z error along chains of 3..=n-max qubits.
    Conjecture {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "bures")]
        metric: MetricArg,
        #[command(flatten)]
        common: Common,
    },
    /// Dump every block distance for one graph and one error.
    Partitions {
        #[arg(long)]
        graph: String,
        /// A single error such as `Z2`.
        #[arg(long)]
        errors: String,
        #[arg(long, value_enum, default_value = "bures")]
        metric: MetricArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        compute: Compute,
        #[command(flatten)]
        common: Common,
    },
}

/// Failure classes; the discriminant is the exit code.
#[derive(Debug)]
enum Failure {
    Config(String),
    Compute(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Compute(_) => 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::SizeLimit { .. }
            | Error::NotHermitian(_)
            | Error::NotPositive(_)
            | Error::NotDensity(_)
            | Error::NoConvergence(_)
            | Error::DimensionMismatch { .. } => Failure::Compute(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

fn load_graph(spec: &str) -> Result<(Graph, String), Failure> {
    if let Ok(preset) = spec.parse::<Preset>() {
        return Ok((preset.graph()?, preset.name()));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Failure::Config(format!(
            "{spec:?} is neither a known preset nor an existing file"
        )));
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("{spec}: {e}")))?;
    let graph =
        Graph::parse_edge_list(&text).map_err(|e| Failure::Config(format!("{spec}: {e}")))?;
    let label = path
        .file_stem()
        .map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((graph, label))
}

fn parse_errors(s: &str) -> ErrorSelection {
    if s.trim().eq_ignore_ascii_case("all") {
        ErrorSelection::All
    } else {
        ErrorSelection::List(
            s.split(',')
                .map(|e| e.trim().to_string())
                .filter(|e| !e.is_empty())
                .collect(),
        )
    }
}

/// Writes to a temporary file next to `path` and renames it into place.
fn emit(text: &str, common: &Common) -> Result<(), Failure> {
    let Some(path) = &common.output else {
        let mut out = io::stdout().lock();
        return out
            .write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| Failure::Config(format!("stdout: {e}")));
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io_err = |e: io::Error| Failure::Config(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(text.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn sweep(
    graphs: &[String],
    errors: &str,
    metric: MetricArg,
    seed: u64,
    self_test: bool,
    compute: &Compute,
    common: &Common,
) -> Result<(), Failure> {
    let options = compute.options()?;
    let mut results = Vec::new();
    for spec in graphs {
        let (graph, label) = load_graph(spec)?;
        let mut cfg = ExperimentConfig::new(graph, label);
        cfg.errors = parse_errors(errors);
        cfg.metrics = metric.metrics();
        cfg.options = options;
        cfg.group_tolerance = options.tie_tolerance;
        cfg.seed = seed;
        cfg.self_test = self_test;
        results.extend(run_sweep(&cfg)?);
    }
    if self_test {
        if let Some(bad) = results
            .iter()
            .flat_map(|r| &r.entries)
            .find(|e| e.report.weighted_value != 0.0)
        {
            return Err(Failure::Compute(format!(
                "self-test: {} gave weighted distance {} for identical states",
                bad.error, bad.report.weighted_value
            )));
        }
    }
    let text = match common.format {
        Format::Json => match results.as_slice() {
            [one] => JsonReport::from_sweep(one).to_json(),
            _ => sweeps_to_json(&results),
        },
        Format::Markdown => {
            let mut md: Vec<String> = results.iter().map(sweep_markdown).collect();
            md.push(format!("### Groups\n\n{}", grouping_markdown(&results)));
            md.join("\n")
        }
    };
    emit(&with_newline(text), common)
}

fn verify(graphs: &[String], common: &Common) -> Result<(), Failure> {
    let mut presets = Vec::new();
    for g in graphs {
        if g.eq_ignore_ascii_case("all") {
            presets.extend(Preset::REFERENCE);
        } else {
            presets.push(g.parse::<Preset>()?);
        }
    }
    let reports = presets
        .into_iter()
        .map(verify_marginals)
        .collect::<Result<Vec<_>, _>>()?;
    let text = match common.format {
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize"),
        Format::Markdown => reports
            .iter()
            .map(|r| r.render())
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(&with_newline(text), common)?;
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(Failure::Compute(format!(
            "{}: marginal catalog mismatch",
            r.graph
        ))),
        None => Ok(()),
    }
}

fn single_metric(m: MetricArg) -> Result<Metric, Failure> {
    match m.metrics().as_slice() {
        [one] => Ok(*one),
        _ => Err(Failure::Config(
            "this subcommand takes a single metric".into(),
        )),
    }
}

fn conjecture(n_max: usize, metric: MetricArg, common: &Common) -> Result<(), Failure> {
    let rows = run_conjecture_sweep(n_max, single_metric(metric)?)?;
    let text = match common.format {
        Format::Json => conjecture_to_json(&rows),
        Format::Markdown => conjecture_markdown(&rows),
    };
    emit(&with_newline(text), common)
}

fn value_json(v: f64) -> serde_json::Value {
    match exact_form(v) {
        Some(f) => json!({ "value": round_sig(v), "exact": f }),
        None => json!({ "value": round_sig(v) }),
    }
}

fn partitions(
    graph: &str,
    error: &str,
    metric: MetricArg,
    seed: u64,
    compute: &Compute,
    common: &Common,
) -> Result<(), Failure> {
    let metric = single_metric(metric)?;
    let options = compute.options()?;
    let (graph, label) = load_graph(graph)?;
    let e = clusterdist::experiments::parse_error(error, seed)?;
    if e.qubit() > graph.n() {
        return Err(Failure::Config(format!(
            "{error} is outside a {}-qubit graph",
            graph.n()
        )));
    }
    let rho = cluster_state(&graph)?;
    let sigma = channel::apply(&rho, &e)?;
    let table = block_distance_table_with(&rho, &sigma, metric, &options)?;
    let report = DistanceReport::from_table(&table, options.tie_tolerance);
    let text = match common.format {
        Format::Json => {
            let blocks: Vec<_> = table
                .iter()
                .map(|(q, d)| {
                    let w = 1.0 / q.len() as f64;
                    json!({ "qubits": q, "distance": value_json(d), "weight": round_sig(w), "term": value_json(d * w) })
                })
                .collect();
            serde_json::to_string_pretty(&json!({
                "graph": label,
                "metric": metric,
                "error": error.trim(),
                "blocks": blocks,
                "optimal_partition": report.optimal_partition,
                "weighted": value_json(report.weighted_value),
                "standard": value_json(report.standard_value),
            }))
            .expect("table serializes")
        }
        Format::Markdown => {
            let sym = metric.symbol();
            let mut md = format!(
                "### {label} / {} / {}\n\n| Block | {sym} | Weight | Term |\n|---|---|---|---|\n",
                metric.name(),
                error.trim()
            );
            for (q, d) in table.iter() {
                let shown = exact_form(d).unwrap_or_else(|| format!("{:.12}", round_sig(d)));
                let term = exact_form(d / q.len() as f64)
                    .unwrap_or_else(|| format!("{:.12}", round_sig(d / q.len() as f64)));
                md.push_str(&format!(
                    "| {} | {shown} | 1/{} | {term} |\n",
                    clusterdist::partition::format_block(&q),
                    q.len()
                ));
            }
            let w = exact_form(report.weighted_value)
                .unwrap_or_else(|| format!("{:.12}", report.weighted_value));
            md.push_str(&format!(
                "\nOptimal partition {} with weighted {sym} = {w}\n",
                report.optimal_partition
            ));
            md
        }
    };
    emit(&with_newline(text), common)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Sweep {
            graph,
            errors,
            metric,
            seed,
            self_test,
            compute,
            common,
        } => sweep(graph, errors, *metric, *seed, *self_test, compute, common),
        Command::VerifyMarginals { graph, common } => verify(graph, common),
        Command::Conjecture {
            n_max,
            metric,
            common,
        } => conjecture(*n_max, *metric, common),
        Command::Partitions {
            graph,
            errors,
            metric,
            seed,
            compute,
            common,
        } => partitions(graph, errors, *metric, *seed, compute, common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Config(msg) | Failure::Compute(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
