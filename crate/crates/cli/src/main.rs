//! `chipfire`: inspect graphs, reduce divisors, compute ranks and certify
//! Brill–Noether specialness of metric Heawood graphs.
//!
//! Exit codes: 0 success, 1 a mathematical claim was falsified (the
//! counterexample goes to standard output), 2 usage, resource or I/O error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chipfire::brill_noether::{
    certify_special, certify_sweep, girth_genus_scan, rho, RunConfig, SpecialnessCertificate,
};
use chipfire::catalog;
use chipfire::chip_firing::{
    certify_rank_determining, discretize, rank_metric, reduce, DiscreteModel, RankOptions,
    DEFAULT_PROBE_CAP,
};
use chipfire::divisor::Divisor;
use chipfire::graph::io::{graph_to_json, parse_graph, to_dot};
use chipfire::graph::{
    bipartition, edge_connectivity, genus, girth, MetricMultigraph, DEFAULT_CYCLE_CAP,
};
use chipfire::oracle::rank_bruteforce;
use chipfire::Error;

#[derive(Parser)]
#[command(name = "chipfire", version, about = "Divisors, rank and Brill-Noether certificates on metric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, girth, bipartition, edge connectivity and trivalence of a graph.
    Info {
        graph: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Baker–Norine rank of a divisor, with witnesses.
    Rank {
        graph: PathBuf,
        #[arg(long, value_name = "FILE")]
        divisor: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Subdivision)]
        method: Method,
        #[arg(long, value_enum, default_value_t = ProbeSet::Auto)]
        probe_set: ProbeSet,
        #[arg(long, default_value_t = DEFAULT_PROBE_CAP as u64)]
        probe_cap: u64,
        /// Re-check every witness and compare with the oracle when it applies.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The reduced divisor equivalent to a divisor at a base vertex.
    Reduce {
        graph: PathBuf,
        #[arg(long, value_name = "FILE")]
        divisor: PathBuf,
        #[arg(long, value_name = "VERTEX")]
        base: String,
        #[command(flatten)]
        out: Output,
    },
    /// The Brill–Noether number g - (r + 1)(g - d + r).
    #[command(allow_negative_numbers = true)]
    Rho { g: i64, r: i64, d: i64 },
    /// Specialness certificates.
    Certify {
        #[command(subcommand)]
        target: CertifyTarget,
    },
    /// Arithmetic scans.
    Scan {
        #[command(subcommand)]
        target: ScanTarget,
    },
    /// Named graphs.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Export formats.
    Export {
        #[command(subcommand)]
        format: ExportFormat,
    },
}

#[derive(Subcommand)]
enum CertifyTarget {
    /// Certify that metrics on the Heawood graph are Brill–Noether special.
    Heawood(CertifyArgs),
}

#[derive(Args)]
struct CertifyArgs {
    /// `unit`, `random`, or a graph file holding a metric on the Heawood graph.
    #[arg(long, default_value = "random")]
    lengths: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..))]
    numerator_bound: i64,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..))]
    denominator_bound: i64,
    #[arg(long, default_value_t = DEFAULT_CYCLE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cycle_cap: u64,
    #[arg(long, default_value_t = DEFAULT_PROBE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    probe_cap: u64,
    /// Re-validate every certificate from scratch.
    #[arg(long)]
    verify: bool,
    /// Human-readable reports instead of JSON.
    #[arg(long)]
    text: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum ScanTarget {
    /// Girth/genus pairs where the colour-class bound forces negative rho.
    GirthBound {
        max_girth: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Write a catalog graph as a JSON graph file.
    Build {
        /// heawood, fano-levi, figure1, cycle:<n>, k4 or k4-subdivided
        name: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum ExportFormat {
    /// Graphviz DOT with edge lengths as labels.
    Dot {
        graph: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Write to FILE instead of standard output.
    #[arg(short = 'o', value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Subdivision,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProbeSet {
    Auto,
    Off,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Falsified(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_falsification() {
            Failure::Falsified(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<MetricMultigraph> {
    let text = read(path)?;
    parse_graph(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_divisor(model: &DiscreteModel, path: &Path) -> CliResult<Divisor> {
    let text = read(path)?;
    Divisor::parse(&model.graph, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Output, text: &str) -> CliResult {
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Usage(format!("stdout: {e}")))
        }
    }
}

fn emit_json(out: &Output, value: &Value) -> CliResult {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    emit(out, &text)
}

fn info(path: &Path, out: &Output) -> CliResult {
    let m = load_graph(path)?;
    let g = m.graph();
    let names = |vs: &[usize]| vs.iter().map(|&v| g.vertex_name(v).to_string()).collect::<Vec<_>>();
    let bip = bipartition(g).map(|b| json!({ "black": names(&b.black), "white": names(&b.white) }));
    let kappa = match edge_connectivity(g) {
        Ok(k) => json!(k),
        Err(Error::SingleVertex) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    emit_json(
        out,
        &json!({
            "vertices": g.vertex_count(),
            "edges": g.edge_count(),
            "genus": genus(g),
            "girth": girth(g).finite().map_or(json!("Infinite"), |n| json!(n)),
            "bipartition": bip,
            "edge_connectivity": kappa,
            "trivalent": g.is_trivalent(),
            "loops": g.has_loops(),
            "integer_lengths": m.has_integer_lengths(),
        }),
    )
}

/// A colour class that passes the acyclic-closure test, black first.
fn certified_class(m: &MetricMultigraph) -> Option<Vec<usize>> {
    let parts = bipartition(m.graph())?;
    [parts.black, parts.white]
        .into_iter()
        .find(|class| certify_rank_determining(m, class))
}

#[allow(clippy::too_many_arguments)]
fn rank(
    graph: &Path,
    divisor: &Path,
    method: Method,
    probe_set: ProbeSet,
    probe_cap: u64,
    verify: bool,
    out: &Output,
) -> CliResult {
    let m = load_graph(graph)?;
    let model = discretize(&m)?;
    let d = load_divisor(&model, divisor)?;
    match method {
        Method::Oracle => {
            let r = rank_bruteforce(&model.graph, &d)?;
            emit_json(out, &json!({ "rank": r, "method": "oracle" }))
        }
        Method::Subdivision => {
            let opts = RankOptions { probe_cap: probe_cap as u128, verify, ..RankOptions::default() };
            let class = match probe_set {
                ProbeSet::Auto => certified_class(&m),
                ProbeSet::Off => None,
            };
            let result = rank_metric(&m, &d, class.as_deref(), &opts)?;
            if verify {
                cross_check(&model, &d, result.rank())?;
                if !result.result.verify(&model.graph, &d)? {
                    return Err(Failure::Falsified(falsified(
                        "rank witnesses do not re-verify",
                        json!({ "divisor": d.to_json(&model.graph) }),
                    )));
                }
            }
            emit_json(out, &result.to_json())
        }
    }
}

// The oracle only runs within its own caps; outside them there is nothing
// independent to compare against.
fn cross_check(model: &DiscreteModel, d: &Divisor, rank: i64) -> CliResult {
    match rank_bruteforce(&model.graph, d) {
        Ok(r) if r != rank => Err(Failure::Falsified(falsified(
            &format!("oracle rank {r} differs from rank {rank}"),
            json!({ "divisor": d.to_json(&model.graph) }),
        ))),
        Ok(_) | Err(Error::CapExceeded { .. }) => Ok(()),
        Err(e) => Err(e.into()),
    }
}

fn falsified(claim: &str, counterexample: Value) -> Error {
    Error::Falsified { claim: claim.to_string(), counterexample: Box::new(counterexample) }
}

fn reduce_cmd(graph: &Path, divisor: &Path, base: &str, out: &Output) -> CliResult {
    let m = load_graph(graph)?;
    let model = discretize(&m)?;
    let d = load_divisor(&model, divisor)?;
    let q = model.graph.vertex(base)?;
    let r = reduce(&model.graph, &d, q)?;
    emit_json(out, &r.to_json(&model.graph))
}

fn certify(args: &CertifyArgs) -> CliResult {
    let config = RunConfig {
        seed: args.seed,
        trials: args.trials as usize,
        numerator_bound: args.numerator_bound,
        denominator_bound: args.denominator_bound,
        cycle_cap: args.cycle_cap as usize,
        probe_cap: args.probe_cap,
        verify: args.verify,
    };
    let (certificates, failure) = match args.lengths.as_str() {
        "random" => {
            let sweep = certify_sweep(&config)?;
            (sweep.certificates, sweep.failure.map(|(_, e)| e))
        }
        other => {
            let m = if other == "unit" {
                MetricMultigraph::unit(catalog::heawood())
            } else {
                load_graph(Path::new(other))?
            };
            let single = RunConfig { trials: 1, ..config.clone() };
            match certify_special(&m, Some(&single), Some(0)) {
                Ok(c) => (vec![c], None),
                Err(e) => (Vec::new(), Some(e)),
            }
        }
    };
    if args.verify {
        for c in &certificates {
            c.validate()?;
        }
    }
    for c in &certificates {
        eprintln!(
            "trial {}: rank {}, rho {}",
            c.trial.unwrap_or(0),
            c.rank.rank(),
            c.rho
        );
    }
    if let Some(e) = failure {
        eprintln!("{} certificate(s) completed before the failure", certificates.len());
        return Err(e.into());
    }
    let text = if args.text {
        certificates.iter().map(SpecialnessCertificate::to_text).collect::<Vec<_>>().join("\n")
    } else {
        let all: Vec<Value> = certificates.iter().map(SpecialnessCertificate::to_json).collect();
        let mut s = serde_json::to_string_pretty(&all).expect("JSON values serialize");
        s.push('\n');
        s
    };
    emit(&args.out, &text)
}

fn scan(max_girth: &str, out: &Output) -> CliResult {
    let max: u64 = max_girth
        .parse()
        .map_err(|_| Failure::Usage(format!("malformed girth bound `{max_girth}`")))?;
    if max < 2 || max % 2 != 0 {
        return Err(Failure::Usage(format!("girth bound must be even and at least 2, got {max}")));
    }
    let pairs = girth_genus_scan(max)?;
    emit_json(out, &serde_json::to_value(pairs).expect("pairs serialize"))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Info { graph, out } => info(&graph, &out),
        Command::Rank { graph, divisor, method, probe_set, probe_cap, verify, out } => {
            rank(&graph, &divisor, method, probe_set, probe_cap, verify, &out)
        }
        Command::Reduce { graph, divisor, base, out } => reduce_cmd(&graph, &divisor, &base, &out),
        Command::Rho { g, r, d } => {
            if g < 0 || r < 0 {
                return Err(Failure::Usage("g and r must be nonnegative".into()));
            }
            emit(&Output { output: None }, &format!("{}\n", rho(g, r, d)))
        }
        Command::Certify { target: CertifyTarget::Heawood(args) } => certify(&args),
        Command::Scan { target: ScanTarget::GirthBound { max_girth, out } } => scan(&max_girth, &out),
        Command::Catalog { action: CatalogAction::Build { name, out } } => {
            let g = catalog::by_name(&name)?;
            emit(&out, &graph_to_json(&MetricMultigraph::unit(g)))
        }
        Command::Export { format: ExportFormat::Dot { graph, out } } => {
            let m = load_graph(&graph)?;
            emit(&out, &to_dot(&m))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Falsified(e)) => {
            eprintln!("falsified: {e}");
            if let Error::Falsified { counterexample, .. } = &e {
                let mut s = serde_json::to_string_pretty(counterexample).expect("JSON values serialize");
                s.push('\n');
                print!("{s}");
            }
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falsifications_and_usage_errors_stay_apart() {
        let contradiction = Failure::from(Error::Contradiction("x".into()));
        assert!(matches!(contradiction, Failure::Falsified(_)));
        let falsified = Failure::from(falsified("claim", json!({})));
        assert!(matches!(falsified, Failure::Falsified(_)));
        let cap = Error::CapExceeded { what: "probe", count: 2, cap: 1 };
        assert!(matches!(Failure::from(cap), Failure::Usage(_)));
        assert!(matches!(Failure::from(Error::NotHeawood), Failure::Usage(_)));
    }
}
