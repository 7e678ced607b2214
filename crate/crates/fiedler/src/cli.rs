//! Thin command-line front end. Each subcommand wires library calls to the
//! text formats in [`crate::io`] and echoes its configuration into CSV
//! header comments.
//!
//! Output files never record the worker count or any file path, so the
//! same configuration produces byte-identical files no matter where they
//! land or how many threads ran. Exit codes: 0 success, 1 runtime failure,
//! 2 usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::diagnostics::{decompose_fiedler, error_report};
use crate::eigen::{top2_graph, Top2Options};
use crate::error::{Error, Result};
use crate::experiments::{affinity_table, conjecture_scan, run_mc_error, McOptions};
use crate::io;
use crate::knn::{build_knn_graph, synth_blobs};
use crate::sbm::{sample_sbm, planted_labels, SbmParams};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "fiedler",
    version,
    about = "Spectral bipartition diagnostics for two-community graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a two-block random graph; write edge list and labels.
    Sbm(SbmArgs),
    /// Second-eigenvector decomposition of a labeled graph, as CSV.
    Analyze(AnalyzeArgs),
    /// Monte Carlo sweep of classification error and probe statistics.
    Mc(McArgs),
    /// Per-vertex attachment surplus vs. eigenvector entry, as CSV.
    Affinity(AffinityArgs),
    /// Sup-norm deviation of the second eigenvector across graph sizes.
    ScanConjecture(ScanArgs),
    /// Build a k-nearest-neighbor graph from a dataset CSV.
    Knn(KnnArgs),
    /// Generate a synthetic two-blob binary dataset, as CSV.
    Synth(SynthArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Output file path.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads for parallel sections; 0 uses the default pool.
    /// Never affects output bytes.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Args, Debug)]
struct SbmArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Labels file path; defaults to `<out>.labels`.
    #[arg(long)]
    labels_out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Edge-list file produced by `sbm` or `knn`.
    #[arg(long)]
    graph: PathBuf,
    /// Labels file (one ±1 per vertex).
    #[arg(long)]
    labels: PathBuf,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    /// Extremal-set fractions for the subset error report.
    #[arg(long, value_delimiter = ',')]
    eps: Vec<f64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct McArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    trials: usize,
    /// Extremal-set fractions, e.g. `--eps 0.05,0.1,0.2`.
    #[arg(long, value_delimiter = ',', required = true)]
    eps: Vec<f64>,
    /// Attachment-surplus threshold coefficient for the per-side fractions.
    #[arg(long, default_value_t = 0.5)]
    eta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct AffinityArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    /// Graph sizes, e.g. `--n-list 250,500,1000`.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct KnnArgs {
    /// Dataset CSV (features then a ±1 label per row).
    #[arg(long)]
    data: PathBuf,
    /// Neighbor count as a fraction of m−1.
    #[arg(long)]
    k_fraction: f64,
    /// Min-max normalize and threshold the features at 0.5 before building.
    #[arg(long, default_value_t = false)]
    binarize: bool,
    /// Labels file path; defaults to `<out>.labels`.
    #[arg(long)]
    labels_out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[arg(long)]
    m_per_class: usize,
    #[arg(long)]
    d: usize,
    /// Prototype Hamming separation as a fraction of d.
    #[arg(long)]
    separation: f64,
    /// Per-bit flip probability applied to every generated point.
    #[arg(long)]
    flip_rho: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: CommonArgs,
}

/// Entry point for the binary: parse, dispatch, translate errors to codes.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Sbm(args) => with_workers(args.common.workers, || cmd_sbm(&args)),
        Command::Analyze(args) => with_workers(args.common.workers, || cmd_analyze(&args)),
        Command::Mc(args) => with_workers(args.common.workers, || cmd_mc(&args)),
        Command::Affinity(args) => with_workers(args.common.workers, || cmd_affinity(&args)),
        Command::ScanConjecture(args) => with_workers(args.common.workers, || cmd_scan(&args)),
        Command::Knn(args) => with_workers(args.common.workers, || cmd_knn(&args)),
        Command::Synth(args) => with_workers(args.common.workers, || cmd_synth(&args)),
    }
}

/// Runs `f` on a dedicated pool of `workers` threads, or inline on the
/// ambient pool when `workers` is 0.
fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if workers == 0 {
        f()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot build worker pool: {e}")))?;
        pool.install(f)
    }
}

fn labels_path(out: &Path, explicit: &Option<PathBuf>) -> PathBuf {
    explicit.clone().unwrap_or_else(|| {
        let mut s = out.as_os_str().to_os_string();
        s.push(".labels");
        PathBuf::from(s)
    })
}

fn fmt(x: f64) -> String {
    io::format_f64(x)
}

fn header(out: &mut String, subcommand: &str, config: &str) {
    let _ = writeln!(out, "# fiedler {VERSION} {subcommand}");
    let _ = writeln!(out, "# config: {config}");
}

fn join_f64(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn join_usize(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_sbm(args: &SbmArgs) -> Result<()> {
    let params = SbmParams::new(args.n, args.p, args.q)?;
    let graph = sample_sbm(params, args.seed);
    io::save_graph(&args.common.out, &graph)?;
    io::save_labels(
        &labels_path(&args.common.out, &args.labels_out),
        &planted_labels(args.n),
    )?;
    Ok(())
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<()> {
    let graph = io::load_graph(&args.graph)?;
    let labels = io::load_labels(&args.labels)?;
    let graph = graph.with_labels(labels)?;
    let pair = top2_graph(&graph, Top2Options::default())?;
    let diag = decompose_fiedler(&pair, &graph, args.p, args.q)?;
    let report = error_report(&diag.v2, &diag.labels, &args.eps)?;

    let mut out = String::new();
    header(
        &mut out,
        "analyze",
        &format!("p={} q={} eps={}", args.p, args.q, join_f64(&args.eps)),
    );
    let _ = writeln!(
        out,
        "# lambda1={} lambda2={} lambda2_dev={} global_shift={} e2_dot_g={}",
        fmt(pair.lambda1),
        fmt(diag.lambda2),
        fmt(diag.lambda2_dev),
        fmt(diag.global_shift),
        fmt(diag.e2_dot_g),
    );
    let _ = writeln!(
        out,
        "# e2_norm={} delta_norm={} local_norm={} residual_norm={}",
        fmt(diag.e2_norm),
        fmt(diag.delta_norm),
        fmt(diag.local_norm),
        fmt(diag.residual_norm),
    );
    let _ = writeln!(out, "# columns: vertex,label,v2,e2,delta,local_term,theorem_residual");
    for i in 0..diag.n {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            i,
            if diag.labels[i] == 1 { "+1" } else { "-1" },
            fmt(diag.v2[i]),
            fmt(diag.e2[i]),
            fmt(diag.delta[i]),
            fmt(diag.local_term[i]),
            fmt(diag.theorem_residual[i]),
        );
    }
    let _ = writeln!(out, "# global_error={}", fmt(report.global_error));
    for s in &report.subsets {
        let _ = writeln!(
            out,
            "# subset: eps={} size={} error={}",
            s.eps,
            s.size,
            fmt(s.error)
        );
    }
    std::fs::write(&args.common.out, out)?;
    Ok(())
}

fn cmd_mc(args: &McArgs) -> Result<()> {
    let params = SbmParams::new(args.n, args.p, args.q)?;
    let opts = McOptions {
        eta: args.eta,
        ..McOptions::default()
    };
    let summary = run_mc_error(params, &args.eps, args.trials, args.seed, opts)?;

    let mut out = String::new();
    header(
        &mut out,
        "mc",
        &format!(
            "n={} p={} q={} trials={} eps={} eta={} seed={}",
            args.n,
            args.p,
            args.q,
            args.trials,
            join_f64(&args.eps),
            args.eta,
            args.seed
        ),
    );
    let _ = writeln!(
        out,
        "# requested_trials={} failed_trials={}",
        summary.requested_trials, summary.failed_trials
    );
    let _ = writeln!(
        out,
        "# columns: trial,seed,lambda1,lambda2,lambda2_dev,residual_norm,lemma_probe,global_error,eps,subset_size,subset_error,corollary_positive,corollary_negative"
    );
    for r in &summary.records {
        for e in &r.per_eps {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.trial,
                r.seed,
                fmt(r.lambda1),
                fmt(r.lambda2),
                fmt(r.lambda2_dev),
                fmt(r.residual_norm),
                fmt(r.lemma_probe),
                fmt(r.global_error),
                e.eps,
                e.subset_size,
                fmt(e.subset_error),
                fmt(e.corollary_positive),
                fmt(e.corollary_negative),
            );
        }
    }
    for (name, stats) in [
        ("global_error", &summary.global_error),
        ("residual_norm", &summary.residual_norm),
        ("lemma_probe", &summary.lemma_probe),
    ] {
        let _ = writeln!(
            out,
            "# aggregate: {name} mean={} median={} q10={} q90={}",
            fmt(stats.mean),
            fmt(stats.median),
            fmt(stats.q10),
            fmt(stats.q90),
        );
    }
    for agg in &summary.per_eps {
        let _ = writeln!(
            out,
            "# aggregate: eps={} subset_error mean={} median={} q10={} q90={} corollary_positive_mean={} corollary_negative_mean={}",
            agg.eps,
            fmt(agg.subset_error.mean),
            fmt(agg.subset_error.median),
            fmt(agg.subset_error.q10),
            fmt(agg.subset_error.q90),
            fmt(agg.corollary_positive_mean),
            fmt(agg.corollary_negative_mean),
        );
    }
    std::fs::write(&args.common.out, out)?;
    Ok(())
}

fn cmd_affinity(args: &AffinityArgs) -> Result<()> {
    let params = SbmParams::new(args.n, args.p, args.q)?;
    let table = affinity_table(params, args.seed, Top2Options::default())?;

    let mut out = String::new();
    header(
        &mut out,
        "affinity",
        &format!("n={} p={} q={} seed={}", args.n, args.p, args.q, args.seed),
    );
    let _ = writeln!(
        out,
        "# lambda1={} lambda2={} pearson_r={}",
        fmt(table.lambda1),
        fmt(table.lambda2),
        fmt(table.pearson_r)
    );
    let _ = writeln!(out, "# columns: vertex,rank,v2,surplus");
    for row in &table.rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row.vertex,
            row.rank,
            fmt(row.v2),
            fmt(row.surplus)
        );
    }
    std::fs::write(&args.common.out, out)?;
    Ok(())
}

fn cmd_scan(args: &ScanArgs) -> Result<()> {
    let scan = conjecture_scan(
        args.p,
        args.q,
        &args.n_list,
        args.trials,
        args.seed,
        Top2Options::default(),
    )?;

    let mut out = String::new();
    header(
        &mut out,
        "scan-conjecture",
        &format!(
            "p={} q={} n-list={} trials={} seed={}",
            args.p,
            args.q,
            join_usize(&args.n_list),
            args.trials,
            args.seed
        ),
    );
    let _ = writeln!(
        out,
        "# columns: n,trials,failed,median_sup_deviation,log_n_over_n"
    );
    for row in &scan.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.n,
            row.trials,
            row.failed,
            fmt(row.median_sup_deviation),
            fmt(row.log_n_over_n)
        );
    }
    let _ = writeln!(out, "# fitted_exponent={}", fmt(scan.fitted_exponent));
    std::fs::write(&args.common.out, out)?;
    Ok(())
}

fn cmd_knn(args: &KnnArgs) -> Result<()> {
    let data = io::load_dataset(&args.data)?;
    let data = if args.binarize { data.binarize() } else { data };
    let graph = build_knn_graph(&data, args.k_fraction)?;
    io::save_graph(&args.common.out, &graph)?;
    io::save_labels(
        &labels_path(&args.common.out, &args.labels_out),
        data.labels(),
    )?;
    Ok(())
}

fn cmd_synth(args: &SynthArgs) -> Result<()> {
    let data = synth_blobs(
        args.m_per_class,
        args.d,
        args.separation,
        args.flip_rho,
        args.seed,
    )?;
    let mut out = String::new();
    header(
        &mut out,
        "synth",
        &format!(
            "m-per-class={} d={} separation={} flip-rho={} seed={}",
            args.m_per_class, args.d, args.separation, args.flip_rho, args.seed
        ),
    );
    let mut buf = Vec::new();
    io::write_dataset_csv(&mut buf, &data)?;
    out.push_str(std::str::from_utf8(&buf).expect("csv is ascii"));
    std::fs::write(&args.common.out, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn labels_path_derivation() {
        assert_eq!(
            labels_path(Path::new("g.txt"), &None),
            PathBuf::from("g.txt.labels")
        );
        assert_eq!(
            labels_path(Path::new("g.txt"), &Some(PathBuf::from("l.txt"))),
            PathBuf::from("l.txt")
        );
    }
}
