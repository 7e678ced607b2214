//! Seeded Monte-Carlo experiment families: extremal-set error rates,
//! affinity tables, and the sup-norm deviation scan across sizes.
//!
//! Reproducibility contract: every trial's seed is derived from
//! `(base_seed, trial index)` alone, trials are pure functions of their
//! seed, and aggregation reads results in trial order. Outputs are
//! therefore identical for any worker count, and any single trial can be
//! replayed in isolation from its recorded seed.
//!
//! Trials whose eigensolve fails are excluded from aggregates but counted;
//! a run with more than 1% failures is itself an error rather than a
//! silently degraded result.

use rayon::prelude::*;

use crate::diagnostics::{self, FiedlerDiagnostics};
use crate::eigen::{top2_graph, Top2Options};
use crate::error::{Error, Result};
use crate::rng::child_seed;
use crate::sbm::{sample_sbm, SbmParams};

/// Mean, median, and decile summary of one per-trial column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnStats {
    pub mean: f64,
    pub median: f64,
    pub q10: f64,
    pub q90: f64,
}

/// Linearly interpolated quantile of a sorted slice.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = p * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Summarizes a nonempty column of values.
pub fn column_stats(values: &[f64]) -> ColumnStats {
    assert!(!values.is_empty(), "stats of an empty column");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    ColumnStats {
        mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
        median: quantile_sorted(&sorted, 0.5),
        q10: quantile_sorted(&sorted, 0.1),
        q90: quantile_sorted(&sorted, 0.9),
    }
}

/// Least-squares slope of `ln y` against `ln x`. Needs at least two
/// distinct positive `x` values and positive `y` values.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter(
            "slope fit needs at least two points".into(),
        ));
    }
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::InvalidParameter(
            "log-log fit needs strictly positive coordinates".into(),
        ));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter(
            "slope fit needs at least two distinct x values".into(),
        ));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Ok(sxy / sxx)
}

/// Pearson correlation coefficient. A zero-variance column makes the
/// correlation undefined and is reported as such rather than returned as
/// NaN.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let n = x.len() as f64;
    if x.is_empty() {
        return Err(Error::EmptySubset { op: "pearson" });
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|&v| (v - mx) * (v - mx)).sum();
    let syy: f64 = y.iter().map(|&v| (v - my) * (v - my)).sum();
    if sxx == 0.0 {
        return Err(Error::ConstantVector { side: "x" });
    }
    if syy == 0.0 {
        return Err(Error::ConstantVector { side: "y" });
    }
    let sxy: f64 = x.iter().zip(y).map(|(&a, &b)| (a - mx) * (b - my)).sum();
    Ok(sxy / (sxx.sqrt() * syy.sqrt()))
}

/// Per-`eps` measurements inside one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsStats {
    pub eps: f64,
    pub subset_size: usize,
    pub subset_error: f64,
    pub corollary_positive: f64,
    pub corollary_negative: f64,
}

/// Everything measured on one sampled graph.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda2_dev: f64,
    pub residual_norm: f64,
    pub lemma_probe: f64,
    pub global_error: f64,
    pub per_eps: Vec<EpsStats>,
}

/// Per-`eps` aggregates over the successful trials.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsAggregate {
    pub eps: f64,
    pub subset_error: ColumnStats,
    pub corollary_positive_mean: f64,
    pub corollary_negative_mean: f64,
}

/// Result of a Monte-Carlo error run.
#[derive(Debug, Clone, PartialEq)]
pub struct McSummary {
    pub params: SbmParams,
    pub eta: f64,
    pub requested_trials: usize,
    pub failed_trials: usize,
    /// Successful trials in trial-index order.
    pub records: Vec<TrialRecord>,
    pub global_error: ColumnStats,
    pub residual_norm: ColumnStats,
    pub lemma_probe: ColumnStats,
    pub per_eps: Vec<EpsAggregate>,
}

/// Knobs shared by the Monte-Carlo entry points.
#[derive(Debug, Clone, Copy)]
pub struct McOptions {
    /// Surplus threshold (in units of √n) for the corollary fractions.
    pub eta: f64,
    pub eigen: Top2Options,
}

impl Default for McOptions {
    fn default() -> Self {
        Self {
            eta: 0.5,
            eigen: Top2Options::default(),
        }
    }
}

/// Runs one trial from its seed: sample, solve, orient, measure. Exposed
/// so any recorded trial can be replayed standalone.
pub fn run_single_trial(
    params: SbmParams,
    eps_list: &[f64],
    opts: McOptions,
    trial: usize,
    seed: u64,
) -> Result<TrialRecord> {
    let graph = sample_sbm(params, seed);
    let pair = top2_graph(&graph, opts.eigen)?;
    let labels = graph.labels().expect("sampled graphs carry labels");
    let diag = diagnostics::decompose_fiedler(&pair, &graph, params.p(), params.q())?;
    let report = diagnostics::error_report(&pair.v2, labels, eps_list)?;
    let lemma = diagnostics::lemma_probe(&pair, &graph)?;
    let per_eps = report
        .subsets
        .iter()
        .map(|s| {
            let (cp, cn) = diagnostics::corollary_fraction(&diag, s.eps, opts.eta)?;
            Ok(EpsStats {
                eps: s.eps,
                subset_size: s.size,
                subset_error: s.error,
                corollary_positive: cp,
                corollary_negative: cn,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TrialRecord {
        trial,
        seed,
        lambda1: pair.lambda1,
        lambda2: pair.lambda2,
        lambda2_dev: diag.lambda2_dev,
        residual_norm: diag.residual_norm,
        lemma_probe: lemma,
        global_error: report.global_error,
        per_eps,
    })
}

fn validate_eps_list(eps_list: &[f64]) -> Result<()> {
    if eps_list.is_empty() {
        return Err(Error::InvalidParameter(
            "eps list must not be empty".into(),
        ));
    }
    for &eps in eps_list {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "eps must lie in (0, 1], got {eps}"
            )));
        }
    }
    Ok(())
}

/// Samples `trials` independent graphs and measures global vs extremal-set
/// classification error (plus corollary fractions, the lemma probe, and
/// the theorem residual) on each. Trial `t` uses seed
/// `child_seed(base_seed, t)`; execution order and worker count never
/// change the result.
pub fn run_mc_error(
    params: SbmParams,
    eps_list: &[f64],
    trials: usize,
    base_seed: u64,
    opts: McOptions,
) -> Result<McSummary> {
    validate_eps_list(eps_list)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if opts.eta.is_nan() {
        return Err(Error::InvalidParameter("eta must not be NaN".into()));
    }

    let outcomes: Vec<Option<TrialRecord>> = (0..trials)
        .into_par_iter()
        .map(|t| run_single_trial(params, eps_list, opts, t, child_seed(base_seed, t as u64)).ok())
        .collect();

    let failed = outcomes.iter().filter(|o| o.is_none()).count();
    if failed * 100 > trials {
        return Err(Error::TooManyFailures {
            failed,
            total: trials,
        });
    }
    let records: Vec<TrialRecord> = outcomes.into_iter().flatten().collect();

    let col = |f: &dyn Fn(&TrialRecord) -> f64| -> ColumnStats {
        column_stats(&records.iter().map(f).collect::<Vec<_>>())
    };
    let per_eps = (0..eps_list.len())
        .map(|k| EpsAggregate {
            eps: eps_list[k],
            subset_error: col(&|r| r.per_eps[k].subset_error),
            corollary_positive_mean: records
                .iter()
                .map(|r| r.per_eps[k].corollary_positive)
                .sum::<f64>()
                / records.len() as f64,
            corollary_negative_mean: records
                .iter()
                .map(|r| r.per_eps[k].corollary_negative)
                .sum::<f64>()
                / records.len() as f64,
        })
        .collect();

    Ok(McSummary {
        params,
        eta: opts.eta,
        requested_trials: trials,
        failed_trials: failed,
        global_error: col(&|r| r.global_error),
        residual_norm: col(&|r| r.residual_norm),
        lemma_probe: col(&|r| r.lemma_probe),
        per_eps,
        records,
    })
}

/// One row of the affinity table.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinityRow {
    pub vertex: usize,
    /// Position when vertices are sorted by ascending `v₂` entry.
    pub rank: usize,
    pub v2: f64,
    /// Attachment surplus `(d_i − (p−q)n/2)/√n`.
    pub surplus: f64,
}

/// Affinity table plus the correlation it exists to exhibit.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinityTable {
    pub rows: Vec<AffinityRow>,
    /// Pearson correlation between the surplus column and `|v₂|`.
    pub pearson_r: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

/// Builds the per-vertex affinity table for a labeled graph: each vertex's
/// oriented `v₂` entry against its attachment surplus over √n. Rows come
/// back sorted by ascending `v₂` entry. A constant column (e.g. a graph
/// where every vertex has identical surplus) makes the correlation
/// undefined and is an error.
pub fn affinity_table_for_graph(
    graph: &crate::graph::LabeledGraph,
    p: f64,
    q: f64,
    eigen: Top2Options,
) -> Result<AffinityTable> {
    let n = graph.num_vertices();
    let pair = top2_graph(graph, eigen)?;
    let diag: FiedlerDiagnostics = diagnostics::decompose_fiedler(&pair, graph, p, q)?;
    let surplus: Vec<f64> = diag
        .attachment_surplus()
        .iter()
        .map(|s| s / (n as f64).sqrt())
        .collect();
    let abs_v2: Vec<f64> = pair.v2.iter().map(|v| v.abs()).collect();
    let pearson_r = pearson(&surplus, &abs_v2)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pair.v2[a].total_cmp(&pair.v2[b]).then(a.cmp(&b)));
    let rows = order
        .iter()
        .enumerate()
        .map(|(rank, &vertex)| AffinityRow {
            vertex,
            rank,
            v2: pair.v2[vertex],
            surplus: surplus[vertex],
        })
        .collect();
    Ok(AffinityTable {
        rows,
        pearson_r,
        lambda1: pair.lambda1,
        lambda2: pair.lambda2,
    })
}

/// Samples one block-model graph and builds its affinity table.
pub fn affinity_table(params: SbmParams, seed: u64, eigen: Top2Options) -> Result<AffinityTable> {
    let graph = sample_sbm(params, seed);
    affinity_table_for_graph(&graph, params.p(), params.q(), eigen)
}

/// One size's worth of sup-norm deviation measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureRow {
    pub n: usize,
    pub trials: usize,
    pub failed: usize,
    /// Median over trials of `‖v₂ − g/√n‖∞` after orientation.
    pub median_sup_deviation: f64,
    /// The conjectured rate `log n / n` at this size, for side-by-side
    /// comparison.
    pub log_n_over_n: f64,
}

/// Result of the size scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureScan {
    pub rows: Vec<ConjectureRow>,
    /// Slope of `ln median` vs `ln n`; NaN when fewer than two distinct
    /// sizes were scanned.
    pub fitted_exponent: f64,
}

/// Measures how the sup-norm deviation of `v₂` from `g/√n` shrinks with
/// `n`. Trial `t` at size `n` uses seed
/// `child_seed(child_seed(base_seed, n), t)`.
pub fn conjecture_scan(
    p: f64,
    q: f64,
    n_list: &[usize],
    trials_per_n: usize,
    base_seed: u64,
    eigen: Top2Options,
) -> Result<ConjectureScan> {
    if n_list.is_empty() {
        return Err(Error::InvalidParameter("size list must not be empty".into()));
    }
    if trials_per_n == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    for &n in n_list {
        if n < 100 || n % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "scan sizes must be even and at least 100, got {n}"
            )));
        }
    }

    let mut rows = Vec::with_capacity(n_list.len());
    let mut total_failed = 0usize;
    for &n in n_list {
        let params = SbmParams::new(n, p, q)?;
        let n_seed = child_seed(base_seed, n as u64);
        let sups: Vec<Option<f64>> = (0..trials_per_n)
            .into_par_iter()
            .map(|t| {
                let graph = sample_sbm(params, child_seed(n_seed, t as u64));
                let pair = top2_graph(&graph, eigen).ok()?;
                let labels = graph.labels().expect("sampled graphs carry labels");
                let inv_sqrt_n = 1.0 / (n as f64).sqrt();
                Some(
                    pair.v2
                        .iter()
                        .zip(labels)
                        .map(|(&v, &g)| (v - g as f64 * inv_sqrt_n).abs())
                        .fold(0.0f64, f64::max),
                )
            })
            .collect();
        let failed = sups.iter().filter(|s| s.is_none()).count();
        total_failed += failed;
        let ok: Vec<f64> = sups.into_iter().flatten().collect();
        if ok.is_empty() {
            return Err(Error::TooManyFailures {
                failed: total_failed,
                total: n_list.len() * trials_per_n,
            });
        }
        rows.push(ConjectureRow {
            n,
            trials: trials_per_n,
            failed,
            median_sup_deviation: column_stats(&ok).median,
            log_n_over_n: (n as f64).ln() / n as f64,
        });
    }
    let total = n_list.len() * trials_per_n;
    if total_failed * 100 > total {
        return Err(Error::TooManyFailures {
            failed: total_failed,
            total,
        });
    }

    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.n as f64, r.median_sup_deviation))
        .collect();
    let distinct = {
        let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
        ns.sort_unstable();
        ns.dedup();
        ns.len()
    };
    let fitted_exponent = if distinct >= 2 {
        log_log_slope(&points)?
    } else {
        f64::NAN
    };
    Ok(ConjectureScan {
        rows,
        fitted_exponent,
    })
}
