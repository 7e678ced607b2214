//! Monte Carlo comparison of sign-classification error on the whole graph
//! versus on the extremal entries of the second eigenvector. Vertices with
//! large |v2| should almost never be misclassified, so the subset error
//! sits below the global one and grows as the subsets widen.
//!
//!     cargo run --release --example extremal_error_rates

use fiedler::experiments::{run_mc_error, McOptions};
use fiedler::sbm::SbmParams;

fn main() -> fiedler::Result<()> {
    let params = SbmParams::new(200, 0.55, 0.45)?;
    let eps = [0.05, 0.1, 0.2];
    let trials = 200;
    let summary = run_mc_error(params, &eps, trials, 7, McOptions::default())?;

    println!(
        "SBM(200, 0.55, 0.45), {} trials ({} failed), seed 7",
        trials, summary.failed_trials
    );
    println!();
    println!(
        "global error:  mean {:.4}   median {:.4}   q10 {:.4}   q90 {:.4}",
        summary.global_error.mean,
        summary.global_error.median,
        summary.global_error.q10,
        summary.global_error.q90
    );
    println!();
    println!("  eps   subset mean   subset q90   corollary+   corollary-");
    for agg in &summary.per_eps {
        println!(
            " {:4.2}     {:.4}       {:.4}       {:.4}       {:.4}",
            agg.eps,
            agg.subset_error.mean,
            agg.subset_error.q90,
            agg.corollary_positive_mean,
            agg.corollary_negative_mean
        );
    }
    println!();
    println!(
        "probe medians: |<v1, e2>| = {:.3e}, residual norm = {:.3e}",
        summary.lemma_probe.median, summary.residual_norm.median
    );
    Ok(())
}
