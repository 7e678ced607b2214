//! Sample a two-block graph and compare its top two adjacency eigenvalues
//! against the rank-2 expectation matrix they concentrate around.
//!
//!     cargo run --release --example sample_and_spectrum

use fiedler::eigen::{dense_full_spectrum, top2_graph, Top2Options};
use fiedler::sbm::{expectation_matrix, sample_sbm, SbmParams};

fn main() -> fiedler::Result<()> {
    let params = SbmParams::new(400, 0.6, 0.4)?;
    let graph = sample_sbm(params, 7);
    println!(
        "SBM(n={}, p={}, q={}), seed 7: {} edges",
        400,
        0.6,
        0.4,
        graph.num_edges()
    );

    let pair = top2_graph(&graph, Top2Options::default())?;
    println!(
        "lambda1 = {:10.4}   expected (p+q)n/2 = {:6.1}   residual {:.2e}",
        pair.lambda1,
        params.lambda1_expected(),
        pair.residual1
    );
    println!(
        "lambda2 = {:10.4}   expected (p-q)n/2 = {:6.1}   residual {:.2e}",
        pair.lambda2,
        params.lambda2_expected(),
        pair.residual2
    );
    println!("Lanczos iterations: {}", pair.iterations);

    // The expectation matrix realizes those two values exactly; everything
    // else in its spectrum is zero.
    let d = expectation_matrix(params)?;
    let spectrum = dense_full_spectrum(&d)?;
    println!(
        "expectation-matrix spectrum head: {:.4}, {:.4}, {:.2e}",
        spectrum.eigenvalues[0], spectrum.eigenvalues[1], spectrum.eigenvalues[2]
    );

    // How far the sampled eigenvalues wander from the means, in units of
    // sqrt(n): both deviations should be O(1) on this scale.
    let n = 400f64;
    println!(
        "deviations / sqrt(n): {:+.3}, {:+.3}",
        (pair.lambda1 - params.lambda1_expected()) / n.sqrt(),
        (pair.lambda2 - params.lambda2_expected()) / n.sqrt()
    );
    Ok(())
}
