//! How fast does the second eigenvector converge to the normalized
//! membership vector as graphs grow? Scans sizes, reports the median
//! sup-norm deviation per size, and fits a power law.
//!
//!     cargo run --release --example deviation_rate_scan

use fiedler::eigen::Top2Options;
use fiedler::experiments::conjecture_scan;

fn main() -> fiedler::Result<()> {
    let sizes = [250, 500, 1000, 2000];
    let trials = 10;
    let scan = conjecture_scan(0.6, 0.4, &sizes, trials, 3, Top2Options::default())?;

    println!("p = 0.6, q = 0.4, {trials} trials per size, seed 3");
    println!();
    println!("    n    median sup|v2 - g/sqrt(n)|    log(n)/n    ratio");
    for row in &scan.rows {
        println!(
            "{:5}         {:.6e}         {:.4e}    {:.3}",
            row.n,
            row.median_sup_deviation,
            row.log_n_over_n,
            row.median_sup_deviation / row.log_n_over_n
        );
    }
    println!();
    println!(
        "fitted exponent of median vs n: {:+.3} (log n/n predicts about -1)",
        scan.fitted_exponent
    );
    Ok(())
}
