//! Two-block planted-partition graphs and their expectation operator.
//!
//! Vertices `0..n/2` form block `+1`, vertices `n/2..n` form block `−1`.
//! Each unordered pair is an independent Bernoulli draw: probability `p`
//! within a block, `q` across, keyed by the pair's lexicographic index so
//! the sampled graph depends only on `(params, seed)` and never on
//! traversal or thread order.

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::rng;
use crate::dense::SymMatrix;

/// Largest `n` for which the dense expectation matrix may be materialized.
pub const EXPECTATION_MATRIX_MAX_N: usize = 4096;

/// Parameters of the two-block model: `n` vertices split evenly, edge
/// probability `p` inside a block and `q` across, with `0 < q < p < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbmParams {
    n: usize,
    p: f64,
    q: f64,
}

impl SbmParams {
    pub fn new(n: usize, p: f64, q: f64) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "vertex count must be even and at least 2, got {n}"
            )));
        }
        if !(p.is_finite() && q.is_finite()) || !(0.0 < q && q < p && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "edge probabilities must satisfy 0 < q < p < 1, got p = {p}, q = {q}"
            )));
        }
        Ok(Self { n, p, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Expected top eigenvalue `(p + q) n / 2` of the expectation operator.
    pub fn lambda1_expected(&self) -> f64 {
        (self.p + self.q) * self.n as f64 / 2.0
    }

    /// Expected second eigenvalue `(p − q) n / 2` of the expectation
    /// operator; also the scale that centers `A g`.
    pub fn lambda2_expected(&self) -> f64 {
        (self.p - self.q) * self.n as f64 / 2.0
    }
}

/// Block labels in planted order: `+1` on the first half, `−1` on the second.
pub fn planted_labels(n: usize) -> Vec<i8> {
    let mut g = vec![1i8; n];
    for v in &mut g[n / 2..] {
        *v = -1;
    }
    g
}

/// Lexicographic index of the unordered pair `(i, j)`, `i < j`, among all
/// pairs of `0..n`. Bijective onto `0..n(n−1)/2`.
fn pair_index(i: usize, j: usize, n: usize) -> u64 {
    debug_assert!(i < j && j < n);
    let (i, j, n) = (i as u64, j as u64, n as u64);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Samples one graph. Identical `(params, seed)` always reproduce the same
/// edge set, bit for bit.
pub fn sample_sbm(params: SbmParams, seed: u64) -> LabeledGraph {
    let n = params.n();
    let half = n / 2;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let prob = if (i < half) == (j < half) {
                params.p()
            } else {
                params.q()
            };
            if rng::stream_bernoulli(seed, pair_index(i, j, n), prob) {
                edges.push((i, j));
            }
        }
    }
    LabeledGraph::from_edges(n, &edges, Some(planted_labels(n)))
        .expect("sampled pairs are in range, distinct, and labeled")
}

/// The rank-2 expectation operator: entry `p` for same-block pairs
/// (diagonal included), `q` across blocks. Its spectrum is
/// `(p + q) n / 2` with eigenvector `1`, `(p − q) n / 2` with eigenvector
/// `g`, and `0` with multiplicity `n − 2`.
pub fn expectation_matrix(params: SbmParams) -> Result<SymMatrix> {
    let n = params.n();
    if n > EXPECTATION_MATRIX_MAX_N {
        return Err(Error::CapacityExceeded {
            n,
            limit: EXPECTATION_MATRIX_MAX_N,
        });
    }
    let half = n / 2;
    Ok(SymMatrix::from_fn(n, |i, j| {
        if (i < half) == (j < half) {
            params.p()
        } else {
            params.q()
        }
    }))
}
