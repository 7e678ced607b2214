//! Per-vertex attachment diagnostics for a two-block graph: the affinity
//! surplus Δ, the decomposition of the second eigenvector's deviation from
//! the label direction into a local and a global part, extremal-entry
//! selection, and sign-based classification error.
//!
//! Conventions used throughout:
//!
//! - `g` is the ±1 label vector, `d_i` the net in-cluster degree
//!   (same-cluster neighbors minus other-cluster neighbors),
//! - `Δ = A g − (p−q)(n/2) g`, so `g_i Δ_i = d_i − (p−q)n/2` is each
//!   vertex's attachment surplus over its expectation,
//! - `e₂ = v₂ − g/√n` is the raw difference, not the `g`-orthogonal
//!   component: it plugs directly into the eigen-equation, and the global
//!   shift term absorbs the non-orthogonal part. `⟨e₂, g⟩` is reported as
//!   a diagnostic instead of being forced to zero.
//!
//! All operations require `v₂` to be oriented with `⟨v₂, g⟩ ≥ 0`; feeding a
//! flipped vector gives garbage sign conclusions, so it is rejected loudly.

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Centering parameters may relax the strict sampling bounds (`q = 0` and
/// `p = 1` are meaningful for hand-built fixtures) but must keep `p > q`.
fn validate_centering(p: f64, q: f64) -> Result<()> {
    if !(p.is_finite() && q.is_finite()) || !(0.0 <= q && q < p && p <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "centering requires 0 <= q < p <= 1, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// The affinity surplus vector `Δ = A g − (p−q)(n/2) g`. The product `A g`
/// is computed in exact integer arithmetic before the real-valued centering
/// is subtracted, so `Δ_i g_i = d_i − (p−q)n/2` holds to the last bit of
/// the centering constant.
pub fn compute_delta(graph: &LabeledGraph, p: f64, q: f64) -> Result<Vec<f64>> {
    validate_centering(p, q)?;
    let labels = graph
        .labels()
        .ok_or(Error::MissingLabels { op: "compute_delta" })?;
    let n = graph.num_vertices();
    let d = graph.net_in_cluster()?;
    let center = (p - q) * n as f64 / 2.0;
    Ok((0..n)
        .map(|i| {
            let gi = labels[i] as f64;
            // (A g)_i = g_i d_i, so Δ_i = g_i (d_i − center).
            gi * (d[i] as f64 - center)
        })
        .collect())
}

/// The Theorem-style decomposition of one oriented second eigenpair.
#[derive(Debug, Clone)]
pub struct FiedlerDiagnostics {
    pub n: usize,
    pub p: f64,
    pub q: f64,
    pub lambda2: f64,
    /// `(λ₂ − (p−q)n/2) / √n`: how many √n units λ₂ sits from its
    /// expectation.
    pub lambda2_dev: f64,
    /// Scalar `ε_global = −2(λ₂ − (p−q)n/2)/((p−q)n)`; its vector form is
    /// `ε_global · g/√n`.
    pub global_shift: f64,
    /// `⟨e₂, g⟩`, reported rather than forced to zero.
    pub e2_dot_g: f64,
    pub labels: Vec<i8>,
    /// Oriented second eigenvector.
    pub v2: Vec<f64>,
    /// `e₂ = v₂ − g/√n`.
    pub e2: Vec<f64>,
    /// `Δ = A g − (p−q)(n/2) g`.
    pub delta: Vec<f64>,
    /// `2/((p−q) n^{3/2}) · Δ`.
    pub local_term: Vec<f64>,
    /// `e₂ − 2/((p−q) n^{3/2}) (A g − λ₂ g)`: what the leading terms fail
    /// to explain.
    pub theorem_residual: Vec<f64>,
    pub e2_norm: f64,
    pub delta_norm: f64,
    pub local_norm: f64,
    pub residual_norm: f64,
}

impl FiedlerDiagnostics {
    /// Per-vertex attachment surplus `g_i Δ_i = d_i − (p−q)n/2`.
    pub fn attachment_surplus(&self) -> Vec<f64> {
        self.delta
            .iter()
            .zip(&self.labels)
            .map(|(&di, &gi)| gi as f64 * di)
            .collect()
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Decomposition from raw parts: an oriented `v2`, its eigenvalue, and the
/// (possibly real-valued) product `A g`. Lets exact fixtures such as the
/// expectation operator's eigenpairs flow through the same formulas as
/// sampled graphs.
pub fn decompose_fiedler_parts(
    v2: &[f64],
    lambda2: f64,
    ag: &[f64],
    labels: &[i8],
    p: f64,
    q: f64,
) -> Result<FiedlerDiagnostics> {
    validate_centering(p, q)?;
    let n = labels.len();
    if v2.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v2.len(),
        });
    }
    if ag.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: ag.len(),
        });
    }
    if n == 0 {
        return Err(Error::EmptySubset {
            op: "decompose_fiedler",
        });
    }
    let overlap: f64 = v2.iter().zip(labels).map(|(&x, &g)| x * g as f64).sum();
    if overlap < 0.0 {
        return Err(Error::OrientationViolated { inner: overlap });
    }

    let nf = n as f64;
    let center = (p - q) * nf / 2.0;
    let inv_sqrt_n = 1.0 / nf.sqrt();
    let coeff = 2.0 / ((p - q) * nf.powf(1.5));

    let e2: Vec<f64> = v2
        .iter()
        .zip(labels)
        .map(|(&x, &g)| x - g as f64 * inv_sqrt_n)
        .collect();
    let delta: Vec<f64> = ag
        .iter()
        .zip(labels)
        .map(|(&agi, &g)| agi - center * g as f64)
        .collect();
    let local_term: Vec<f64> = delta.iter().map(|&d| coeff * d).collect();
    let theorem_residual: Vec<f64> = (0..n)
        .map(|i| e2[i] - coeff * (ag[i] - lambda2 * labels[i] as f64))
        .collect();
    let global_shift = -2.0 * (lambda2 - center) / ((p - q) * nf);
    let e2_dot_g: f64 = e2.iter().zip(labels).map(|(&x, &g)| x * g as f64).sum();

    Ok(FiedlerDiagnostics {
        n,
        p,
        q,
        lambda2,
        lambda2_dev: (lambda2 - center) / nf.sqrt(),
        global_shift,
        e2_dot_g,
        labels: labels.to_vec(),
        v2: v2.to_vec(),
        e2_norm: norm2(&e2),
        delta_norm: norm2(&delta),
        local_norm: norm2(&local_term),
        residual_norm: norm2(&theorem_residual),
        e2,
        delta,
        local_term,
        theorem_residual,
    })
}

/// Decomposes a computed eigenpair against a labeled graph. `A g` is taken
/// from the exact integer path; `pair.v2` must already be oriented toward
/// the labels.
pub fn decompose_fiedler(
    pair: &crate::eigen::SpectralPair,
    graph: &LabeledGraph,
    p: f64,
    q: f64,
) -> Result<FiedlerDiagnostics> {
    let labels = graph.labels().ok_or(Error::MissingLabels {
        op: "decompose_fiedler",
    })?;
    let d = graph.net_in_cluster()?;
    let ag: Vec<f64> = d
        .iter()
        .zip(labels)
        .map(|(&di, &gi)| gi as f64 * di as f64)
        .collect();
    decompose_fiedler_parts(&pair.v2, pair.lambda2, &ag, labels, p, q)
}

/// Which end of the entry distribution to select.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Largest entries among the strictly positive ones.
    Positive,
    /// Most negative entries among the strictly negative ones.
    Negative,
    /// Largest `|v|` entries among the nonzero ones, either sign.
    BothByMagnitude,
}

/// Indices of the `max(1, ⌊eps·n⌋)` most extreme entries on the requested
/// side, fewer if that side has fewer qualifying (strictly signed) entries.
/// Value ties break by ascending index; the result is sorted by index.
/// An exhausted side (e.g. positive side of an all-negative vector) comes
/// back empty rather than erroring.
pub fn extremal_indices(v: &[f64], eps: f64, side: Side) -> Result<Vec<usize>> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must lie in (0, 1], got {eps}"
        )));
    }
    let n = v.len();
    let want = ((eps * n as f64).floor() as usize).max(1);
    let mut cand: Vec<usize> = match side {
        Side::Positive => (0..n).filter(|&i| v[i] > 0.0).collect(),
        Side::Negative => (0..n).filter(|&i| v[i] < 0.0).collect(),
        Side::BothByMagnitude => (0..n).filter(|&i| v[i] != 0.0).collect(),
    };
    cand.sort_by(|&a, &b| {
        let key = match side {
            Side::Positive => v[b].total_cmp(&v[a]),
            Side::Negative => v[a].total_cmp(&v[b]),
            Side::BothByMagnitude => v[b].abs().total_cmp(&v[a].abs()),
        };
        key.then(a.cmp(&b))
    });
    cand.truncate(want);
    cand.sort_unstable();
    Ok(cand)
}

fn sign_matches(v: f64, g: i8) -> bool {
    // sign(0) matches neither label: an exactly zero entry is always an
    // error, which is conservative and measure-zero on real data.
    (v > 0.0 && g == 1) || (v < 0.0 && g == -1)
}

/// Fraction of vertices whose `sign(v₂)` disagrees with their label.
/// Assumes `v2` is already oriented; no flip is applied.
pub fn classification_error(v2: &[f64], labels: &[i8]) -> Result<f64> {
    if v2.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            got: v2.len(),
        });
    }
    if v2.is_empty() {
        return Err(Error::EmptySubset {
            op: "classification_error",
        });
    }
    let wrong = v2
        .iter()
        .zip(labels)
        .filter(|&(&v, &g)| !sign_matches(v, g))
        .count();
    Ok(wrong as f64 / v2.len() as f64)
}

/// Classification error restricted to `subset` (vertex indices).
pub fn classification_error_subset(v2: &[f64], labels: &[i8], subset: &[usize]) -> Result<f64> {
    if v2.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            got: v2.len(),
        });
    }
    if subset.is_empty() {
        return Err(Error::EmptySubset {
            op: "classification_error_subset",
        });
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= v2.len()) {
        return Err(Error::InvalidParameter(format!(
            "subset index {bad} out of range for n = {}",
            v2.len()
        )));
    }
    let wrong = subset
        .iter()
        .filter(|&&i| !sign_matches(v2[i], labels[i]))
        .count();
    Ok(wrong as f64 / subset.len() as f64)
}

/// `min(err, 1 − err)`: classification error when the vector's global sign
/// is not trusted, e.g. when orientation could not use labels.
pub fn classification_error_up_to_sign(v2: &[f64], labels: &[i8]) -> Result<f64> {
    let err = classification_error(v2, labels)?;
    Ok(err.min(1.0 - err))
}

/// Error rates on the whole graph and on the extremal subsets for each
/// requested `eps`. Each subset is the union of the positive-side and
/// negative-side extremal index sets (each of target size
/// `max(1, ⌊eps·n⌋)`, possibly smaller if a side runs out of strictly
/// signed entries).
#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub global_error: f64,
    pub subsets: Vec<SubsetError>,
}

#[derive(Debug, Clone)]
pub struct SubsetError {
    pub eps: f64,
    /// Realized union size.
    pub size: usize,
    pub error: f64,
}

/// Builds an [`ErrorReport`] for an oriented `v2`.
pub fn error_report(v2: &[f64], labels: &[i8], eps_list: &[f64]) -> Result<ErrorReport> {
    let global_error = classification_error(v2, labels)?;
    let mut subsets = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        let mut union = extremal_indices(v2, eps, Side::Positive)?;
        union.extend(extremal_indices(v2, eps, Side::Negative)?);
        union.sort_unstable();
        union.dedup();
        let error = classification_error_subset(v2, labels, &union)?;
        subsets.push(SubsetError {
            eps,
            size: union.len(),
            error,
        });
    }
    Ok(ErrorReport {
        global_error,
        subsets,
    })
}

/// Among each side's extremal vertices, the fraction whose attachment
/// surplus `g_i Δ_i = d_i − (p−q)n/2` is at least `eta·√n`. Returns
/// `(positive side, negative side)`. `eta = −∞` disables the threshold
/// (fraction 1); an empty extremal side is an error because the fraction
/// is undefined there.
pub fn corollary_fraction(
    diag: &FiedlerDiagnostics,
    eps: f64,
    eta: f64,
) -> Result<(f64, f64)> {
    let surplus = diag.attachment_surplus();
    let bar = eta * (diag.n as f64).sqrt();
    let frac_on = |side: Side| -> Result<f64> {
        let idx = extremal_indices(&diag.v2, eps, side)?;
        if idx.is_empty() {
            return Err(Error::EmptySubset {
                op: "corollary_fraction",
            });
        }
        let hits = idx.iter().filter(|&&i| surplus[i] >= bar).count();
        Ok(hits as f64 / idx.len() as f64)
    };
    Ok((frac_on(Side::Positive)?, frac_on(Side::Negative)?))
}

/// `|⟨v₁, e₂⟩|` with `e₂ = v₂ − g/√n`: how much of the deviation points
/// along the top eigenvector. Expected to vanish at roughly the `1/n`
/// scale on block-model samples.
pub fn lemma_probe(pair: &crate::eigen::SpectralPair, graph: &LabeledGraph) -> Result<f64> {
    let labels = graph.labels().ok_or(Error::MissingLabels { op: "lemma_probe" })?;
    let n = graph.num_vertices();
    if pair.v1.len() != n || pair.v2.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: pair.v1.len(),
        });
    }
    let inv_sqrt_n = 1.0 / (n as f64).sqrt();
    let dot: f64 = (0..n)
        .map(|i| pair.v1[i] * (pair.v2[i] - labels[i] as f64 * inv_sqrt_n))
        .sum();
    Ok(dot.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{top2_graph, Top2Options};
    use crate::oracle;
    use crate::sbm::{self, SbmParams};
    use proptest::prelude::*;

    fn sample(n: usize, p: f64, q: f64, seed: u64) -> LabeledGraph {
        sbm::sample_sbm(SbmParams::new(n, p, q).unwrap(), seed)
    }

    #[test]
    fn delta_on_two_disjoint_edges_with_sure_probabilities() {
        // p = 1, q = 0 is the fixture override: Ag = g and the centering
        // is (1−0)·4/2 = 2, so Δ = g − 2g = −g.
        let g = LabeledGraph::from_edges(4, &[(0, 1), (2, 3)], Some(vec![1, 1, -1, -1])).unwrap();
        let delta = compute_delta(&g, 1.0, 0.0).unwrap();
        assert_eq!(delta, vec![-1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn delta_on_edgeless_graph_is_pure_centering() {
        let g = LabeledGraph::from_edges(4, &[], Some(vec![1, 1, -1, -1])).unwrap();
        // p − q = 0.5 is exact in binary, so the centering is exactly 1.
        let delta = compute_delta(&g, 0.75, 0.25).unwrap();
        assert_eq!(delta, vec![-1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn delta_requires_labels_and_sane_centering() {
        let bare = LabeledGraph::from_edges(2, &[(0, 1)], None).unwrap();
        assert!(matches!(
            compute_delta(&bare, 0.6, 0.2),
            Err(Error::MissingLabels { .. })
        ));
        let g = LabeledGraph::from_edges(2, &[(0, 1)], Some(vec![1, -1])).unwrap();
        assert!(compute_delta(&g, 0.2, 0.6).is_err());
        assert!(compute_delta(&g, 0.5, 0.5).is_err());
    }

    #[test]
    fn delta_identity_against_loop_oracle() {
        let (p, q) = (0.7, 0.3);
        for seed in 0..10 {
            let g = sample(80, p, q, seed);
            let labels = g.labels().unwrap().to_vec();
            let delta = compute_delta(&g, p, q).unwrap();
            let d_oracle = oracle::loop_net_in_cluster(&g, &labels);
            let center = (p - q) * 80.0 / 2.0;
            for i in 0..80 {
                // Δ_i g_i == d_i − (p−q)n/2 exactly.
                let lhs = delta[i] * labels[i] as f64;
                let rhs = d_oracle[i] as f64 - center;
                assert_eq!(lhs, rhs, "vertex {i} seed {seed}");
            }
        }
    }

    #[test]
    fn decompose_exact_expectation_eigenpair_vanishes() {
        // The expectation operator's second eigenpair (g/√n, (p−q)n/2) with
        // exact row sums Ag = (p−q)(n/2)·g leaves nothing unexplained.
        let n = 6;
        let (p, q) = (0.6, 0.2);
        let labels = sbm::planted_labels(n);
        let center = (p - q) * n as f64 / 2.0;
        let v2: Vec<f64> = labels
            .iter()
            .map(|&g| g as f64 / (n as f64).sqrt())
            .collect();
        let ag: Vec<f64> = labels.iter().map(|&g| center * g as f64).collect();
        let diag = decompose_fiedler_parts(&v2, center, &ag, &labels, p, q).unwrap();
        assert!(diag.e2_norm == 0.0);
        assert!(diag.delta_norm == 0.0);
        assert!(diag.residual_norm == 0.0);
        assert!(diag.global_shift == 0.0);
        assert!(diag.lambda2_dev == 0.0);
    }

    #[test]
    fn decompose_rejects_flipped_orientation() {
        let g = sample(40, 0.8, 0.2, 3);
        let mut pair = top2_graph(&g, Top2Options::default()).unwrap();
        for x in &mut pair.v2 {
            *x = -*x;
        }
        assert!(matches!(
            decompose_fiedler(&pair, &g, 0.8, 0.2),
            Err(Error::OrientationViolated { .. })
        ));
    }

    #[test]
    fn decomposition_identities_on_samples() {
        for seed in 0..5 {
            let (p, q) = (0.6, 0.4);
            let g = sample(120, p, q, seed);
            let pair = top2_graph(&g, Top2Options::default()).unwrap();
            let diag = decompose_fiedler(&pair, &g, p, q).unwrap();
            let n = 120f64;
            let inv_sqrt_n = 1.0 / n.sqrt();
            for i in 0..120 {
                let gi = diag.labels[i] as f64;
                // local + global·g/√n == 2/((p−q)n^{3/2})(Ag − λ₂g)
                let lhs = diag.local_term[i] + diag.global_shift * gi * inv_sqrt_n;
                let ag_i = gi * g.net_in_cluster().unwrap()[i] as f64;
                let rhs = 2.0 / ((p - q) * n.powf(1.5)) * (ag_i - diag.lambda2 * gi);
                assert!((lhs - rhs).abs() < 1e-10, "identity 1 at {i}");
                // e₂ − local − global·g/√n − residual == 0
                let closure = diag.e2[i]
                    - diag.local_term[i]
                    - diag.global_shift * gi * inv_sqrt_n
                    - diag.theorem_residual[i];
                assert!(closure.abs() < 1e-12, "closure at {i}: {closure:e}");
            }
        }
    }

    #[test]
    fn decompose_is_invariant_to_pre_orientation_flip() {
        let g = sample(80, 0.7, 0.3, 11);
        let pair = top2_graph(&g, Top2Options::default()).unwrap();
        let diag_a = decompose_fiedler(&pair, &g, 0.7, 0.3).unwrap();
        // Flip, then re-orient: must land on identical numbers.
        let mut flipped = pair.clone();
        for x in &mut flipped.v2 {
            *x = -*x;
        }
        crate::eigen::orient_by_labels(&mut flipped.v2, g.labels().unwrap());
        let diag_b = decompose_fiedler(&flipped, &g, 0.7, 0.3).unwrap();
        assert_eq!(diag_a.v2, diag_b.v2);
        assert_eq!(diag_a.residual_norm, diag_b.residual_norm);
    }

    #[test]
    fn residual_scale_on_block_model_sample() {
        // One desk-scale spot check of the n^{−1}-flavored residual size;
        // the scaling law itself is asserted across sizes elsewhere.
        let (p, q) = (0.6, 0.4);
        let g = sample(500, p, q, 4);
        let pair = top2_graph(&g, Top2Options::default()).unwrap();
        let diag = decompose_fiedler(&pair, &g, p, q).unwrap();
        // The first-order terms must explain most of e₂; second-order
        // corrections at this size sit near 0.25 of it (measured ~5e-2).
        assert!(
            diag.residual_norm < 0.5 * diag.e2_norm,
            "residual {:.3e} vs e2 norm {:.3e}",
            diag.residual_norm,
            diag.e2_norm
        );
        assert!(diag.residual_norm < 0.15, "residual {:.3e}", diag.residual_norm);
    }

    #[test]
    fn extremal_selection_basics() {
        let v = [0.9, 0.5, 0.1, -0.1, -0.5, -0.9];
        assert_eq!(extremal_indices(&v, 1.0 / 6.0, Side::Positive).unwrap(), vec![0]);
        assert_eq!(extremal_indices(&v, 1.0 / 6.0, Side::Negative).unwrap(), vec![5]);
        assert_eq!(
            extremal_indices(&v, 0.5, Side::BothByMagnitude).unwrap(),
            vec![0, 1, 5]
        );
        // Positive side of an all-negative vector is empty, not an error.
        let neg = [-1.0, -2.0];
        assert_eq!(extremal_indices(&neg, 0.5, Side::Positive).unwrap(), vec![]);
        // Zero entries never qualify as extremal.
        let padded = [0.0, 0.0, 3.0];
        assert_eq!(
            extremal_indices(&padded, 1.0, Side::BothByMagnitude).unwrap(),
            vec![2]
        );
        assert!(extremal_indices(&v, 0.0, Side::Positive).is_err());
        assert!(extremal_indices(&v, 1.5, Side::Positive).is_err());
    }

    #[test]
    fn extremal_ties_break_by_ascending_index() {
        let v = [0.5, 0.9, 0.9, 0.1];
        // Two slots: both 0.9s tie for first; the lower index wins a seat
        // along with the other 0.9.
        assert_eq!(extremal_indices(&v, 0.5, Side::Positive).unwrap(), vec![1, 2]);
        let v = [0.9, 0.9, 0.9, 0.1];
        assert_eq!(extremal_indices(&v, 0.25, Side::Positive).unwrap(), vec![0]);
    }

    #[test]
    fn classification_error_counts_sign_disagreements() {
        let labels = [1, 1, 1, -1, -1, -1];
        let v2 = [0.3, 0.2, -0.1, -0.4, -0.2, 0.5];
        let err = classification_error(&v2, &labels).unwrap();
        assert!((err - 2.0 / 6.0).abs() < 1e-15);

        let exact: Vec<f64> = labels.iter().map(|&g| g as f64 / 6f64.sqrt()).collect();
        assert_eq!(classification_error(&exact, &labels).unwrap(), 0.0);

        // Zero entries are always miscounted.
        assert_eq!(classification_error(&[0.0], &[1]).unwrap(), 1.0);
        assert_eq!(classification_error(&[0.0], &[-1]).unwrap(), 1.0);

        assert!(matches!(
            classification_error_subset(&v2, &labels, &[]),
            Err(Error::EmptySubset { .. })
        ));
        let sub = classification_error_subset(&v2, &labels, &[0, 5]).unwrap();
        assert!((sub - 0.5).abs() < 1e-15);

        assert!((classification_error_up_to_sign(&v2, &labels).unwrap() - 2.0 / 6.0).abs() < 1e-15);
        let mostly_flipped = [-0.3, -0.2, -0.1, 0.4, 0.2, 0.5];
        assert!(
            (classification_error_up_to_sign(&mostly_flipped, &labels).unwrap() - 0.0).abs()
                < 1e-15
        );
    }

    #[test]
    fn classification_error_matches_loop_oracle_semantics() {
        let g = sample(100, 0.8, 0.2, 9);
        let labels = g.labels().unwrap();
        let pair = top2_graph(&g, Top2Options::default()).unwrap();
        let fast = classification_error(&pair.v2, labels).unwrap();
        let mut wrong = 0;
        for (&v, &label) in pair.v2.iter().zip(labels) {
            let s = if v > 0.0 {
                1
            } else if v < 0.0 {
                -1
            } else {
                0
            };
            if s != label {
                wrong += 1;
            }
        }
        assert_eq!(fast, wrong as f64 / 100.0);
    }

    #[test]
    fn error_report_shapes_and_ranges() {
        let g = sample(100, 0.7, 0.3, 2);
        let pair = top2_graph(&g, Top2Options::default()).unwrap();
        let report = error_report(&pair.v2, g.labels().unwrap(), &[0.05, 0.1, 0.2]).unwrap();
        assert!(report.global_error >= 0.0 && report.global_error <= 1.0);
        assert_eq!(report.subsets.len(), 3);
        for s in &report.subsets {
            // Union of two sides, each of target size max(1, ⌊eps·n⌋).
            let per_side = ((s.eps * 100.0).floor() as usize).max(1);
            assert!(s.size <= 2 * per_side);
            assert!(s.size >= 1);
            assert!(s.error >= 0.0 && s.error <= 1.0);
        }
    }

    #[test]
    fn corollary_fraction_on_degenerate_and_sentinel_thresholds() {
        let n = 6;
        let (p, q) = (0.6, 0.2);
        let labels = sbm::planted_labels(n);
        let center = (p - q) * n as f64 / 2.0;
        let v2: Vec<f64> = labels
            .iter()
            .map(|&g| g as f64 / (n as f64).sqrt())
            .collect();
        let ag: Vec<f64> = labels.iter().map(|&g| center * g as f64).collect();
        let diag = decompose_fiedler_parts(&v2, center, &ag, &labels, p, q).unwrap();
        // Δ ≡ 0: no vertex clears any positive threshold.
        assert_eq!(corollary_fraction(&diag, 0.5, 0.5).unwrap(), (0.0, 0.0));
        // −∞ disables the threshold.
        assert_eq!(
            corollary_fraction(&diag, 0.5, f64::NEG_INFINITY).unwrap(),
            (1.0, 1.0)
        );
    }

    #[test]
    fn lemma_probe_is_zero_when_v2_equals_label_direction() {
        let g = LabeledGraph::from_edges(4, &[(0, 1), (2, 3)], Some(vec![1, 1, -1, -1])).unwrap();
        let pair = crate::eigen::SpectralPair {
            lambda1: 1.0,
            lambda2: 1.0,
            v1: vec![0.5, 0.5, 0.5, 0.5],
            v2: vec![0.5, 0.5, -0.5, -0.5],
            residual1: 0.0,
            residual2: 0.0,
            iterations: 0,
            gap_warning: false,
        };
        assert_eq!(lemma_probe(&pair, &g).unwrap(), 0.0);
    }

    proptest! {
        #[test]
        fn extremal_eps_one_magnitude_returns_all_nonzero(
            v in proptest::collection::vec(prop_oneof![Just(0.0), -1.0f64..1.0], 1..40)
        ) {
            let got = extremal_indices(&v, 1.0, Side::BothByMagnitude).unwrap();
            let want: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0.0).collect();
            prop_assert_eq!(got, want);
        }

        #[test]
        fn extremal_sides_partition_within_sign(seed in 0u64..50) {
            let g = sample(60, 0.7, 0.3, seed);
            let pair = top2_graph(&g, Top2Options::default()).unwrap();
            let pos = extremal_indices(&pair.v2, 0.2, Side::Positive).unwrap();
            let neg = extremal_indices(&pair.v2, 0.2, Side::Negative).unwrap();
            for &i in &pos {
                prop_assert!(pair.v2[i] > 0.0);
            }
            for &i in &neg {
                prop_assert!(pair.v2[i] < 0.0);
            }
            // Positive-side members dominate every unselected positive entry.
            let floor = pos.iter().map(|&i| pair.v2[i]).fold(f64::INFINITY, f64::min);
            for i in 0..60 {
                if pair.v2[i] > 0.0 && !pos.contains(&i) {
                    prop_assert!(pair.v2[i] <= floor);
                }
            }
        }
    }
}
