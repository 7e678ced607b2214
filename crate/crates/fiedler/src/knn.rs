//! k-nearest-neighbor graphs over labeled point clouds, plus the synthetic
//! two-blob generator and binary noise injection used to stress them.
//!
//! The similarity graph uses plain Euclidean distance and union
//! symmetrization: the undirected edge {i, j} exists when either point
//! ranks the other among its k nearest. Distance ties break by ascending
//! index, which matters constantly on binary data.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::rng;

/// Where a dataset came from; carried along so downstream reports can say.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Ingested,
    Synthetic,
}

/// `m` points with `d` real features each and a ±1 label per point.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetMatrix {
    rows: Vec<Vec<f64>>,
    labels: Vec<i8>,
    provenance: Provenance,
}

impl DatasetMatrix {
    /// Validates shape (rectangular, at least one feature), finiteness
    /// (no NaN/inf stand-ins for missing values), labels in ±1, and that
    /// both classes are nonempty. Balance is not required.
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<i8>, provenance: Provenance) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter("dataset has no points".into()));
        }
        let d = rows[0].len();
        if d == 0 {
            return Err(Error::InvalidParameter("dataset has no features".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "point {i} has non-finite feature {bad}"
                )));
            }
        }
        if labels.len() != rows.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                got: labels.len(),
            });
        }
        if let Some(bad) = labels.iter().find(|&&l| l != 1 && l != -1) {
            return Err(Error::InvalidParameter(format!("label {bad} is not ±1")));
        }
        if !labels.contains(&1) || !labels.contains(&-1) {
            return Err(Error::InvalidParameter(
                "both classes must be nonempty".into(),
            ));
        }
        Ok(Self {
            rows,
            labels,
            provenance,
        })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn d(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[i8] {
        &self.labels
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// True when every feature is exactly 0.0 or 1.0.
    pub fn is_binary(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().all(|&v| v == 0.0 || v == 1.0))
    }

    /// Min-max normalizes over the whole dataset (one shared scale, the
    /// way grayscale pixels share one), then thresholds at 0.5. A constant
    /// dataset maps to all zeros.
    pub fn binarize(&self) -> DatasetMatrix {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for row in &self.rows {
            for &v in row {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        let span = hi - lo;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        if span > 0.0 && (v - lo) / span >= 0.5 {
                            1.0
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        DatasetMatrix {
            rows,
            labels: self.labels.clone(),
            provenance: self.provenance,
        }
    }
}

/// Builds the union-symmetrized k-NN graph with
/// `k = max(1, round(k_fraction · (m − 1)))` (round half away from zero).
/// A point is never its own neighbor; labels carry over to the graph.
/// Neighbor ranking sorts by squared Euclidean distance with ties broken
/// by ascending index.
pub fn build_knn_graph(data: &DatasetMatrix, k_fraction: f64) -> Result<LabeledGraph> {
    if !(k_fraction > 0.0 && k_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "k_fraction must lie in (0, 1), got {k_fraction}"
        )));
    }
    let m = data.m();
    if m < 3 {
        return Err(Error::InvalidParameter(format!(
            "k-NN graph needs at least 3 points, got {m}"
        )));
    }
    let k = ((k_fraction * (m - 1) as f64).round() as usize).max(1);

    let rows = data.rows();
    let per_point: Vec<Vec<(usize, usize)>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut cand: Vec<(f64, usize)> = Vec::with_capacity(m - 1);
            for (j, other) in rows.iter().enumerate() {
                if j == i {
                    continue;
                }
                let d2: f64 = rows[i]
                    .iter()
                    .zip(other)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                cand.push((d2, j));
            }
            // Selection then sort of the short prefix keeps this O(m log m)
            // overall without changing the (distance, index) order.
            cand.select_nth_unstable_by(k - 1, |a, b| {
                a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
            });
            cand.truncate(k);
            cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            cand.into_iter().map(|(_, j)| (i, j)).collect()
        })
        .collect();

    let edges: Vec<(usize, usize)> = per_point.into_iter().flatten().collect();
    LabeledGraph::from_edges(m, &edges, Some(data.labels().to_vec()))
}

/// Flips each binary feature independently with probability `rho`,
/// deterministically in `(seed, point, feature)`.
pub fn flip_noise(data: &DatasetMatrix, rho: f64, seed: u64) -> Result<DatasetMatrix> {
    if !data.is_binary() {
        return Err(Error::InvalidParameter(
            "flip noise requires binary features".into(),
        ));
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::InvalidParameter(format!(
            "rho must lie in [0, 1], got {rho}"
        )));
    }
    let d = data.d();
    let rows = data
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(f, &v)| {
                    let counter = (i * d + f) as u64;
                    if rng::stream_bernoulli(seed, counter, rho) {
                        1.0 - v
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    DatasetMatrix::new(rows, data.labels().to_vec(), data.provenance())
}

/// Per-vertex empirically centered attachment surplus
/// `(d_i − μ)/√n` where `d_i` is the net in-cluster degree and `μ` its
/// mean over the graph. This is the centering to use when the true edge
/// probabilities are unknown, as on k-NN graphs.
pub fn empirical_delta(graph: &LabeledGraph) -> Result<Vec<f64>> {
    let d = graph.net_in_cluster()?;
    let n = graph.num_vertices();
    if n == 0 {
        return Err(Error::EmptySubset {
            op: "empirical_delta",
        });
    }
    let mu = d.iter().sum::<i64>() as f64 / n as f64;
    let sqrt_n = (n as f64).sqrt();
    Ok(d.iter().map(|&di| (di as f64 - mu) / sqrt_n).collect())
}

/// Generates two classes of binary points around two prototype vectors at
/// Hamming distance `round(separation · d)`. Each point copies its class
/// prototype and flips every bit independently with probability
/// `flip_rho_inherent`. The first `m_per_class` points are labeled `+1`,
/// the rest `−1`.
pub fn synth_blobs(
    m_per_class: usize,
    d: usize,
    separation: f64,
    flip_rho_inherent: f64,
    seed: u64,
) -> Result<DatasetMatrix> {
    if m_per_class < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 points per class, got {m_per_class}"
        )));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("need at least 1 feature".into()));
    }
    if !(0.0..=1.0).contains(&separation) {
        return Err(Error::InvalidParameter(format!(
            "separation must lie in [0, 1], got {separation}"
        )));
    }
    if !(0.0..=1.0).contains(&flip_rho_inherent) {
        return Err(Error::InvalidParameter(format!(
            "flip rate must lie in [0, 1], got {flip_rho_inherent}"
        )));
    }

    let proto_seed = rng::child_seed(seed, 0);
    let noise_seed = rng::child_seed(seed, 1);
    let proto_a: Vec<f64> = (0..d)
        .map(|f| {
            if rng::stream_bernoulli(proto_seed, f as u64, 0.5) {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let hamming = (separation * d as f64).round() as usize;
    let mut proto_b = proto_a.clone();
    for v in proto_b.iter_mut().take(hamming) {
        *v = 1.0 - *v;
    }

    let m = 2 * m_per_class;
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let proto = if i < m_per_class { &proto_a } else { &proto_b };
            proto
                .iter()
                .enumerate()
                .map(|(f, &v)| {
                    let counter = (i * d + f) as u64;
                    if rng::stream_bernoulli(noise_seed, counter, flip_rho_inherent) {
                        1.0 - v
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let mut labels = vec![1i8; m];
    for l in &mut labels[m_per_class..] {
        *l = -1;
    }
    DatasetMatrix::new(rows, labels, Provenance::Synthetic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn tiny(rows: Vec<Vec<f64>>, labels: Vec<i8>) -> DatasetMatrix {
        DatasetMatrix::new(rows, labels, Provenance::Ingested).unwrap()
    }

    #[test]
    fn dataset_validation() {
        assert!(DatasetMatrix::new(vec![], vec![], Provenance::Ingested).is_err());
        assert!(
            DatasetMatrix::new(vec![vec![1.0], vec![1.0, 2.0]], vec![1, -1], Provenance::Ingested)
                .is_err()
        );
        assert!(DatasetMatrix::new(
            vec![vec![f64::NAN], vec![0.0]],
            vec![1, -1],
            Provenance::Ingested
        )
        .is_err());
        assert!(
            DatasetMatrix::new(vec![vec![1.0], vec![0.0]], vec![1, 1], Provenance::Ingested)
                .is_err(),
            "single-class data rejected"
        );
        assert!(
            DatasetMatrix::new(vec![vec![1.0], vec![0.0]], vec![1, 0], Provenance::Ingested)
                .is_err()
        );
    }

    #[test]
    fn knn_on_collinear_points() {
        let data = tiny(vec![vec![0.0], vec![1.0], vec![10.0]], vec![1, 1, -1]);
        // k = max(1, round(0.3·2)) = 1.
        let g = build_knn_graph(&data, 0.3).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.labels().unwrap(), &[1, 1, -1]);
    }

    #[test]
    fn knn_near_one_fraction_gives_complete_graph() {
        let data = tiny(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 3.0]],
            vec![1, 1, -1, -1],
        );
        let g = build_knn_graph(&data, 0.99).unwrap();
        assert_eq!(g.num_edges(), 6);
    }

    #[test]
    fn knn_rejects_bad_parameters() {
        let data = tiny(vec![vec![0.0], vec![1.0], vec![2.0]], vec![1, 1, -1]);
        assert!(build_knn_graph(&data, 0.0).is_err());
        assert!(build_knn_graph(&data, 1.0).is_err());
        let two = tiny(vec![vec![0.0], vec![1.0]], vec![1, -1]);
        assert!(build_knn_graph(&two, 0.5).is_err());
    }

    #[test]
    fn far_separated_blobs_produce_no_cross_edges() {
        // Two tight clusters 100 units apart; k small enough to stay local.
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..10 {
            rows.push(vec![i as f64 * 0.01, 0.0]);
            labels.push(1);
        }
        for i in 0..10 {
            rows.push(vec![100.0 + i as f64 * 0.01, 0.0]);
            labels.push(-1);
        }
        let data = tiny(rows, labels);
        let g = build_knn_graph(&data, 0.2).unwrap();
        for (u, v) in g.edges() {
            assert_eq!(
                g.labels().unwrap()[u],
                g.labels().unwrap()[v],
                "unexpected cross-blob edge ({u}, {v})"
            );
        }
    }

    #[test]
    fn knn_neighbor_sets_match_brute_oracle() {
        let data = synth_blobs(30, 12, 0.4, 0.2, 77).unwrap();
        let m = data.m();
        let k_fraction = 0.15;
        let k = ((k_fraction * (m - 1) as f64).round() as usize).max(1);
        let oracle_lists = oracle::brute_knn(data.rows(), k);
        // Rebuild the directed edge set from the oracle, union-symmetrize,
        // and compare with the graph.
        let mut want: Vec<(usize, usize)> = Vec::new();
        for (i, list) in oracle_lists.iter().enumerate() {
            for &j in list {
                want.push(if i < j { (i, j) } else { (j, i) });
            }
        }
        want.sort_unstable();
        want.dedup();
        let g = build_knn_graph(&data, k_fraction).unwrap();
        assert_eq!(g.edges(), want);
    }

    #[test]
    fn flip_noise_extremes_and_determinism() {
        let data = synth_blobs(5, 16, 0.5, 0.0, 3).unwrap();
        let same = flip_noise(&data, 0.0, 9).unwrap();
        assert_eq!(data.rows(), same.rows());

        let flipped = flip_noise(&data, 1.0, 9).unwrap();
        for (a, b) in data.rows().iter().zip(flipped.rows()) {
            for (&x, &y) in a.iter().zip(b) {
                assert_eq!(y, 1.0 - x);
            }
        }

        let n1 = flip_noise(&data, 0.3, 5).unwrap();
        let n2 = flip_noise(&data, 0.3, 5).unwrap();
        assert_eq!(n1, n2);

        let real = tiny(vec![vec![0.25], vec![0.5]], vec![1, -1]);
        assert!(flip_noise(&real, 0.5, 1).is_err());
    }

    #[test]
    fn flip_noise_rate_is_plausible() {
        let data = synth_blobs(50, 100, 0.5, 0.0, 21).unwrap();
        let noisy = flip_noise(&data, 0.5, 4).unwrap();
        let mut flips = 0usize;
        let total = data.m() * data.d();
        for (a, b) in data.rows().iter().zip(noisy.rows()) {
            flips += a.iter().zip(b).filter(|(x, y)| x != y).count();
        }
        // 4σ binomial window around 0.5.
        let mean = 0.5 * total as f64;
        let sd = (total as f64 * 0.25).sqrt();
        assert!((flips as f64 - mean).abs() < 4.0 * sd);
    }

    #[test]
    fn empirical_delta_is_zero_on_regular_fixtures() {
        let g = LabeledGraph::from_edges(4, &[(0, 1), (2, 3)], Some(vec![1, 1, -1, -1])).unwrap();
        assert_eq!(empirical_delta(&g).unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn empirical_delta_matches_loop_oracle() {
        let data = synth_blobs(40, 20, 0.5, 0.1, 13).unwrap();
        let g = build_knn_graph(&data, 0.1).unwrap();
        let labels = g.labels().unwrap().to_vec();
        let d = oracle::loop_net_in_cluster(&g, &labels);
        let mu = d.iter().sum::<i64>() as f64 / d.len() as f64;
        let want: Vec<f64> = d
            .iter()
            .map(|&di| (di as f64 - mu) / (d.len() as f64).sqrt())
            .collect();
        assert_eq!(empirical_delta(&g).unwrap(), want);
    }

    #[test]
    fn synth_blobs_shape_and_separation() {
        let data = synth_blobs(10, 40, 0.5, 0.0, 5).unwrap();
        assert_eq!(data.m(), 20);
        assert_eq!(data.d(), 40);
        assert!(data.is_binary());
        assert_eq!(data.provenance(), Provenance::Synthetic);
        // flip 0: points duplicate their prototype exactly.
        for i in 1..10 {
            assert_eq!(data.rows()[i], data.rows()[0]);
            assert_eq!(data.rows()[10 + i], data.rows()[10]);
        }
        let hamming: usize = data.rows()[0]
            .iter()
            .zip(&data.rows()[10])
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(hamming, 20);
        // separation 0: prototypes coincide.
        let same = synth_blobs(5, 16, 0.0, 0.0, 5).unwrap();
        assert_eq!(same.rows()[0], same.rows()[8]);
    }

    #[test]
    fn binarize_thresholds_after_minmax() {
        let data = tiny(vec![vec![0.0, 10.0], vec![4.9, 5.1]], vec![1, -1]);
        let b = data.binarize();
        assert_eq!(b.rows(), &[vec![0.0, 1.0], vec![0.0, 1.0]]);
        let constant = tiny(vec![vec![3.0], vec![3.0]], vec![1, -1]);
        assert_eq!(constant.binarize().rows(), &[vec![0.0], vec![0.0]]);
    }

    proptest! {
        /// The graph builder must agree with the quadratic oracle on random
        /// binary data, where distance ties are everywhere.
        #[test]
        fn knn_matches_oracle_on_binary_data(seed in 0u64..25) {
            let data = synth_blobs(12, 6, 0.5, 0.3, seed).unwrap();
            let m = data.m();
            for &k in &[1usize, 3, 7] {
                let lists = oracle::brute_knn(data.rows(), k);
                let mut want: Vec<(usize, usize)> = Vec::new();
                for (i, list) in lists.iter().enumerate() {
                    for &j in list {
                        want.push(if i < j { (i, j) } else { (j, i) });
                    }
                }
                want.sort_unstable();
                want.dedup();
                let kf = k as f64 / (m - 1) as f64 + 1e-9;
                let g = build_knn_graph(&data, kf).unwrap();
                prop_assert_eq!(g.edges(), want);
            }
        }
    }
}
