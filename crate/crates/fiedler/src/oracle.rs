//! Brute-force reference implementations, for tests only.
//!
//! Everything here recomputes a quantity the library produces elsewhere,
//! using the most naive correct algorithm available and none of the fast
//! paths' code. Sizes are capped by assertion: these exist to catch bugs,
//! not to run experiments.

use crate::graph::LabeledGraph;

const ORACLE_CAP: usize = 1000;

/// Per-vertex (same-label neighbors − other-label neighbors), counted by a
/// direct scan of each neighbor list. Reference for
/// [`LabeledGraph::net_in_cluster`], which instead goes through an integer
/// matrix-vector product.
pub fn loop_net_in_cluster(graph: &LabeledGraph, labels: &[i8]) -> Vec<i64> {
    let n = graph.num_vertices();
    assert!(n <= ORACLE_CAP, "oracle capped at {ORACLE_CAP} vertices");
    assert_eq!(labels.len(), n, "label length mismatch");
    (0..n)
        .map(|i| {
            let mut d = 0i64;
            for &j in graph.neighbors(i) {
                if labels[j as usize] == labels[i] {
                    d += 1;
                } else {
                    d -= 1;
                }
            }
            d
        })
        .collect()
}

/// Exhaustive k-nearest-neighbor lists by full sort of all pairwise
/// Euclidean distances, ties broken by ascending index. Each returned list
/// is sorted ascending by index. Reference for the k-NN graph builder.
pub fn brute_knn(data: &[Vec<f64>], k: usize) -> Vec<Vec<usize>> {
    let m = data.len();
    assert!(m <= ORACLE_CAP, "oracle capped at {ORACLE_CAP} points");
    assert!(k < m, "k must leave at least one non-neighbor candidate pool");
    (0..m)
        .map(|i| {
            let mut cand: Vec<(f64, usize)> = (0..m)
                .filter(|&j| j != i)
                .map(|j| {
                    let d2: f64 = data[i]
                        .iter()
                        .zip(&data[j])
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum();
                    (d2, j)
                })
                .collect();
            cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let mut picked: Vec<usize> = cand[..k].iter().map(|&(_, j)| j).collect();
            picked.sort_unstable();
            picked
        })
        .collect()
}
