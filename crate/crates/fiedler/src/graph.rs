//! Sparse symmetric unweighted graphs with optional ±1 cluster labels.
//!
//! The adjacency is stored in compressed sparse row form, built once at
//! construction; graphs are immutable afterwards. All downstream spectral
//! work reduces to repeated matrix-vector products against this structure,
//! which is also safe to share across worker threads.

use crate::error::{Error, Result};

/// An undirected, unweighted graph on vertices `0..n` with optional
/// ground-truth labels `g ∈ {−1, +1}ⁿ`.
///
/// Invariants enforced at construction:
/// - adjacency is symmetric (edges are stored in both directions),
/// - no self-loops,
/// - labels, when present, are exactly ±1 and cover every vertex.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    n: usize,
    /// CSR row offsets, length `n + 1`.
    offsets: Vec<usize>,
    /// Concatenated sorted neighbor lists, length twice the edge count.
    neighbors: Vec<u32>,
    labels: Option<Vec<i8>>,
}

impl LabeledGraph {
    /// Builds a graph from undirected edges. Each pair may appear in either
    /// order; duplicates collapse to a single edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], labels: Option<Vec<i8>>) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!(
                "vertex count {n} exceeds the u32 index space"
            )));
        }
        if let Some(ref g) = labels {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.len(),
                });
            }
            if let Some(bad) = g.iter().find(|&&v| v != 1 && v != -1) {
                return Err(Error::InvalidParameter(format!(
                    "label {bad} is not ±1"
                )));
            }
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            canonical.push(if u < v { (u, v) } else { (v, u) });
        }
        canonical.sort_unstable();
        canonical.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &canonical {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; acc];
        for &(u, v) in &canonical {
            neighbors[cursor[u]] = v as u32;
            cursor[u] += 1;
            neighbors[cursor[v]] = u as u32;
            cursor[v] += 1;
        }
        // Rows come out sorted because canonical edges are sorted by (min, max),
        // except for the "v side" insertions; sort each row to make neighbor
        // lists canonical.
        for i in 0..n {
            neighbors[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Ok(Self {
            n,
            offsets,
            neighbors,
            labels,
        })
    }

    /// Number of vertices.
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted neighbor list of vertex `i`.
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Degree of vertex `i`.
    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// Largest degree in the graph (0 for an edgeless graph). This equals
    /// the 1-norm of the adjacency matrix.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Ground-truth labels, if attached.
    pub fn labels(&self) -> Option<&[i8]> {
        self.labels.as_deref()
    }

    /// Returns a copy of this graph with the given labels attached.
    pub fn with_labels(&self, labels: Vec<i8>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        if let Some(bad) = labels.iter().find(|&&v| v != 1 && v != -1) {
            return Err(Error::InvalidParameter(format!("label {bad} is not ±1")));
        }
        Ok(Self {
            n: self.n,
            offsets: self.offsets.clone(),
            neighbors: self.neighbors.clone(),
            labels: Some(labels),
        })
    }

    /// All undirected edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for u in 0..self.n {
            for &v in self.neighbors(u) {
                let v = v as usize;
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Computes `y = A x` in floating point.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut y = vec![0.0; self.n];
        self.matvec_into(x, &mut y);
        Ok(y)
    }

    /// `A x` written into a caller-provided buffer (no allocation; used by
    /// the eigensolver inner loop). Panics if lengths differ.
    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for &j in self.neighbors(i) {
                acc += x[j as usize];
            }
            *yi = acc;
        }
    }

    /// Computes `y = A x` exactly in integer arithmetic.
    pub fn matvec_int(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut y = vec![0i64; self.n];
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = 0i64;
            for &j in self.neighbors(i) {
                acc += x[j as usize];
            }
            *yi = acc;
        }
        Ok(y)
    }

    /// Per-vertex net in-cluster degree
    /// `d_i = #{same-cluster neighbors} − #{other-cluster neighbors}`,
    /// computed exactly as `g_i · (A g)_i` in integer arithmetic.
    pub fn net_in_cluster(&self) -> Result<Vec<i64>> {
        let g = self.labels.as_deref().ok_or(Error::MissingLabels {
            op: "net_in_cluster",
        })?;
        let gx: Vec<i64> = g.iter().map(|&v| v as i64).collect();
        let ag = self.matvec_int(&gx)?;
        Ok(ag
            .iter()
            .zip(&gx)
            .map(|(&agi, &gi)| gi * agi)
            .collect())
    }
}
