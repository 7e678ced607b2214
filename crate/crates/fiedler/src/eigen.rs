//! Top-2 eigenpairs of symmetric operators, plus a dense full-spectrum
//! routine used to cross-check the iterative path.
//!
//! Two independent implementations live here on purpose:
//!
//! - [`top2_symmetric`]: matrix-free Lanczos with full reorthogonalization
//!   and an internal implicit-shift QL solver for the projected tridiagonal
//!   problem. Scales to sparse graphs with thousands of vertices.
//! - [`dense_full_spectrum`]: cyclic Jacobi rotations on an explicit dense
//!   matrix. Slow and simple; capped at `n <= 512`.
//!
//! The two share no numerical code, so agreement between them on the same
//! operator is meaningful evidence of correctness.

use crate::dense::SymMatrix;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::rng;

/// A symmetric linear operator exposed through matrix-vector products.
pub trait SymOp {
    fn dim(&self) -> usize;
    /// Writes `A x` into `y`. Both slices have length `dim()`.
    fn apply(&self, x: &[f64], y: &mut [f64]);
    /// Cheap upper-bound-flavored estimate of the operator norm, used to
    /// scale residual tolerances. Must be nonnegative.
    fn norm_estimate(&self) -> f64;
}

impl SymOp for LabeledGraph {
    fn dim(&self) -> usize {
        self.num_vertices()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.matvec_into(x, y);
    }

    /// The max degree equals the adjacency 1-norm.
    fn norm_estimate(&self) -> f64 {
        self.max_degree() as f64
    }
}

impl SymOp for SymMatrix {
    fn dim(&self) -> usize {
        self.n()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.matvec_into(x, y);
    }

    /// Max absolute column sum (the 1-norm).
    fn norm_estimate(&self) -> f64 {
        let n = self.n();
        (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// The two algebraically largest eigenpairs of a symmetric operator.
#[derive(Debug, Clone)]
pub struct SpectralPair {
    pub lambda1: f64,
    pub lambda2: f64,
    /// Unit eigenvector for `lambda1`.
    pub v1: Vec<f64>,
    /// Unit eigenvector for `lambda2`.
    pub v2: Vec<f64>,
    /// True residual `‖A v1 − λ1 v1‖₂`, recomputed after extraction.
    pub residual1: f64,
    /// True residual `‖A v2 − λ2 v2‖₂`.
    pub residual2: f64,
    /// Operator applications performed (equals the Krylov basis size).
    pub iterations: usize,
    /// Set when `λ1 − λ2` or `λ2 − λ3` is within `10 · tol · scale`:
    /// the individual eigenvectors are then sensitive to perturbations,
    /// though the spanned subspace may still be fine.
    pub gap_warning: bool,
}

/// Knobs for [`top2_symmetric`].
#[derive(Debug, Clone, Copy)]
pub struct Top2Options {
    /// Relative residual tolerance; absolute tolerance is
    /// `tol · max(1, norm_estimate)`.
    pub tol: f64,
    /// Total Krylov basis budget across all chains.
    pub max_basis: usize,
}

impl Default for Top2Options {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_basis: 300,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Seed for the deterministic Lanczos start vectors. Fixed so repeated runs
/// of the solver on the same operator are bit-identical.
const START_SEED: u64 = 0x5EED0F1A2B3C4D;

/// Draws a random direction, projects out the current basis, and normalizes.
/// Returns `None` once the orthogonal complement is numerically empty.
fn fresh_direction(basis: &[Vec<f64>], attempt: &mut u64, n: usize) -> Option<Vec<f64>> {
    for _ in 0..8 {
        let seed = rng::child_seed(START_SEED, *attempt);
        *attempt += 1;
        let mut v: Vec<f64> = (0..n)
            .map(|i| rng::stream_f64(seed, i as u64) - 0.5)
            .collect();
        let raw = norm(&v);
        if raw == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for b in basis {
                let c = dot(&v, b);
                axpy(&mut v, -c, b);
            }
        }
        let left = norm(&v);
        if left > 1e-6 * raw {
            for vi in &mut v {
                *vi /= left;
            }
            return Some(v);
        }
    }
    None
}

/// Symmetric tridiagonal eigensolver: implicit-shift QL iteration.
///
/// `diag` has length `m`; `off[i]` couples indices `i` and `i + 1` and may
/// contain exact zeros, which split the problem into independent blocks.
/// `acc` is a set of length-`m` row vectors to which the accumulated
/// orthogonal transform is applied on the right, so passing the rows of the
/// identity recovers full eigenvectors while passing a single `eₘᵀ` row
/// recovers only the last component of each eigenvector. Eigenvalues come
/// back ascending with `acc` columns permuted to match.
fn tql2(diag: &[f64], off: &[f64], acc: &mut [Vec<f64>]) -> Result<Vec<f64>> {
    let m = diag.len();
    assert_eq!(off.len() + 1, m, "off-diagonal length mismatch");
    let mut d = diag.to_vec();
    let mut e = vec![0.0; m];
    e[..m - 1].copy_from_slice(off);

    let eps = f64::EPSILON;
    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    for l in 0..m {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut mm = l;
        while mm < m {
            if e[mm].abs() <= eps * tst1 {
                break;
            }
            mm += 1;
        }
        if mm > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 50 {
                    return Err(Error::NoConvergence {
                        iterations: iter,
                        best_residual: e[l].abs(),
                    });
                }

                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(m).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[mm];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..mm).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in acc.iter_mut() {
                        let tmp = row[i + 1];
                        row[i + 1] = s * row[i] + c * tmp;
                        row[i] = c * row[i] - s * tmp;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let sorted: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    for row in acc.iter_mut() {
        let old = row.clone();
        for (dst, &src) in order.iter().enumerate() {
            row[dst] = old[src];
        }
    }
    Ok(sorted)
}

/// Eigenvalues (ascending) plus the last component of each eigenvector,
/// which is all a Ritz residual estimate needs.
fn tridiag_values_lastrow(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = diag.len();
    let mut last = vec![0.0; m];
    last[m - 1] = 1.0;
    let mut acc = [last];
    let vals = tql2(diag, off, &mut acc)?;
    let [last] = acc;
    Ok((vals, last))
}

/// Eigenvalues ascending plus full eigenvectors; `vectors[j]` matches
/// `values[j]`.
fn tridiag_eigen_full(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let m = diag.len();
    let mut rows: Vec<Vec<f64>> = (0..m)
        .map(|k| {
            let mut row = vec![0.0; m];
            row[k] = 1.0;
            row
        })
        .collect();
    let vals = tql2(diag, off, &mut rows)?;
    let vectors: Vec<Vec<f64>> = (0..m)
        .map(|j| (0..m).map(|k| rows[k][j]).collect())
        .collect();
    Ok((vals, vectors))
}

/// Computes the two algebraically largest eigenpairs of `op` by Lanczos
/// iteration with full reorthogonalization.
///
/// A single Krylov chain produces at most one Ritz value per distinct
/// eigenvalue, so exact multiplicities are invisible to it. When a chain
/// breaks down (the next direction vanishes, meaning an invariant subspace
/// was exhausted) the solver starts a fresh probe chain in the orthogonal
/// complement and accepts only once a whole probe chain leaves the top two
/// Ritz values unchanged, the basis spans the full space, or the budget
/// runs out. Disjoint unions of identical components therefore still get
/// both of their tied top eigenvectors.
///
/// Eigenvectors come back unit-norm but with arbitrary sign; apply an
/// orientation rule ([`orient_pair`]) for reproducible signs.
pub fn top2_symmetric<O: SymOp>(op: &O, opts: Top2Options) -> Result<SpectralPair> {
    let n = op.dim();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "top-2 eigenpairs need dimension at least 2, got {n}"
        )));
    }
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive and finite, got {}",
            opts.tol
        )));
    }
    let scale = op.norm_estimate().max(1.0);
    let tol_abs = opts.tol * scale;
    let breakdown_tol = 1e-12 * scale;
    let m_max = opts.max_basis.min(n).max(2);

    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut attempt = 0u64;
    let mut top_at_last_breakdown: Option<(f64, f64)> = None;
    let mut accepted = false;

    'chains: while basis.len() < m_max {
        let Some(mut q) = fresh_direction(&basis, &mut attempt, n) else {
            // Complement is empty: the basis spans the whole space and the
            // projected problem is exact.
            accepted = true;
            break;
        };
        if !basis.is_empty() {
            beta.push(0.0);
        }
        loop {
            let mut w = vec![0.0; n];
            op.apply(&q, &mut w);
            alpha.push(dot(&q, &w));
            basis.push(q);
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&w, b);
                    axpy(&mut w, -c, b);
                }
            }
            let b_norm = norm(&w);
            let m = basis.len();
            let broke = b_norm <= breakdown_tol;

            if m >= 2 {
                let (vals, last) = tridiag_values_lastrow(&alpha, &beta)?;
                let est1 = b_norm * last[m - 1].abs();
                let est2 = b_norm * last[m - 2].abs();
                if est1 <= tol_abs && est2 <= tol_abs && !broke {
                    accepted = true;
                    break 'chains;
                }
                if broke {
                    let top = (vals[m - 1], vals[m - 2]);
                    if let Some(prev) = top_at_last_breakdown {
                        if (top.0 - prev.0).abs() <= tol_abs && (top.1 - prev.1).abs() <= tol_abs
                        {
                            // A full probe chain found nothing new up top.
                            accepted = true;
                            break 'chains;
                        }
                    }
                    top_at_last_breakdown = Some(top);
                }
            }
            if broke || m == m_max {
                if m == n {
                    accepted = true;
                    break 'chains;
                }
                continue 'chains;
            }
            beta.push(b_norm);
            for wi in &mut w {
                *wi /= b_norm;
            }
            q = w;
        }
    }

    let m = basis.len();
    if m < 2 {
        return Err(Error::NoConvergence {
            iterations: m,
            best_residual: f64::INFINITY,
        });
    }
    if m == n {
        accepted = true;
    }

    let (vals, vecs) = tridiag_eigen_full(&alpha, &beta)?;
    let build = |y: &[f64]| -> Vec<f64> {
        let mut v = vec![0.0; n];
        for (yk, qk) in y.iter().zip(&basis) {
            axpy(&mut v, *yk, qk);
        }
        let nv = norm(&v);
        if nv > 0.0 {
            for vi in &mut v {
                *vi /= nv;
            }
        }
        v
    };
    let lambda1 = vals[m - 1];
    let lambda2 = vals[m - 2];
    let v1 = build(&vecs[m - 1]);
    let v2 = build(&vecs[m - 2]);

    let true_residual = |v: &[f64], lambda: f64| -> f64 {
        let mut av = vec![0.0; n];
        op.apply(v, &mut av);
        axpy(&mut av, -lambda, v);
        norm(&av)
    };
    let residual1 = true_residual(&v1, lambda1);
    let residual2 = true_residual(&v2, lambda2);

    if !accepted || residual1 > 100.0 * tol_abs || residual2 > 100.0 * tol_abs {
        return Err(Error::NoConvergence {
            iterations: m,
            best_residual: residual1.max(residual2),
        });
    }

    let lambda3 = if m >= 3 { Some(vals[m - 3]) } else { None };
    let gap_warning = (lambda1 - lambda2) < 10.0 * tol_abs
        || lambda3.is_some_and(|l3| (lambda2 - l3) < 10.0 * tol_abs);

    Ok(SpectralPair {
        lambda1,
        lambda2,
        v1,
        v2,
        residual1,
        residual2,
        iterations: m,
        gap_warning,
    })
}

/// Top-2 adjacency eigenpairs of a graph, with signs fixed by
/// [`orient_pair`] (using the graph's labels when present).
pub fn top2_graph(graph: &LabeledGraph, opts: Top2Options) -> Result<SpectralPair> {
    let mut pair = top2_symmetric(graph, opts)?;
    orient_pair(&mut pair, graph.labels());
    Ok(pair)
}

/// Flips `v` so its largest-magnitude entry (ties broken by lowest index)
/// is nonnegative. The all-zero vector is left alone.
pub fn orient_by_magnitude(v: &mut [f64]) {
    let mut best = 0usize;
    let mut best_abs = 0.0f64;
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > best_abs {
            best_abs = x.abs();
            best = i;
        }
    }
    if best_abs > 0.0 && v[best] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

/// Flips `v` so its entry sum is nonnegative; an exactly zero sum falls
/// back to the largest-magnitude rule. Idempotent.
pub fn orient_by_sum(v: &mut [f64]) {
    let s: f64 = v.iter().sum();
    if s < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    } else if s == 0.0 {
        orient_by_magnitude(v);
    }
}

/// Flips `v` so its inner product with the ±1 label vector is nonnegative;
/// an exactly zero overlap falls back to the largest-magnitude rule.
pub fn orient_by_labels(v: &mut [f64], labels: &[i8]) {
    let s: f64 = v.iter().zip(labels).map(|(&x, &g)| x * g as f64).sum();
    if s < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    } else if s == 0.0 {
        orient_by_magnitude(v);
    }
}

/// Canonical sign convention for a spectral pair: `v1` points toward the
/// all-ones direction, `v2` toward the labels when they are known and by
/// the magnitude rule otherwise. Applying it twice changes nothing.
pub fn orient_pair(pair: &mut SpectralPair, labels: Option<&[i8]>) {
    orient_by_sum(&mut pair.v1);
    match labels {
        Some(g) => orient_by_labels(&mut pair.v2, g),
        None => orient_by_magnitude(&mut pair.v2),
    }
}

/// Largest matrix order accepted by [`dense_full_spectrum`].
pub const DENSE_SPECTRUM_MAX_N: usize = 512;

/// Full spectrum of a dense symmetric matrix.
#[derive(Debug, Clone)]
pub struct DenseSpectrum {
    /// Eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<f64>>,
}

/// Diagonalizes `m` by cyclic Jacobi rotations, sweeping until the
/// off-diagonal Frobenius norm drops below `1e-12` of the total norm.
/// Deliberately independent of the Lanczos path so the two can validate
/// each other. Cost is `O(n³)` per sweep; orders above
/// [`DENSE_SPECTRUM_MAX_N`] are rejected.
pub fn dense_full_spectrum(m: &SymMatrix) -> Result<DenseSpectrum> {
    let n = m.n();
    if n > DENSE_SPECTRUM_MAX_N {
        return Err(Error::CapacityExceeded {
            n,
            limit: DENSE_SPECTRUM_MAX_N,
        });
    }
    if n == 0 {
        return Ok(DenseSpectrum {
            eigenvalues: vec![],
            eigenvectors: vec![],
        });
    }

    let mut a: Vec<f64> = (0..n * n).map(|k| m.get(k / n, k % n)).collect();
    let mut v = vec![0.0f64; n * n];
    for k in 0..n {
        v[k * n + k] = 1.0;
    }

    let total = m.frobenius_norm();
    let target = 1e-12 * total;
    const MAX_SWEEPS: usize = 64;

    let off_norm = |a: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += a[i * n + j] * a[i * n + j];
                }
            }
        }
        acc.sqrt()
    };

    let mut converged = total == 0.0;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta < 0.0 { -1.0 } else { 1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let nkp = c * akp - s * akq;
                    let nkq = s * akp + c * akq;
                    a[k * n + p] = nkp;
                    a[p * n + k] = nkp;
                    a[k * n + q] = nkq;
                    a[q * n + k] = nkq;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_norm(&a) > target {
        return Err(Error::NoConvergence {
            iterations: MAX_SWEEPS,
            best_residual: off_norm(&a),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[y * n + y].total_cmp(&a[x * n + x]));
    let eigenvalues: Vec<f64> = order.iter().map(|&j| a[j * n + j]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&j| (0..n).map(|k| v[k * n + j]).collect())
        .collect();
    Ok(DenseSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Builds the symmetric matrix `Q diag(eigenvalues) Qᵀ` where `Q` comes
/// from Gram-Schmidt on a seeded random matrix. Exact control over the
/// spectrum makes these handy as solver test fixtures with a guaranteed
/// gap. Orders above 1024 are rejected.
pub fn planted_spectrum_matrix(eigenvalues: &[f64], seed: u64) -> Result<SymMatrix> {
    let n = eigenvalues.len();
    if n == 0 || n > 1024 {
        return Err(Error::InvalidParameter(format!(
            "planted spectrum supports orders 1..=1024, got {n}"
        )));
    }
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut attempt = 0u64;
    while q.len() < n {
        let col_seed = rng::child_seed(seed, attempt);
        attempt += 1;
        if attempt > 4 * n as u64 + 64 {
            return Err(Error::NoConvergence {
                iterations: attempt as usize,
                best_residual: f64::NAN,
            });
        }
        let mut col: Vec<f64> = (0..n)
            .map(|i| rng::stream_f64(col_seed, i as u64) - 0.5)
            .collect();
        for _ in 0..2 {
            for prev in &q {
                let c = dot(&col, prev);
                axpy(&mut col, -c, prev);
            }
        }
        let nrm = norm(&col);
        if nrm > 1e-8 {
            for x in &mut col {
                *x /= nrm;
            }
            q.push(col);
        }
    }
    Ok(SymMatrix::from_fn(n, |i, j| {
        eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &lk)| lk * q[k][i] * q[k][j])
            .sum()
    }))
}
