//! Spectral bipartition diagnostics for two-community graphs.
//!
//! The crate samples planted two-block random graphs, extracts the top two
//! adjacency eigenpairs with a matrix-free Lanczos solver (cross-checked by
//! a dense Jacobi routine), and measures how well the entries of the second
//! eigenvector track each vertex's net in-cluster degree. A k-nearest-
//! neighbor pipeline applies the same diagnostics to point-cloud data, and
//! a thin CLI plus runnable examples expose every stage.

pub mod cli;
pub mod dense;
pub mod diagnostics;
pub mod eigen;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod knn;
pub mod oracle;
pub mod rng;
pub mod sbm;

pub use cli::run;
pub use error::{Error, Result};
