//! Laplacian H-spectrum of the k-uniform loose path of length three.
//!
//! The crate is organised bottom-up:
//!
//! * [`hypergraph`] builds loose paths `G_{k,d}` and their degree vectors.
//! * [`multilinear`] applies the adjacency, Laplacian and signless Laplacian
//!   tensors to a vector and measures H-eigenpair residuals. It never looks at
//!   the case algebra and is the independent check for everything else.
//! * [`cases`] enumerates the characteristic equations whose roots, together
//!   with `{0, 1, 2}`, are the candidate eigenvalues of `G_{k,3}`.
//! * [`rootfind`] isolates sign changes on a grid and bisects them.
//! * [`spectrum`] runs the catalog, rebuilds a witness eigenvector for every
//!   root, verifies it, deduplicates and reports.
//! * [`asymptotics`] sweeps `k` and checks the monotone limits of individual
//!   roots and the clustering of the spectrum around `{0, 1, 1.5, 2}`.
//! * [`export`] writes the CSV and JSON formats used by the command line tool.

pub mod asymptotics;
pub mod cases;
mod error;
pub mod export;
pub mod hypergraph;
pub mod multilinear;
pub mod rootfind;
pub mod spectrum;

pub use asymptotics::{
    cluster_distance_of, cluster_distances, sequence, sweep, Direction, SequenceCheck, SweepRow,
    CLUSTER_TOL, LIMIT_POINTS,
};
pub use cases::{case_catalog, eval_case, CaseEquation, CaseId, CaseRoot, Parity};
pub use error::{Error, Result};
pub use hypergraph::{build_loose_path, degrees, LoosePath};
pub use multilinear::{apply, eig_residual, Eigenpair, TensorKind};
pub use rootfind::{bisect, isolate, Root, RootFindError};
pub use spectrum::{
    compute_spectrum, compute_spectrum_with, dedup, reconstruct_eigenvector, CaseResult,
    Discrepancy, SpectrumOptions, SpectrumReport,
};

/// Largest uniformity accepted by the spectrum and sweep entry points.
///
/// Up to this bound every case polynomial evaluates directly in `f64`
/// without overflow: `|λ - 1| < 2` on every bracket, so even the squared
/// terms stay below `2^1022`.
pub const MAX_K: usize = 512;

/// Residual threshold an eigenpair must meet to be reported.
pub const RESIDUAL_TOL: f64 = 1e-8;
