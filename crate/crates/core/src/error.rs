use thiserror::Error;

use crate::cases::CaseId;
use crate::rootfind::RootFindError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Grid isolation found a different number of sign changes than the
    /// catalog asserts for this bracket.
    #[error(
        "case {case} (k = {k}): expected {expected} sign change(s) on ({lo}, {hi}), found {found}"
    )]
    RootCount {
        case: CaseId,
        k: usize,
        lo: f64,
        hi: f64,
        expected: usize,
        found: usize,
    },

    /// No sign assignment of the block ansatz reached the residual threshold.
    #[error(
        "case {case} (k = {k}): no eigenvector witness for lambda = {lambda}; best residual {best_residual:e}"
    )]
    Reconstruction {
        case: CaseId,
        k: usize,
        lambda: f64,
        best_residual: f64,
    },

    #[error(transparent)]
    RootFind(#[from] RootFindError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
