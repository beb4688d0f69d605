use thiserror::Error;

use crate::model::JobId;

/// Errors shared by instance construction, sequence operations, the solvers
/// and the exhaustive oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Job ids are 1-based; 0 is reserved as "no job".
    #[error("job ids must be >= 1")]
    ZeroJobId,
    #[error("duplicate job id {0}")]
    DuplicateJobId(JobId),
    #[error("unknown job id {0}")]
    UnknownJobId(JobId),
    /// Completion times are computed with exact 64-bit arithmetic, so the sum
    /// of all processing times must fit in a `u64`.
    #[error("total processing time exceeds the 64-bit time range")]
    TotalTimeOverflow,
    /// Same guard for the sum of all weights.
    #[error("total weight exceeds the 64-bit weight range")]
    TotalWeightOverflow,
    #[error("sequence must be a permutation of all {expected} jobs, got {found}")]
    NotFullPermutation { expected: usize, found: usize },
    #[error("{0} jobs exceed the exhaustive-search cap of {1}")]
    SearchCapExceeded(usize, usize),
    /// The proof-step checkers only apply to instances whose due-date-ordered
    /// sequence contains a late job.
    #[error("the due-date-ordered sequence has no late job")]
    NoLateJob,
    #[error("processing times and weights are not oppositely ordered")]
    NotOppositelyOrdered,
    #[error("trace does not match the instance: {0}")]
    TraceMismatch(String),
}
