use thiserror::Error;

/// Errors produced by instance construction, transforms, and the exact
/// solver machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("machine count must be at least {min} (got {got})")]
    MachineCount { min: usize, got: usize },

    #[error("at least one processing time is required")]
    EmptyTimes,

    #[error("rank {rank} out of range {lo}..={hi}")]
    RankOutOfRange { rank: usize, lo: usize, hi: usize },

    #[error(
        "cannot subtract one time unit at rank {rank}: a processing time would become negative"
    )]
    DecrementUnderflow { rank: usize },

    #[error("rank-{rank} increments violate the rank ordering chain")]
    RankOrderViolated { rank: usize },

    #[error(
        "instance exceeds exact-solver limits: needs m <= {max_machines} or k <= {max_ranks} \
         (got m={machines}, k={ranks})"
    )]
    SolverLimit {
        machines: usize,
        ranks: usize,
        max_machines: usize,
        max_ranks: usize,
    },

    #[error("brute-force oracle requires m <= {max_machines} and k <= {max_ranks} (got m={machines}, k={ranks})")]
    OracleLimit {
        machines: usize,
        ranks: usize,
        max_machines: usize,
        max_ranks: usize,
    },

    #[error("{count} instances would be enumerated, above the cap of {cap}")]
    EnumerationCap { count: u128, cap: u128 },

    #[error("invalid schedule grid: {reason}")]
    InvalidGrid { reason: String },
}

impl Error {
    /// True for errors caused by configured resource guards rather than by
    /// malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::SolverLimit { .. } | Error::OracleLimit { .. } | Error::EnumerationCap { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
