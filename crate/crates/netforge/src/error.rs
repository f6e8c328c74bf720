use thiserror::Error;

/// Errors shared across the crate.
///
/// Construction and analysis are exact; anything that cannot be represented
/// or afforded is reported rather than approximated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An intermediate value does not fit the supported integer width.
    #[error("integer overflow computing {what}")]
    Overflow { what: &'static str },

    /// A precondition on an argument was violated.
    #[error("{0}")]
    InvalidArgument(String),

    /// A shape asks for a finer axis resolution than the box provides.
    #[error("shape depth {depth} on axis {axis} exceeds box resolution {resolution}")]
    ShapeTooFine {
        axis: usize,
        depth: u32,
        resolution: u32,
    },

    /// A scripted greedy choice was not available at its step.
    #[error("scripted choice {corner:?} at step {step} is not available")]
    ScriptedUnavailable { step: usize, corner: Vec<u64> },

    /// The point count is not the required power of the base.
    #[error("point count {count} is not b^m for base {base}")]
    CardinalityMismatch { base: u64, count: u64 },

    /// A search exceeded its node budget before finishing.
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },

    /// A grid enumeration would exceed its configured size limit.
    #[error("grid of size {size} exceeds the enumeration limit {limit}")]
    GridTooLarge { size: u64, limit: u64 },

    /// An interval has a lower bound above its upper bound.
    #[error("malformed interval on axis {axis}: lower bound exceeds upper bound")]
    MalformedInterval { axis: usize },

    /// A permutation family does not satisfy its shape constraints.
    #[error("malformed permutation family: {0}")]
    MalformedFamily(String),

    /// The operation is only defined in the plane.
    #[error("dimension {s} unsupported; this operation requires s = 2")]
    DimensionUnsupported { s: usize },

    /// A net file failed schema validation.
    #[error("malformed net file: {0}")]
    MalformedFile(String),
}
