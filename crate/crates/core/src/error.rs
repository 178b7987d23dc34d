use thiserror::Error;

/// Errors raised by the frame, mass, probability and LP layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("frame must contain at least one element")]
    EmptyFrame,
    #[error("frame has {0} elements, at most 64 are supported")]
    FrameTooLarge(usize),
    #[error("frame labels must be non-empty")]
    EmptyLabel,
    #[error("duplicate frame label `{0}`")]
    DuplicateLabel(String),
    #[error("`{0}` is not an element of the frame")]
    UnknownElement(String),
    #[error("bit mask {0:#x} has bits outside the frame")]
    MaskOutOfRange(u64),
    #[error("operands belong to different frames")]
    FrameMismatch,
    #[error("not a partition: {0}")]
    InvalidPartition(String),
    #[error("mass assigned to the empty set")]
    EmptySetMass,
    #[error("mass {0} is not positive")]
    NonPositiveMass(String),
    #[error("masses sum to {0}, expected 1")]
    BadMassSum(String),
    #[error("total conflict (K = 1): the orthogonal sum is undefined")]
    TotalConflict,
    #[error("invalid probability assignment: {0}")]
    InvalidAssignment(String),
    #[error("conditioning event has probability zero")]
    ZeroProbabilityCondition,
    #[error("focal sets of m1 and m2 must both equal the partition blocks")]
    FocalMismatch,
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("reference assignment violates condition(s) {0}")]
    ConditionsViolated(String),
    #[error("constraint `{0}` is not linear in the atom probabilities")]
    NonlinearConstraint(String),
    #[error("linear constraint has no nonzero coefficient")]
    EmptyConstraint,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("conditional undefined: the conditioning event has probability zero on every feasible assignment")]
    ConditionUndefined,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse `{0}` as a rational number")]
    ParseNumber(String),
}

pub type Result<T> = std::result::Result<T, Error>;
