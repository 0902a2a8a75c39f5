use thiserror::Error;

/// Errors raised by graph construction, enumeration, matching-tree growth and
/// homology computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("capacity exceeded: {what} would exceed the limit of {limit}")]
    Capacity { what: &'static str, limit: usize },

    /// A matching-tree step whose precondition does not hold at the node.
    #[error("illegal {step} at node {node}: {reason}")]
    IllegalStep {
        node: usize,
        step: String,
        reason: String,
    },

    #[error("strategy returned no step for open node {0}")]
    StrategyStalled(usize),

    #[error("step budget of {0} expansions exhausted")]
    StepBudget(usize),

    #[error("face {0} is paired more than once")]
    DoublePairing(String),

    #[error("vertex labels overlap: {0}")]
    OverlappingLabels(String),

    #[error("missing history value for n = {0}")]
    MissingHistory(i64),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
