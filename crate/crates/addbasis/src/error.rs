use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid witness: element {element} is not a {k}-fold sum over the given basis")]
    InvalidWitness { element: String, k: u32 },

    #[error("node budget of {budget} exhausted after {nodes} nodes (best upper bound: {})",
            .best_upper_bound.map(|b| b.to_string()).unwrap_or_else(|| "none".into()))]
    ResourceLimit {
        budget: u64,
        nodes: u64,
        best_upper_bound: Option<usize>,
    },

    #[error("construction failure: {0}")]
    ConstructionFailure(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
