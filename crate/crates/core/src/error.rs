use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series_exp requires a zero constant term")]
    NonzeroConstantTerm,
    #[error("series_log requires constant term 1")]
    ConstantTermNotOne,
    #[error("pole of {function} at nonpositive integer {at}")]
    Pole { function: &'static str, at: String },
    #[error("polylogarithm Li_{nu} diverges at w = 1")]
    DivergentPoint { nu: String },
    #[error("duplicate interpolation node at index {0}")]
    DuplicateNode(usize),
    #[error("interpolation data must use the same derivative count at every node")]
    RaggedNodes,
    #[error("log-power series centered at {left} and {right} cannot be combined")]
    CenterMismatch { left: String, right: String },
    #[error("exponential of a singular monomial X^{alpha} L^{k}")]
    ExpOfSingularity { alpha: String, k: u32 },
    #[error("exp-log decomposition disagrees with the product at index {index}")]
    DecompositionMismatch { index: usize },
    #[error("exponent at {root} has a positive singularity X^{alpha} L^{k}")]
    GlobalOrder { root: String, alpha: String, k: u32 },
    #[error("constant {name}: routes disagree by {delta}")]
    ConstantMismatch { name: String, delta: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
