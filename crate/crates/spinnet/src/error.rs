//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by diagram, evaluation and compilation operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two diagram elements were combined along boundaries of different widths.
    #[error("shape mismatch: expected {expected} strands, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// A generator or strand index lies outside the valid range.
    #[error("index out of range: {index} not in 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// Labels do not form an admissible triple (parity, triangle, or level cutoff).
    #[error("labels ({a},{b},{c}) are not admissible")]
    NotAdmissible { a: usize, b: usize, c: usize },

    /// A rational function was evaluated at a point where its denominator vanishes.
    #[error("denominator vanishes at the requested root of unity")]
    DenominatorVanishes,

    /// A theta evaluation needed as a denominator is zero at the chosen root.
    #[error("theta ({a},{b},{c}) vanishes at the chosen root")]
    ThetaVanishes { a: usize, b: usize, c: usize },

    /// A diagrammatic evaluation would exceed the configured strand budget.
    #[error("strand budget exceeded: needs {needed} strands, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    /// Failed to parse a braid word or label argument.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
