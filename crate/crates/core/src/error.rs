use thiserror::Error;

use crate::game::StrategyRef;
use crate::relations::Notion;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input text or structurally invalid objects.
    Format,
    /// Input is well formed but outside the class an operation accepts.
    Precondition,
    /// A search ran out of its state or size budget.
    Budget,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("game is not constant-sum")]
    NotConstantSum,

    #[error("game has {found} distinct payoff values, at most {max} allowed")]
    TooManyValues { found: usize, max: usize },

    #[error("payoffs do not normalize to the required form: {0}")]
    Normalization(String),

    #[error("notion {notion} is not supported by {algorithm}")]
    UnsupportedNotion {
        notion: Notion,
        algorithm: &'static str,
    },

    #[error("{0} is not a valid target for this game")]
    InvalidTarget(StrategyRef),

    #[error("step cannot be applied to this subgame")]
    InvalidStep,

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("circuit is not a valid {class} instance: {}", violations.join("; "))]
    CircuitClass {
        class: &'static str,
        violations: Vec<String>,
    },

    #[error("graph contains a cycle")]
    CyclicGraph,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("literals of clause {subset} are contained in clause {superset}")]
    SubsumedClause { subset: usize, superset: usize },

    #[error("{found} variables exceed the brute-force limit of {max}")]
    TooManyVariables { found: usize, max: usize },

    #[error("size {size} is too small, at least {min} vertices are needed")]
    InfeasibleSize { size: usize, min: usize },

    #[error("circuit needs at least {min} OR vertices, found {found}")]
    TooFewOrVertices { found: usize, min: usize },

    #[error("exhaustive search needs n+m = {side_sum}, budget allows {max}")]
    SearchTooLarge { side_sum: usize, max: usize },

    #[error("search budget exhausted after {states} states")]
    BudgetExhausted { states: usize },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. }
            | Error::InvalidGame(_)
            | Error::InvalidCircuit(_)
            | Error::InvalidGraph(_)
            | Error::InvalidFormula(_) => ErrorClass::Format,
            Error::SearchTooLarge { .. } | Error::BudgetExhausted { .. } => ErrorClass::Budget,
            _ => ErrorClass::Precondition,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
