//! Iterated elimination of dominated strategies in two-player games.
//!
//! Indices are 0-based throughout the library; text formats and the command
//! line use 1-based numbering.

pub mod circuits_graphs;
pub mod deciders;
pub mod error;
pub mod formats;
pub mod gadgets;
pub mod game;
pub mod generate;
pub mod relations;
pub mod verify;

pub use error::{Error, ErrorClass, Result};
pub use game::{Game, GameView, Payoff, PlayerRole, StrategyRef, Subgame};
pub use relations::{
    apply_step, find_candidates, first_candidate, step_for, validate_step, DominatedBy,
    EliminationStep, EliminationTrace, Notion, SimultaneousStep, Step, Witness,
};
pub use deciders::{Algorithm, DecisionResult, SearchBudget};
