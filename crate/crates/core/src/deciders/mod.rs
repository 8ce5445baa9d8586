//! Decision procedures for "can this strategy be eliminated by some
//! elimination sequence".
//!
//! Every YES comes with a trace that replays on the input game. Deciders
//! that work on a relabeled copy of the game convert their elimination order
//! back with least witnesses, which is sound because all relations are
//! invariant under strictly increasing relabeling of either matrix.

mod exhaustive;
mod graph;
mod greedy;
mod zero_sum;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::{Game, StrategyRef, Subgame};
use crate::relations::{EliminationTrace, Notion};

pub use exhaustive::{
    canonical_form, exhaustive_decide, minimal_subgames, order_dependence_in, order_dependence_search,
    reachable_subgames, CanonicalForm, MinimalSubgame, OrderDependenceWitness, SampleBounds,
};
pub use graph::{response_decide, three_z_strict_graph_decide, two_strict_graph_decide};
pub(crate) use graph::best_response_game;
pub use greedy::{greedy_decide, greedy_reduce, random_reduction};
pub use zero_sum::{two_z_strict_decide, z_dominance_decide, z_weak_decide};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Greedy,
    Exhaustive,
    ZWeak,
    ZDominance,
    TwoZStrict,
    TwoStrictGraph,
    ThreeZStrictGraph,
    Response,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Greedy,
        Algorithm::Exhaustive,
        Algorithm::ZWeak,
        Algorithm::ZDominance,
        Algorithm::TwoZStrict,
        Algorithm::TwoStrictGraph,
        Algorithm::ThreeZStrictGraph,
        Algorithm::Response,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Exhaustive => "exhaustive",
            Algorithm::ZWeak => "z-weak",
            Algorithm::ZDominance => "z-dominance",
            Algorithm::TwoZStrict => "2z-strict",
            Algorithm::TwoStrictGraph => "2strict-graph",
            Algorithm::ThreeZStrictGraph => "3z-strict-graph",
            Algorithm::Response => "response",
        }
    }

    /// The only notion a specialized algorithm answers for, if any.
    pub fn fixed_notion(self) -> Option<Notion> {
        match self {
            Algorithm::Greedy | Algorithm::Exhaustive => None,
            Algorithm::ZWeak => Some(Notion::Weak),
            Algorithm::ZDominance => Some(Notion::Dominance),
            Algorithm::TwoZStrict | Algorithm::TwoStrictGraph | Algorithm::ThreeZStrictGraph => {
                Some(Notion::Strict)
            }
            Algorithm::Response => Some(Notion::NeverBestResponse),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionResult {
    pub answer: bool,
    /// Certificate for YES. On NO, deciders that run to a fixed point may
    /// report the trace reaching it.
    pub trace: Option<EliminationTrace>,
    pub algorithm: Algorithm,
}

impl DecisionResult {
    /// YES results must carry a replayable trace whose end lacks `target`.
    pub fn is_certified(&self, g: &Game, target: StrategyRef) -> bool {
        match (&self.answer, &self.trace) {
            (true, Some(t)) => t.validate(g) && !t.final_subgame.contains(target),
            (true, None) => false,
            (false, Some(t)) => t.validate(g),
            (false, None) => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Cap on distinct subgame states visited.
    pub max_states: usize,
    /// Cap on `n + m`; never above 128.
    pub max_side_sum: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_states: 1 << 22,
            max_side_sum: 26,
        }
    }
}

/// What `auto` runs: greedy for order-invariant notions, the zero-sum
/// algorithms for constant-sum Weak and Dominance, exhaustive otherwise.
pub fn auto_algorithm(g: &Game, notion: Notion) -> Algorithm {
    let constant_sum = g.constant_sum_of().is_some();
    match notion {
        n if n.is_order_invariant() => Algorithm::Greedy,
        Notion::Weak if constant_sum => Algorithm::ZWeak,
        Notion::Dominance if constant_sum => Algorithm::ZDominance,
        _ => Algorithm::Exhaustive,
    }
}

/// Runs `algorithm` for `notion`. Specialized algorithms reject any other
/// notion and inputs outside their class; nothing falls back silently.
pub fn decide(
    g: &Game,
    target: StrategyRef,
    notion: Notion,
    algorithm: Algorithm,
    budget: SearchBudget,
) -> Result<DecisionResult> {
    if algorithm.fixed_notion().is_some_and(|n| n != notion) {
        return Err(Error::UnsupportedNotion {
            notion,
            algorithm: algorithm.name(),
        });
    }
    match algorithm {
        Algorithm::Greedy => greedy_decide(g, target, notion),
        Algorithm::Exhaustive => exhaustive_decide(g, target, notion, budget),
        Algorithm::ZWeak => z_weak_decide(g, target),
        Algorithm::ZDominance => z_dominance_decide(g, target),
        Algorithm::TwoZStrict => two_z_strict_decide(g, target),
        Algorithm::TwoStrictGraph => two_strict_graph_decide(g, target),
        Algorithm::ThreeZStrictGraph => three_z_strict_graph_decide(g, target),
        Algorithm::Response => response_decide(g, target),
    }
}

pub(crate) fn check_target(g: &Game, target: StrategyRef) -> Result<()> {
    if g.contains(target) {
        Ok(())
    } else {
        Err(Error::InvalidTarget(target))
    }
}

/// Replays `order` on `g` with least witnesses.
///
/// Panics if the order is not a valid sequence; callers only pass orders
/// whose validity follows from their own construction.
pub(crate) fn certify(g: &Game, notion: Notion, order: &[StrategyRef]) -> EliminationTrace {
    EliminationTrace::from_order(g, Subgame::full(g), notion, order)
        .unwrap_or_else(|| panic!("derived {notion} elimination order does not replay: {order:?}"))
}

/// Result for `target` from an elimination order, truncated right after the
/// target falls.
pub(crate) fn decide_by_order(
    g: &Game,
    notion: Notion,
    target: StrategyRef,
    order: &[StrategyRef],
    algorithm: Algorithm,
) -> DecisionResult {
    match order.iter().position(|&t| t == target) {
        Some(k) => DecisionResult {
            answer: true,
            trace: Some(certify(g, notion, &order[..=k])),
            algorithm,
        },
        None => DecisionResult {
            answer: false,
            trace: None,
            algorithm,
        },
    }
}
