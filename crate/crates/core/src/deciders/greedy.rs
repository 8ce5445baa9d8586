use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_target, Algorithm, DecisionResult};
use crate::error::{Error, Result};
use crate::game::{Game, StrategyRef, Subgame};
use crate::relations::{find_candidates, first_candidate, EliminationTrace, Notion, Step};

fn require_order_invariant(notion: Notion) -> Result<()> {
    if notion.is_order_invariant() {
        Ok(())
    } else {
        Err(Error::UnsupportedNotion {
            notion,
            algorithm: "greedy",
        })
    }
}

/// Eliminates until no candidate is left or `stop` has been removed.
fn run(g: &Game, notion: Notion, mut rng: Option<ChaCha8Rng>, stop: Option<StrategyRef>) -> EliminationTrace {
    let mut trace = EliminationTrace::new(Subgame::full(g));
    loop {
        if stop.is_some_and(|t| !trace.final_subgame.contains(t)) {
            return trace;
        }
        let s = &trace.final_subgame;
        let step: Option<Step> = match rng.as_mut() {
            None => first_candidate(g, s, notion),
            Some(rng) => {
                let mut all = find_candidates(g, s, notion);
                if all.is_empty() {
                    None
                } else {
                    let k = rng.random_range(0..all.len());
                    Some(all.swap_remove(k))
                }
            }
        };
        match step {
            Some(step) => trace.push(g, step).expect("candidates validate"),
            None => return trace,
        }
    }
}

/// Runs elimination to a fixed point. Without `tie_seed` the first
/// candidate in deterministic order is taken each round; with it, a
/// pseudo-random candidate.
pub fn greedy_reduce(g: &Game, notion: Notion, tie_seed: Option<u64>) -> Result<(Subgame, EliminationTrace)> {
    require_order_invariant(notion)?;
    let trace = run(g, notion, tie_seed.map(ChaCha8Rng::seed_from_u64), None);
    Ok((trace.final_subgame.clone(), trace))
}

/// One elimination sequence to a fixed point with uniformly drawn
/// candidates, under any notion. For Dominance and Weak, different seeds
/// may end in different subgames.
pub fn random_reduction(g: &Game, notion: Notion, seed: u64) -> EliminationTrace {
    run(g, notion, Some(ChaCha8Rng::seed_from_u64(seed)), None)
}

/// Target eliminability for an order-invariant notion. A YES trace stops at
/// the step removing the target; a NO trace is the full reduction.
pub fn greedy_decide(g: &Game, target: StrategyRef, notion: Notion) -> Result<DecisionResult> {
    require_order_invariant(notion)?;
    check_target(g, target)?;
    let trace = run(g, notion, None, Some(target));
    Ok(DecisionResult {
        answer: !trace.final_subgame.contains(target),
        trace: Some(trace),
        algorithm: Algorithm::Greedy,
    })
}
