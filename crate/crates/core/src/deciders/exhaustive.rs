use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_target, Algorithm, DecisionResult, SearchBudget};
use crate::error::{Error, Result};
use crate::game::{Game, Payoff, StrategyRef, Subgame};
use crate::generate::{random_game, random_shape};
use crate::relations::{apply_step, find_candidates, EliminationTrace, Notion, Step};

fn check_size(g: &Game, budget: &SearchBudget) -> Result<()> {
    let side_sum = g.rows() + g.cols();
    let max = budget.max_side_sum.min(128);
    if side_sum > max {
        return Err(Error::SearchTooLarge { side_sum, max });
    }
    Ok(())
}

struct Search<'a> {
    g: &'a Game,
    notion: Notion,
    target: StrategyRef,
    max_states: usize,
    /// States known not to reach a subgame without the target.
    visited: HashSet<u128>,
    path: Vec<Step>,
}

impl Search<'_> {
    fn dfs(&mut self, s: &Subgame) -> Result<bool> {
        let candidates = find_candidates(self.g, s, self.notion);
        if let Some(step) = candidates.iter().find(|c| c.eliminates(self.target)) {
            self.path.push(step.clone());
            return Ok(true);
        }
        for step in candidates {
            let next = apply_step(s, &step)?;
            if !self.visited.insert(next.key()) {
                continue;
            }
            if self.visited.len() > self.max_states {
                return Err(Error::BudgetExhausted {
                    states: self.max_states,
                });
            }
            self.path.push(step);
            if self.dfs(&next)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

/// Depth-first search over all reachable subgames, each visited at most
/// once. Works for every notion; it is the reference oracle for the
/// specialized deciders.
pub fn exhaustive_decide(g: &Game, target: StrategyRef, notion: Notion, budget: SearchBudget) -> Result<DecisionResult> {
    check_target(g, target)?;
    check_size(g, &budget)?;
    let full = Subgame::full(g);
    let mut search = Search {
        g,
        notion,
        target,
        max_states: budget.max_states,
        visited: HashSet::from([full.key()]),
        path: Vec::new(),
    };
    let answer = search.dfs(&full)?;
    let trace = answer.then(|| {
        let mut trace = EliminationTrace::new(full);
        for step in search.path {
            trace.push(g, step).expect("search steps validate");
        }
        trace
    });
    Ok(DecisionResult {
        answer,
        trace,
        algorithm: Algorithm::Exhaustive,
    })
}

/// An irreducible reachable subgame with one trace reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSubgame {
    pub subgame: Subgame,
    pub trace: EliminationTrace,
}

/// All reachable subgames without candidates, in breadth-first discovery
/// order, each with a shortest trace.
pub fn minimal_subgames(g: &Game, notion: Notion, budget: SearchBudget) -> Result<Vec<MinimalSubgame>> {
    check_size(g, &budget)?;
    let full = Subgame::full(g);
    let mut parent: HashMap<u128, Option<(u128, Step)>> = HashMap::from([(full.key(), None)]);
    let mut queue = VecDeque::from([full.clone()]);
    let mut minimal = Vec::new();
    while let Some(s) = queue.pop_front() {
        let candidates = find_candidates(g, &s, notion);
        if candidates.is_empty() {
            minimal.push(s);
            continue;
        }
        for step in candidates {
            let next = apply_step(&s, &step)?;
            if let Entry::Vacant(e) = parent.entry(next.key()) {
                e.insert(Some((s.key(), step)));
                if parent.len() > budget.max_states {
                    return Err(Error::BudgetExhausted {
                        states: budget.max_states,
                    });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(minimal
        .into_iter()
        .map(|subgame| {
            let mut steps = Vec::new();
            let mut key = subgame.key();
            while let Some(Some((prev, step))) = parent.get(&key) {
                steps.push(step.clone());
                key = *prev;
            }
            let mut trace = EliminationTrace::new(full.clone());
            for step in steps.into_iter().rev() {
                trace.push(g, step).expect("search steps validate");
            }
            debug_assert_eq!(trace.final_subgame, subgame);
            MinimalSubgame { subgame, trace }
        })
        .collect())
}

/// Every subgame reachable from the full game, in breadth-first order.
pub fn reachable_subgames(g: &Game, notion: Notion, budget: SearchBudget) -> Result<Vec<Subgame>> {
    check_size(g, &budget)?;
    let full = Subgame::full(g);
    let mut seen = HashSet::from([full.key()]);
    let mut out = vec![full];
    let mut k = 0;
    while k < out.len() {
        for step in find_candidates(g, &out[k], notion) {
            let next = apply_step(&out[k], &step)?;
            if seen.insert(next.key()) {
                if seen.len() > budget.max_states {
                    return Err(Error::BudgetExhausted {
                        states: budget.max_states,
                    });
                }
                out.push(next);
            }
        }
        k += 1;
    }
    Ok(out)
}

/// Restricted payoff pairs up to renaming of strategies.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub rows: usize,
    pub cols: usize,
    /// Row-major `(A, B)` cells of the least arrangement found.
    pub cells: Vec<(Payoff, Payoff)>,
}

/// Sides up to this size are canonicalized exactly by trying every
/// permutation.
const EXACT_PERMUTATION_LIMIT: usize = 7;

fn least_with_sorted_rows(m: &[Vec<(Payoff, Payoff)>], cols: usize) -> Vec<(Payoff, Payoff)> {
    (0..cols)
        .permutations(cols)
        .map(|perm| {
            let mut rows: Vec<Vec<(Payoff, Payoff)>> =
                m.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
            rows.sort();
            rows.concat()
        })
        .min()
        .unwrap_or_default()
}

fn transpose<T: Copy>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Canonical form of the subgame under row and column permutations.
///
/// Exact when one side has at most seven strategies: the smaller side is
/// permuted exhaustively and the other side sorted. Larger subgames fall
/// back to alternately sorting rows and columns, which is deterministic but
/// may separate equivalent subgames.
pub fn canonical_form(g: &Game, s: &Subgame) -> CanonicalForm {
    let view = g.restrict(s).expect("subgame belongs to the game");
    let (rows, cols) = (view.rows().len(), view.cols().len());
    let m: Vec<Vec<(Payoff, Payoff)>> = (0..rows)
        .map(|i| (0..cols).map(|j| (view.a(i, j), view.b(i, j))).collect())
        .collect();
    let cells = if rows.min(cols) > EXACT_PERMUTATION_LIMIT {
        sort_to_fixed_point(m)
    } else if cols <= rows {
        least_with_sorted_rows(&m, cols)
    } else {
        // Permute rows in the transposed layout; the layout depends only on
        // the shape, so equal shapes stay comparable.
        least_with_sorted_rows(&transpose(&m), rows)
    };
    CanonicalForm { rows, cols, cells }
}

fn sort_to_fixed_point(mut m: Vec<Vec<(Payoff, Payoff)>>) -> Vec<(Payoff, Payoff)> {
    for _ in 0..64 {
        let before = m.clone();
        m.sort();
        let mut t = transpose(&m);
        t.sort();
        m = transpose(&t);
        if m == before {
            break;
        }
    }
    m.concat()
}

/// A game with two elimination orders ending in subgames that differ even
/// up to renaming of strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderDependenceWitness {
    pub game: Game,
    pub first: MinimalSubgame,
    pub second: MinimalSubgame,
}

/// Two minimal subgames of `g` with distinct canonical forms, if any.
/// Order-invariant notions are rejected: they have a unique fixed point.
pub fn order_dependence_in(g: &Game, notion: Notion, budget: SearchBudget) -> Result<Option<OrderDependenceWitness>> {
    if notion.is_order_invariant() {
        return Err(Error::UnsupportedNotion {
            notion,
            algorithm: "order-dependence search",
        });
    }
    let mut minimal = minimal_subgames(g, notion, budget)?.into_iter();
    let Some(first) = minimal.next() else {
        return Ok(None);
    };
    let form = canonical_form(g, &first.subgame);
    Ok(minimal
        .find(|m| canonical_form(g, &m.subgame) != form)
        .map(|second| OrderDependenceWitness {
            game: g.clone(),
            first,
            second,
        }))
}

/// Parameters of the random game corpus scanned for order dependence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleBounds {
    pub max_rows: usize,
    pub max_cols: usize,
    /// Payoffs are drawn from `0..=max_value`.
    pub max_value: Payoff,
    pub samples: usize,
    pub seed: u64,
}

/// First sampled game whose minimal subgames are not all equivalent.
pub fn order_dependence_search(
    notion: Notion,
    bounds: SampleBounds,
    budget: SearchBudget,
) -> Result<Option<OrderDependenceWitness>> {
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    for _ in 0..bounds.samples {
        let (n, m) = random_shape(&mut rng, bounds.max_rows, bounds.max_cols);
        let g = random_game(&mut rng, n, m, 0..=bounds.max_value);
        if let Some(w) = order_dependence_in(&g, notion, budget)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
