//! Seeded random instances for tests, benchmarks and the verification
//! suites.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use rand::Rng;

use crate::circuits_graphs::{Clause, Cnf3, Digraph, Lit};
use crate::game::{Game, Payoff};

fn matrix(rng: &mut impl Rng, rows: usize, cols: usize, values: &RangeInclusive<Payoff>) -> Vec<Vec<Payoff>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(values.clone())).collect())
        .collect()
}

/// Shape drawn uniformly from `1..=max_rows` x `1..=max_cols`.
pub fn random_shape(rng: &mut impl Rng, max_rows: usize, max_cols: usize) -> (usize, usize) {
    (rng.random_range(1..=max_rows), rng.random_range(1..=max_cols))
}

/// Independent uniform payoffs for both players.
pub fn random_game(rng: &mut impl Rng, rows: usize, cols: usize, values: RangeInclusive<Payoff>) -> Game {
    let a = matrix(rng, rows, cols, &values);
    let b = matrix(rng, rows, cols, &values);
    Game::new(a, b).expect("shape is valid")
}

/// `A` uniform over `values`, `B = c - A` with `c` the sum of the range
/// bounds, so `B` stays in the same range.
pub fn random_constant_sum_game(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    values: RangeInclusive<Payoff>,
) -> Game {
    let c = values.start() + values.end();
    Game::constant_sum(matrix(rng, rows, cols, &values), c).expect("shape is valid")
}

/// Payoffs drawn from two fixed values per cell, in any combination.
pub fn random_two_value_game(rng: &mut impl Rng, rows: usize, cols: usize) -> Game {
    random_game(rng, rows, cols, 0..=1)
}

/// Each ordered pair (self-loops included) is an edge with probability `p`.
pub fn random_digraph(rng: &mut impl Rng, n: usize, p: f64) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, edges).expect("endpoints in range")
}

/// Random acyclic digraph: edges only go from lower to higher numbers.
pub fn random_dag(rng: &mut impl Rng, n: usize, p: f64) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, edges).expect("endpoints in range")
}

/// Random subset-free 3-CNF over `vars >= 3` variables with `clauses`
/// distinct clauses on three distinct variables each. Since all clauses have
/// three literals, distinct literal sets are never nested. Returns fewer
/// clauses only if the clause space is exhausted.
pub fn random_cnf3(rng: &mut impl Rng, vars: usize, clauses: usize) -> Cnf3 {
    assert!(vars >= 3, "a 3-CNF clause needs three variables");
    let space = vars * (vars - 1) * (vars - 2) / 6 * 8;
    let mut seen: BTreeSet<[Lit; 3]> = BTreeSet::new();
    let mut out: Vec<Clause> = Vec::new();
    while out.len() < clauses.min(space) {
        let mut picked: Vec<usize> = Vec::with_capacity(3);
        while picked.len() < 3 {
            let v = rng.random_range(0..vars);
            if !picked.contains(&v) {
                picked.push(v);
            }
        }
        let mut clause = [Lit::pos(0); 3];
        for (slot, &v) in clause.iter_mut().zip(&picked) {
            *slot = Lit {
                var: v,
                positive: rng.random_bool(0.5),
            };
        }
        let mut key = clause;
        key.sort();
        if seen.insert(key) {
            out.push(clause);
        }
    }
    Cnf3::new(vars, out).expect("distinct three-literal clauses are never nested")
}
