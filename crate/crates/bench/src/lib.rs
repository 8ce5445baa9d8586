//! Seeded inputs shared by the benchmarks.

use iterelim::circuits_graphs::{random_mcv, McvFlavor, MonotoneCircuit};
use iterelim::generate::{random_constant_sum_game, random_game};
use iterelim::Game;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn game(rows: usize, cols: usize, seed: u64) -> Game {
    random_game(&mut ChaCha8Rng::seed_from_u64(seed), rows, cols, 0..=99)
}

pub fn constant_sum_game(rows: usize, cols: usize, seed: u64) -> Game {
    random_constant_sum_game(&mut ChaCha8Rng::seed_from_u64(seed), rows, cols, 0..=4)
}

/// A game that strict elimination shrinks to one cell: row `i` beats rows
/// below it and column `j` beats columns to its right.
pub fn staircase(n: usize) -> Game {
    Game::from_fn(n, n, |i, j| ((n - i) as i64, (n - j) as i64))
}

pub fn mcv1(size: usize, seed: u64) -> MonotoneCircuit {
    random_mcv(McvFlavor::Mcv1, size, seed).expect("size is feasible")
}
