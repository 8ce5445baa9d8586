//! Source problems for the hardness constructions: monotone circuits,
//! directed graphs with cycle reachability, and 3-CNF formulas.

mod circuit;
mod cnf;
mod digraph;

pub use circuit::{
    random_mcv, CircuitValues, Gate, Label, McvFlavor, MonotoneCircuit, ValidationReport,
};
pub use cnf::{sat_assignment, sat_brute_force, Clause, Cnf3, Lit, BRUTE_FORCE_MAX_VARS};
pub use digraph::{cycle_reach, reach_to_cyclereach, CycleReachInstance, Digraph, Side};
