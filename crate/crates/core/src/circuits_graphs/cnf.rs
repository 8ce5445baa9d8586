use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest variable count accepted by [`sat_brute_force`].
pub const BRUTE_FORCE_MAX_VARS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    /// 0-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn holds(self, assignment: u32) -> bool {
        (assignment >> self.var & 1 == 1) == self.positive
    }

    /// DIMACS literal: 1-based, negative for negated.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write!(f, "x{}", self.var + 1)
    }
}

pub type Clause = [Lit; 3];

/// 3-CNF formula whose clauses have three distinct literals and whose
/// literal sets are pairwise non-nested.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cnf3 {
    vars: usize,
    clauses: Vec<Clause>,
}

impl Cnf3 {
    pub fn new(vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        let sets: Vec<BTreeSet<Lit>> = clauses.iter().map(|c| c.iter().copied().collect()).collect();
        for (k, (clause, set)) in clauses.iter().zip(&sets).enumerate() {
            if let Some(l) = clause.iter().find(|l| l.var >= vars) {
                return Err(Error::InvalidFormula(format!(
                    "clause {} uses {l} but only {vars} variables are declared",
                    k + 1
                )));
            }
            if set.len() < 3 {
                return Err(Error::InvalidFormula(format!(
                    "clause {} repeats a literal",
                    k + 1
                )));
            }
        }
        for (x, sx) in sets.iter().enumerate() {
            for (y, sy) in sets.iter().enumerate() {
                if x != y && sx.is_subset(sy) && (sx != sy || x < y) {
                    return Err(Error::SubsumedClause {
                        subset: x + 1,
                        superset: y + 1,
                    });
                }
            }
        }
        Ok(Cnf3 { vars, clauses })
    }

    pub fn var_count(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: u32) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}

/// Satisfiability by enumerating all assignments.
pub fn sat_brute_force(f: &Cnf3) -> Result<bool> {
    Ok(sat_assignment(f)?.is_some())
}

/// A satisfying assignment as a bit mask (bit `v` is variable `v`), if any.
pub fn sat_assignment(f: &Cnf3) -> Result<Option<u32>> {
    if f.vars > BRUTE_FORCE_MAX_VARS {
        return Err(Error::TooManyVariables {
            found: f.vars,
            max: BRUTE_FORCE_MAX_VARS,
        });
    }
    Ok((0..1u32 << f.vars).find(|&a| f.satisfied_by(a)))
}
