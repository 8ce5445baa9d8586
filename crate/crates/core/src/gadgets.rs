//! Hardness constructions: each turns a source instance into a game and a
//! target strategy whose eliminability answers the source question.
//!
//! Strategy order is fixed: the special strategies first, then source
//! objects in increasing id order. Labels use 1-based source ids.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::circuits_graphs::{Cnf3, CycleReachInstance, Label, Lit, MonotoneCircuit, Side};
use crate::deciders::best_response_game;
use crate::error::{Error, Result};
use crate::game::{Game, Payoff, PlayerRole, StrategyRef};

/// Bidirectional map between strategies and their labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyNames {
    rows: Vec<String>,
    cols: Vec<String>,
    by_label: HashMap<String, StrategyRef>,
}

impl StrategyNames {
    /// Fails if a label repeats.
    pub fn new(rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        let mut by_label = HashMap::new();
        let all = rows
            .iter()
            .enumerate()
            .map(|(i, l)| (StrategyRef::row(i), l))
            .chain(cols.iter().enumerate().map(|(j, l)| (StrategyRef::column(j), l)));
        for (s, label) in all {
            if by_label.insert(label.clone(), s).is_some() {
                return Err(Error::InvalidGame(format!("strategy label {label} repeats")));
            }
        }
        Ok(StrategyNames { rows, cols, by_label })
    }

    pub fn label(&self, s: StrategyRef) -> Option<&str> {
        match s.role {
            PlayerRole::Row => self.rows.get(s.index),
            PlayerRole::Column => self.cols.get(s.index),
        }
        .map(String::as_str)
    }

    pub fn find(&self, label: &str) -> Option<StrategyRef> {
        self.by_label.get(label).copied()
    }

    pub fn count(&self, role: PlayerRole) -> usize {
        match role {
            PlayerRole::Row => self.rows.len(),
            PlayerRole::Column => self.cols.len(),
        }
    }

    /// Rows first, then columns.
    pub fn iter(&self) -> impl Iterator<Item = (StrategyRef, &str)> + '_ {
        let rows = self.rows.iter().enumerate().map(|(i, l)| (StrategyRef::row(i), l.as_str()));
        let cols = self.cols.iter().enumerate().map(|(j, l)| (StrategyRef::column(j), l.as_str()));
        rows.chain(cols)
    }

    pub fn covers(&self, g: &Game) -> bool {
        self.rows.len() == g.rows() && self.cols.len() == g.cols()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetOutput {
    pub game: Game,
    pub target: StrategyRef,
    pub names: StrategyNames,
    /// How the eliminability of the target relates to the source answer.
    pub semantics: String,
    /// Strategies that no elimination sequence can remove.
    pub anchors: Vec<StrategyRef>,
}

impl GadgetOutput {
    fn build(
        game: Game,
        rows: Vec<String>,
        cols: Vec<String>,
        target: &str,
        anchors: impl IntoIterator<Item = String>,
        semantics: &str,
    ) -> Self {
        let names = StrategyNames::new(rows, cols).expect("gadget labels are distinct");
        assert!(names.covers(&game));
        let find = |l: &str| names.find(l).unwrap_or_else(|| panic!("no strategy labelled {l}"));
        GadgetOutput {
            target: find(target),
            anchors: anchors.into_iter().map(|l| find(&l)).collect(),
            semantics: semantics.to_string(),
            game,
            names,
        }
    }
}

fn label_of(role: &str, name: &str, id: usize) -> String {
    format!("{role}_{name}{}", id + 1)
}

fn from_tables(
    rows: usize,
    cols: usize,
    a: impl Fn(usize, usize) -> Payoff,
    b: impl Fn(usize, usize) -> Payoff,
) -> Game {
    Game::from_fn(rows, cols, |i, j| (a(i, j), b(i, j)))
}

/// Vertex strategies on both sides of the bipartite subdivision of a
/// cycle-reachability instance.
struct Bipartite {
    graph: crate::circuits_graphs::Digraph,
    left: Vec<usize>,
    right: Vec<usize>,
    source_label: String,
}

fn bipartite(inst: &CycleReachInstance) -> Bipartite {
    let (graph, sides) = inst.graph.subdivide_bipartite();
    let (left, right): (Vec<usize>, Vec<usize>) =
        (0..graph.vertex_count()).partition(|&v| sides[v] == Side::Original);
    Bipartite {
        graph,
        left,
        right,
        source_label: label_of("s", "v", inst.source),
    }
}

const CYCLE_SEMANTICS: &str = "target strictly eliminable iff no cycle is reachable from the source vertex";

/// Two-value game whose strict elimination peels vertices without
/// successors. `r*` and `c*` pay 1 to their owner everywhere.
pub fn cyclereach_to_2strict(inst: &CycleReachInstance) -> GadgetOutput {
    let Bipartite { graph, left, right, source_label } = bipartite(inst);
    let (n, m) = (left.len() + 1, right.len() + 1);
    let a = |i: usize, j: usize| match (i, j) {
        (0, _) => 1,
        (_, 0) => 0,
        _ => graph.has_edge(left[i - 1], right[j - 1]) as Payoff,
    };
    let b = |i: usize, j: usize| match (i, j) {
        (_, 0) => 1,
        (0, _) => 0,
        _ => graph.has_edge(right[j - 1], left[i - 1]) as Payoff,
    };
    let rows = std::iter::once("r*".to_string()).chain(left.iter().map(|&u| label_of("s", "v", u))).collect();
    let cols = std::iter::once("c*".to_string()).chain(right.iter().map(|&v| label_of("t", "v", v))).collect();
    GadgetOutput::build(
        from_tables(n, m, a, b),
        rows,
        cols,
        &source_label,
        ["r*".to_string(), "c*".to_string()],
        CYCLE_SEMANTICS,
    )
}

/// Constant-sum (c = 2) three-value game; `t_v` falls to `t` exactly when
/// `v` has no remaining successor, and symmetrically for rows.
pub fn cyclereach_to_3zstrict(inst: &CycleReachInstance) -> GadgetOutput {
    let Bipartite { graph, left, right, source_label } = bipartite(inst);
    let (n, m) = (left.len() + 1, right.len() + 1);
    let a: Vec<Vec<Payoff>> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| match (i, j) {
                    (0, 0) => 1,
                    (0, _) => 2,
                    (_, 0) => 0,
                    _ => {
                        let (u, v) = (left[i - 1], right[j - 1]);
                        if graph.has_edge(u, v) {
                            2
                        } else if graph.has_edge(v, u) {
                            0
                        } else {
                            1
                        }
                    }
                })
                .collect()
        })
        .collect();
    let rows = std::iter::once("s".to_string()).chain(left.iter().map(|&u| label_of("s", "v", u))).collect();
    let cols = std::iter::once("t".to_string()).chain(right.iter().map(|&v| label_of("t", "v", v))).collect();
    GadgetOutput::build(
        Game::constant_sum(a, 2).expect("nonempty"),
        rows,
        cols,
        &source_label,
        ["s".to_string(), "t".to_string()],
        CYCLE_SEMANTICS,
    )
}

struct Parts {
    ands: Vec<usize>,
    ors: Vec<usize>,
    falses: Vec<usize>,
}

fn parts(c: &MonotoneCircuit) -> Parts {
    Parts {
        ands: c.vertices_with(Label::And),
        ors: c.vertices_with(Label::Or),
        falses: c.vertices_with(Label::False),
    }
}

const MCV_SEMANTICS: &str = "target eliminable iff the root evaluates to true";

/// Zero-sum game over `{-1, 0, 1}`. Row order: `s_B`, `s_and*`,
/// `s_false*`; columns: `t_and*`, `t_false*`, `t_or*`. The same target
/// answers Weak, Dominance and Simultaneous.
///
/// `s_false<m>` pays 1 against every `t_or<j>` that `m` does not feed. With
/// 0 there, `t_or<j>` could never fall to `t_and<i>` or `t_false<k>` while
/// a second FALSE vertex exists, and no OR vertex would ever turn true.
pub fn mcv1_to_3z(c: &MonotoneCircuit) -> Result<GadgetOutput> {
    c.validate_mcv1().into_result("MCV1")?;
    let Parts { ands, ors, falses } = parts(c);
    let (na, nf) = (ands.len(), falses.len());
    let a: Vec<Vec<Payoff>> = (0..1 + na + nf)
        .map(|i| {
            (0..na + nf + ors.len())
                .map(|j| {
                    if i == 0 {
                        return 0;
                    }
                    if i <= na {
                        let n = ands[i - 1];
                        if j < na {
                            -((ands[j] == n) as Payoff)
                        } else if j < na + nf {
                            0
                        } else {
                            let o = ors[j - na - nf];
                            if c.is_input_of(o, n) {
                                1
                            } else if c.is_input_of(n, o) {
                                -1
                            } else {
                                0
                            }
                        }
                    } else {
                        let f = falses[i - 1 - na];
                        if j < na {
                            1
                        } else if j < na + nf {
                            if falses[j - na] == f {
                                -1
                            } else {
                                1
                            }
                        } else if c.is_input_of(f, ors[j - na - nf]) {
                            -1
                        } else {
                            1
                        }
                    }
                })
                .collect()
        })
        .collect();
    let rows = std::iter::once("s_B".to_string())
        .chain(ands.iter().map(|&v| label_of("s", "and", v)))
        .chain(falses.iter().map(|&v| label_of("s", "false", v)))
        .collect();
    let cols = ands
        .iter()
        .map(|&v| label_of("t", "and", v))
        .chain(falses.iter().map(|&v| label_of("t", "false", v)))
        .chain(ors.iter().map(|&v| label_of("t", "or", v)))
        .collect();
    let anchors = std::iter::once("s_B".to_string())
        .chain(falses.iter().map(|&v| label_of("s", "false", v)))
        .chain(falses.iter().map(|&v| label_of("t", "false", v)));
    Ok(GadgetOutput::build(
        Game::constant_sum(a, 0).expect("nonempty"),
        rows,
        cols,
        &label_of("s", "and", c.root()),
        anchors,
        MCV_SEMANTICS,
    ))
}

/// General-sum game with `A` over `{0, 1}` and `B` over `{-1, 0, 1}`, for
/// strict elimination. Rows: `s_and*`, `s_false*`; columns as in
/// [`mcv1_to_3z`].
pub fn mcv1_to_3strict(c: &MonotoneCircuit) -> Result<GadgetOutput> {
    c.validate_mcv1().into_result("MCV1")?;
    let Parts { ands, ors, falses } = parts(c);
    let (na, nf) = (ands.len(), falses.len());
    let row_vertex = |i: usize| if i < na { ands[i] } else { falses[i - na] };
    let a = |i: usize, j: usize| {
        if i >= na {
            1
        } else if j < na + nf {
            0
        } else {
            c.is_input_of(ors[j - na - nf], ands[i]) as Payoff
        }
    };
    let b = |i: usize, j: usize| {
        let v = row_vertex(i);
        if j < na {
            (i < na && ands[j] == v) as Payoff
        } else if j < na + nf {
            (i >= na && falses[j - na] == v) as Payoff
        } else if c.is_input_of(v, ors[j - na - nf]) {
            0
        } else {
            -1
        }
    };
    let rows = ands
        .iter()
        .map(|&v| label_of("s", "and", v))
        .chain(falses.iter().map(|&v| label_of("s", "false", v)))
        .collect();
    let cols = ands
        .iter()
        .map(|&v| label_of("t", "and", v))
        .chain(falses.iter().map(|&v| label_of("t", "false", v)))
        .chain(ors.iter().map(|&v| label_of("t", "or", v)))
        .collect();
    Ok(GadgetOutput::build(
        from_tables(na + nf, na + nf + ors.len(), a, b),
        rows,
        cols,
        &label_of("s", "and", c.root()),
        falses.iter().map(|&v| label_of("s", "false", v)),
        MCV_SEMANTICS,
    ))
}

/// Constant-sum (c = 3) game over `{0, 1, 2, 3}`, for strict elimination.
/// Rows: `s_B`, `s_and*`, `s_or*`; columns: `t_or*`, then `t_or<j>-<x>`
/// for each OR vertex `j` whose `x`-th input is an AND vertex.
pub fn mcv1_to_4zstrict(c: &MonotoneCircuit) -> Result<GadgetOutput> {
    c.validate_mcv1().into_result("MCV1")?;
    let Parts { ands, ors, .. } = parts(c);
    if ors.len() < 2 {
        return Err(Error::TooFewOrVertices { found: ors.len(), min: 2 });
    }
    let split: Vec<(usize, usize)> = ors
        .iter()
        .flat_map(|&o| {
            c.inputs(o)
                .iter()
                .enumerate()
                .filter(|&(_, &u)| c.label(u) == Label::And)
                .map(move |(x, _)| (o, x))
        })
        .collect();
    let (na, no) = (ands.len(), ors.len());
    let a: Vec<Vec<Payoff>> = (0..1 + na + no)
        .map(|i| {
            (0..no + split.len())
                .map(|j| {
                    let plain = j < no;
                    if i == 0 {
                        return if plain { 3 } else { 2 };
                    }
                    if i <= na {
                        let and = ands[i - 1];
                        if plain {
                            if c.is_input_of(ors[j], and) {
                                3
                            } else {
                                1
                            }
                        } else {
                            let (o, x) = split[j - no];
                            (c.inputs(o)[x] == and || c.is_input_of(o, and)) as Payoff
                        }
                    } else {
                        let n = ors[i - 1 - na];
                        let o = if plain { ors[j] } else { split[j - no].0 };
                        match (plain, n == o) {
                            (true, true) => 2,
                            (true, false) => 3,
                            (false, true) => 1,
                            (false, false) => 2,
                        }
                    }
                })
                .collect()
        })
        .collect();
    let split_label = |&(o, x): &(usize, usize)| format!("t_or{}-{}", o + 1, x + 1);
    let rows = std::iter::once("s_B".to_string())
        .chain(ands.iter().map(|&v| label_of("s", "and", v)))
        .chain(ors.iter().map(|&v| label_of("s", "or", v)))
        .collect();
    let cols = ors
        .iter()
        .map(|&v| label_of("t", "or", v))
        .chain(split.iter().map(split_label))
        .collect();
    let anchors = std::iter::once("s_B".to_string())
        .chain(ors.iter().map(|&v| label_of("s", "or", v)))
        .chain(split.iter().map(split_label));
    Ok(GadgetOutput::build(
        Game::constant_sum(a, 3).expect("nonempty"),
        rows,
        cols,
        &label_of("s", "and", c.root()),
        anchors,
        MCV_SEMANTICS,
    ))
}

/// Game over `{0, 1}`. Rows: `s_B`, `s_and*`; columns: `t_or*`, then
/// `t_andfalse<k>` pairing AND vertex `k` with its FALSE input, if any.
/// The same target answers Weak, Dominance and Simultaneous.
pub fn mcv2_to_2(c: &MonotoneCircuit) -> Result<GadgetOutput> {
    c.validate_mcv2().into_result("MCV2")?;
    let Parts { ands, ors, .. } = parts(c);
    let (na, no) = (ands.len(), ors.len());
    let false_of: Vec<Option<usize>> = ands
        .iter()
        .map(|&k| c.inputs(k).iter().copied().find(|&u| c.label(u) == Label::False))
        .collect();
    let a = |i: usize, j: usize| match (i, j < no) {
        (0, true) => 0,
        (0, false) => false_of[j - no].is_none() as Payoff,
        (_, true) => c.is_input_of(ors[j], ands[i - 1]) as Payoff,
        (_, false) => false_of[j - no].is_some_and(|f| c.is_input_of(f, ands[i - 1])) as Payoff,
    };
    let b = |i: usize, j: usize| match (i, j < no) {
        (0, plain) => (!plain) as Payoff,
        (_, true) => c.is_input_of(ands[i - 1], ors[j]) as Payoff,
        (_, false) => (i - 1 == j - no) as Payoff,
    };
    let rows = std::iter::once("s_B".to_string())
        .chain(ands.iter().map(|&v| label_of("s", "and", v)))
        .collect();
    let cols = ors
        .iter()
        .map(|&v| label_of("t", "or", v))
        .chain(ands.iter().map(|&v| label_of("t", "andfalse", v)))
        .collect();
    Ok(GadgetOutput::build(
        from_tables(1 + na, no + na, a, b),
        rows,
        cols,
        &label_of("s", "and", c.root()),
        std::iter::empty(),
        MCV_SEMANTICS,
    ))
}

/// Game over `{0, 1, 2}` for weak elimination. Rows: `s`, `s_d*` per clause,
/// then `s_x<l>+`, `s_x<l>-` per variable; columns: `t_c<c>`, `t_c<c>^1`,
/// `t_c<c>^2`, `t_c<c>^3` per clause, then `t_x<k>` per variable.
pub fn sat_to_3weak(f: &Cnf3) -> GadgetOutput {
    let (nc, nv) = (f.clauses().len(), f.var_count());
    let clause_rows = 1 + nc;
    let clause_cols = 4 * nc;
    // Literal of a variable row; None for `s` and clause rows.
    let row_lit = |i: usize| {
        (i >= clause_rows).then(|| {
            let k = i - clause_rows;
            Lit { var: k / 2, positive: k.is_multiple_of(2) }
        })
    };
    let a = |i: usize, j: usize| {
        if j >= clause_cols {
            return row_lit(i).is_some_and(|l| l.var == j - clause_cols) as Payoff;
        }
        let (c, pos) = (j / 4, j % 4);
        match i {
            0 => 2 * (pos == 0) as Payoff,
            _ if i < clause_rows => (i - 1 == c) as Payoff,
            _ => 0,
        }
    };
    let b = |i: usize, j: usize| {
        if j >= clause_cols {
            return match row_lit(i) {
                None => (i == 0) as Payoff,
                Some(l) => (l.var == j - clause_cols) as Payoff,
            };
        }
        let (c, pos) = (j / 4, j % 4);
        let clause = &f.clauses()[c];
        match row_lit(i) {
            None if i == 0 => 0,
            None => match (i - 1 == c, pos) {
                (false, _) => 0,
                (true, 0) => 1,
                (true, _) => 2,
            },
            Some(l) if pos == 0 => clause.contains(&l) as Payoff,
            Some(l) => (0..3).any(|x| x != pos - 1 && clause[x] == l) as Payoff,
        }
    };
    let rows = std::iter::once("s".to_string())
        .chain((0..nc).map(|d| label_of("s", "d", d)))
        .chain((0..nv).flat_map(|l| [format!("s_x{}+", l + 1), format!("s_x{}-", l + 1)]))
        .collect();
    let cols = (0..nc)
        .flat_map(|c| {
            let base = label_of("t", "c", c);
            [base.clone(), format!("{base}^1"), format!("{base}^2"), format!("{base}^3")]
        })
        .chain((0..nv).map(|k| label_of("t", "x", k)))
        .collect();
    GadgetOutput::build(
        from_tables(clause_rows + 2 * nv, clause_cols + nv, a, b),
        rows,
        cols,
        "s",
        (0..nc).map(|d| label_of("s", "d", d)),
        "target weakly eliminable iff the formula is satisfiable",
    )
}

/// The 0/1 best-reply game with an always-1 strategy per player appended
/// as the last row and column. Never-best-responses of the input are
/// exactly the strictly eliminable original strategies of the output.
pub fn binarize_best_response(g: &Game) -> Game {
    best_response_game(g)
}

/// Threshold for [`binarize_benchmark`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BenchmarkPolicy {
    /// Lower median of all entries of both matrices.
    #[default]
    GlobalMedian,
    /// Lower median of each player's own matrix.
    PerPlayerMedian,
    Fixed(Payoff),
}

impl fmt::Display for BenchmarkPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchmarkPolicy::GlobalMedian => f.write_str("global-median"),
            BenchmarkPolicy::PerPlayerMedian => f.write_str("per-player-median"),
            BenchmarkPolicy::Fixed(v) => write!(f, "fixed:{v}"),
        }
    }
}

impl FromStr for BenchmarkPolicy {
    type Err = String;

    /// Accepts `median` as an alias of `global-median`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "global-median" | "median" => Ok(BenchmarkPolicy::GlobalMedian),
            "per-player-median" => Ok(BenchmarkPolicy::PerPlayerMedian),
            _ => s
                .strip_prefix("fixed:")
                .and_then(|v| v.parse().ok())
                .map(BenchmarkPolicy::Fixed)
                .ok_or_else(|| {
                    format!("unknown policy {s:?}; expected global-median, per-player-median or fixed:<v>")
                }),
        }
    }
}

fn lower_median(mut values: Vec<Payoff>) -> Payoff {
    let k = (values.len() - 1) / 2;
    *values.select_nth_unstable(k).1
}

/// Maps every payoff strictly above the benchmark to 1 and all others to 0.
pub fn binarize_benchmark(g: &Game, policy: BenchmarkPolicy) -> Game {
    let a: Vec<Payoff> = g.a_rows().into_iter().flatten().collect();
    let b: Vec<Payoff> = g.b_rows().into_iter().flatten().collect();
    let (ta, tb) = match policy {
        BenchmarkPolicy::GlobalMedian => {
            let t = lower_median(a.iter().chain(&b).copied().collect());
            (t, t)
        }
        BenchmarkPolicy::PerPlayerMedian => (lower_median(a), lower_median(b)),
        BenchmarkPolicy::Fixed(v) => (v, v),
    };
    g.map_payoffs(|x| (x > ta) as Payoff, |x| (x > tb) as Payoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits_graphs::{cycle_reach, Digraph, Gate};
    use crate::deciders::{exhaustive_decide, greedy_decide, z_dominance_decide, z_weak_decide};
    use crate::relations::Notion;
    use crate::SearchBudget;

    fn circuit(gates: &[(Label, &[usize])], root: usize) -> MonotoneCircuit {
        let gates = gates
            .iter()
            .map(|&(label, inputs)| Gate { label, inputs: inputs.to_vec() })
            .collect();
        MonotoneCircuit::new(gates, root).unwrap()
    }

    /// FALSE 0, AND 1 without inputs, OR 2 over both, root AND 3 over the OR.
    fn small_mcv1(true_variant: bool) -> MonotoneCircuit {
        if true_variant {
            circuit(
                &[(Label::False, &[]), (Label::And, &[]), (Label::Or, &[0, 1]), (Label::And, &[2])],
                3,
            )
        } else {
            circuit(
                &[(Label::False, &[]), (Label::False, &[]), (Label::Or, &[0, 1]), (Label::And, &[2])],
                3,
            )
        }
    }

    fn strict(out: &GadgetOutput) -> bool {
        greedy_decide(&out.game, out.target, Notion::Strict).unwrap().answer
    }

    fn cyclereach(n: usize, edges: &[(usize, usize)], s: usize) -> CycleReachInstance {
        CycleReachInstance::new(Digraph::new(n, edges.iter().copied()).unwrap(), s).unwrap()
    }

    #[test]
    fn names_are_bidirectional() {
        let names = StrategyNames::new(vec!["a".into(), "b".into()], vec!["c".into()]).unwrap();
        for (s, l) in names.iter() {
            assert_eq!(names.find(l), Some(s));
            assert_eq!(names.label(s), Some(l));
        }
        assert!(StrategyNames::new(vec!["a".into()], vec!["a".into()]).is_err());
    }

    #[test]
    fn cyclereach_small_cases() {
        let lone = cyclereach(1, &[], 0);
        let self_loop = cyclereach(1, &[(0, 0)], 0);
        for build in [cyclereach_to_2strict, cyclereach_to_3zstrict] {
            assert!(strict(&build(&lone)));
            assert!(!strict(&build(&self_loop)));
            // s -> a, a -> b, b -> a
            let out = build(&cyclereach(3, &[(0, 1), (1, 2), (2, 1)], 0));
            assert!(!strict(&out));
        }
        let path = cyclereach(3, &[(0, 1), (1, 2)], 0);
        let out = cyclereach_to_3zstrict(&path);
        for v in 0..3 {
            let t = out.names.find(&format!("s_v{}", v + 1)).unwrap();
            assert!(greedy_decide(&out.game, t, Notion::Strict).unwrap().answer);
        }
        assert_eq!(out.game.a(0, 0), 1);
        let four = cyclereach_to_3zstrict(&cyclereach(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 0));
        assert!(four.names.iter().filter(|(_, l)| l.contains("_v")).all(|(t, _)| {
            !greedy_decide(&four.game, t, Notion::Strict).unwrap().answer
        }));
    }

    #[test]
    fn cyclereach_gadget_shapes() {
        let inst = cyclereach(3, &[(0, 1), (1, 2), (2, 0)], 1);
        let two = cyclereach_to_2strict(&inst);
        assert!(two.game.payoff_value_count() <= 2);
        assert_eq!(two.names.label(StrategyRef::row(0)), Some("r*"));
        assert_eq!(two.names.label(StrategyRef::column(0)), Some("c*"));
        let three = cyclereach_to_3zstrict(&inst);
        assert_eq!(three.game.constant_sum_of(), Some(2));
        assert!(three.game.payoff_value_count() <= 3);
        assert_eq!(three.target, three.names.find("s_v2").unwrap());
        assert_eq!(!strict(&two), cycle_reach(&inst));
    }

    #[test]
    fn mcv1_three_value_gadget() {
        for truth in [true, false] {
            let c = small_mcv1(truth);
            assert_eq!(c.eval().root, truth);
            let out = mcv1_to_3z(&c).unwrap();
            let g = &out.game;
            assert_eq!(g.constant_sum_of(), Some(0));
            assert!(g.payoff_value_count() <= 3);
            let s_b = out.names.find("s_B").unwrap();
            assert!((0..g.cols()).all(|j| g.a(s_b.index, j) == 0));
            assert_eq!(z_weak_decide(g, out.target).unwrap().answer, truth);
            assert_eq!(z_dominance_decide(g, out.target).unwrap().answer, truth);
            let sim = greedy_decide(g, out.target, Notion::Simultaneous).unwrap().answer;
            assert_eq!(sim, truth);
        }
    }

    #[test]
    fn mcv1_strict_gadget() {
        for truth in [true, false] {
            let out = mcv1_to_3strict(&small_mcv1(truth)).unwrap();
            assert!(out.game.payoff_value_count() <= 3);
            let f = out.names.find("s_false1").unwrap();
            assert!((0..out.game.cols()).all(|j| out.game.a(f.index, j) == 1));
            assert_eq!(strict(&out), truth);
        }
    }

    #[test]
    fn mcv1_four_value_gadget() {
        // FALSE 0, FALSE 1, AND 2 (no inputs), OR 3 (0, 2), OR 4 (1, 2),
        // root AND 5 (3, 4): true.
        let gates: &[(Label, &[usize])] = &[
            (Label::False, &[]),
            (Label::False, &[]),
            (Label::And, &[]),
            (Label::Or, &[0, 2]),
            (Label::Or, &[1, 2]),
            (Label::And, &[3, 4]),
        ];
        let c = circuit(gates, 5);
        assert!(c.validate_mcv1().is_valid() && c.eval().root);
        let out = mcv1_to_4zstrict(&c).unwrap();
        assert_eq!(out.game.constant_sum_of(), Some(3));
        assert!(out.game.payoff_value_count() <= 4);
        assert!((0..2).all(|j| out.game.a(0, j) == 3));
        assert!(strict(&out));

        // replacing AND 2 by FALSE vertices makes every gate false
        let gates: &[(Label, &[usize])] = &[
            (Label::False, &[]),
            (Label::False, &[]),
            (Label::False, &[]),
            (Label::False, &[]),
            (Label::Or, &[0, 2]),
            (Label::Or, &[1, 3]),
            (Label::And, &[4, 5]),
        ];
        let c = circuit(gates, 6);
        assert!(c.validate_mcv1().is_valid() && !c.eval().root);
        assert!(!strict(&mcv1_to_4zstrict(&c).unwrap()));

        assert!(matches!(
            mcv1_to_4zstrict(&small_mcv1(true)),
            Err(Error::TooFewOrVertices { found: 1, min: 2 })
        ));
    }

    #[test]
    fn mcv_gadgets_reject_invalid_circuits() {
        let c = circuit(&[(Label::And, &[])], 0);
        assert!(matches!(mcv1_to_3z(&c), Err(Error::CircuitClass { .. })));
        assert!(matches!(mcv1_to_3strict(&c), Err(Error::CircuitClass { .. })));
        let c = circuit(&[(Label::False, &[]), (Label::And, &[0])], 1);
        assert!(matches!(mcv2_to_2(&c), Err(Error::CircuitClass { .. })));
    }

    #[test]
    fn mcv2_gadget() {
        // AND 0 (FALSE 1), AND 2 (no inputs), OR 3 (0, 2), root AND 4 (3)
        let with = |b_false: bool| {
            if b_false {
                circuit(
                    &[
                        (Label::And, &[1]),
                        (Label::False, &[]),
                        (Label::And, &[5]),
                        (Label::Or, &[0, 2]),
                        (Label::And, &[3]),
                        (Label::False, &[]),
                    ],
                    4,
                )
            } else {
                circuit(
                    &[
                        (Label::And, &[1]),
                        (Label::False, &[]),
                        (Label::And, &[]),
                        (Label::Or, &[0, 2]),
                        (Label::And, &[3]),
                    ],
                    4,
                )
            }
        };
        for b_false in [false, true] {
            let c = with(b_false);
            assert!(c.validate_mcv2().is_valid());
            let truth = c.eval().root;
            assert_eq!(truth, !b_false);
            let out = mcv2_to_2(&c).unwrap();
            let g = &out.game;
            assert!(g.payoff_value_count() <= 2);
            let s_b = out.names.find("s_B").unwrap();
            for (t, l) in out.names.iter() {
                if l.starts_with("t_andfalse") {
                    assert_eq!(g.b(s_b.index, t.index), 1);
                }
            }
            for notion in [Notion::Weak, Notion::Dominance] {
                let r = exhaustive_decide(g, out.target, notion, SearchBudget::default()).unwrap();
                assert_eq!(r.answer, truth, "{notion}");
            }
            assert_eq!(greedy_decide(g, out.target, Notion::Simultaneous).unwrap().answer, truth);
        }
    }

    #[test]
    fn sat_gadget() {
        let x = Lit::pos;
        let sat = Cnf3::new(3, vec![[x(0), x(1), x(2)]]).unwrap();
        let out = sat_to_3weak(&sat);
        let g = &out.game;
        assert!(g.payoff_value_count() <= 3);
        assert_eq!(out.target, StrategyRef::row(0));
        assert_eq!(g.a(0, 0), 2);
        assert!((1..4).all(|j| g.a(0, j) == 0));
        assert!(exhaustive_decide(g, out.target, Notion::Weak, SearchBudget::default()).unwrap().answer);
    }

    #[test]
    fn best_response_binarization() {
        let pennies = Game::new(vec![vec![1, -1], vec![-1, 1]], vec![vec![-1, 1], vec![1, -1]]).unwrap();
        let h = binarize_best_response(&pennies);
        assert_eq!(h.a_rows(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]);
        assert!(h.payoff_value_count() <= 2);
        let flat = binarize_best_response(&Game::constant_sum(vec![vec![4, 4], vec![4, 4]], 8).unwrap());
        assert!((0..2).all(|i| (0..2).all(|j| flat.a(i, j) == 1)));
    }

    #[test]
    fn benchmark_binarization() {
        let g = Game::new(vec![vec![0, 5]], vec![vec![10, 10]]).unwrap();
        let h = binarize_benchmark(&g, BenchmarkPolicy::GlobalMedian);
        assert_eq!((h.a_rows(), h.b_rows()), (vec![vec![0, 0]], vec![vec![1, 1]]));
        let h = binarize_benchmark(&g, BenchmarkPolicy::PerPlayerMedian);
        assert_eq!((h.a_rows(), h.b_rows()), (vec![vec![0, 1]], vec![vec![0, 0]]));
        let flat = Game::constant_sum(vec![vec![3, 3], vec![3, 3]], 6).unwrap();
        let h = binarize_benchmark(&flat, BenchmarkPolicy::default());
        assert!(h.distinct_values() == vec![0]);
        let h = binarize_benchmark(&g, BenchmarkPolicy::Fixed(-1));
        assert!(h.distinct_values() == vec![1]);
    }

    #[test]
    fn policy_names() {
        for p in [
            BenchmarkPolicy::GlobalMedian,
            BenchmarkPolicy::PerPlayerMedian,
            BenchmarkPolicy::Fixed(-3),
        ] {
            assert_eq!(p.to_string().parse::<BenchmarkPolicy>(), Ok(p));
        }
        assert_eq!("median".parse::<BenchmarkPolicy>(), Ok(BenchmarkPolicy::GlobalMedian));
        assert!("mean".parse::<BenchmarkPolicy>().is_err());
    }
}
