//! Deciders that turn strict elimination into peeling sinks off a directed
//! graph whose vertices are strategies.

use super::{check_target, decide_by_order, greedy_decide, Algorithm, DecisionResult};
use crate::circuits_graphs::Digraph;
use crate::error::{Error, Result};
use crate::game::{Game, PlayerRole, StrategyRef};
use crate::relations::Notion;

fn require_values(g: &Game, max: usize) -> Result<()> {
    let found = g.payoff_value_count();
    if found > max {
        return Err(Error::TooManyValues { found, max });
    }
    Ok(())
}

/// Strategies of a 0/1 game in a valid strict elimination order, covering
/// everything strict elimination removes.
fn two_strict_order(h: &Game) -> Vec<StrategyRef> {
    let (n, m) = (h.rows(), h.cols());
    // One round: with an all-1 row present, every all-0 row is strictly
    // dominated by it, and removing rows or columns keeps both properties;
    // likewise for columns. So the round can be applied one by one.
    let full_row = (0..n).any(|i| (0..m).all(|j| h.a(i, j) == 1));
    let full_col = (0..m).any(|j| (0..n).all(|i| h.b(i, j) == 1));
    let rows_out: Vec<bool> = (0..n)
        .map(|i| full_row && (0..m).all(|j| h.a(i, j) == 0))
        .collect();
    let cols_out: Vec<bool> = (0..m)
        .map(|j| full_col && (0..n).all(|i| h.b(i, j) == 0))
        .collect();
    let mut order: Vec<StrategyRef> = (0..n)
        .filter(|&i| rows_out[i])
        .map(StrategyRef::row)
        .chain((0..m).filter(|&j| cols_out[j]).map(StrategyRef::column))
        .collect();

    let rows: Vec<usize> = (0..n).filter(|&i| !rows_out[i]).collect();
    let cols: Vec<usize> = (0..m).filter(|&j| !cols_out[j]).collect();
    let row_of_ones = rows.iter().any(|&i| cols.iter().all(|&j| h.a(i, j) == 1));
    let col_of_ones = cols.iter().any(|&j| rows.iter().all(|&i| h.b(i, j) == 1));
    if !(row_of_ones && col_of_ones) {
        // Without both, the first round already reached the fixed point.
        return order;
    }

    // Vertex k < rows.len() is a row, the rest are columns.
    let r = rows.len();
    let mut edges = Vec::new();
    for (ri, &i) in rows.iter().enumerate() {
        for (cj, &j) in cols.iter().enumerate() {
            if h.a(i, j) == 1 {
                edges.push((ri, r + cj));
            }
            if h.b(i, j) == 1 {
                edges.push((r + cj, ri));
            }
        }
    }
    let graph = Digraph::new(r + cols.len(), edges).expect("vertices in range");
    let (peeled, _) = graph.sink_peeling();
    order.extend(peeled.into_iter().map(|k| {
        if k < r {
            StrategyRef::row(rows[k])
        } else {
            StrategyRef::column(cols[k - r])
        }
    }));
    order
}

/// Strict eliminability for games with at most two payoff values.
///
/// After one round of elimination, if both players keep a strategy paying
/// them 1 everywhere, the remaining strategies form a graph (row `i` to
/// column `j` iff `A_ij = 1`, column `j` to row `i` iff `B_ij = 1`) in which
/// strict elimination removes exactly the vertices that cannot reach a
/// cycle.
pub fn two_strict_graph_decide(g: &Game, target: StrategyRef) -> Result<DecisionResult> {
    check_target(g, target)?;
    require_values(g, 2)?;
    let order = two_strict_order(&g.normalized());
    Ok(decide_by_order(g, Notion::Strict, target, &order, Algorithm::TwoStrictGraph))
}

/// Relabels a constant-sum game with at most three values so that
/// `A` takes values in `{0, 1, 2}` and `B = 2 - A`.
fn three_value_form(g: &Game) -> Result<Game> {
    if g.constant_sum_of().is_none() {
        return Err(Error::NotConstantSum);
    }
    require_values(g, 3)?;
    let values = g.distinct_values();
    let map = |x| {
        let k = values.binary_search(&x).expect("value present") as i64;
        match values.len() {
            1 => 1,
            2 => 2 * k,
            _ => k,
        }
    };
    let h = g.map_payoffs(map, map);
    let conforming = (0..h.rows()).all(|i| (0..h.cols()).all(|j| h.b(i, j) == 2 - h.a(i, j)));
    if !conforming {
        return Err(Error::Normalization(
            "expected B = 2 - A after relabeling the values to 0, 1, 2".into(),
        ));
    }
    Ok(h)
}

/// Elimination order on the graph of potentially eliminable strategies, for
/// a conforming game without an all-2 row or all-0 column.
fn three_z_order(h: &Game) -> Vec<StrategyRef> {
    let (n, m) = (h.rows(), h.cols());
    let r_d: Vec<usize> = (0..n).filter(|&i| (0..m).all(|j| h.a(i, j) != 0)).collect();
    let c_d: Vec<usize> = (0..m).filter(|&j| (0..n).all(|i| h.a(i, j) != 2)).collect();
    let c_e: Vec<usize> = (0..m).filter(|&j| r_d.iter().all(|&i| h.a(i, j) == 2)).collect();
    let r_e: Vec<usize> = (0..n).filter(|&i| c_d.iter().all(|&j| h.a(i, j) == 0)).collect();
    let in_c_e: Vec<bool> = (0..m).map(|j| c_e.contains(&j)).collect();
    let in_r_e: Vec<bool> = (0..n).map(|i| r_e.contains(&i)).collect();

    // Vertex k < r_e.len() is a row of R_E, then columns of C_E.
    let r = r_e.len();
    let mut graph = Digraph::empty(r + c_e.len());
    for (ri, &i) in r_e.iter().enumerate() {
        for (cj, &j) in c_e.iter().enumerate() {
            match h.a(i, j) {
                2 => graph.add_edge(ri, r + cj),
                0 => graph.add_edge(r + cj, ri),
                _ => {}
            }
        }
    }

    // A vertex without a possible dominator points into a 2-cycle so it is
    // never peeled.
    let mut trap: Option<usize> = None;
    let mut attach = |graph: &mut Digraph, v: usize| {
        let t = *trap.get_or_insert_with(|| {
            let p = graph.add_vertex();
            let q = graph.add_vertex();
            graph.add_edge(p, q);
            graph.add_edge(q, p);
            p
        });
        graph.add_edge(v, t);
    };
    for (ri, &i) in r_e.iter().enumerate() {
        let dominated = r_d
            .iter()
            .any(|&d| d != i && (0..m).all(|j| in_c_e[j] || h.a(d, j) > h.a(i, j)));
        if !dominated {
            attach(&mut graph, ri);
        }
    }
    for (cj, &j) in c_e.iter().enumerate() {
        let dominated = c_d
            .iter()
            .any(|&d| d != j && (0..n).all(|i| in_r_e[i] || h.a(i, d) < h.a(i, j)));
        if !dominated {
            attach(&mut graph, r + cj);
        }
    }

    let (peeled, _) = graph.sink_peeling();
    peeled
        .into_iter()
        .filter(|&k| k < r + c_e.len())
        .map(|k| {
            if k < r {
                StrategyRef::row(r_e[k])
            } else {
                StrategyRef::column(c_e[k - r])
            }
        })
        .collect()
}

/// Strict eliminability for constant-sum games with at most three payoff
/// values.
///
/// Rows without a 0 and columns without a 2 are never eliminated; only rows
/// returning 0 against all of the latter and columns returning 2 against
/// all of the former can fall. On those, strict elimination is sink peeling
/// in the graph with row `v` to column `u` iff `A_vu = 2` and `u` to `v` iff
/// `A_vu = 0`, after sending every strategy that lacks a candidate dominator
/// into a cycle. Games with an all-2 row or an all-0 column are decided
/// greedily.
pub fn three_z_strict_graph_decide(g: &Game, target: StrategyRef) -> Result<DecisionResult> {
    check_target(g, target)?;
    let h = three_value_form(g)?;
    let (n, m) = (h.rows(), h.cols());
    let trivial = (0..n).any(|i| (0..m).all(|j| h.a(i, j) == 2))
        || (0..m).any(|j| (0..n).all(|i| h.a(i, j) == 0));
    if trivial {
        let mut r = greedy_decide(g, target, Notion::Strict)?;
        r.algorithm = Algorithm::ThreeZStrictGraph;
        return Ok(r);
    }
    let order = three_z_order(&h);
    Ok(decide_by_order(g, Notion::Strict, target, &order, Algorithm::ThreeZStrictGraph))
}

/// 0/1 best-reply game with an extra always-1 strategy per player, appended
/// as the last row and column.
///
/// `Â_ij = 1` iff row `i` is a best reply to column `j`, `B̂_ij = 1` iff
/// column `j` is a best reply to row `i`. The extra row pays 1 to the row
/// player everywhere and 0 to the column player outside the extra column;
/// symmetrically for the extra column.
pub(crate) fn best_response_game(g: &Game) -> Game {
    let (n, m) = (g.rows(), g.cols());
    let col_max: Vec<_> = (0..m).map(|j| (0..n).map(|i| g.a(i, j)).max().unwrap()).collect();
    let row_max: Vec<_> = (0..n).map(|i| (0..m).map(|j| g.b(i, j)).max().unwrap()).collect();
    Game::from_fn(n + 1, m + 1, |i, j| match (i == n, j == m) {
        (true, true) => (1, 1),
        (true, false) => (1, 0),
        (false, true) => (0, 1),
        (false, false) => (
            (g.a(i, j) == col_max[j]) as i64,
            (g.b(i, j) == row_max[i]) as i64,
        ),
    })
}

/// Never-best-response eliminability, decided as a 2-value strict instance
/// on [`best_response_game`].
pub fn response_decide(g: &Game, target: StrategyRef) -> Result<DecisionResult> {
    check_target(g, target)?;
    let h = best_response_game(g);
    let order: Vec<StrategyRef> = two_strict_order(&h)
        .into_iter()
        .filter(|t| match t.role {
            PlayerRole::Row => t.index < g.rows(),
            PlayerRole::Column => t.index < g.cols(),
        })
        .collect();
    Ok(decide_by_order(g, Notion::NeverBestResponse, target, &order, Algorithm::Response))
}
