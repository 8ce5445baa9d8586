use super::{check_target, decide_by_order, Algorithm, DecisionResult};
use crate::error::{Error, Result};
use crate::game::{Game, PlayerRole, StrategyRef, Subgame};
use crate::relations::{witness_with, EliminationStep, EliminationTrace, Notion, Step};

fn require_constant_sum(g: &Game) -> Result<()> {
    g.constant_sum_of().map(|_| ()).ok_or(Error::NotConstantSum)
}

/// Repeatedly removes the first strategy accepted by `removable` that has a
/// witness accepted by `witness_ok`, until none is left or `target` falls.
fn restricted_greedy(
    g: &Game,
    notion: Notion,
    target: StrategyRef,
    removable: impl Fn(StrategyRef) -> bool,
    witness_ok: impl Fn(PlayerRole, usize) -> bool,
) -> EliminationTrace {
    let mut trace = EliminationTrace::new(Subgame::full(g));
    while trace.final_subgame.contains(target) {
        let s = &trace.final_subgame;
        let next = [PlayerRole::Row, PlayerRole::Column].into_iter().find_map(|role| {
            s.strategies(role)
                .map(|index| StrategyRef { role, index })
                .filter(|&t| removable(t))
                .find_map(|t| {
                    witness_with(g, s, notion, role, t.index, |d| witness_ok(role, d)).map(|witness| {
                        EliminationStep {
                            notion,
                            role,
                            eliminated: t.index,
                            witness,
                        }
                    })
                })
        });
        match next {
            Some(step) => trace.push(g, Step::Single(step)).expect("witness checked"),
            None => break,
        }
    }
    trace
}

/// Weak eliminability in a constant-sum game.
///
/// A first greedy pass never uses the target as a dominating strategy. That
/// alone is incomplete: a target can need to serve as a witness before it
/// becomes dominated itself (see the tests). So if the first pass keeps the
/// target, one more greedy pass runs per candidate final witness `w`, with
/// unrestricted witnesses and `w` never eliminated; the target is
/// eliminable iff some pass removes it.
pub fn z_weak_decide(g: &Game, target: StrategyRef) -> Result<DecisionResult> {
    check_target(g, target)?;
    require_constant_sum(g)?;
    let first = z_weak_single_pass(g, target);
    if !first.final_subgame.contains(target) {
        return Ok(DecisionResult {
            answer: true,
            trace: Some(first),
            algorithm: Algorithm::ZWeak,
        });
    }
    for w in (0..g.strategy_count(target.role)).filter(|&w| w != target.index) {
        let protected = StrategyRef { role: target.role, index: w };
        let trace = restricted_greedy(g, Notion::Weak, target, |t| t != protected, |_, _| true);
        if !trace.final_subgame.contains(target) {
            return Ok(DecisionResult {
                answer: true,
                trace: Some(trace),
                algorithm: Algorithm::ZWeak,
            });
        }
    }
    Ok(DecisionResult {
        answer: false,
        trace: Some(first),
        algorithm: Algorithm::ZWeak,
    })
}

fn z_weak_single_pass(g: &Game, target: StrategyRef) -> EliminationTrace {
    restricted_greedy(
        g,
        Notion::Weak,
        target,
        |_| true,
        |role, d| !(role == target.role && d == target.index),
    )
}

/// Dominance eliminability in a constant-sum game: for each opponent
/// strategy `x`, greedy elimination of everything except `x` from the full
/// game; YES as soon as one pass removes the target.
pub fn z_dominance_decide(g: &Game, target: StrategyRef) -> Result<DecisionResult> {
    check_target(g, target)?;
    require_constant_sum(g)?;
    let opponent = target.role.opponent();
    for x in 0..g.strategy_count(opponent) {
        let protected = StrategyRef { role: opponent, index: x };
        let trace = restricted_greedy(g, Notion::Dominance, target, |t| t != protected, |_, _| true);
        if !trace.final_subgame.contains(target) {
            return Ok(DecisionResult {
                answer: true,
                trace: Some(trace),
                algorithm: Algorithm::ZDominance,
            });
        }
    }
    Ok(DecisionResult {
        answer: false,
        trace: None,
        algorithm: Algorithm::ZDominance,
    })
}

/// Strict eliminability in a constant-sum game with at most two payoff
/// values, decided in one pass without iterating.
///
/// With the values relabeled to `{0, 1}` (so `B = 1 - A`): if some row of
/// `A` is all 1, exactly the all-0 rows are eliminable; otherwise, if some
/// column is all 0, exactly the all-1 columns; otherwise nothing.
pub fn two_z_strict_decide(g: &Game, target: StrategyRef) -> Result<DecisionResult> {
    check_target(g, target)?;
    require_constant_sum(g)?;
    let values = g.distinct_values();
    if values.len() > 2 {
        return Err(Error::TooManyValues {
            found: values.len(),
            max: 2,
        });
    }
    let no = DecisionResult {
        answer: false,
        trace: None,
        algorithm: Algorithm::TwoZStrict,
    };
    if values.len() == 1 {
        return Ok(no);
    }
    let h = g.normalized();
    if (0..h.rows()).any(|i| (0..h.cols()).any(|j| h.b(i, j) != 1 - h.a(i, j))) {
        return Err(Error::Normalization(
            "the two values must be swapped between the players in every cell".into(),
        ));
    }
    let row_is = |i: usize, v| (0..h.cols()).all(|j| h.a(i, j) == v);
    let col_is = |j: usize, v| (0..h.rows()).all(|i| h.a(i, j) == v);
    let eliminable = if (0..h.rows()).any(|i| row_is(i, 1)) {
        target.role == PlayerRole::Row && row_is(target.index, 0)
    } else if (0..h.cols()).any(|j| col_is(j, 0)) {
        target.role == PlayerRole::Column && col_is(target.index, 1)
    } else {
        false
    };
    if !eliminable {
        return Ok(no);
    }
    Ok(decide_by_order(g, Notion::Strict, target, &[target], Algorithm::TwoZStrict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Payoff;

    fn zs(a: &[&[Payoff]], c: Payoff) -> Game {
        Game::constant_sum(a.iter().map(|r| r.to_vec()).collect(), c).unwrap()
    }

    #[test]
    fn z_weak_examples() {
        let g = zs(&[&[1, 0], &[1, 1]], 1);
        let yes = z_weak_decide(&g, StrategyRef::row(0)).unwrap();
        assert!(yes.answer);
        assert!(yes.is_certified(&g, StrategyRef::row(0)));
        assert!(!z_weak_decide(&g, StrategyRef::row(1)).unwrap().answer);
        assert!(!z_weak_decide(&zs(&[&[5]], 0), StrategyRef::row(0)).unwrap().answer);
    }

    #[test]
    fn target_needed_as_witness() {
        // Column 4 must first remove column 1 before the rows collapse and
        // column 3 ties with it.
        let g = zs(&[&[3, 3, 3, 3], &[4, 1, 2, 0], &[0, 4, 1, 0]], 4);
        let t = StrategyRef::column(3);
        assert!(z_weak_single_pass(&g, t).final_subgame.contains(t));
        let r = z_weak_decide(&g, t).unwrap();
        assert!(r.answer && r.is_certified(&g, t));

        let h = g.transpose_roles();
        let t = StrategyRef::row(3);
        assert!(z_weak_single_pass(&h, t).final_subgame.contains(t));
        assert!(z_weak_decide(&h, t).unwrap().answer);
    }

    #[test]
    fn z_dominance_examples() {
        let g = zs(&[&[1, 0], &[1, 1]], 1);
        let yes = z_dominance_decide(&g, StrategyRef::row(0)).unwrap();
        assert!(yes.answer);
        assert!(yes.is_certified(&g, StrategyRef::row(0)));
        assert!(!z_dominance_decide(&zs(&[&[5]], 0), StrategyRef::row(0)).unwrap().answer);
        let constant = zs(&[&[2, 2], &[2, 2]], 4);
        for t in [StrategyRef::row(0), StrategyRef::row(1), StrategyRef::column(1)] {
            assert!(!z_dominance_decide(&constant, t).unwrap().answer);
        }
    }

    #[test]
    fn zero_sum_deciders_reject_general_games() {
        let g = Game::new(vec![vec![1, 0]], vec![vec![0, 0]]).unwrap();
        assert_eq!(z_weak_decide(&g, StrategyRef::row(0)), Err(Error::NotConstantSum));
        assert_eq!(z_dominance_decide(&g, StrategyRef::row(0)), Err(Error::NotConstantSum));
        assert_eq!(two_z_strict_decide(&g, StrategyRef::row(0)), Err(Error::NotConstantSum));
    }

    #[test]
    fn two_z_strict_examples() {
        let g = zs(&[&[1, 1], &[0, 0]], 1);
        let r = two_z_strict_decide(&g, StrategyRef::row(1)).unwrap();
        assert!(r.answer && r.is_certified(&g, StrategyRef::row(1)));
        for t in [StrategyRef::row(0), StrategyRef::column(0), StrategyRef::column(1)] {
            assert!(!two_z_strict_decide(&g, t).unwrap().answer);
        }

        let diag = zs(&[&[1, 0], &[0, 1]], 1);
        for t in [StrategyRef::row(0), StrategyRef::row(1), StrategyRef::column(0)] {
            assert!(!two_z_strict_decide(&diag, t).unwrap().answer);
        }

        let single_row = zs(&[&[1, 1]], 1);
        assert!(!two_z_strict_decide(&single_row, StrategyRef::row(0)).unwrap().answer);
        assert!(!two_z_strict_decide(&single_row, StrategyRef::column(1)).unwrap().answer);
    }

    #[test]
    fn two_z_strict_columns_and_relabeling() {
        // values {3, 7}: an all-3 column strictly dominates all-7 columns
        let g = zs(&[&[7, 3], &[7, 3]], 10);
        let r = two_z_strict_decide(&g, StrategyRef::column(0)).unwrap();
        assert!(r.answer && r.is_certified(&g, StrategyRef::column(0)));

        let three = zs(&[&[0, 1, 2]], 2);
        assert!(matches!(
            two_z_strict_decide(&three, StrategyRef::row(0)),
            Err(Error::TooManyValues { found: 3, max: 2 })
        ));
        // constant sum 2 with values {0, 2}: cells (0, 2), (2, 0)
        assert!(two_z_strict_decide(&zs(&[&[0, 2]], 2), StrategyRef::row(0)).is_ok());
        // one value: constant-sum, nothing eliminable
        let odd = Game::new(vec![vec![1, 1]], vec![vec![1, 1]]).unwrap();
        assert!(!two_z_strict_decide(&odd, StrategyRef::row(0)).unwrap().answer);
    }
}
