//! Seeded randomized suites comparing the deciders and gadgets with the
//! brute-force oracles, plus structural invariants of games and traces.
//! Every case draws from its own generator, so results depend only on the
//! seed, the case number and the size bound.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuits_graphs::{cycle_reach, random_mcv, sat_brute_force, CycleReachInstance, McvFlavor};
use crate::deciders::{
    exhaustive_decide, greedy_decide, greedy_reduce, minimal_subgames, order_dependence_in, random_reduction,
    reachable_subgames, response_decide, three_z_strict_graph_decide, two_strict_graph_decide, two_z_strict_decide,
    z_dominance_decide, z_weak_decide, DecisionResult,
};
use crate::error::{ErrorClass, Result};
use crate::formats::{parse_game, write_game};
use crate::gadgets::{
    cyclereach_to_2strict, cyclereach_to_3zstrict, mcv1_to_3strict, mcv1_to_3z, mcv1_to_4zstrict, mcv2_to_2,
    sat_to_3weak, GadgetOutput,
};
use crate::game::{Game, StrategyRef, Subgame};
use crate::generate::{random_cnf3, random_constant_sum_game, random_digraph, random_game, random_shape};
use crate::relations::{find_candidates, Notion};
use crate::SearchBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Deciders,
    Gadgets,
    Invariants,
    OrderDependence,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Deciders, Suite::Gadgets, Suite::Invariants, Suite::OrderDependence];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Deciders => "deciders",
            Suite::Gadgets => "gadgets",
            Suite::Invariants => "invariants",
            Suite::OrderDependence => "order-dependence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected deciders, gadgets, invariants or order-dependence"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Number of random cases.
    pub count: usize,
    /// Bound on each side of random games; also scales source instances.
    pub max_size: usize,
    pub budget: SearchBudget,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            count: 100,
            max_size: 5,
            budget: SearchBudget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: usize,
    pub check: String,
    pub detail: String,
    pub game: Option<Game>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: usize,
    pub failed: usize,
    /// Checks not run because an oracle exceeded its budget.
    pub skipped: usize,
    pub first_failure: Option<Failure>,
    /// Informational output, such as a found witness.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            passed: 0,
            failed: 0,
            skipped: 0,
            first_failure: None,
            notes: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, case: usize, check: &str, game: &Game, outcome: Result<Option<String>>) {
        match outcome {
            Ok(None) => self.passed += 1,
            Err(e) if e.class() == ErrorClass::Budget => self.skipped += 1,
            Ok(Some(detail)) => self.fail(case, check, game, detail),
            Err(e) => self.fail(case, check, game, e.to_string()),
        }
    }

    fn fail(&mut self, case: usize, check: &str, game: &Game, detail: String) {
        self.failed += 1;
        self.first_failure.get_or_insert_with(|| Failure {
            case,
            check: check.to_string(),
            detail,
            game: Some(game.clone()),
        });
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} passed, {} failed, {} skipped",
            self.suite, self.passed, self.failed, self.skipped
        )?;
        for note in &self.notes {
            writeln!(f, "{note}")?;
        }
        if let Some(x) = &self.first_failure {
            writeln!(f, "first failure: case {} check {}: {}", x.case, x.check, x.detail)?;
            if let Some(g) = &x.game {
                write!(f, "{}", write_game(g))?;
            }
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let mut report = SuiteReport::new(suite);
    if suite == Suite::OrderDependence {
        fixed_witness(&mut report, cfg);
    }
    for case in 0..cfg.count {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ case as u64);
        match suite {
            Suite::Deciders => deciders_case(&mut report, case, &mut rng, cfg),
            Suite::Gadgets => gadgets_case(&mut report, case, &mut rng, cfg),
            Suite::Invariants => invariants_case(&mut report, case, &mut rng, cfg),
            Suite::OrderDependence => uniqueness_case(&mut report, case, &mut rng, cfg),
        }
    }
    report
}

fn targets(g: &Game) -> Vec<StrategyRef> {
    (0..g.rows())
        .map(StrategyRef::row)
        .chain((0..g.cols()).map(StrategyRef::column))
        .collect()
}

/// Compares `decide` with `oracle` on every target; `None` when all agree
/// and every YES is certified.
fn agree(
    g: &Game,
    decide: impl Fn(StrategyRef) -> Result<DecisionResult>,
    oracle: impl Fn(StrategyRef) -> Result<bool>,
) -> Result<Option<String>> {
    for t in targets(g) {
        let r = decide(t)?;
        if !r.is_certified(g, t) {
            return Ok(Some(format!("uncertified answer for {t}")));
        }
        let expected = oracle(t)?;
        if r.answer != expected {
            return Ok(Some(format!("target {t}: {} answered {}, oracle {}", r.algorithm, r.answer, expected)));
        }
    }
    Ok(None)
}

fn exhaustive_oracle(g: &Game, n: Notion, budget: SearchBudget) -> impl Fn(StrategyRef) -> Result<bool> + '_ {
    move |t| Ok(exhaustive_decide(g, t, n, budget)?.answer)
}

fn greedy_oracle(g: &Game, n: Notion) -> impl Fn(StrategyRef) -> Result<bool> + '_ {
    move |t| Ok(greedy_decide(g, t, n)?.answer)
}

fn deciders_case(report: &mut SuiteReport, case: usize, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    let s = cfg.max_size.max(1);
    let budget = cfg.budget;
    let exhaustive = |g, n| exhaustive_oracle(g, n, budget);
    let greedy = greedy_oracle;

    let (n, m) = random_shape(rng, s, s);
    let g = random_game(rng, n, m, 0..=3);
    for notion in [Notion::Strict, Notion::Simultaneous, Notion::NeverBestResponse] {
        let out = agree(&g, |t| greedy_decide(&g, t, notion), exhaustive(&g, notion));
        report.check(case, &format!("greedy-{notion}"), &g, out);
    }
    let out = agree(&g, |t| response_decide(&g, t), greedy(&g, Notion::NeverBestResponse));
    report.check(case, "response", &g, out);

    let (n, m) = random_shape(rng, s, s);
    let z = random_constant_sum_game(rng, n, m, 0..=4);
    let out = agree(&z, |t| z_weak_decide(&z, t), exhaustive(&z, Notion::Weak));
    report.check(case, "z-weak", &z, out);
    let out = agree(&z, |t| z_dominance_decide(&z, t), exhaustive(&z, Notion::Dominance));
    report.check(case, "z-dominance", &z, out);

    let (n, m) = random_shape(rng, s, s);
    let two = random_game(rng, n, m, 0..=1);
    let out = agree(&two, |t| two_strict_graph_decide(&two, t), greedy(&two, Notion::Strict));
    report.check(case, "2strict-graph", &two, out);

    let (n, m) = random_shape(rng, s, s);
    let three = random_constant_sum_game(rng, n, m, 0..=2);
    let out = agree(&three, |t| three_z_strict_graph_decide(&three, t), greedy(&three, Notion::Strict));
    report.check(case, "3z-strict-graph", &three, out);

    let (n, m) = random_shape(rng, s, s);
    let zz = random_constant_sum_game(rng, n, m, 0..=1);
    let out = agree(&zz, |t| two_z_strict_decide(&zz, t), greedy(&zz, Notion::Strict));
    report.check(case, "2z-strict", &zz, out);
}

fn bound_detail(out: &GadgetOutput, values: usize, constant_sum: Option<i64>) -> Option<String> {
    let found = out.game.payoff_value_count();
    if found > values {
        return Some(format!("{found} payoff values, bound {values}"));
    }
    match constant_sum {
        Some(c) if out.game.constant_sum_of() != Some(c) => Some(format!("not constant-sum {c}")),
        _ => None,
    }
}

/// Anchors present in every reachable subgame that still holds the target.
fn anchors_hold(out: &GadgetOutput, notion: Notion) -> Result<Option<String>> {
    let budget = SearchBudget {
        max_states: 1 << 16,
        max_side_sum: 128,
    };
    let subs = reachable_subgames(&out.game, notion, budget)?;
    for s in subs.iter().filter(|s| s.contains(out.target)) {
        if let Some(a) = out.anchors.iter().find(|&&a| !s.contains(a)) {
            let label = out.names.label(*a).unwrap_or("?");
            return Ok(Some(format!("{notion}: anchor {label} eliminated before the target")));
        }
    }
    Ok(None)
}

fn expect(out: &GadgetOutput, truth: bool, answers: &[(&str, Result<bool>)]) -> Result<Option<String>> {
    for (name, answer) in answers {
        let answer = answer.clone()?;
        if answer != truth {
            return Ok(Some(format!("{name} says {answer}, source says {truth} ({})", out.semantics)));
        }
    }
    Ok(None)
}

fn gadgets_case(report: &mut SuiteReport, case: usize, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    let s = cfg.max_size.max(1);
    let budget = cfg.budget;
    let strict = |o: &GadgetOutput| greedy_decide(&o.game, o.target, Notion::Strict).map(|r| r.answer);
    let exhaustive = |o: &GadgetOutput, n| exhaustive_decide(&o.game, o.target, n, budget).map(|r| r.answer);

    let n = rng.random_range(1..=s);
    let p = rng.random_range(0.05..0.35);
    let graph = random_digraph(rng, n, p);
    for w in 0..n {
        let inst = CycleReachInstance::new(graph.clone(), w).expect("vertex in range");
        let truth = !cycle_reach(&inst);
        for (name, out) in [
            ("cyclereach-2strict", cyclereach_to_2strict(&inst)),
            ("cyclereach-3zstrict", cyclereach_to_3zstrict(&inst)),
        ] {
            let bound = if name.ends_with("2strict") { (2, None) } else { (3, Some(2)) };
            let res = bound_detail(&out, bound.0, bound.1)
                .map_or_else(|| expect(&out, truth, &[("greedy strict", strict(&out))]), |d| Ok(Some(d)));
            report.check(case, name, &out.game, res);
            if w == 0 {
                report.check(case, &format!("{name}-anchors"), &out.game, anchors_hold(&out, Notion::Strict));
            }
        }
    }

    let size = (2 * s + 2).max(4);
    let seed = rng.random();
    let c = random_mcv(McvFlavor::Mcv1, size, seed).expect("size is feasible");
    let truth = c.eval().root;
    let z = mcv1_to_3z(&c).expect("generated circuits are MCV1");
    let res = bound_detail(&z, 3, Some(0)).map_or_else(
        || {
            expect(
                &z,
                truth,
                &[
                    ("z-weak", z_weak_decide(&z.game, z.target).map(|r| r.answer)),
                    ("z-dominance", z_dominance_decide(&z.game, z.target).map(|r| r.answer)),
                    ("greedy simultaneous", greedy_decide(&z.game, z.target, Notion::Simultaneous).map(|r| r.answer)),
                ],
            )
        },
        |d| Ok(Some(d)),
    );
    report.check(case, "mcv1-3z", &z.game, res);
    report.check(case, "mcv1-3z-anchors", &z.game, anchors_hold(&z, Notion::Dominance));
    let st = mcv1_to_3strict(&c).expect("generated circuits are MCV1");
    let res = bound_detail(&st, 3, None).map_or_else(|| expect(&st, truth, &[("greedy strict", strict(&st))]), |d| Ok(Some(d)));
    report.check(case, "mcv1-3strict", &st.game, res);
    report.check(case, "mcv1-3strict-anchors", &st.game, anchors_hold(&st, Notion::Strict));
    if let Ok(f) = mcv1_to_4zstrict(&c) {
        let res = bound_detail(&f, 4, Some(3)).map_or_else(|| expect(&f, truth, &[("greedy strict", strict(&f))]), |d| Ok(Some(d)));
        report.check(case, "mcv1-4zstrict", &f.game, res);
        report.check(case, "mcv1-4zstrict-anchors", &f.game, anchors_hold(&f, Notion::Strict));
    }

    let c = random_mcv(McvFlavor::Mcv2, (2 * s).max(4), rng.random()).expect("size is feasible");
    let truth = c.eval().root;
    let o = mcv2_to_2(&c).expect("generated circuits are MCV2");
    let res = bound_detail(&o, 2, None).map_or_else(
        || {
            expect(
                &o,
                truth,
                &[
                    ("exhaustive weak", exhaustive(&o, Notion::Weak)),
                    ("exhaustive dominance", exhaustive(&o, Notion::Dominance)),
                    ("greedy simultaneous", greedy_decide(&o.game, o.target, Notion::Simultaneous).map(|r| r.answer)),
                ],
            )
        },
        |d| Ok(Some(d)),
    );
    report.check(case, "mcv2-2", &o.game, res);

    let clauses = rng.random_range(1..=3);
    let f = random_cnf3(rng, 3, clauses);
    let o = sat_to_3weak(&f);
    let truth = sat_brute_force(&f).expect("three variables");
    let res = bound_detail(&o, 3, None)
        .map_or_else(|| expect(&o, truth, &[("exhaustive weak", exhaustive(&o, Notion::Weak))]), |d| Ok(Some(d)));
    report.check(case, "sat-3weak", &o.game, res);
}

fn candidates_removed(g: &Game, s: &Subgame, notion: Notion) -> BTreeSet<StrategyRef> {
    find_candidates(g, s, notion).iter().flat_map(|c| c.eliminated()).collect()
}

fn invariants_case(report: &mut SuiteReport, case: usize, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    let s = cfg.max_size.max(1);
    let (n, m) = random_shape(rng, s, s);
    let g = random_game(rng, n, m, 0..=3);
    let full = Subgame::full(&g);
    let nash = g.pure_nash(&full);

    let res = (g.transpose_roles().transpose_roles() != g).then(|| "transpose twice differs".to_string());
    report.check(case, "transpose-involution", &g, Ok(res));
    let res = parse_game(&write_game(&g)).map(|h| (h != g).then(|| "game text round trip differs".to_string()));
    report.check(case, "game-round-trip", &g, res);

    let res = greedy_reduce(&g, Notion::Strict, None).map(|(end, trace)| {
        if !trace.validate(&g) {
            Some("strict trace does not validate".to_string())
        } else if g.pure_nash(&end) != nash {
            Some("strict reduction changed the pure equilibria".to_string())
        } else {
            None
        }
    });
    report.check(case, "nash-strict", &g, res);

    for notion in [Notion::Weak, Notion::Dominance] {
        let res = (0..5).find_map(|k| {
            let trace = random_reduction(&g, notion, rng.random::<u64>() ^ k);
            if !trace.validate(&g) {
                Some(format!("{notion} trace does not validate"))
            } else if !g.pure_nash(&trace.final_subgame).is_subset(&nash) {
                Some(format!("{notion} reduction created a pure equilibrium"))
            } else {
                None
            }
        });
        report.check(case, &format!("nash-{notion}"), &g, Ok(res));
    }

    let strict = candidates_removed(&g, &full, Notion::Strict);
    let dominance = candidates_removed(&g, &full, Notion::Dominance);
    let weak = candidates_removed(&g, &full, Notion::Weak);
    let nbr = candidates_removed(&g, &full, Notion::NeverBestResponse);
    let res = if !strict.is_subset(&dominance) {
        Some("strict candidate that is not dominance-dominated")
    } else if !dominance.is_subset(&weak) {
        Some("dominance candidate that is not weakly dominated")
    } else if !strict.is_subset(&nbr) {
        Some("strictly dominated strategy that is a best reply")
    } else {
        None
    };
    report.check(case, "candidate-inclusions", &g, Ok(res.map(str::to_string)));

    // strictly increasing maps of each matrix keep every relation
    let h = g.map_payoffs(|x| 3 * x + 1, |x| x * x * x - 7);
    let res = Notion::ALL
        .into_iter()
        .find(|&notion| find_candidates(&g, &full, notion) != find_candidates(&h, &full, notion))
        .map(|notion| format!("{notion} candidates change under relabeling"));
    report.check(case, "relabeling", &g, Ok(res));

    let t = g.transpose_roles();
    let res = (0..g.cols()).try_fold(None, |acc, j| {
        let col = greedy_decide(&g, StrategyRef::column(j), Notion::Strict)?.answer;
        let row = greedy_decide(&t, StrategyRef::row(j), Notion::Strict)?.answer;
        Ok(acc.or((col != row).then(|| format!("column {} differs from transposed row", j + 1))))
    });
    report.check(case, "column-symmetry", &g, res);

    let res = greedy_reduce(&g, Notion::Strict, None).and_then(|(end, _)| {
        for seed in 0..3 {
            if greedy_reduce(&g, Notion::Strict, Some(rng.random::<u64>() ^ seed))?.0 != end {
                return Ok(Some("strict fixed point depends on the order".to_string()));
            }
        }
        Ok(None)
    });
    report.check(case, "strict-uniqueness", &g, res);
}

/// The 3x2 game whose dominance reductions end in different subgames.
pub fn order_dependence_example() -> Game {
    Game::new(
        vec![vec![1, 0], vec![1, 2], vec![0, 2]],
        vec![vec![1, 0], vec![1, 1], vec![0, 1]],
    )
    .expect("valid shape")
}

fn fixed_witness(report: &mut SuiteReport, cfg: &VerifyConfig) {
    let g = order_dependence_example();
    let res = order_dependence_in(&g, Notion::Dominance, cfg.budget).map(|w| match w {
        None => Some("no order dependence found".to_string()),
        Some(w) if !(w.first.trace.validate(&g) && w.second.trace.validate(&g)) => {
            Some("witness traces do not validate".to_string())
        }
        Some(w) => {
            report.notes.push(format!("order-dependence witness (dominance):\n{}", write_game(&g).trim_end()));
            for (k, m) in [&w.first, &w.second].into_iter().enumerate() {
                let rows: Vec<String> = m.subgame.rows().map(|i| (i + 1).to_string()).collect();
                let cols: Vec<String> = m.subgame.cols().map(|j| (j + 1).to_string()).collect();
                report.notes.push(format!(
                    "trace {} ends in rows {{{}}} x columns {{{}}}:\n{}",
                    k + 1,
                    rows.join(","),
                    cols.join(","),
                    m.trace.to_text().trim_end()
                ));
            }
            None
        }
    });
    report.check(0, "fixed-witness", &g, res);
}

/// Order-invariant notions must have exactly one minimal subgame.
fn uniqueness_case(report: &mut SuiteReport, case: usize, rng: &mut ChaCha8Rng, cfg: &VerifyConfig) {
    let s = cfg.max_size.clamp(1, 4);
    let (n, m) = random_shape(rng, s, s);
    let g = random_game(rng, n, m, 0..=2);
    for notion in [Notion::Strict, Notion::Simultaneous, Notion::NeverBestResponse] {
        let res = minimal_subgames(&g, notion, cfg.budget).map(|all| {
            (all.len() != 1).then(|| format!("{notion} has {} minimal subgames", all.len()))
        });
        report.check(case, &format!("unique-{notion}"), &g, res);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(count: usize) -> VerifyConfig {
        VerifyConfig {
            count,
            max_size: 4,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn suites_pass_on_small_runs() {
        for suite in Suite::ALL {
            let r = run_suite(suite, &small(15));
            assert!(r.all_passed(), "{r}");
            assert!(r.passed > 0);
        }
    }

    #[test]
    fn empty_run_is_vacuous() {
        let r = run_suite(Suite::Gadgets, &small(0));
        assert_eq!((r.passed, r.failed), (0, 0));
        assert!(r.all_passed());
    }

    #[test]
    fn order_dependence_reports_the_witness() {
        let r = run_suite(Suite::OrderDependence, &small(0));
        assert!(r.all_passed());
        assert_eq!(r.notes.len(), 3);
        assert!(r.notes[0].contains("nfg 3 2"));
    }

    #[test]
    fn runs_are_deterministic() {
        assert_eq!(run_suite(Suite::Invariants, &small(5)), run_suite(Suite::Invariants, &small(5)));
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
    }
}
