//! Acceptance run: one PASS/FAIL line per criterion, each with its corpus
//! size and time limit. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use iterelim::circuits_graphs::{cycle_reach, random_mcv, sat_brute_force, CycleReachInstance, McvFlavor};
use iterelim::deciders::{
    exhaustive_decide, greedy_decide, greedy_reduce, order_dependence_in, random_reduction, response_decide,
    three_z_strict_graph_decide, two_strict_graph_decide, two_z_strict_decide, z_dominance_decide, z_weak_decide,
    DecisionResult,
};
use iterelim::gadgets::{
    binarize_benchmark, cyclereach_to_2strict, cyclereach_to_3zstrict, mcv1_to_3strict, mcv1_to_3z,
    mcv1_to_4zstrict, mcv2_to_2, sat_to_3weak, BenchmarkPolicy, GadgetOutput,
};
use iterelim::generate::{
    random_cnf3, random_constant_sum_game, random_digraph, random_game, random_shape, random_two_value_game,
};
use iterelim::formats::write_game;
use iterelim::{Game, Notion, Result, SearchBudget, StrategyRef, Subgame};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;
type Criterion = (u32, fn() -> Outcome, Duration);

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x00ac_ce97 + criterion)
}

fn rows(g: &Game) -> impl Iterator<Item = StrategyRef> {
    (0..g.rows()).map(StrategyRef::row)
}

fn all_targets(g: &Game) -> impl Iterator<Item = StrategyRef> {
    (0..g.rows())
        .map(StrategyRef::row)
        .chain((0..g.cols()).map(StrategyRef::column))
}

fn answer(g: &Game, t: StrategyRef, r: Result<DecisionResult>) -> std::result::Result<bool, String> {
    let r = r.map_err(|e| format!("target {t}: {e}"))?;
    if !r.is_certified(g, t) {
        return Err(format!("target {t}: {} gave an uncertified answer", r.algorithm));
    }
    Ok(r.answer)
}

fn same(what: &str, case: usize, g: &Game, t: StrategyRef, got: bool, want: bool) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: case {case} target {t}: got {got}, expected {want}\n{}", write_game(g)))
    }
}

fn exhaustive(g: &Game, t: StrategyRef, n: Notion) -> std::result::Result<bool, String> {
    answer(g, t, exhaustive_decide(g, t, n, SearchBudget::default()))
}

fn greedy(g: &Game, t: StrategyRef, n: Notion) -> std::result::Result<bool, String> {
    answer(g, t, greedy_decide(g, t, n))
}

fn c1() -> Outcome {
    let mut rng = rng(1);
    for case in 0..1000 {
        let (n, m) = random_shape(&mut rng, 6, 6);
        let g = random_game(&mut rng, n, m, 0..=3);
        let (end, _) = greedy_reduce(&g, Notion::Strict, None).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let other = greedy_reduce(&g, Notion::Strict, Some(rng.random())).map_err(|e| e.to_string())?.0;
            if other != end {
                return Err(format!("case {case}: tie orders reach different subgames"));
            }
        }
        for t in rows(&g) {
            same("greedy vs exhaustive", case, &g, t, greedy(&g, t, Notion::Strict)?, exhaustive(&g, t, Notion::Strict)?)?;
        }
    }
    Ok("1000 games, 10 tie orders each".into())
}

fn constant_sum_corpus() -> Vec<Game> {
    let mut rng = rng(2);
    (0..500)
        .map(|_| {
            let (n, m) = random_shape(&mut rng, 5, 5);
            random_constant_sum_game(&mut rng, n, m, 0..=4)
        })
        .collect()
}

fn c2() -> Outcome {
    for (case, g) in constant_sum_corpus().iter().enumerate() {
        for t in rows(g) {
            same("z-weak", case, g, t, answer(g, t, z_weak_decide(g, t))?, exhaustive(g, t, Notion::Weak)?)?;
        }
    }
    Ok("500 constant-sum games".into())
}

fn c3() -> Outcome {
    for (case, g) in constant_sum_corpus().iter().enumerate() {
        for t in rows(g) {
            same("z-dominance", case, g, t, answer(g, t, z_dominance_decide(g, t))?, exhaustive(g, t, Notion::Dominance)?)?;
        }
    }
    Ok("500 constant-sum games".into())
}

fn c4() -> Outcome {
    for bits in 0u32..512 {
        let a: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| ((bits >> (3 * i + j)) & 1) as i64).collect()).collect();
        let g = Game::constant_sum(a, 1).map_err(|e| e.to_string())?;
        for t in all_targets(&g) {
            same("2z-strict", bits as usize, &g, t, answer(&g, t, two_z_strict_decide(&g, t))?, greedy(&g, t, Notion::Strict)?)?;
        }
    }
    Ok("all 512 games".into())
}

fn c5() -> Outcome {
    let mut rng = rng(5);
    for case in 0..1000 {
        let (n, m) = random_shape(&mut rng, 6, 6);
        let g = random_two_value_game(&mut rng, n, m);
        for t in all_targets(&g) {
            same("2strict graph", case, &g, t, answer(&g, t, two_strict_graph_decide(&g, t))?, greedy(&g, t, Notion::Strict)?)?;
        }
    }
    for case in 0..1000 {
        let (n, m) = random_shape(&mut rng, 5, 5);
        let g = random_constant_sum_game(&mut rng, n, m, 0..=2);
        for t in all_targets(&g) {
            same("3z-strict graph", case, &g, t, answer(&g, t, three_z_strict_graph_decide(&g, t))?, greedy(&g, t, Notion::Strict)?)?;
        }
    }
    Ok("1000 two-value and 1000 three-value constant-sum games".into())
}

fn c6() -> Outcome {
    let mut rng = rng(6);
    for case in 0..500 {
        let (n, m) = random_shape(&mut rng, 6, 6);
        let g = random_game(&mut rng, n, m, 0..=3);
        for t in all_targets(&g) {
            same("response", case, &g, t, answer(&g, t, response_decide(&g, t))?, greedy(&g, t, Notion::NeverBestResponse)?)?;
        }
    }
    Ok("500 games".into())
}

fn gadget_answer(out: &GadgetOutput, r: Result<DecisionResult>) -> std::result::Result<bool, String> {
    answer(&out.game, out.target, r)
}

fn bounds(case: usize, name: &str, out: &GadgetOutput, values: usize, sum: Option<i64>) -> std::result::Result<(), String> {
    let found = out.game.payoff_value_count();
    if found > values {
        return Err(format!("{name}: case {case}: {found} payoff values, bound {values}"));
    }
    if sum.is_some() && out.game.constant_sum_of() != sum {
        return Err(format!("{name}: case {case}: not constant-sum {sum:?}"));
    }
    Ok(())
}

fn c7() -> Outcome {
    let mut rng = rng(7);
    let mut checks = 0;
    for case in 0..300 {
        let n = rng.random_range(1..=10);
        let p = rng.random_range(0.05..0.4);
        let graph = random_digraph(&mut rng, n, p);
        for w in 0..n {
            let inst = CycleReachInstance::new(graph.clone(), w).map_err(|e| e.to_string())?;
            let truth = !cycle_reach(&inst);
            for (name, out, values, sum) in [
                ("2strict gadget", cyclereach_to_2strict(&inst), 2, None),
                ("3z-strict gadget", cyclereach_to_3zstrict(&inst), 3, Some(2)),
            ] {
                bounds(case, name, &out, values, sum)?;
                let got = gadget_answer(&out, greedy_decide(&out.game, out.target, Notion::Strict))?;
                same(name, case, &out.game, out.target, got, truth)?;
                checks += 1;
            }
        }
    }
    Ok(format!("300 digraphs, {checks} gadget instances"))
}

fn c8() -> Outcome {
    let mut rng = rng(8);
    let (mut trues, mut four) = (0, 0);
    for case in 0..200 {
        let c = random_mcv(McvFlavor::Mcv1, 14, rng.random()).map_err(|e| e.to_string())?;
        let truth = c.eval().root;
        trues += truth as usize;
        let z = mcv1_to_3z(&c).map_err(|e| e.to_string())?;
        bounds(case, "3-Z gadget", &z, 3, Some(0))?;
        for (name, r) in [
            ("z-weak", z_weak_decide(&z.game, z.target)),
            ("z-dominance", z_dominance_decide(&z.game, z.target)),
            ("simultaneous", greedy_decide(&z.game, z.target, Notion::Simultaneous)),
        ] {
            same(name, case, &z.game, z.target, gadget_answer(&z, r)?, truth)?;
        }
        let s = mcv1_to_3strict(&c).map_err(|e| e.to_string())?;
        bounds(case, "3-Strict gadget", &s, 3, None)?;
        same("3-Strict", case, &s.game, s.target, gadget_answer(&s, greedy_decide(&s.game, s.target, Notion::Strict))?, truth)?;
        if let Ok(f) = mcv1_to_4zstrict(&c) {
            four += 1;
            bounds(case, "4-Z-Strict gadget", &f, 4, Some(3))?;
            same("4-Z-Strict", case, &f.game, f.target, gadget_answer(&f, greedy_decide(&f.game, f.target, Notion::Strict))?, truth)?;
        }
    }
    Ok(format!("200 circuits ({trues} true), 4-Z-Strict on the {four} with two or more OR vertices"))
}

fn c9() -> Outcome {
    let mut rng = rng(9);
    let mut trues = 0;
    for case in 0..100 {
        let c = random_mcv(McvFlavor::Mcv2, 12, rng.random()).map_err(|e| e.to_string())?;
        let truth = c.eval().root;
        trues += truth as usize;
        let o = mcv2_to_2(&c).map_err(|e| e.to_string())?;
        bounds(case, "MCV2 gadget", &o, 2, None)?;
        let weak = exhaustive(&o.game, o.target, Notion::Weak)?;
        let dominance = exhaustive(&o.game, o.target, Notion::Dominance)?;
        let sim = greedy(&o.game, o.target, Notion::Simultaneous)?;
        if weak != dominance || weak != sim {
            return Err(format!("case {case}: answers differ (weak {weak}, dominance {dominance}, simultaneous {sim})"));
        }
        same("MCV2", case, &o.game, o.target, weak, truth)?;
    }
    Ok(format!("100 circuits ({trues} true)"))
}

fn c10() -> Outcome {
    let mut rng = rng(10);
    let mut slowest = Duration::ZERO;
    for case in 0..60 {
        let f = random_cnf3(&mut rng, 3, 1 + case % 3);
        let o = sat_to_3weak(&f);
        bounds(case, "3SAT gadget", &o, 3, None)?;
        let start = Instant::now();
        let got = exhaustive(&o.game, o.target, Notion::Weak)?;
        slowest = slowest.max(start.elapsed());
        same("3SAT", case, &o.game, o.target, got, sat_brute_force(&f).map_err(|e| e.to_string())?)?;
    }
    if slowest > Duration::from_secs(30) {
        return Err(format!("slowest instance took {slowest:.2?}, limit 30s"));
    }
    Ok(format!("60 formulas, slowest {slowest:.2?}"))
}

fn c11() -> Outcome {
    let g = Game::new(
        vec![vec![1, 0], vec![1, 2], vec![0, 2]],
        vec![vec![1, 0], vec![1, 1], vec![0, 1]],
    )
    .map_err(|e| e.to_string())?;
    let w = order_dependence_in(&g, Notion::Dominance, SearchBudget::default())
        .map_err(|e| e.to_string())?
        .ok_or("no witness found")?;
    if !(w.first.trace.validate(&g) && w.second.trace.validate(&g)) {
        return Err("witness traces do not validate".into());
    }
    if w.first.trace.final_subgame != w.first.subgame || w.second.trace.final_subgame != w.second.subgame {
        return Err("traces do not end in the reported subgames".into());
    }
    Ok(format!(
        "minimal subgames of {} and {} strategies",
        w.first.subgame.count(iterelim::PlayerRole::Row) + w.first.subgame.count(iterelim::PlayerRole::Column),
        w.second.subgame.count(iterelim::PlayerRole::Row) + w.second.subgame.count(iterelim::PlayerRole::Column)
    ))
}

fn c12() -> Outcome {
    let mut rng = rng(12);
    for case in 0..500 {
        let (n, m) = random_shape(&mut rng, 5, 5);
        let g = random_game(&mut rng, n, m, 0..=3);
        let nash = g.pure_nash(&Subgame::full(&g));
        let (end, _) = greedy_reduce(&g, Notion::Strict, None).map_err(|e| e.to_string())?;
        if g.pure_nash(&end) != nash {
            return Err(format!("case {case}: strict reduction changed the pure equilibria\n{}", write_game(&g)));
        }
        for k in 0..5 {
            let notion = if k % 2 == 0 { Notion::Weak } else { Notion::Dominance };
            let trace = random_reduction(&g, notion, rng.random());
            if !trace.validate(&g) || !g.pure_nash(&trace.final_subgame).is_subset(&nash) {
                return Err(format!("case {case}: {notion} sequence {k} breaks equilibrium inclusion\n{}", write_game(&g)));
            }
        }
    }
    Ok("500 games, 5 sequences each".into())
}

fn c13() -> Outcome {
    let mut rng = rng(13);
    let g = random_game(&mut rng, 200, 200, 0..=99);
    let start = Instant::now();
    let h = binarize_benchmark(&g, BenchmarkPolicy::GlobalMedian);
    let (end, trace) = greedy_reduce(&h, Notion::Strict, None).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if h.payoff_value_count() > 2 {
        return Err(format!("{} payoff values after binarization", h.payoff_value_count()));
    }
    if took > Duration::from_secs(2) {
        return Err(format!("binarize and reduce took {took:.2?}"));
    }
    Ok(format!(
        "200x200, {} steps, {}x{} left",
        trace.len(),
        end.count(iterelim::PlayerRole::Row),
        end.count(iterelim::PlayerRole::Column)
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, c1, Duration::from_secs(30)),
        (2, c2, Duration::from_secs(60)),
        (3, c3, Duration::from_secs(60)),
        (4, c4, Duration::from_secs(5)),
        (5, c5, Duration::from_secs(60)),
        (6, c6, Duration::from_secs(30)),
        (7, c7, Duration::from_secs(60)),
        (8, c8, Duration::from_secs(120)),
        (9, c9, Duration::from_secs(300)),
        (10, c10, Duration::from_secs(900)),
        (11, c11, Duration::from_secs(1)),
        (12, c12, Duration::from_secs(60)),
        (13, c13, Duration::from_secs(2)),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (n, run, limit) in criteria {
        if only.is_some_and(|k| k != n) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {n}: PASS {detail} ({took:.2?}, limit {limit:?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL {why} ({took:.2?}, limit {limit:?})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
