use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use iterelim::circuits_graphs::{random_mcv, McvFlavor};
use iterelim::formats::{parse_game, write_circuit};
use tempfile::TempDir;

fn iterelim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iterelim"))
        .args(args)
        .env_remove("ELIM_BUDGET_STATES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const STRICT_EXAMPLE: &str = "nfg 2 2\n2 2\n1 1\n\n0 1\n0 1\n";

#[test]
fn decide_prints_yes_first() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "g.game", STRICT_EXAMPLE);
    let o = iterelim(&["decide", s(&g), "--notion", "strict", "--target", "r2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "YES\n");

    let o = iterelim(&["decide", s(&g), "--notion", "strict", "--target", "r1", "--trace"]);
    assert_eq!(stdout(&o).lines().next(), Some("NO"));
}

#[test]
fn trace_and_json_follow_the_answer() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "g.game", STRICT_EXAMPLE);
    let o = iterelim(&["decide", s(&g), "--notion", "strict", "--target", "r2", "--trace"]);
    assert_eq!(stdout(&o), "YES\neliminate row 2 by row 1 [strict]\n");

    let o = iterelim(&["decide", s(&g), "--notion", "strict", "--target", "r2", "--json"]);
    let out = stdout(&o);
    let (first, rest) = out.split_once('\n').unwrap();
    assert_eq!(first, "YES");
    let doc: serde_json::Value = serde_json::from_str(rest).unwrap();
    assert_eq!(doc["format"], 1);
    assert_eq!(doc["answer"], "YES");
    assert_eq!(doc["algorithm"], "greedy");
    assert_eq!(doc["trace"][0]["witness"]["dominator"], 1);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "g.game", STRICT_EXAMPLE);
    let o = iterelim(&["decide", s(&g), "--notion", "weak", "--target", "r1", "--algo", "z-weak"]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());

    let o = iterelim(&["decide", s(&g), "--notion", "weak", "--target", "r1", "--algo", "greedy"]);
    assert_eq!(code(&o), 3);

    let big: String = std::iter::once("nfg 30 30\n".to_string())
        .chain((0..60).map(|i| format!("{}\n", vec![(i % 4).to_string(); 30].join(" "))))
        .collect();
    let big = put(&dir, "big.game", &big);
    let o = iterelim(&["decide", s(&big), "--notion", "dominance", "--target", "r1", "--algo", "exhaustive"]);
    assert_eq!(code(&o), 4);

    let bad = put(&dir, "bad.game", "nfg 2 2\n1 2\n");
    let o = iterelim(&["decide", s(&bad), "--notion", "strict", "--target", "r1"]);
    assert_eq!(code(&o), 2);

    let o = iterelim(&["decide", s(&g), "--notion", "strict", "--target", "r9"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn state_budget_comes_from_the_environment() {
    let dir = TempDir::new().unwrap();
    // row 1 is never dominated; every other pair of strategies ties
    let g = put(&dir, "g.game", "nfg 3 3\n9 9 9\n0 0 0\n0 0 0\n\n0 0 0\n0 0 0\n0 0 0\n");
    let run = |states: &str| {
        Command::new(env!("CARGO_BIN_EXE_iterelim"))
            .args(["decide", s(&g), "--notion", "weak", "--target", "r1", "--algo", "exhaustive"])
            .env("ELIM_BUDGET_STATES", states)
            .output()
            .unwrap()
    };
    assert_eq!(stdout(&run("1000")), "NO\n");
    assert_eq!(code(&run("2")), 4);
    assert_eq!(code(&run("0")), 2);
    assert_eq!(code(&run("lots")), 2);
}

#[test]
fn mcv1_gadget_end_to_end() {
    let dir = TempDir::new().unwrap();
    for seed in 0..8 {
        let c = random_mcv(McvFlavor::Mcv1, 10, seed).unwrap();
        let truth = c.eval().root;
        let circuit = put(&dir, "c.mcv", &write_circuit(&c));
        let game = dir.path().join("g.game");
        let o = iterelim(&["gadget", "mcv1-3z", s(&circuit), "-o", s(&game)]);
        assert_eq!(code(&o), 0);
        let out = stdout(&o);
        let target = out.lines().next().unwrap();
        let label = out.lines().nth(1).unwrap().strip_prefix("label ").unwrap();
        for t in [target, label] {
            let o = iterelim(&["decide", s(&game), "--notion", "weak", "--algo", "z-weak", "--target", t]);
            assert_eq!(stdout(&o).lines().next(), Some(if truth { "YES" } else { "NO" }), "seed {seed}");
        }
    }
}

#[test]
fn gadget_validation_failures_exit_3() {
    let dir = TempDir::new().unwrap();
    let cnf = put(&dir, "f.cnf", "p cnf 4 2\n1 2 3 0\n1 2 3 0\n");
    assert_eq!(code(&iterelim(&["gadget", "sat-3weak", s(&cnf)])), 3);

    let mcv = put(&dir, "c.mcv", "mcv 3\nv1 FALSE\nv2 FALSE\nv3 AND 1 2\nroot v3\n");
    assert_eq!(code(&iterelim(&["gadget", "mcv1-3strict", s(&mcv)])), 3);

    let graph = put(&dir, "d.graph", "digraph 2\nedge 1 2\n");
    assert_eq!(code(&iterelim(&["gadget", "cyclereach-2strict", s(&graph)])), 3);
}

#[test]
fn gadget_without_output_writes_the_game() {
    let dir = TempDir::new().unwrap();
    let graph = put(&dir, "d.graph", "digraph 2\nedge 1 2\nedge 2 1\nsource 1\n");
    let o = iterelim(&["gadget", "cyclereach-2strict", s(&graph)]);
    assert_eq!(code(&o), 0);
    let g = parse_game(&stdout(&o)).unwrap();
    assert!(g.payoff_value_count() <= 2);
    assert!(stdout(&o).contains("# target row 2"));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("r2\nlabel s_v1\n"));
}

#[test]
fn binarize_benchmark_has_two_values() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "g.game", "nfg 2 3\n5 9 -2\n7 7 0\n\n1 2 3\n4 5 6\n");
    let b = dir.path().join("b.game");
    for policy in ["median", "per-player-median", "fixed:3"] {
        let o = iterelim(&["gadget", "binarize-benchmark", "--policy", policy, s(&g), "-o", s(&b)]);
        assert_eq!(code(&o), 0);
        let h = parse_game(&fs::read_to_string(&b).unwrap()).unwrap();
        assert!(h.payoff_value_count() <= 2);
    }
    let o = iterelim(&["gadget", "binarize-benchmark", "--policy", "mean", s(&g)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_suites() {
    let o = iterelim(&["verify", "--suite", "deciders", "--seed", "0", "--count", "500", "--max-size", "5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"));

    let o = iterelim(&["verify", "--suite", "order-dependence"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("nfg 3 2"));
    assert_eq!(out.matches("trace ").count(), 2);

    let o = iterelim(&["verify", "--suite", "gadgets", "--count", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "suite gadgets: 0 passed, 0 failed, 0 skipped\n");

    assert_eq!(code(&iterelim(&["verify", "--suite", "everything"])), 2);
}
