//! `iterelim`: decide eliminability, build reduction games and run the
//! randomized verification suites.
//!
//! Exit status: 0 success, 1 verification failure, 2 malformed input,
//! 3 input outside the class the operation accepts, 4 search budget
//! exhausted. The first stdout line of `decide` is exactly `YES` or `NO`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use iterelim::circuits_graphs::CycleReachInstance;
use iterelim::deciders::{auto_algorithm, decide, Algorithm, DecisionResult, SearchBudget};
use iterelim::formats::{
    parse_circuit, parse_dimacs, parse_game, parse_graph, parse_sidecar, write_gadget, write_game,
};
use iterelim::gadgets::{self, BenchmarkPolicy, GadgetOutput};
use iterelim::verify::{run_suite, Suite, VerifyConfig};
use iterelim::{Error, ErrorClass, Game, Notion, PlayerRole, Step, StrategyRef, Witness};
use serde_json::{json, Value};

const BUDGET_VAR: &str = "ELIM_BUDGET_STATES";

#[derive(Parser)]
#[command(name = "iterelim", version, about = "Iterated elimination of dominated strategies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether some elimination sequence removes the target.
    Decide {
        /// Game file.
        file: PathBuf,
        #[arg(long)]
        notion: Notion,
        /// `r<i>` or `c<j>` (1-based), or a strategy label from the file's name map.
        #[arg(long)]
        target: String,
        /// auto, greedy, exhaustive, z-weak, z-dominance, 2z-strict, 2strict-graph,
        /// 3z-strict-graph or response.
        #[arg(long, default_value = "auto")]
        algo: String,
        /// Print the validated elimination sequence after the answer.
        #[arg(long)]
        trace: bool,
        /// Print a JSON document after the answer line.
        #[arg(long)]
        json: bool,
    },
    /// Build a reduction game from a graph, circuit, formula or game.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKind,
        /// Input file: graph for cyclereach-*, circuit for mcv*, DIMACS CNF
        /// for sat-3weak, game for binarize-*.
        input: PathBuf,
        /// Output game file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Threshold for binarize-benchmark: global-median (or median),
        /// per-player-median, fixed:<v>.
        #[arg(long, default_value = "global-median")]
        policy: BenchmarkPolicy,
    },
    /// Run a seeded randomized suite against the brute-force oracles.
    Verify {
        /// Suite to run; all four when omitted.
        #[arg(long)]
        suite: Option<Suite>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetKind {
    #[value(name = "cyclereach-2strict")]
    CycleReach2Strict,
    #[value(name = "cyclereach-3zstrict")]
    CycleReach3ZStrict,
    #[value(name = "mcv1-3z")]
    Mcv13Z,
    #[value(name = "mcv1-3strict")]
    Mcv13Strict,
    #[value(name = "mcv1-4zstrict")]
    Mcv14ZStrict,
    #[value(name = "mcv2-2")]
    Mcv22,
    #[value(name = "sat-3weak")]
    Sat3Weak,
    #[value(name = "binarize-response")]
    BinarizeResponse,
    #[value(name = "binarize-benchmark")]
    BinarizeBenchmark,
}

/// A message and the exit status it maps to.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn format(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }

    fn precondition(msg: impl Into<String>) -> Self {
        Failure { code: 3, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.class() {
            ErrorClass::Format => 2,
            ErrorClass::Precondition => 3,
            ErrorClass::Budget => 4,
        };
        Failure { code, msg: e.to_string() }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::format(format!("{}: {e}", path.display())))
}

fn budget() -> CliResult<SearchBudget> {
    let mut budget = SearchBudget::default();
    if let Ok(v) = std::env::var(BUDGET_VAR) {
        budget.max_states = v
            .trim()
            .parse()
            .ok()
            .filter(|&n: &usize| n > 0)
            .ok_or_else(|| Failure::format(format!("{BUDGET_VAR} must be a positive integer, got {v:?}")))?;
    }
    Ok(budget)
}

/// `r<i>`/`c<j>` first, then labels from the sidecar name map.
fn resolve_target(text: &str, name: &str) -> CliResult<StrategyRef> {
    if let Ok(t) = name.parse::<StrategyRef>() {
        return Ok(t);
    }
    parse_sidecar(text)?
        .find(name)
        .ok_or_else(|| Failure::format(format!("target {name:?} is neither r<i>/c<j> nor a label in the file")))
}

fn step_json(step: &Step) -> Value {
    let side = |role: PlayerRole, s: &iterelim::SimultaneousStep| -> Value {
        s.side(role)
            .iter()
            .map(|d| json!({"eliminated": d.eliminated + 1, "dominator": d.dominator + 1, "strict_at": d.strict_at + 1}))
            .collect()
    };
    match step {
        Step::Single(s) => {
            let witness = match &s.witness {
                Witness::Dominator(d) => json!({"dominator": d + 1}),
                Witness::BetterReplies(r) => {
                    json!({"best_replies": r.iter().map(|(o, b)| json!({"opponent": o + 1, "reply": b + 1})).collect::<Vec<_>>()})
                }
            };
            json!({
                "notion": s.notion.name(),
                "player": s.role.to_string(),
                "eliminated": s.eliminated + 1,
                "witness": witness,
                "text": step.to_string(),
            })
        }
        Step::Simultaneous(s) => json!({
            "notion": "simultaneous",
            "rows": side(PlayerRole::Row, s),
            "columns": side(PlayerRole::Column, s),
            "text": step.to_string(),
        }),
    }
}

fn decision_json(r: &DecisionResult, notion: Notion, target: StrategyRef) -> Value {
    json!({
        "format": 1,
        "answer": if r.answer { "YES" } else { "NO" },
        "notion": notion.name(),
        "target": target.to_string(),
        "algorithm": r.algorithm.name(),
        "trace": r.trace.as_ref().map(|t| t.steps.iter().map(step_json).collect::<Vec<_>>()),
    })
}

fn cmd_decide(file: &Path, notion: Notion, target: &str, algo: &str, trace: bool, json: bool) -> CliResult<()> {
    let text = read(file)?;
    let g = parse_game(&text)?;
    let target = resolve_target(&text, target)?;
    if !g.contains(target) {
        return Err(Error::InvalidTarget(target).into());
    }
    let algorithm = match algo {
        "auto" => auto_algorithm(&g, notion),
        other => other.parse::<Algorithm>().map_err(Failure::format)?,
    };
    let r = decide(&g, target, notion, algorithm, budget()?)?;
    if !r.is_certified(&g, target) {
        return Err(Failure {
            code: 1,
            msg: format!("{algorithm} returned an answer whose trace does not replay"),
        });
    }
    println!("{}", if r.answer { "YES" } else { "NO" });
    if json {
        println!("{:#}", decision_json(&r, notion, target));
    } else if trace {
        if let Some(t) = &r.trace {
            print!("{}", t.to_text());
        }
    }
    Ok(())
}

fn graph_instance(text: &str) -> CliResult<CycleReachInstance> {
    let file = parse_graph(text)?;
    let source = file
        .source
        .ok_or_else(|| Failure::precondition("graph file needs a `source` line"))?;
    Ok(CycleReachInstance::new(file.graph, source)?)
}

fn build_gadget(kind: GadgetKind, text: &str, policy: BenchmarkPolicy) -> CliResult<Result<GadgetOutput, Game>> {
    Ok(match kind {
        GadgetKind::CycleReach2Strict => Ok(gadgets::cyclereach_to_2strict(&graph_instance(text)?)),
        GadgetKind::CycleReach3ZStrict => Ok(gadgets::cyclereach_to_3zstrict(&graph_instance(text)?)),
        GadgetKind::Mcv13Z => Ok(gadgets::mcv1_to_3z(&parse_circuit(text)?)?),
        GadgetKind::Mcv13Strict => Ok(gadgets::mcv1_to_3strict(&parse_circuit(text)?)?),
        GadgetKind::Mcv14ZStrict => Ok(gadgets::mcv1_to_4zstrict(&parse_circuit(text)?)?),
        GadgetKind::Mcv22 => Ok(gadgets::mcv2_to_2(&parse_circuit(text)?)?),
        GadgetKind::Sat3Weak => Ok(gadgets::sat_to_3weak(&parse_dimacs(text)?)),
        GadgetKind::BinarizeResponse => Err(gadgets::binarize_best_response(&parse_game(text)?)),
        GadgetKind::BinarizeBenchmark => Err(gadgets::binarize_benchmark(&parse_game(text)?, policy)),
    })
}

/// With `-o` the target goes to stdout; without it the game does, and the
/// target goes to stderr.
fn cmd_gadget(kind: GadgetKind, input: &Path, output: Option<&Path>, policy: BenchmarkPolicy) -> CliResult<()> {
    let built = build_gadget(kind, &read(input)?, policy)?;
    let (text, summary) = match &built {
        Ok(out) => {
            let label = out.names.label(out.target).unwrap_or("?");
            (write_gadget(out), Some(format!("{}\nlabel {label}\nsemantics {}", out.target, out.semantics)))
        }
        Err(game) => (write_game(game), None),
    };
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::format(format!("{}: {e}", path.display())))?;
            if let Some(s) = summary {
                println!("{s}");
            }
        }
        None => {
            print!("{text}");
            if let Some(s) = summary {
                eprintln!("{s}");
            }
        }
    }
    Ok(())
}

fn cmd_verify(suite: Option<Suite>, cfg: VerifyConfig) -> CliResult<bool> {
    let suites = suite.map_or(Suite::ALL.to_vec(), |s| vec![s]);
    let mut ok = true;
    for s in suites {
        let report = run_suite(s, &cfg);
        print!("{report}");
        ok &= report.all_passed();
    }
    Ok(ok)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Decide {
            file,
            notion,
            target,
            algo,
            trace,
            json,
        } => cmd_decide(&file, notion, &target, &algo, trace, json).map(|()| ExitCode::SUCCESS),
        Command::Gadget {
            kind,
            input,
            output,
            policy,
        } => cmd_gadget(kind, &input, output.as_deref(), policy).map(|()| ExitCode::SUCCESS),
        Command::Verify {
            suite,
            seed,
            count,
            max_size,
        } => {
            let cfg = VerifyConfig {
                seed,
                count,
                max_size,
                budget: budget()?,
            };
            cmd_verify(suite, cfg).map(|ok| if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
