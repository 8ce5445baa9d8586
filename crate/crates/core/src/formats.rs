//! Text formats for games, circuits, graphs and 3-CNF formulas. All indices
//! in files are 1-based; `#` starts a comment except in DIMACS, which uses
//! `c` lines.

use std::fmt::Write as _;

use crate::circuits_graphs::{Cnf3, Digraph, Gate, Label, Lit, MonotoneCircuit};
use crate::error::{Error, Result};
use crate::gadgets::{GadgetOutput, StrategyNames};
use crate::game::{Game, Payoff, PlayerRole, StrategyRef};

/// Non-empty lines with comments stripped, split into tokens, with their
/// 1-based line numbers.
fn token_lines(text: &str, comment: char) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(k, line)| {
            let body = line.split(comment).next().unwrap_or("");
            let tokens: Vec<&str> = body.split_whitespace().collect();
            (!tokens.is_empty()).then_some((k + 1, tokens))
        })
        .collect()
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found {tok:?}")))
}

fn payoff(line: usize, tok: &str) -> Result<Payoff> {
    if tok.contains(['/', '.', 'e', 'E']) {
        return Err(Error::parse(line, format!("payoffs must be integers, found {tok:?}")));
    }
    number(line, tok, "an integer payoff")
}

fn positive(line: usize, tok: &str, what: &str) -> Result<usize> {
    let v: usize = number(line, tok, what)?;
    if v == 0 {
        return Err(Error::parse(line, format!("{what} must be at least 1")));
    }
    Ok(v)
}

fn last_line(lines: &[(usize, Vec<&str>)]) -> usize {
    lines.last().map_or(1, |(l, _)| *l)
}

/// Parses `nfg <n> <m> [constant-sum <c>]` followed by `A` and, unless
/// constant-sum, `B`, each as `n` lines of `m` integers.
pub fn parse_game(text: &str) -> Result<Game> {
    let lines = token_lines(text, '#');
    let Some((l0, header)) = lines.first() else {
        return Err(Error::parse(1, "empty game file"));
    };
    let l0 = *l0;
    if header[0] != "nfg" {
        return Err(Error::parse(l0, format!("expected `nfg`, found {:?}", header[0])));
    }
    let (n, m, c) = match header.as_slice() {
        [_, n, m] => (positive(l0, n, "row count")?, positive(l0, m, "column count")?, None),
        [_, n, m, "constant-sum", c] => (
            positive(l0, n, "row count")?,
            positive(l0, m, "column count")?,
            Some(payoff(l0, c)?),
        ),
        _ => return Err(Error::parse(l0, "expected `nfg <n> <m> [constant-sum <c>]`")),
    };
    let matrices = if c.is_some() { 1 } else { 2 };
    let body = &lines[1..];
    if body.len() < matrices * n {
        return Err(Error::parse(
            last_line(&lines),
            format!("expected {} matrix rows, found {}", matrices * n, body.len()),
        ));
    }
    if let Some((l, _)) = body.get(matrices * n) {
        return Err(Error::parse(*l, "unexpected content after the payoff matrices"));
    }
    let mut rows = Vec::with_capacity(matrices * n);
    for (l, toks) in body {
        if toks.len() != m {
            return Err(Error::parse(*l, format!("expected {m} payoffs, found {}", toks.len())));
        }
        rows.push(toks.iter().map(|t| payoff(*l, t)).collect::<Result<Vec<_>>>()?);
    }
    let b = rows.split_off(n);
    match c {
        Some(c) => Game::constant_sum(rows, c),
        None => Game::new(rows, b),
    }
}

fn write_matrix(out: &mut String, rows: &[Vec<Payoff>]) {
    let width = rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// Uses the constant-sum header whenever the game has one.
pub fn write_game(g: &Game) -> String {
    let mut out = String::new();
    match g.constant_sum_of() {
        Some(c) => {
            writeln!(out, "nfg {} {} constant-sum {c}", g.rows(), g.cols()).unwrap();
            write_matrix(&mut out, &g.a_rows());
        }
        None => {
            writeln!(out, "nfg {} {}", g.rows(), g.cols()).unwrap();
            write_matrix(&mut out, &g.a_rows());
            out.push('\n');
            write_matrix(&mut out, &g.b_rows());
        }
    }
    out
}

/// Name map, target and semantics note carried as comments of a game file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sidecar {
    pub names: Vec<(StrategyRef, String)>,
    pub target: Option<StrategyRef>,
    pub semantics: Option<String>,
}

impl Sidecar {
    /// The strategy carrying `label`, if named.
    pub fn find(&self, label: &str) -> Option<StrategyRef> {
        self.names.iter().find(|(_, l)| l == label).map(|(s, _)| *s)
    }
}

fn role_word(line: usize, tok: &str) -> Result<PlayerRole> {
    match tok {
        "row" => Ok(PlayerRole::Row),
        "column" => Ok(PlayerRole::Column),
        _ => Err(Error::parse(line, format!("expected `row` or `column`, found {tok:?}"))),
    }
}

/// Game file followed by `# name <index> <role> <label>`,
/// `# target <role> <index>` and `# semantics <note>` lines.
pub fn write_gadget(out: &GadgetOutput) -> String {
    let mut text = write_game(&out.game);
    for (s, label) in out.names.iter() {
        writeln!(text, "# name {} {} {label}", s.index + 1, s.role).unwrap();
    }
    writeln!(text, "# target {} {}", out.target.role, out.target.index + 1).unwrap();
    writeln!(text, "# semantics {}", out.semantics).unwrap();
    text
}

/// Reads the sidecar comments of a game file; other comments are ignored.
pub fn parse_sidecar(text: &str) -> Result<Sidecar> {
    let mut side = Sidecar::default();
    for (k, line) in text.lines().enumerate() {
        let l = k + 1;
        let Some(comment) = line.trim_start().strip_prefix('#') else {
            continue;
        };
        let toks: Vec<&str> = comment.split_whitespace().collect();
        match toks.as_slice() {
            ["name", index, role, label] => {
                let index = positive(l, index, "strategy number")? - 1;
                let role = role_word(l, role)?;
                side.names.push((StrategyRef { role, index }, label.to_string()));
            }
            ["target", role, index] => {
                let index = positive(l, index, "strategy number")? - 1;
                side.target = Some(StrategyRef { role: role_word(l, role)?, index });
            }
            ["semantics", ..] => {
                let note = comment.trim_start().strip_prefix("semantics").unwrap_or("").trim();
                side.semantics = Some(note.to_string());
            }
            ["name", ..] | ["target", ..] => {
                return Err(Error::parse(l, "malformed sidecar line"));
            }
            _ => {}
        }
    }
    Ok(side)
}

/// Rebuilds the name map of a sidecar against its game.
pub fn sidecar_names(g: &Game, side: &Sidecar) -> Result<StrategyNames> {
    let mut rows = vec![None; g.rows()];
    let mut cols = vec![None; g.cols()];
    for (s, label) in &side.names {
        let slot = match s.role {
            PlayerRole::Row => rows.get_mut(s.index),
            PlayerRole::Column => cols.get_mut(s.index),
        }
        .ok_or(Error::InvalidTarget(*s))?;
        *slot = Some(label.clone());
    }
    let complete = |v: Vec<Option<String>>| v.into_iter().collect::<Option<Vec<_>>>();
    match (complete(rows), complete(cols)) {
        (Some(rows), Some(cols)) => StrategyNames::new(rows, cols),
        _ => Err(Error::InvalidGame("name map does not cover every strategy".into())),
    }
}

fn vertex_id(line: usize, tok: &str, count: usize) -> Result<usize> {
    let digits = tok.strip_prefix('v').unwrap_or(tok);
    let id = positive(line, digits, "vertex id")?;
    if id > count {
        return Err(Error::parse(line, format!("vertex v{id} exceeds the declared count {count}")));
    }
    Ok(id - 1)
}

/// Parses `mcv <count>`, one line per vertex (`v<id> AND <ids...>`,
/// `v<id> OR <id> <id>`, `v<id> FALSE`) and a final `root v<id>`.
pub fn parse_circuit(text: &str) -> Result<MonotoneCircuit> {
    let lines = token_lines(text, '#');
    let Some((l0, header)) = lines.first() else {
        return Err(Error::parse(1, "empty circuit file"));
    };
    let count = match header.as_slice() {
        ["mcv", n] => positive(*l0, n, "vertex count")?,
        _ => return Err(Error::parse(*l0, "expected `mcv <count>`")),
    };
    let mut gates: Vec<Option<Gate>> = vec![None; count];
    let mut root = None;
    for (l, toks) in &lines[1..] {
        let l = *l;
        if root.is_some() {
            return Err(Error::parse(l, "content after the `root` line"));
        }
        if toks[0] == "root" {
            if toks.len() != 2 {
                return Err(Error::parse(l, "expected `root v<id>`"));
            }
            root = Some(vertex_id(l, toks[1], count)?);
            continue;
        }
        let v = vertex_id(l, toks[0], count)?;
        let label = match toks.get(1).copied() {
            Some("AND") => Label::And,
            Some("OR") => Label::Or,
            Some("FALSE") => Label::False,
            other => {
                return Err(Error::parse(l, format!("expected AND, OR or FALSE, found {other:?}")));
            }
        };
        let inputs = toks[2..]
            .iter()
            .map(|t| vertex_id(l, t, count))
            .collect::<Result<Vec<_>>>()?;
        if gates[v].replace(Gate { label, inputs }).is_some() {
            return Err(Error::parse(l, format!("vertex v{} defined twice", v + 1)));
        }
    }
    let root = root.ok_or_else(|| Error::parse(last_line(&lines), "missing `root` line"))?;
    let gates = gates
        .into_iter()
        .enumerate()
        .map(|(v, g)| g.ok_or_else(|| Error::InvalidCircuit(format!("vertex v{} is not defined", v + 1))))
        .collect::<Result<Vec<_>>>()?;
    MonotoneCircuit::new(gates, root)
}

pub fn write_circuit(c: &MonotoneCircuit) -> String {
    let mut out = format!("mcv {}\n", c.len());
    for (v, gate) in c.gates().iter().enumerate() {
        write!(out, "v{} {}", v + 1, gate.label).unwrap();
        for u in &gate.inputs {
            write!(out, " {}", u + 1).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "root v{}", c.root() + 1).unwrap();
    out
}

/// A digraph with the optional `source` and `target` vertices of its file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Digraph,
    pub source: Option<usize>,
    pub target: Option<usize>,
}

/// Parses `digraph <n>`, `edge <u> <v>` lines and optional `source <s>`,
/// `target <t>`.
pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let lines = token_lines(text, '#');
    let Some((l0, header)) = lines.first() else {
        return Err(Error::parse(1, "empty graph file"));
    };
    let n = match header.as_slice() {
        ["digraph", n] => number::<usize>(*l0, n, "vertex count")?,
        _ => return Err(Error::parse(*l0, "expected `digraph <n>`")),
    };
    let vertex = |l: usize, tok: &str| -> Result<usize> {
        let v = positive(l, tok, "vertex")?;
        if v > n {
            return Err(Error::parse(l, format!("vertex {v} exceeds {n}")));
        }
        Ok(v - 1)
    };
    let mut file = GraphFile {
        graph: Digraph::empty(n),
        source: None,
        target: None,
    };
    for (l, toks) in &lines[1..] {
        let l = *l;
        match toks.as_slice() {
            ["edge", u, v] => {
                let (u, v) = (vertex(l, u)?, vertex(l, v)?);
                if file.graph.has_edge(u, v) {
                    return Err(Error::parse(l, format!("edge {} {} repeats", u + 1, v + 1)));
                }
                file.graph.add_edge(u, v);
            }
            ["source", s] if file.source.is_none() => file.source = Some(vertex(l, s)?),
            ["target", t] if file.target.is_none() => file.target = Some(vertex(l, t)?),
            _ => return Err(Error::parse(l, "expected `edge <u> <v>`, `source <s>` or `target <t>`")),
        }
    }
    Ok(file)
}

pub fn write_graph(file: &GraphFile) -> String {
    let mut out = format!("digraph {}\n", file.graph.vertex_count());
    for (u, v) in file.graph.edges() {
        writeln!(out, "edge {} {}", u + 1, v + 1).unwrap();
    }
    if let Some(s) = file.source {
        writeln!(out, "source {}", s + 1).unwrap();
    }
    if let Some(t) = file.target {
        writeln!(out, "target {}", t + 1).unwrap();
    }
    out
}

/// DIMACS `p cnf <vars> <clauses>` with exactly three literals per clause.
/// Clauses may span lines; each ends with `0`.
pub fn parse_dimacs(text: &str) -> Result<Cnf3> {
    let mut header = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let l = k + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") | Some(&"%") => continue,
            Some(&"p") => {
                if header.is_some() {
                    return Err(Error::parse(l, "second `p` line"));
                }
                let ["p", "cnf", v, c] = toks.as_slice() else {
                    return Err(Error::parse(l, "expected `p cnf <vars> <clauses>`"));
                };
                header = Some((number::<usize>(l, v, "variable count")?, number::<usize>(l, c, "clause count")?));
                continue;
            }
            _ => {}
        }
        let Some((vars, _)) = header else {
            return Err(Error::parse(l, "clause before the `p cnf` line"));
        };
        for tok in toks {
            let lit: i64 = number(l, tok, "a literal")?;
            if lit == 0 {
                let clause: [Lit; 3] = current.as_slice().try_into().map_err(|_| {
                    Error::parse(l, format!("clause {} has {} literals, expected 3", clauses.len() + 1, current.len()))
                })?;
                clauses.push(clause);
                current.clear();
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > vars {
                return Err(Error::parse(l, format!("variable {var} exceeds the declared {vars}")));
            }
            current.push(Lit { var: var - 1, positive: lit > 0 });
        }
    }
    let Some((vars, count)) = header else {
        return Err(Error::parse(1, "missing `p cnf` line"));
    };
    let end = text.lines().count().max(1);
    if !current.is_empty() {
        return Err(Error::parse(end, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(Error::parse(end, format!("declared {count} clauses, found {}", clauses.len())));
    }
    Cnf3::new(vars, clauses)
}

pub fn write_dimacs(f: &Cnf3) -> String {
    let mut out = format!("p cnf {} {}\n", f.var_count(), f.clauses().len());
    for clause in f.clauses() {
        for lit in clause {
            write!(out, "{} ", lit.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits_graphs::{random_mcv, McvFlavor};
    use crate::error::ErrorClass;
    use crate::gadgets::mcv1_to_3z;
    use crate::generate::{random_cnf3, random_digraph, random_game};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn game_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 0..50 {
            let g = random_game(&mut rng, 1 + k % 4, 1 + k % 3, -5..=5);
            assert_eq!(parse_game(&write_game(&g)).unwrap(), g);
        }
        let z = Game::constant_sum(vec![vec![1, -2]], 3).unwrap();
        let text = write_game(&z);
        assert!(text.starts_with("nfg 1 2 constant-sum 3\n"));
        assert_eq!(parse_game(&text).unwrap(), z);
    }

    #[test]
    fn game_parse_details() {
        let g = parse_game("# c\nnfg 2 2  # header\n2 2\n1 1\n\n0 1\n0 1\n").unwrap();
        assert_eq!(g.a_rows(), vec![vec![2, 2], vec![1, 1]]);
        assert_eq!(g.b_rows(), vec![vec![0, 1], vec![0, 1]]);
        let bad = [
            ("", 1),
            ("nfg 1 1\n1/2\n0\n", 2),
            ("nfg 1 1\n1.5\n0\n", 2),
            ("nfg 1 2\n1\n0 0\n", 2),
            ("nfg 1 1\n1\n", 2),
            ("nfg 1 1 constant-sum 0\n1\n2\n", 3),
            ("game 1 1\n", 1),
            ("nfg 0 1\n", 1),
        ];
        for (text, line) in bad {
            match parse_game(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn circuit_round_trip() {
        for seed in 0..30 {
            for flavor in [McvFlavor::Mcv1, McvFlavor::Mcv2] {
                let c = random_mcv(flavor, 12, seed).unwrap();
                assert_eq!(parse_circuit(&write_circuit(&c)).unwrap(), c);
            }
        }
        let c = parse_circuit("mcv 3\nv3 AND v2\nv1 FALSE\nv2 OR 1 1\nroot v3\n");
        assert!(matches!(c, Err(Error::InvalidCircuit(_))));
        let c = parse_circuit("mcv 2\nv1 FALSE\nv2 AND 1\nroot v2\n").unwrap();
        assert_eq!(c.inputs(1), &[0]);
        for text in ["mcv 1\nv1 FALSE\n", "mcv 1\nv2 FALSE\nroot v1\n", "mcv 1\nv1 NOT\nroot v1\n"] {
            assert_eq!(parse_circuit(text).unwrap_err().class(), ErrorClass::Format, "{text:?}");
        }
    }

    #[test]
    fn graph_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..8 {
            let file = GraphFile {
                graph: random_digraph(&mut rng, n, 0.3),
                source: Some(0),
                target: (n > 1).then_some(n - 1),
            };
            assert_eq!(parse_graph(&write_graph(&file)).unwrap(), file);
        }
        assert!(parse_graph("digraph 2\nedge 1 3\n").is_err());
        assert!(parse_graph("digraph 2\nedge 1 2\nedge 1 2\n").is_err());
        assert_eq!(parse_graph("digraph 0\n").unwrap().graph.vertex_count(), 0);
    }

    #[test]
    fn dimacs_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 1..20 {
            let f = random_cnf3(&mut rng, 4, k % 5);
            assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
        }
        let f = parse_dimacs("c hi\np cnf 3 1\n1 -2\n 3 0\n").unwrap();
        assert_eq!(f.clauses()[0], [Lit::pos(0), Lit::neg(1), Lit::pos(2)]);
        assert!(parse_dimacs("p cnf 3 1\n1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
        let subsumed = parse_dimacs("p cnf 3 2\n1 2 3 0\n1 2 3 0\n").unwrap_err();
        assert_eq!(subsumed.class(), ErrorClass::Precondition);
    }

    #[test]
    fn gadget_sidecar_round_trip() {
        let c = random_mcv(McvFlavor::Mcv1, 10, 4).unwrap();
        let out = mcv1_to_3z(&c).unwrap();
        let text = write_gadget(&out);
        assert_eq!(parse_game(&text).unwrap(), out.game);
        let side = parse_sidecar(&text).unwrap();
        assert_eq!(side.target, Some(out.target));
        assert_eq!(side.semantics.as_deref(), Some(out.semantics.as_str()));
        assert_eq!(sidecar_names(&out.game, &side).unwrap(), out.names);
        assert_eq!(side.find("s_B"), Some(StrategyRef::row(0)));
    }
}
