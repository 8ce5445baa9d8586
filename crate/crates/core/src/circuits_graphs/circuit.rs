use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    And,
    Or,
    False,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::And => "AND",
            Label::Or => "OR",
            Label::False => "FALSE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub label: Label,
    /// Input vertices in order; the order matters for "the x-th input".
    pub inputs: Vec<usize>,
}

/// Monotone circuit over `AND`, `OR` and `FALSE` vertices: acyclic, `FALSE`
/// vertices have no inputs, gates have at most two distinct inputs, and the
/// root is the only vertex that feeds nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneCircuit {
    gates: Vec<Gate>,
    root: usize,
    topo: Vec<usize>,
    consumers: Vec<Vec<usize>>,
}

impl MonotoneCircuit {
    pub fn new(gates: Vec<Gate>, root: usize) -> Result<Self> {
        let n = gates.len();
        if root >= n {
            return Err(Error::InvalidCircuit(format!("root {root} out of range")));
        }
        let mut consumers = vec![Vec::new(); n];
        for (v, gate) in gates.iter().enumerate() {
            if gate.label == Label::False && !gate.inputs.is_empty() {
                return Err(Error::InvalidCircuit(format!("FALSE vertex {v} has inputs")));
            }
            if gate.inputs.len() > 2 {
                return Err(Error::InvalidCircuit(format!(
                    "vertex {v} has in-degree {}",
                    gate.inputs.len()
                )));
            }
            for (k, &u) in gate.inputs.iter().enumerate() {
                if u >= n {
                    return Err(Error::InvalidCircuit(format!("vertex {v} reads missing vertex {u}")));
                }
                if gate.inputs[..k].contains(&u) {
                    return Err(Error::InvalidCircuit(format!("vertex {v} repeats input {u}")));
                }
                consumers[u].push(v);
            }
        }
        let sinks: Vec<usize> = (0..n).filter(|&v| consumers[v].is_empty()).collect();
        if sinks != [root] {
            return Err(Error::InvalidCircuit(format!(
                "root must be the only vertex without consumers, found {sinks:?}"
            )));
        }
        // Kahn order over input -> consumer edges.
        let mut pending: Vec<usize> = gates.iter().map(|g| g.inputs.len()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| pending[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(u) = ready.pop() {
            topo.push(u);
            for &v in &consumers[u] {
                pending[v] -= 1;
                if pending[v] == 0 {
                    ready.push(v);
                }
            }
        }
        if topo.len() < n {
            return Err(Error::InvalidCircuit("circuit contains a cycle".into()));
        }
        Ok(MonotoneCircuit {
            gates,
            root,
            topo,
            consumers,
        })
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn label(&self, v: usize) -> Label {
        self.gates[v].label
    }

    pub fn inputs(&self, v: usize) -> &[usize] {
        &self.gates[v].inputs
    }

    pub fn consumers(&self, v: usize) -> &[usize] {
        &self.consumers[v]
    }

    pub fn is_input_of(&self, u: usize, v: usize) -> bool {
        self.gates[v].inputs.contains(&u)
    }

    pub fn vertices_with(&self, label: Label) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.label(v) == label).collect()
    }

    /// Value of every vertex; an `AND` without inputs is true and an `OR`
    /// without inputs is false.
    pub fn eval(&self) -> CircuitValues {
        let mut values = vec![false; self.len()];
        for &v in &self.topo {
            let gate = &self.gates[v];
            values[v] = match gate.label {
                Label::False => false,
                Label::And => gate.inputs.iter().all(|&u| values[u]),
                Label::Or => gate.inputs.iter().any(|&u| values[u]),
            };
        }
        CircuitValues {
            root: values[self.root],
            values,
        }
    }

    /// Checks the MCV1 normal form.
    pub fn validate_mcv1(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        for (v, gate) in self.gates.iter().enumerate() {
            match gate.label {
                Label::And => {
                    if gate.inputs.iter().any(|&u| self.label(u) != Label::Or) {
                        r.push(format!("AND vertex {v} has a non-OR input"));
                    }
                }
                Label::Or => {
                    if gate.inputs.len() != 2 {
                        r.push(format!("OR vertex {v} has in-degree {}", gate.inputs.len()));
                    }
                    if gate.inputs.iter().any(|&u| self.label(u) == Label::Or) {
                        r.push(format!("OR vertex {v} has an OR input"));
                    }
                }
                Label::False => {
                    let out = &self.consumers[v];
                    if out.len() != 1 || self.label(out[0]) != Label::Or {
                        r.push(format!("FALSE vertex {v} does not feed exactly one OR vertex"));
                    }
                }
            }
        }
        self.check_distinct_inputs(&mut r, |_| true, "share all inputs");
        self.check_root(&mut r);
        for label in [Label::And, Label::Or, Label::False] {
            if self.vertices_with(label).is_empty() {
                r.push(format!("no {label} vertex"));
            }
        }
        r
    }

    /// Checks the MCV2 normal form.
    pub fn validate_mcv2(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        for (v, gate) in self.gates.iter().enumerate() {
            match gate.label {
                Label::And => {
                    if gate.inputs.iter().any(|&u| self.label(u) == Label::And) {
                        r.push(format!("AND vertex {v} has an AND input"));
                    }
                    let falses = gate.inputs.iter().filter(|&&u| self.label(u) == Label::False).count();
                    if falses > 1 {
                        r.push(format!("AND vertex {v} has {falses} FALSE inputs"));
                    }
                }
                Label::Or => {
                    if gate.inputs.len() != 2 {
                        r.push(format!("OR vertex {v} has in-degree {}", gate.inputs.len()));
                    }
                    if gate.inputs.iter().any(|&u| self.label(u) != Label::And) {
                        r.push(format!("OR vertex {v} has a non-AND input"));
                    }
                }
                Label::False => {}
            }
        }
        self.check_root(&mut r);
        if self.inputs(self.root).iter().any(|&u| self.label(u) == Label::False) {
            r.push("root has a FALSE input".to_string());
        }
        let ands = self.vertices_with(Label::And);
        for (k, &x) in ands.iter().enumerate() {
            for &y in &ands[k + 1..] {
                if self.inputs(x).iter().any(|u| self.inputs(y).contains(u)) {
                    r.push(format!("AND vertices {x} and {y} share an input"));
                }
            }
        }
        self.check_distinct_inputs(&mut r, |l| l == Label::Or, "have equal inputs");
        r
    }

    fn check_root(&self, r: &mut ValidationReport) {
        if self.label(self.root) != Label::And {
            r.push("root is not labelled AND".to_string());
        }
    }

    /// Nonempty input sets of the selected vertices must be pairwise distinct.
    fn check_distinct_inputs(&self, r: &mut ValidationReport, select: impl Fn(Label) -> bool, what: &str) {
        let sets: Vec<(usize, BTreeSet<usize>)> = (0..self.len())
            .filter(|&v| select(self.label(v)) && !self.inputs(v).is_empty())
            .map(|v| (v, self.inputs(v).iter().copied().collect()))
            .collect();
        for (k, (x, sx)) in sets.iter().enumerate() {
            for (y, sy) in &sets[k + 1..] {
                if sx == sy {
                    r.push(format!("vertices {x} and {y} {what}"));
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitValues {
    pub values: Vec<bool>,
    pub root: bool,
}

/// Violated clauses of a normal-form check; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    fn push(&mut self, msg: String) {
        self.violations.push(msg);
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn into_result(self, class: &'static str) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::CircuitClass {
                class,
                violations: self.violations,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum McvFlavor {
    Mcv1,
    Mcv2,
}

impl McvFlavor {
    pub fn min_size(self) -> usize {
        4
    }
}

/// Deterministic random circuit in the given normal form with at most
/// `size` vertices.
///
/// Built top-down from the root: pending OR vertices reserve two vertices of
/// budget so every expansion can always be completed, and fresh inputs make
/// input sets distinct without rejection. Sharing of existing vertices is
/// only used where it keeps the graph acyclic and the input sets distinct.
pub fn random_mcv(flavor: McvFlavor, size: usize, seed: u64) -> Result<MonotoneCircuit> {
    if size < flavor.min_size() {
        return Err(Error::InfeasibleSize {
            size,
            min: flavor.min_size(),
        });
    }
    let mut b = Builder {
        rng: ChaCha8Rng::seed_from_u64(seed),
        gates: vec![Gate {
            label: Label::And,
            inputs: Vec::new(),
        }],
        size,
        reserved: 0,
    };
    let mut pending = vec![0usize];
    let mut first = true;
    while !pending.is_empty() {
        let pick = b.rng.random_range(0..pending.len());
        let v = pending.swap_remove(pick);
        let new = match (flavor, b.gates[v].label) {
            (McvFlavor::Mcv1, Label::And) => b.expand_and_mcv1(v, first),
            (McvFlavor::Mcv1, Label::Or) => b.expand_or_mcv1(v),
            (McvFlavor::Mcv2, Label::And) => b.expand_and_mcv2(v, first),
            (McvFlavor::Mcv2, Label::Or) => b.expand_or_mcv2(v),
            (_, Label::False) => Vec::new(),
        };
        first = false;
        pending.extend(new);
    }
    // Renumber so that the root comes last.
    let n = b.gates.len();
    let relabel = |v: usize| n - 1 - v;
    let mut gates: Vec<Gate> = b
        .gates
        .into_iter()
        .rev()
        .map(|g| Gate {
            label: g.label,
            inputs: g.inputs.into_iter().map(relabel).collect(),
        })
        .collect();
    gates.shrink_to_fit();
    MonotoneCircuit::new(gates, relabel(0))
}

struct Builder {
    rng: ChaCha8Rng,
    gates: Vec<Gate>,
    size: usize,
    /// Vertices promised to pending OR gates (two each).
    reserved: usize,
}

impl Builder {
    fn free(&self) -> usize {
        self.size - self.gates.len() - self.reserved
    }

    fn add(&mut self, label: Label) -> usize {
        self.gates.push(Gate {
            label,
            inputs: Vec::new(),
        });
        self.gates.len() - 1
    }

    /// Whether `u` (transitively) consumes `v`, i.e. `v -> ... -> u`.
    /// Edges are stored as inputs on the consumer, so search from `u`
    /// down its inputs.
    fn depends_on(&self, u: usize, v: usize) -> bool {
        let mut stack = vec![u];
        let mut seen = vec![false; self.gates.len()];
        while let Some(x) = stack.pop() {
            if x == v {
                return true;
            }
            if !std::mem::replace(&mut seen[x], true) {
                stack.extend(&self.gates[x].inputs);
            }
        }
        false
    }

    /// Adding `u` as input of `v` is acyclic iff `u` does not depend on `v`.
    fn can_feed(&self, u: usize, v: usize) -> bool {
        u != v && !self.depends_on(u, v) && !self.gates[v].inputs.contains(&u)
    }

    fn input_set_taken(&self, v: usize, inputs: &[usize]) -> bool {
        let set: BTreeSet<usize> = inputs.iter().copied().collect();
        let label = self.gates[v].label;
        self.gates.iter().enumerate().any(|(w, g)| {
            w != v
                && g.label == label
                && !g.inputs.is_empty()
                && g.inputs.iter().copied().collect::<BTreeSet<_>>() == set
        })
    }

    /// A new OR costs itself plus two reserved vertices.
    fn new_or(&mut self) -> usize {
        self.reserved += 2;
        self.add(Label::Or)
    }

    fn expand_and_mcv1(&mut self, v: usize, is_root: bool) -> Vec<usize> {
        let want = if !is_root && self.rng.random_bool(0.2) {
            0
        } else {
            self.rng.random_range(1..=2)
        };
        let mut new = Vec::new();
        for _ in 0..want {
            let shared: Vec<usize> = (0..self.gates.len())
                .filter(|&u| self.gates[u].label == Label::Or && self.can_feed(u, v))
                .collect();
            let can_new = self.free() >= 3;
            let share = !shared.is_empty() && (!can_new || self.rng.random_bool(0.3));
            if share {
                let u = shared[self.rng.random_range(0..shared.len())];
                let mut inputs = self.gates[v].inputs.clone();
                inputs.push(u);
                if !self.input_set_taken(v, &inputs) {
                    self.gates[v].inputs.push(u);
                }
            } else if can_new {
                let u = self.new_or();
                self.gates[v].inputs.push(u);
                new.push(u);
            }
        }
        new
    }

    fn expand_or_mcv1(&mut self, v: usize) -> Vec<usize> {
        self.reserved -= 2;
        let mut new = Vec::new();
        // The first OR always gets a fresh FALSE so every label occurs.
        let needs_false = !self.gates.iter().any(|g| g.label == Label::False);
        for slot in 0..2 {
            let shared: Vec<usize> = (0..self.gates.len())
                .filter(|&u| self.gates[u].label == Label::And && self.can_feed(u, v))
                .collect();
            let mut inputs = self.gates[v].inputs.clone();
            let share_ok = |b: &Self, u: usize| {
                let mut trial = inputs.clone();
                trial.push(u);
                slot == 0 || !b.input_set_taken(v, &trial)
            };
            let candidates: Vec<usize> = shared.into_iter().filter(|&u| share_ok(self, u)).collect();
            let force_false = needs_false && slot == 0;
            let u = if !force_false && !candidates.is_empty() && self.rng.random_bool(0.25) {
                candidates[self.rng.random_range(0..candidates.len())]
            } else if !force_false && self.rng.random_bool(0.6) {
                let u = self.add(Label::And);
                new.push(u);
                u
            } else {
                self.add(Label::False)
            };
            inputs.push(u);
            self.gates[v].inputs = inputs;
        }
        new
    }

    fn expand_and_mcv2(&mut self, v: usize, is_root: bool) -> Vec<usize> {
        let mut new = Vec::new();
        if is_root {
            let k = self.rng.random_range(1..=2);
            for _ in 0..k {
                if self.free() >= 3 || new.is_empty() {
                    let u = self.new_or();
                    self.gates[v].inputs.push(u);
                    new.push(u);
                }
            }
            return new;
        }
        // Up to two inputs: fresh ORs (never shared, inputs must be disjoint)
        // and at most one fresh FALSE.
        let k = self.rng.random_range(0..=2);
        let mut has_false = false;
        for _ in 0..k {
            if !has_false && self.free() >= 1 && self.rng.random_bool(0.4) {
                let u = self.add(Label::False);
                self.gates[v].inputs.push(u);
                has_false = true;
            } else if self.free() >= 3 {
                let u = self.new_or();
                self.gates[v].inputs.push(u);
                new.push(u);
            }
        }
        new
    }

    fn expand_or_mcv2(&mut self, v: usize) -> Vec<usize> {
        self.reserved -= 2;
        let mut new = Vec::new();
        for slot in 0..2 {
            let inputs = self.gates[v].inputs.clone();
            let candidates: Vec<usize> = (0..self.gates.len())
                .filter(|&u| self.gates[u].label == Label::And && self.can_feed(u, v))
                .filter(|&u| {
                    let mut trial = inputs.clone();
                    trial.push(u);
                    slot == 0 || !self.input_set_taken(v, &trial)
                })
                .collect();
            let u = if !candidates.is_empty() && self.rng.random_bool(0.3) {
                candidates[self.rng.random_range(0..candidates.len())]
            } else {
                let u = self.add(Label::And);
                new.push(u);
                u
            };
            self.gates[v].inputs.push(u);
        }
        new
    }
}
