use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Directed graph on `0..n` with parallel edges collapsed. Self-loops are
/// kept and count as cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut succ = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            succ[u].push(v);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        Ok(Digraph { succ })
    }

    pub fn empty(n: usize) -> Self {
        Digraph {
            succ: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.succ[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.succ.push(Vec::new());
        self.succ.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if let Err(pos) = self.succ[u].binary_search(&v) {
            self.succ[u].insert(pos, v);
        }
    }

    /// Vertices reachable from `s`, including `s`.
    pub fn reachable_from(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.succ[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Whether `t` is reachable from `s` (a vertex reaches itself).
    pub fn reaches(&self, s: usize, t: usize) -> bool {
        self.reachable_from(s)[t]
    }

    /// Kahn's algorithm restricted to the vertices marked in `within`;
    /// true if that induced subgraph has a cycle.
    fn has_cycle_within(&self, within: &[bool]) -> bool {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for u in (0..n).filter(|&u| within[u]) {
            for &v in &self.succ[u] {
                if within[v] {
                    indeg[v] += 1;
                }
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&u| within[u] && indeg[u] == 0).collect();
        let mut removed = 0;
        while let Some(u) = queue.pop() {
            removed += 1;
            for &v in &self.succ[u] {
                if within[v] {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        queue.push(v);
                    }
                }
            }
        }
        removed < within.iter().filter(|&&x| x).count()
    }

    pub fn is_acyclic(&self) -> bool {
        !self.has_cycle_within(&vec![true; self.vertex_count()])
    }

    /// Repeatedly deletes vertices without remaining successors. Returns the
    /// deletion order and, per vertex, whether it survives; survivors are
    /// exactly the vertices from which a cycle is reachable.
    pub fn sink_peeling(&self) -> (Vec<usize>, Vec<bool>) {
        let n = self.vertex_count();
        let mut pred = vec![Vec::new(); n];
        let mut outdeg = vec![0usize; n];
        for (u, v) in self.edges() {
            pred[v].push(u);
            outdeg[u] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&u| outdeg[u] == 0).collect();
        let mut alive = vec![true; n];
        let mut order = Vec::new();
        while let Some(v) = queue.pop_front() {
            alive[v] = false;
            order.push(v);
            for &u in &pred[v] {
                outdeg[u] -= 1;
                if outdeg[u] == 0 {
                    queue.push_back(u);
                }
            }
        }
        (order, alive)
    }

    /// Splits every edge `u -> v` into `u -> x -> v` with a fresh vertex `x`.
    /// Original vertices keep their numbers and form [`Side::Original`];
    /// inserted vertices follow in edge order. A self-loop `u -> u` becomes
    /// the 4-cycle `u -> x -> y -> z -> u` so the result never has 2-cycles.
    pub fn subdivide_bipartite(&self) -> (Digraph, Vec<Side>) {
        let n = self.vertex_count();
        let mut out = Digraph::empty(n);
        let mut sides = vec![Side::Original; n];
        let mut fresh = |out: &mut Digraph, side: Side| {
            sides.push(side);
            out.add_vertex()
        };
        for (u, v) in self.edges() {
            if u == v {
                let x = fresh(&mut out, Side::Inserted);
                let y = fresh(&mut out, Side::Original);
                let z = fresh(&mut out, Side::Inserted);
                out.add_edge(u, x);
                out.add_edge(x, y);
                out.add_edge(y, z);
                out.add_edge(z, u);
            } else {
                let x = fresh(&mut out, Side::Inserted);
                out.add_edge(u, x);
                out.add_edge(x, v);
            }
        }
        (out, sides)
    }
}

/// Partition class after [`Digraph::subdivide_bipartite`]. Edges always run
/// between the two classes. `Original` also holds the middle vertex of a
/// split self-loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Original,
    Inserted,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleReachInstance {
    pub graph: Digraph,
    pub source: usize,
}

impl CycleReachInstance {
    pub fn new(graph: Digraph, source: usize) -> Result<Self> {
        if source >= graph.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "source {source} out of range for {} vertices",
                graph.vertex_count()
            )));
        }
        Ok(CycleReachInstance { graph, source })
    }
}

/// Whether some vertex on a directed cycle is reachable from the source.
pub fn cycle_reach(inst: &CycleReachInstance) -> bool {
    let reach = inst.graph.reachable_from(inst.source);
    inst.graph.has_cycle_within(&reach)
}

/// Reachability from `s` to `t` in an acyclic graph, re-posed as cycle
/// reachability by adding the edge `t -> s`.
pub fn reach_to_cyclereach(g: &Digraph, s: usize, t: usize) -> Result<CycleReachInstance> {
    if !g.is_acyclic() {
        return Err(Error::CyclicGraph);
    }
    if t >= g.vertex_count() {
        return Err(Error::InvalidGraph(format!("target {t} out of range")));
    }
    let mut graph = g.clone();
    graph.add_edge(t, s);
    CycleReachInstance::new(graph, s)
}
