//! Single-step elimination semantics for the five domination notions.
//!
//! A step is always checked against the subgame it is applied to: witnesses
//! must be present there and the defining inequalities must hold over the
//! opponent strategies that remain.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::{Game, PlayerRole, StrategyRef, Subgame};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Notion {
    /// Strictly better against every remaining opponent strategy.
    Strict,
    /// At least as good everywhere and strictly better somewhere.
    Dominance,
    /// At least as good everywhere; equal strategies dominate each other.
    Weak,
    /// All dominance-dominated strategies of both players at once.
    Simultaneous,
    /// Not a best reply to any remaining opponent strategy.
    NeverBestResponse,
}

impl Notion {
    pub const ALL: [Notion; 5] = [
        Notion::Strict,
        Notion::Dominance,
        Notion::Weak,
        Notion::Simultaneous,
        Notion::NeverBestResponse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Notion::Strict => "strict",
            Notion::Dominance => "dominance",
            Notion::Weak => "weak",
            Notion::Simultaneous => "simultaneous",
            Notion::NeverBestResponse => "never-best-response",
        }
    }

    /// Notions whose fixed point does not depend on the elimination order.
    pub fn is_order_invariant(self) -> bool {
        matches!(
            self,
            Notion::Strict | Notion::Simultaneous | Notion::NeverBestResponse
        )
    }
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Notion {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "strict" => Ok(Notion::Strict),
            "dominance" => Ok(Notion::Dominance),
            "weak" => Ok(Notion::Weak),
            "simultaneous" => Ok(Notion::Simultaneous),
            "never-best-response" | "nbr" | "response" => Ok(Notion::NeverBestResponse),
            other => Err(format!("unknown notion {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// The dominating strategy of the same player.
    Dominator(usize),
    /// For every remaining opponent strategy, a strictly better own reply:
    /// `(opponent strategy, better strategy)`.
    BetterReplies(Vec<(usize, usize)>),
}

/// Removal of one strategy under Strict, Dominance, Weak or
/// NeverBestResponse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EliminationStep {
    pub notion: Notion,
    pub role: PlayerRole,
    pub eliminated: usize,
    pub witness: Witness,
}

impl EliminationStep {
    pub fn target(&self) -> StrategyRef {
        StrategyRef {
            role: self.role,
            index: self.eliminated,
        }
    }
}

/// One dominated strategy inside a simultaneous step, with the dominator
/// and an opponent strategy where the dominator is strictly better.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DominatedBy {
    pub eliminated: usize,
    pub dominator: usize,
    pub strict_at: usize,
}

/// Removal of every currently dominance-dominated row and column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SimultaneousStep {
    pub rows: Vec<DominatedBy>,
    pub cols: Vec<DominatedBy>,
}

impl SimultaneousStep {
    pub fn side(&self, role: PlayerRole) -> &[DominatedBy] {
        match role {
            PlayerRole::Row => &self.rows,
            PlayerRole::Column => &self.cols,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() && self.cols.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Single(EliminationStep),
    Simultaneous(SimultaneousStep),
}

impl Step {
    pub fn notion(&self) -> Notion {
        match self {
            Step::Single(s) => s.notion,
            Step::Simultaneous(_) => Notion::Simultaneous,
        }
    }

    /// Strategies removed by this step.
    pub fn eliminated(&self) -> Vec<StrategyRef> {
        match self {
            Step::Single(s) => vec![s.target()],
            Step::Simultaneous(s) => s
                .rows
                .iter()
                .map(|d| StrategyRef::row(d.eliminated))
                .chain(s.cols.iter().map(|d| StrategyRef::column(d.eliminated)))
                .collect(),
        }
    }

    pub fn eliminates(&self, target: StrategyRef) -> bool {
        self.eliminated().contains(&target)
    }
}

fn tag(role: PlayerRole) -> char {
    match role {
        PlayerRole::Row => 'r',
        PlayerRole::Column => 'c',
    }
}

/// One line of the trace text format, 1-based.
impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Single(s) => {
                write!(f, "eliminate {} {} by ", s.role, s.eliminated + 1)?;
                match &s.witness {
                    Witness::Dominator(d) => write!(f, "{} {}", s.role, d + 1)?,
                    Witness::BetterReplies(replies) => {
                        let opp = tag(s.role.opponent());
                        let own = tag(s.role);
                        let parts: Vec<String> = replies
                            .iter()
                            .map(|(o, r)| format!("{opp}{}->{own}{}", o + 1, r + 1))
                            .collect();
                        write!(f, "best replies {{{}}}", parts.join(", "))?;
                    }
                }
                write!(f, " [{}]", s.notion)
            }
            Step::Simultaneous(s) => {
                let ids = |v: &[DominatedBy]| {
                    v.iter()
                        .map(|d| (d.eliminated + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                let mut witnesses = Vec::new();
                for role in [PlayerRole::Row, PlayerRole::Column] {
                    let (own, opp) = (tag(role), tag(role.opponent()));
                    for d in s.side(role) {
                        witnesses.push(format!(
                            "{own}{}<{own}{}@{opp}{}",
                            d.eliminated + 1,
                            d.dominator + 1,
                            d.strict_at + 1
                        ));
                    }
                }
                write!(
                    f,
                    "eliminate rows {{{}}} and columns {{{}}} by {{{}}} [simultaneous]",
                    ids(&s.rows),
                    ids(&s.cols),
                    witnesses.join(", ")
                )
            }
        }
    }
}

/// Checks the pairwise relation for Strict, Dominance or Weak.
pub(crate) fn dominates(
    g: &Game,
    s: &Subgame,
    notion: Notion,
    role: PlayerRole,
    dominator: usize,
    dominated: usize,
) -> bool {
    let mut any_better = false;
    for o in s.strategies(role.opponent()) {
        let p = g.payoff(role, dominator, o);
        let q = g.payoff(role, dominated, o);
        match notion {
            Notion::Strict if p <= q => return false,
            Notion::Dominance | Notion::Weak | Notion::Simultaneous if p < q => return false,
            _ => any_better |= p > q,
        }
    }
    match notion {
        Notion::Dominance | Notion::Simultaneous => any_better,
        _ => true,
    }
}

/// First opponent strategy at which `dominator` is strictly better.
fn strict_point(
    g: &Game,
    s: &Subgame,
    role: PlayerRole,
    dominator: usize,
    dominated: usize,
) -> Option<usize> {
    s.strategies(role.opponent())
        .find(|&o| g.payoff(role, dominator, o) > g.payoff(role, dominated, o))
}

/// Least strictly better reply against each remaining opponent strategy, or
/// `None` if `own` is a best reply to something.
pub(crate) fn better_replies(
    g: &Game,
    s: &Subgame,
    role: PlayerRole,
    own: usize,
) -> Option<Vec<(usize, usize)>> {
    s.strategies(role.opponent())
        .map(|o| {
            let mine = g.payoff(role, own, o);
            s.strategies(role)
                .find(|&k| g.payoff(role, k, o) > mine)
                .map(|k| (o, k))
        })
        .collect()
}

/// The least valid witness for removing `(role, own)` among those accepted
/// by `allowed`. Only meaningful for single-step notions.
pub(crate) fn witness_with(
    g: &Game,
    s: &Subgame,
    notion: Notion,
    role: PlayerRole,
    own: usize,
    allowed: impl Fn(usize) -> bool,
) -> Option<Witness> {
    match notion {
        Notion::NeverBestResponse => better_replies(g, s, role, own).map(Witness::BetterReplies),
        Notion::Simultaneous => None,
        _ => s
            .strategies(role)
            .find(|&d| d != own && allowed(d) && dominates(g, s, notion, role, d, own))
            .map(Witness::Dominator),
    }
}

/// Single step removing `target` with the least witness, if one exists.
pub fn step_for(g: &Game, s: &Subgame, notion: Notion, target: StrategyRef) -> Option<EliminationStep> {
    if !s.contains(target) {
        return None;
    }
    witness_with(g, s, notion, target.role, target.index, |_| true).map(|witness| {
        EliminationStep {
            notion,
            role: target.role,
            eliminated: target.index,
            witness,
        }
    })
}

fn simultaneous_step(g: &Game, s: &Subgame) -> SimultaneousStep {
    let side = |role: PlayerRole| -> Vec<DominatedBy> {
        s.strategies(role)
            .filter_map(|k| {
                let d = s
                    .strategies(role)
                    .find(|&d| d != k && dominates(g, s, Notion::Dominance, role, d, k))?;
                let strict_at = strict_point(g, s, role, d, k).expect("dominance has a strict point");
                Some(DominatedBy {
                    eliminated: k,
                    dominator: d,
                    strict_at,
                })
            })
            .collect()
    };
    SimultaneousStep {
        rows: side(PlayerRole::Row),
        cols: side(PlayerRole::Column),
    }
}

/// Every available step in deterministic order: rows ascending, then
/// columns ascending, one step per eliminable strategy with its least
/// witness. For Simultaneous the result holds the single maximal step, or
/// nothing at a fixed point.
pub fn find_candidates(g: &Game, s: &Subgame, notion: Notion) -> Vec<Step> {
    if notion == Notion::Simultaneous {
        let step = simultaneous_step(g, s);
        return if step.is_empty() {
            Vec::new()
        } else {
            vec![Step::Simultaneous(step)]
        };
    }
    [PlayerRole::Row, PlayerRole::Column]
        .into_iter()
        .flat_map(|role| s.strategies(role).map(move |i| StrategyRef { role, index: i }))
        .filter_map(|t| step_for(g, s, notion, t).map(Step::Single))
        .collect()
}

/// The first step [`find_candidates`] would list, computed lazily.
pub fn first_candidate(g: &Game, s: &Subgame, notion: Notion) -> Option<Step> {
    if notion == Notion::Simultaneous {
        return find_candidates(g, s, notion).pop();
    }
    [PlayerRole::Row, PlayerRole::Column]
        .into_iter()
        .flat_map(|role| s.strategies(role).map(move |i| StrategyRef { role, index: i }))
        .find_map(|t| step_for(g, s, notion, t).map(Step::Single))
}

/// Whether the step's witnesses certify its relation in `s`.
pub fn validate_step(g: &Game, s: &Subgame, step: &Step) -> bool {
    if !s.fits(g) {
        return false;
    }
    match step {
        Step::Single(st) => {
            let own = st.role;
            if !s.contains(st.target()) {
                return false;
            }
            match (&st.witness, st.notion) {
                (Witness::Dominator(d), Notion::Strict | Notion::Dominance | Notion::Weak) => {
                    *d != st.eliminated
                        && s.contains(StrategyRef { role: own, index: *d })
                        && dominates(g, s, st.notion, own, *d, st.eliminated)
                }
                (Witness::BetterReplies(replies), Notion::NeverBestResponse) => {
                    let opps: Vec<usize> = s.strategies(own.opponent()).collect();
                    replies.len() == opps.len()
                        && replies.iter().zip(&opps).all(|(&(o, k), &expected)| {
                            o == expected
                                && k != st.eliminated
                                && s.contains(StrategyRef { role: own, index: k })
                                && g.payoff(own, k, o) > g.payoff(own, st.eliminated, o)
                        })
                }
                _ => false,
            }
        }
        Step::Simultaneous(st) => {
            let expected = simultaneous_step(g, s);
            if st.is_empty() {
                return false;
            }
            [PlayerRole::Row, PlayerRole::Column].into_iter().all(|role| {
                let given = st.side(role);
                let wanted: Vec<usize> = expected.side(role).iter().map(|d| d.eliminated).collect();
                given.len() == wanted.len()
                    && given.iter().zip(&wanted).all(|(d, &k)| {
                        d.eliminated == k
                            && d.dominator != k
                            && s.contains(StrategyRef { role, index: d.dominator })
                            && s.contains(StrategyRef {
                                role: role.opponent(),
                                index: d.strict_at,
                            })
                            && dominates(g, s, Notion::Dominance, role, d.dominator, k)
                            && g.payoff(role, d.dominator, d.strict_at) > g.payoff(role, k, d.strict_at)
                    })
            })
        }
    }
}

/// Removes the step's strategies from `s`. Only membership is checked here;
/// use [`validate_step`] for the full relation.
pub fn apply_step(s: &Subgame, step: &Step) -> Result<Subgame> {
    let mut next = s.clone();
    for t in step.eliminated() {
        if !next.contains(t) {
            return Err(Error::InvalidStep);
        }
        next.remove(t);
    }
    if let Step::Single(st) = step {
        let present = |i| s.contains(StrategyRef { role: st.role, index: i });
        let ok = match &st.witness {
            Witness::Dominator(d) => *d != st.eliminated && present(*d),
            Witness::BetterReplies(r) => r.iter().all(|&(_, k)| k != st.eliminated && present(k)),
        };
        if !ok {
            return Err(Error::InvalidStep);
        }
    }
    if next.count(PlayerRole::Row) == 0 || next.count(PlayerRole::Column) == 0 {
        return Err(Error::InvalidStep);
    }
    Ok(next)
}

/// A sequence of validated steps from `initial` to `final_subgame`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTrace {
    pub initial: Subgame,
    pub steps: Vec<Step>,
    pub final_subgame: Subgame,
}

impl EliminationTrace {
    pub fn new(initial: Subgame) -> Self {
        EliminationTrace {
            final_subgame: initial.clone(),
            initial,
            steps: Vec::new(),
        }
    }

    /// Appends a step after checking it against the current end state.
    pub fn push(&mut self, g: &Game, step: Step) -> Result<()> {
        if !validate_step(g, &self.final_subgame, &step) {
            return Err(Error::InvalidStep);
        }
        self.final_subgame = apply_step(&self.final_subgame, &step)?;
        self.steps.push(step);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn eliminated(&self) -> Vec<StrategyRef> {
        self.steps.iter().flat_map(Step::eliminated).collect()
    }

    /// Replays every step from `initial` and checks the recorded end state.
    pub fn validate(&self, g: &Game) -> bool {
        if !self.initial.fits(g) {
            return false;
        }
        let mut s = self.initial.clone();
        for step in &self.steps {
            if !validate_step(g, &s, step) {
                return false;
            }
            match apply_step(&s, step) {
                Ok(next) => s = next,
                Err(_) => return false,
            }
        }
        s == self.final_subgame && self.steps.len() + 2 <= g.rows() + g.cols()
    }

    /// Builds a trace that removes `order` one by one with least witnesses;
    /// `None` if some removal is not justified at its turn.
    pub fn from_order(g: &Game, initial: Subgame, notion: Notion, order: &[StrategyRef]) -> Option<Self> {
        let mut trace = EliminationTrace::new(initial);
        for &t in order {
            let step = step_for(g, &trace.final_subgame, notion, t)?;
            trace.push(g, Step::Single(step)).ok()?;
        }
        Some(trace)
    }

    pub fn to_text(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }
}
