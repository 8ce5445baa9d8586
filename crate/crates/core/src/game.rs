//! Two-player normal-form games with integer payoffs, subgames over the
//! original strategy numbering, and the class predicates used to route a game
//! to a specialized decider.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub type Payoff = i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlayerRole {
    Row,
    Column,
}

impl PlayerRole {
    pub fn opponent(self) -> PlayerRole {
        match self {
            PlayerRole::Row => PlayerRole::Column,
            PlayerRole::Column => PlayerRole::Row,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PlayerRole::Row => "row",
            PlayerRole::Column => "column",
        }
    }
}

impl fmt::Display for PlayerRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single strategy of one player, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyRef {
    pub role: PlayerRole,
    pub index: usize,
}

impl StrategyRef {
    pub fn row(index: usize) -> Self {
        StrategyRef {
            role: PlayerRole::Row,
            index,
        }
    }

    pub fn column(index: usize) -> Self {
        StrategyRef {
            role: PlayerRole::Column,
            index,
        }
    }
}

/// Displays 1-based, `r3` / `c1`.
impl fmt::Display for StrategyRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.role {
            PlayerRole::Row => 'r',
            PlayerRole::Column => 'c',
        };
        write!(f, "{}{}", tag, self.index + 1)
    }
}

impl std::str::FromStr for StrategyRef {
    type Err = String;

    /// Parses the 1-based `r<i>` / `c<j>` notation.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (role, rest) = match s.chars().next() {
            Some('r') | Some('R') => (PlayerRole::Row, &s[1..]),
            Some('c') | Some('C') => (PlayerRole::Column, &s[1..]),
            _ => return Err(format!("expected r<i> or c<j>, got {s:?}")),
        };
        let index: usize = rest
            .parse()
            .map_err(|_| format!("bad strategy number in {s:?}"))?;
        if index == 0 {
            return Err("strategy numbers start at 1".to_string());
        }
        Ok(StrategyRef {
            role,
            index: index - 1,
        })
    }
}

/// Payoff matrices `A` (row player) and `B` (column player), row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Game {
    rows: usize,
    cols: usize,
    a: Vec<Payoff>,
    b: Vec<Payoff>,
}

impl Game {
    pub fn new(a: Vec<Vec<Payoff>>, b: Vec<Vec<Payoff>>) -> Result<Self> {
        let rows = a.len();
        if rows == 0 {
            return Err(Error::InvalidGame("game needs at least one row".into()));
        }
        let cols = a[0].len();
        if cols == 0 {
            return Err(Error::InvalidGame("game needs at least one column".into()));
        }
        if b.len() != rows {
            return Err(Error::InvalidGame(format!(
                "A has {rows} rows but B has {}",
                b.len()
            )));
        }
        for (i, (ra, rb)) in a.iter().zip(&b).enumerate() {
            if ra.len() != cols || rb.len() != cols {
                return Err(Error::InvalidGame(format!(
                    "row {} does not have {cols} entries in both matrices",
                    i + 1
                )));
            }
        }
        Ok(Game {
            rows,
            cols,
            a: a.into_iter().flatten().collect(),
            b: b.into_iter().flatten().collect(),
        })
    }

    /// Builds `B = c - A`.
    pub fn constant_sum(a: Vec<Vec<Payoff>>, c: Payoff) -> Result<Self> {
        let b = a
            .iter()
            .map(|row| row.iter().map(|&x| c - x).collect())
            .collect();
        Game::new(a, b)
    }

    /// Builds a game from `(A_ij, B_ij)` for every cell.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> (Payoff, Payoff),
    ) -> Self {
        assert!(rows > 0 && cols > 0, "empty game");
        let mut a = Vec::with_capacity(rows * cols);
        let mut b = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let (x, y) = f(i, j);
                a.push(x);
                b.push(y);
            }
        }
        Game { rows, cols, a, b }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn strategy_count(&self, role: PlayerRole) -> usize {
        match role {
            PlayerRole::Row => self.rows,
            PlayerRole::Column => self.cols,
        }
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> Payoff {
        self.a[i * self.cols + j]
    }

    #[inline]
    pub fn b(&self, i: usize, j: usize) -> Payoff {
        self.b[i * self.cols + j]
    }

    /// Payoff to `role` when it plays `own` against the opponent's `opp`.
    #[inline]
    pub fn payoff(&self, role: PlayerRole, own: usize, opp: usize) -> Payoff {
        match role {
            PlayerRole::Row => self.a(own, opp),
            PlayerRole::Column => self.b(opp, own),
        }
    }

    pub fn a_rows(&self) -> Vec<Vec<Payoff>> {
        self.a.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn b_rows(&self) -> Vec<Vec<Payoff>> {
        self.b.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn contains(&self, s: StrategyRef) -> bool {
        s.index < self.strategy_count(s.role)
    }

    /// Number of distinct values across both matrices.
    pub fn payoff_value_count(&self) -> usize {
        self.distinct_values().len()
    }

    /// Sorted distinct values across both matrices.
    pub fn distinct_values(&self) -> Vec<Payoff> {
        let set: BTreeSet<Payoff> = self.a.iter().chain(&self.b).copied().collect();
        set.into_iter().collect()
    }

    /// `Some(c)` when `A_ij + B_ij = c` in every cell.
    pub fn constant_sum_of(&self) -> Option<Payoff> {
        let c = self.a[0] + self.b[0];
        self.a
            .iter()
            .zip(&self.b)
            .all(|(x, y)| x + y == c)
            .then_some(c)
    }

    /// `A_ij = A_kl` exactly when `B_ij = B_kl`, i.e. the cell-wise map from
    /// A-values to B-values is a well-defined bijection.
    pub fn jointly_varying(&self) -> bool {
        let mut forward: HashMap<Payoff, Payoff> = HashMap::new();
        let mut backward: HashMap<Payoff, Payoff> = HashMap::new();
        for (&x, &y) in self.a.iter().zip(&self.b) {
            if *forward.entry(x).or_insert(y) != y || *backward.entry(y).or_insert(x) != x {
                return false;
            }
        }
        true
    }

    /// Swaps the players: the result is `m x n` with `A' = B^T`, `B' = A^T`.
    pub fn transpose_roles(&self) -> Game {
        Game::from_fn(self.cols, self.rows, |i, j| (self.b(j, i), self.a(j, i)))
    }

    /// Applies `f` to every entry of `A` and `g` to every entry of `B`.
    pub fn map_payoffs(
        &self,
        f: impl Fn(Payoff) -> Payoff,
        g: impl Fn(Payoff) -> Payoff,
    ) -> Game {
        Game {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|&x| f(x)).collect(),
            b: self.b.iter().map(|&x| g(x)).collect(),
        }
    }

    /// Maps the sorted distinct values of both matrices onto `0..k`.
    pub fn normalized(&self) -> Game {
        let values = self.distinct_values();
        let rank = |x: Payoff| values.binary_search(&x).expect("value present") as Payoff;
        self.map_payoffs(rank, rank)
    }

    pub fn restrict<'g>(&'g self, s: &Subgame) -> Result<GameView<'g>> {
        if !s.fits(self) {
            return Err(Error::InvalidGame(format!(
                "subgame over {}x{} does not match a {}x{} game",
                s.rows.len(),
                s.cols.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(GameView {
            game: self,
            rows: s.rows.ones().collect(),
            cols: s.cols.ones().collect(),
        })
    }

    /// Pure equilibria of the subgame, as original index pairs.
    pub fn pure_nash(&self, s: &Subgame) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for i in s.rows.ones() {
            for j in s.cols.ones() {
                let row_best = s.rows.ones().all(|k| self.a(i, j) >= self.a(k, j));
                let col_best = s.cols.ones().all(|l| self.b(i, j) >= self.b(i, l));
                if row_best && col_best {
                    out.insert((i, j));
                }
            }
        }
        out
    }
}

/// Read access to a game restricted to a subgame. Local indices are positions
/// in `rows` / `cols`, which hold the original indices in ascending order.
#[derive(Clone, Debug)]
pub struct GameView<'g> {
    game: &'g Game,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl<'g> GameView<'g> {
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn a(&self, i: usize, j: usize) -> Payoff {
        self.game.a(self.rows[i], self.cols[j])
    }

    pub fn b(&self, i: usize, j: usize) -> Payoff {
        self.game.b(self.rows[i], self.cols[j])
    }

    /// Materializes the view as a standalone game.
    pub fn to_game(&self) -> Game {
        Game::from_fn(self.rows.len(), self.cols.len(), |i, j| {
            (self.a(i, j), self.b(i, j))
        })
    }
}

/// Remaining strategies of both players, as bit vectors over the original
/// indices of the game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgame {
    rows: FixedBitSet,
    cols: FixedBitSet,
}

impl Subgame {
    pub fn full(g: &Game) -> Self {
        let mut rows = FixedBitSet::with_capacity(g.rows);
        let mut cols = FixedBitSet::with_capacity(g.cols);
        rows.insert_range(..);
        cols.insert_range(..);
        Subgame { rows, cols }
    }

    pub fn from_indices(
        g: &Game,
        rows: impl IntoIterator<Item = usize>,
        cols: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut r = FixedBitSet::with_capacity(g.rows);
        let mut c = FixedBitSet::with_capacity(g.cols);
        for i in rows {
            if i >= g.rows {
                return Err(Error::InvalidTarget(StrategyRef::row(i)));
            }
            r.insert(i);
        }
        for j in cols {
            if j >= g.cols {
                return Err(Error::InvalidTarget(StrategyRef::column(j)));
            }
            c.insert(j);
        }
        if r.is_clear() || c.is_clear() {
            return Err(Error::InvalidGame("subgame sides must be nonempty".into()));
        }
        Ok(Subgame { rows: r, cols: c })
    }

    pub(crate) fn fits(&self, g: &Game) -> bool {
        self.rows.len() == g.rows
            && self.cols.len() == g.cols
            && !self.rows.is_clear()
            && !self.cols.is_clear()
    }

    pub fn side(&self, role: PlayerRole) -> &FixedBitSet {
        match role {
            PlayerRole::Row => &self.rows,
            PlayerRole::Column => &self.cols,
        }
    }

    pub(crate) fn side_mut(&mut self, role: PlayerRole) -> &mut FixedBitSet {
        match role {
            PlayerRole::Row => &mut self.rows,
            PlayerRole::Column => &mut self.cols,
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.ones()
    }

    pub fn cols(&self) -> impl Iterator<Item = usize> + '_ {
        self.cols.ones()
    }

    pub fn strategies(&self, role: PlayerRole) -> impl Iterator<Item = usize> + '_ {
        self.side(role).ones()
    }

    pub fn count(&self, role: PlayerRole) -> usize {
        self.side(role).count_ones(..)
    }

    pub fn contains(&self, s: StrategyRef) -> bool {
        s.index < self.side(s.role).len() && self.side(s.role).contains(s.index)
    }

    pub fn contains_row(&self, i: usize) -> bool {
        self.contains(StrategyRef::row(i))
    }

    pub fn contains_col(&self, j: usize) -> bool {
        self.contains(StrategyRef::column(j))
    }

    pub(crate) fn remove(&mut self, s: StrategyRef) {
        self.side_mut(s.role).set(s.index, false);
    }

    /// Compact key for memo tables; requires `n + m <= 128`.
    pub(crate) fn key(&self) -> u128 {
        let n = self.rows.len();
        debug_assert!(n + self.cols.len() <= 128);
        let mut k = 0u128;
        for i in self.rows.ones() {
            k |= 1 << i;
        }
        for j in self.cols.ones() {
            k |= 1 << (n + j);
        }
        k
    }

    /// Subgame of both restrictions (set intersection on each side).
    pub fn intersect(&self, other: &Subgame) -> Subgame {
        let mut rows = self.rows.clone();
        rows.intersect_with(&other.rows);
        let mut cols = self.cols.clone();
        cols.intersect_with(&other.cols);
        Subgame { rows, cols }
    }
}

impl fmt::Display for Subgame {
    /// 1-based, e.g. `rows{2,3} x cols{2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |set: &FixedBitSet| {
            set.ones()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "rows{{{}}} x cols{{{}}}", list(&self.rows), list(&self.cols))
    }
}
