//! Lower bounds on the queen domination number and the box geometry of
//! small dominating sets.
//!
//! All arithmetic is in exact integers. Bounds assume `m <= n`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::board::{attacks, QueenSet, Square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("the set needs at least two empty rows and two empty columns")]
    NoEmptyLine,
    #[error("precondition not met: {0}")]
    PreconditionNotMet(&'static str),
}

fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

/// Exact value `m` once the board is long enough: `n >= 3m - 2`.
pub fn row_count_exact(m: usize, n: usize) -> Option<usize> {
    (n + 2 >= 3 * m).then_some(m)
}

/// `min{m, ceil((m + n - 2) / 4)}`.
pub fn box_border_lower(m: usize, n: usize) -> usize {
    let q = ceil_div(m as i64 + n as i64 - 2, 4).max(0) as usize;
    m.min(q)
}

/// `ceil((n - 1) / 2)` for the `n x n` board.
pub fn square_edge_lower(n: usize) -> usize {
    ceil_div(n as i64 - 1, 2).max(0) as usize
}

/// `ceil(n / 2)` for the `n x n` board, valid for `n` other than 3 and 11.
pub fn square_half_lower(n: usize) -> Option<usize> {
    (n != 3 && n != 11).then(|| n.div_ceil(2))
}

/// `min{m - 1, floor(n / 2) - 1}`: observed on every tabulated board, not proved.
pub fn half_width_conjecture(m: usize, n: usize) -> usize {
    (m as i64 - 1).min(n as i64 / 2 - 1).max(0) as usize
}

/// Bound from the shape of the box of a dominating set with at most `m - 2`
/// queens, `m_box` rows by `n_box` columns.
pub fn box_bound(_m: usize, n: usize, m_box: usize, n_box: usize) -> usize {
    let n = n as i64;
    let v = if m_box > n_box {
        ceil_div(n, 2)
    } else {
        ceil_div(n - 1 - (n_box as i64 - m_box as i64), 2)
    };
    v.max(0) as usize
}

/// A named lower bound on `gamma` for `m x n` boards, `m <= n`.
pub trait LowerBound: Send + Sync {
    fn name(&self) -> &'static str;
    /// False for bounds that are only conjectured.
    fn proved(&self) -> bool {
        true
    }
    /// Where the bound comes from when it rests on an outside result.
    fn provenance(&self) -> Option<&'static str> {
        None
    }
    fn value(&self, m: usize, n: usize) -> Option<usize>;
}

pub struct RowCount;
pub struct BoxBorder;
pub struct SquareEdge;
pub struct SquareHalf;
pub struct HalfWidthConjecture;

impl LowerBound for RowCount {
    fn name(&self) -> &'static str {
        "row-count"
    }
    fn value(&self, m: usize, n: usize) -> Option<usize> {
        row_count_exact(m, n)
    }
}

impl LowerBound for BoxBorder {
    fn name(&self) -> &'static str {
        "box-border"
    }
    fn value(&self, m: usize, n: usize) -> Option<usize> {
        Some(box_border_lower(m, n))
    }
}

impl LowerBound for SquareEdge {
    fn name(&self) -> &'static str {
        "square-edge"
    }
    fn value(&self, m: usize, n: usize) -> Option<usize> {
        (m == n).then(|| square_edge_lower(n))
    }
}

impl LowerBound for SquareHalf {
    fn name(&self) -> &'static str {
        "square-half"
    }
    fn provenance(&self) -> Option<&'static str> {
        Some("external citation [FW]")
    }
    fn value(&self, m: usize, n: usize) -> Option<usize> {
        if m == n {
            square_half_lower(n)
        } else {
            None
        }
    }
}

impl LowerBound for HalfWidthConjecture {
    fn name(&self) -> &'static str {
        "conjecture"
    }
    fn proved(&self) -> bool {
        false
    }
    fn value(&self, m: usize, n: usize) -> Option<usize> {
        Some(half_width_conjecture(m, n))
    }
}

pub struct BoundRegistry {
    bounds: Vec<Box<dyn LowerBound>>,
}

impl BoundRegistry {
    pub fn empty() -> Self {
        Self { bounds: Vec::new() }
    }

    pub fn register(&mut self, bound: Box<dyn LowerBound>) {
        self.bounds.retain(|b| b.name() != bound.name());
        self.bounds.push(bound);
    }

    pub fn get(&self, name: &str) -> Option<&dyn LowerBound> {
        self.bounds.iter().find(|b| b.name() == name).map(|b| b.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn LowerBound> {
        self.bounds.iter().map(|b| b.as_ref())
    }

    /// Evaluates every registered bound.
    pub fn report(&self, m: usize, n: usize) -> BoundReport {
        let values: BTreeMap<&'static str, Option<usize>> = self.iter().map(|b| (b.name(), b.value(m, n))).collect();
        let best_proved = self.iter().filter(|b| b.proved()).filter_map(|b| b.value(m, n)).max().unwrap_or(0);
        let conjecture = self.iter().filter(|b| !b.proved()).filter_map(|b| b.value(m, n)).max();
        BoundReport { m, n, values, best_proved, conjecture }
    }
}

impl Default for BoundRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(RowCount));
        reg.register(Box::new(BoxBorder));
        reg.register(Box::new(SquareEdge));
        reg.register(Box::new(SquareHalf));
        reg.register(Box::new(HalfWidthConjecture));
        reg
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub m: usize,
    pub n: usize,
    /// Value of each named bound, `None` where it does not apply.
    pub values: BTreeMap<&'static str, Option<usize>>,
    /// Maximum over the applicable proved bounds.
    pub best_proved: usize,
    /// Conjectured bound, never used for pruning.
    pub conjecture: Option<usize>,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<usize> {
        self.values.get(name).copied().flatten()
    }
}

/// All default bounds for `m <= n`.
pub fn best_lower(m: usize, n: usize) -> BoundReport {
    BoundRegistry::default().report(m, n)
}

/// The rectangle spanned by the extreme empty columns `a < b` and empty
/// rows `c < d` of a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoxRegion {
    pub a: i32,
    pub b: i32,
    pub c: i32,
    pub d: i32,
}

impl BoxRegion {
    pub fn rows(&self) -> usize {
        (self.d - self.c + 1) as usize
    }

    pub fn cols(&self) -> usize {
        (self.b - self.a + 1) as usize
    }

    /// Squares on the boundary of the box.
    pub fn border(&self) -> Vec<Square> {
        let mut out = Vec::new();
        for y in self.c..=self.d {
            for x in self.a..=self.b {
                if x == self.a || x == self.b || y == self.c || y == self.d {
                    out.push(Square::new(x, y));
                }
            }
        }
        out
    }

    /// `2(d - c) + 2(b - a)`.
    pub fn border_len(&self) -> usize {
        (2 * (self.d - self.c) + 2 * (self.b - self.a)) as usize
    }
}

pub fn box_of(set: &QueenSet) -> Result<BoxRegion, BoundsError> {
    let dims = set.dims();
    let empty_cols: Vec<i32> =
        (1..=dims.n as i32).filter(|&x| set.squares().iter().all(|s| s.x != x)).collect();
    let empty_rows: Vec<i32> =
        (1..=dims.m as i32).filter(|&y| set.squares().iter().all(|s| s.y != y)).collect();
    if empty_cols.len() < 2 || empty_rows.len() < 2 {
        return Err(BoundsError::NoEmptyLine);
    }
    Ok(BoxRegion {
        a: empty_cols[0],
        b: *empty_cols.last().unwrap(),
        c: empty_rows[0],
        d: *empty_rows.last().unwrap(),
    })
}

/// Queens classified against the box: `corner` (neither orthogonal meets
/// the box), `side` (exactly one does) and `inside`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegionSplit {
    pub corner: usize,
    pub side: usize,
    pub inside: usize,
    /// Queens left of column `a`, right of `b`, below row `c`, above row `d`.
    pub west: usize,
    pub east: usize,
    pub south: usize,
    pub north: usize,
}

impl RegionSplit {
    pub fn total(&self) -> usize {
        self.corner + self.side + self.inside
    }

    /// `8|D| >= 2(m + n - 2 + |R|)`.
    pub fn inequality_holds(&self, m: usize, n: usize) -> bool {
        8 * self.total() >= 2 * (m + n - 2 + self.corner)
    }
}

pub fn region_split(set: &QueenSet) -> Result<RegionSplit, BoundsError> {
    let bx = box_of(set)?;
    let mut split = RegionSplit { corner: 0, side: 0, inside: 0, west: 0, east: 0, south: 0, north: 0 };
    for s in set.squares() {
        let in_cols = bx.a < s.x && s.x < bx.b;
        let in_rows = bx.c < s.y && s.y < bx.d;
        match (in_cols, in_rows) {
            (true, true) => split.inside += 1,
            (false, false) => split.corner += 1,
            _ => split.side += 1,
        }
        split.west += usize::from(s.x < bx.a);
        split.east += usize::from(s.x > bx.b);
        split.south += usize::from(s.y < bx.c);
        split.north += usize::from(s.y > bx.d);
    }
    Ok(split)
}

/// Conditions forced on a dominating set meeting `(m + n - 2) / 4` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TightReport {
    /// `4|D| == m + n - 2`.
    pub meets_bound: bool,
    /// `|D| <= m - 2`, so the box is defined.
    pub small: bool,
    /// Every box border square is covered by exactly one queen.
    pub border_unique: bool,
    pub independent: bool,
}

impl TightReport {
    pub fn all_pass(&self) -> bool {
        self.small && self.border_unique && self.independent
    }
}

/// Checks the three conditions a set attaining `(m + n - 2) / 4` must meet.
/// The conditions are evaluated even when the size does not attain the bound.
pub fn tight_set_check(set: &QueenSet) -> Result<TightReport, BoundsError> {
    let dims = set.dims();
    if dims.m > dims.n {
        return Err(BoundsError::PreconditionNotMet("m <= n"));
    }
    if dims.n >= 3 * dims.m + 2 {
        return Err(BoundsError::PreconditionNotMet("n < 3m + 2"));
    }
    if !set.is_dominating() {
        return Err(BoundsError::PreconditionNotMet("set dominates"));
    }
    let small = set.len() + 2 <= dims.m;
    let border_unique = match box_of(set) {
        Ok(bx) => bx.border().into_iter().all(|sq| set.cover_multiplicity(sq) == 1),
        Err(_) => false,
    };
    Ok(TightReport {
        meets_bound: 4 * set.len() + 2 == dims.m + dims.n,
        small,
        border_unique,
        independent: set.is_independent(),
    })
}

/// Number of border squares of the box covered by `q`.
pub fn border_hits(bx: &BoxRegion, q: Square) -> usize {
    bx.border().into_iter().filter(|&e| e == q || attacks(q, e)).count()
}
