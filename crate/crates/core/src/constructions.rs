//! Dominating sets built from prescribed line numbers: 0-covers and
//! centrally strong sets, plus the explicit infinite families.
//!
//! 0-cover plans live in a centered unit frame (odd boards only). Centrally
//! strong sets live in a centered frame with squares of edge two, so square
//! centers are integers for every parity of `m1`, `n1`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::board::{from_centered, from_centered_doubled, BoardDims, BoardError, LineId, LineKind, QueenSet, Square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("m1 and n1 must not both be even")]
    InvalidParity,
    #[error("auxiliary line count would be negative")]
    NegativeAuxCount,
    #[error("m1 = {0} is outside the family")]
    InvalidM1(usize),
    #[error("infeasible line plan: {0}")]
    InfeasiblePlan(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not centrally strong: {0}")]
    NotCentrallyStrong(String),
    #[error("frame {0:?} cannot address the {1} board")]
    FrameMismatch(Frame, BoardDims),
    #[error("unknown construction scheme {0:?}")]
    UnknownScheme(String),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("missing parameter --{0}")]
    MissingParam(&'static str),
    #[error(transparent)]
    Board(#[from] BoardError),
}

type Result<T> = std::result::Result<T, ConstructionError>;

/// Coordinate frame of a plan's line numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Frame {
    Corner,
    /// Origin at the board center, unit squares; needs odd `m` and `n`.
    CenteredUnit,
    /// Origin at the board center, squares of edge two.
    CenteredDoubled,
}

impl Frame {
    pub fn fits(self, dims: BoardDims) -> bool {
        match self {
            Frame::CenteredUnit => dims.m % 2 == 1 && dims.n % 2 == 1,
            _ => true,
        }
    }

    /// Board square at frame point `(x, y)`, if there is one.
    pub fn to_corner(self, dims: BoardDims, x: i32, y: i32) -> Option<Square> {
        let sq = match self {
            Frame::Corner => Some(Square::new(x, y)),
            Frame::CenteredUnit => from_centered(dims, x, y),
            Frame::CenteredDoubled => from_centered_doubled(dims, x, y),
        }?;
        dims.contains(sq).then_some(sq)
    }

    pub fn from_corner(self, dims: BoardDims, sq: Square) -> (i32, i32) {
        let (n, m) = (dims.n as i32, dims.m as i32);
        match self {
            Frame::Corner => (sq.x, sq.y),
            Frame::CenteredUnit => (sq.x - (n + 1) / 2, sq.y - (m + 1) / 2),
            Frame::CenteredDoubled => (2 * sq.x - n - 1, 2 * sq.y - m - 1),
        }
    }
}

fn line_number(kind: LineKind, x: i32, y: i32) -> i32 {
    match kind {
        LineKind::Column => x,
        LineKind::Row => y,
        LineKind::DiffDiag => y - x,
        LineKind::SumDiag => y + x,
    }
}

const KINDS: [LineKind; 4] = [LineKind::Column, LineKind::Row, LineKind::DiffDiag, LineKind::SumDiag];

/// Lines a set must occupy plus the auxiliary multiset that completes each
/// line family to the set size. Numbers are in `frame`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinePlan {
    pub frame: Frame,
    pub required: BTreeSet<LineId>,
    pub auxiliary: Vec<LineId>,
}

impl LinePlan {
    pub fn new(frame: Frame, required: impl IntoIterator<Item = LineId>, auxiliary: impl IntoIterator<Item = LineId>) -> Self {
        let mut auxiliary: Vec<LineId> = auxiliary.into_iter().collect();
        auxiliary.sort();
        Self { frame, required: required.into_iter().collect(), auxiliary }
    }

    /// Every number of `kind`, required and auxiliary, sorted.
    pub fn numbers(&self, kind: LineKind) -> Vec<i32> {
        let mut v: Vec<i32> = self
            .required
            .iter()
            .chain(&self.auxiliary)
            .filter(|l| l.kind == kind)
            .map(|l| l.number)
            .collect();
        v.sort_unstable();
        v
    }

    /// Checks equal family sizes, both linear sums and the parallelogram-law
    /// identity. Returns the set size the plan describes.
    pub fn check(&self) -> Result<usize> {
        let [c, r, d, s] = KINDS.map(|k| self.numbers(k));
        let size = c.len();
        if r.len() != size || d.len() != size || s.len() != size {
            return Err(ConstructionError::InfeasiblePlan(format!(
                "line families have sizes {} {} {} {}",
                c.len(),
                r.len(),
                d.len(),
                s.len()
            )));
        }
        let sum = |v: &[i32]| v.iter().map(|&a| a as i64).sum::<i64>();
        let sq = |v: &[i32]| v.iter().map(|&a| (a as i64).pow(2)).sum::<i64>();
        if sum(&d) != sum(&r) - sum(&c) {
            return Err(ConstructionError::InfeasiblePlan("difference numbers do not sum to rows minus columns".into()));
        }
        if sum(&s) != sum(&r) + sum(&c) {
            return Err(ConstructionError::InfeasiblePlan("sum numbers do not sum to rows plus columns".into()));
        }
        if 2 * sq(&c) + 2 * sq(&r) != sq(&d) + sq(&s) {
            return Err(ConstructionError::InfeasiblePlan("parallelogram-law identity fails".into()));
        }
        Ok(size)
    }

    pub fn is_half_turn_symmetric(&self) -> bool {
        KINDS.iter().all(|&k| {
            let v = self.numbers(k);
            let mut neg: Vec<i32> = v.iter().map(|a| -a).collect();
            neg.sort_unstable();
            v == neg
        })
    }

    /// True iff the frame points occupy exactly the plan's line multisets.
    pub fn is_realized_by(&self, points: &[(i32, i32)]) -> bool {
        KINDS.iter().all(|&k| {
            let mut v: Vec<i32> = points.iter().map(|&(x, y)| line_number(k, x, y)).collect();
            v.sort_unstable();
            v == self.numbers(k)
        })
    }
}

fn counts(v: &[i32]) -> BTreeMap<i32, usize> {
    let mut c = BTreeMap::new();
    for &a in v {
        *c.entry(a).or_insert(0) += 1;
    }
    c
}

fn take(c: &mut BTreeMap<i32, usize>, a: i32) -> bool {
    match c.get_mut(&a) {
        Some(t) if *t > 0 => {
            *t -= 1;
            true
        }
        _ => false,
    }
}

fn give(c: &mut BTreeMap<i32, usize>, a: i32) {
    *c.entry(a).or_insert(0) += 1;
}

struct Realizer<'a> {
    dims: BoardDims,
    frame: Frame,
    cols: BTreeMap<i32, usize>,
    rows: BTreeMap<i32, usize>,
    sums: BTreeMap<i32, usize>,
    placed: Vec<(i32, i32)>,
    out: &'a mut BTreeSet<Vec<(i32, i32)>>,
}

impl Realizer<'_> {
    fn on_board(&self, x: i32, y: i32) -> bool {
        self.frame.to_corner(self.dims, x, y).is_some()
    }

    fn try_place(&mut self, pts: &[(i32, i32)]) -> bool {
        let mut done = 0;
        for &(x, y) in pts {
            if !self.on_board(x, y) || self.placed.contains(&(x, y)) {
                break;
            }
            if !take(&mut self.cols, x) {
                break;
            }
            if !take(&mut self.rows, y) {
                give(&mut self.cols, x);
                break;
            }
            if !take(&mut self.sums, x + y) {
                give(&mut self.cols, x);
                give(&mut self.rows, y);
                break;
            }
            self.placed.push((x, y));
            done += 1;
        }
        if done < pts.len() {
            for _ in 0..done {
                self.unplace_one();
            }
            return false;
        }
        true
    }

    fn unplace_one(&mut self) {
        let (x, y) = self.placed.pop().expect("placed point");
        give(&mut self.cols, x);
        give(&mut self.rows, y);
        give(&mut self.sums, x + y);
    }

    fn record(&mut self) {
        let mut pts = self.placed.clone();
        pts.sort_unstable();
        self.out.insert(pts);
    }

    /// One queen per entry of `diffs`; equal consecutive differences take
    /// increasing columns so each set appears once.
    fn general(&mut self, diffs: &[i32], i: usize, min_x: i32) {
        if i == diffs.len() {
            self.record();
            return;
        }
        let d = diffs[i];
        let xs: Vec<i32> = self.cols.iter().filter(|(_, &c)| c > 0).map(|(&x, _)| x).collect();
        for x in xs {
            if i > 0 && diffs[i - 1] == d && x <= min_x {
                continue;
            }
            if self.try_place(&[(x, x + d)]) {
                self.general(diffs, i + 1, x);
                self.unplace_one();
            }
        }
    }

    /// Half-turn symmetric placements: each slot places `p` and `-p`.
    fn symmetric(&mut self, slots: &[i32], i: usize, min_x: i32) {
        if i == slots.len() {
            self.record();
            return;
        }
        let d = slots[i];
        let xs: Vec<i32> = self.cols.iter().filter(|(_, &c)| c > 0).map(|(&x, _)| x).collect();
        for x in xs {
            let y = x + d;
            if d == 0 && x <= 0 {
                continue;
            }
            if i > 0 && slots[i - 1] == d && x <= min_x {
                continue;
            }
            if self.try_place(&[(x, y), (-x, -y)]) {
                self.symmetric(slots, i + 1, x);
                self.unplace_one();
                self.unplace_one();
            }
        }
    }
}

/// All point sets realizing `plan` on `dims`. With `half_turn` only sets
/// symmetric under the half-turn about the origin are produced.
pub fn realize(dims: BoardDims, plan: &LinePlan, half_turn: bool) -> Result<Vec<Vec<(i32, i32)>>> {
    plan.check()?;
    if !plan.frame.fits(dims) {
        return Err(ConstructionError::FrameMismatch(plan.frame, dims));
    }
    let mut out = BTreeSet::new();
    let mut r = Realizer {
        dims,
        frame: plan.frame,
        cols: counts(&plan.numbers(LineKind::Column)),
        rows: counts(&plan.numbers(LineKind::Row)),
        sums: counts(&plan.numbers(LineKind::SumDiag)),
        placed: Vec::new(),
        out: &mut out,
    };
    let diffs = plan.numbers(LineKind::DiffDiag);
    if !half_turn {
        r.general(&diffs, 0, i32::MIN);
    } else if plan.is_half_turn_symmetric() {
        let zeros = diffs.iter().filter(|&&d| d == 0).count();
        let mut slots: Vec<i32> = diffs.iter().copied().filter(|&d| d > 0).collect();
        slots.extend(std::iter::repeat_n(0, zeros / 2));
        slots.sort_unstable();
        if zeros % 2 == 0 || r.try_place(&[(0, 0)]) {
            r.symmetric(&slots, 0, i32::MIN);
        }
    }
    Ok(out.into_iter().collect())
}

/// Even columns and rows relative to `origin` are all occupied.
pub fn is_orthodox(set: &QueenSet, origin: Square) -> bool {
    let dims = set.dims();
    let even = |a: i32, o: i32| (a - o).rem_euclid(2) == 0;
    let cols: BTreeSet<i32> = set.squares().iter().map(|s| s.x).collect();
    let rows: BTreeSet<i32> = set.squares().iter().map(|s| s.y).collect();
    !set.is_empty()
        && (1..=dims.n as i32).filter(|&x| even(x, origin.x)).all(|x| cols.contains(&x))
        && (1..=dims.m as i32).filter(|&y| even(y, origin.y)).all(|y| rows.contains(&y))
}

/// An origin, reduced to `{1, 2} x {1, 2}`, for which the set is orthodox
/// and every odd-odd square shares a diagonal with a member.
pub fn is_zero_cover(set: &QueenSet) -> Option<Square> {
    let dims = set.dims();
    let diffs: BTreeSet<i32> = set.squares().iter().map(|s| s.y - s.x).collect();
    let sums: BTreeSet<i32> = set.squares().iter().map(|s| s.y + s.x).collect();
    for oy in 1..=2 {
        for ox in 1..=2 {
            let origin = Square::new(ox, oy);
            if !is_orthodox(set, origin) {
                continue;
            }
            let odd_odd_covered = dims
                .squares()
                .filter(|s| (s.x - ox) % 2 != 0 && (s.y - oy) % 2 != 0)
                .all(|s| diffs.contains(&(s.y - s.x)) || sums.contains(&(s.y + s.x)));
            if odd_odd_covered {
                assert!(set.is_dominating(), "a 0-cover dominates");
                return Some(origin);
            }
        }
    }
    None
}

fn to_queen_set(dims: BoardDims, frame: Frame, pts: &[(i32, i32)]) -> Result<QueenSet> {
    let squares = pts
        .iter()
        .map(|&(x, y)| frame.to_corner(dims, x, y).ok_or(ConstructionError::FrameMismatch(frame, dims)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QueenSet::new(dims, squares)?)
}

/// Every 0-cover of `size` queens realizing `plan`.
pub fn zero_cover_search(dims: BoardDims, size: usize, plan: &LinePlan, half_turn: bool) -> Result<Vec<QueenSet>> {
    let planned = plan.check()?;
    if planned != size {
        return Err(ConstructionError::InfeasiblePlan(format!("plan places {planned} queens, not {size}")));
    }
    let mut out = Vec::new();
    for pts in realize(dims, plan, half_turn)? {
        let set = to_queen_set(dims, plan.frame, &pts)?;
        if is_zero_cover(&set).is_some() {
            out.push(set);
        }
    }
    Ok(out)
}

fn frame_range(dims: BoardDims, kind: LineKind) -> i32 {
    let (hx, hy) = ((dims.n as i32 - 1) / 2, (dims.m as i32 - 1) / 2);
    match kind {
        LineKind::Column => hx,
        LineKind::Row => hy,
        _ => hx + hy,
    }
}

/// Multisets of `count` numbers in `[-lim, lim]` closed under negation.
fn symmetric_multisets(count: usize, lim: i32) -> Vec<Vec<i32>> {
    fn pairs(left: usize, from: i32, lim: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in from..=lim {
            cur.extend([v, -v]);
            pairs(left - 1, v, lim, cur, out);
            cur.truncate(cur.len() - 2);
        }
    }
    let mut out = Vec::new();
    let mut cur = if count % 2 == 1 { vec![0] } else { Vec::new() };
    pairs(count / 2, 0, lim, &mut cur, &mut out);
    for v in &mut out {
        v.sort_unstable();
    }
    out
}

/// Completes the required lines to half-turn symmetric plans of `size`
/// queens in the centered unit frame, keeping those that pass
/// [`LinePlan::check`].
pub fn half_turn_completions(dims: BoardDims, required: &BTreeSet<LineId>, size: usize) -> Result<Vec<LinePlan>> {
    if !Frame::CenteredUnit.fits(dims) {
        return Err(ConstructionError::FrameMismatch(Frame::CenteredUnit, dims));
    }
    let mut options: Vec<Vec<Vec<i32>>> = Vec::new();
    for kind in KINDS {
        let have = required.iter().filter(|l| l.kind == kind).count();
        let need = size.checked_sub(have).ok_or_else(|| {
            ConstructionError::InfeasiblePlan(format!("{have} required {kind:?} lines exceed {size} queens"))
        })?;
        options.push(symmetric_multisets(need, frame_range(dims, kind)));
    }
    let mut plans = Vec::new();
    for c in &options[0] {
        for r in &options[1] {
            for d in &options[2] {
                for s in &options[3] {
                    let aux = KINDS
                        .iter()
                        .zip([c, r, d, s])
                        .flat_map(|(&k, v)| v.iter().map(move |&a| LineId::new(k, a)));
                    let plan = LinePlan::new(Frame::CenteredUnit, required.iter().copied(), aux);
                    if plan.check().is_ok() {
                        plans.push(plan);
                    }
                }
            }
        }
    }
    Ok(plans)
}

/// Required lines of the 13x19 0-cover: two overlapping 13x13 boards
/// centered at `(+-3, 0)`, each needing the diagonals `{-6, -2, 0, 2, 6}` of
/// its own frame, plus every odd column and even row.
pub fn example1_required() -> (BoardDims, BTreeSet<LineId>, usize) {
    let dims = BoardDims::new(13, 19).expect("valid dims");
    let base = [-6, -2, 0, 2, 6];
    let mut req = BTreeSet::new();
    for c in [-3, 3] {
        for t in base {
            req.insert(LineId::new(LineKind::DiffDiag, t - c));
            req.insert(LineId::new(LineKind::SumDiag, t + c));
        }
    }
    for x in (-9..=9).step_by(2) {
        req.insert(LineId::new(LineKind::Column, x));
    }
    for y in (-6..=6).step_by(2) {
        req.insert(LineId::new(LineKind::Row, y));
    }
    (dims, req, 10)
}

/// The half-turn 0-covers of 13x19 with ten queens, with the plan each one
/// realizes.
pub fn example1_zero_covers() -> Result<Vec<(LinePlan, QueenSet)>> {
    let (dims, req, size) = example1_required();
    let mut out = Vec::new();
    for plan in half_turn_completions(dims, &req, size)? {
        for set in zero_cover_search(dims, size, &plan, true)? {
            out.push((plan.clone(), set));
        }
    }
    Ok(out)
}

/// Central sub-board shape `m1 x n1` with `k` omitted diagonals at each end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CentralParams {
    pub m1: usize,
    pub n1: usize,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub g: usize,
}

pub fn central_params(m1: usize, n1: usize, k: usize) -> Result<CentralParams> {
    if n1 == 0 || m1 < n1 {
        return Err(ConstructionError::InvalidParams(format!("need m1 >= n1 >= 1, got ({m1}, {n1})")));
    }
    if m1.is_multiple_of(2) && n1.is_multiple_of(2) {
        return Err(ConstructionError::InvalidParity);
    }
    if n1 < 2 * k + 1 {
        return Err(ConstructionError::NegativeAuxCount);
    }
    let p = CentralParams {
        m1,
        n1,
        k,
        m: m1 + 2 * n1 - 2 * k,
        n: 2 * m1 + n1 - 2 * k,
        g: m1 + n1 - 2 * k - 1,
    };
    if p.m > crate::board::MAX_SIDE || p.n > crate::board::MAX_SIDE {
        return Err(ConstructionError::InvalidParams(format!("board {}x{} too large", p.m, p.n)));
    }
    Ok(p)
}

impl CentralParams {
    pub fn dims(&self) -> BoardDims {
        BoardDims::new(self.m, self.n).expect("validated in central_params")
    }

    pub fn aux_column_count(&self) -> usize {
        self.g - self.n1
    }

    pub fn aux_row_count(&self) -> usize {
        self.g - self.m1
    }

    /// Largest absolute diagonal number a member may use (doubled frame).
    pub fn diagonal_limit(&self) -> i32 {
        (self.m1 + self.n1) as i32 - 2 - 2 * self.k as i32
    }

    pub fn required_columns(&self) -> Vec<i32> {
        centered_run(self.n1)
    }

    pub fn required_rows(&self) -> Vec<i32> {
        centered_run(self.m1)
    }

    pub fn required_diagonals(&self) -> Vec<i32> {
        let lim = self.diagonal_limit();
        (-lim..=lim).step_by(2).collect()
    }
}

/// `-(len-1), -(len-3), ..., len-1`.
fn centered_run(len: usize) -> Vec<i32> {
    let h = len as i32 - 1;
    (-h..=h).step_by(2).collect()
}

fn binom3(a: usize) -> i64 {
    let a = a as i64;
    a * (a - 1) * (a - 2) / 6
}

/// Required sum of squares of the auxiliary column and row numbers.
pub fn sum_orth(p: &CentralParams) -> i64 {
    2 * (binom3(p.g + 1) - binom3(p.m1 + 1) - binom3(p.n1 + 1))
}

/// A centrally strong set in the doubled centered frame.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StrongSet {
    pub params: CentralParams,
    pub points: Vec<(i32, i32)>,
    pub strict: bool,
}

impl StrongSet {
    /// Validates the defining conditions and classifies strictness.
    pub fn new(params: CentralParams, mut points: Vec<(i32, i32)>) -> Result<Self> {
        points.sort_unstable();
        let fail = |msg: String| Err(ConstructionError::NotCentrallyStrong(msg));
        let (m, n) = (params.m as i32, params.n as i32);
        let (px, py) = ((params.n1 as i32 - 1).rem_euclid(2), (params.m1 as i32 - 1).rem_euclid(2));
        for &(x, y) in &points {
            if x.rem_euclid(2) != px || y.rem_euclid(2) != py || x.abs() >= n || y.abs() >= m {
                return fail(format!("({x}, {y}) is not a square of the board"));
            }
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return fail("repeated square".into());
        }
        let diags = params.required_diagonals();
        let mut d: Vec<i32> = points.iter().map(|&(x, y)| y - x).collect();
        let mut s: Vec<i32> = points.iter().map(|&(x, y)| y + x).collect();
        d.sort_unstable();
        s.sort_unstable();
        if d != diags || s != diags {
            return fail("diagonals are not the required ones, each once".into());
        }
        let cols: BTreeSet<i32> = points.iter().map(|p| p.0).collect();
        let rows: BTreeSet<i32> = points.iter().map(|p| p.1).collect();
        if !params.required_columns().iter().all(|c| cols.contains(c)) {
            return fail("a column of the sub-board is empty".into());
        }
        if !params.required_rows().iter().all(|r| rows.contains(r)) {
            return fail("a row of the sub-board is empty".into());
        }
        let (cx, cy) = (params.n1 as i32 - 1, params.m1 as i32 - 1);
        let strict = points.iter().all(|&(x, y)| x.abs() <= cx && y.abs() <= cy);
        Ok(Self { params, points, strict })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Column numbers beyond one per sub-board column, with multiplicity.
    pub fn aux_columns(&self) -> Vec<i32> {
        surplus(self.points.iter().map(|p| p.0), &self.params.required_columns())
    }

    pub fn aux_rows(&self) -> Vec<i32> {
        surplus(self.points.iter().map(|p| p.1), &self.params.required_rows())
    }

    /// The set on its own `m x n` board.
    pub fn to_queen_set(&self) -> QueenSet {
        let dims = self.params.dims();
        to_queen_set(dims, Frame::CenteredDoubled, &self.points).expect("validated points lie on the board")
    }

    /// Unit-frame points, when every coordinate is even.
    pub fn halved(&self) -> Option<Vec<(i32, i32)>> {
        self.points
            .iter()
            .map(|&(x, y)| (x % 2 == 0 && y % 2 == 0).then_some((x / 2, y / 2)))
            .collect()
    }
}

fn surplus(values: impl Iterator<Item = i32>, required: &[i32]) -> Vec<i32> {
    let mut c = counts(&values.collect::<Vec<_>>());
    for r in required {
        take(&mut c, *r);
    }
    let mut out: Vec<i32> = c.into_iter().flat_map(|(v, t)| std::iter::repeat_n(v, t)).collect();
    out.sort_unstable();
    out
}

struct StrongSearch<'a> {
    params: CentralParams,
    diags: Vec<i32>,
    sum_used: Vec<bool>,
    col_need: BTreeMap<i32, usize>,
    row_need: BTreeMap<i32, usize>,
    empty_cols: usize,
    empty_rows: usize,
    bound: (i32, i32),
    parity: (i32, i32),
    placed: Vec<(i32, i32)>,
    limit: Option<usize>,
    out: &'a mut Vec<StrongSet>,
}

impl StrongSearch<'_> {
    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn go(&mut self, i: usize) {
        if self.done() {
            return;
        }
        let left = self.diags.len() - i;
        if self.empty_cols > left || self.empty_rows > left {
            return;
        }
        if i == self.diags.len() {
            let set = StrongSet::new(self.params, self.placed.clone()).expect("search keeps the invariants");
            assert!(set.to_queen_set().is_dominating(), "centrally strong sets dominate");
            self.out.push(set);
            return;
        }
        let d = self.diags[i];
        for j in 0..self.diags.len() {
            if self.sum_used[j] {
                continue;
            }
            let s = self.diags[j];
            if (s - d) % 2 != 0 {
                continue;
            }
            let (x, y) = ((s - d) / 2, (s + d) / 2);
            if x.rem_euclid(2) != self.parity.0 || y.rem_euclid(2) != self.parity.1 {
                continue;
            }
            if x.abs() > self.bound.0 || y.abs() > self.bound.1 {
                continue;
            }
            let new_col = self.col_need.get(&x).is_some_and(|&c| c == 0);
            let new_row = self.row_need.get(&y).is_some_and(|&c| c == 0);
            self.sum_used[j] = true;
            if let Some(c) = self.col_need.get_mut(&x) {
                *c += 1;
            }
            if let Some(c) = self.row_need.get_mut(&y) {
                *c += 1;
            }
            self.empty_cols -= usize::from(new_col);
            self.empty_rows -= usize::from(new_row);
            self.placed.push((x, y));
            self.go(i + 1);
            self.placed.pop();
            self.empty_cols += usize::from(new_col);
            self.empty_rows += usize::from(new_row);
            if let Some(c) = self.col_need.get_mut(&x) {
                *c -= 1;
            }
            if let Some(c) = self.row_need.get_mut(&y) {
                *c -= 1;
            }
            self.sum_used[j] = false;
            if self.done() {
                return;
            }
        }
    }
}

/// Centrally strong sets for `params`, up to `limit` of them.
pub fn centrally_strong_search_limited(params: CentralParams, strict_only: bool, limit: Option<usize>) -> Vec<StrongSet> {
    let mut out = Vec::new();
    if sum_orth(&params) < 0 {
        return out;
    }
    let bound = if strict_only {
        (params.n1 as i32 - 1, params.m1 as i32 - 1)
    } else {
        (params.n as i32 - 1, params.m as i32 - 1)
    };
    let cols = params.required_columns();
    let rows = params.required_rows();
    let mut search = StrongSearch {
        params,
        diags: params.required_diagonals(),
        sum_used: vec![false; params.g],
        col_need: cols.iter().map(|&c| (c, 0)).collect(),
        row_need: rows.iter().map(|&r| (r, 0)).collect(),
        empty_cols: cols.len(),
        empty_rows: rows.len(),
        bound,
        parity: ((params.n1 as i32 - 1).rem_euclid(2), (params.m1 as i32 - 1).rem_euclid(2)),
        placed: Vec::new(),
        limit,
        out: &mut out,
    };
    search.go(0);
    out.sort();
    out
}

pub fn centrally_strong_search(params: CentralParams, strict_only: bool) -> Vec<StrongSet> {
    centrally_strong_search_limited(params, strict_only, None)
}

/// Board sizes a centered set dominates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApplicableBoards {
    pub m_range: (usize, usize),
    pub n_range: (usize, usize),
    /// Every `(m', n')` checked and found dominated.
    pub boards: Vec<(usize, usize)>,
}

impl ApplicableBoards {
    pub fn contains(&self, m: usize, n: usize) -> bool {
        self.boards.binary_search(&(m, n)).is_ok()
    }
}

/// Every `m' x n'` window of the strong set's board that holds the whole set
/// and is as central as possible, checked for domination one by one.
pub fn applicable_boards(ss: &StrongSet) -> ApplicableBoards {
    let full = ss.to_queen_set();
    let dims = full.dims();
    let xs = full.squares().iter().map(|s| s.x);
    let ys = full.squares().iter().map(|s| s.y);
    let (x0, x1) = (xs.clone().min().unwrap_or(1), xs.max().unwrap_or(1));
    let (y0, y1) = (ys.clone().min().unwrap_or(1), ys.max().unwrap_or(1));
    let mut boards = Vec::new();
    for mm in (y1 - y0 + 1) as usize..=dims.m {
        for nn in (x1 - x0 + 1) as usize..=dims.n {
            let start = |lo: i32, hi: i32, len: usize, side: usize| {
                let centered = (side as i32 - len as i32) / 2 + 1;
                centered.clamp(hi - len as i32 + 1, lo)
            };
            let r0 = start(y0, y1, mm, dims.m);
            let c0 = start(x0, x1, nn, dims.n);
            let sub = BoardDims::new(mm, nn).expect("within the parent board");
            let moved = full.squares().iter().map(|s| Square::new(s.x - c0 + 1, s.y - r0 + 1));
            if QueenSet::new(sub, moved).is_ok_and(|q| q.is_dominating()) {
                boards.push((mm, nn));
            }
        }
    }
    let m_range = (
        boards.iter().map(|b| b.0).min().unwrap_or(0),
        boards.iter().map(|b| b.0).max().unwrap_or(0),
    );
    let n_range = (
        boards.iter().map(|b| b.1).min().unwrap_or(0),
        boards.iter().map(|b| b.1).max().unwrap_or(0),
    );
    ApplicableBoards { m_range, n_range, boards }
}

/// Largest `k` with a centrally strong set for `(m1, n1)`, searching no
/// higher than `k_max`.
pub fn largest_feasible_k(m1: usize, n1: usize, k_max: usize) -> Option<usize> {
    let top = k_max.min((m1.min(n1).saturating_sub(1)) / 2);
    (0..=top).rev().find(|&k| {
        central_params(m1, n1, k).is_ok_and(|p| !centrally_strong_search_limited(p, false, Some(1)).is_empty())
    })
}

/// `(m1, n1 + 2, k + 1)` when feasible: it dominates a board one row taller
/// with the same number of queens, so it is the more useful choice.
pub fn wider_alternative(p: &CentralParams) -> Option<CentralParams> {
    let q = central_params(p.m1, p.n1 + 2, p.k + 1).ok()?;
    (q.m1 >= q.n1 && !centrally_strong_search_limited(q, false, Some(1)).is_empty()).then_some(q)
}

/// The `m - 2` queens filling the central column of `m x (2m - 3)`.
pub fn family_central_column(m: usize) -> Result<QueenSet> {
    if m < 3 {
        return Err(ConstructionError::InvalidParams(format!("need m >= 3, got {m}")));
    }
    Ok(central_column_strong(m - 2)?.to_queen_set())
}

pub fn central_column_strong(m1: usize) -> Result<StrongSet> {
    let p = central_params(m1, 1, 0)?;
    StrongSet::new(p, p.required_rows().into_iter().map(|y| (0, y)).collect())
}

fn from_unit(params: CentralParams, unit: Vec<(i32, i32)>) -> Result<StrongSet> {
    StrongSet::new(params, unit.into_iter().map(|(x, y)| (2 * x, 2 * y)).collect())
}

fn pm(out: &mut Vec<(i32, i32)>, x: i32, y: i32) {
    out.push((x, y));
    out.push((-x, -y));
}

/// Strict sets with `n1 = 5`, `k = 1` for odd `m1 >= 5`; they dominate
/// `(m1 + 8) x (2 m1 + 3)` with `m1 + 2` queens.
pub fn family_width5(m1: usize) -> Result<StrongSet> {
    if m1 < 5 || m1.is_multiple_of(2) {
        return Err(ConstructionError::InvalidM1(m1));
    }
    let p = central_params(m1, 5, 1)?;
    let h = m1 as i32;
    let mut u = vec![(0, 0)];
    if m1 % 4 == 1 {
        pm(&mut u, -1, (h - 1) / 2);
        for i in 1..=(h - 1) / 4 {
            pm(&mut u, 0, 2 * i);
            pm(&mut u, 2, (h + 5) / 2 - 4 * i);
        }
    } else {
        pm(&mut u, 1, (h - 1) / 2);
        pm(&mut u, -1, (h - 1) / 2);
        pm(&mut u, -1, (h - 3) / 2);
        for i in 1..=(h - 7) / 4 {
            pm(&mut u, 0, 2 * i);
        }
        for i in 1..=(h - 3) / 4 {
            pm(&mut u, 2, (h + 3) / 2 - 4 * i);
        }
    }
    from_unit(p, u)
}

/// Strict sets with `n1 = 7`, `k = 2` for odd `m1 >= 7`; they dominate
/// `(m1 + 10) x (2 m1 + 3)` with `m1 + 2` queens.
pub fn family_width7(m1: usize) -> Result<StrongSet> {
    if m1 < 7 || m1.is_multiple_of(2) {
        return Err(ConstructionError::InvalidM1(m1));
    }
    let p = central_params(m1, 7, 2)?;
    let mut u = Vec::new();
    match m1 {
        7 => {
            for i in -1..=1 {
                for j in -1..=1 {
                    u.push((i + 2 * j, 2 * i - j));
                }
            }
        }
        9 => {
            u.push((0, 0));
            pm(&mut u, 1, 4);
            pm(&mut u, 2, -3);
            for j in -1..=1 {
                pm(&mut u, 1 + 2 * j, 2 - j);
            }
        }
        _ => {
            let r = m1 as i32 - 11;
            let l1 = r.div_euclid(4);
            let l2 = (r + 3).div_euclid(4);
            let sign = |e: i32| if e % 2 == 0 { 1 } else { -1 };
            u.push((0, 0));
            pm(&mut u, 1, 2);
            pm(&mut u, 2, -3);
            pm(&mut u, 3, -1);
            pm(&mut u, sign(l1), -2 * l1 - 5);
            pm(&mut u, sign(l2 + 1), -2 * l2 - 4);
            for j in 1..=(l2 + 1) / 2 {
                pm(&mut u, 2, 4 * j);
                pm(&mut u, 2, 4 * j + 1);
            }
            for j in 1..=l2 / 2 {
                pm(&mut u, 2, -4 * j - 2);
                pm(&mut u, 2, -4 * j - 3);
            }
            if l2 == l1 {
                pm(&mut u, 2, sign(l1) * (2 * l1 + 4));
            }
        }
    }
    from_unit(p, u)
}

/// A dominating set produced by a construction scheme, with the metadata
/// needed to re-verify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constructed {
    pub label: String,
    pub set: QueenSet,
    pub zero_cover: Option<Square>,
    pub strong: Option<StrongSet>,
    pub applicable: Option<ApplicableBoards>,
}

impl Constructed {
    fn from_strong(label: String, ss: StrongSet) -> Self {
        let applicable = Some(applicable_boards(&ss));
        Self { label, set: ss.to_queen_set(), zero_cover: None, strong: Some(ss), applicable }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstructRequest {
    pub preset: Option<String>,
    pub m1: Option<usize>,
    pub n1: Option<usize>,
    pub k: Option<usize>,
    pub strict_only: bool,
    pub limit: Option<usize>,
}

pub trait Construction: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn build(&self, req: &ConstructRequest) -> Result<Vec<Constructed>>;
}

pub struct ZeroCoverScheme;

impl Construction for ZeroCoverScheme {
    fn name(&self) -> &'static str {
        "zero-cover"
    }

    fn description(&self) -> &'static str {
        "orthodox sets covering the odd-odd squares diagonally (preset: example1)"
    }

    fn build(&self, req: &ConstructRequest) -> Result<Vec<Constructed>> {
        let preset = req.preset.as_deref().unwrap_or("example1");
        if preset != "example1" {
            return Err(ConstructionError::UnknownPreset(preset.to_string()));
        }
        let mut out: Vec<Constructed> = example1_zero_covers()?
            .into_iter()
            .map(|(plan, set)| {
                let aux: Vec<String> = plan.auxiliary.iter().map(|l| l.to_string()).collect();
                Constructed {
                    label: format!("0-cover, auxiliary lines {}", aux.join(" ")),
                    zero_cover: is_zero_cover(&set),
                    set,
                    strong: None,
                    applicable: None,
                }
            })
            .collect();
        if let Some(l) = req.limit {
            out.truncate(l);
        }
        Ok(out)
    }
}

pub struct StrongScheme;

impl Construction for StrongScheme {
    fn name(&self) -> &'static str {
        "strong"
    }

    fn description(&self) -> &'static str {
        "centrally strong sets for given m1, n1, k"
    }

    fn build(&self, req: &ConstructRequest) -> Result<Vec<Constructed>> {
        let p = central_params(
            req.m1.ok_or(ConstructionError::MissingParam("m1"))?,
            req.n1.ok_or(ConstructionError::MissingParam("n1"))?,
            req.k.ok_or(ConstructionError::MissingParam("k"))?,
        )?;
        let found = centrally_strong_search_limited(p, req.strict_only, req.limit);
        if found.is_empty() {
            return Err(ConstructionError::InfeasiblePlan(format!(
                "no centrally strong set for (m1, n1, k) = ({}, {}, {})",
                p.m1, p.n1, p.k
            )));
        }
        Ok(found
            .into_iter()
            .map(|ss| {
                let label = format!("centrally strong ({}, {}, {}){}", p.m1, p.n1, p.k, if ss.strict { ", strict" } else { "" });
                Constructed::from_strong(label, ss)
            })
            .collect())
    }
}

pub struct FamilyScheme;

impl Construction for FamilyScheme {
    fn name(&self) -> &'static str {
        "family"
    }

    fn description(&self) -> &'static str {
        "explicit strict families: n1 = 1 (central column), 5 or 7"
    }

    fn build(&self, req: &ConstructRequest) -> Result<Vec<Constructed>> {
        let m1 = req.m1.ok_or(ConstructionError::MissingParam("m1"))?;
        let n1 = req.n1.ok_or(ConstructionError::MissingParam("n1"))?;
        let ss = match n1 {
            1 => central_column_strong(m1)?,
            5 => family_width5(m1)?,
            7 => family_width7(m1)?,
            _ => return Err(ConstructionError::InvalidParams(format!("no family with n1 = {n1}"))),
        };
        let p = ss.params;
        Ok(vec![Constructed::from_strong(format!("family ({}, {}, {})", p.m1, p.n1, p.k), ss)])
    }
}

pub struct ConstructionRegistry {
    schemes: BTreeMap<&'static str, Box<dyn Construction>>,
}

impl ConstructionRegistry {
    pub fn empty() -> Self {
        Self { schemes: BTreeMap::new() }
    }

    pub fn register(&mut self, scheme: Box<dyn Construction>) {
        self.schemes.insert(scheme.name(), scheme);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Construction> {
        self.schemes
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| ConstructionError::UnknownScheme(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.schemes.keys().copied().collect()
    }
}

impl Default for ConstructionRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(ZeroCoverScheme));
        r.register(Box::new(StrongScheme));
        r.register(Box::new(FamilyScheme));
        r
    }
}
