//! Board geometry for the rectangular queens graph.
//!
//! Squares use the corner frame: column `x` in `1..=n`, row `y` in `1..=m`,
//! with `(1, 1)` the lower-left square. Cells are numbered row-major,
//! `index = (y - 1) * n + (x - 1)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("board dimensions must be positive, got {m}x{n}")]
    EmptyBoard { m: usize, n: usize },
    #[error("board {m}x{n} exceeds the supported size")]
    TooLarge { m: usize, n: usize },
    #[error("square {0} lies outside the {1} board")]
    OutOfBounds(Square, BoardDims),
    #[error("square {0} appears twice")]
    Duplicate(Square),
}

/// Largest supported side length.
pub const MAX_SIDE: usize = 64;

/// A board square, `x` the column and `y` the row.
///
/// Ordering is row-major: by `y`, then by `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Square {
    pub x: i32,
    pub y: i32,
}

impl Square {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn lines(self) -> [LineId; 4] {
        lines_of(self)
    }
}

impl Ord for Square {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Square {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An `m`-row, `n`-column board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoardDims {
    pub m: usize,
    pub n: usize,
}

impl BoardDims {
    pub fn new(m: usize, n: usize) -> Result<Self, BoardError> {
        if m == 0 || n == 0 {
            return Err(BoardError::EmptyBoard { m, n });
        }
        if m > MAX_SIDE || n > MAX_SIDE {
            return Err(BoardError::TooLarge { m, n });
        }
        Ok(Self { m, n })
    }

    pub fn cells(self) -> usize {
        self.m * self.n
    }

    pub fn is_square(self) -> bool {
        self.m == self.n
    }

    pub fn transposed(self) -> Self {
        Self { m: self.n, n: self.m }
    }

    /// Returns the dims with `m <= n` and whether a transpose was needed.
    pub fn normalized(self) -> (Self, bool) {
        if self.m <= self.n {
            (self, false)
        } else {
            (self.transposed(), true)
        }
    }

    pub fn contains(self, sq: Square) -> bool {
        sq.x >= 1 && sq.y >= 1 && sq.x as usize <= self.n && sq.y as usize <= self.m
    }

    pub fn check(self, sq: Square) -> Result<(), BoardError> {
        if self.contains(sq) {
            Ok(())
        } else {
            Err(BoardError::OutOfBounds(sq, self))
        }
    }

    pub fn index(self, sq: Square) -> usize {
        debug_assert!(self.contains(sq));
        (sq.y as usize - 1) * self.n + (sq.x as usize - 1)
    }

    pub fn square(self, index: usize) -> Square {
        Square::new((index % self.n) as i32 + 1, (index / self.n) as i32 + 1)
    }

    /// All squares in row-major order.
    pub fn squares(self) -> impl Iterator<Item = Square> {
        (0..self.cells()).map(move |i| self.square(i))
    }

    /// Total number of distinct lines: rows, columns and both diagonal families.
    pub fn line_count(self) -> usize {
        self.m + self.n + 2 * (self.m + self.n - 1)
    }

    /// Every line of the board.
    pub fn lines(self) -> Vec<LineId> {
        let (m, n) = (self.m as i32, self.n as i32);
        let mut out = Vec::with_capacity(self.line_count());
        out.extend((1..=n).map(|x| LineId::new(LineKind::Column, x)));
        out.extend((1..=m).map(|y| LineId::new(LineKind::Row, y)));
        out.extend((1 - n..=m - 1).map(|d| LineId::new(LineKind::DiffDiag, d)));
        out.extend((2..=m + n).map(|s| LineId::new(LineKind::SumDiag, s)));
        out
    }

    /// Squares of `line` on this board.
    pub fn squares_on(self, line: LineId) -> Vec<Square> {
        self.squares().filter(|sq| sq.lines().contains(&line)).collect()
    }

    /// Closed neighbourhood of `sq`: the square itself plus every square it attacks.
    pub fn attack_mask(self, sq: Square) -> Bitmask {
        let mut mask = Bitmask::new(self.cells());
        let (m, n) = (self.m as i32, self.n as i32);
        for x in 1..=n {
            mask.insert(self.index(Square::new(x, sq.y)));
        }
        for y in 1..=m {
            mask.insert(self.index(Square::new(sq.x, y)));
            let dx = y - sq.y;
            for x in [sq.x + dx, sq.x - dx] {
                if (1..=n).contains(&x) {
                    mask.insert(self.index(Square::new(x, y)));
                }
            }
        }
        mask
    }
}

impl fmt::Display for BoardDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LineKind {
    Column,
    Row,
    DiffDiag,
    SumDiag,
}

/// A line of the board: a column `x`, row `y`, difference diagonal `y - x`
/// or sum diagonal `y + x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineId {
    pub kind: LineKind,
    pub number: i32,
}

impl LineId {
    pub const fn new(kind: LineKind, number: i32) -> Self {
        Self { kind, number }
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            LineKind::Column => "col",
            LineKind::Row => "row",
            LineKind::DiffDiag => "diff",
            LineKind::SumDiag => "sum",
        };
        write!(f, "{tag}{}", self.number)
    }
}

pub fn lines_of(sq: Square) -> [LineId; 4] {
    [
        LineId::new(LineKind::Column, sq.x),
        LineId::new(LineKind::Row, sq.y),
        LineId::new(LineKind::DiffDiag, sq.y - sq.x),
        LineId::new(LineKind::SumDiag, sq.y + sq.x),
    ]
}

/// True iff `a != b` and the two squares share a line.
pub fn attacks(a: Square, b: Square) -> bool {
    a != b && (a.x == b.x || a.y == b.y || a.y - a.x == b.y - b.x || a.y + a.x == b.y + b.x)
}

/// Fixed-length bit set over the cells of a board, stored in 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitmask {
    len: usize,
    words: Vec<u64>,
}

impl Bitmask {
    pub fn new(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut mask = Self::new(len);
        for w in &mut mask.words {
            *w = !0;
        }
        mask.trim();
        mask
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &Bitmask) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.contains(i))
    }
}

/// A set of distinct squares on a board, kept sorted row-major, with its
/// coverage mask precomputed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QueenSet {
    dims: BoardDims,
    squares: Vec<Square>,
    coverage: Bitmask,
}

impl QueenSet {
    pub fn new(dims: BoardDims, squares: impl IntoIterator<Item = Square>) -> Result<Self, BoardError> {
        let mut squares: Vec<Square> = squares.into_iter().collect();
        for &sq in &squares {
            dims.check(sq)?;
        }
        squares.sort_unstable();
        if let Some(w) = squares.windows(2).find(|w| w[0] == w[1]) {
            return Err(BoardError::Duplicate(w[0]));
        }
        let coverage = coverage_mask(&squares, dims)?;
        Ok(Self { dims, squares, coverage })
    }

    pub fn empty(dims: BoardDims) -> Self {
        Self { dims, squares: Vec::new(), coverage: Bitmask::new(dims.cells()) }
    }

    pub fn dims(&self) -> BoardDims {
        self.dims
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn contains(&self, sq: Square) -> bool {
        self.squares.binary_search(&sq).is_ok()
    }

    pub fn coverage(&self) -> &Bitmask {
        &self.coverage
    }

    pub fn covered_count(&self) -> usize {
        self.coverage.count()
    }

    pub fn is_dominating(&self) -> bool {
        self.coverage.is_full()
    }

    pub fn uncovered(&self) -> Vec<Square> {
        (0..self.dims.cells())
            .filter(|&i| !self.coverage.contains(i))
            .map(|i| self.dims.square(i))
            .collect()
    }

    /// Occupied lines counted with multiplicity, four per square.
    pub fn occupied_lines(&self) -> Vec<LineId> {
        let mut lines: Vec<LineId> = self.squares.iter().flat_map(|sq| sq.lines()).collect();
        lines.sort_unstable();
        lines
    }

    /// The distinct occupied lines.
    pub fn line_set(&self) -> BTreeSet<LineId> {
        self.squares.iter().flat_map(|sq| sq.lines()).collect()
    }

    /// True iff no two members attack each other.
    pub fn is_independent(&self) -> bool {
        self.squares
            .iter()
            .enumerate()
            .all(|(i, &a)| self.squares[i + 1..].iter().all(|&b| !attacks(a, b)))
    }

    /// Number of members covering `sq` (occupying it or attacking it).
    pub fn cover_multiplicity(&self, sq: Square) -> usize {
        self.squares.iter().filter(|&&q| q == sq || attacks(q, sq)).count()
    }

    pub fn with_square(&self, sq: Square) -> Result<Self, BoardError> {
        Self::new(self.dims, self.squares.iter().copied().chain([sq]))
    }
}

impl fmt::Display for QueenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.dims)?;
        for (i, sq) in self.squares.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{sq}")?;
        }
        write!(f, "}}")
    }
}

pub fn coverage_mask(queens: &[Square], dims: BoardDims) -> Result<Bitmask, BoardError> {
    let mut mask = Bitmask::new(dims.cells());
    for &q in queens {
        dims.check(q)?;
        mask.union_with(&dims.attack_mask(q));
    }
    Ok(mask)
}

pub fn is_dominating(queens: &[Square], dims: BoardDims) -> Result<bool, BoardError> {
    Ok(coverage_mask(queens, dims)?.is_full())
}

/// Swaps rows and columns.
pub fn transpose(set: &QueenSet) -> QueenSet {
    let dims = set.dims().transposed();
    QueenSet::new(dims, set.squares().iter().map(|sq| Square::new(sq.y, sq.x)))
        .expect("transpose preserves bounds and distinctness")
}

/// Converts centered coordinates (origin at the board center) to the corner
/// frame. Returns `None` when the center is not a square center for this
/// parity of dims and the point cannot land on a square.
pub fn from_centered(dims: BoardDims, cx: i32, cy: i32) -> Option<Square> {
    // doubled corner coordinate: 2x = 2cx + n + 1
    let x2 = 2 * cx + dims.n as i32 + 1;
    let y2 = 2 * cy + dims.m as i32 + 1;
    (x2 % 2 == 0 && y2 % 2 == 0).then(|| Square::new(x2 / 2, y2 / 2))
}

/// Converts centered doubled coordinates (squares of edge length two) to the
/// corner frame.
pub fn from_centered_doubled(dims: BoardDims, cx2: i32, cy2: i32) -> Option<Square> {
    let x = cx2 + dims.n as i32 + 1;
    let y = cy2 + dims.m as i32 + 1;
    (x % 2 == 0 && y % 2 == 0).then(|| Square::new(x / 2, y / 2))
}
