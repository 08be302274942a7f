//! Board isometries, canonical forms, foursomes and the flip partition.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{BoardDims, QueenSet, Square};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("isometry {0} needs a square board, got {1}")]
    InvalidIsometry(Isometry, BoardDims),
    #[error("sets live on different boards ({0} and {1})")]
    MixedDims(BoardDims, BoardDims),
    #[error("foursome {0} is not contained in the set")]
    NotASubset(Foursome),
    #[error("flipping foursome {0} moves square {1} off the board")]
    OffBoard(Foursome, Square),
    #[error("flipping foursome {0} lands on occupied square {1}")]
    Collision(Foursome, Square),
}

/// One of the eight symmetries of a square board. The last four are only
/// available when `m == n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Isometry {
    Identity,
    /// Mirror across the vertical center line (`x -> n + 1 - x`).
    FlipLeftRight,
    /// Mirror across the horizontal center line (`y -> m + 1 - y`).
    FlipUpDown,
    Rotate180,
    /// Mirror across the main diagonal (`(x, y) -> (y, x)`).
    Transpose,
    AntiTranspose,
    Rotate90,
    Rotate270,
}

impl Isometry {
    pub const ALL: [Isometry; 8] = [
        Isometry::Identity,
        Isometry::FlipLeftRight,
        Isometry::FlipUpDown,
        Isometry::Rotate180,
        Isometry::Transpose,
        Isometry::AntiTranspose,
        Isometry::Rotate90,
        Isometry::Rotate270,
    ];

    pub fn needs_square(self) -> bool {
        matches!(self, Isometry::Transpose | Isometry::AntiTranspose | Isometry::Rotate90 | Isometry::Rotate270)
    }

    pub fn is_valid_for(self, dims: BoardDims) -> bool {
        dims.is_square() || !self.needs_square()
    }

    pub fn name(self) -> &'static str {
        match self {
            Isometry::Identity => "identity",
            Isometry::FlipLeftRight => "flip-lr",
            Isometry::FlipUpDown => "flip-ud",
            Isometry::Rotate180 => "rot180",
            Isometry::Transpose => "transpose",
            Isometry::AntiTranspose => "antitranspose",
            Isometry::Rotate90 => "rot90",
            Isometry::Rotate270 => "rot270",
        }
    }

    // Action on centered vectors (u, v) as a signed permutation matrix.
    fn matrix(self) -> [[i32; 2]; 2] {
        match self {
            Isometry::Identity => [[1, 0], [0, 1]],
            Isometry::FlipLeftRight => [[-1, 0], [0, 1]],
            Isometry::FlipUpDown => [[1, 0], [0, -1]],
            Isometry::Rotate180 => [[-1, 0], [0, -1]],
            Isometry::Transpose => [[0, 1], [1, 0]],
            Isometry::AntiTranspose => [[0, -1], [-1, 0]],
            Isometry::Rotate90 => [[0, -1], [1, 0]],
            Isometry::Rotate270 => [[0, 1], [-1, 0]],
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Isometry) -> Isometry {
        let (a, b) = (self.matrix(), other.matrix());
        let mut c = [[0; 2]; 2];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Isometry::ALL.into_iter().find(|g| g.matrix() == c).expect("dihedral group is closed")
    }

    pub fn inverse(self) -> Isometry {
        Isometry::ALL.into_iter().find(|g| g.compose(self) == Isometry::Identity).unwrap()
    }

    /// Image of `sq`; assumes the isometry is valid for `dims`.
    pub fn map_square(self, dims: BoardDims, sq: Square) -> Square {
        // doubled centered coordinates keep everything integral
        let u = 2 * sq.x - dims.n as i32 - 1;
        let v = 2 * sq.y - dims.m as i32 - 1;
        let [[a, b], [c, d]] = self.matrix();
        let (u2, v2) = (a * u + b * v, c * u + d * v);
        Square::new((u2 + dims.n as i32 + 1) / 2, (v2 + dims.m as i32 + 1) / 2)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The isometries valid for `dims`: four for rectangles, eight for squares.
pub fn group(dims: BoardDims) -> Vec<Isometry> {
    Isometry::ALL.into_iter().filter(|g| g.is_valid_for(dims)).collect()
}

pub fn apply(iso: Isometry, set: &QueenSet) -> Result<QueenSet, SymmetryError> {
    let dims = set.dims();
    if !iso.is_valid_for(dims) {
        return Err(SymmetryError::InvalidIsometry(iso, dims));
    }
    Ok(QueenSet::new(dims, set.squares().iter().map(|&sq| iso.map_square(dims, sq)))
        .expect("isometries are bijections of the board"))
}

/// Lexicographically smallest row-major image of `set` under the board group.
pub fn canonical(set: &QueenSet) -> QueenSet {
    group(set.dims())
        .into_iter()
        .map(|g| apply(g, set).unwrap())
        .min_by(|a, b| a.squares().cmp(b.squares()))
        .unwrap()
}

/// Isometries fixing `set`.
pub fn stabilizer(set: &QueenSet) -> Vec<Isometry> {
    group(set.dims()).into_iter().filter(|&g| apply(g, set).unwrap() == *set).collect()
}

/// Short textual description of the stabilizer, e.g. `"rot180"` or `"none"`.
pub fn symmetry_descriptor(set: &QueenSet) -> String {
    let stab: Vec<&str> = stabilizer(set)
        .into_iter()
        .filter(|&g| g != Isometry::Identity)
        .map(Isometry::name)
        .collect();
    if stab.is_empty() {
        "none".to_string()
    } else {
        stab.join(",")
    }
}

/// Number of distinct images of `set` under the board group.
pub fn orbit_size(set: &QueenSet) -> usize {
    group(set.dims()).len() / stabilizer(set).len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivClass {
    pub representative: QueenSet,
    /// Distinct input sets that fell into this class.
    pub size: usize,
}

/// Partitions `sets` by canonical form. Classes come back sorted by
/// representative.
pub fn classes(sets: &[QueenSet]) -> Result<Vec<EquivClass>, SymmetryError> {
    let Some(first) = sets.first() else {
        return Ok(Vec::new());
    };
    let mut by_rep: BTreeMap<Vec<Square>, (QueenSet, Vec<&[Square]>)> = BTreeMap::new();
    for set in sets {
        if set.dims() != first.dims() {
            return Err(SymmetryError::MixedDims(first.dims(), set.dims()));
        }
        let rep = canonical(set);
        let entry = by_rep.entry(rep.squares().to_vec()).or_insert_with(|| (rep, Vec::new()));
        if !entry.1.contains(&set.squares()) {
            entry.1.push(set.squares());
        }
    }
    Ok(by_rep
        .into_values()
        .map(|(representative, members)| EquivClass { representative, size: members.len() })
        .collect())
}

/// Four squares `(x+a, y+b), (x-a, y-b), (x-b, y+a), (x+b, y-a)` about the
/// center `(x, y)`, stored doubled so that half-integer centers stay exact.
///
/// Normalized so that `a2 > |b2|`; `a2, b2, cx2, cy2` share one parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Foursome {
    pub cx2: i32,
    pub cy2: i32,
    pub a2: i32,
    pub b2: i32,
}

impl Foursome {
    /// Builds a normalized foursome from doubled center and doubled offsets.
    pub fn new(cx2: i32, cy2: i32, a2: i32, b2: i32) -> Option<Self> {
        if a2 == 0 || b2 == 0 || a2.abs() == b2.abs() {
            return None;
        }
        let parity = cx2.rem_euclid(2);
        if [cy2, a2, b2].iter().any(|v| v.rem_euclid(2) != parity) {
            return None;
        }
        // rotate (a, b) by quarter turns into the cone a > |b|
        let (mut a, mut b) = (a2, b2);
        while !(a > b.abs()) {
            (a, b) = (-b, a);
        }
        Some(Self { cx2, cy2, a2: a, b2: b })
    }

    pub fn members(&self) -> [Square; 4] {
        let Self { cx2, cy2, a2, b2 } = *self;
        [
            Square::new((cx2 + a2) / 2, (cy2 + b2) / 2),
            Square::new((cx2 - a2) / 2, (cy2 - b2) / 2),
            Square::new((cx2 - b2) / 2, (cy2 + a2) / 2),
            Square::new((cx2 + b2) / 2, (cy2 - a2) / 2),
        ]
    }

    /// Center on a square rather than on a corner between squares.
    pub fn has_integer_center(&self) -> bool {
        self.cx2 % 2 == 0
    }

    /// The foursome reflected across the horizontal line through its center.
    pub fn flipped(&self) -> Foursome {
        Foursome::new(self.cx2, self.cy2, self.a2, -self.b2).unwrap()
    }

    /// Recognizes four squares as a foursome.
    pub fn from_squares(squares: [Square; 4]) -> Option<Self> {
        let sx: i32 = squares.iter().map(|s| s.x).sum();
        let sy: i32 = squares.iter().map(|s| s.y).sum();
        if sx % 2 != 0 || sy % 2 != 0 {
            return None;
        }
        let (cx2, cy2) = (sx / 2, sy / 2);
        let p = squares[0];
        let f = Foursome::new(cx2, cy2, 2 * p.x - cx2, 2 * p.y - cy2)?;
        let mut want = f.members();
        let mut got = squares;
        want.sort_unstable();
        got.sort_unstable();
        (want == got).then_some(f)
    }
}

fn half(v: i32) -> String {
    if v % 2 == 0 {
        format!("{}", v / 2)
    } else {
        format!("{v}/2")
    }
}

impl fmt::Display for Foursome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "center ({}, {}) (a, b) = ({}, {})",
            half(self.cx2),
            half(self.cy2),
            half(self.a2),
            half(self.b2)
        )
    }
}

/// Every foursome contained in `set`, sorted.
pub fn foursomes_of(set: &QueenSet) -> Vec<Foursome> {
    let sq = set.squares();
    let k = sq.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for t in l + 1..k {
                    if let Some(f) = Foursome::from_squares([sq[i], sq[j], sq[l], sq[t]]) {
                        out.push(f);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Replaces the foursome `f` in `set` by its reflection.
pub fn flip(set: &QueenSet, f: &Foursome) -> Result<QueenSet, SymmetryError> {
    let dims = set.dims();
    let old = f.members();
    if !old.iter().all(|&s| set.contains(s)) {
        return Err(SymmetryError::NotASubset(*f));
    }
    let new = f.flipped().members();
    for &s in &new {
        if !dims.contains(s) {
            return Err(SymmetryError::OffBoard(*f, s));
        }
        if set.contains(s) {
            return Err(SymmetryError::Collision(*f, s));
        }
    }
    let kept = set.squares().iter().copied().filter(|s| !old.contains(s));
    Ok(QueenSet::new(dims, kept.chain(new)).expect("flip keeps squares distinct and on the board"))
}

/// One cell of the flip partition: indices into the class list, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub cells: Vec<Cell>,
    /// Legal flips whose result was not among the given classes.
    pub unmatched_flips: usize,
    /// Flips rejected because a square left the board or collided.
    pub illegal_flips: usize,
}

impl Partition {
    /// Cell size -> number of cells.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in &self.cells {
            *h.entry(c.members.len()).or_insert(0) += 1;
        }
        h
    }
}

/// Which foursomes take part in flips.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FoursomeCenters {
    /// Integer and half-integer centers alike.
    #[default]
    All,
    /// Only foursomes centered on a square.
    Integer,
}

impl FoursomeCenters {
    pub fn admits(self, f: &Foursome) -> bool {
        self == FoursomeCenters::All || f.has_integer_center()
    }
}

/// Transitive closure of "equivalent, or one foursome flip apart" over
/// equivalence classes.
pub fn partition(classes: &[EquivClass]) -> Partition {
    partition_with(classes, FoursomeCenters::All)
}

pub fn partition_with(classes: &[EquivClass], centers: FoursomeCenters) -> Partition {
    let index: HashMap<&[Square], usize> =
        classes.iter().enumerate().map(|(i, c)| (c.representative.squares(), i)).collect();
    let mut uf = UnionFind::<usize>::new(classes.len());
    let (mut unmatched, mut illegal) = (0, 0);
    for (i, class) in classes.iter().enumerate() {
        let rep = &class.representative;
        for f in foursomes_of(rep).into_iter().filter(|f| centers.admits(f)) {
            match flip(rep, &f) {
                Ok(flipped) => match index.get(canonical(&flipped).squares()) {
                    Some(&j) => {
                        uf.union(i, j);
                    }
                    None => unmatched += 1,
                },
                Err(_) => illegal += 1,
            }
        }
    }
    let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..classes.len() {
        cells.entry(uf.find(i)).or_default().push(i);
    }
    let mut cells: Vec<Cell> = cells.into_values().map(|members| Cell { members }).collect();
    cells.sort_by_key(|c| c.members[0]);
    Partition { cells, unmatched_flips: unmatched, illegal_flips: illegal }
}
