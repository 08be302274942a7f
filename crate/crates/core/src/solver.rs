//! Exact domination numbers by branch and bound.
//!
//! The search always branches on the first uncovered square in row-major
//! order; the candidates are the squares covering it, tried center-first.
//! After a candidate's subtree is exhausted it is forbidden in the sibling
//! subtrees, so every dominating set is reached along exactly one path.
//!
//! How the bound on the number of queens evolves is left to a
//! [`SearchStrategy`], selected by name from [`StrategyRegistry`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{BoardDims, QueenSet, Square};
use crate::bounds;
use crate::symmetry::{self, EquivClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("unknown search strategy {0:?}")]
    UnknownStrategy(String),
    #[error("input set does not dominate its board")]
    InputNotDominating,
    #[error("need at least one queen")]
    NoQueens,
    #[error(transparent)]
    Symmetry(#[from] symmetry::SymmetryError),
}

/// Limits on a search. Hitting any of them yields [`Status::Incomplete`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_queens: Option<usize>,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_queens: None, node_limit: Some(1_000_000_000), time_limit: None }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self { max_queens: None, node_limit: None, time_limit: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    Incomplete,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exact => "exact",
            Status::Incomplete => "incomplete",
        })
    }
}

/// Pruning switches and parallelism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub strategy: String,
    /// Cut when more than `k` rows (or columns) each hold more than `3k`
    /// uncovered squares, `k` the queens still to place.
    pub line_bound: bool,
    /// Cut when the `k` best remaining placements cannot cover what is left.
    pub capacity_bound: bool,
    /// Stop as soon as a set meets the proved lower bound.
    pub stop_at_lower_bound: bool,
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            strategy: "descending".to_string(),
            line_bound: true,
            capacity_bound: true,
            stop_at_lower_bound: true,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub dims: BoardDims,
    /// Exact when `status == Exact`, otherwise the best upper bound found.
    pub gamma: usize,
    /// Largest size proved impossible plus one.
    pub lower: usize,
    pub witnesses: Vec<QueenSet>,
    pub status: Status,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct EnumerateOutcome {
    pub dims: BoardDims,
    pub gamma: usize,
    pub classes: Vec<EquivClass>,
    /// Number of concrete minimum dominating sets.
    pub concrete: usize,
    pub status: Status,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct NearOutcome {
    pub dims: BoardDims,
    pub queens: usize,
    pub max_covered: usize,
    pub classes: Vec<EquivClass>,
    pub concrete: usize,
    pub status: Status,
    pub nodes: u64,
}

/// Shared search control: node accounting, limits and the bound on queens
/// for the tightening mode.
pub struct Control {
    nodes: AtomicU64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    exhausted: AtomicBool,
    done: AtomicBool,
    limit: AtomicUsize,
    stop_below: usize,
}

impl Control {
    fn new(budget: &SearchBudget) -> Self {
        Self {
            nodes: AtomicU64::new(0),
            node_limit: budget.node_limit,
            deadline: budget.time_limit.map(|t| Instant::now() + t),
            exhausted: AtomicBool::new(false),
            done: AtomicBool::new(false),
            limit: AtomicUsize::new(usize::MAX),
            stop_below: 0,
        }
    }

    /// Adds `n` nodes; returns true when the search must stop.
    fn tick(&self, n: u64) -> bool {
        let total = self.nodes.fetch_add(n, Ordering::Relaxed) + n;
        if self.node_limit.is_some_and(|l| total > l) || self.deadline.is_some_and(|d| Instant::now() > d) {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        self.should_stop()
    }

    fn should_stop(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed) || self.done.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}

/// What a search does with a dominating set once found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Stop at the first set.
    First,
    /// Keep going with the bound lowered to one below each set found.
    Tighten,
    /// Collect every set within the bound.
    All,
}

#[derive(Debug, Clone, Default)]
pub struct SearchResult {
    /// Cell indices (normalized frame), each list sorted.
    pub sets: Vec<Vec<u16>>,
    pub complete: bool,
}

/// Word-width independent view of a search engine.
pub trait Kernel: Send + Sync {
    fn dims(&self) -> BoardDims;
    /// Searches for dominating sets of at most `limit` queens.
    fn search(&self, limit: usize, mode: Mode, ctl: &Control) -> SearchResult;
    /// Best coverage by exactly `k` queens and every arrangement achieving it.
    fn max_coverage(&self, k: usize, ctl: &Control) -> (usize, Vec<Vec<u16>>);
}

/// A policy for driving the kernel to an exact domination number.
pub trait SearchStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Returns the best set found (size = exact gamma when the search was
    /// not cut short) and the lowest size still possible.
    fn run(&self, kernel: &dyn Kernel, lower: usize, upper: &[u16], ctl: &Control) -> (Vec<u16>, usize);
}

/// Lowers the bound each time a set is found.
pub struct Descending;

impl SearchStrategy for Descending {
    fn name(&self) -> &'static str {
        "descending"
    }

    fn description(&self) -> &'static str {
        "branch and bound: after a k-queen set, only look for at most k-1 queens"
    }

    fn run(&self, kernel: &dyn Kernel, lower: usize, upper: &[u16], ctl: &Control) -> (Vec<u16>, usize) {
        if upper.len() <= lower {
            return (upper.to_vec(), upper.len());
        }
        ctl.limit.store(upper.len() - 1, Ordering::Relaxed);
        let res = kernel.search(upper.len() - 1, Mode::Tighten, ctl);
        let best = res.sets.into_iter().min_by_key(|s| s.len()).unwrap_or_else(|| upper.to_vec());
        let proved = if res.complete || best.len() <= lower { best.len() } else { lower };
        (best, proved)
    }
}

/// Tries k = lower, lower + 1, ... until a set exists.
pub struct Deepening;

impl SearchStrategy for Deepening {
    fn name(&self) -> &'static str {
        "deepening"
    }

    fn description(&self) -> &'static str {
        "iterative deepening from the proved lower bound"
    }

    fn run(&self, kernel: &dyn Kernel, lower: usize, upper: &[u16], ctl: &Control) -> (Vec<u16>, usize) {
        for k in lower..upper.len() {
            let res = kernel.search(k, Mode::First, ctl);
            if let Some(set) = res.sets.into_iter().next() {
                return (set, k);
            }
            if !res.complete {
                return (upper.to_vec(), k);
            }
        }
        (upper.to_vec(), upper.len())
    }
}

/// Named search strategies.
pub struct StrategyRegistry {
    entries: BTreeMap<&'static str, Box<dyn SearchStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self { entries: BTreeMap::new() }
    }

    pub fn register(&mut self, strategy: Box<dyn SearchStrategy>) {
        self.entries.insert(strategy.name(), strategy);
    }

    pub fn get(&self, name: &str) -> Option<&dyn SearchStrategy> {
        self.entries.get(name).map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(Descending));
        reg.register(Box::new(Deepening));
        reg
    }
}

type Words<const W: usize> = [u64; W];

#[inline(always)]
fn or<const W: usize>(a: &Words<W>, b: &Words<W>) -> Words<W> {
    let mut r = *a;
    for i in 0..W {
        r[i] |= b[i];
    }
    r
}

#[inline(always)]
fn and_not<const W: usize>(a: &Words<W>, b: &Words<W>) -> Words<W> {
    let mut r = *a;
    for i in 0..W {
        r[i] &= !b[i];
    }
    r
}

#[inline(always)]
fn popcount_and<const W: usize>(a: &Words<W>, b: &Words<W>) -> u32 {
    let mut c = 0;
    for i in 0..W {
        c += (a[i] & b[i]).count_ones();
    }
    c
}

#[inline(always)]
fn popcount<const W: usize>(a: &Words<W>) -> u32 {
    a.iter().map(|w| w.count_ones()).sum()
}

#[inline(always)]
fn first_one<const W: usize>(a: &Words<W>) -> Option<usize> {
    a.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[inline(always)]
fn test<const W: usize>(a: &Words<W>, i: usize) -> bool {
    a[i / 64] >> (i % 64) & 1 == 1
}

#[inline(always)]
fn set<const W: usize>(a: &mut Words<W>, i: usize) {
    a[i / 64] |= 1 << (i % 64);
}

#[inline(always)]
fn is_subset<const W: usize>(a: &Words<W>, b: &Words<W>) -> bool {
    (0..W).all(|i| a[i] & !b[i] == 0)
}

/// Bitboard engine for boards of up to `64 * W` cells.
pub struct Engine<const W: usize> {
    dims: BoardDims,
    cells: usize,
    full: Words<W>,
    attack: Vec<Words<W>>,
    candidates: Vec<Vec<u16>>,
    rows: Vec<Words<W>>,
    cols: Vec<Words<W>>,
    line_bound: bool,
    capacity_bound: bool,
    threads: usize,
}

impl<const W: usize> Engine<W> {
    pub fn new(dims: BoardDims, cfg: &SolverConfig) -> Self {
        let cells = dims.cells();
        assert!(cells <= 64 * W);
        let to_words = |mask: &crate::board::Bitmask| {
            let mut w = [0u64; W];
            w[..mask.words().len()].copy_from_slice(mask.words());
            w
        };
        let attack: Vec<Words<W>> = dims.squares().map(|sq| to_words(&dims.attack_mask(sq))).collect();
        let full = to_words(&crate::board::Bitmask::full(cells));
        // doubled Chebyshev distance from the board center
        let center_dist = |sq: Square| {
            let dx = (2 * sq.x - dims.n as i32 - 1).abs();
            let dy = (2 * sq.y - dims.m as i32 - 1).abs();
            dx.max(dy)
        };
        let candidates = (0..cells)
            .map(|t| {
                let mut c: Vec<u16> = (0..cells).filter(|&q| test(&attack[q], t)).map(|q| q as u16).collect();
                c.sort_by_key(|&q| (center_dist(dims.square(q as usize)), q));
                c
            })
            .collect();
        let line = |pred: &dyn Fn(Square) -> bool| {
            let mut w = [0u64; W];
            for (i, sq) in dims.squares().enumerate() {
                if pred(sq) {
                    set(&mut w, i);
                }
            }
            w
        };
        let rows = (1..=dims.m as i32).map(|y| line(&|s: Square| s.y == y)).collect();
        let cols = (1..=dims.n as i32).map(|x| line(&|s: Square| s.x == x)).collect();
        Self {
            dims,
            cells,
            full,
            attack,
            candidates,
            rows,
            cols,
            line_bound: cfg.line_bound,
            capacity_bound: cfg.capacity_bound,
            threads: cfg.threads.max(1),
        }
    }

    fn lines_ok(&self, unc: &Words<W>, k: usize) -> bool {
        let cap = 3 * k as u32;
        let mut forced = 0;
        for r in &self.rows {
            if popcount_and(unc, r) > cap {
                forced += 1;
                if forced > k {
                    return false;
                }
            }
        }
        forced = 0;
        for c in &self.cols {
            if popcount_and(unc, c) > cap {
                forced += 1;
                if forced > k {
                    return false;
                }
            }
        }
        true
    }

    fn capacity_ok(&self, unc: &Words<W>, forbidden: &Words<W>, k: usize) -> bool {
        let need = popcount(unc);
        let mut best = [0u32; 16];
        let k = k.min(best.len());
        for q in 0..self.cells {
            if test(forbidden, q) {
                continue;
            }
            let g = popcount_and(&self.attack[q], unc);
            if g > best[k - 1] {
                let mut i = k - 1;
                while i > 0 && best[i - 1] < g {
                    best[i] = best[i - 1];
                    i -= 1;
                }
                best[i] = g;
            }
        }
        best[..k].iter().sum::<u32>() >= need
    }
}

struct Walker<'a, const W: usize> {
    eng: &'a Engine<W>,
    ctl: &'a Control,
    mode: Mode,
    limit: usize,
    stack: Vec<u16>,
    found: Vec<Vec<u16>>,
    pending: u64,
}

const TICK: u64 = 1 << 12;

impl<const W: usize> Walker<'_, W> {
    fn limit(&self) -> usize {
        match self.mode {
            Mode::Tighten => self.ctl.limit.load(Ordering::Relaxed).min(self.limit),
            _ => self.limit,
        }
    }

    fn flush(&mut self) -> bool {
        let n = std::mem::take(&mut self.pending);
        self.ctl.tick(n)
    }

    /// Records the current stack; returns true when the search should stop.
    fn record(&mut self) -> bool {
        let mut set = self.stack.clone();
        set.sort_unstable();
        let size = set.len();
        self.found.push(set);
        match self.mode {
            Mode::First => {
                self.ctl.done.store(true, Ordering::Relaxed);
                true
            }
            Mode::Tighten => {
                self.ctl.limit.fetch_min(size.saturating_sub(1), Ordering::Relaxed);
                if size <= self.ctl.stop_below {
                    self.ctl.done.store(true, Ordering::Relaxed);
                    return true;
                }
                false
            }
            Mode::All => false,
        }
    }

    fn dfs(&mut self, covered: Words<W>, forbidden: Words<W>) -> bool {
        self.pending += 1;
        if self.pending >= TICK && self.flush() {
            return true;
        }
        let eng = self.eng;
        let unc = and_not(&eng.full, &covered);
        let Some(first) = first_one(&unc) else {
            return self.record();
        };
        let depth = self.stack.len();
        let limit = self.limit();
        if depth >= limit {
            return false;
        }
        let k = limit - depth;
        if k == 1 {
            for &c in &eng.candidates[first] {
                if !test(&forbidden, c as usize) && is_subset(&unc, &eng.attack[c as usize]) {
                    self.stack.push(c);
                    let stop = self.record();
                    self.stack.pop();
                    if stop || self.mode == Mode::Tighten {
                        return stop;
                    }
                }
            }
            return false;
        }
        if eng.line_bound && !eng.lines_ok(&unc, k) {
            return false;
        }
        if eng.capacity_bound && !eng.capacity_ok(&unc, &forbidden, k) {
            return false;
        }
        let mut forb = forbidden;
        for &c in &eng.candidates[first] {
            if test(&forb, c as usize) {
                continue;
            }
            self.stack.push(c);
            let stop = self.dfs(or(&covered, &eng.attack[c as usize]), forb);
            self.stack.pop();
            if stop {
                return true;
            }
            set(&mut forb, c as usize);
            if self.limit() <= depth {
                break;
            }
        }
        false
    }

    fn finish(mut self) -> Vec<Vec<u16>> {
        self.flush();
        self.found
    }

    fn combos(&mut self, start: usize, k: usize, covered: Words<W>, best: &mut usize) -> bool {
        if self.stack.len() == k {
            self.pending += 1;
            if self.pending >= TICK && self.flush() {
                return true;
            }
            let c = popcount(&covered) as usize;
            if c > *best {
                *best = c;
                self.found.clear();
            }
            if c == *best {
                self.found.push(self.stack.clone());
            }
            return false;
        }
        let left = k - self.stack.len();
        for q in start..=self.eng.cells - left {
            self.stack.push(q as u16);
            let stop = self.combos(q + 1, k, or(&covered, &self.eng.attack[q]), best);
            self.stack.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

impl<const W: usize> Kernel for Engine<W> {
    fn dims(&self) -> BoardDims {
        self.dims
    }

    fn search(&self, limit: usize, mode: Mode, ctl: &Control) -> SearchResult {
        let walker = |stack: Vec<u16>| Walker { eng: self, ctl, mode, limit, stack, found: Vec::new(), pending: 0 };
        let root = &self.candidates[0];
        let sets = if self.threads <= 1 || limit == 0 {
            let mut w = walker(Vec::new());
            w.dfs([0; W], [0; W]);
            w.finish()
        } else {
            // fan out over the first placement; branch i forbids the earlier ones
            let tasks: Vec<(u16, Words<W>)> = root
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let mut forb = [0; W];
                    for &p in &root[..i] {
                        set(&mut forb, p as usize);
                    }
                    (c, forb)
                })
                .collect();
            let pool = rayon::ThreadPoolBuilder::new().num_threads(self.threads).build().expect("thread pool");
            let per_task: Vec<Vec<Vec<u16>>> = pool.install(|| {
                tasks
                    .par_iter()
                    .map(|&(c, forb)| {
                        if ctl.should_stop() {
                            return Vec::new();
                        }
                        let mut w = walker(vec![c]);
                        if w.limit() >= 1 {
                            w.dfs(self.attack[c as usize], forb);
                        }
                        w.finish()
                    })
                    .collect()
            });
            per_task.into_iter().flatten().collect()
        };
        let mut sets = sets;
        sets.sort();
        SearchResult { sets, complete: !ctl.exhausted() }
    }

    fn max_coverage(&self, k: usize, ctl: &Control) -> (usize, Vec<Vec<u16>>) {
        let mut w = Walker { eng: self, ctl, mode: Mode::All, limit: k, stack: Vec::new(), found: Vec::new(), pending: 0 };
        let mut best = 0;
        if k <= self.cells {
            w.combos(0, k, [0; W], &mut best);
        }
        (best, w.finish())
    }
}

/// Builds an engine sized for `dims`.
pub fn kernel(dims: BoardDims, cfg: &SolverConfig) -> Box<dyn Kernel> {
    match dims.cells().div_ceil(64) {
        0 | 1 => Box::new(Engine::<1>::new(dims, cfg)),
        2 => Box::new(Engine::<2>::new(dims, cfg)),
        3 => Box::new(Engine::<3>::new(dims, cfg)),
        4 => Box::new(Engine::<4>::new(dims, cfg)),
        5 | 6 => Box::new(Engine::<6>::new(dims, cfg)),
        7 | 8 => Box::new(Engine::<8>::new(dims, cfg)),
        9..=16 => Box::new(Engine::<16>::new(dims, cfg)),
        17..=32 => Box::new(Engine::<32>::new(dims, cfg)),
        _ => Box::new(Engine::<64>::new(dims, cfg)),
    }
}

/// Converts cell indices on the normalized board back to a set on `orig`.
fn to_queen_set(orig: BoardDims, transposed: bool, cells: &[u16]) -> QueenSet {
    let norm = orig.normalized().0;
    let squares = cells.iter().map(|&c| {
        let sq = norm.square(c as usize);
        if transposed {
            Square::new(sq.y, sq.x)
        } else {
            sq
        }
    });
    QueenSet::new(orig, squares).expect("engine cells are distinct and on the board")
}

/// A full column of queens dominates any board with `m <= n`.
fn column_witness(norm: BoardDims) -> Vec<u16> {
    let x = (norm.n as i32 + 1) / 2;
    (1..=norm.m as i32).map(|y| norm.index(Square::new(x, y)) as u16).collect()
}

pub struct Solver {
    pub config: SolverConfig,
    pub budget: SearchBudget,
    registry: StrategyRegistry,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new(SolverConfig::default(), SearchBudget::default())
    }
}

impl Solver {
    pub fn new(config: SolverConfig, budget: SearchBudget) -> Self {
        Self { config, budget, registry: StrategyRegistry::default() }
    }

    pub fn registry(&self) -> &StrategyRegistry {
        &self.registry
    }

    fn strategy(&self) -> Result<&dyn SearchStrategy, SolverError> {
        self.registry
            .get(&self.config.strategy)
            .ok_or_else(|| SolverError::UnknownStrategy(self.config.strategy.clone()))
    }

    fn lower_bound(&self, norm: BoardDims) -> usize {
        if self.config.stop_at_lower_bound {
            bounds::best_lower(norm.m, norm.n).best_proved.max(1)
        } else {
            1
        }
    }

    /// Computes the domination number with one witness.
    pub fn gamma(&self, dims: BoardDims) -> Result<SolveOutcome, SolverError> {
        let start = Instant::now();
        let strategy = self.strategy()?;
        let (norm, transposed) = dims.normalized();
        let kern = kernel(norm, &self.config);
        let mut ctl = Control::new(&self.budget);
        let lower = self.lower_bound(norm);
        ctl.stop_below = lower;
        let column = column_witness(norm);
        // a cap below m is searched as if a (cap + 1)-set were already known
        let cap = self.budget.max_queens.filter(|&c| c + 1 < column.len());
        let upper = match cap {
            Some(c) => &column[..c + 1],
            None => &column[..],
        };
        let (best, proved) = strategy.run(kern.as_ref(), lower, upper, &ctl);
        let (best, status) = if cap.is_some() && best.len() == upper.len() {
            (column.clone(), Status::Incomplete)
        } else if !ctl.exhausted() && proved == best.len() {
            (best, Status::Exact)
        } else {
            (best, Status::Incomplete)
        };
        Ok(SolveOutcome {
            dims,
            gamma: best.len(),
            lower: proved,
            witnesses: vec![to_queen_set(dims, transposed, &best)],
            status,
            nodes: ctl.nodes(),
            elapsed: start.elapsed(),
        })
    }

    /// All minimum dominating sets of `dims`, grouped into equivalence classes.
    pub fn enumerate_min(&self, dims: BoardDims) -> Result<EnumerateOutcome, SolverError> {
        let start = Instant::now();
        let solved = self.gamma(dims)?;
        let (norm, transposed) = dims.normalized();
        let mut nodes = solved.nodes;
        if solved.status != Status::Exact {
            return Ok(EnumerateOutcome {
                dims,
                gamma: solved.gamma,
                classes: symmetry::classes(&solved.witnesses)?,
                concrete: solved.witnesses.len(),
                status: Status::Incomplete,
                nodes,
                elapsed: start.elapsed(),
            });
        }
        let kern = kernel(norm, &self.config);
        let ctl = Control::new(&self.budget);
        let res = kern.search(solved.gamma, Mode::All, &ctl);
        nodes += ctl.nodes();
        let sets: Vec<QueenSet> = res.sets.iter().map(|c| to_queen_set(dims, transposed, c)).collect();
        Ok(EnumerateOutcome {
            dims,
            gamma: solved.gamma,
            classes: symmetry::classes(&sets)?,
            concrete: sets.len(),
            status: if res.complete { Status::Exact } else { Status::Incomplete },
            nodes,
            elapsed: start.elapsed(),
        })
    }

    /// Largest number of squares `k` queens can cover, with all optimal
    /// arrangements up to isometry.
    pub fn near_dominating(&self, dims: BoardDims, k: usize) -> Result<NearOutcome, SolverError> {
        if k == 0 {
            return Err(SolverError::NoQueens);
        }
        let (norm, transposed) = dims.normalized();
        let kern = kernel(norm, &self.config);
        let ctl = Control::new(&self.budget);
        let (best, arrangements) = kern.max_coverage(k, &ctl);
        let sets: Vec<QueenSet> = arrangements.iter().map(|c| to_queen_set(dims, transposed, c)).collect();
        Ok(NearOutcome {
            dims,
            queens: k,
            max_covered: best,
            classes: symmetry::classes(&sets)?,
            concrete: sets.len(),
            status: if ctl.exhausted() { Status::Incomplete } else { Status::Exact },
            nodes: ctl.nodes(),
        })
    }
}

/// Adds an edge row, an edge column and a queen on their shared corner.
pub fn augment(set: &QueenSet) -> Result<QueenSet, SolverError> {
    if !set.is_dominating() {
        return Err(SolverError::InputNotDominating);
    }
    let dims = set.dims();
    let big = BoardDims::new(dims.m + 1, dims.n + 1).map_err(|_| SolverError::InputNotDominating)?;
    for (shift_x, shift_y) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let corner = Square::new(
            if shift_x == 1 { 1 } else { big.n as i32 },
            if shift_y == 1 { 1 } else { big.m as i32 },
        );
        let moved = set.squares().iter().map(|s| Square::new(s.x + shift_x, s.y + shift_y));
        let cand = QueenSet::new(big, moved.chain([corner])).expect("shifted squares stay on the larger board");
        if cand.is_dominating() {
            return Ok(cand);
        }
    }
    unreachable!("the new corner queen covers the added row and column")
}
