use std::collections::BTreeSet;

use proptest::prelude::*;

use qdom_core::board::{self, BoardDims, LineKind, QueenSet, Square};
use qdom_core::bounds;
use qdom_core::constructions::{self, Frame, LinePlan};
use qdom_core::symmetry::{apply, canonical, flip, foursomes_of, group, orbit_size, stabilizer, Foursome};
use qdom_core::{LineId, SearchBudget, Solver, SolverConfig};

fn dims_strategy(max: usize) -> impl Strategy<Value = BoardDims> {
    (1..=max, 1..=max).prop_map(|(m, n)| BoardDims::new(m, n).unwrap())
}

fn set_strategy(max: usize) -> impl Strategy<Value = QueenSet> {
    dims_strategy(max).prop_flat_map(|d| {
        prop::collection::btree_set(0..d.cells(), 0..=d.cells().min(8))
            .prop_map(move |idx| QueenSet::new(d, idx.into_iter().map(|i| d.square(i))).unwrap())
    })
}

/// A board holding a random foursome plus a few other squares.
fn foursome_set() -> impl Strategy<Value = (QueenSet, Foursome)> {
    (4usize..=14, 4usize..=14, 1i32..=6, -6i32..=6, 0usize..=3, any::<u64>(), any::<bool>())
        .prop_filter_map("foursome must fit", |(m, n, a, b, extra, seed, half)| {
            let dims = BoardDims::new(m, n).ok()?;
            let (a2, b2) = if half { (2 * a - 1, 2 * b - 1) } else { (2 * a, 2 * b) };
            let span = a2.abs().max(b2.abs());
            let (lo_x, hi_x) = (span + 2, 2 * n as i32 - span);
            let (lo_y, hi_y) = (span + 2, 2 * m as i32 - span);
            if lo_x > hi_x || lo_y > hi_y {
                return None;
            }
            let pick = |lo: i32, hi: i32, s: u64| {
                let mut v = lo + (s % ((hi - lo + 1) as u64)) as i32;
                if v.rem_euclid(2) != a2.rem_euclid(2) {
                    v = if v < hi { v + 1 } else { v - 1 };
                }
                v
            };
            let cx2 = pick(lo_x, hi_x, seed);
            let cy2 = pick(lo_y, hi_y, seed >> 20);
            let f = Foursome::new(cx2, cy2, a2, b2)?;
            if f.members().iter().any(|s| !dims.contains(*s)) {
                return None;
            }
            let mut squares: BTreeSet<Square> = f.members().into_iter().collect();
            let mut s = seed;
            for _ in 0..extra {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                squares.insert(dims.square((s >> 33) as usize % dims.cells()));
            }
            let flipped: BTreeSet<Square> = f.flipped().members().into_iter().collect();
            if squares.iter().any(|q| flipped.contains(q) && !f.members().contains(q)) {
                return None;
            }
            Some((QueenSet::new(dims, squares).ok()?, f))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn foursome_flip_is_line_preserving_involution((set, f) in foursome_set()) {
        prop_assert!(foursomes_of(&set).contains(&f));
        let once = flip(&set, &f).unwrap();
        prop_assert_eq!(once.len(), set.len());
        prop_assert_eq!(once.line_set(), set.line_set());
        prop_assert_eq!(once.is_dominating(), set.is_dominating());
        prop_assert!(foursomes_of(&once).contains(&f.flipped()));
        prop_assert_eq!(flip(&once, &f.flipped()).unwrap(), set);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_orbit_invariant(set in set_strategy(7)) {
        let c = canonical(&set);
        for g in group(set.dims()) {
            let img = apply(g, &set).unwrap();
            prop_assert_eq!(canonical(&img), c.clone());
            prop_assert_eq!(img.is_dominating(), set.is_dominating());
            prop_assert_eq!(img.covered_count(), set.covered_count());
        }
        prop_assert!(c.squares() <= set.squares());
        prop_assert_eq!(orbit_size(&set) * stabilizer(&set).len(), group(set.dims()).len());
    }

    #[test]
    fn coverage_agrees_with_pairwise_attacks(set in set_strategy(8)) {
        let dims = set.dims();
        for sq in dims.squares() {
            let direct = set.squares().iter().any(|&q| q == sq || board::attacks(q, sq));
            prop_assert_eq!(set.coverage().contains(dims.index(sq)), direct);
        }
        let t = board::transpose(&set);
        prop_assert_eq!(t.is_dominating(), set.is_dominating());
        prop_assert_eq!(board::transpose(&t), set);
    }

    #[test]
    fn any_point_set_satisfies_the_line_identities(pts in prop::collection::btree_set((-9i32..=9, -6i32..=6), 1..12)) {
        let lines: Vec<LineId> = pts.iter().flat_map(|&(x, y)| [
            LineId::new(LineKind::Column, x),
            LineId::new(LineKind::Row, y),
            LineId::new(LineKind::DiffDiag, y - x),
            LineId::new(LineKind::SumDiag, y + x),
        ]).collect();
        let plan = LinePlan::new(Frame::CenteredUnit, [], lines);
        let v: Vec<_> = pts.iter().copied().collect();
        prop_assert_eq!(plan.check().unwrap(), pts.len());
        prop_assert!(plan.is_realized_by(&v));
        let dims = BoardDims::new(13, 19).unwrap();
        let found = constructions::realize(dims, &plan, false).unwrap();
        prop_assert!(found.contains(&v));
    }

    #[test]
    fn bounds_hold_below_exact_values(m in 1usize..=7, n in 1usize..=9) {
        let (m, n) = (m.min(n), m.max(n));
        let g = Solver::new(SolverConfig::default(), SearchBudget::unlimited())
            .gamma(BoardDims::new(m, n).unwrap()).unwrap().gamma;
        prop_assert!(bounds::box_border_lower(m, n) <= g);
        prop_assert!(bounds::best_lower(m, n).best_proved <= g);
        if let Some(exact) = bounds::row_count_exact(m, n) {
            prop_assert_eq!(exact, g);
        }
        if m == n {
            prop_assert!(bounds::square_edge_lower(n) <= g);
        }
    }

    #[test]
    fn strong_families_dominate_and_respect_half_width(half in 2usize..=9) {
        let m1 = 2 * half + 1;
        for ss in [constructions::family_width5(m1).ok(), constructions::family_width7(m1).ok()].into_iter().flatten() {
            let q = ss.to_queen_set();
            prop_assert!(q.is_dominating());
            prop_assert_eq!(q.len(), ss.params.g);
            prop_assert!(2 * q.len() >= ss.params.n);
            prop_assert!(q.len() >= ss.params.n / 2);
            let aux: i64 = ss.aux_columns().iter().chain(&ss.aux_rows()).map(|&a| (a as i64).pow(2)).sum();
            prop_assert_eq!(aux, constructions::sum_orth(&ss.params));
            prop_assert_eq!(ss.aux_columns().len(), ss.params.aux_column_count());
            prop_assert_eq!(ss.aux_rows().len(), ss.params.aux_row_count());
            prop_assert_eq!(ss.aux_columns().iter().sum::<i32>(), 0);
            prop_assert_eq!(ss.aux_rows().iter().sum::<i32>(), 0);
        }
    }

    #[test]
    fn central_column_family_dominates(m in 3usize..=20) {
        let q = constructions::family_central_column(m).unwrap();
        prop_assert!(q.is_dominating());
        prop_assert_eq!(q.len(), m - 2);
    }
}

#[test]
fn strong_search_outputs_keep_the_bookkeeping() {
    for (m1, n1, k) in [(7, 4, 1), (5, 5, 1), (5, 3, 0), (7, 3, 1), (9, 6, 2), (3, 3, 0)] {
        let p = constructions::central_params(m1, n1, k).unwrap();
        for strict in [true, false] {
            for ss in constructions::centrally_strong_search_limited(p, strict, Some(200)) {
                let q = ss.to_queen_set();
                assert!(q.is_dominating());
                assert!(!strict || ss.strict);
                assert_eq!(ss.aux_columns().len(), p.aux_column_count());
                assert_eq!(ss.aux_rows().len(), p.aux_row_count());
                let aux: i64 = ss.aux_columns().iter().chain(&ss.aux_rows()).map(|&a| (a as i64).pow(2)).sum();
                assert_eq!(aux, constructions::sum_orth(&p));
                assert!(q.len() >= p.n / 2);
                if n1 > 1 {
                    assert!(2 * q.len() >= p.n);
                }
                assert!(ss.aux_columns().iter().all(|a| a.rem_euclid(2) as usize != n1 % 2));
                assert!(ss.aux_rows().iter().all(|a| a.rem_euclid(2) as usize != m1 % 2));
            }
        }
    }
}
