//! Structural facts about specific minimum dominating sets found by the
//! solver.

use std::collections::{BTreeSet, HashSet};

use qdom_core::bounds;
use qdom_core::constructions::{is_orthodox, is_zero_cover};
use qdom_core::symmetry::{apply, foursomes_of, group};
use qdom_core::{BoardDims, QueenSet, SearchBudget, Solver, SolverConfig, Square};

fn solver() -> Solver {
    Solver::new(SolverConfig::default(), SearchBudget::unlimited())
}

/// Every concrete minimum dominating set of an `m x n` board.
fn all_minimum(m: usize, n: usize) -> (usize, Vec<QueenSet>) {
    let dims = BoardDims::new(m, n).unwrap();
    let out = solver().enumerate_min(dims).unwrap();
    let mut sets = HashSet::new();
    for class in &out.classes {
        for g in group(dims) {
            sets.insert(apply(g, &class.representative).unwrap());
        }
    }
    assert_eq!(sets.len(), out.concrete);
    let mut sets: Vec<QueenSet> = sets.into_iter().collect();
    sets.sort_by(|a, b| a.squares().cmp(b.squares()));
    (out.gamma, sets)
}

#[test]
fn seven_by_eleven_has_a_zero_cover() {
    let (g, sets) = all_minimum(7, 11);
    assert_eq!(g, 5);
    let origins: BTreeSet<Square> = sets.iter().filter_map(is_zero_cover).collect();
    // (6, 3) reduces to (2, 1).
    assert!(origins.contains(&Square::new(2, 1)), "{origins:?}");
}

#[test]
fn seven_by_twelve_sets_are_never_orthodox() {
    let (g, sets) = all_minimum(7, 12);
    assert_eq!(g, 5);
    for set in &sets {
        assert!(is_zero_cover(set).is_none());
        for oy in 1..=2 {
            for ox in 1..=2 {
                assert!(!is_orthodox(set, Square::new(ox, oy)));
            }
        }
    }
}

#[test]
fn eleven_by_twelve_foursome_sets() {
    let (g, sets) = all_minimum(11, 12);
    assert_eq!(g, 6);
    let corners = [Square::new(1, 1), Square::new(12, 1)];
    let matching: Vec<&QueenSet> = sets
        .iter()
        .filter(|s| corners.iter().all(|&c| s.contains(c)))
        .filter(|s| foursomes_of(s).iter().any(|f| (f.cx2, f.cy2) == (13, 13)))
        .collect();
    assert!(!matching.is_empty());
    for set in matching {
        let report = bounds::tight_set_check(set).unwrap();
        assert!(report.small);
        assert!(report.border_unique, "{:?}", set.squares());
        assert!(!report.independent);
    }
}

#[test]
fn eleven_by_eleven_minimum_sets() {
    let (g, sets) = all_minimum(11, 11);
    assert_eq!(g, 5);
    let centered = |pts: &[(i32, i32)]| {
        let dims = BoardDims::new(11, 11).unwrap();
        QueenSet::new(dims, pts.iter().map(|&(x, y)| Square::new(x + 6, y + 6))).unwrap()
    };
    let d = centered(&[(0, 0), (2, 4), (-2, -4), (4, -2), (-4, 2)]);
    let mirror = centered(&[(0, 0), (-2, 4), (2, -4), (-4, -2), (4, 2)]);
    assert_eq!(sets.len(), 2);
    assert!(sets.contains(&d) && sets.contains(&mirror));
    let report = bounds::tight_set_check(&sets[0]).unwrap();
    assert!(report.meets_bound && report.border_unique && report.independent);
}

#[test]
fn eight_by_eleven_optimum_with_a_foursome() {
    let dims = BoardDims::new(8, 11).unwrap();
    let out = solver().near_dominating(dims, 5).unwrap();
    assert_eq!(out.max_covered, 87);
    let any_foursome = out.classes.iter().any(|c| {
        let set = &c.representative;
        set.uncovered().len() == 1 && !foursomes_of(set).is_empty()
    });
    assert!(any_foursome);
}
