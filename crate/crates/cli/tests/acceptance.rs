//! Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Set `QDOM_EXTENDED=1` to run the 11x17 enumeration, which takes minutes
//! even in a release build.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qdom_cli::census;
use qdom_core::bounds;
use qdom_core::constructions::{self, StrongSet};
use qdom_core::reference::Table1Store;
use qdom_core::symmetry::{apply, canonical, group, flip, foursomes_of, partition_with, Foursome, FoursomeCenters};
use qdom_core::{BoardDims, QueenSet, SearchBudget, Solver, SolverConfig, Square, Status};

const SMALL_TIER_LIMIT: Duration = Duration::from_secs(300);
const ANOMALY_LIMIT: Duration = Duration::from_secs(600);
const CENSUS_LIMIT: Duration = Duration::from_secs(1);
const CONSTRUCTION_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_FLIPS: usize = 1000;
const FLIP_SEED: u64 = 0x5eed;

type Criterion = (&'static str, fn() -> Verdict);

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn solver() -> Solver {
    Solver::new(SolverConfig::default(), SearchBudget::unlimited())
}

fn dims(m: usize, n: usize) -> BoardDims {
    BoardDims::new(m, n).unwrap()
}

/// Runs `qdom solve m n --expect` and reports whether it matched.
fn solve_expect(m: usize, n: usize) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qdom"))
        .args(["solve", &m.to_string(), &n.to_string(), "--expect"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    if out.status.success() && text.lines().any(|l| l.starts_with("expect:") && l.ends_with("match") && !l.contains("MISMATCH")) {
        Ok(())
    } else {
        Err(format!("{m}x{n}: exit {:?}, {}", out.status.code(), text.trim().replace('\n', "; ")))
    }
}

fn small_tier() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut pairs = 0;
    for m in 4..=10 {
        for n in m..=10 {
            pairs += 1;
            if let Err(e) = solve_expect(m, n) {
                bad.push(e);
            }
        }
    }
    let t = start.elapsed();
    if !bad.is_empty() {
        Verdict::Fail(bad.join(" | "))
    } else if t > SMALL_TIER_LIMIT {
        Verdict::Fail(format!("{pairs} pairs matched but took {t:.1?}"))
    } else {
        Verdict::Pass(format!("{pairs} pairs match the reference table in {t:.1?}"))
    }
}

fn anomaly() -> Verdict {
    let start = Instant::now();
    let s = solver();
    let mut got = Vec::new();
    for (m, n, want) in [(8, 11, 6), (9, 11, 5), (10, 11, 5), (11, 11, 5)] {
        let g = s.gamma(dims(m, n)).unwrap();
        if g.gamma != want || g.status != Status::Exact || solve_expect(m, n).is_err() {
            return Verdict::Fail(format!("{m}x{n}: got {} ({}), want {want}", g.gamma, g.status));
        }
        got.push(format!("{m}x{n}={}", g.gamma));
    }
    let t = start.elapsed();
    if t > ANOMALY_LIMIT {
        return Verdict::Fail(format!("took {t:.1?}"));
    }
    Verdict::Pass(format!("{} in {t:.1?}", got.join(" ")))
}

fn eleven_census() -> Verdict {
    let d11 = dims(11, 11);
    let out = solver().enumerate_min(d11).unwrap();
    let centered = |pts: &[(i32, i32)]| QueenSet::new(d11, pts.iter().map(|&(x, y)| Square::new(x + 6, y + 6))).unwrap();
    let d = centered(&[(0, 0), (2, 4), (-2, -4), (4, -2), (-4, 2)]);
    if out.gamma != 5 || out.classes.len() != 1 || out.concrete != 2 {
        return Verdict::Fail(format!("gamma {} classes {} concrete {}", out.gamma, out.classes.len(), out.concrete));
    }
    let rep = &out.classes[0].representative;
    if *rep != canonical(&d) {
        return Verdict::Fail(format!("class is {rep}, not D"));
    }
    let fs = foursomes_of(rep);
    let center = Square::new(6, 6);
    let shape_ok = fs.len() == 1 && fs[0].has_integer_center() && rep.contains(center) && (fs[0].cx2, fs[0].cy2) == (12, 12);
    let report = bounds::tight_set_check(rep).unwrap();
    if !shape_ok || !report.all_pass() {
        return Verdict::Fail(format!("foursomes {fs:?}, tight check {report:?}"));
    }
    Verdict::Pass("1 class, 2 sets, D plus mirror; one foursome about the center; tight-set check passes".into())
}

fn near_domination() -> Verdict {
    let out = solver().near_dominating(dims(8, 11), 5).unwrap();
    let with_foursome = out
        .classes
        .iter()
        .filter(|c| c.representative.uncovered().len() == 1 && !foursomes_of(&c.representative).is_empty())
        .count();
    let detail = format!(
        "max {}/88; {} classes ({} concrete), {with_foursome} classes hold a foursome; published count 8 {}",
        out.max_covered,
        out.classes.len(),
        out.concrete,
        match (out.classes.len() == 8, out.concrete == 8) {
            (true, _) => "counts classes",
            (_, true) => "counts concrete sets",
            _ => "matches neither convention",
        }
    );
    if out.max_covered == 87 && with_foursome > 0 {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn bound_census() -> Verdict {
    let start = Instant::now();
    let c = census(&Table1Store::load());
    let t = start.elapsed();
    let detail = format!(
        "achieved {} (claimed 40), gap 1 on {} (claimed 76), gap 2 {:?}, conjectured bound holds on {}/{} pairs, {t:.1?}",
        c.achieved.len(),
        c.gap1.len(),
        c.gap2,
        c.pairs - c.conjecture_violations.len(),
        c.pairs,
    );
    if c.matches_claim() && t < CENSUS_LIMIT {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn symmetric(pairs: &[(i32, i32)]) -> Vec<(i32, i32)> {
    let mut v: Vec<(i32, i32)> = pairs.iter().flat_map(|&(x, y)| [(x, y), (-x, -y)]).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn constructions_check() -> Verdict {
    let start = Instant::now();
    let table = Table1Store::load();
    let mut notes = Vec::new();
    let mut bad = Vec::new();

    let d1319 = dims(13, 19);
    let ex1 = QueenSet::new(
        d1319,
        symmetric(&[(9, 0), (7, -6), (5, 2), (3, 2), (1, -4)]).into_iter().map(|(x, y)| Square::new(x + 10, y + 7)),
    )
    .unwrap();
    if ex1.len() == 10 && ex1.is_dominating() && constructions::is_zero_cover(&ex1).is_some() {
        notes.push("13x19 0-cover with 10".to_string());
    } else {
        bad.push("13x19 0-cover".to_string());
    }

    let ex2 = StrongSet::new(
        constructions::central_params(7, 4, 1).unwrap(),
        symmetric(&[(1, -6), (3, 4), (3, 0), (3, -2)]),
    )
    .map(|s| s.to_queen_set());
    match ex2 {
        Ok(q) if (q.dims().m, q.dims().n, q.len()) == (13, 16, 8) && q.is_dominating() => {
            notes.push("13x16 with 8".into())
        }
        other => bad.push(format!("13x16 set: {other:?}")),
    }

    // The published list has -1,6 where -1,8 is needed; with it two members
    // share diagonals and 20 squares of 17x20 go uncovered.
    let p962 = constructions::central_params(9, 6, 2).unwrap();
    let corrected = StrongSet::new(p962, symmetric(&[(-5, 0), (-3, 4), (-1, 8), (1, 2), (3, 6)]));
    match corrected {
        Ok(ss) => {
            let app = constructions::applicable_boards(&ss);
            let missing: Vec<_> =
                (9..=17).flat_map(|m| (6..=20).map(move |n| (m, n))).filter(|&(m, n)| !app.contains(m, n)).collect();
            if ss.strict && missing.is_empty() {
                notes.push("strict (9,6,2) set covers 9..17 x 6..20 (one coordinate corrected)".into());
            } else {
                bad.push(format!("(9,6,2) misses {missing:?}"));
            }
        }
        Err(e) => bad.push(format!("(9,6,2): {e}")),
    }

    for (m, n) in [(7, 11), (8, 13), (9, 15), (10, 17)] {
        let q = constructions::family_central_column(m).unwrap();
        if q.dims() != dims(m, n) || !q.is_dominating() || Some(q.len()) != table.get(m, n) {
            bad.push(format!("central column {m}x{n}: {} queens vs {:?}", q.len(), table.get(m, n)));
        }
    }
    notes.push("central-column family meets the table on 4 boards".into());

    let mut fam = |name: &str, ss: Result<StrongSet, constructions::ConstructionError>, want: Option<(usize, usize, usize)>| {
        match ss {
            Ok(ss) => {
                let q = ss.to_queen_set();
                let got = (q.dims().m, q.dims().n, q.len());
                let table_ok = want.is_none_or(|w| got == w && table.get(got.0, got.1) == Some(got.2));
                if !q.is_dominating() || !table_ok {
                    bad.push(format!("{name}: {got:?}"));
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    };
    fam("width5(5)", constructions::family_width5(5), Some((13, 13, 7)));
    fam("width7(7)", constructions::family_width7(7), Some((17, 17, 9)));
    fam("width7(9)", constructions::family_width7(9), None);
    fam("width7(11)", constructions::family_width7(11), None);
    for m1 in [7, 9, 11, 13] {
        fam(&format!("width5({m1})"), constructions::family_width5(m1), None);
    }
    notes.push("width-5 and width-7 families dominate".into());

    let t = start.elapsed();
    if t > CONSTRUCTION_LIMIT {
        bad.push(format!("took {t:.1?}"));
    }
    if bad.is_empty() {
        Verdict::Pass(format!("{} in {t:.1?}", notes.join("; ")))
    } else {
        Verdict::Fail(bad.join(" | "))
    }
}

type Cell = (i32, i32);

fn naive_dominates(set: &[Cell], m: i32, n: i32) -> bool {
    (1..=m).all(|y| (1..=n).all(|x| set.iter().any(|&(a, b)| a == x || b == y || (a - x).abs() == (b - y).abs())))
}

/// Every dominating set of minimum size, by plain subset enumeration.
fn naive_minimum(m: usize, n: usize) -> (usize, Vec<Vec<Cell>>) {
    let cells: Vec<Cell> = (1..=m as i32).flat_map(|y| (1..=n as i32).map(move |x| (x, y))).collect();
    for k in 1..=cells.len() {
        let mut found = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let set: Vec<Cell> = idx.iter().map(|&i| cells[i]).collect();
            if naive_dominates(&set, m as i32, n as i32) {
                found.push(set);
            }
            let Some(i) = (0..k).rev().find(|&i| idx[i] < cells.len() - k + i) else { break };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        if !found.is_empty() {
            return (k, found);
        }
    }
    unreachable!()
}

fn random_foursome_set(rng: &mut StdRng) -> Option<(QueenSet, Foursome)> {
    let (m, n) = (rng.gen_range(4..=14usize), rng.gen_range(4..=14usize));
    let half = rng.gen_bool(0.5);
    let (a, b): (i32, i32) = (rng.gen_range(1..=6), rng.gen_range(-6..=6));
    let (a2, b2) = if half { (2 * a - 1, 2 * b - 1) } else { (2 * a, 2 * b) };
    let parity = a2.rem_euclid(2);
    let cx2 = 2 * rng.gen_range(1..=n as i32) + parity;
    let cy2 = 2 * rng.gen_range(1..=m as i32) + parity;
    let f = Foursome::new(cx2, cy2, a2, b2)?;
    let d = BoardDims::new(m, n).ok()?;
    if f.members().iter().chain(f.flipped().members().iter()).any(|s| !d.contains(*s)) {
        return None;
    }
    let mut squares: BTreeSet<Square> = f.members().into_iter().collect();
    let flipped: BTreeSet<Square> = f.flipped().members().into_iter().collect();
    for _ in 0..rng.gen_range(0..=3) {
        let s = d.square(rng.gen_range(0..d.cells()));
        if !flipped.contains(&s) {
            squares.insert(s);
        }
    }
    Some((QueenSet::new(d, squares).ok()?, f))
}

fn oracle_equivalence() -> Verdict {
    let s = solver();
    let mut boards = 0;
    for m in 1..=30usize {
        for n in 1..=30 / m {
            boards += 1;
            let (want, _) = naive_minimum(m, n);
            let got = s.gamma(dims(m, n)).unwrap().gamma;
            if got != want {
                return Verdict::Fail(format!("{m}x{n}: solver {got}, exhaustive {want}"));
            }
        }
    }

    let (_, sets) = naive_minimum(4, 5);
    let orbits: BTreeSet<Vec<Cell>> = sets
        .iter()
        .map(|set| {
            let maps: [fn(Cell) -> Cell; 4] =
                [|(x, y)| (x, y), |(x, y)| (6 - x, y), |(x, y)| (x, 5 - y), |(x, y)| (6 - x, 5 - y)];
            maps.iter()
                .map(|f| {
                    let mut v: Vec<Cell> = set.iter().map(|&c| f(c)).collect();
                    v.sort_unstable();
                    v
                })
                .min()
                .unwrap()
        })
        .collect();
    let enumerated = s.enumerate_min(dims(4, 5)).unwrap();
    if enumerated.classes.len() != orbits.len() {
        return Verdict::Fail(format!("4x5: {} classes vs {} orbits", enumerated.classes.len(), orbits.len()));
    }

    let mut rng = StdRng::seed_from_u64(FLIP_SEED);
    let mut flips = 0;
    while flips < RANDOM_FLIPS {
        let Some((set, f)) = random_foursome_set(&mut rng) else { continue };
        let Ok(once) = flip(&set, &f) else { continue };
        let back = flip(&once, &f.flipped()).ok();
        if once.line_set() != set.line_set() || back.as_ref() != Some(&set) {
            return Verdict::Fail(format!("flip of {f:?} on {set}"));
        }
        flips += 1;
    }
    Verdict::Pass(format!(
        "{boards} boards with m*n <= 30 agree; 4x5 has {} classes; {flips} random flips are line-preserving involutions",
        orbits.len()
    ))
}

fn extended() -> Verdict {
    if std::env::var("QDOM_EXTENDED").map_or(true, |v| v != "1") {
        return Verdict::Skip("11x17 enumeration; set QDOM_EXTENDED=1 (use --release)".into());
    }
    let start = Instant::now();
    let out = solver().enumerate_min(dims(11, 17)).unwrap();
    if out.status != Status::Exact {
        return Verdict::Skip(format!("11x17 enumeration incomplete after {:.1?}", start.elapsed()));
    }
    let mut problems = Vec::new();
    if out.gamma != 8 || out.classes.len() != 131 {
        problems.push(format!("gamma {} classes {}", out.gamma, out.classes.len()));
    }

    // The class with foursomes centered at (12,6) with (a,b) = (4,2) and at
    // (9,7) with (a,b) = (3,-1), in some orientation.
    let want = [Foursome::new(24, 12, 8, 4).unwrap(), Foursome::new(18, 14, 6, -2).unwrap()];
    let d = dims(11, 17);
    let mut relation = String::new();
    let hit = out.classes.iter().enumerate().find_map(|(i, c)| {
        group(d).into_iter().find_map(|g| {
            let img = apply(g, &c.representative).ok()?;
            let fs = foursomes_of(&img);
            want.iter().all(|w| fs.contains(w)).then_some((i, img))
        })
    });
    match hit {
        Some((i, img)) => {
            let class_of = |s: &QueenSet| out.classes.iter().position(|c| c.representative == canonical(s));
            let first = flip(&img, &want[0]).ok().and_then(|s| class_of(&s));
            let second = flip(&img, &want[1]).ok();
            let second_is_mirror = second.is_some_and(|s| s != img && canonical(&s) == canonical(&img));
            match first {
                Some(j) if j != i && second_is_mirror => {
                    relation = format!("class {} flips to class {} and to its own mirror", i + 1, j + 1)
                }
                _ => problems.push(format!("flip relations: class {} -> {first:?}, mirror {second_is_mirror}", i + 1)),
            }
        }
        None => problems.push("no class with the two named foursomes".into()),
    }

    let all = partition_with(&out.classes, FoursomeCenters::All).histogram();
    let integer = partition_with(&out.classes, FoursomeCenters::Integer).histogram();
    let published: BTreeMap<usize, usize> = [(1, 85), (2, 20), (3, 2)].into();
    let detail = format!(
        "{relation}; cells {all:?} with every foursome, {integer:?} with square-centered foursomes only; published {published:?}; {:.1?}",
        start.elapsed()
    );
    if all != published {
        problems.push(detail.clone());
    }
    if problems.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(problems.join(" | "))
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("small-tier gamma", small_tier),
        ("monotonicity anomaly", anomaly),
        ("11x11 census", eleven_census),
        ("8x11 near-domination", near_domination),
        ("bound census", bound_census),
        ("constructions", constructions_check),
        ("oracle equivalence", oracle_equivalence),
        ("11x17 partition", extended),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Verdict::Pass(d) => println!("PASS {} {name}: {d}", i + 1),
            Verdict::Fail(d) => {
                failed += 1;
                println!("FAIL {} {name}: {d}", i + 1);
            }
            Verdict::Skip(d) => println!("SKIP {} {name}: {d}", i + 1),
        }
    }
    println!("{failed} of {} criteria failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
