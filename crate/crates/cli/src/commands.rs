use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use qdom_core::board::BoardDims;
use qdom_core::bounds::{self, BoundRegistry};
use qdom_core::constructions::{ConstructRequest, ConstructionError, ConstructionRegistry};
use qdom_core::reference::Table1Store;
use qdom_core::symmetry::{foursomes_of, partition_with, FoursomeCenters};
use qdom_core::{QueenSet, SearchBudget, Solver, SolverConfig, Status};

use crate::exit;
use crate::html;
use crate::solution::{self, SolutionFile, StrongTag};

#[derive(Parser, Debug)]
#[command(name = "qdom", version, about = "Queen domination on rectangular boards")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Node limit for the search
    #[arg(long, default_value_t = 1_000_000_000)]
    pub nodes: u64,
    /// Wall-clock limit in seconds
    #[arg(long)]
    pub seconds: Option<f64>,
    /// Worker threads for the root fan-out
    #[arg(long, env = "QDOM_THREADS", default_value_t = 1)]
    pub threads: usize,
    /// Search strategy (descending, deepening)
    #[arg(long, default_value = "descending")]
    pub strategy: String,
}

impl SearchArgs {
    fn solver(&self) -> Solver {
        let config = SolverConfig { strategy: self.strategy.clone(), threads: self.threads.max(1), ..Default::default() };
        let budget = SearchBudget {
            max_queens: None,
            node_limit: Some(self.nodes),
            time_limit: self.seconds.map(Duration::from_secs_f64),
        };
        Solver::new(config, budget)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Domination number with one witness and the bound report
    Solve {
        m: usize,
        n: usize,
        /// Compare with the reference table; exit 3 on mismatch
        #[arg(long)]
        expect: bool,
        /// Write the witness as a solution file
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// All minimum dominating sets up to isometry, with foursome census
    Enumerate {
        m: usize,
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Directory for an HTML page of board diagrams
        #[arg(long)]
        html: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Largest coverage by k queens and the arrangements achieving it
    NearDominate {
        m: usize,
        n: usize,
        k: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Lower bounds against the reference table
    Bounds {
        /// A single pair instead of the whole table range
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        pair: Option<Vec<usize>>,
        #[arg(long, default_value_t = 4)]
        min: usize,
        #[arg(long, default_value_t = 18)]
        max: usize,
        /// Print the gap census and check it against 40 / 76 / 4
        #[arg(long)]
        census: bool,
    },
    /// Build dominating sets by a construction scheme
    Construct {
        /// zero-cover, strong or family
        scheme: String,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        m1: Option<usize>,
        #[arg(long)]
        n1: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Only sets inside the central sub-board
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        html: Option<PathBuf>,
    },
    /// Re-verify a solution file
    Verify { file: PathBuf },
    /// Render a solution file as HTML
    ExportHtml {
        file: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn dims(m: usize, n: usize) -> Result<BoardDims> {
    BoardDims::new(m, n).with_context(|| format!("invalid board {m}x{n}"))
}

fn write_html(dir: &Path, file: &SolutionFile, out: &mut dyn Write) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(format!("{:02}x{:02}_{}Q.html", file.m, file.n, file.gamma));
    std::fs::write(&path, html::render(file)).with_context(|| format!("writing {}", path.display()))?;
    writeln!(out, "wrote {}", path.display())?;
    Ok(())
}

fn histogram_line(h: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = h.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn bound_line(m: usize, n: usize) -> String {
    let (a, b) = (m.min(n), m.max(n));
    let rep = BoundRegistry::default().report(a, b);
    let parts: Vec<String> = rep
        .values
        .iter()
        .map(|(k, v)| format!("{k}={}", v.map_or("-".to_string(), |x| x.to_string())))
        .collect();
    format!("{} best-proved={}", parts.join(" "), rep.best_proved)
}

/// Runs one command, writing the report to `out`; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let table = Table1Store::load();
    match cli.command {
        Command::Solve { m, n, expect, output, search } => {
            let d = dims(m, n)?;
            let res = search.solver().gamma(d)?;
            let (norm, flipped) = d.normalized();
            if flipped {
                writeln!(out, "board {d} (searched as {norm})")?;
            } else {
                writeln!(out, "board {d}")?;
            }
            writeln!(out, "gamma = {} ({})", res.gamma, res.status)?;
            if res.status == Status::Incomplete {
                writeln!(out, "proved lower bound {}", res.lower)?;
            }
            writeln!(out, "witness {}", res.witnesses[0])?;
            writeln!(out, "bounds {}", bound_line(m, n))?;
            writeln!(out, "nodes {} in {:.3} s", res.nodes, res.elapsed.as_secs_f64())?;
            if let Some(path) = output {
                let file = SolutionFile::new(d, res.gamma, res.status, "solve", &[(res.witnesses[0].clone(), None)])?;
                file.save(&path)?;
                writeln!(out, "wrote {}", path.display())?;
            }
            if res.status == Status::Incomplete {
                return Ok(exit::BUDGET_EXCEEDED);
            }
            if expect {
                match table.get(m, n) {
                    Some(g) if g == res.gamma => writeln!(out, "expect: reference {g}, match")?,
                    Some(g) => {
                        writeln!(out, "expect: reference {g}, MISMATCH")?;
                        return Ok(exit::MISMATCH);
                    }
                    None => writeln!(out, "expect: no reference value for {d}")?,
                }
            }
            Ok(exit::OK)
        }
        Command::Enumerate { m, n, output, html, search } => {
            let d = dims(m, n)?;
            let res = search.solver().enumerate_min(d)?;
            writeln!(out, "board {d}: gamma = {} ({})", res.gamma, res.status)?;
            writeln!(out, "classes {}, concrete sets {}", res.classes.len(), res.concrete)?;
            let mut per_class = BTreeMap::new();
            for c in &res.classes {
                *per_class.entry(foursomes_of(&c.representative).len()).or_insert(0) += 1;
            }
            writeln!(out, "foursomes per class {}", histogram_line(&per_class))?;
            let all = partition_with(&res.classes, FoursomeCenters::All);
            let integer = partition_with(&res.classes, FoursomeCenters::Integer);
            writeln!(out, "partition cells {}", histogram_line(&all.histogram()))?;
            writeln!(out, "partition cells, integer centers only {}", histogram_line(&integer.histogram()))?;
            writeln!(out, "nodes {} in {:.3} s", res.nodes, res.elapsed.as_secs_f64())?;
            let sets: Vec<(QueenSet, Option<StrongTag>)> =
                res.classes.iter().map(|c| (c.representative.clone(), None)).collect();
            let file = SolutionFile::new(d, res.gamma, res.status, "enumerate", &sets)?;
            if let Some(path) = output {
                file.save(&path)?;
                writeln!(out, "wrote {}", path.display())?;
            }
            if let Some(dir) = html {
                write_html(&dir, &file, out)?;
            }
            Ok(if res.status == Status::Exact { exit::OK } else { exit::BUDGET_EXCEEDED })
        }
        Command::NearDominate { m, n, k, search } => {
            let d = dims(m, n)?;
            let res = search.solver().near_dominating(d, k)?;
            writeln!(out, "board {d}, {k} queens: max coverage {}/{} ({})", res.max_covered, d.cells(), res.status)?;
            writeln!(out, "arrangements: {} up to isometry, {} concrete", res.classes.len(), res.concrete)?;
            for c in &res.classes {
                let unc: Vec<String> = c.representative.uncovered().iter().map(|s| s.to_string()).collect();
                let fs = foursomes_of(&c.representative).len();
                writeln!(out, "  {}  uncovered {}  foursomes {}", c.representative, unc.join(" "), fs)?;
            }
            Ok(if res.status == Status::Exact { exit::OK } else { exit::BUDGET_EXCEEDED })
        }
        Command::Bounds { pair, min, max, census: want_census } => {
            let pairs: Vec<(usize, usize)> = match pair {
                Some(p) => vec![(p[0].min(p[1]), p[0].max(p[1]))],
                None => (min..=max).flat_map(|m| (m..=max).map(move |n| (m, n))).collect(),
            };
            let reg = BoundRegistry::default();
            let names: Vec<&str> = reg.iter().map(|b| b.name()).collect();
            writeln!(out, "m n {} best gamma gap", names.join(" "))?;
            for (m, n) in pairs {
                let rep = reg.report(m, n);
                let vals: Vec<String> = names.iter().map(|k| rep.get(k).map_or("-".into(), |v| v.to_string())).collect();
                let g = table.get(m, n);
                let gap = g.map_or("-".into(), |g| (g as i64 - bounds::box_border_lower(m, n) as i64).to_string());
                writeln!(
                    out,
                    "{m} {n} {} {} {} {}",
                    vals.join(" "),
                    rep.best_proved,
                    g.map_or("-".into(), |g| g.to_string()),
                    gap
                )?;
            }
            if want_census {
                let c = census(&table);
                write!(out, "{}", c.report())?;
                return Ok(if c.matches_claim() { exit::OK } else { exit::MISMATCH });
            }
            Ok(exit::OK)
        }
        Command::Construct { scheme, preset, m1, n1, k, strict, limit, output, html } => {
            let registry = ConstructionRegistry::default();
            let req = ConstructRequest { preset, m1, n1, k, strict_only: strict, limit };
            let built = match registry.get(&scheme).and_then(|s| s.build(&req)) {
                Ok(b) => b,
                Err(e) => {
                    writeln!(out, "construction failed: {e}")?;
                    return Ok(construction_exit(&e));
                }
            };
            let board = built[0].set.dims();
            for c in &built {
                writeln!(out, "{}: {} queens on {}", c.label, c.set.len(), c.set.dims())?;
                writeln!(out, "  {}", c.set)?;
                writeln!(out, "  dominating: {}", c.set.is_dominating())?;
                if let Some(o) = c.zero_cover {
                    writeln!(out, "  0-cover with origin parity ({}, {})", o.x, o.y)?;
                }
                if let Some(app) = &c.applicable {
                    writeln!(
                        out,
                        "  dominates {} boards, m' in {}..={}, n' in {}..={}",
                        app.boards.len(),
                        app.m_range.0,
                        app.m_range.1,
                        app.n_range.0,
                        app.n_range.1
                    )?;
                    let tight: Vec<String> = app
                        .boards
                        .iter()
                        .filter(|&&(a, b)| a <= b && table.get(a, b) == Some(c.set.len()))
                        .map(|(a, b)| format!("{a}x{b}"))
                        .collect();
                    if !tight.is_empty() {
                        writeln!(out, "  meets the reference value on {}", tight.join(" "))?;
                    }
                }
                let (a, b) = (board.m.min(board.n), board.m.max(board.n));
                let reference = table.get(a, b).map_or("none".into(), |g| g.to_string());
                writeln!(out, "  implies gamma({board}) <= {} (reference {reference})", c.set.len())?;
            }
            let sets: Vec<(QueenSet, Option<StrongTag>)> = built
                .iter()
                .map(|c| {
                    let tag = c.strong.as_ref().map(|s| StrongTag { m1: s.params.m1, n1: s.params.n1, k: s.params.k });
                    (c.set.clone(), tag)
                })
                .collect();
            let best = built.iter().map(|c| c.set.len()).min().unwrap_or(0);
            let file = SolutionFile::new(board, best, Status::Incomplete, &format!("construct {scheme}"), &sets)?;
            if let Some(path) = output {
                file.save(&path)?;
                writeln!(out, "wrote {}", path.display())?;
            }
            if let Some(dir) = html {
                write_html(&dir, &file, out)?;
            }
            Ok(exit::OK)
        }
        Command::Verify { file } => {
            let f = SolutionFile::load(&file)?;
            match solution::verify(&f, &table) {
                Ok(notes) => {
                    for n in notes {
                        writeln!(out, "{n}")?;
                    }
                    writeln!(out, "pass")?;
                    Ok(exit::OK)
                }
                Err(e) => {
                    writeln!(out, "verification failed: {e:#}")?;
                    Ok(exit::FAILURE)
                }
            }
        }
        Command::ExportHtml { file, out: dir } => {
            let f = SolutionFile::load(&file)?;
            write_html(&dir, &f, out)?;
            Ok(exit::OK)
        }
    }
}

fn construction_exit(e: &ConstructionError) -> i32 {
    match e {
        ConstructionError::UnknownScheme(_) => exit::FAILURE,
        _ => exit::CONSTRUCTION_FAILED,
    }
}

/// How far the reference values sit above the box-border bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub achieved: Vec<(usize, usize)>,
    pub gap1: Vec<(usize, usize)>,
    pub gap2: Vec<(usize, usize)>,
    pub other: Vec<(usize, usize)>,
    /// Pairs where the conjectured bound exceeds the reference value.
    pub conjecture_violations: Vec<(usize, usize)>,
    pub pairs: usize,
}

pub const CLAIMED_ACHIEVED: usize = 40;
pub const CLAIMED_GAP1: usize = 76;
pub const CLAIMED_GAP2: [(usize, usize); 4] = [(12, 14), (13, 17), (14, 16), (15, 15)];

pub fn census(table: &Table1Store) -> Census {
    let mut c = Census {
        achieved: vec![],
        gap1: vec![],
        gap2: vec![],
        other: vec![],
        conjecture_violations: vec![],
        pairs: 0,
    };
    for (m, n, g) in table.iter() {
        c.pairs += 1;
        match g as i64 - bounds::box_border_lower(m, n) as i64 {
            0 => c.achieved.push((m, n)),
            1 => c.gap1.push((m, n)),
            2 => c.gap2.push((m, n)),
            _ => c.other.push((m, n)),
        }
        if bounds::half_width_conjecture(m, n) > g {
            c.conjecture_violations.push((m, n));
        }
    }
    c
}

impl Census {
    pub fn matches_claim(&self) -> bool {
        self.achieved.len() == CLAIMED_ACHIEVED
            && self.gap1.len() == CLAIMED_GAP1
            && self.gap2 == CLAIMED_GAP2
            && self.other.is_empty()
            && self.conjecture_violations.is_empty()
    }

    pub fn report(&self) -> String {
        let list = |v: &[(usize, usize)]| v.iter().map(|(m, n)| format!("({m},{n})")).collect::<Vec<_>>().join(" ");
        let small = self.achieved.iter().filter(|p| p.0 <= 6).count();
        let mut s = String::new();
        s += &format!("pairs {}\n", self.pairs);
        s += &format!("box-border bound achieved on {} pairs ({small} with m <= 6)\n", self.achieved.len());
        s += &format!("  with m > 6: {}\n", list(&self.achieved.iter().copied().filter(|p| p.0 > 6).collect::<Vec<_>>()));
        s += &format!("exceeded by one on {} pairs\n", self.gap1.len());
        s += &format!("exceeded by two on {}\n", list(&self.gap2));
        if !self.other.is_empty() {
            s += &format!("other gaps on {}\n", list(&self.other));
        }
        s += &format!(
            "conjectured bound holds on {}/{} pairs\n",
            self.pairs - self.conjecture_violations.len(),
            self.pairs
        );
        s += &format!(
            "claimed {CLAIMED_ACHIEVED} / {CLAIMED_GAP1} / {}: {}\n",
            CLAIMED_GAP2.len(),
            if self.matches_claim() { "match" } else { "MISMATCH" }
        );
        s
    }
}
