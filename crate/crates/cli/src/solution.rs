//! On-disk solution files: one board, canonical sets in corner coordinates.

use std::collections::BTreeSet;

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};

use qdom_core::board::{BoardDims, QueenSet, Square};
use qdom_core::constructions::{self, central_params, Frame, StrongSet};
use qdom_core::reference::Table1Store;
use qdom_core::symmetry::{canonical, foursomes_of, symmetry_descriptor, Foursome};
use qdom_core::Status;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongTag {
    pub m1: usize,
    pub n1: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tags {
    /// Origin, reduced to `{1, 2} x {1, 2}`, making the set a 0-cover.
    pub zero_cover: Option<[i32; 2]>,
    pub centrally_strong: Option<StrongTag>,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub queens: Vec<[i32; 2]>,
    pub symmetry: String,
    /// Doubled centers and offsets: `[cx2, cy2, a2, b2]`.
    pub foursomes: Vec<[i32; 4]>,
    pub tags: Tags,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub m: usize,
    pub n: usize,
    /// Exact value when `status` is exact; otherwise the best size found.
    pub gamma: usize,
    pub status: Status,
    pub generator: String,
    pub version: String,
    pub solutions: Vec<SolutionRecord>,
}

fn foursome_array(f: &Foursome) -> [i32; 4] {
    [f.cx2, f.cy2, f.a2, f.b2]
}

impl SolutionRecord {
    /// Record for the canonical form of `set`. A strong-set tag is kept only
    /// if it still holds for that form.
    pub fn from_set(set: &QueenSet, strong: Option<StrongTag>) -> Self {
        let canon = canonical(set);
        let zero_cover = constructions::is_zero_cover(&canon).map(|o| [o.x, o.y]);
        let checked = strong.and_then(|t| strong_check(&canon, t).map(|s| (t, s.strict)));
        Self {
            queens: canon.squares().iter().map(|s| [s.x, s.y]).collect(),
            symmetry: symmetry_descriptor(&canon),
            foursomes: foursomes_of(&canon).iter().map(foursome_array).collect(),
            tags: Tags {
                zero_cover,
                centrally_strong: checked.map(|c| c.0),
                strict: checked.is_some_and(|c| c.1),
            },
        }
    }

    pub fn to_set(&self, dims: BoardDims) -> Result<QueenSet> {
        Ok(QueenSet::new(dims, self.queens.iter().map(|q| Square::new(q[0], q[1])))?)
    }
}

fn strong_check(set: &QueenSet, tag: StrongTag) -> Option<StrongSet> {
    let p = central_params(tag.m1, tag.n1, tag.k).ok()?;
    if (p.m, p.n) != (set.dims().m, set.dims().n) {
        return None;
    }
    let pts = set.squares().iter().map(|&s| Frame::CenteredDoubled.from_corner(set.dims(), s)).collect();
    StrongSet::new(p, pts).ok()
}

impl SolutionFile {
    /// Builds a file from sets on one board; records are canonical and sorted.
    pub fn new(
        dims: BoardDims,
        gamma: usize,
        status: Status,
        generator: &str,
        sets: &[(QueenSet, Option<StrongTag>)],
    ) -> Result<Self> {
        let mut records: Vec<SolutionRecord> = Vec::new();
        let mut seen = BTreeSet::new();
        for (set, tag) in sets {
            ensure!(set.dims() == dims, "set on {} in a {} file", set.dims(), dims);
            let rec = SolutionRecord::from_set(set, *tag);
            if seen.insert(rec.queens.clone()) {
                records.push(rec);
            }
        }
        records.sort_by(|a, b| a.queens.cmp(&b.queens));
        Ok(Self {
            m: dims.m,
            n: dims.n,
            gamma,
            status,
            generator: generator.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            solutions: records,
        })
    }

    pub fn dims(&self) -> Result<BoardDims> {
        Ok(BoardDims::new(self.m, self.n)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("parsing solution file")
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()).with_context(|| format!("writing {}", path.display()))
    }
}

/// Re-checks every record and the header against the embedded table.
/// Returns one line per check performed.
pub fn verify(file: &SolutionFile, table: &Table1Store) -> Result<Vec<String>> {
    let dims = file.dims()?;
    let mut notes = Vec::new();
    let mut previous: Option<&Vec<[i32; 2]>> = None;
    for (i, rec) in file.solutions.iter().enumerate() {
        let set = rec.to_set(dims).with_context(|| format!("solution {}", i + 1))?;
        if !set.is_dominating() {
            bail!("solution {} does not dominate {}", i + 1, dims);
        }
        let canon = canonical(&set);
        if canon != set {
            bail!("solution {} is not in canonical form", i + 1);
        }
        if let Some(prev) = previous {
            if prev >= &rec.queens {
                bail!("solutions are not strictly sorted at {}", i + 1);
            }
        }
        previous = Some(&rec.queens);
        if rec.queens.len() != file.gamma && file.status == Status::Exact {
            bail!("solution {} has {} queens, header says {}", i + 1, rec.queens.len(), file.gamma);
        }
        let expect = SolutionRecord::from_set(&set, rec.tags.centrally_strong);
        if expect.symmetry != rec.symmetry {
            bail!("solution {}: symmetry {:?}, recorded {:?}", i + 1, expect.symmetry, rec.symmetry);
        }
        if expect.foursomes != rec.foursomes {
            bail!("solution {}: foursome list differs", i + 1);
        }
        if expect.tags != rec.tags {
            bail!("solution {}: tags do not re-verify", i + 1);
        }
    }
    notes.push(format!("{} solutions dominate {} and are canonical", file.solutions.len(), dims));
    let size = file.solutions.iter().map(|r| r.queens.len()).min();
    if file.status == Status::Incomplete {
        if let Some(s) = size {
            ensure!(s == file.gamma, "header gamma {} but smallest solution has {}", file.gamma, s);
        }
    }
    if let Some(g) = table.get(dims.m, dims.n) {
        match file.status {
            Status::Exact => ensure!(file.gamma == g, "header claims gamma = {} for {}, reference table has {}", file.gamma, dims, g),
            Status::Incomplete => ensure!(file.gamma >= g, "{} queens cannot dominate {}: reference gamma is {}", file.gamma, dims, g),
        }
        notes.push(format!("gamma {} consistent with reference value {}", file.gamma, g));
    }
    Ok(notes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eleven() -> QueenSet {
        let dims = BoardDims::new(11, 11).unwrap();
        let sq = [(6, 6), (8, 10), (4, 2), (2, 8), (10, 4)].map(|(x, y)| Square::new(x, y));
        QueenSet::new(dims, sq).unwrap()
    }

    #[test]
    fn round_trip_and_verify() {
        let set = eleven();
        let file = SolutionFile::new(set.dims(), 5, Status::Exact, "test", &[(set, None)]).unwrap();
        let back = SolutionFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert!(verify(&back, &Table1Store::load()).is_ok());
        assert_eq!(file.solutions[0].foursomes.len(), 1);
    }

    #[test]
    fn perturbed_square_fails() {
        let set = eleven();
        let mut file = SolutionFile::new(set.dims(), 5, Status::Exact, "test", &[(set, None)]).unwrap();
        file.solutions[0].queens[0][0] += 1;
        assert!(verify(&file, &Table1Store::load()).is_err());
    }

    #[test]
    fn wrong_gamma_fails() {
        let set = eleven();
        let mut file = SolutionFile::new(set.dims(), 5, Status::Exact, "test", &[(set, None)]).unwrap();
        file.gamma = 4;
        assert!(verify(&file, &Table1Store::load()).is_err());
    }

    #[test]
    fn strong_tag_survives_canonicalization() {
        let ss = constructions::family_width5(5).unwrap();
        let tag = StrongTag { m1: 5, n1: 5, k: 1 };
        let file = SolutionFile::new(ss.params.dims(), 7, Status::Incomplete, "test", &[(ss.to_queen_set(), Some(tag))]).unwrap();
        assert_eq!(file.solutions[0].tags.centrally_strong, Some(tag));
        assert!(file.solutions[0].tags.strict);
        assert!(verify(&file, &Table1Store::load()).is_ok());
    }
}
