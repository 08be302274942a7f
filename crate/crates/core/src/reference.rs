//! Tabulated domination numbers for `4 <= m <= n <= 18`.
//!
//! Reference data only; the solver never consults it.

use std::collections::BTreeMap;

use serde::Deserialize;

pub const TABLE1_CSV: &str = include_str!("../data/table1.csv");

#[derive(Debug, Deserialize)]
struct Row {
    m: usize,
    n: usize,
    gamma: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Store {
    entries: BTreeMap<(usize, usize), usize>,
}

impl Table1Store {
    pub fn load() -> Self {
        Self::from_csv(TABLE1_CSV).expect("embedded table parses")
    }

    pub fn from_csv(text: &str) -> Result<Self, csv::Error> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let mut entries = BTreeMap::new();
        for row in reader.deserialize() {
            let Row { m, n, gamma } = row?;
            entries.insert((m.min(n), m.max(n)), gamma);
        }
        Ok(Self { entries })
    }

    /// Looks up `gamma`; `(m, n)` and `(n, m)` give the same answer.
    pub fn get(&self, m: usize, n: usize) -> Option<usize> {
        self.entries.get(&(m.min(n), m.max(n))).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries.iter().map(|(&(m, n), &g)| (m, n, g))
    }
}
