//! Known Ramsey number intervals and the fallback recurrences used when a
//! signature is not in the table.
//!
//! Every bound formula is non-decreasing in the Ramsey values it consumes,
//! so the calculators always read [`RamseyTable::lookup_upper`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TableError;

/// Bundled CSV, the default table.
pub const BUNDLED_CSV: &str = include_str!("../data/ramsey_table.csv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyEntry {
    /// Sorted clique sizes.
    pub sizes: Vec<usize>,
    pub lower: u64,
    pub upper: u64,
    pub source: String,
}

/// How a lookup was resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Provenance {
    /// Some size is 1.
    UnitSize,
    /// Only sizes equal to 2 were given.
    AllTwos,
    /// One color remains: `R(s) = s`.
    SingleColor,
    Table {
        source: String,
    },
    /// `R(a, b) <= R(a-1, b) + R(a, b-1)`, base `R(2, b) = b`.
    TwoColorRecurrence,
    /// `R(s_1, ..., s_k) <= R(s_1, R(s_2, ..., s_k))`.
    MulticolorNesting {
        inner: u64,
    },
    /// Lower-bound fallback `max s_i`.
    LargestSize,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::UnitSize => write!(f, "size-1 color"),
            Provenance::AllTwos => write!(f, "all sizes 2"),
            Provenance::SingleColor => write!(f, "R(s) = s"),
            Provenance::Table { source } => write!(f, "table: {source}"),
            Provenance::TwoColorRecurrence => write!(f, "two-color recurrence"),
            Provenance::MulticolorNesting { inner } => write!(f, "color merging via inner value {inner}"),
            Provenance::LargestSize => write!(f, "trivial lower bound max s_i"),
        }
    }
}

/// Result of one table query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lookup {
    /// The queried sizes, in the caller's order.
    pub sizes: Vec<usize>,
    /// Sizes after sorting and dropping 2s.
    pub reduced: Vec<usize>,
    pub value: u64,
    pub provenance: Provenance,
}

impl fmt::Display for Lookup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sizes.iter().map(|x| x.to_string()).collect();
        write!(f, "R({}) = {} [{}]", s.join(","), self.value, self.provenance)
    }
}

/// Which interval the bundled table ships for `R(3,3,4)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum R334 {
    /// `30 <= R(3,3,4) <= 31`.
    #[default]
    Upper31,
    /// `R(3,3,4) = 30`.
    Exact30,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RamseyTable {
    entries: BTreeMap<Vec<usize>, RamseyEntry>,
}

fn normalize(sizes: &[usize]) -> Vec<usize> {
    let mut v = sizes.to_vec();
    v.sort_unstable();
    v
}

impl RamseyTable {
    pub fn empty() -> Self {
        RamseyTable::default()
    }

    pub fn bundled() -> Self {
        RamseyTable::bundled_with(R334::default())
    }

    pub fn bundled_with(r334: R334) -> Self {
        let mut t = RamseyTable::load(BUNDLED_CSV).expect("bundled table parses");
        if r334 == R334::Exact30 {
            let e = t.entries.get_mut(&vec![3, 3, 4]).expect("bundled R(3,3,4)");
            e.lower = 30;
            e.upper = 30;
            e.source = "R(3,3,4) = 30 setting".into();
        }
        t
    }

    /// Parses `s1;s2;...;sk, lower, upper, source` lines. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn load(text: &str) -> Result<Self, TableError> {
        let mut table = RamseyTable::empty();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |message: String| TableError::Parse { line, message };
            let fields: Vec<&str> = trimmed.splitn(4, ',').map(str::trim).collect();
            if fields.len() < 3 {
                return Err(err(format!("expected `sizes, lower, upper[, source]`, got {trimmed:?}")));
            }
            let sizes = fields[0]
                .split(';')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(s) if s >= 2 => Ok(s),
                    _ => Err(err(format!("bad clique size {:?}", t.trim()))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let num = |t: &str, what: &str| {
                t.parse::<u64>().ok().filter(|&x| x > 0).ok_or_else(|| err(format!("bad {what} {t:?}")))
            };
            let lower = num(fields[1], "lower bound")?;
            let upper = num(fields[2], "upper bound")?;
            if lower > upper {
                return Err(TableError::InconsistentInterval { line, lower, upper });
            }
            let source = fields.get(3).map_or_else(|| format!("line {line}"), |s| s.to_string());
            table.insert(RamseyEntry { sizes, lower, upper, source })?;
        }
        Ok(table)
    }

    /// Adds an entry, intersecting with any existing interval for the same signature.
    pub fn insert(&mut self, mut entry: RamseyEntry) -> Result<(), TableError> {
        entry.sizes = normalize(&entry.sizes);
        match self.entries.get_mut(&entry.sizes) {
            None => {
                self.entries.insert(entry.sizes.clone(), entry);
            }
            Some(old) => {
                let lower = old.lower.max(entry.lower);
                let upper = old.upper.min(entry.upper);
                if lower > upper {
                    return Err(TableError::DisjointIntervals {
                        sizes: entry.sizes.iter().map(|&s| s as u32).collect(),
                        a_lo: old.lower,
                        a_hi: old.upper,
                        b_lo: entry.lower,
                        b_hi: entry.upper,
                    });
                }
                old.lower = lower;
                old.upper = upper;
                old.source = format!("{} & {}", old.source, entry.source);
            }
        }
        Ok(())
    }

    pub fn entry(&self, sizes: &[usize]) -> Option<&RamseyEntry> {
        self.entries.get(&normalize(sizes))
    }

    pub fn entries(&self) -> impl Iterator<Item = &RamseyEntry> {
        self.entries.values()
    }

    /// A valid upper bound on `R(sizes)`. Never fails; sizes of 0 are treated as 1.
    pub fn lookup_upper(&self, sizes: &[usize]) -> Lookup {
        let (value, provenance, reduced) = self.upper_inner(sizes);
        Lookup { sizes: sizes.to_vec(), reduced, value, provenance }
    }

    fn reduce(sizes: &[usize]) -> Result<Vec<usize>, (u64, Provenance)> {
        if sizes.iter().any(|&s| s <= 1) {
            return Err((1, Provenance::UnitSize));
        }
        let reduced: Vec<usize> = normalize(sizes).into_iter().filter(|&s| s != 2).collect();
        match reduced.len() {
            0 => Err((2, Provenance::AllTwos)),
            1 => Err((reduced[0] as u64, Provenance::SingleColor)),
            _ => Ok(reduced),
        }
    }

    fn upper_inner(&self, sizes: &[usize]) -> (u64, Provenance, Vec<usize>) {
        let reduced = match Self::reduce(sizes) {
            Ok(r) => r,
            Err((v, p)) => {
                let r = normalize(sizes).into_iter().filter(|&s| s > 2).collect();
                return (v, p, r);
            }
        };
        if let Some(e) = self.entries.get(&reduced) {
            return (e.upper, Provenance::Table { source: e.source.clone() }, reduced);
        }
        if reduced.len() == 2 {
            let v = self.two_color_upper(reduced[0], reduced[1]);
            return (v, Provenance::TwoColorRecurrence, reduced);
        }
        let inner = self.upper_inner(&reduced[1..]).0;
        let merged = [reduced[0], usize::try_from(inner).unwrap_or(usize::MAX)];
        let outer = self.upper_inner(&merged).0;
        (outer, Provenance::MulticolorNesting { inner }, reduced)
    }

    /// Fills the `a x b` grid of the two-color recurrence row by row,
    /// preferring table entries wherever they exist. Requires `a <= b`.
    fn two_color_upper(&self, a: usize, b: usize) -> u64 {
        debug_assert!(2 < a && a <= b);
        // prev[j] = R(i - 1, j) for j in 0..=b
        let mut prev: Vec<u64> = (0..=b as u64).collect();
        for i in 3..=a {
            let mut cur = vec![0u64; b + 1];
            cur[2] = i as u64;
            for j in 3..=b {
                let key = normalize(&[i, j]);
                cur[j] = match self.entries.get(&key) {
                    Some(e) => e.upper,
                    None => prev[j].saturating_add(cur[j - 1]),
                };
            }
            prev = cur;
        }
        prev[b]
    }

    /// A valid lower bound on `R(sizes)`; used only for reporting.
    pub fn lookup_lower(&self, sizes: &[usize]) -> Lookup {
        let (value, provenance, reduced) = match Self::reduce(sizes) {
            Err((v, p)) => {
                let r = normalize(sizes).into_iter().filter(|&s| s > 2).collect();
                (v, p, r)
            }
            Ok(r) => match self.entries.get(&r) {
                Some(e) => (e.lower, Provenance::Table { source: e.source.clone() }, r),
                None => (*r.last().expect("non-empty") as u64, Provenance::LargestSize, r),
            },
        };
        Lookup { sizes: sizes.to_vec(), reduced, value, provenance }
    }
}
