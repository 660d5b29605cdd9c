use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One variable: a symbol family (`c`, `d`, `alpha`, `beta`, ...), an index
/// inside the family, and its weight in the grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarEntry {
    pub family: String,
    pub index: i32,
    pub weight: u32,
}

impl VarEntry {
    pub fn new(family: &str, index: i32, weight: u32) -> VarEntry {
        VarEntry { family: family.to_string(), index, weight }
    }

    fn key(&self) -> (&str, i32) {
        (self.family.as_str(), self.index)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.index)
    }
}

impl fmt::Display for VarEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.index)
    }
}

/// Ordered table of variables shared by every polynomial built over it.
///
/// Entries are kept sorted by `(family, index)`; that order is the variable
/// order of the graded-lexicographic term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    entries: Vec<VarEntry>,
}

impl VarTable {
    pub fn new(entries: impl IntoIterator<Item = VarEntry>) -> Result<Arc<VarTable>> {
        let mut entries: Vec<VarEntry> = entries.into_iter().collect();
        entries.sort_by(|a, b| a.key().cmp(&b.key()));
        for w in entries.windows(2) {
            if w[0].key() == w[1].key() {
                return Err(Error::DuplicateVar { family: w[0].family.clone(), index: w[0].index });
            }
        }
        Ok(Arc::new(VarTable { entries }))
    }

    pub fn empty() -> Arc<VarTable> {
        Arc::new(VarTable { entries: Vec::new() })
    }

    /// `family_1, ..., family_max` with weight equal to the index.
    pub fn chern(family: &str, max: u32) -> Arc<VarTable> {
        VarTable::new((1..=max as i32).map(|i| VarEntry::new(family, i, i as u32))).expect("indices are distinct")
    }

    /// Weight-one root symbols.
    pub fn roots(names: &[(&str, i32)]) -> Result<Arc<VarTable>> {
        VarTable::new(names.iter().map(|(f, i)| VarEntry::new(f, *i, 1)))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[VarEntry] {
        &self.entries
    }

    pub fn entry(&self, pos: usize) -> &VarEntry {
        &self.entries[pos]
    }

    pub fn position(&self, family: &str, index: i32) -> Option<usize> {
        self.entries.binary_search_by(|e| e.key().cmp(&(family, index))).ok()
    }

    pub fn weight(&self, pos: usize) -> u32 {
        self.entries[pos].weight
    }

    /// Union of two tables. Fails when a shared variable carries two weights.
    pub fn merge(a: &Arc<VarTable>, b: &Arc<VarTable>) -> Result<Arc<VarTable>> {
        if Arc::ptr_eq(a, b) || a == b {
            return Ok(a.clone());
        }
        let mut map: BTreeMap<(String, i32), u32> = BTreeMap::new();
        for e in a.entries.iter().chain(b.entries.iter()) {
            match map.get(&(e.family.clone(), e.index)) {
                Some(&w) if w != e.weight => {
                    return Err(Error::IncompatibleVars(format!("{} has weight {} and {}", e, w, e.weight)))
                }
                _ => {
                    map.insert((e.family.clone(), e.index), e.weight);
                }
            }
        }
        if map.len() == a.len() {
            return Ok(a.clone());
        }
        if map.len() == b.len() {
            return Ok(b.clone());
        }
        VarTable::new(map.into_iter().map(|((family, index), weight)| VarEntry { family, index, weight }))
    }

    /// Position map from `self` into `target`, which must contain every entry.
    pub(crate) fn embedding(&self, target: &VarTable) -> Result<Vec<u32>> {
        self.entries
            .iter()
            .map(|e| {
                target
                    .position(&e.family, e.index)
                    .map(|p| p as u32)
                    .ok_or_else(|| Error::UnknownVar { family: e.family.clone(), index: e.index })
            })
            .collect()
    }
}

/// Sparse exponent vector together with its weighted degree.
///
/// Ordering is graded lexicographic: weighted degree first, then the dense
/// exponent vectors compared lexicographically in table order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { degree: 0, exps: Vec::new() }
    }

    /// Builds from `(position, exponent)` pairs, merging repeats and dropping zeros.
    pub fn from_exponents(table: &VarTable, pairs: &[(usize, u32)]) -> Monomial {
        let mut exps: Vec<(u32, u32)> = Vec::with_capacity(pairs.len());
        let mut sorted: Vec<(usize, u32)> = pairs.iter().copied().filter(|&(_, e)| e > 0).collect();
        sorted.sort_unstable();
        for (v, e) in sorted {
            match exps.last_mut() {
                Some(last) if last.0 == v as u32 => last.1 += e,
                _ => exps.push((v as u32, e)),
            }
        }
        let degree = exps.iter().map(|&(v, e)| table.weight(v as usize) * e).sum();
        Monomial { degree, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent_of(&self, pos: usize) -> u32 {
        self.exps.iter().find(|&&(v, _)| v as usize == pos).map(|&(_, e)| e).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { degree: self.degree + other.degree, exps }
    }

    pub(crate) fn remap(&self, table: &VarTable, map: &[u32]) -> Monomial {
        let pairs: Vec<(usize, u32)> = self.exps.iter().map(|&(v, e)| (map[v as usize] as usize, e)).collect();
        Monomial::from_exponents(table, &pairs)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()) {
                if a.0 != b.0 {
                    // the earlier variable appears only on one side
                    return if a.0 < b.0 { Ordering::Greater } else { Ordering::Less };
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.exps.len().cmp(&other.exps.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
