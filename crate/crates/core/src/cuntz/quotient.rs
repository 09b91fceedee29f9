use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::permmap::{compose_tables, pm_canonicalize, pm_meet, pm_subtract, PermMap};
use super::CuntzError;
use crate::lang::Word;

/// An element of the Cuntz inverse monoid `C_n`, as a reduced table between
/// prefix codes: no `x` has every `x·a ↦ z·a` present for a common `z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CuntzElement {
    alphabet: usize,
    table: BTreeMap<Word, Word>,
}

/// Parent `x` and common image prefix `z` when the children of `x` form a
/// full sibling family in `table`.
fn collapsible(alphabet: usize, table: &BTreeMap<Word, Word>, x: &Word) -> Option<Word> {
    let first = table.get(&x.child(0))?;
    let z = first.strip_suffix(&Word::symbol(0))?;
    (1..alphabet as u32)
        .all(|a| table.get(&x.child(a)) == Some(&z.child(a)))
        .then_some(z)
}

/// Collapses full sibling families until none remain. `pick` chooses which
/// candidate to collapse next, so tests can vary the order.
pub fn reduce_table_with(
    alphabet: usize,
    mut table: BTreeMap<Word, Word>,
    mut pick: impl FnMut(usize) -> usize,
) -> BTreeMap<Word, Word> {
    loop {
        let mut candidates: Vec<(Word, Word)> = Vec::new();
        for y in table.keys().filter(|y| !y.is_empty()) {
            let parent = y.prefix(y.len() - 1);
            if candidates.iter().any(|(p, _)| *p == parent) {
                continue;
            }
            if let Some(z) = collapsible(alphabet, &table, &parent) {
                candidates.push((parent, z));
            }
        }
        if candidates.is_empty() {
            return table;
        }
        let (x, z) = candidates.swap_remove(pick(candidates.len()) % candidates.len());
        for a in 0..alphabet as u32 {
            table.remove(&x.child(a));
        }
        table.insert(x, z);
    }
}

fn reduce_table(alphabet: usize, table: BTreeMap<Word, Word>) -> BTreeMap<Word, Word> {
    reduce_table_with(alphabet, table, |_| 0)
}

impl CuntzElement {
    pub fn from_table(alphabet: usize, table: BTreeMap<Word, Word>) -> Self {
        CuntzElement {
            alphabet,
            table: reduce_table(alphabet, table),
        }
    }

    pub fn identity(alphabet: usize) -> Self {
        CuntzElement {
            alphabet,
            table: BTreeMap::from([(Word::empty(), Word::empty())]),
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn table(&self) -> &BTreeMap<Word, Word> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn inverse(&self) -> Self {
        CuntzElement {
            alphabet: self.alphabet,
            table: self.table.iter().map(|(y, z)| (z.clone(), y.clone())).collect(),
        }
    }

    /// The table-only map with this table.
    pub fn lift(&self) -> Result<PermMap, CuntzError> {
        let table: Vec<(Word, Word)> = self.table.iter().map(|(y, z)| (y.clone(), z.clone())).collect();
        pm_canonicalize(self.alphabet, &[], &table)
    }

    /// Image of a finite prefix that already passes a table entry: the
    /// action on infinite words starting with `w`, truncated.
    pub fn apply_prefix(&self, w: &Word) -> Option<Word> {
        let (y, z) = self.table.iter().find(|(y, _)| y.is_prefix_of(w))?;
        Some(z.concat(&w.strip_prefix(y).unwrap()))
    }
}

impl fmt::Display for CuntzElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.table.iter().map(|(y, z)| format!("{y}↦{z}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct CuntzFile {
    alphabet: usize,
    table: Vec<[String; 2]>,
}

impl Serialize for CuntzElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CuntzFile {
            alphabet: self.alphabet,
            table: self.table.iter().map(|(y, z)| [y.render(), z.render()]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CuntzElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let file = CuntzFile::deserialize(d)?;
        let m = super::permmap::PermMapFile {
            alphabet: file.alphabet,
            finite: Vec::new(),
            table: file.table,
        }
        .parse()
        .map_err(serde::de::Error::custom)?;
        Ok(quotient_theta(&m))
    }
}

/// `Θ`: forget the finite part and reduce the table.
pub fn quotient_theta(m: &PermMap) -> CuntzElement {
    CuntzElement::from_table(m.alphabet(), m.table().clone())
}

pub fn cuntz_product(c1: &CuntzElement, c2: &CuntzElement) -> Result<CuntzElement, CuntzError> {
    if c1.alphabet != c2.alphabet {
        return Err(CuntzError::AlphabetMismatch(c1.alphabet, c2.alphabet));
    }
    let table = compose_tables(&c1.table, &c2.table).into_iter().collect();
    Ok(CuntzElement::from_table(c1.alphabet, table))
}

/// Meet in `C_n`, through table-only representatives.
pub fn cuntz_meet(c1: &CuntzElement, c2: &CuntzElement) -> Result<CuntzElement, CuntzError> {
    Ok(quotient_theta(&pm_meet(&c1.lift()?, &c2.lift()?)?))
}

/// Congruence modulo finite-domain maps, decided twice: by equal reduced
/// tables, and by `m ∖ (m1 ∧ m2)` having an empty table on both sides.
///
/// # Panics
///
/// If the two decisions disagree.
pub fn congruent(m1: &PermMap, m2: &PermMap) -> Result<bool, CuntzError> {
    let by_theta = quotient_theta(m1) == quotient_theta(m2);
    let meet = pm_meet(m1, m2)?;
    let by_kernel =
        pm_subtract(m1, &meet)?.table().is_empty() && pm_subtract(m2, &meet)?.table().is_empty();
    assert_eq!(
        by_theta, by_kernel,
        "congruence tests disagree on {m1} and {m2}"
    );
    Ok(by_theta)
}
