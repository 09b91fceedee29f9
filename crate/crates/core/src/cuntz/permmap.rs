use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{check_alphabet, CuntzError};
use crate::lang::{DefiniteLang, Word};
use crate::semigroup::RelationReport;

type Graph = BTreeMap<Word, Word>;

/// An element of the Cuntz-Toeplitz monoid: the disjoint union of a finite
/// partial bijection and an isomorphism `y·u ↦ z·u` between finitely
/// generated right ideals, given by its table on prefix codes.
///
/// Canonical form: the table's domain is the prefix code of all points `x`
/// with `xA*` in the domain and `α(xu) = α(x)u` throughout; the finite part
/// holds every other point. This depends only on the map, and the inverse
/// of a canonical map is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermMap {
    alphabet: usize,
    finite: Graph,
    table: Graph,
}

fn table_apply(table: &Graph, w: &Word) -> Option<Word> {
    (0..=w.len()).find_map(|k| {
        let y = w.prefix(k);
        table
            .get(&y)
            .map(|z| z.concat(&Word::new(w.symbols()[k..].to_vec())))
    })
}

fn graph_apply(finite: &Graph, table: &Graph, w: &Word) -> Option<Word> {
    finite.get(w).cloned().or_else(|| table_apply(table, w))
}

fn insert_pairs(pairs: &[(Word, Word)], what: &str) -> Result<Graph, String> {
    let mut g = Graph::new();
    for (x, v) in pairs {
        if let Some(old) = g.insert(x.clone(), v.clone()) {
            if old != *v {
                return Err(format!("{what} entry {x} has images {old} and {v}"));
            }
        }
    }
    Ok(g)
}

/// Checks that the raw pieces describe a function, then drops entries
/// implied by shorter table entries.
fn consistent(finite_pairs: &[(Word, Word)], table_pairs: &[(Word, Word)]) -> Result<(Graph, Graph), String> {
    let finite = insert_pairs(finite_pairs, "finite")?;
    let table = insert_pairs(table_pairs, "table")?;
    let mut reduced = Graph::new();
    for (y, z) in &table {
        match (0..y.len()).find_map(|k| table.get_key_value(&y.prefix(k))) {
            Some((y1, z1)) => {
                let expected = z1.concat(&y.strip_prefix(y1).unwrap());
                if expected != *z {
                    return Err(format!("table entries {y1}↦{z1} and {y}↦{z} disagree"));
                }
            }
            None => {
                reduced.insert(y.clone(), z.clone());
            }
        }
    }
    let mut kept = Graph::new();
    for (x, v) in finite {
        match table_apply(&reduced, &x) {
            Some(expected) if expected != v => {
                return Err(format!("finite entry {x}↦{v} disagrees with the table ({expected})"));
            }
            Some(_) => {}
            None => {
                kept.insert(x, v);
            }
        }
    }
    Ok((kept, reduced))
}

fn swapped(g: &Graph) -> Vec<(Word, Word)> {
    g.iter().map(|(x, v)| (v.clone(), x.clone())).collect()
}

fn pairs(g: &Graph) -> Vec<(Word, Word)> {
    g.iter().map(|(x, v)| (x.clone(), v.clone())).collect()
}

/// Builds the canonical form of the map given by raw finite and table pairs.
/// Finite entries may overlap the table's region as long as they agree
/// with it.
pub fn pm_canonicalize(
    alphabet: usize,
    finite_pairs: &[(Word, Word)],
    table_pairs: &[(Word, Word)],
) -> Result<PermMap, CuntzError> {
    check_alphabet(alphabet)?;
    for (x, v) in finite_pairs.iter().chain(table_pairs) {
        if !x.fits(alphabet) || !v.fits(alphabet) {
            return Err(CuntzError::Parse(format!(
                "pair {x}↦{v} uses symbols outside an alphabet of {alphabet}"
            )));
        }
    }
    let (finite, table) = consistent(finite_pairs, table_pairs).map_err(CuntzError::InconsistentGraph)?;
    consistent(&swapped(&finite), &swapped(&table)).map_err(CuntzError::NotInjective)?;

    // A finite point x is promoted when every x·a is promoted or in the
    // table and the map commutes with appending a.
    let max_finite = finite.keys().map(Word::len).max().unwrap_or(0);
    let mut memo: HashMap<Word, bool> = HashMap::new();
    fn regular(
        w: &Word,
        alphabet: usize,
        finite: &Graph,
        table: &Graph,
        max_finite: usize,
        memo: &mut HashMap<Word, bool>,
    ) -> bool {
        if table_apply(table, w).is_some() {
            return true;
        }
        if w.len() > max_finite {
            return false;
        }
        if let Some(&r) = memo.get(w) {
            return r;
        }
        let r = match finite.get(w) {
            None => false,
            Some(v) => (0..alphabet as u32).all(|a| {
                let c = w.child(a);
                regular(&c, alphabet, finite, table, max_finite, memo)
                    && graph_apply(finite, table, &c).as_ref() == Some(&v.child(a))
            }),
        };
        memo.insert(w.clone(), r);
        r
    }
    let promoted: Vec<(Word, Word)> = finite
        .iter()
        .filter(|(x, _)| regular(x, alphabet, &finite, &table, max_finite, &mut memo))
        .map(|(x, v)| (x.clone(), v.clone()))
        .collect();
    if promoted.is_empty() {
        return Ok(PermMap { alphabet, finite, table });
    }
    let mut all_table = pairs(&table);
    all_table.extend(promoted);
    let (_, new_table) = consistent(&[], &all_table).map_err(CuntzError::InconsistentGraph)?;
    let new_finite = finite
        .into_iter()
        .filter(|(x, _)| table_apply(&new_table, x).is_none())
        .collect();
    Ok(PermMap {
        alphabet,
        finite: new_finite,
        table: new_table,
    })
}

impl PermMap {
    pub(crate) fn from_canonical_parts(alphabet: usize, finite: Graph, table: Graph) -> Self {
        PermMap { alphabet, finite, table }
    }

    pub fn zero(alphabet: usize) -> Self {
        PermMap {
            alphabet,
            finite: Graph::new(),
            table: Graph::new(),
        }
    }

    /// Identity on `A*`.
    pub fn identity(alphabet: usize) -> Self {
        Self::identity_on(&DefiniteLang::full(alphabet))
    }

    /// Identity on a definite language: the idempotent with that domain.
    pub fn identity_on(lang: &DefiniteLang) -> Self {
        PermMap {
            alphabet: lang.alphabet(),
            finite: lang.bounded().iter().map(|x| (x.clone(), x.clone())).collect(),
            table: lang.code().words().iter().map(|y| (y.clone(), y.clone())).collect(),
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn finite(&self) -> &BTreeMap<Word, Word> {
        &self.finite
    }

    pub fn table(&self) -> &BTreeMap<Word, Word> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_empty() && self.table.is_empty()
    }

    pub fn is_idempotent(&self) -> bool {
        self.finite.iter().chain(&self.table).all(|(x, v)| x == v)
    }

    /// Longest word in the representation, on either side.
    pub fn max_len(&self) -> usize {
        self.finite
            .iter()
            .chain(&self.table)
            .flat_map(|(x, v)| [x.len(), v.len()])
            .max()
            .unwrap_or(0)
    }

    pub fn domain(&self) -> DefiniteLang {
        let xs: Vec<Word> = self.finite.keys().cloned().collect();
        let ys: Vec<Word> = self.table.keys().cloned().collect();
        DefiniteLang::normalize(self.alphabet, &xs, &ys).expect("words fit the alphabet")
    }

    pub fn codomain(&self) -> DefiniteLang {
        let xs: Vec<Word> = self.finite.values().cloned().collect();
        let ys: Vec<Word> = self.table.values().cloned().collect();
        DefiniteLang::normalize(self.alphabet, &xs, &ys).expect("words fit the alphabet")
    }

    /// Only the finite part.
    pub fn finite_only(&self) -> PermMap {
        PermMap {
            alphabet: self.alphabet,
            finite: self.finite.clone(),
            table: Graph::new(),
        }
    }

    /// Only the table.
    pub fn table_only(&self) -> PermMap {
        PermMap {
            alphabet: self.alphabet,
            finite: Graph::new(),
            table: self.table.clone(),
        }
    }

    pub fn to_file(&self) -> PermMapFile {
        let render = |g: &Graph| g.iter().map(|(x, v)| [x.render(), v.render()]).collect();
        PermMapFile {
            alphabet: self.alphabet,
            finite: render(&self.finite),
            table: render(&self.table),
        }
    }
}

impl fmt::Display for PermMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |g: &Graph| g.iter().map(|(x, v)| format!("{x}↦{v}")).collect::<Vec<_>>().join(", ");
        write!(f, "finite {{{}}} table {{{}}}", show(&self.finite), show(&self.table))
    }
}

pub fn pm_apply(m: &PermMap, w: &Word) -> Option<Word> {
    graph_apply(&m.finite, &m.table, w)
}

fn same_alphabet(m1: &PermMap, m2: &PermMap) -> Result<usize, CuntzError> {
    if m1.alphabet != m2.alphabet {
        return Err(CuntzError::AlphabetMismatch(m1.alphabet, m2.alphabet));
    }
    Ok(m1.alphabet)
}

/// Table-after-table refinement: entries `y₂↦z₂` (applied first) and
/// `y₁↦z₁` meet when `z₂` and `y₁` are prefix-comparable.
pub(crate) fn compose_tables(t1: &Graph, t2: &Graph) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for (y2, z2) in t2 {
        for (y1, z1) in t1 {
            if let Some(t) = z2.strip_prefix(y1) {
                out.push((y2.clone(), z1.concat(&t)));
            } else if let Some(t) = y1.strip_prefix(z2) {
                out.push((y2.concat(&t), z1.clone()));
            }
        }
    }
    out
}

/// `m1·m2`: apply `m2` first.
pub fn pm_compose(m1: &PermMap, m2: &PermMap) -> Result<PermMap, CuntzError> {
    let n = same_alphabet(m1, m2)?;
    let mut finite = Vec::new();
    for (x, v) in &m2.finite {
        if let Some(w) = pm_apply(m1, v) {
            finite.push((x.clone(), w));
        }
    }
    for (y2, z2) in &m2.table {
        for (a, b) in &m1.finite {
            if let Some(s) = a.strip_prefix(z2) {
                finite.push((y2.concat(&s), b.clone()));
            }
        }
    }
    let table = compose_tables(&m1.table, &m2.table);
    Ok(pm_canonicalize(n, &finite, &table).expect("composite of partial bijections"))
}

pub fn pm_inverse(m: &PermMap) -> PermMap {
    PermMap {
        alphabet: m.alphabet,
        finite: m.finite.iter().map(|(x, v)| (v.clone(), x.clone())).collect(),
        table: m.table.iter().map(|(x, v)| (v.clone(), x.clone())).collect(),
    }
}

/// Graph inclusion. Table entries are checked on their cone up to one past
/// the longer representation; beyond that both maps act through tables.
pub fn pm_leq(m1: &PermMap, m2: &PermMap) -> bool {
    if m1.alphabet != m2.alphabet {
        return false;
    }
    if !m1.finite.iter().all(|(x, v)| pm_apply(m2, x).as_ref() == Some(v)) {
        return false;
    }
    let depth = m1.max_len().max(m2.max_len()) + 1;
    m1.table.iter().all(|(y, z)| {
        let mut level = vec![Word::empty()];
        for _ in y.len()..=depth {
            for u in &level {
                if pm_apply(m2, &y.concat(u)) != Some(z.concat(u)) {
                    return false;
                }
            }
            level = level
                .iter()
                .flat_map(|u| (0..m1.alphabet as u32).map(move |a| u.child(a)))
                .collect();
        }
        true
    })
}

pub fn pm_relate(m1: &PermMap, m2: &PermMap) -> Result<RelationReport, CuntzError> {
    same_alphabet(m1, m2)?;
    let left = pm_compose(&pm_inverse(m1), m2)?;
    let right = pm_compose(m1, &pm_inverse(m2))?;
    Ok(RelationReport {
        leq: pm_leq(m1, m2),
        geq: pm_leq(m2, m1),
        compatible: left.is_idempotent() && right.is_idempotent(),
        orthogonal: left.is_zero() && right.is_zero(),
    })
}

pub fn pm_join(m1: &PermMap, m2: &PermMap) -> Result<PermMap, CuntzError> {
    let n = same_alphabet(m1, m2)?;
    let mut finite = pairs(&m1.finite);
    finite.extend(pairs(&m2.finite));
    let mut table = pairs(&m1.table);
    table.extend(pairs(&m2.table));
    pm_canonicalize(n, &finite, &table).map_err(|e| match e {
        CuntzError::InconsistentGraph(_) | CuntzError::NotInjective(_) => CuntzError::NotCompatible,
        other => other,
    })
}

/// `{x : α(x) = x}`: fixed finite points plus the cones of fixed table
/// entries, since `α(yu) = zu` fixes nothing when `z ≠ y`.
pub fn pm_fix(m: &PermMap) -> DefiniteLang {
    let xs: Vec<Word> = m.finite.iter().filter(|(x, v)| x == v).map(|(x, _)| x.clone()).collect();
    let ys: Vec<Word> = m.table.iter().filter(|(y, z)| y == z).map(|(y, _)| y.clone()).collect();
    DefiniteLang::normalize(m.alphabet, &xs, &ys).expect("words fit the alphabet")
}

/// `α` restricted to a definite sublanguage of its domain.
pub fn restrict(m: &PermMap, lang: &DefiniteLang) -> Result<PermMap, CuntzError> {
    if lang.alphabet() != m.alphabet {
        return Err(CuntzError::AlphabetMismatch(m.alphabet, lang.alphabet()));
    }
    if !lang.is_subset(&m.domain())? {
        return Err(CuntzError::NotSublanguage);
    }
    let mut finite: Vec<(Word, Word)> = lang
        .bounded()
        .iter()
        .map(|x| (x.clone(), pm_apply(m, x).expect("inside the domain")))
        .collect();
    let mut table = Vec::new();
    let mut stack: Vec<Word> = lang.code().words().to_vec();
    while let Some(y) = stack.pop() {
        match table_apply(&m.table, &y) {
            Some(z) => table.push((y, z)),
            None => {
                let v = m.finite.get(&y).expect("inside the domain").clone();
                finite.push((y.clone(), v));
                stack.extend((0..m.alphabet as u32).map(|a| y.child(a)));
            }
        }
    }
    pm_canonicalize(m.alphabet, &finite, &table)
}

/// `m1` restricted to where it agrees with `m2`.
pub fn pm_meet(m1: &PermMap, m2: &PermMap) -> Result<PermMap, CuntzError> {
    same_alphabet(m1, m2)?;
    let agree = pm_fix(&pm_compose(&pm_inverse(m2), m1)?).intersect(&m1.domain())?;
    restrict(m1, &agree)
}

/// `a ∖ b` for `b ≤ a`.
pub fn pm_subtract(a: &PermMap, b: &PermMap) -> Result<PermMap, CuntzError> {
    same_alphabet(a, b)?;
    if !pm_leq(b, a) {
        return Err(CuntzError::NotBelow);
    }
    restrict(a, &a.domain().difference(&b.domain())?)
}

/// On-disk form: words as digit strings, `""` for the empty word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermMapFile {
    pub alphabet: usize,
    #[serde(default)]
    pub finite: Vec<[String; 2]>,
    #[serde(default)]
    pub table: Vec<[String; 2]>,
}

impl PermMapFile {
    pub fn parse(&self) -> Result<PermMap, CuntzError> {
        let n = self.alphabet;
        let parse = |ps: &[[String; 2]]| {
            ps.iter()
                .map(|[x, v]| Ok((Word::parse(x, n)?, Word::parse(v, n)?)))
                .collect::<Result<Vec<_>, CuntzError>>()
        };
        pm_canonicalize(n, &parse(&self.finite)?, &parse(&self.table)?)
    }
}

impl Serialize for PermMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PermMapFile::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
