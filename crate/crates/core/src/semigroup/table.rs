use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::SemigroupError;

/// Largest table on which the exhaustive axiom checks are run.
pub const VERIFY_CAP: usize = 255;

/// Largest table that constructions will tabulate (n² product entries).
pub const TABULATION_CAP: usize = 2048;

/// Index of an element in a [`CayleyTable`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub usize);

impl Elem {
    #[inline]
    pub fn idx(self) -> usize {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// On-disk form of a Cayley table.
///
/// `table[i][j]` is the index of `elements[i] · elements[j]`, where the
/// product applies the right factor first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: usize,
    pub identity: Option<usize>,
    pub table: Vec<Vec<usize>>,
}

impl TableFile {
    pub fn from_json(text: &str) -> Result<Self, SemigroupError> {
        serde_json::from_str(text).map_err(|e| SemigroupError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    ZeroAbsorbing,
    IdentityLaw,
    Associativity,
    UniqueInverse,
    IdempotentsCommute,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::ZeroAbsorbing => "zero is absorbing",
            Axiom::IdentityLaw => "identity is a two-sided unit",
            Axiom::Associativity => "associativity",
            Axiom::UniqueInverse => "every element has a unique inverse",
            Axiom::IdempotentsCommute => "idempotents commute",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

/// Outcome of [`verify_inverse_semigroup`]: empty when every axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let w: Vec<String> = v.witness.iter().map(|e| e.to_string()).collect();
            write!(f, "{} fails at ({})", v.axiom, w.join(", "))?;
        }
        Ok(())
    }
}

fn check_shape(file: &TableFile) -> Result<usize, SemigroupError> {
    let n = file.elements.len();
    if n == 0 {
        return Err(SemigroupError::Malformed("table has no elements".into()));
    }
    if file.table.len() != n {
        return Err(SemigroupError::Malformed(format!(
            "table has {} rows for {} elements",
            file.table.len(),
            n
        )));
    }
    for (i, row) in file.table.iter().enumerate() {
        if row.len() != n {
            return Err(SemigroupError::Malformed(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(SemigroupError::Malformed(format!("row {i} refers to element {bad}")));
        }
    }
    if file.zero >= n {
        return Err(SemigroupError::Malformed(format!("zero index {} out of range", file.zero)));
    }
    if let Some(id) = file.identity {
        if id >= n {
            return Err(SemigroupError::Malformed(format!("identity index {id} out of range")));
        }
    }
    Ok(n)
}

/// Exhaustively checks the inverse-semigroup-with-zero axioms.
///
/// Every failing axiom is reported once, with the first witness found in
/// index order.
pub fn verify_inverse_semigroup(file: &TableFile) -> Result<ValidationReport, SemigroupError> {
    let n = check_shape(file)?;
    if n > VERIFY_CAP {
        return Err(SemigroupError::TooLarge { size: n, cap: VERIFY_CAP });
    }
    let m = |a: usize, b: usize| file.table[a][b];
    let z = file.zero;
    let mut report = ValidationReport::default();
    let mut push = |axiom, witness: &[usize]| {
        report.violations.push(Violation {
            axiom,
            witness: witness.iter().map(|&i| Elem(i)).collect(),
        })
    };

    if let Some(a) = (0..n).find(|&a| m(a, z) != z || m(z, a) != z) {
        push(Axiom::ZeroAbsorbing, &[a]);
    }
    if let Some(id) = file.identity {
        if let Some(a) = (0..n).find(|&a| m(id, a) != a || m(a, id) != a) {
            push(Axiom::IdentityLaw, &[a]);
        }
    }
    'assoc: for a in 0..n {
        for b in 0..n {
            let ab = m(a, b);
            for c in 0..n {
                if m(ab, c) != m(a, m(b, c)) {
                    push(Axiom::Associativity, &[a, b, c]);
                    break 'assoc;
                }
            }
        }
    }
    for x in 0..n {
        let count = (0..n)
            .filter(|&y| m(m(x, y), x) == x && m(m(y, x), y) == y)
            .count();
        if count != 1 {
            push(Axiom::UniqueInverse, &[x]);
            break;
        }
    }
    let idem: Vec<usize> = (0..n).filter(|&e| m(e, e) == e).collect();
    'comm: for (i, &e) in idem.iter().enumerate() {
        for &f in &idem[i + 1..] {
            if m(e, f) != m(f, e) {
                push(Axiom::IdempotentsCommute, &[e, f]);
                break 'comm;
            }
        }
    }
    Ok(report)
}

/// A finite inverse semigroup with zero, given by its multiplication table.
///
/// Values come only from verified tables or from constructions known to
/// yield inverse semigroups, so inverses always exist and are cached.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    name: String,
    labels: Vec<String>,
    zero: Elem,
    identity: Option<Elem>,
    product: Vec<u32>,
    inverse: Vec<Elem>,
    leq: Vec<bool>,
    pub(crate) joins: OnceLock<Vec<Option<Elem>>>,
    pub(crate) class: OnceLock<super::Classification>,
}

impl PartialEq for CayleyTable {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.zero == other.zero
            && self.identity == other.identity
            && self.product == other.product
    }
}

impl Eq for CayleyTable {}

impl CayleyTable {
    /// Builds a table from its parts, refusing anything that is not an
    /// inverse semigroup with zero.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        zero: usize,
        identity: Option<usize>,
        rows: Vec<Vec<usize>>,
    ) -> Result<Self, SemigroupError> {
        Self::from_file(&TableFile {
            name: name.into(),
            elements: labels,
            zero,
            identity,
            table: rows,
        })
    }

    pub fn from_file(file: &TableFile) -> Result<Self, SemigroupError> {
        let report = verify_inverse_semigroup(file)?;
        if !report.is_ok() {
            return Err(SemigroupError::Invalid(report));
        }
        let n = file.elements.len();
        let product: Vec<u32> = file.table.iter().flatten().map(|&v| v as u32).collect();
        let inverse = (0..n)
            .map(|x| {
                let y = (0..n)
                    .find(|&y| {
                        let m = |a: usize, b: usize| product[a * n + b] as usize;
                        m(m(x, y), x) == x && m(m(y, x), y) == y
                    })
                    .expect("verified table has inverses");
                Elem(y)
            })
            .collect();
        Ok(Self::assemble(
            file.name.clone(),
            file.elements.clone(),
            Elem(file.zero),
            file.identity.map(Elem),
            product,
            inverse,
        ))
    }

    /// Builds a table produced by one of this crate's constructions. The
    /// caller supplies the inverse map; the axioms are not re-checked.
    pub(crate) fn from_construction(
        name: String,
        labels: Vec<String>,
        zero: Elem,
        identity: Option<Elem>,
        product: Vec<u32>,
        inverse: Vec<Elem>,
    ) -> Self {
        debug_assert_eq!(product.len(), labels.len() * labels.len());
        Self::assemble(name, labels, zero, identity, product, inverse)
    }

    fn assemble(
        name: String,
        labels: Vec<String>,
        zero: Elem,
        identity: Option<Elem>,
        product: Vec<u32>,
        inverse: Vec<Elem>,
    ) -> Self {
        let n = labels.len();
        let mut table = CayleyTable {
            name,
            labels,
            zero,
            identity,
            product,
            inverse,
            leq: Vec::new(),
            joins: OnceLock::new(),
            class: OnceLock::new(),
        };
        let mut leq = vec![false; n * n];
        for s in 0..n {
            let ds = table.d(Elem(s));
            for t in 0..n {
                leq[s * n + t] = table.mul(Elem(t), ds) == Elem(s);
            }
        }
        table.leq = leq;
        table
    }

    pub fn to_file(&self) -> TableFile {
        let n = self.len();
        TableFile {
            name: self.name.clone(),
            elements: self.labels.clone(),
            zero: self.zero.0,
            identity: self.identity.map(|e| e.0),
            table: (0..n)
                .map(|i| (0..n).map(|j| self.product[i * n + j] as usize).collect())
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.len()).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        self.elements().filter(move |&e| e != self.zero)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.0]
    }

    pub fn find(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label).map(Elem)
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn identity(&self) -> Option<Elem> {
        self.identity
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.len()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.product[a.0 * self.len() + b.0] as usize)
    }

    /// Product of a sequence, left to right; the empty product is not defined
    /// for semigroups so callers pass at least one factor.
    pub fn mul_all(&self, factors: &[Elem]) -> Elem {
        let (first, rest) = factors.split_first().expect("at least one factor");
        rest.iter().fold(*first, |acc, &x| self.mul(acc, x))
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a.0]
    }

    /// `d(a) = a⁻¹a`.
    #[inline]
    pub fn d(&self, a: Elem) -> Elem {
        self.mul(self.inv(a), a)
    }

    /// `r(a) = aa⁻¹`.
    #[inline]
    pub fn r(&self, a: Elem) -> Elem {
        self.mul(a, self.inv(a))
    }

    #[inline]
    pub fn is_idempotent(&self, a: Elem) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        self.elements().filter(move |&e| self.is_idempotent(e))
    }

    /// Natural partial order: `s ≤ t` iff `s = t·d(s)`.
    #[inline]
    pub fn leq(&self, s: Elem, t: Elem) -> bool {
        self.leq[s.0 * self.len() + t.0]
    }

    pub fn lt(&self, s: Elem, t: Elem) -> bool {
        s != t && self.leq(s, t)
    }

    /// All elements below `a`, in index order.
    pub fn below(&self, a: Elem) -> Vec<Elem> {
        self.elements().filter(|&x| self.leq(x, a)).collect()
    }

    /// Maximal elements strictly below `a`.
    pub fn maximal_below(&self, a: Elem) -> Vec<Elem> {
        let strict: Vec<Elem> = self.elements().filter(|&x| self.lt(x, a)).collect();
        strict
            .iter()
            .copied()
            .filter(|&x| !strict.iter().any(|&y| self.lt(x, y)))
            .collect()
    }

    pub fn compatible(&self, s: Elem, t: Elem) -> bool {
        self.is_idempotent(self.mul(self.inv(s), t)) && self.is_idempotent(self.mul(s, self.inv(t)))
    }

    pub fn orthogonal(&self, s: Elem, t: Elem) -> bool {
        self.mul(self.inv(s), t) == self.zero && self.mul(s, self.inv(t)) == self.zero
    }

    /// The sub-table on `members`, which must be closed under products and
    /// inverses and contain zero. Element `i` of the result is `members[i]`.
    pub fn subtable(&self, name: impl Into<String>, members: &[Elem]) -> Result<Self, SemigroupError> {
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &m) in members.iter().enumerate() {
            pos[m.0] = i;
        }
        let k = members.len();
        let zero = pos[self.zero.0];
        if zero == usize::MAX {
            return Err(SemigroupError::NotClosed("zero missing".into()));
        }
        let mut product = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                let p = pos[self.mul(a, b).0];
                if p == usize::MAX {
                    return Err(SemigroupError::NotClosed(format!(
                        "{} · {} leaves the subset",
                        self.label(a),
                        self.label(b)
                    )));
                }
                product.push(p as u32);
            }
        }
        let mut inverse = Vec::with_capacity(k);
        for &a in members {
            let p = pos[self.inv(a).0];
            if p == usize::MAX {
                return Err(SemigroupError::NotClosed(format!("inverse of {} missing", self.label(a))));
            }
            inverse.push(Elem(p));
        }
        let identity = (0..k).find(|&u| {
            (0..k).all(|x| product[u * k + x] as usize == x && product[x * k + u] as usize == x)
        });
        let labels = members.iter().map(|&m| self.label(m).to_string()).collect();
        Ok(Self::from_construction(
            name.into(),
            labels,
            Elem(zero),
            identity.map(Elem),
            product,
            inverse,
        ))
    }
}
