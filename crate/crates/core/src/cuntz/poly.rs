use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::permmap::PermMap;
use super::{check_alphabet, CuntzError};
use crate::lang::Word;
use crate::semigroup::RelationReport;

/// An element of the polycyclic monoid `P_n`: zero, or `yx⁻¹` acting as
/// `xA* → yA*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyElement {
    Zero,
    Pair(Word, Word),
}

impl PolyElement {
    pub fn one() -> Self {
        PolyElement::Pair(Word::empty(), Word::empty())
    }

    pub fn pair(y: Word, x: Word) -> Self {
        PolyElement::Pair(y, x)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PolyElement::Zero)
    }

    pub fn inverse(&self) -> Self {
        match self {
            PolyElement::Zero => PolyElement::Zero,
            PolyElement::Pair(y, x) => PolyElement::Pair(x.clone(), y.clone()),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match self {
            PolyElement::Zero => true,
            PolyElement::Pair(y, x) => y == x,
        }
    }

    /// `"y,x"` with `e` for the empty word, or `"0"` for zero.
    pub fn parse(s: &str, alphabet: usize) -> Result<Self, CuntzError> {
        check_alphabet(alphabet)?;
        let s = s.trim();
        if s == "0" {
            return Ok(PolyElement::Zero);
        }
        let (y, x) = s
            .split_once(',')
            .ok_or_else(|| CuntzError::Parse(format!("expected \"y,x\" or \"0\", got {s:?}")))?;
        Ok(PolyElement::Pair(Word::parse(y, alphabet)?, Word::parse(x, alphabet)?))
    }

    pub fn render(&self) -> String {
        let word = |w: &Word| if w.is_empty() { "e".to_string() } else { w.render() };
        match self {
            PolyElement::Zero => "0".into(),
            PolyElement::Pair(y, x) => format!("{},{}", word(y), word(x)),
        }
    }

    fn fits(&self, alphabet: usize) -> bool {
        match self {
            PolyElement::Zero => true,
            PolyElement::Pair(y, x) => y.fits(alphabet) && x.fits(alphabet),
        }
    }
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for PolyElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for PolyElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        PolyElement::parse(&s, usize::MAX).map_err(serde::de::Error::custom)
    }
}

/// `(y,x)(v,u)` is `(yw,u)` when `v = xw`, `(y,uw)` when `x = vw`, and zero
/// when `x` and `v` are prefix-incomparable.
pub fn poly_product(p: &PolyElement, q: &PolyElement) -> PolyElement {
    let (PolyElement::Pair(y, x), PolyElement::Pair(v, u)) = (p, q) else {
        return PolyElement::Zero;
    };
    if let Some(w) = v.strip_prefix(x) {
        PolyElement::Pair(y.concat(&w), u.clone())
    } else if let Some(w) = x.strip_prefix(v) {
        PolyElement::Pair(y.clone(), u.concat(&w))
    } else {
        PolyElement::Zero
    }
}

/// `(y,x) ≤ (v,u)` iff `(y,x) = (vw,uw)` for some `w`.
pub fn poly_leq(p: &PolyElement, q: &PolyElement) -> bool {
    match (p, q) {
        (PolyElement::Zero, _) => true,
        (_, PolyElement::Zero) => false,
        (PolyElement::Pair(y, x), PolyElement::Pair(v, u)) => match y.strip_prefix(v) {
            Some(w) => *x == u.concat(&w),
            None => false,
        },
    }
}

pub fn poly_relate(p: &PolyElement, q: &PolyElement) -> RelationReport {
    let left = poly_product(&p.inverse(), q);
    let right = poly_product(p, &q.inverse());
    RelationReport {
        leq: poly_leq(p, q),
        geq: poly_leq(q, p),
        compatible: left.is_idempotent() && right.is_idempotent(),
        orthogonal: left.is_zero() && right.is_zero(),
    }
}

/// Meet in `P_n`: nonzero lower bounds force comparability, so the meet is
/// the smaller element or zero.
pub fn poly_meet(p: &PolyElement, q: &PolyElement) -> PolyElement {
    if poly_leq(p, q) {
        p.clone()
    } else if poly_leq(q, p) {
        q.clone()
    } else {
        PolyElement::Zero
    }
}

/// Replaces a compatible generating set by an orthogonal one generating the
/// same order ideal: comparable pairs keep the larger element, and
/// incomparable compatible pairs are already orthogonal.
pub fn orthogonal_generators(gens: &[PolyElement]) -> Result<Vec<PolyElement>, CuntzError> {
    for (i, p) in gens.iter().enumerate() {
        for q in &gens[i + 1..] {
            if !poly_relate(p, q).compatible {
                return Err(CuntzError::NotCompatible);
            }
        }
    }
    let mut out: Vec<PolyElement> = Vec::new();
    for p in gens.iter().filter(|p| !p.is_zero()) {
        if out.iter().any(|q| poly_leq(p, q)) {
            continue;
        }
        out.retain(|q| !poly_leq(q, p));
        out.push(p.clone());
    }
    out.sort();
    Ok(out)
}

/// `yx⁻¹ ↦ (xu ↦ yu)`.
pub fn embed_poly(alphabet: usize, p: &PolyElement) -> Result<PermMap, CuntzError> {
    check_alphabet(alphabet)?;
    if !p.fits(alphabet) {
        return Err(CuntzError::Parse(format!("{p} uses symbols outside an alphabet of {alphabet}")));
    }
    let mut table = BTreeMap::new();
    if let PolyElement::Pair(y, x) = p {
        table.insert(x.clone(), y.clone());
    }
    Ok(PermMap::from_canonical_parts(alphabet, BTreeMap::new(), table))
}
