//! Maps between tables, given as index vectors: `map[s]` is the image of `s`.

use serde::{Deserialize, Serialize};

use super::{CayleyTable, Elem, SemigroupError};

/// Upper bound on search nodes visited by [`enumerate_homs`].
pub const HOM_SEARCH_CAP: usize = 50_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomKind {
    /// Zero-preserving homomorphism.
    Hom,
    /// Homomorphism that also preserves binary compatible joins.
    Morphism,
}

pub fn zero_map(s: &CayleyTable, t: &CayleyTable) -> Vec<Elem> {
    vec![t.zero(); s.len()]
}

pub fn identity_map(s: &CayleyTable) -> Vec<Elem> {
    s.elements().collect()
}

/// Composite `map` then `next`.
pub fn compose_maps(map: &[Elem], next: &[Elem]) -> Vec<Elem> {
    map.iter().map(|&x| next[x.0]).collect()
}

fn check_shape(s: &CayleyTable, t: &CayleyTable, map: &[Elem]) -> Result<(), SemigroupError> {
    if map.len() != s.len() {
        return Err(SemigroupError::Malformed(format!(
            "map has {} entries, source has {} elements",
            map.len(),
            s.len()
        )));
    }
    if let Some(bad) = map.iter().find(|&&x| !t.contains(x)) {
        return Err(SemigroupError::Malformed(format!("image {bad} out of range")));
    }
    Ok(())
}

/// Zero-preserving and multiplicative.
pub fn is_homomorphism(s: &CayleyTable, t: &CayleyTable, map: &[Elem]) -> Result<bool, SemigroupError> {
    check_shape(s, t, map)?;
    if map[s.zero().0] != t.zero() {
        return Ok(false);
    }
    Ok(s.elements()
        .all(|a| s.elements().all(|b| map[s.mul(a, b).0] == t.mul(map[a.0], map[b.0]))))
}

/// Homomorphism that sends every existing binary compatible join to the
/// join of the images.
pub fn is_morphism(s: &CayleyTable, t: &CayleyTable, map: &[Elem]) -> Result<bool, SemigroupError> {
    if !is_homomorphism(s, t, map)? {
        return Ok(false);
    }
    Ok(preserves_joins(s, t, map))
}

fn preserves_joins(s: &CayleyTable, t: &CayleyTable, map: &[Elem]) -> bool {
    for a in s.elements() {
        for b in s.elements().filter(|&b| b > a && s.compatible(a, b)) {
            if let Some(j) = s.join(a, b) {
                if t.join(map[a.0], map[b.0]) != Some(map[j.0]) {
                    return false;
                }
            }
        }
    }
    true
}

/// All maps of the requested kind from `s` to `t`, in lexicographic order of
/// image vectors.
pub fn enumerate_homs(
    s: &CayleyTable,
    t: &CayleyTable,
    kind: HomKind,
) -> Result<Vec<Vec<Elem>>, SemigroupError> {
    let n = s.len();
    let mut search = Search {
        s,
        t,
        map: vec![None; n],
        found: Vec::new(),
        nodes: 0,
    };
    search.map[s.zero().0] = Some(t.zero());
    let order: Vec<Elem> = s.nonzero().collect();
    search.run(&order, 0)?;
    let mut out = search.found;
    if kind == HomKind::Morphism {
        out.retain(|m| preserves_joins(s, t, m));
    }
    Ok(out)
}

struct Search<'a> {
    s: &'a CayleyTable,
    t: &'a CayleyTable,
    map: Vec<Option<Elem>>,
    found: Vec<Vec<Elem>>,
    nodes: usize,
}

impl Search<'_> {
    fn run(&mut self, order: &[Elem], depth: usize) -> Result<(), SemigroupError> {
        let Some(&x) = order.get(depth) else {
            self.found.push(self.map.iter().map(|m| m.unwrap()).collect());
            return Ok(());
        };
        for y in self.t.elements() {
            self.nodes += 1;
            if self.nodes > HOM_SEARCH_CAP {
                return Err(SemigroupError::TooLarge {
                    size: self.nodes,
                    cap: HOM_SEARCH_CAP,
                });
            }
            self.map[x.0] = Some(y);
            if self.consistent(x) {
                self.run(order, depth + 1)?;
            }
        }
        self.map[x.0] = None;
        Ok(())
    }

    /// Checks every product constraint that became decidable once `x` was
    /// assigned.
    fn consistent(&self, x: Elem) -> bool {
        let (s, t) = (self.s, self.t);
        let img = |e: Elem| self.map[e.0];
        for a in s.elements() {
            let Some(fa) = img(a) else { continue };
            for b in s.elements() {
                let Some(fb) = img(b) else { continue };
                let ab = s.mul(a, b);
                if a != x && b != x && ab != x {
                    continue;
                }
                if let Some(fab) = img(ab) {
                    if fab != t.mul(fa, fb) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
