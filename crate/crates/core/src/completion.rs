//! The distributive completion `D(S)`: finitely generated compatible order
//! ideals of a finite inverse semigroup, under subset multiplication.
//!
//! An ideal is stored by its canonical generators, the maximal elements of
//! the ideal. Full element sets are only materialized on request.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::{is_homomorphism, CayleyTable, Elem, SemigroupError, TABULATION_CAP};

/// Upper bound on the number of ideals enumerated.
pub const IDEAL_CAP: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("generators {0} and {1} are not compatible")]
    IncompatiblePair(Elem, Elem),
    #[error("completion has more than {cap} elements")]
    TooLarge { cap: usize },
    #[error("no join for images {0:?} in the target")]
    JoinMissing(Vec<Elem>),
    #[error("map is not a zero-preserving homomorphism")]
    NotHomomorphism,
    #[error("induced map is not a morphism: {0}")]
    NotMorphism(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// A compatible order ideal, given by its sorted antichain of generators.
/// The zero ideal has no generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ideal {
    generators: Vec<Elem>,
}

impl Ideal {
    pub fn zero() -> Self {
        Ideal { generators: Vec::new() }
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// All elements of the ideal, zero included, in index order.
    pub fn elements(&self, t: &CayleyTable) -> Vec<Elem> {
        t.elements()
            .filter(|&x| x == t.zero() || self.contains(t, x))
            .collect()
    }

    pub fn contains(&self, t: &CayleyTable, x: Elem) -> bool {
        x == t.zero() || self.generators.iter().any(|&g| t.leq(x, g))
    }

    pub fn label(&self, t: &CayleyTable) -> String {
        let parts: Vec<&str> = self.generators.iter().map(|&g| t.label(g)).collect();
        format!("<{}>", parts.join(" | "))
    }

    pub fn display<'a>(&'a self, t: &'a CayleyTable) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Ideal, &'a CayleyTable);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.label(self.1))
            }
        }
        D(self, t)
    }
}

/// Drops zeros and dominated generators; the survivors must be pairwise
/// compatible.
pub fn canonicalize(t: &CayleyTable, gens: &[Elem]) -> Result<Ideal, CompletionError> {
    let mut g: Vec<Elem> = gens.iter().copied().filter(|&x| x != t.zero()).collect();
    g.sort_unstable();
    g.dedup();
    let maximal: Vec<Elem> = g
        .iter()
        .copied()
        .filter(|&x| !g.iter().any(|&y| t.lt(x, y)))
        .collect();
    for (i, &x) in maximal.iter().enumerate() {
        for &y in &maximal[i + 1..] {
            if !t.compatible(x, y) {
                return Err(CompletionError::IncompatiblePair(x, y));
            }
        }
    }
    Ok(Ideal { generators: maximal })
}

/// `s↓`.
pub fn principal(t: &CayleyTable, s: Elem) -> Ideal {
    canonicalize(t, &[s]).expect("a single generator is compatible")
}

pub fn ideal_product(t: &CayleyTable, a: &Ideal, b: &Ideal) -> Ideal {
    let gens: Vec<Elem> = a
        .generators
        .iter()
        .flat_map(|&x| b.generators.iter().map(move |&y| t.mul(x, y)))
        .collect();
    canonicalize(t, &gens).expect("products of compatible sets are compatible")
}

pub fn ideal_inverse(t: &CayleyTable, a: &Ideal) -> Ideal {
    let gens: Vec<Elem> = a.generators.iter().map(|&x| t.inv(x)).collect();
    canonicalize(t, &gens).expect("inverses of compatible sets are compatible")
}

pub fn ideal_join(t: &CayleyTable, a: &Ideal, b: &Ideal) -> Result<Ideal, CompletionError> {
    let gens: Vec<Elem> = a.generators.iter().chain(&b.generators).copied().collect();
    canonicalize(t, &gens)
}

pub fn ideal_meet(t: &CayleyTable, a: &Ideal, b: &Ideal) -> Ideal {
    let common: Vec<Elem> = t
        .nonzero()
        .filter(|&x| a.contains(t, x) && b.contains(t, x))
        .collect();
    canonicalize(t, &common).expect("subsets of compatible ideals are compatible")
}

pub fn ideal_leq(t: &CayleyTable, a: &Ideal, b: &Ideal) -> bool {
    a.generators
        .iter()
        .all(|&x| b.generators.iter().any(|&y| t.leq(x, y)))
}

/// Every ideal of `D(S)`: the zero ideal, then compatible antichains of
/// nonzero elements ordered by size and then lexicographically.
pub fn enumerate_ideals(t: &CayleyTable) -> Result<Vec<Ideal>, CompletionError> {
    let nonzero: Vec<Elem> = t.nonzero().collect();
    let mut out = vec![Ideal::zero()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for chain in &layer {
            let start = chain.last().map_or(0, |&i| i + 1);
            for (i, &x) in nonzero.iter().enumerate().skip(start) {
                let fits = chain.iter().all(|&j| {
                    let y = nonzero[j];
                    t.compatible(x, y) && !t.leq(x, y) && !t.leq(y, x)
                });
                if fits {
                    let mut c = chain.clone();
                    c.push(i);
                    out.push(Ideal {
                        generators: c.iter().map(|&j| nonzero[j]).collect(),
                    });
                    if out.len() > IDEAL_CAP {
                        return Err(CompletionError::TooLarge { cap: IDEAL_CAP });
                    }
                    next.push(c);
                }
            }
        }
        layer = next;
    }
    Ok(out)
}

/// `D(S)` as a Cayley table together with the embedding `δ(s) = s↓`.
#[derive(Clone, Debug)]
pub struct Completion {
    pub dtable: CayleyTable,
    /// Index of `s↓` in `dtable`, for each element `s`.
    pub delta: Vec<Elem>,
    /// The ideal behind each element of `dtable`.
    pub ideals: Vec<Ideal>,
}

#[derive(Serialize)]
struct DeltaJson<'a> {
    delta: &'a [Elem],
}

impl Completion {
    pub fn ideal(&self, x: Elem) -> &Ideal {
        &self.ideals[x.0]
    }

    pub fn index_of(&self, ideal: &Ideal) -> Option<Elem> {
        self.ideals.binary_search_by(|i| order_key(i).cmp(&order_key(ideal))).ok().map(Elem)
    }

    pub fn delta_json(&self) -> String {
        serde_json::to_string(&DeltaJson { delta: &self.delta }).expect("serializable")
    }
}

fn order_key(i: &Ideal) -> (usize, &[Elem]) {
    (i.generators.len(), &i.generators)
}

pub fn completion_table(t: &CayleyTable) -> Result<Completion, CompletionError> {
    let ideals = enumerate_ideals(t)?;
    let n = ideals.len();
    if n > TABULATION_CAP {
        return Err(CompletionError::TooLarge { cap: TABULATION_CAP });
    }
    let index: HashMap<&Ideal, usize> = ideals.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut product = Vec::with_capacity(n * n);
    for a in &ideals {
        for b in &ideals {
            product.push(index[&ideal_product(t, a, b)] as u32);
        }
    }
    let inverse: Vec<Elem> = ideals.iter().map(|a| Elem(index[&ideal_inverse(t, a)])).collect();
    let identity = (0..n).find(|&u| {
        (0..n).all(|x| product[u * n + x] as usize == x && product[x * n + u] as usize == x)
    });
    let labels = ideals.iter().map(|a| a.label(t)).collect();
    let dtable = CayleyTable::from_construction(
        format!("D({})", t.name()),
        labels,
        Elem(0),
        identity.map(Elem),
        product,
        inverse,
    );
    let delta = t.elements().map(|s| Elem(index[&principal(t, s)])).collect();
    Ok(Completion { dtable, delta, ideals })
}

/// The unique morphism `γ: D(S) → T` with `δ` followed by `γ` equal to `θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub map: Vec<Elem>,
    pub unique: bool,
}

/// Extends a homomorphism `θ: S → T` into a distributive `T` along `δ`.
///
/// Uniqueness is certified structurally: every element of `D(S)` must be the
/// join in `D(S)` of the `δ`-images of its generators, so any morphism
/// agreeing with `θ` on `δ(S)` is pinned down everywhere.
pub fn completion_factorize(
    s: &CayleyTable,
    completion: &Completion,
    theta: &[Elem],
    target: &CayleyTable,
) -> Result<Factorization, CompletionError> {
    if !is_homomorphism(s, target, theta)? {
        return Err(CompletionError::NotHomomorphism);
    }
    let d = &completion.dtable;
    let mut map = Vec::with_capacity(d.len());
    for ideal in &completion.ideals {
        let images: Vec<Elem> = ideal.generators.iter().map(|&g| theta[g.0]).collect();
        let j = target
            .brute_force_join(&images)
            .ok_or_else(|| CompletionError::JoinMissing(images.clone()))?;
        map.push(j);
    }
    for x in s.elements() {
        if map[completion.delta[x.0].0] != theta[x.0] {
            return Err(CompletionError::NotMorphism("does not extend θ".into()));
        }
    }
    if !crate::semigroup::is_morphism(d, target, &map)? {
        return Err(CompletionError::NotMorphism(
            "products or compatible joins are not preserved".into(),
        ));
    }
    let unique = completion.ideals.iter().enumerate().all(|(i, ideal)| {
        let parts: Vec<Elem> = ideal.generators.iter().map(|&g| completion.delta[g.0]).collect();
        d.join_all(&parts) == Some(Elem(i))
    });
    Ok(Factorization { map, unique })
}
