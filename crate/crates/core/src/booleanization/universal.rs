use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::construct::{booleanize_distributive, Booleanization};
use super::groupoid::Bisection;
use super::BooleanizationError;
use crate::completion::completion_factorize;
use crate::semigroup::{compose_maps, is_homomorphism, is_morphism, CayleyTable, Elem};

/// The morphism `γ: B(S) → T` with `β` followed by `γ` equal to `θ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorThrough {
    pub gamma: Vec<Elem>,
    /// Every morphism extending `θ` is forced to agree with `gamma`.
    pub unique: bool,
}

/// Factors a homomorphism `θ: S → T` into a Boolean `T` through `b`.
///
/// `b` must be the Booleanization of `s`, built either through `D(S)` or,
/// for distributive `s`, directly; in the latter case `θ` must also be a
/// morphism.
///
/// The image of an atom `{p}` is `θ'(p) ∖ θ'(b_p)`, where `θ'` is `θ`
/// extended to the groupoid's carrier and `b_p` joins the maximal elements
/// strictly below `p`. Uniqueness holds because a morphism preserves
/// relative complements and orthogonal joins: if each atom equals
/// `ι(p) ∖ ι(b_p)` and `θ'` itself is unique, every image is forced.
pub fn factor_through(
    b: &Booleanization,
    s: &CayleyTable,
    theta: &[Elem],
    target: &CayleyTable,
) -> Result<FactorThrough, BooleanizationError> {
    if !target.classify().is_boolean {
        return Err(BooleanizationError::NotBoolean);
    }
    if !is_homomorphism(s, target, theta)? {
        return Err(BooleanizationError::NotHomomorphism);
    }
    let (carrier_map, carrier_unique) = match &b.completion {
        Some(c) => {
            let f = completion_factorize(s, c, theta, target)?;
            (f.map, f.unique)
        }
        None => {
            if !is_morphism(s, target, theta)? {
                return Err(BooleanizationError::NotMorphism(
                    "θ does not preserve compatible joins".into(),
                ));
            }
            (theta.to_vec(), true)
        }
    };
    let g = &b.groupoid;
    let mut atom_images = Vec::with_capacity(g.len());
    for &p in g.arrows() {
        let bp = b.below_join(p);
        atom_images.push(target.relative_complement(carrier_map[p.0], carrier_map[bp.0])?);
    }
    let mut gamma = Vec::with_capacity(b.len());
    for &x in &b.bisections {
        let parts: Vec<Elem> = x.iter().map(|i| atom_images[i]).collect();
        gamma.push(
            target
                .join_all(&parts)
                .ok_or(BooleanizationError::JoinMissing(parts))?,
        );
    }
    if compose_maps(&b.beta, &gamma) != theta {
        return Err(BooleanizationError::NotMorphism("β then γ differs from θ".into()));
    }
    if !is_morphism(&b.btable, target, &gamma)? {
        return Err(BooleanizationError::NotMorphism(
            "γ does not preserve products or joins".into(),
        ));
    }
    let atoms_forced = g.arrows().iter().enumerate().all(|(i, &p)| {
        let whole = b.bisection(b.iota[p.0]);
        let below = b.bisection(b.iota[b.below_join(p).0]);
        below.is_subset(whole) && whole.difference(below) == Bisection::singleton(i)
    });
    Ok(FactorThrough {
        gamma,
        unique: carrier_unique && atoms_forced,
    })
}

/// The Boolean hull of a distributive subalgebra inside a Boolean table.
#[derive(Clone, Debug)]
pub struct BooleanHull {
    /// `D″`, sorted.
    pub members: Vec<Elem>,
    /// `D′ = {a ∖ b : b ≤ a in the subalgebra}`, sorted.
    pub complements: Vec<Elem>,
    /// Booleanization of the subalgebra taken on its own.
    pub booleanization: Booleanization,
    /// `iso[x]` is the ambient element matching `x` in `booleanization`.
    pub iso: Vec<Elem>,
    pub isomorphic: bool,
}

pub fn boolean_hull(ambient: &CayleyTable, sub: &[Elem]) -> Result<BooleanHull, BooleanizationError> {
    if !ambient.classify().is_boolean {
        return Err(BooleanizationError::NotBoolean);
    }
    let members: Vec<Elem> = sub.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let d = ambient.subtable(format!("{}|sub", ambient.name()), &members)?;
    if !d.classify().is_distributive {
        return Err(BooleanizationError::NotDistributiveSubalgebra(
            "not distributive in its own right".into(),
        ));
    }
    for a in d.elements() {
        for b in d.elements().filter(|&b| b > a && d.compatible(a, b)) {
            let inner = d.join(a, b).map(|j| members[j.0]);
            if inner != ambient.join(members[a.0], members[b.0]) {
                return Err(BooleanizationError::NotDistributiveSubalgebra(format!(
                    "join of {} and {} differs from the ambient join",
                    d.label(a),
                    d.label(b)
                )));
            }
        }
    }

    let mut complements = BTreeSet::new();
    for &a in &members {
        for &b in members.iter().filter(|&&b| ambient.leq(b, a)) {
            complements.insert(ambient.relative_complement(a, b)?);
        }
    }
    let mut hull = complements.clone();
    loop {
        let current: Vec<Elem> = hull.iter().copied().collect();
        let mut grew = false;
        for (i, &x) in current.iter().enumerate() {
            for &y in &current[i + 1..] {
                if ambient.compatible(x, y) {
                    if let Some(j) = ambient.join(x, y) {
                        grew |= hull.insert(j);
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }

    let bd = booleanize_distributive(&d)?;
    let g = &bd.groupoid;
    let atom_images = g
        .arrows()
        .iter()
        .map(|&p| ambient.relative_complement(members[p.0], members[bd.below_join(p).0]))
        .collect::<Result<Vec<_>, _>>()?;
    let mut iso = Vec::with_capacity(bd.len());
    for &x in &bd.bisections {
        let parts: Vec<Elem> = x.iter().map(|i| atom_images[i]).collect();
        iso.push(
            ambient
                .join_all(&parts)
                .ok_or(BooleanizationError::JoinMissing(parts))?,
        );
    }
    let image: BTreeSet<Elem> = iso.iter().copied().collect();
    let isomorphic = image.len() == iso.len()
        && image == hull
        && bd.btable.elements().all(|x| {
            bd.btable
                .elements()
                .all(|y| iso[bd.btable.mul(x, y).0] == ambient.mul(iso[x.0], iso[y.0]))
        });
    Ok(BooleanHull {
        members: hull.into_iter().collect(),
        complements: complements.into_iter().collect(),
        booleanization: bd,
        iso,
        isomorphic,
    })
}
