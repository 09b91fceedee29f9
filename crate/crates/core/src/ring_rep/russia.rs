use std::collections::BTreeSet;

use serde::Serialize;

use super::closure::{
    generate_boolean_closure, regular_representation, verify_additive_closure, RegularRep, RepElement,
};
use super::matrix::IntMatrix;
use super::RingError;
use crate::booleanization::{booleanize, Bisection, Booleanization};
use crate::semigroup::{CayleyTable, Elem};

/// The additive extension `θ*` of the regular representation to `B(S)`,
/// stored as the image of each atom.
#[derive(Clone, Debug)]
pub struct ThetaStar {
    dim: usize,
    atoms: Vec<RepElement>,
}

impl ThetaStar {
    /// `b` must come from [`booleanize`] or [`crate::booleanization::booleanize_distributive`]
    /// applied to `rep.table()`.
    pub fn new(b: &Booleanization, rep: &RegularRep) -> Self {
        let carrier = b.groupoid.carrier();
        let lift = |x: Elem| -> RepElement {
            match &b.completion {
                Some(c) => c
                    .ideal(x)
                    .generators()
                    .iter()
                    .map(|&g| rep.element(g))
                    .reduce(|acc, g| acc.join(&g))
                    .unwrap_or_else(|| RepElement::zero(rep.dim())),
                None => rep.element(x),
            }
        };
        let atoms = b
            .groupoid
            .arrows()
            .iter()
            .map(|&p| {
                let mut atom = lift(p).minus(&lift(b.below_join(p)));
                atom.provenance = carrier.label(p).to_string();
                atom
            })
            .collect();
        ThetaStar { dim: rep.dim(), atoms }
    }

    pub fn atom(&self, arrow: usize) -> &RepElement {
        &self.atoms[arrow]
    }

    pub fn apply(&self, x: Bisection) -> RepElement {
        x.iter()
            .map(|i| self.atoms[i].clone())
            .reduce(|acc, a| acc.sum(&a))
            .unwrap_or_else(|| RepElement::zero(self.dim))
    }
}

/// `θ*` of a single bisection.
pub fn theta_star(b_elem: Bisection, b: &Booleanization, rep: &RegularRep) -> IntMatrix {
    ThetaStar::new(b, rep).apply(b_elem).matrix
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RussiaReport {
    pub s_double_prime_size: usize,
    pub booleanization_size: usize,
    pub isomorphic: bool,
    pub representation: &'static str,
    /// `witness[x]` is the index in `S″` of `θ*` of element `x` of `B(S)`.
    pub witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

/// Compares `B(S)` with the Boolean closure `S″` inside the regular
/// representation: `θ*` must be a bijection that preserves products,
/// designated inverses, orthogonal joins and the embedding of `S`.
pub fn russia_check(table: &CayleyTable) -> Result<RussiaReport, RingError> {
    let b = booleanize(table)?;
    let rep = regular_representation(table)?;
    let closure = generate_boolean_closure(&rep)?;
    let theta = ThetaStar::new(&b, &rep);
    let mut report = RussiaReport {
        s_double_prime_size: closure.len(),
        booleanization_size: b.len(),
        isomorphic: false,
        representation: "regular",
        witness: Vec::new(),
        mismatch: None,
    };
    match compare(table, &b, &rep, &theta, &closure) {
        Ok(witness) => {
            report.witness = witness;
            report.isomorphic = true;
        }
        Err(m) => report.mismatch = Some(m),
    }
    Ok(report)
}

fn compare(
    table: &CayleyTable,
    b: &Booleanization,
    rep: &RegularRep,
    theta: &ThetaStar,
    closure: &super::closure::BooleanClosure,
) -> Result<Vec<usize>, String> {
    verify_additive_closure(closure).map_err(|e| e.to_string())?;
    let bt = &b.btable;
    let images: Vec<RepElement> = (0..b.len()).map(|x| theta.apply(b.bisection(Elem(x)))).collect();
    let mut witness = Vec::with_capacity(images.len());
    for (x, img) in images.iter().enumerate() {
        let i = closure
            .index_of(&img.matrix)
            .ok_or_else(|| format!("θ*({}) is not in S″", bt.label(Elem(x))))?;
        witness.push(i);
    }
    let distinct: BTreeSet<usize> = witness.iter().copied().collect();
    if distinct.len() != witness.len() {
        return Err("θ* is not injective".into());
    }
    if distinct.len() != closure.len() {
        return Err(format!("θ* hits {} of {} elements of S″", distinct.len(), closure.len()));
    }
    for x in bt.elements() {
        if images[bt.inv(x).idx()].matrix != images[x.idx()].inv_matrix {
            return Err(format!("θ* does not preserve the inverse of {}", bt.label(x)));
        }
        for y in bt.elements() {
            let xy = bt.mul(x, y);
            if images[xy.idx()].matrix != &images[x.idx()].matrix * &images[y.idx()].matrix {
                return Err(format!("θ* is not multiplicative at ({}, {})", bt.label(x), bt.label(y)));
            }
            if bt.orthogonal(x, y) {
                let joined = b.bisection(x).union(b.bisection(y));
                let j = b.index_of(joined).expect("union of orthogonal bisections");
                if images[j.idx()].matrix != &images[x.idx()].matrix + &images[y.idx()].matrix {
                    return Err(format!(
                        "θ* does not preserve the join of {} and {}",
                        bt.label(x),
                        bt.label(y)
                    ));
                }
            }
        }
    }
    for s in table.elements() {
        if images[b.beta[s.idx()].idx()].matrix != *rep.matrix(s) {
            return Err(format!("θ*(β({})) differs from M_{}", table.label(s), table.label(s)));
        }
    }
    Ok(witness)
}
