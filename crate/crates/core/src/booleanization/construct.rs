use std::collections::HashMap;

use super::groupoid::{Bisection, FilterGroupoid};
use super::BooleanizationError;
use crate::completion::{completion_table, Completion};
use crate::semigroup::{compose_maps, CayleyTable, Elem};

/// Nonzero `a` with `a ≤ b ∨ c ⟹ a ≤ b or a ≤ c`, over all compatible
/// pairs whose join exists.
pub fn join_primes(dtable: &CayleyTable) -> Result<Vec<Elem>, BooleanizationError> {
    if !dtable.classify().is_distributive {
        return Err(BooleanizationError::NotDistributive);
    }
    let mut joins = Vec::new();
    for b in dtable.nonzero() {
        for c in dtable.nonzero().filter(|&c| c > b && dtable.compatible(b, c)) {
            if let Some(j) = dtable.join(b, c) {
                joins.push((b, c, j));
            }
        }
    }
    Ok(dtable
        .nonzero()
        .filter(|&a| {
            joins
                .iter()
                .all(|&(b, c, j)| !dtable.leq(a, j) || dtable.leq(a, b) || dtable.leq(a, c))
        })
        .collect())
}

/// Groupoid of prime filters of a distributive table, each represented by
/// its generating join-prime.
pub fn prime_groupoid(dtable: &CayleyTable) -> Result<FilterGroupoid, BooleanizationError> {
    let primes = join_primes(dtable)?;
    FilterGroupoid::new(dtable.clone(), primes)
}

/// Groupoid of proper filters of an arbitrary table: arrows are the nonzero
/// elements, objects the nonzero idempotents.
pub fn proper_filter_groupoid(table: &CayleyTable) -> Result<FilterGroupoid, BooleanizationError> {
    FilterGroupoid::new(table.clone(), table.nonzero().collect())
}

/// `V_{a;b}`: primes below `a` and not below `b`.
pub fn v_set(g: &FilterGroupoid, a: Elem, b: Option<Elem>) -> Result<Bisection, BooleanizationError> {
    match b {
        None => Ok(g.down_set(a, &[])),
        Some(b) if !g.carrier().leq(b, a) => Err(BooleanizationError::NotBelow(b, a)),
        Some(b) => Ok(g.down_set(a, &[b])),
    }
}

/// `U_{a;a₁,…,aₘ}`: proper filters containing `a` and none of the `aᵢ`.
pub fn u_set(g: &FilterGroupoid, a: Elem, omit: &[Elem]) -> Bisection {
    g.down_set(a, omit)
}

/// A Boolean inverse semigroup of all partial bisections of a filter
/// groupoid, with the embedding of the input table.
#[derive(Clone, Debug)]
pub struct Booleanization {
    pub groupoid: FilterGroupoid,
    pub bisections: Vec<Bisection>,
    pub btable: CayleyTable,
    /// Embedding of the input table into `btable`.
    pub beta: Vec<Elem>,
    /// Embedding of the groupoid's carrier, `a ↦ {p : p ≤ a}`.
    pub iota: Vec<Elem>,
    /// Present when the construction went through `D(S)`.
    pub completion: Option<Completion>,
}

impl Booleanization {
    fn assemble(
        name: String,
        groupoid: FilterGroupoid,
        completion: Option<Completion>,
    ) -> Result<Self, BooleanizationError> {
        let bisections = groupoid.enumerate_bisections()?;
        let btable = groupoid.tabulate(name, &bisections)?;
        let lookup: HashMap<Bisection, usize> =
            bisections.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let iota = groupoid
            .carrier()
            .elements()
            .map(|a| {
                let v = groupoid.down_set(a, &[]);
                lookup
                    .get(&v)
                    .map(|&i| Elem(i))
                    .ok_or_else(|| BooleanizationError::NotABisection(v.arrows()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let beta = match &completion {
            Some(c) => compose_maps(&c.delta, &iota),
            None => iota.clone(),
        };
        Ok(Booleanization {
            groupoid,
            bisections,
            btable,
            beta,
            iota,
            completion,
        })
    }

    pub fn len(&self) -> usize {
        self.bisections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bisections.is_empty()
    }

    pub fn bisection(&self, x: Elem) -> Bisection {
        self.bisections[x.0]
    }

    pub fn index_of(&self, b: Bisection) -> Option<Elem> {
        self.bisections
            .binary_search_by(|x| (x.len(), x.arrows()).cmp(&(b.len(), b.arrows())))
            .ok()
            .map(Elem)
    }

    /// Singleton bisections, indexed by arrow.
    pub fn atoms(&self) -> Vec<Elem> {
        (0..self.groupoid.len())
            .map(|i| self.index_of(Bisection::singleton(i)).expect("singletons are bisections"))
            .collect()
    }

    /// `V_{a;b}` as an element of `btable`.
    pub fn v_elem(&self, a: Elem, b: Option<Elem>) -> Result<Elem, BooleanizationError> {
        let v = v_set(&self.groupoid, a, b)?;
        Ok(self.index_of(v).expect("V-sets are bisections"))
    }

    /// Join of the maximal carrier elements strictly below `p`.
    pub fn below_join(&self, p: Elem) -> Elem {
        let t = self.groupoid.carrier();
        t.join_all(&t.maximal_below(p))
            .expect("elements below a common bound have a join in a distributive table")
    }

    /// The singleton argument: each atom `{p}` is `V_{p; b_p}` with `b_p`
    /// the join of the maximal elements strictly below `p`. Together with
    /// closure of bisections under unions of singletons, this shows the
    /// compatible-join closure of the V-sets is every bisection.
    pub fn verify_v_closure(&self) -> Result<(), BooleanizationError> {
        let t = self.groupoid.carrier();
        for a in t.elements() {
            for b in t.below(a) {
                let v = self.groupoid.down_set(a, &[b]);
                if self.index_of(v).is_none() {
                    return Err(BooleanizationError::ClosureMismatch(format!(
                        "V-set {} is not a bisection",
                        self.groupoid.label(v)
                    )));
                }
            }
        }
        for (i, &p) in self.groupoid.arrows().iter().enumerate() {
            let v = self.groupoid.down_set(p, &[self.below_join(p)]);
            if v != Bisection::singleton(i) {
                return Err(BooleanizationError::ClosureMismatch(format!(
                    "atom at {} is not a V-set",
                    t.label(p)
                )));
            }
        }
        Ok(())
    }
}

/// Booleanization of a distributive table through its prime groupoid.
pub fn booleanize_distributive(dtable: &CayleyTable) -> Result<Booleanization, BooleanizationError> {
    let g = prime_groupoid(dtable)?;
    let b = Booleanization::assemble(format!("B({})", dtable.name()), g, None)?;
    b.verify_v_closure()?;
    Ok(b)
}

/// Booleanization of an arbitrary table through its distributive completion.
pub fn booleanize(table: &CayleyTable) -> Result<Booleanization, BooleanizationError> {
    let c = completion_table(table)?;
    let g = prime_groupoid(&c.dtable)?;
    let b = Booleanization::assemble(format!("B({})", table.name()), g, Some(c))?;
    b.verify_v_closure()?;
    Ok(b)
}

/// Booleanization built from the proper-filter groupoid, with its
/// isomorphism onto [`booleanize`].
#[derive(Clone, Debug)]
pub struct DirectBooleanization {
    pub booleanization: Booleanization,
    /// `iso[x]` is the element of `via_completion.btable` matching `x`.
    pub iso: Vec<Elem>,
    pub via_completion: Booleanization,
    pub certified: bool,
}

pub fn direct_booleanize(table: &CayleyTable) -> Result<DirectBooleanization, BooleanizationError> {
    let g = proper_filter_groupoid(table)?;
    let direct = Booleanization::assemble(format!("B({})", table.name()), g, None)?;
    let via = booleanize(table)?;
    let completion = via.completion.as_ref().expect("built through D(S)");
    let arrow_map = filter_correspondence(&direct.groupoid, completion, &via.groupoid)?;
    let certified = groupoid_isomorphic(&direct.groupoid, &via.groupoid, &arrow_map);
    let mut iso = Vec::with_capacity(direct.len());
    for &x in &direct.bisections {
        let image = Bisection::from_arrows(&x.iter().map(|i| arrow_map[i]).collect::<Vec<_>>());
        iso.push(
            via.index_of(image)
                .ok_or_else(|| BooleanizationError::NotABisection(image.arrows()))?,
        );
    }
    let certified = certified && is_table_isomorphism(&direct.btable, &via.btable, &iso);
    Ok(DirectBooleanization {
        booleanization: direct,
        iso,
        via_completion: via,
        certified,
    })
}

/// Arrow map `x ↦ x↓` from the proper-filter groupoid of `S` to the prime
/// groupoid of `D(S)`.
pub fn filter_correspondence(
    proper: &FilterGroupoid,
    completion: &Completion,
    primes: &FilterGroupoid,
) -> Result<Vec<usize>, BooleanizationError> {
    proper
        .arrows()
        .iter()
        .map(|&x| {
            primes.arrow_of(completion.delta[x.0]).ok_or_else(|| {
                BooleanizationError::NotClosed(format!(
                    "{} is not join-prime in the completion",
                    proper.carrier().label(x)
                ))
            })
        })
        .collect()
}

/// Whether `map` is a bijection on arrows preserving sources, targets and
/// the partial product.
pub fn groupoid_isomorphic(g: &FilterGroupoid, h: &FilterGroupoid, map: &[usize]) -> bool {
    if g.len() != h.len() || map.len() != g.len() {
        return false;
    }
    let mut seen = vec![false; h.len()];
    for &y in map {
        if y >= h.len() || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    for i in 0..g.len() {
        if map[g.source(i)] != h.source(map[i]) || map[g.target(i)] != h.target(map[i]) {
            return false;
        }
        for j in 0..g.len() {
            if g.product(i, j).map(|k| map[k]) != h.product(map[i], map[j]) {
                return false;
            }
        }
    }
    true
}

/// Bijective, zero-preserving and multiplicative.
pub fn is_table_isomorphism(s: &CayleyTable, t: &CayleyTable, map: &[Elem]) -> bool {
    if s.len() != t.len() || map.len() != s.len() {
        return false;
    }
    let mut seen = vec![false; t.len()];
    for &y in map {
        if !t.contains(y) || std::mem::replace(&mut seen[y.0], true) {
            return false;
        }
    }
    map[s.zero().0] == t.zero()
        && s.elements()
            .all(|a| s.elements().all(|b| map[s.mul(a, b).0] == t.mul(map[a.0], map[b.0])))
}
