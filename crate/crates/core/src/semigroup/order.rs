use serde::{Deserialize, Serialize};

use super::{CayleyTable, Elem, SemigroupError};

/// How two elements sit relative to each other.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub leq: bool,
    pub geq: bool,
    pub compatible: bool,
    pub orthogonal: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_distributive: bool,
    pub is_boolean: bool,
    pub is_meet_semigroup: bool,
    pub is_monoid: bool,
}

impl CayleyTable {
    pub fn relate(&self, s: Elem, t: Elem) -> RelationReport {
        RelationReport {
            leq: self.leq(s, t),
            geq: self.leq(t, s),
            compatible: self.compatible(s, t),
            orthogonal: self.orthogonal(s, t),
        }
    }

    /// `s ∧ t = s·t⁻¹·t` for compatible `s`, `t`.
    pub fn compatible_meet(&self, s: Elem, t: Elem) -> Result<Elem, SemigroupError> {
        if !self.compatible(s, t) {
            return Err(SemigroupError::NotCompatible(s, t));
        }
        Ok(self.mul(s, self.d(t)))
    }

    /// Meet of a non-empty compatible family, folded pairwise.
    pub fn compatible_meet_all(&self, elems: &[Elem]) -> Result<Elem, SemigroupError> {
        let (first, rest) = elems
            .split_first()
            .ok_or_else(|| SemigroupError::Malformed("meet of an empty family".into()))?;
        rest.iter()
            .try_fold(*first, |acc, &x| self.compatible_meet(acc, x))
    }

    /// Greatest common lower bound by exhaustive scan.
    pub fn brute_force_meet(&self, s: Elem, t: Elem) -> Option<Elem> {
        let lower: Vec<Elem> = self
            .elements()
            .filter(|&x| self.leq(x, s) && self.leq(x, t))
            .collect();
        greatest(self, &lower)
    }

    /// Least upper bound of `elems` by exhaustive scan. The empty set has
    /// join zero.
    pub fn brute_force_join(&self, elems: &[Elem]) -> Option<Elem> {
        let upper: Vec<Elem> = self
            .elements()
            .filter(|&u| elems.iter().all(|&x| self.leq(x, u)))
            .collect();
        least(self, &upper)
    }

    /// Cached binary join, `None` when the join does not exist.
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.join_table()[a.0 * self.len() + b.0]
    }

    /// Join of a family using the cached binary joins.
    pub fn join_all(&self, elems: &[Elem]) -> Option<Elem> {
        elems
            .iter()
            .try_fold(self.zero(), |acc, &x| self.join(acc, x))
    }

    fn join_table(&self) -> &[Option<Elem>] {
        self.joins.get_or_init(|| {
            let n = self.len();
            let mut out = vec![None; n * n];
            for a in 0..n {
                for b in a..n {
                    let j = self.brute_force_join(&[Elem(a), Elem(b)]);
                    out[a * n + b] = j;
                    out[b * n + a] = j;
                }
            }
            out
        })
    }

    pub fn classify(&self) -> Classification {
        *self.class.get_or_init(|| {
            let is_distributive = self.check_distributive();
            let is_boolean = is_distributive && self.idempotents_complemented();
            let is_meet_semigroup = self
                .elements()
                .all(|s| self.elements().all(|t| self.brute_force_meet(s, t).is_some()));
            Classification {
                is_distributive,
                is_boolean,
                is_meet_semigroup,
                is_monoid: self.identity().is_some(),
            }
        })
    }

    fn check_distributive(&self) -> bool {
        for a in self.elements() {
            for b in self.elements().filter(|&b| b > a) {
                if !self.compatible(a, b) {
                    continue;
                }
                let Some(j) = self.join(a, b) else {
                    return false;
                };
                for c in self.elements() {
                    let left = self.join(self.mul(c, a), self.mul(c, b));
                    let right = self.join(self.mul(a, c), self.mul(b, c));
                    if left != Some(self.mul(c, j)) || right != Some(self.mul(j, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every principal ideal of E(S) is a complemented lattice.
    fn idempotents_complemented(&self) -> bool {
        self.idempotents().all(|e| {
            self.idempotents()
                .filter(|&f| self.leq(f, e))
                .all(|f| self.idempotent_complement(e, f).is_some())
        })
    }

    /// For idempotents `f ≤ e`: the `g ≤ e` with `gf = 0` and `g ∨ f = e`.
    pub fn idempotent_complement(&self, e: Elem, f: Elem) -> Option<Elem> {
        self.idempotents().find(|&g| {
            self.leq(g, e) && self.mul(g, f) == self.zero() && self.join(g, f) == Some(e)
        })
    }

    /// The characterization of Boolean inverse semigroups by orthogonal
    /// joins: orthogonal pairs have joins that multiplication distributes
    /// over, and E(S) is a generalized Boolean algebra.
    pub fn is_boolean_by_orthogonal_joins(&self) -> bool {
        for a in self.elements() {
            for b in self.elements() {
                if !self.orthogonal(a, b) {
                    continue;
                }
                let Some(j) = self.join(a, b) else {
                    return false;
                };
                for c in self.elements() {
                    if self.join(self.mul(c, a), self.mul(c, b)) != Some(self.mul(c, j))
                        || self.join(self.mul(a, c), self.mul(b, c)) != Some(self.mul(j, c))
                    {
                        return false;
                    }
                }
            }
        }
        let idem: Vec<Elem> = self.idempotents().collect();
        let lattice = idem
            .iter()
            .all(|&e| idem.iter().all(|&f| self.join(e, f).is_some()));
        lattice && self.idempotents_complemented()
    }

    /// `a ∖ b = a·(d(a) ∖ d(b))` for `b ≤ a`, checked against the join oracle.
    pub fn relative_complement(&self, a: Elem, b: Elem) -> Result<Elem, SemigroupError> {
        if !self.leq(b, a) {
            return Err(SemigroupError::NotBelow(b, a));
        }
        let g = self
            .idempotent_complement(self.d(a), self.d(b))
            .ok_or(SemigroupError::NotBoolean)?;
        let x = self.mul(a, g);
        if !self.orthogonal(x, b) || self.brute_force_join(&[b, x]) != Some(a) {
            return Err(SemigroupError::NotBoolean);
        }
        Ok(x)
    }
}

fn greatest(t: &CayleyTable, set: &[Elem]) -> Option<Elem> {
    let mut best = *set.first()?;
    for &x in set {
        if t.leq(best, x) {
            best = x;
        }
    }
    set.iter().all(|&x| t.leq(x, best)).then_some(best)
}

fn least(t: &CayleyTable, set: &[Elem]) -> Option<Elem> {
    let mut best = *set.first()?;
    for &x in set {
        if t.leq(x, best) {
            best = x;
        }
    }
    set.iter().all(|&x| t.leq(best, x)).then_some(best)
}
