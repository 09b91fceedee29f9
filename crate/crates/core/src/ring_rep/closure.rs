use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::matrix::IntMatrix;
use super::RingError;
use crate::semigroup::{CayleyTable, Elem, TABULATION_CAP, VERIFY_CAP};

/// Cap on the number of distinct elements in `S′` and in `E′`.
pub const S_PRIME_CAP: usize = 5000;

/// Left-multiplication representation of the contracted semigroup algebra:
/// basis `v_t` for nonzero `t`, with `M_s v_t = v_{st}` (or `0`).
#[derive(Clone, Debug)]
pub struct RegularRep {
    table: CayleyTable,
    basis: Vec<Elem>,
    matrices: Vec<IntMatrix>,
}

impl RegularRep {
    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn matrix(&self, s: Elem) -> &IntMatrix {
        &self.matrices[s.idx()]
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn identity(&self) -> IntMatrix {
        IntMatrix::identity(self.dim())
    }

    /// `M_s` with designated inverse `M_{s⁻¹}`.
    pub fn element(&self, s: Elem) -> RepElement {
        RepElement {
            matrix: self.matrix(s).clone(),
            inv_matrix: self.matrix(self.table.inv(s)).clone(),
            provenance: self.table.label(s).to_string(),
        }
    }
}

/// Regular representation of `table`. Faithful because `s = s·d(s)` puts
/// `v_s` in the image of `M_s` applied to `v_{d(s)}`. Tables without an
/// identity are accepted; the ring unit is then the identity matrix.
pub fn regular_representation(table: &CayleyTable) -> Result<RegularRep, RingError> {
    if table.len() > TABULATION_CAP {
        return Err(RingError::TooLarge {
            what: "semigroup elements",
            size: table.len(),
            cap: TABULATION_CAP,
        });
    }
    let basis: Vec<Elem> = table.nonzero().collect();
    let mut position = vec![usize::MAX; table.len()];
    for (i, &t) in basis.iter().enumerate() {
        position[t.idx()] = i;
    }
    let matrices = table
        .elements()
        .map(|s| {
            let mut m = IntMatrix::zeros(basis.len());
            for (col, &t) in basis.iter().enumerate() {
                let st = table.mul(s, t);
                if st != table.zero() {
                    m.set(position[st.idx()], col, 1);
                }
            }
            m
        })
        .collect();
    Ok(RegularRep {
        table: table.clone(),
        basis,
        matrices,
    })
}

/// A ring element together with its designated inverse and a symbolic
/// description of how it was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepElement {
    pub matrix: IntMatrix,
    pub inv_matrix: IntMatrix,
    pub provenance: String,
}

impl RepElement {
    pub fn zero(dim: usize) -> Self {
        RepElement {
            matrix: IntMatrix::zeros(dim),
            inv_matrix: IntMatrix::zeros(dim),
            provenance: "0".into(),
        }
    }

    pub fn idempotent(e: IntMatrix, provenance: String) -> Self {
        RepElement {
            inv_matrix: e.clone(),
            matrix: e,
            provenance,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `a·a*·a = a` and `a*·a·a* = a*`.
    pub fn is_regular_pair(&self) -> bool {
        let (a, b) = (&self.matrix, &self.inv_matrix);
        &(a * b) * a == *a && &(b * a) * b == *b
    }

    pub fn inverse(&self) -> RepElement {
        RepElement {
            matrix: self.inv_matrix.clone(),
            inv_matrix: self.matrix.clone(),
            provenance: format!("({})⁻¹", self.provenance),
        }
    }

    pub fn d(&self) -> IntMatrix {
        &self.inv_matrix * &self.matrix
    }

    pub fn r(&self) -> IntMatrix {
        &self.matrix * &self.inv_matrix
    }

    pub fn mul(&self, other: &RepElement) -> RepElement {
        RepElement {
            matrix: &self.matrix * &other.matrix,
            inv_matrix: &other.inv_matrix * &self.inv_matrix,
            provenance: format!("{}·{}", self.provenance, other.provenance),
        }
    }

    /// `a*·b = 0 = a·b*`.
    pub fn orthogonal(&self, other: &RepElement) -> bool {
        (&self.inv_matrix * &other.matrix).is_zero() && (&self.matrix * &other.inv_matrix).is_zero()
    }

    /// Sum of orthogonal elements, with the sum of the inverses.
    pub fn sum(&self, other: &RepElement) -> RepElement {
        RepElement {
            matrix: &self.matrix + &other.matrix,
            inv_matrix: &self.inv_matrix + &other.inv_matrix,
            provenance: format!("{} + {}", self.provenance, other.provenance),
        }
    }

    /// Join of compatible elements, `a + b − a·d(b)`.
    pub fn join(&self, other: &RepElement) -> RepElement {
        RepElement {
            matrix: &(&self.matrix + &other.matrix) - &(&self.matrix * &other.d()),
            inv_matrix: &(&self.inv_matrix + &other.inv_matrix) - &(&self.inv_matrix * &other.r()),
            provenance: format!("{} ∨ {}", self.provenance, other.provenance),
        }
    }

    /// Relative complement `a·(d(a) − d(b))` for `b ≤ a`.
    pub fn minus(&self, other: &RepElement) -> RepElement {
        let e = &self.d() - &other.d();
        RepElement {
            matrix: &self.matrix * &e,
            inv_matrix: &e * &self.inv_matrix,
            provenance: format!("{} ∖ {}", self.provenance, other.provenance),
        }
    }
}

/// `E′`: products `M_e·(I − M_{e₁})⋯(I − M_{e_m})` over idempotents,
/// including the `M_e` themselves, each checked idempotent and all
/// pairwise commuting.
pub fn generate_e_prime(rep: &RegularRep) -> Result<Vec<RepElement>, RingError> {
    let t = rep.table();
    let idempotents: Vec<Elem> = t.idempotents().collect();
    let id = rep.identity();
    let mut found: BTreeMap<IntMatrix, String> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &e in &idempotents {
        let m = rep.matrix(e).clone();
        if !found.contains_key(&m) {
            found.insert(m.clone(), t.label(e).to_string());
            queue.push_back(m);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &f in &idempotents {
            let y = &x * &(&id - rep.matrix(f));
            if found.contains_key(&y) {
                continue;
            }
            if found.len() >= S_PRIME_CAP {
                return Err(RingError::TooLarge {
                    what: "E′ elements",
                    size: found.len() + 1,
                    cap: S_PRIME_CAP,
                });
            }
            let label = format!("{}(1−{})", found[&x], t.label(f));
            found.insert(y.clone(), label);
            queue.push_back(y);
        }
    }
    let members: Vec<RepElement> = found
        .into_iter()
        .map(|(m, p)| RepElement::idempotent(m, p))
        .collect();
    for x in &members {
        if !x.matrix.is_idempotent() {
            return Err(RingError::Violation {
                hypothesis: "E′ consists of idempotents",
                witness: x.provenance.clone(),
            });
        }
    }
    for (i, x) in members.iter().enumerate() {
        for y in &members[i + 1..] {
            if !x.matrix.commutes_with(&y.matrix) {
                return Err(RingError::Violation {
                    hypothesis: "E′ is commutative",
                    witness: format!("{} and {}", x.provenance, y.provenance),
                });
            }
        }
    }
    Ok(members)
}

/// `E′`, `S′ = {M_s·X}` and `S″`, the orthogonal sums of members of `S′`.
/// Each list is sorted by matrix.
#[derive(Clone, Debug)]
pub struct BooleanClosure {
    pub dim: usize,
    pub e_prime: Vec<RepElement>,
    pub s_prime: Vec<RepElement>,
    pub elements: Vec<RepElement>,
    index: BTreeMap<IntMatrix, usize>,
}

impl BooleanClosure {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.index.contains_key(m)
    }
}

fn insert_checked(
    found: &mut BTreeMap<IntMatrix, RepElement>,
    x: RepElement,
    what: &'static str,
    cap: usize,
) -> Result<bool, RingError> {
    if let Some(old) = found.get(&x.matrix) {
        if old.inv_matrix != x.inv_matrix {
            return Err(RingError::Violation {
                hypothesis: "designated inverses are well defined",
                witness: format!("{} and {}", old.provenance, x.provenance),
            });
        }
        return Ok(false);
    }
    if found.len() >= cap {
        return Err(RingError::TooLarge {
            what,
            size: found.len() + 1,
            cap,
        });
    }
    found.insert(x.matrix.clone(), x);
    Ok(true)
}

pub fn generate_boolean_closure(rep: &RegularRep) -> Result<BooleanClosure, RingError> {
    let t = rep.table();
    let e_prime = generate_e_prime(rep)?;

    let mut s_prime: BTreeMap<IntMatrix, RepElement> = BTreeMap::new();
    for s in t.elements() {
        let ms = rep.element(s);
        for x in &e_prime {
            let y = ms.mul(x);
            if !y.is_regular_pair() {
                return Err(RingError::Violation {
                    hypothesis: "designated inverses are inverses",
                    witness: y.provenance,
                });
            }
            insert_checked(&mut s_prime, y, "S′ elements", S_PRIME_CAP)?;
        }
    }
    let s_prime: Vec<RepElement> = s_prime.into_values().collect();

    // Every orthogonal family is reached one summand at a time: a member of
    // S′ orthogonal to a sum is orthogonal to each summand.
    let mut found: BTreeMap<IntMatrix, RepElement> =
        s_prime.iter().map(|x| (x.matrix.clone(), x.clone())).collect();
    let mut queue: VecDeque<RepElement> = s_prime.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for y in s_prime.iter().filter(|y| !y.is_zero()) {
            if !x.orthogonal(y) || x.is_zero() {
                continue;
            }
            let z = x.sum(y);
            if insert_checked(&mut found, z.clone(), "S″ elements", TABULATION_CAP)? {
                queue.push_back(z);
            }
        }
    }
    let elements: Vec<RepElement> = found.into_values().collect();
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, x)| (x.matrix.clone(), i))
        .collect();
    Ok(BooleanClosure {
        dim: rep.dim(),
        e_prime,
        s_prime,
        elements,
        index,
    })
}

/// Outcome of [`verify_additive_closure`].
#[derive(Clone, Debug)]
pub struct AdditiveClosure {
    /// `S″` as an abstract table, in the order of `BooleanClosure::elements`.
    pub table: CayleyTable,
    /// Index of the largest idempotent, which plays the role of `1`.
    pub unit: usize,
}

/// Checks that `S″` is closed under products, orthogonal sums and
/// `u − e` for idempotent `e`, where `u` is its largest idempotent, then
/// tabulates it and checks that the result is Boolean.
pub fn verify_additive_closure(c: &BooleanClosure) -> Result<AdditiveClosure, RingError> {
    let n = c.len();
    let els = &c.elements;
    let lookup = |m: &IntMatrix, hypothesis: &'static str, witness: &dyn Fn() -> String| {
        c.index_of(m).ok_or_else(|| RingError::Violation {
            hypothesis,
            witness: witness(),
        })
    };

    let mut product = Vec::with_capacity(n * n);
    for a in els {
        for b in els {
            let ab = &a.matrix * &b.matrix;
            let i = lookup(&ab, "closed under products", &|| {
                format!("({})·({})", a.provenance, b.provenance)
            })?;
            product.push(i as u32);
        }
    }
    let mut inverse = Vec::with_capacity(n);
    for a in els {
        let i = lookup(&a.inv_matrix, "closed under inverses", &|| a.provenance.clone())?;
        inverse.push(Elem(i));
    }
    for a in els {
        for b in els {
            if a.orthogonal(b) {
                let s = &a.matrix + &b.matrix;
                lookup(&s, "a + b for orthogonal a, b", &|| {
                    format!("({}) + ({})", a.provenance, b.provenance)
                })?;
            }
        }
    }

    let idempotents: Vec<usize> = (0..n).filter(|&i| els[i].matrix.is_idempotent()).collect();
    let unit = idempotents
        .iter()
        .copied()
        .find(|&u| idempotents.iter().all(|&e| &els[u].matrix * &els[e].matrix == els[e].matrix))
        .ok_or_else(|| RingError::Violation {
            hypothesis: "a largest idempotent exists",
            witness: format!("{} idempotents", idempotents.len()),
        })?;
    for &e in &idempotents {
        let m = &els[unit].matrix - &els[e].matrix;
        lookup(&m, "1 − e for idempotent e", &|| els[e].provenance.clone())?;
    }

    let zero = c
        .index_of(&IntMatrix::zeros(c.dim))
        .expect("S″ contains zero");
    let identity = c.index_of(&IntMatrix::identity(c.dim)).map(Elem);
    let mut seen = std::collections::BTreeSet::new();
    let labels: Vec<String> = els
        .iter()
        .enumerate()
        .map(|(i, x)| {
            if seen.insert(x.provenance.clone()) {
                x.provenance.clone()
            } else {
                format!("{} #{i}", x.provenance)
            }
        })
        .collect();
    let table = if n <= VERIFY_CAP {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| product[i * n + j] as usize).collect())
            .collect();
        CayleyTable::new("S″", labels, zero, identity.map(Elem::idx), rows).map_err(|e| {
            RingError::Violation {
                hypothesis: "S″ is an inverse semigroup",
                witness: e.to_string(),
            }
        })?
    } else {
        CayleyTable::from_construction("S″".into(), labels, Elem(zero), identity, product, inverse)
    };
    if !table.classify().is_boolean {
        return Err(RingError::Violation {
            hypothesis: "S″ is Boolean",
            witness: table.name().to_string(),
        });
    }
    Ok(AdditiveClosure { table, unit })
}
