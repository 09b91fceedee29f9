use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::BooleanizationError;
use crate::semigroup::{CayleyTable, Elem, TABULATION_CAP};

/// Largest groupoid whose bisections we are willing to enumerate.
pub const ARROW_CAP: usize = 24;

/// Largest groupoid representable at all (bisections are 64-bit masks).
pub const MAX_ARROWS: usize = 64;

/// A finite discrete groupoid whose arrows are principal filters `p↑` of a
/// carrier table, identified with their generators `p`.
#[derive(Clone, Debug)]
pub struct FilterGroupoid {
    carrier: CayleyTable,
    arrows: Vec<Elem>,
    index: Vec<Option<usize>>,
    source: Vec<usize>,
    target: Vec<usize>,
    inverse: Vec<usize>,
    product: Vec<Option<usize>>,
}

impl FilterGroupoid {
    /// Builds the groupoid on `arrows` with `d(p) = p⁻¹p`, `r(p) = pp⁻¹` and
    /// product `p·q = pq` when `d(p) = r(q)`. Fails if the arrow set is not
    /// closed under these operations.
    pub(crate) fn new(carrier: CayleyTable, arrows: Vec<Elem>) -> Result<Self, BooleanizationError> {
        let m = arrows.len();
        if m > MAX_ARROWS {
            return Err(BooleanizationError::TooLarge {
                what: "groupoid arrows",
                size: m,
                cap: MAX_ARROWS,
            });
        }
        let mut index = vec![None; carrier.len()];
        for (i, &a) in arrows.iter().enumerate() {
            index[a.0] = Some(i);
        }
        let lookup = |x: Elem, what: &str| {
            index[x.0].ok_or_else(|| {
                BooleanizationError::NotClosed(format!("{what} {} is not an arrow", carrier.label(x)))
            })
        };
        let mut source = Vec::with_capacity(m);
        let mut target = Vec::with_capacity(m);
        let mut inverse = Vec::with_capacity(m);
        for &a in &arrows {
            source.push(lookup(carrier.d(a), "source")?);
            target.push(lookup(carrier.r(a), "target")?);
            inverse.push(lookup(carrier.inv(a), "inverse")?);
        }
        let mut product = vec![None; m * m];
        for i in 0..m {
            for j in 0..m {
                if source[i] == target[j] {
                    product[i * m + j] = Some(lookup(carrier.mul(arrows[i], arrows[j]), "product")?);
                }
            }
        }
        Ok(FilterGroupoid {
            carrier,
            arrows,
            index,
            source,
            target,
            inverse,
            product,
        })
    }

    pub fn carrier(&self) -> &CayleyTable {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The carrier element behind each arrow.
    pub fn arrows(&self) -> &[Elem] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> Elem {
        self.arrows[i]
    }

    pub fn arrow_of(&self, x: Elem) -> Option<usize> {
        self.index.get(x.0).copied().flatten()
    }

    pub fn source(&self, i: usize) -> usize {
        self.source[i]
    }

    pub fn target(&self, i: usize) -> usize {
        self.target[i]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.product[i * self.len() + j]
    }

    pub fn is_object(&self, i: usize) -> bool {
        self.source[i] == i
    }

    pub fn objects(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_object(i)).collect()
    }

    pub fn object_set(&self) -> Bisection {
        Bisection::from_arrows(&self.objects())
    }

    pub fn is_bisection(&self, x: Bisection) -> bool {
        let (mut src, mut tgt) = (0u64, 0u64);
        for i in x.iter() {
            let (s, t) = (1u64 << self.source[i], 1u64 << self.target[i]);
            if src & s != 0 || tgt & t != 0 {
                return false;
            }
            src |= s;
            tgt |= t;
        }
        true
    }

    pub fn check(&self, x: Bisection) -> Result<Bisection, BooleanizationError> {
        if (self.len() < MAX_ARROWS && x.mask >> self.len() != 0) || !self.is_bisection(x) {
            return Err(BooleanizationError::NotABisection(x.arrows()));
        }
        Ok(x)
    }

    /// `{p·q : p ∈ x, q ∈ y, d(p) = r(q)}`.
    pub fn bisection_product(&self, x: Bisection, y: Bisection) -> Bisection {
        let mut by_target = [usize::MAX; MAX_ARROWS];
        for q in y.iter() {
            by_target[self.target[q]] = q;
        }
        let mut out = 0u64;
        for p in x.iter() {
            let q = by_target[self.source[p]];
            if q != usize::MAX {
                out |= 1u64 << self.product(p, q).expect("composable");
            }
        }
        Bisection { mask: out }
    }

    pub fn bisection_inverse(&self, x: Bisection) -> Bisection {
        Bisection {
            mask: x.iter().fold(0, |m, p| m | 1u64 << self.inverse[p]),
        }
    }

    pub fn bisection_boolean(
        &self,
        op: BisectionOp,
        x: Bisection,
        y: Bisection,
    ) -> Result<Bisection, BooleanizationError> {
        match op {
            BisectionOp::Join => self.check(Bisection { mask: x.mask | y.mask }),
            BisectionOp::Meet => Ok(Bisection { mask: x.mask & y.mask }),
            BisectionOp::Subtract => Ok(Bisection { mask: x.mask & !y.mask }),
            BisectionOp::ComplementWithin => {
                if !x.is_subset(y) {
                    return Err(BooleanizationError::NotContained(x.arrows(), y.arrows()));
                }
                Ok(Bisection { mask: y.mask & !x.mask })
            }
        }
    }

    /// Arrows `p` with `p ≤ a` and `p ≰ o` for every `o` in `omit`.
    pub fn down_set(&self, a: Elem, omit: &[Elem]) -> Bisection {
        let t = &self.carrier;
        let mut mask = 0;
        for (i, &p) in self.arrows.iter().enumerate() {
            if t.leq(p, a) && omit.iter().all(|&o| !t.leq(p, o)) {
                mask |= 1u64 << i;
            }
        }
        Bisection { mask }
    }

    /// Every partial bisection, ordered by size and then by arrow list.
    pub fn enumerate_bisections(&self) -> Result<Vec<Bisection>, BooleanizationError> {
        if self.len() > ARROW_CAP {
            return Err(BooleanizationError::TooLarge {
                what: "groupoid arrows",
                size: self.len(),
                cap: ARROW_CAP,
            });
        }
        let mut out = Vec::new();
        self.extend(0, 0, 0, 0, &mut out)?;
        out.sort_by_key(|b| b.sort_key());
        Ok(out)
    }

    fn extend(
        &self,
        next: usize,
        mask: u64,
        src: u64,
        tgt: u64,
        out: &mut Vec<Bisection>,
    ) -> Result<(), BooleanizationError> {
        if next == self.len() {
            out.push(Bisection { mask });
            if out.len() > TABULATION_CAP {
                return Err(BooleanizationError::TooLarge {
                    what: "bisections",
                    size: out.len(),
                    cap: TABULATION_CAP,
                });
            }
            return Ok(());
        }
        self.extend(next + 1, mask, src, tgt, out)?;
        let (s, t) = (1u64 << self.source[next], 1u64 << self.target[next]);
        if src & s == 0 && tgt & t == 0 {
            self.extend(next + 1, mask | 1u64 << next, src | s, tgt | t, out)?;
        }
        Ok(())
    }

    pub fn label(&self, x: Bisection) -> String {
        let parts: Vec<&str> = x.iter().map(|i| self.carrier.label(self.arrows[i])).collect();
        format!("[{}]", parts.join("; "))
    }

    /// The inverse semigroup of the given bisections, which must be closed
    /// under products and inverses.
    pub(crate) fn tabulate(
        &self,
        name: String,
        bisections: &[Bisection],
    ) -> Result<CayleyTable, BooleanizationError> {
        let n = bisections.len();
        let index: HashMap<Bisection, usize> = bisections.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let find = |b: Bisection| {
            index
                .get(&b)
                .copied()
                .ok_or_else(|| BooleanizationError::NotClosed(self.label(b)))
        };
        let mut product = Vec::with_capacity(n * n);
        for &x in bisections {
            for &y in bisections {
                product.push(find(self.bisection_product(x, y))? as u32);
            }
        }
        let inverse = bisections
            .iter()
            .map(|&x| find(self.bisection_inverse(x)).map(Elem))
            .collect::<Result<Vec<_>, _>>()?;
        let zero = find(Bisection::EMPTY)?;
        let identity = index.get(&self.object_set()).copied().map(Elem);
        let labels = bisections.iter().map(|&b| self.label(b)).collect();
        Ok(CayleyTable::from_construction(name, labels, Elem(zero), identity, product, inverse))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BisectionOp {
    Join,
    Meet,
    /// `complement_within(x, y) = y ∖ x` for `x ⊆ y`.
    ComplementWithin,
    Subtract,
}

/// A set of arrows of a [`FilterGroupoid`], as a bit mask over arrow indices.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bisection {
    mask: u64,
}

impl Bisection {
    pub const EMPTY: Bisection = Bisection { mask: 0 };

    pub fn from_arrows(arrows: &[usize]) -> Self {
        Bisection {
            mask: arrows.iter().fold(0, |m, &i| m | 1u64 << i),
        }
    }

    pub fn singleton(arrow: usize) -> Self {
        Bisection { mask: 1u64 << arrow }
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, arrow: usize) -> bool {
        self.mask >> arrow & 1 == 1
    }

    pub fn is_subset(self, other: Bisection) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(self, other: Bisection) -> Bisection {
        Bisection { mask: self.mask | other.mask }
    }

    pub fn intersection(self, other: Bisection) -> Bisection {
        Bisection { mask: self.mask & other.mask }
    }

    pub fn difference(self, other: Bisection) -> Bisection {
        Bisection { mask: self.mask & !other.mask }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_ARROWS).filter(move |i| self.mask >> i & 1 == 1)
    }

    pub fn arrows(self) -> Vec<usize> {
        self.iter().collect()
    }

    fn sort_key(self) -> (u32, Vec<usize>) {
        (self.mask.count_ones(), self.arrows())
    }
}

impl fmt::Display for Bisection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.arrows())
    }
}

impl Serialize for Bisection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.arrows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bisection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let arrows = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = arrows.iter().find(|&&i| i >= MAX_ARROWS) {
            return Err(serde::de::Error::custom(format!("arrow index {bad} out of range")));
        }
        Ok(Bisection::from_arrows(&arrows))
    }
}
