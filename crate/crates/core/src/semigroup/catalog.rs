//! Small inverse semigroups used throughout the tests and the CLI.

use std::collections::HashMap;

use super::{CayleyTable, SemigroupError, TableFile};

/// A partial injection on `{1..n}`: `graph[i]` is the image of `i + 1`.
type PartialInjection = Vec<Option<usize>>;

fn partial_injections(n: usize) -> Vec<PartialInjection> {
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            subsets(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    fn arrangements(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                arrangements(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut maps = Vec::new();
    for k in 0..=n {
        let mut doms = Vec::new();
        subsets(n, k, 0, &mut Vec::new(), &mut doms);
        let mut imgs = Vec::new();
        arrangements(n, k, &mut Vec::new(), &mut imgs);
        for dom in &doms {
            for img in &imgs {
                let mut g = vec![None; n];
                for (&x, &y) in dom.iter().zip(img) {
                    g[x] = Some(y);
                }
                maps.push(g);
            }
        }
    }
    maps
}

fn injection_label(g: &PartialInjection) -> String {
    let parts: Vec<String> = g
        .iter()
        .enumerate()
        .filter_map(|(x, y)| y.map(|y| format!("{}->{}", x + 1, y + 1)))
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// The symmetric inverse monoid `I_n` of all partial injections of an
/// `n`-element set. Products apply the right factor first.
pub fn symmetric_inverse_monoid(n: usize) -> Result<CayleyTable, SemigroupError> {
    if n == 0 {
        return Err(SemigroupError::Malformed("I_n needs n ≥ 1".into()));
    }
    let maps = partial_injections(n);
    let index: HashMap<&PartialInjection, usize> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let table = maps
        .iter()
        .map(|s| {
            maps.iter()
                .map(|t| {
                    let st: PartialInjection = t.iter().map(|x| x.and_then(|x| s[x])).collect();
                    index[&st]
                })
                .collect()
        })
        .collect();
    let identity: PartialInjection = (0..n).map(Some).collect();
    CayleyTable::from_file(&TableFile {
        name: format!("I{n}"),
        elements: maps.iter().map(injection_label).collect(),
        zero: 0,
        identity: Some(index[&identity]),
        table,
    })
}

/// Meet-semilattice table from an explicit meet function.
fn semilattice(name: &str, labels: &[&str], identity: Option<usize>, meet: impl Fn(usize, usize) -> usize) -> TableFile {
    let n = labels.len();
    TableFile {
        name: name.into(),
        elements: labels.iter().map(|s| s.to_string()).collect(),
        zero: 0,
        identity,
        table: (0..n).map(|a| (0..n).map(|b| meet(a, b)).collect()).collect(),
    }
}

/// The chain `0 < e < 1`.
pub fn chain3() -> CayleyTable {
    let file = semilattice("chain3", &["0", "e", "1"], Some(2), |a, b| a.min(b));
    CayleyTable::from_file(&file).expect("chain is a semilattice")
}

/// The semilattice `{0, e, f}` with `ef = 0` and no identity.
pub fn antichain3() -> CayleyTable {
    let file = semilattice("antichain3", &["0", "e", "f"], None, |a, b| if a == b { a } else { 0 });
    CayleyTable::from_file(&file).expect("antichain is a semilattice")
}

/// The two-element Boolean algebra `{0, 1}`.
pub fn boolean_algebra2() -> CayleyTable {
    let file = semilattice("bool2", &["0", "1"], Some(1), |a, b| a.min(b));
    CayleyTable::from_file(&file).expect("semilattice")
}

/// The four-element Boolean algebra `{0, x, y, 1}`.
pub fn boolean_algebra4() -> CayleyTable {
    // bit encoding: 0 = 00, x = 01, y = 10, 1 = 11
    let file = semilattice("bool4", &["0", "x", "y", "1"], Some(3), |a, b| a & b);
    CayleyTable::from_file(&file).expect("semilattice")
}

/// Raw table of the left-zero band `{a, b}` with a zero adjoined. Not an
/// inverse semigroup: its idempotents do not commute.
pub fn left_zero_band_file() -> TableFile {
    TableFile {
        name: "left-zero band".into(),
        elements: vec!["0".into(), "a".into(), "b".into()],
        zero: 0,
        identity: None,
        table: vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 2, 2]],
    }
}

/// Raw table of the null semigroup `{0, a}` with `a·a = 0`. Not an inverse
/// semigroup: `a` has no inverse.
pub fn null_semigroup_file() -> TableFile {
    TableFile {
        name: "null".into(),
        elements: vec!["0".into(), "a".into()],
        zero: 0,
        identity: None,
        table: vec![vec![0, 0], vec![0, 0]],
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["I1", "I2", "I3", "chain3", "antichain3", "bool2", "bool4"];

pub fn builtin(name: &str) -> Option<CayleyTable> {
    match name {
        "I1" => symmetric_inverse_monoid(1).ok(),
        "I2" => symmetric_inverse_monoid(2).ok(),
        "I3" => symmetric_inverse_monoid(3).ok(),
        "chain3" => Some(chain3()),
        "antichain3" => Some(antichain3()),
        "bool2" => Some(boolean_algebra2()),
        "bool4" => Some(boolean_algebra4()),
        _ => None,
    }
}
