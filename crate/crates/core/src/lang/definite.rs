use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::word::{words_of_length, words_up_to, PrefixCode, Word};
use super::LangError;

/// `wA* ⊆ X + YA*`.
///
/// Past the longest bounded word only `YA*` can contribute, so the
/// recursion over one-symbol extensions stops there.
pub fn decide_unbounded(alphabet: usize, bounded: &[Word], code: &[Word], w: &Word) -> bool {
    if code.iter().any(|y| y.is_prefix_of(w)) {
        return true;
    }
    let max_x = bounded.iter().map(Word::len).max();
    if max_x.is_none_or(|m| w.len() > m) {
        return false;
    }
    bounded.contains(w) && (0..alphabet as u32).all(|a| decide_unbounded(alphabet, bounded, code, &w.child(a)))
}

/// A language `X + YA*` in normal form: `Y` is the minimal prefix code of
/// the unbounded words and `X` holds exactly the bounded ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DefiniteLang {
    alphabet: usize,
    bounded: Vec<Word>,
    code: PrefixCode,
}

impl DefiniteLang {
    /// Normal form of `raw_x + raw_y·A*`.
    pub fn normalize(alphabet: usize, raw_x: &[Word], raw_y: &[Word]) -> Result<Self, LangError> {
        if alphabet == 0 {
            return Err(LangError::EmptyAlphabet);
        }
        for w in raw_x.iter().chain(raw_y) {
            if let Some(&a) = w.symbols().iter().find(|&&a| a as usize >= alphabet) {
                return Err(LangError::BadSymbol { symbol: a, alphabet });
            }
        }
        let y = PrefixCode::minimal_generators(raw_y);
        let x: Vec<Word> = raw_x
            .iter()
            .filter(|w| !y.generates(w))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();

        // Minimal unbounded words lie in X ∪ Y, so only their prefixes are
        // explored.
        let mut code = Vec::new();
        let mut stack = vec![Word::empty()];
        while let Some(w) = stack.pop() {
            if decide_unbounded(alphabet, &x, y.words(), &w) {
                code.push(w);
                continue;
            }
            for a in 0..alphabet as u32 {
                let c = w.child(a);
                if x.iter().chain(y.words()).any(|v| c.is_prefix_of(v)) {
                    stack.push(c);
                }
            }
        }
        let code = PrefixCode::minimal_generators(&code);
        let bounded = x.into_iter().filter(|w| !code.generates(w)).collect();
        Ok(DefiniteLang { alphabet, bounded, code })
    }

    pub fn empty(alphabet: usize) -> Self {
        DefiniteLang {
            alphabet,
            bounded: Vec::new(),
            code: PrefixCode::default(),
        }
    }

    /// `A*`.
    pub fn full(alphabet: usize) -> Self {
        DefiniteLang {
            alphabet,
            bounded: Vec::new(),
            code: PrefixCode::minimal_generators(&[Word::empty()]),
        }
    }

    pub fn finite(alphabet: usize, words: &[Word]) -> Result<Self, LangError> {
        Self::normalize(alphabet, words, &[])
    }

    pub fn right_ideal(alphabet: usize, generators: &[Word]) -> Result<Self, LangError> {
        Self::normalize(alphabet, &[], generators)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn bounded(&self) -> &[Word] {
        &self.bounded
    }

    pub fn code(&self) -> &PrefixCode {
        &self.code
    }

    pub fn is_empty(&self) -> bool {
        self.bounded.is_empty() && self.code.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.code.is_empty()
    }

    pub fn member(&self, w: &Word) -> bool {
        self.code.generates(w) || self.bounded.binary_search(w).is_ok()
    }

    pub fn is_unbounded(&self, w: &Word) -> bool {
        self.code.generates(w)
    }

    /// Longest word of the representation, or 0 for the empty language.
    pub fn max_len(&self) -> usize {
        self.bounded
            .iter()
            .chain(self.code.words())
            .map(Word::len)
            .max()
            .unwrap_or(0)
    }

    pub fn union(&self, other: &Self) -> Result<Self, LangError> {
        combine(LangOp::Union, self, Some(other))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LangError> {
        combine(LangOp::Intersect, self, Some(other))
    }

    pub fn difference(&self, other: &Self) -> Result<Self, LangError> {
        combine(LangOp::Difference, self, Some(other))
    }

    pub fn complement(&self) -> Self {
        combine(LangOp::Complement, self, None).expect("unary complement")
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, LangError> {
        Ok(self.difference(other)?.is_empty())
    }

    pub fn to_file(&self) -> LangFile {
        LangFile {
            alphabet: self.alphabet,
            bounded: self.bounded.iter().map(Word::render).collect(),
            code: self.code.words().iter().map(Word::render).collect(),
        }
    }
}

impl fmt::Display for DefiniteLang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.bounded.iter().map(Word::to_string).collect();
        if !self.code.is_empty() {
            let code: Vec<String> = self.code.words().iter().map(Word::to_string).collect();
            parts.push(format!("({})A*", code.join(" + ")));
        }
        if parts.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LangOp {
    Union,
    Intersect,
    Difference,
    Complement,
}

impl FromStr for LangOp {
    type Err = LangError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "union" => Ok(LangOp::Union),
            "intersect" => Ok(LangOp::Intersect),
            "difference" => Ok(LangOp::Difference),
            "complement" => Ok(LangOp::Complement),
            _ => Err(LangError::Parse(format!("unknown operation {s:?}"))),
        }
    }
}

/// Boolean operations through the depth-`k` form
/// `L = (L ∩ A^{<k}) ∪ (L ∩ A^k)A*`, with `k` past every stored word, so a
/// word of length `k` belongs to `L` exactly when its whole cone does.
pub fn combine(op: LangOp, l1: &DefiniteLang, l2: Option<&DefiniteLang>) -> Result<DefiniteLang, LangError> {
    let n = l1.alphabet;
    let l2 = match (op, l2) {
        (LangOp::Complement, None) => None,
        (LangOp::Complement, Some(_)) => return Err(LangError::Arity("complement takes one language")),
        (_, None) => return Err(LangError::Arity("binary operation needs two languages")),
        (_, Some(l2)) if l2.alphabet != n => return Err(LangError::AlphabetMismatch(n, l2.alphabet)),
        (_, Some(l2)) => Some(l2),
    };
    let k = 1 + l1.max_len().max(l2.map_or(0, DefiniteLang::max_len));
    let keep = |w: &Word| {
        let a = l1.member(w);
        match (op, l2) {
            (LangOp::Union, Some(l2)) => a || l2.member(w),
            (LangOp::Intersect, Some(l2)) => a && l2.member(w),
            (LangOp::Difference, Some(l2)) => a && !l2.member(w),
            _ => !a,
        }
    };
    let short: Vec<Word> = words_up_to(n, k - 1).into_iter().filter(|w| keep(w)).collect();
    let cones: Vec<Word> = words_of_length(n, k).into_iter().filter(|w| keep(w)).collect();
    DefiniteLang::normalize(n, &short, &cones)
}

/// Outcome of [`is_essential`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Essential {
    pub essential: bool,
    /// `A* ∖ YA*`, present when finite.
    pub complement: Option<Vec<Word>>,
}

/// Whether `YA*` has finite complement. With `m` the longest code word, this
/// holds iff every word of length `m` lies in `YA*`; the complement then
/// consists of shorter words.
pub fn is_essential(code: &PrefixCode, alphabet: usize) -> Essential {
    let Some(m) = code.max_len() else {
        return Essential {
            essential: false,
            complement: None,
        };
    };
    if !words_of_length(alphabet, m).iter().all(|w| code.generates(w)) {
        return Essential {
            essential: false,
            complement: None,
        };
    }
    let complement = words_up_to(alphabet, m)
        .into_iter()
        .filter(|w| !code.generates(w))
        .collect();
    Essential {
        essential: true,
        complement: Some(complement),
    }
}

pub fn lang_equal(l1: &DefiniteLang, l2: &DefiniteLang) -> bool {
    l1 == l2
}

/// On-disk form of a language; may be non-normal when read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LangFile {
    pub alphabet: usize,
    #[serde(default)]
    pub bounded: Vec<String>,
    #[serde(default)]
    pub code: Vec<String>,
}

impl LangFile {
    pub fn parse(&self) -> Result<DefiniteLang, LangError> {
        let parse_all = |ws: &[String]| {
            ws.iter()
                .map(|s| Word::parse(s, self.alphabet))
                .collect::<Result<Vec<_>, _>>()
        };
        DefiniteLang::normalize(self.alphabet, &parse_all(&self.bounded)?, &parse_all(&self.code)?)
    }
}

impl Serialize for DefiniteLang {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DefiniteLang {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        LangFile::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
