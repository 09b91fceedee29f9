use std::cmp::Ordering;
use std::fmt;

use super::LangError;

/// A word over the alphabet `{0, …, n-1}`. Ordered shortlex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<u32>) -> Self {
        Word(symbols)
    }

    pub fn symbol(a: u32) -> Self {
        Word(vec![a])
    }

    /// Parses a digit string; `""`, `"e"` and `"ε"` denote the empty word.
    /// Symbols of ten or more are written in brackets, e.g. `"1[12]0"`.
    pub fn parse(s: &str, alphabet: usize) -> Result<Self, LangError> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        let mut chars = s.chars();
        while let Some(c) = chars.next() {
            let sym = if c == '[' {
                let digits: String = chars.by_ref().take_while(|&c| c != ']').collect();
                digits
                    .parse::<u32>()
                    .map_err(|_| LangError::Parse(format!("bad bracketed symbol in {s:?}")))?
            } else {
                c.to_digit(10)
                    .ok_or_else(|| LangError::Parse(format!("unexpected {c:?} in word {s:?}")))?
            };
            if sym as usize >= alphabet {
                return Err(LangError::BadSymbol { symbol: sym, alphabet });
            }
            out.push(sym);
        }
        Ok(Word(out))
    }

    /// Digit rendering; the empty word renders as `""`.
    pub fn render(&self) -> String {
        let mut s = String::with_capacity(self.0.len());
        for &a in &self.0 {
            if a < 10 {
                s.push(char::from_digit(a, 10).unwrap());
            } else {
                s.push_str(&format!("[{a}]"));
            }
        }
        s
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn fits(&self, alphabet: usize) -> bool {
        self.0.iter().all(|&a| (a as usize) < alphabet)
    }

    /// Prefix order `self ≤_p other`.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn strip_suffix(&self, suffix: &Word) -> Option<Word> {
        self.0.strip_suffix(suffix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn child(&self, a: u32) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// All prefixes, shortest first, including ε and `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(|k| self.prefix(k))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.render())
        }
    }
}

/// All words of length exactly `len`, in shortlex order.
pub fn words_of_length(alphabet: usize, len: usize) -> Vec<Word> {
    let mut level = vec![Word::empty()];
    for _ in 0..len {
        level = level
            .iter()
            .flat_map(|w| (0..alphabet as u32).map(move |a| w.child(a)))
            .collect();
    }
    level
}

/// All words of length at most `max_len`, in shortlex order.
pub fn words_up_to(alphabet: usize, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|k| words_of_length(alphabet, k)).collect()
}

pub fn is_prefix_code(words: &[Word]) -> bool {
    words.iter().enumerate().all(|(i, u)| {
        words
            .iter()
            .enumerate()
            .all(|(j, v)| i == j || !u.is_prefix_of(v))
    })
}

/// A finite prefix code, sorted shortlex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrefixCode(Vec<Word>);

impl PrefixCode {
    pub fn new(mut words: Vec<Word>) -> Result<Self, LangError> {
        words.sort();
        words.dedup();
        if !is_prefix_code(&words) {
            return Err(LangError::NotPrefixCode);
        }
        Ok(PrefixCode(words))
    }

    /// The prefix code generating the right ideal `words·A*`: drop every
    /// word with a proper prefix in the set.
    pub fn minimal_generators(words: &[Word]) -> Self {
        let mut sorted = words.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut out: Vec<Word> = Vec::new();
        for w in sorted {
            if !out.iter().any(|y| y.is_prefix_of(&w)) {
                out.push(w);
            }
        }
        out.sort();
        PrefixCode(out)
    }

    pub fn words(&self) -> &[Word] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether `w ∈ Y·A*`.
    pub fn generates(&self, w: &Word) -> bool {
        self.0.iter().any(|y| y.is_prefix_of(w))
    }

    /// The code word that is a prefix of `w`, if any.
    pub fn prefix_of(&self, w: &Word) -> Option<&Word> {
        self.0.iter().find(|y| y.is_prefix_of(w))
    }

    pub fn max_len(&self) -> Option<usize> {
        self.0.iter().map(Word::len).max()
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// Alphabet bounds are checked by the enclosing structure.
impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Word::parse(&s, usize::MAX).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for PrefixCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}
