//! Words, prefix codes and languages of the form `X + YA*` over a finite
//! alphabet, with their normal forms and Boolean operations.

mod definite;
mod word;

pub use definite::{
    combine, decide_unbounded, is_essential, lang_equal, DefiniteLang, Essential, LangFile, LangOp,
};
pub use word::{is_prefix_code, words_of_length, words_up_to, PrefixCode, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error("alphabet must have at least one symbol")]
    EmptyAlphabet,
    #[error("symbol {symbol} is outside an alphabet of size {alphabet}")]
    BadSymbol { symbol: u32, alphabet: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("words are not pairwise prefix-incomparable")]
    NotPrefixCode,
    #[error("alphabet sizes differ: {0} and {1}")]
    AlphabetMismatch(usize, usize),
    #[error("{0}")]
    Arity(&'static str),
}

/// Parses a comma-separated word list; an empty string is the empty list.
pub fn parse_word_list(s: &str, alphabet: usize) -> Result<Vec<Word>, LangError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|w| Word::parse(w, alphabet)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 10).unwrap()
    }

    fn ws(items: &[&str]) -> Vec<Word> {
        items.iter().map(|s| w(s)).collect()
    }

    fn worked_lang() -> (Vec<Word>, Vec<Word>) {
        (ws(&["0", "201", "212"]), ws(&["00", "20", "01", "02"]))
    }

    #[test]
    fn shortlex_order() {
        let mut v = ws(&["10", "2", "", "01", "1"]);
        v.sort();
        assert_eq!(v, ws(&["", "1", "2", "01", "10"]));
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(Word::parse("e", 2).unwrap(), Word::empty());
        assert_eq!(Word::parse("", 2).unwrap().render(), "");
        assert_eq!(Word::parse("1[11]0", 12).unwrap().symbols(), &[1, 11, 0]);
        assert_eq!(Word::new(vec![1, 11, 0]).render(), "1[11]0");
        assert!(matches!(Word::parse("2", 2), Err(LangError::BadSymbol { symbol: 2, .. })));
        assert!(Word::parse("x", 2).is_err());
    }

    #[test]
    fn prefix_codes() {
        assert!(is_prefix_code(&ws(&["0", "20"])));
        assert!(!is_prefix_code(&ws(&["0", "01"])));
        assert!(is_prefix_code(&[]));
        assert_eq!(PrefixCode::new(ws(&["0", "01"])), Err(LangError::NotPrefixCode));
    }

    #[test]
    fn unboundedness_in_worked_example() {
        let (x, y) = worked_lang();
        assert!(decide_unbounded(3, &x, &y, &w("0")));
        assert!(decide_unbounded(3, &x, &y, &w("20")));
        assert!(!decide_unbounded(3, &x, &y, &w("212")));
        assert!(!decide_unbounded(3, &x, &y, &w("2")));
        assert!(decide_unbounded(2, &[], &ws(&[""]), &w("0110")));
    }

    #[test]
    fn worked_example_normal_form() {
        let (x, y) = worked_lang();
        let l = DefiniteLang::normalize(3, &x, &y).unwrap();
        assert_eq!(l.bounded(), ws(&["212"]).as_slice());
        assert_eq!(l.code().words(), ws(&["0", "20"]).as_slice());
        assert_eq!(DefiniteLang::normalize(3, l.bounded(), l.code().words()).unwrap(), l);
        assert_eq!(l.to_string(), "212 + (0 + 20)A*");
    }

    #[test]
    fn epsilon_promoted() {
        let l = DefiniteLang::normalize(2, &ws(&[""]), &ws(&["0", "1"])).unwrap();
        assert!(l.bounded().is_empty());
        assert_eq!(l.code().words(), ws(&[""]).as_slice());
        assert_eq!(l, DefiniteLang::full(2));
    }

    #[test]
    fn membership() {
        let (x, y) = worked_lang();
        let l = DefiniteLang::normalize(3, &x, &y).unwrap();
        assert!(l.member(&w("20012")));
        assert!(l.member(&w("212")));
        assert!(!l.member(&w("1")));
        assert!(!l.member(&w("21")));
    }

    #[test]
    fn combine_examples() {
        assert!(DefiniteLang::full(2).complement().is_empty());
        let eps = DefiniteLang::finite(2, &ws(&[""])).unwrap();
        let c = eps.complement();
        assert!(c.bounded().is_empty());
        assert_eq!(c.code().words(), ws(&["0", "1"]).as_slice());

        let (x, y) = worked_lang();
        let whole = DefiniteLang::normalize(3, &x, &y).unwrap();
        let a = DefiniteLang::finite(3, &ws(&["212"])).unwrap();
        let b = DefiniteLang::right_ideal(3, &ws(&["0", "20"])).unwrap();
        assert_eq!(a.union(&b).unwrap(), whole);
        assert_eq!(
            combine(LangOp::Union, &a, None),
            Err(LangError::Arity("binary operation needs two languages"))
        );
        assert_eq!(
            a.union(&DefiniteLang::full(2)),
            Err(LangError::AlphabetMismatch(3, 2))
        );
    }

    #[test]
    fn essential_codes() {
        let all = PrefixCode::new(ws(&["0", "1"])).unwrap();
        assert_eq!(
            is_essential(&all, 2),
            Essential {
                essential: true,
                complement: Some(ws(&[""]))
            }
        );
        assert!(!is_essential(&PrefixCode::new(ws(&["0"])).unwrap(), 2).essential);
        let maximal = PrefixCode::new(ws(&["0", "10", "11"])).unwrap();
        assert_eq!(is_essential(&maximal, 2).complement, Some(ws(&["", "1"])));
        assert!(!is_essential(&PrefixCode::default(), 2).essential);
    }

    #[test]
    fn equality_by_normal_form() {
        let (x, y) = worked_lang();
        let raw = DefiniteLang::normalize(3, &x, &y).unwrap();
        let normal = DefiniteLang::normalize(3, &ws(&["212"]), &ws(&["0", "20"])).unwrap();
        assert!(lang_equal(&raw, &normal));
        let eps = DefiniteLang::finite(2, &ws(&[""])).unwrap();
        assert!(!lang_equal(&eps, &DefiniteLang::full(2)));
    }

    #[test]
    fn json_round_trip() {
        let (x, y) = worked_lang();
        let l = DefiniteLang::normalize(3, &x, &y).unwrap();
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"alphabet":3,"bounded":["212"],"code":["0","20"]}"#);
        assert_eq!(serde_json::from_str::<DefiniteLang>(&json).unwrap(), l);
        let raw = r#"{"alphabet":3,"bounded":["0","201","212"],"code":["00","20","01","02"]}"#;
        assert_eq!(serde_json::from_str::<DefiniteLang>(raw).unwrap(), l);
    }

    #[test]
    fn word_lists() {
        assert_eq!(parse_word_list("0,201,212", 3).unwrap(), ws(&["0", "201", "212"]));
        assert_eq!(parse_word_list("", 3).unwrap(), vec![]);
        assert_eq!(parse_word_list("e,1", 2).unwrap(), ws(&["", "1"]));
    }
}
