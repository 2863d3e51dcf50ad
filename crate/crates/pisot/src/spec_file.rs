//! Substitution spec files: `{"alphabet": ["0", "1"], "rules": {"0": "01", "1": "0"}}`.
//!
//! Rule bodies are written like words: tokens run together when every symbol
//! is one character, comma-separated otherwise.

use std::fmt;
use std::path::Path;

use pisot_core::{Alphabet, Substitution, Word};
use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("malformed spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid spec: {0}")]
    Core(#[from] pisot_core::Error),
    #[error("rule given for unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("two rules for symbol {0:?}")]
    DuplicateRule(String),
    #[error("no rule for symbol {0:?}")]
    MissingRule(String),
    #[error("empty rule for symbol {0:?}")]
    EmptyRule(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Rules in file order, duplicates kept so they can be reported.
struct RuleList(Vec<(String, String)>);

impl<'de> Deserialize<'de> for RuleList {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RuleList;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping symbols to replacement words")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<RuleList, A::Error> {
                let mut out = Vec::new();
                while let Some(entry) = map.next_entry::<String, String>()? {
                    out.push(entry);
                }
                Ok(RuleList(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    alphabet: Vec<String>,
    rules: RuleList,
}

pub fn parse_spec(text: &str) -> Result<Substitution, SpecError> {
    let raw: RawSpec = serde_json::from_str(text)?;
    let alphabet = Alphabet::new(raw.alphabet)?;
    let mut rules: Vec<Option<Word>> = vec![None; alphabet.len()];
    for (sym, body) in raw.rules.0 {
        let a = alphabet.lex(&sym).ok_or_else(|| SpecError::UnknownSymbol(sym.clone()))?;
        if rules[a as usize].is_some() {
            return Err(SpecError::DuplicateRule(sym));
        }
        let w = Word::parse(&alphabet, &body)?;
        if w.is_empty() {
            return Err(SpecError::EmptyRule(sym));
        }
        rules[a as usize] = Some(w);
    }
    let rules = rules
        .into_iter()
        .zip(alphabet.symbols())
        .map(|(r, s)| r.ok_or_else(|| SpecError::MissingRule(s.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Substitution::new(&alphabet, rules)?)
}

/// Canonical one-line form; parsing it gives back an equal substitution and
/// writing that again gives the same bytes.
pub fn write_spec(sigma: &Substitution) -> String {
    let q = |s: &str| serde_json::to_string(s).expect("strings serialize");
    let a = sigma.alphabet();
    let symbols: Vec<String> = a.symbols().iter().map(|s| q(s)).collect();
    let rules: Vec<String> = a.letters().map(|l| format!("{}: {}", q(a.symbol(l)), q(&sigma.rule_word(l).to_string()))).collect();
    format!("{{\"alphabet\": [{}], \"rules\": {{{}}}}}", symbols.join(", "), rules.join(", "))
}

/// Reads a spec file, or one of the built-in names (`fibonacci`, `pell`,
/// `padovan`, `thue-morse`) when no such file exists.
pub fn load_spec(arg: &str) -> Result<Substitution, SpecError> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(s) = Substitution::named(arg) {
            return Ok(s);
        }
    }
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io { path: arg.to_string(), source })?;
    parse_spec(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIB: &str = r#"{"alphabet": ["0", "1"], "rules": {"0": "01", "1": "0"}}"#;

    #[test]
    fn canonical_round_trip() {
        let s = parse_spec(FIB).unwrap();
        assert_eq!(s, Substitution::fibonacci());
        assert_eq!(write_spec(&s), FIB);
        let multi = r#"{"alphabet": ["ab", "x\\y"], "rules": {"ab": "ab,x\\y", "x\\y": "ab"}}"#;
        let s = parse_spec(multi).unwrap();
        assert_eq!(write_spec(&s), multi);
    }

    #[test]
    fn rule_order_is_irrelevant() {
        let s = parse_spec(r#"{"rules": {"1": "0", "0": "01"}, "alphabet": ["0", "1"]}"#).unwrap();
        assert_eq!(write_spec(&s), FIB);
    }

    #[test]
    fn validation() {
        let err = |t: &str| parse_spec(t).unwrap_err().to_string();
        assert!(err(r#"{"alphabet": ["0", "1"], "rules": {"0": "01"}}"#).contains("no rule"));
        assert!(err(r#"{"alphabet": ["0", "1"], "rules": {"0": "01", "1": ""}}"#).contains("empty rule"));
        assert!(err(r#"{"alphabet": ["0", "1"], "rules": {"0": "01", "1": "0", "2": "1"}}"#).contains("unknown symbol"));
        assert!(err(r#"{"alphabet": ["0", "1"], "rules": {"0": "01", "1": "0", "1": "1"}}"#).contains("two rules"));
        assert!(err(r#"{"alphabet": ["0", "1"], "rules": {"0": "02", "1": "0"}}"#).contains("invalid"));
        assert!(err(r#"{"alphabet": ["0"], "rules": {"0": "0"}}"#).contains("invalid"));
        assert!(err("{").contains("malformed"));
    }
}
