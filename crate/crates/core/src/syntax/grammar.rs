use std::collections::BTreeSet;
use std::fmt;

use super::{parse_type, ParseError, Type};

/// A categorial grammar `(Σ, I, D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    pub alphabet: BTreeSet<String>,
    pub lexicon: Vec<(String, Type)>,
    pub distinguished: Type,
}

impl Grammar {
    pub fn new(lexicon: Vec<(String, Type)>, distinguished: Type) -> Grammar {
        let alphabet = lexicon.iter().map(|(a, _)| a.clone()).collect();
        Grammar { alphabet, lexicon, distinguished }
    }

    /// The primitive types used anywhere in the grammar.
    pub fn primitives(&self) -> BTreeSet<String> {
        let mut out = self.distinguished.primitives();
        for (_, t) in &self.lexicon {
            t.collect_primitives(&mut out);
        }
        out
    }

    /// `max ||A||` over lexicon types and the distinguished type.
    pub fn max_length(&self) -> usize {
        self.lexicon
            .iter()
            .map(|(_, t)| t.length())
            .chain([self.distinguished.length()])
            .max()
            .unwrap_or(0)
    }

    pub fn types_of<'a>(&'a self, terminal: &'a str) -> impl Iterator<Item = &'a Type> + 'a {
        self.lexicon
            .iter()
            .filter(move |(a, _)| a == terminal)
            .map(|(_, t)| t)
    }
}

/// Parse the line-oriented grammar format:
///
/// ```text
/// # comment
/// lexicon a : s / q
/// lexicon b : q
/// target : s
/// ```
pub fn parse_grammar(text: &str) -> Result<Grammar, ParseError> {
    let mut lexicon = Vec::new();
    let mut target = None;
    let mut offset = 0;
    for line in text.split('\n') {
        let line_start = offset;
        offset += line.len() + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, ty) = body.split_once(':').ok_or(ParseError {
            pos: line_start,
            msg: "expected `lexicon <terminal> : <type>` or `target : <type>`".into(),
        })?;
        let ty = parse_type(ty.trim()).map_err(|e| ParseError {
            pos: line_start + e.pos,
            msg: e.msg,
        })?;
        let words: Vec<&str> = head.split_whitespace().collect();
        match words.as_slice() {
            ["lexicon", terminal] => lexicon.push((terminal.to_string(), ty)),
            ["target"] => {
                if target.replace(ty).is_some() {
                    return Err(ParseError { pos: line_start, msg: "duplicate target".into() });
                }
            }
            _ => {
                return Err(ParseError {
                    pos: line_start,
                    msg: format!("unrecognised line `{body}`"),
                })
            }
        }
    }
    let distinguished = target.ok_or(ParseError { pos: text.len(), msg: "missing target".into() })?;
    for t in lexicon.iter().map(|(_, t)| t).chain([&distinguished]) {
        let mut idx = BTreeSet::new();
        t.collect_indices(&mut idx);
        if idx.iter().any(Option::is_some) || t.has_unit() {
            return Err(ParseError {
                pos: 0,
                msg: format!("grammar types must be plain (no indices, no unit): `{t}`"),
            });
        }
    }
    Ok(Grammar::new(lexicon, distinguished))
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, t) in &self.lexicon {
            writeln!(f, "lexicon {a} : {t}")?;
        }
        writeln!(f, "target : {}", self.distinguished)
    }
}
