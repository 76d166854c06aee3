use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A grammar symbol. Nonterminals are named by canonical type strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    N(String),
    T(String),
}

impl Symbol {
    pub fn n(name: impl Into<String>) -> Symbol {
        Symbol::N(name.into())
    }

    pub fn t(name: impl Into<String>) -> Symbol {
        Symbol::T(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Symbol::N(s) | Symbol::T(s) => s,
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Symbol::T(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::N(s) => write!(f, "\"{s}\""),
            Symbol::T(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Production {
    pub lhs: String,
    pub rhs: Vec<Symbol>,
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\" ->", self.lhs)?;
        if self.rhs.is_empty() {
            return f.write_str(" eps");
        }
        for s in &self.rhs {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

/// A context-free grammar with productions kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cfg {
    pub nonterminals: BTreeSet<String>,
    pub terminals: BTreeSet<String>,
    pub start: String,
    pub productions: Vec<Production>,
    seen: HashSet<Production>,
}

impl Cfg {
    pub fn new(start: impl Into<String>) -> Cfg {
        let start = start.into();
        let mut g = Cfg { start: start.clone(), ..Cfg::default() };
        g.nonterminals.insert(start);
        g
    }

    /// Add a production unless already present; returns whether it was new.
    pub fn add(&mut self, lhs: impl Into<String>, rhs: Vec<Symbol>) -> bool {
        let p = Production { lhs: lhs.into(), rhs };
        if self.seen.contains(&p) {
            return false;
        }
        self.nonterminals.insert(p.lhs.clone());
        for s in &p.rhs {
            match s {
                Symbol::N(n) => self.nonterminals.insert(n.clone()),
                Symbol::T(t) => self.terminals.insert(t.clone()),
            };
        }
        self.seen.insert(p.clone());
        self.productions.push(p);
        true
    }

    pub fn has_symbol(&self, s: &Symbol) -> bool {
        match s {
            Symbol::N(n) => self.nonterminals.contains(n),
            Symbol::T(t) => self.terminals.contains(t),
        }
    }

    /// Nonterminals deriving the empty string.
    pub fn nullable(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        loop {
            let before = out.len();
            for p in &self.productions {
                if !out.contains(&p.lhs)
                    && p.rhs.iter().all(|s| matches!(s, Symbol::N(n) if out.contains(n)))
                {
                    out.insert(p.lhs.clone());
                }
            }
            if out.len() == before {
                return out;
            }
        }
    }

    /// An equivalent grammar without empty productions, except that the
    /// empty string itself is lost.
    pub fn eps_eliminated(&self) -> Cfg {
        let null = self.nullable();
        let mut g = Cfg::new(self.start.clone());
        g.terminals = self.terminals.clone();
        g.nonterminals = self.nonterminals.clone();
        for p in &self.productions {
            for rhs in drop_nullable(&p.rhs, &null) {
                if !rhs.is_empty() && !(rhs.len() == 1 && rhs[0] == Symbol::N(p.lhs.clone())) {
                    g.add(p.lhs.clone(), rhs);
                }
            }
        }
        g
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("start: \"{}\"\n", self.start);
        for p in &self.productions {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }
}

/// Every way of keeping or dropping the nullable nonterminals of `rhs`.
pub(crate) fn drop_nullable(rhs: &[Symbol], null: &BTreeSet<String>) -> Vec<Vec<Symbol>> {
    let mut out: Vec<Vec<Symbol>> = vec![Vec::new()];
    for s in rhs {
        let optional = matches!(s, Symbol::N(n) if null.contains(n));
        let mut next = Vec::with_capacity(out.len() * 2);
        for v in out {
            if optional {
                next.push(v.clone());
            }
            let mut w = v;
            w.push(s.clone());
            next.push(w);
        }
        out = next;
    }
    out
}

impl fmt::Display for Cfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn syntax(line: usize, msg: impl fmt::Display) -> Error {
    Error::Precondition(format!("cfg line {line}: {msg}"))
}

/// Split a production line into quoted nonterminals and bare terminals.
fn symbols(line: usize, text: &str) -> Result<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let rest = &text[i + 1..];
            let close = rest.find('"').ok_or_else(|| syntax(line, "unterminated quote"))?;
            out.push(Symbol::N(rest[..close].to_string()));
            for _ in 0..=rest[..close].chars().count() {
                chars.next();
            }
        } else {
            let rest = &text[i..];
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            out.push(Symbol::T(rest[..end].to_string()));
            for _ in 0..rest[..end].chars().count() {
                chars.next();
            }
        }
    }
    Ok(out)
}

impl FromStr for Cfg {
    type Err = Error;

    fn from_str(text: &str) -> Result<Cfg> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (n, first) = lines.next().ok_or_else(|| syntax(1, "empty grammar"))?;
        let start = match first.trim().strip_prefix("start:").map(|r| symbols(n + 1, r)).transpose()? {
            Some(v) if v.len() == 1 && !v[0].is_terminal() => v[0].name().to_string(),
            _ => return Err(syntax(n + 1, "expected `start: \"<type>\"`")),
        };
        let mut g = Cfg::new(start);
        for (n, l) in lines {
            let (lhs, rhs) = l.split_once("->").ok_or_else(|| syntax(n + 1, "expected `->`"))?;
            let lhs = match symbols(n + 1, lhs)?.as_slice() {
                [Symbol::N(s)] => s.clone(),
                _ => return Err(syntax(n + 1, "left side must be one quoted nonterminal")),
            };
            let rhs = if rhs.trim() == "eps" { Vec::new() } else { symbols(n + 1, rhs)? };
            g.add(lhs, rhs);
        }
        Ok(g)
    }
}
