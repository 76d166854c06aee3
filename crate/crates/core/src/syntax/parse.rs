use std::fmt;

use super::{Context, Hedge, Hole, Sequent, Tree, Type};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    One,
    Dia(Option<u32>),
    BoxD(Option<u32>),
    LParen,
    RParen,
    Backslash,
    Slash,
    Star,
    Open(Option<u32>),
    Close(Option<u32>),
    Arrow,
    Hole,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::One => f.write_str("`1`"),
            Tok::Dia(_) => f.write_str("`dia`"),
            Tok::BoxD(_) => f.write_str("`boxd`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Backslash => f.write_str("`\\`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Open(_) => f.write_str("`[`"),
            Tok::Close(_) => f.write_str("`]`"),
            Tok::Arrow => f.write_str("`=>`"),
            Tok::Hole => f.write_str("`_`"),
        }
    }
}

fn err<T>(pos: usize, msg: impl Into<String>) -> PResult<T> {
    Err(ParseError { pos, msg: msg.into() })
}

fn lex(text: &str) -> PResult<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;

    // `:<nat>` directly after a keyword or bracket
    let index_at = |i: usize| -> PResult<(Option<u32>, usize)> {
        if bytes.get(i) != Some(&b':') {
            return Ok((None, i));
        }
        let start = i + 1;
        let mut j = start;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        if j == start {
            return err(i, "expected an index after `:`");
        }
        let n: u32 = text[start..j]
            .parse()
            .map_err(|_| ParseError { pos: start, msg: "index out of range".into() })?;
        if n == 0 {
            return err(start, "indices are positive integers");
        }
        Ok((Some(n), j))
    };

    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'\\' => {
                i += 1;
                Tok::Backslash
            }
            b'/' => {
                i += 1;
                Tok::Slash
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'[' => {
                let (idx, j) = index_at(i + 1)?;
                i = j;
                Tok::Open(idx)
            }
            b']' => {
                let (idx, j) = index_at(i + 1)?;
                i = j;
                Tok::Close(idx)
            }
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Arrow
            }
            b'_' if !bytes
                .get(i + 1)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') =>
            {
                i += 1;
                Tok::Hole
            }
            b'0'..=b'9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if &text[i..j] != "1" {
                    return err(i, format!("unexpected number `{}`", &text[i..j]));
                }
                i = j;
                Tok::One
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &text[i..j];
                match word {
                    "dia" | "boxd" => {
                        let (idx, k) = index_at(j)?;
                        i = k;
                        if word == "dia" {
                            Tok::Dia(idx)
                        } else {
                            Tok::BoxD(idx)
                        }
                    }
                    _ => {
                        i = j;
                        Tok::Ident(word.to_string())
                    }
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return err(i, format!("unexpected character `{ch}`"));
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    allow_hole: bool,
    hole: Option<Hole>,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, allow_hole: bool) -> PResult<Parser<'a>> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
            allow_hole,
            hole: None,
            _src: text,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect_end(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => err(self.offset(), format!("unexpected {t}")),
        }
    }

    fn starts_type(tok: &Tok) -> bool {
        matches!(tok, Tok::Ident(_) | Tok::One | Tok::Dia(_) | Tok::BoxD(_) | Tok::LParen)
    }

    fn ty(&mut self) -> PResult<Type> {
        let left = self.unary()?;
        let op = match self.peek() {
            Some(Tok::Backslash) => Tok::Backslash,
            Some(Tok::Slash) => Tok::Slash,
            Some(Tok::Star) => Tok::Star,
            _ => return Ok(left),
        };
        self.bump();
        let right = self.unary()?;
        if matches!(self.peek(), Some(Tok::Backslash | Tok::Slash | Tok::Star)) {
            return err(self.offset(), "nested binary operators need parentheses");
        }
        Ok(match op {
            Tok::Backslash => Type::under(left, right),
            Tok::Slash => Type::over(left, right),
            _ => Type::prod(left, right),
        })
    }

    fn unary(&mut self) -> PResult<Type> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Ident(name)) => Ok(Type::Prim(name)),
            Some(Tok::One) => Ok(Type::Unit),
            Some(Tok::Dia(i)) => Ok(Type::dia(i, self.unary()?)),
            Some(Tok::BoxD(i)) => Ok(Type::boxd(i, self.unary()?)),
            Some(Tok::LParen) => {
                let t = self.ty()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(t),
                    _ => err(self.toks.get(self.pos - 1).map_or(self.end, |x| x.0), "expected `)`"),
                }
            }
            Some(t) => err(at, format!("expected a type, found {t}")),
            None => err(at, "expected a type, found end of input"),
        }
    }

    /// Trees until a closing bracket, `=>` or end of input.
    fn hedge(&mut self, path: &mut Vec<usize>) -> PResult<Hedge> {
        let mut trees = Vec::new();
        loop {
            match self.peek() {
                None | Some(Tok::Close(_)) | Some(Tok::Arrow) => return Ok(Hedge(trees)),
                Some(Tok::Hole) => {
                    let at = self.offset();
                    if !self.allow_hole {
                        return err(at, "hole `_` outside a context");
                    }
                    if self.hole.is_some() {
                        return err(at, "a context has exactly one hole");
                    }
                    self.bump();
                    self.hole = Some(Hole { path: path.clone(), index: trees.len() });
                }
                Some(Tok::Open(i)) => {
                    let i = *i;
                    let at = self.offset();
                    self.bump();
                    path.push(trees.len());
                    let inner = self.hedge(path)?;
                    path.pop();
                    match self.bump() {
                        Some(Tok::Close(j)) if j == i => {}
                        Some(Tok::Close(_)) => {
                            return err(at, "bracket indices do not match");
                        }
                        _ => return err(at, "unclosed bracket"),
                    }
                    trees.push(Tree::Bracket(i, inner));
                }
                Some(t) if Self::starts_type(t) => trees.push(Tree::Leaf(self.ty()?)),
                Some(t) => {
                    let msg = format!("unexpected {t}");
                    return err(self.offset(), msg);
                }
            }
        }
    }
}

fn check_uniform_indexing(pos: usize, indexed: &[bool]) -> PResult<()> {
    if indexed.iter().any(|b| *b) && indexed.iter().any(|b| !*b) {
        return err(pos, "indexed and non-indexed modalities are mixed");
    }
    Ok(())
}

fn type_index_flags(t: &Type, out: &mut Vec<bool>) {
    let mut set = std::collections::BTreeSet::new();
    t.collect_indices(&mut set);
    out.extend(set.into_iter().map(|i| i.is_some()));
}

fn hedge_index_flags(h: &Hedge, out: &mut Vec<bool>) {
    out.extend(h.indices().into_iter().map(|i| i.is_some()));
}

pub fn parse_type(text: &str) -> PResult<Type> {
    let mut p = Parser::new(text, false)?;
    let t = p.ty()?;
    p.expect_end()?;
    let mut flags = Vec::new();
    type_index_flags(&t, &mut flags);
    check_uniform_indexing(0, &flags)?;
    Ok(t)
}

pub fn parse_hedge(text: &str) -> PResult<Hedge> {
    let mut p = Parser::new(text, false)?;
    let h = p.hedge(&mut Vec::new())?;
    p.expect_end()?;
    let mut flags = Vec::new();
    hedge_index_flags(&h, &mut flags);
    check_uniform_indexing(0, &flags)?;
    Ok(h)
}

pub fn parse_context(text: &str) -> PResult<Context> {
    let mut p = Parser::new(text, true)?;
    let h = p.hedge(&mut Vec::new())?;
    p.expect_end()?;
    let mut flags = Vec::new();
    hedge_index_flags(&h, &mut flags);
    check_uniform_indexing(0, &flags)?;
    match p.hole {
        Some(hole) => Ok(Context { hedge: h, hole }),
        None => err(text.len(), "a context needs a hole `_`"),
    }
}

pub fn parse_sequent(text: &str) -> PResult<Sequent> {
    let mut p = Parser::new(text, false)?;
    let ant = p.hedge(&mut Vec::new())?;
    match p.bump() {
        Some(Tok::Arrow) => {}
        _ => return err(p.offset(), "expected `=>`"),
    }
    let succ = p.ty()?;
    p.expect_end()?;
    let mut flags = Vec::new();
    hedge_index_flags(&ant, &mut flags);
    type_index_flags(&succ, &mut flags);
    check_uniform_indexing(0, &flags)?;
    Ok(Sequent::new(ant, succ))
}
