use super::check::infer_principal;
use super::{Proof, Rule};
use crate::error::{Error, Result};
use crate::syntax::parse_sequent;

fn malformed(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Precondition(format!("proof text line {line}: {msg}"))
}

/// Read the indented `RULE  sequent` format written by [`Proof::to_text`].
/// Principal positions are not part of the text and are recovered as the
/// first position at which the rule yields the listed premises.
pub fn parse_proof(text: &str) -> Result<Proof> {
    struct Node {
        depth: usize,
        line: usize,
        rule: Rule,
        conclusion: crate::syntax::Sequent,
        premises: Vec<Proof>,
    }

    fn finish(n: Node) -> Result<Proof> {
        let prem_concl: Vec<_> = n.premises.iter().map(|p| p.conclusion.clone()).collect();
        let principal = infer_principal(&n.conclusion, n.rule, &prem_concl).ok_or_else(|| {
            malformed(n.line, format!("{} does not derive `{}` from the given premises", n.rule, n.conclusion))
        })?;
        Ok(Proof::new(n.conclusion, n.rule, n.premises, principal))
    }

    let mut stack: Vec<Node> = Vec::new();
    let mut root = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let indent = raw.len() - raw.trim_start_matches(' ').len();
        if indent % 2 != 0 {
            return Err(malformed(line, "odd indentation"));
        }
        let depth = indent / 2;
        let body = raw.trim();
        let (rule, seq) = body.split_once(char::is_whitespace).ok_or_else(|| malformed(line, "expected `RULE  sequent`"))?;
        let rule: Rule = rule.parse().map_err(|e| malformed(line, e))?;
        let conclusion = parse_sequent(seq.trim())?;

        while stack.last().is_some_and(|n| n.depth >= depth) {
            let done = finish(stack.pop().expect("non-empty"))?;
            match stack.last_mut() {
                Some(parent) => parent.premises.push(done),
                None => return Err(malformed(line, "more than one root")),
            }
        }
        match stack.last() {
            Some(parent) if parent.depth + 1 != depth => return Err(malformed(line, "indentation skips a level")),
            None if depth != 0 || root.is_some() => return Err(malformed(line, "more than one root")),
            _ => {}
        }
        if stack.is_empty() {
            root = Some(());
        }
        stack.push(Node { depth, line, rule, conclusion, premises: Vec::new() });
    }
    let mut done = None;
    while let Some(n) = stack.pop() {
        let p = finish(n)?;
        match stack.last_mut() {
            Some(parent) => parent.premises.push(p),
            None => done = Some(p),
        }
    }
    done.ok_or_else(|| malformed(0, "empty proof"))
}
