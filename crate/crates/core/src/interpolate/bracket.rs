use crate::error::{Error, Result};
use crate::prover::{Proof, Rule};
use crate::syntax::{Calculus, Sequent, Span, Tree, Type};

use super::extract::{extract_at, rebase, shift};

/// Which of the two bracket-elimination shapes was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketVariant {
    /// `Δ => B` and `Γ[◊B] => A`
    Dia,
    /// `Δ => □↓B` and `Γ[B] => A`
    Box,
}

/// The result of eliminating one bracket pair `⟨Δ⟩` from `Γ[⟨Δ⟩] => A`.
#[derive(Clone, Debug)]
pub struct BracketStep {
    pub b: Type,
    pub variant: BracketVariant,
    pub index: Option<u32>,
    /// `Δ => B` or `Δ => □↓B`
    pub delta_proof: Proof,
    /// `Γ[◊B] => A` or `Γ[B] => A`
    pub context_proof: Proof,
}

impl BracketStep {
    /// The type that replaces the bracket in the context sequent.
    pub fn replacement(&self) -> Type {
        match self.variant {
            BracketVariant::Dia => Type::dia(self.index, self.b.clone()),
            BracketVariant::Box => self.b.clone(),
        }
    }

    /// The bridging sequent `⟨B⟩ => ◊B` or `⟨□↓B⟩ => B`.
    pub fn bridge(&self) -> Sequent {
        let i = self.index;
        match self.variant {
            BracketVariant::Dia => Sequent::new(
                crate::syntax::Hedge(vec![Tree::bracket(i, vec![Tree::Leaf(self.b.clone())])]),
                Type::dia(i, self.b.clone()),
            ),
            BracketVariant::Box => Sequent::new(
                crate::syntax::Hedge(vec![Tree::bracket(i, vec![Tree::Leaf(Type::boxd(i, self.b.clone()))])]),
                self.b.clone(),
            ),
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Where the active part of the last rule sits relative to the designated
/// bracket.
enum How {
    /// Inside the bracket: redo the rule on the `Δ` side at this position.
    Delta(Vec<usize>, usize),
    /// Outside: redo the rule on the context side at this position.
    Context(Vec<usize>, usize),
}

fn one(path: &[usize], at: usize) -> Span {
    Span::new(path.to_vec(), at, at + 1)
}

fn redo(p: &Proof, idx: usize, q: Proof, path: &[usize], at: usize) -> Result<Proof> {
    let pr = &p.principal;
    Ok(match p.rule {
        Rule::UnderR => Proof::under_r(q)?,
        Rule::OverR => Proof::over_r(q)?,
        Rule::BoxDownR => Proof::box_r(q)?,
        Rule::DiaR => match &p.conclusion.succedent {
            Type::Dia(i, _) => Proof::dia_r(q, *i),
            _ => return Err(bad("DiaR without a diamond")),
        },
        Rule::ProdR if idx == 0 => Proof::prod_r(q, p.premises[1].clone()),
        Rule::ProdR => Proof::prod_r(p.premises[0].clone(), q),
        Rule::UnderL if idx == 0 => Proof::under_l(q, p.premises[1].clone(), &one(&pr.path, pr.start))?,
        Rule::UnderL => Proof::under_l(p.premises[0].clone(), q, &one(path, at))?,
        Rule::OverL if idx == 0 => Proof::over_l(q, p.premises[1].clone(), &one(&pr.path, pr.start))?,
        Rule::OverL => Proof::over_l(p.premises[0].clone(), q, &one(path, at))?,
        Rule::ProdL => Proof::prod_l(q, &Span::new(path.to_vec(), at, at + 2))?,
        Rule::DiaL => Proof::dia_l(q, &one(path, at))?,
        Rule::UnitL => Proof::unit_l(q, path, at)?,
        Rule::BoxDownL => {
            let i = match &p.conclusion.antecedent.level(&pr.path).expect("principal")[pr.start] {
                Tree::Bracket(i, _) => *i,
                _ => return Err(bad("BoxDownL without a bracket")),
            };
            Proof::box_l(q, &one(path, at), i)?
        }
        Rule::Ax | Rule::UnitR => return Err(bad("no bracket in an initial sequent")),
    })
}

/// The premise holding the designated bracket, its position there, and
/// where the rule has to be redone.
fn locate(p: &Proof, at: &Span) -> Result<(usize, Span, How)> {
    let pr = &p.principal;
    let ctx = || How::Context(Vec::new(), 0);
    Ok(match p.rule {
        Rule::Ax | Rule::UnitR => return Err(bad("no bracket in an initial sequent")),
        Rule::UnderR => {
            let mut at2 = at.clone();
            match at2.path.first_mut() {
                Some(k) => *k += 1,
                None => {
                    at2.start += 1;
                    at2.end += 1;
                }
            }
            (0, at2, ctx())
        }
        Rule::OverR => (0, at.clone(), ctx()),
        Rule::BoxDownR => (0, at.under_bracket(0), ctx()),
        Rule::DiaR => (0, at.strip_prefix(0).ok_or_else(|| bad("bracket outside the antecedent"))?, ctx()),
        Rule::ProdR => {
            let k = pr.end;
            let first = at.path.first().copied().unwrap_or(at.start);
            if first < k {
                (0, at.clone(), ctx())
            } else {
                let mut at2 = at.clone();
                match at2.path.first_mut() {
                    Some(j) => *j -= k,
                    None => {
                        at2.start -= k;
                        at2.end -= k;
                    }
                }
                (1, at2, ctx())
            }
        }
        _ => {
            let (main, r) = match p.rule {
                Rule::UnderL | Rule::OverL => (1, 1),
                Rule::ProdL => (0, 2),
                Rule::UnitL => (0, 0),
                _ => (0, 1),
            };
            let (a, b) = (pr.start, pr.end);
            let mut inner = at.path.clone();
            inner.push(at.start);
            if pr.path.starts_with(&inner) {
                let rel = pr.path[inner.len()..].to_vec();
                return Ok((main, at.clone(), How::Delta(rel, a)));
            }
            let arg = match p.rule {
                Rule::UnderL => Some(a..b - 1),
                Rule::OverL => Some(a + 1..b),
                _ => None,
            };
            if let Some(range) = arg {
                let d = pr.path.len();
                let inside = at.path.len() >= d
                    && at.path[..d] == pr.path[..]
                    && range.contains(&at.path.get(d).copied().unwrap_or(at.start));
                if inside {
                    return Ok((0, rebase(at, &pr.path, range.start), ctx()));
                }
            }
            (main, shift(at, &pr.path, a, b, r), How::Context(pr.path.clone(), a))
        }
    })
}

fn step(p: &Proof, at: &Span, calc: Calculus) -> Result<BracketStep> {
    let ant = &p.conclusion.antecedent;
    let (index, inner_len) = match ant.level(&at.path).and_then(|l| l.get(at.start)) {
        Some(Tree::Bracket(i, inner)) if at.len() == 1 => (*i, inner.len()),
        _ => return Err(bad(format!("no bracket at {at:?} in `{ant}`"))),
    };
    if inner_len == 0 {
        return Err(bad("the designated bracket is empty"));
    }
    if p.rule == Rule::DiaR && at.path.is_empty() {
        let prem = &p.premises[0];
        let r = extract_at(prem, &Span::root(0, prem.conclusion.antecedent.len()), calc)?;
        let context_proof = Proof::dia_l(Proof::dia_r(r.right_proof, index), &Span::root(0, 1))?;
        return Ok(BracketStep {
            b: r.interpolant,
            variant: BracketVariant::Dia,
            index,
            delta_proof: r.left_proof,
            context_proof,
        });
    }
    if p.rule == Rule::BoxDownL && p.principal == *at {
        let r = extract_at(&p.premises[0], at, calc)?;
        let delta_proof = Proof::box_r(Proof::box_l(r.left_proof, &Span::root(0, 1), index)?)?;
        return Ok(BracketStep {
            b: r.interpolant,
            variant: BracketVariant::Box,
            index,
            delta_proof,
            context_proof: r.right_proof,
        });
    }
    let (idx, at2, how) = locate(p, at)?;
    let mut r = step(&p.premises[idx], &at2, calc)?;
    match how {
        How::Delta(path, a) => r.delta_proof = redo(p, idx, r.delta_proof, &path, a)?,
        How::Context(path, a) => r.context_proof = redo(p, idx, r.context_proof, &path, a)?,
    }
    Ok(r)
}

/// Eliminate the bracket at the one-tree span `at` of the conclusion of the
/// cut-free proof `p`, following the last rules of `p` until the bracket is
/// introduced, by `DiaR` (giving [`BracketVariant::Dia`]) or by `BoxDownL`
/// (giving [`BracketVariant::Box`]).
pub fn bracket_step(p: &Proof, at: &Span, calc: Calculus) -> Result<BracketStep> {
    step(p, at, calc)
}
