use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::syntax::{Hedge, Sequent, Span, Tree, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Ax,
    UnderL,
    UnderR,
    OverL,
    OverR,
    ProdL,
    ProdR,
    DiaL,
    DiaR,
    BoxDownL,
    BoxDownR,
    UnitL,
    UnitR,
}

impl Rule {
    pub const ALL: [Rule; 13] = [
        Rule::Ax,
        Rule::UnderL,
        Rule::UnderR,
        Rule::OverL,
        Rule::OverR,
        Rule::ProdL,
        Rule::ProdR,
        Rule::DiaL,
        Rule::DiaR,
        Rule::BoxDownL,
        Rule::BoxDownR,
        Rule::UnitL,
        Rule::UnitR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Ax => "Ax",
            Rule::UnderL => "UnderL",
            Rule::UnderR => "UnderR",
            Rule::OverL => "OverL",
            Rule::OverR => "OverR",
            Rule::ProdL => "ProdL",
            Rule::ProdR => "ProdR",
            Rule::DiaL => "DiaL",
            Rule::DiaR => "DiaR",
            Rule::BoxDownL => "BoxDownL",
            Rule::BoxDownR => "BoxDownR",
            Rule::UnitL => "UnitL",
            Rule::UnitR => "UnitR",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Rule::Ax | Rule::UnitR => 0,
            Rule::UnderL | Rule::OverL | Rule::ProdR => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// A cut-free derivation.
///
/// `principal` locates the rule instance in the conclusion's antecedent:
///
/// * `UnderL`: the span `Γ A\B` (the functor is its last tree);
/// * `OverL`: the span `B/A Γ` (the functor is its first tree);
/// * `ProdL`, `DiaL`, `UnitL`: the one-tree span of the decomposed leaf;
/// * `BoxDownL`: the one-tree span of the bracket `⟨□↓A⟩`;
/// * `ProdR`: `0..k` at the root, `k` being the split point;
/// * everything else: the whole root level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proof {
    pub conclusion: Sequent,
    pub rule: Rule,
    pub premises: Vec<Proof>,
    pub principal: Span,
}

fn whole(h: &Hedge) -> Span {
    Span::root(0, h.len())
}

fn leaf_at(h: &Hedge, span: &Span) -> Option<Type> {
    if span.len() != 1 {
        return None;
    }
    h.level(&span.path)?.get(span.start)?.as_leaf().cloned()
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

impl Proof {
    pub fn new(conclusion: Sequent, rule: Rule, premises: Vec<Proof>, principal: Span) -> Proof {
        Proof { conclusion, rule, premises, principal }
    }

    /// `p => p`
    pub fn ax(p: Type) -> Proof {
        let s = Sequent::flat([p.clone()], p);
        let span = whole(&s.antecedent);
        Proof::new(s, Rule::Ax, Vec::new(), span)
    }

    /// `=> 1`
    pub fn unit_r() -> Proof {
        Proof::new(Sequent::new(Hedge::empty(), Type::Unit), Rule::UnitR, Vec::new(), Span::root(0, 0))
    }

    /// From `A Π => B` infer `Π => A \ B`.
    pub fn under_r(prem: Proof) -> Result<Proof> {
        let ant = &prem.conclusion.antecedent;
        let a = ant.trees().first().and_then(Tree::as_leaf).cloned().ok_or_else(|| bad("UnderR: premise must start with a leaf"))?;
        let rest = Hedge(ant.trees()[1..].to_vec());
        let s = Sequent::new(rest, Type::under(a, prem.conclusion.succedent.clone()));
        let span = whole(&s.antecedent);
        Ok(Proof::new(s, Rule::UnderR, vec![prem], span))
    }

    /// From `Π A => B` infer `Π => B / A`.
    pub fn over_r(prem: Proof) -> Result<Proof> {
        let ant = &prem.conclusion.antecedent;
        let a = ant.trees().last().and_then(Tree::as_leaf).cloned().ok_or_else(|| bad("OverR: premise must end with a leaf"))?;
        let rest = Hedge(ant.trees()[..ant.len() - 1].to_vec());
        let s = Sequent::new(rest, Type::over(prem.conclusion.succedent.clone(), a));
        let span = whole(&s.antecedent);
        Ok(Proof::new(s, Rule::OverR, vec![prem], span))
    }

    /// From `Γ => A` and `Δ => B` infer `Γ Δ => A * B`.
    pub fn prod_r(left: Proof, right: Proof) -> Proof {
        let k = left.conclusion.antecedent.len();
        let mut trees = left.conclusion.antecedent.0.clone();
        trees.extend(right.conclusion.antecedent.0.iter().cloned());
        let s = Sequent::new(
            Hedge(trees),
            Type::prod(left.conclusion.succedent.clone(), right.conclusion.succedent.clone()),
        );
        Proof::new(s, Rule::ProdR, vec![left, right], Span::root(0, k))
    }

    /// From `Γ => A` infer `⟨Γ⟩ => ◊A`.
    pub fn dia_r(prem: Proof, index: Option<u32>) -> Proof {
        let s = Sequent::new(
            Hedge(vec![Tree::Bracket(index, prem.conclusion.antecedent.clone())]),
            Type::dia(index, prem.conclusion.succedent.clone()),
        );
        Proof::new(s, Rule::DiaR, vec![prem], Span::root(0, 1))
    }

    /// From `⟨Γ⟩ => A` infer `Γ => □↓A`.
    pub fn box_r(prem: Proof) -> Result<Proof> {
        let (i, inner) = match prem.conclusion.antecedent.trees() {
            [Tree::Bracket(i, inner)] => (*i, inner.clone()),
            _ => return Err(bad("BoxDownR: premise antecedent must be one bracket")),
        };
        let s = Sequent::new(inner, Type::boxd(i, prem.conclusion.succedent.clone()));
        let span = whole(&s.antecedent);
        Ok(Proof::new(s, Rule::BoxDownR, vec![prem], span))
    }

    /// From `Γ => A` and `Δ[B] => C` infer `Δ[Γ A\B] => C`; `b_at` is the
    /// one-tree span of `B` in the second premise.
    pub fn under_l(arg: Proof, main: Proof, b_at: &Span) -> Result<Proof> {
        let b = leaf_at(&main.conclusion.antecedent, b_at).ok_or_else(|| bad("UnderL: no leaf at the given span"))?;
        let functor = Type::under(arg.conclusion.succedent.clone(), b);
        let mut trees = arg.conclusion.antecedent.0.clone();
        trees.push(Tree::Leaf(functor));
        let n = trees.len();
        let ant = main.conclusion.antecedent.replace(b_at, trees);
        let s = Sequent::new(ant, main.conclusion.succedent.clone());
        let span = Span::new(b_at.path.clone(), b_at.start, b_at.start + n);
        Ok(Proof::new(s, Rule::UnderL, vec![arg, main], span))
    }

    /// From `Γ => A` and `Δ[B] => C` infer `Δ[B/A Γ] => C`.
    pub fn over_l(arg: Proof, main: Proof, b_at: &Span) -> Result<Proof> {
        let b = leaf_at(&main.conclusion.antecedent, b_at).ok_or_else(|| bad("OverL: no leaf at the given span"))?;
        let functor = Type::over(b, arg.conclusion.succedent.clone());
        let mut trees = vec![Tree::Leaf(functor)];
        trees.extend(arg.conclusion.antecedent.0.iter().cloned());
        let n = trees.len();
        let ant = main.conclusion.antecedent.replace(b_at, trees);
        let s = Sequent::new(ant, main.conclusion.succedent.clone());
        let span = Span::new(b_at.path.clone(), b_at.start, b_at.start + n);
        Ok(Proof::new(s, Rule::OverL, vec![arg, main], span))
    }

    /// From `Γ[A B] => C` infer `Γ[A*B] => C`; `at` covers the two leaves.
    pub fn prod_l(prem: Proof, at: &Span) -> Result<Proof> {
        let level = prem.conclusion.antecedent.level(&at.path).ok_or_else(|| bad("ProdL: bad path"))?;
        let (a, b) = match level.get(at.start..at.end) {
            Some([Tree::Leaf(a), Tree::Leaf(b)]) => (a.clone(), b.clone()),
            _ => return Err(bad("ProdL: span must cover two leaves")),
        };
        let ant = prem.conclusion.antecedent.replace(at, vec![Tree::Leaf(Type::prod(a, b))]);
        let s = Sequent::new(ant, prem.conclusion.succedent.clone());
        let span = Span::new(at.path.clone(), at.start, at.start + 1);
        Ok(Proof::new(s, Rule::ProdL, vec![prem], span))
    }

    /// From `Γ[⟨A⟩] => C` infer `Γ[◊A] => C`; `at` covers the bracket.
    pub fn dia_l(prem: Proof, at: &Span) -> Result<Proof> {
        let level = prem.conclusion.antecedent.level(&at.path).ok_or_else(|| bad("DiaL: bad path"))?;
        let (i, a) = match level.get(at.start..at.end) {
            Some([Tree::Bracket(i, inner)]) => match inner.trees() {
                [Tree::Leaf(a)] => (*i, a.clone()),
                _ => return Err(bad("DiaL: bracket must hold one leaf")),
            },
            _ => return Err(bad("DiaL: span must cover one bracket")),
        };
        let ant = prem.conclusion.antecedent.replace(at, vec![Tree::Leaf(Type::dia(i, a))]);
        let s = Sequent::new(ant, prem.conclusion.succedent.clone());
        Ok(Proof::new(s, Rule::DiaL, vec![prem], at.clone()))
    }

    /// From `Γ[A] => C` infer `Γ[⟨□↓A⟩] => C`; `at` covers the leaf `A`.
    pub fn box_l(prem: Proof, at: &Span, index: Option<u32>) -> Result<Proof> {
        let a = leaf_at(&prem.conclusion.antecedent, at).ok_or_else(|| bad("BoxDownL: no leaf at the given span"))?;
        let tree = Tree::bracket(index, vec![Tree::Leaf(Type::boxd(index, a))]);
        let ant = prem.conclusion.antecedent.replace(at, vec![tree]);
        let s = Sequent::new(ant, prem.conclusion.succedent.clone());
        Ok(Proof::new(s, Rule::BoxDownL, vec![prem], at.clone()))
    }

    /// From `Γ[] => C` infer `Γ[1] => C`, inserting `1` at `path`/`index`.
    pub fn unit_l(prem: Proof, path: &[usize], index: usize) -> Result<Proof> {
        let at = Span::new(path.to_vec(), index, index);
        if !prem.conclusion.antecedent.contains_span(&at) {
            return Err(bad("UnitL: insertion point out of range"));
        }
        let ant = prem.conclusion.antecedent.replace(&at, vec![Tree::Leaf(Type::Unit)]);
        let s = Sequent::new(ant, prem.conclusion.succedent.clone());
        Ok(Proof::new(s, Rule::UnitL, vec![prem], Span::new(path.to_vec(), index, index + 1)))
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Proof::depth).max().unwrap_or(0)
    }

    /// Nodes in post-order.
    pub fn post_order(&self) -> Vec<&Proof> {
        let mut out = Vec::new();
        fn go<'a>(p: &'a Proof, out: &mut Vec<&'a Proof>) {
            for q in &p.premises {
                go(q, out);
            }
            out.push(p);
        }
        go(self, &mut out);
        out
    }

    /// The indented text form: one `RULE  sequent` line per node.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out
    }

    fn write_text(&self, depth: usize, out: &mut String) {
        for _ in 0..depth {
            out.push_str("  ");
        }
        out.push_str(self.rule.name());
        out.push_str("  ");
        out.push_str(&self.conclusion.to_string());
        out.push('\n');
        for p in &self.premises {
            p.write_text(depth + 1, out);
        }
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
