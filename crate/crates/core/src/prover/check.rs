use super::{Proof, Rule};
use crate::syntax::{Calculus, Hedge, Sequent, Span, Tree, Type};

/// The premises that `rule` acting at `principal` leaves for `conclusion`,
/// or `None` if the rule does not apply there. Purely structural: calculus
/// side conditions are checked separately.
pub(crate) fn expected_premises(conclusion: &Sequent, rule: Rule, principal: &Span) -> Option<Vec<Sequent>> {
    let ant = &conclusion.antecedent;
    let c = &conclusion.succedent;
    let root_whole = principal.path.is_empty() && principal.start == 0 && principal.end == ant.len();
    match rule {
        Rule::Ax => match (ant.trees(), c) {
            ([Tree::Leaf(Type::Prim(p))], Type::Prim(q)) if p == q && root_whole => Some(Vec::new()),
            _ => None,
        },
        Rule::UnitR => (ant.is_empty() && *c == Type::Unit && root_whole).then(Vec::new),
        Rule::UnderR => match c {
            Type::Under(a, b) if root_whole => {
                let mut trees = vec![Tree::Leaf((**a).clone())];
                trees.extend(ant.trees().iter().cloned());
                Some(vec![Sequent::new(Hedge(trees), (**b).clone())])
            }
            _ => None,
        },
        Rule::OverR => match c {
            Type::Over(b, a) if root_whole => {
                let mut trees = ant.0.clone();
                trees.push(Tree::Leaf((**a).clone()));
                Some(vec![Sequent::new(Hedge(trees), (**b).clone())])
            }
            _ => None,
        },
        Rule::ProdR => match c {
            Type::Prod(a, b) if principal.path.is_empty() && principal.start == 0 && principal.end <= ant.len() => {
                let k = principal.end;
                Some(vec![
                    Sequent::new(Hedge(ant.0[..k].to_vec()), (**a).clone()),
                    Sequent::new(Hedge(ant.0[k..].to_vec()), (**b).clone()),
                ])
            }
            _ => None,
        },
        Rule::DiaR => match (c, ant.trees()) {
            (Type::Dia(i, a), [Tree::Bracket(j, inner)]) if i == j && root_whole => {
                Some(vec![Sequent::new(inner.clone(), (**a).clone())])
            }
            _ => None,
        },
        Rule::BoxDownR => match c {
            Type::BoxDown(i, a) if root_whole => Some(vec![Sequent::new(
                Hedge(vec![Tree::Bracket(*i, ant.clone())]),
                (**a).clone(),
            )]),
            _ => None,
        },
        Rule::UnderL | Rule::OverL => {
            if !ant.contains_span(principal) || principal.is_empty() {
                return None;
            }
            let level = ant.level(&principal.path)?;
            let (functor_at, arg) = if rule == Rule::UnderL {
                (principal.end - 1, principal.start..principal.end - 1)
            } else {
                (principal.start, principal.start + 1..principal.end)
            };
            let (a, b) = match (&level[functor_at], rule) {
                (Tree::Leaf(Type::Under(a, b)), Rule::UnderL) => (a, b),
                (Tree::Leaf(Type::Over(b, a)), Rule::OverL) => (a, b),
                _ => return None,
            };
            Some(vec![
                Sequent::new(Hedge(level[arg].to_vec()), (**a).clone()),
                Sequent::new(ant.replace(principal, vec![Tree::Leaf((**b).clone())]), c.clone()),
            ])
        }
        Rule::ProdL | Rule::DiaL | Rule::UnitL | Rule::BoxDownL => {
            if principal.len() != 1 || !ant.contains_span(principal) {
                return None;
            }
            let tree = &ant.level(&principal.path)?[principal.start];
            let with = match (rule, tree) {
                (Rule::ProdL, Tree::Leaf(Type::Prod(a, b))) => {
                    vec![Tree::Leaf((**a).clone()), Tree::Leaf((**b).clone())]
                }
                (Rule::DiaL, Tree::Leaf(Type::Dia(i, a))) => {
                    vec![Tree::bracket(*i, vec![Tree::Leaf((**a).clone())])]
                }
                (Rule::UnitL, Tree::Leaf(Type::Unit)) => Vec::new(),
                (Rule::BoxDownL, Tree::Bracket(i, inner)) => match inner.trees() {
                    [Tree::Leaf(Type::BoxDown(k, a))] if k == i => vec![Tree::Leaf((**a).clone())],
                    _ => return None,
                },
                _ => return None,
            };
            Some(vec![Sequent::new(ant.replace(principal, with), c.clone())])
        }
    }
}

fn side_conditions(p: &Proof, calc: Calculus) -> Result<(), String> {
    calc.admits(&p.conclusion).map_err(|e| e.to_string())?;
    match p.rule {
        Rule::UnitR | Rule::UnitL if !calc.has_unit() => Err(format!("{} needs the unit", p.rule)),
        Rule::DiaL | Rule::DiaR | Rule::BoxDownL | Rule::BoxDownR if !calc.has_brackets() => {
            Err(format!("{} needs brackets", p.rule))
        }
        Rule::UnderR | Rule::OverR if !calc.is_starred() && p.conclusion.antecedent.is_empty() => {
            Err(format!("{} with empty antecedent in {calc}", p.rule))
        }
        _ => Ok(()),
    }
}

/// Check every node of `p` as an instance of its rule in `calc`, with the
/// first failing node reported.
pub fn verify(p: &Proof, calc: Calculus) -> Result<(), String> {
    side_conditions(p, calc).map_err(|e| format!("{e} at `{}`", p.conclusion))?;
    let expected = expected_premises(&p.conclusion, p.rule, &p.principal)
        .ok_or_else(|| format!("{} does not apply to `{}` at {:?}", p.rule, p.conclusion, p.principal))?;
    if expected.len() != p.premises.len() {
        return Err(format!(
            "{} at `{}` needs {} premises, found {}",
            p.rule,
            p.conclusion,
            expected.len(),
            p.premises.len()
        ));
    }
    for (want, got) in expected.iter().zip(&p.premises) {
        if *want != got.conclusion {
            return Err(format!("{} at `{}`: expected premise `{want}`, found `{}`", p.rule, p.conclusion, got.conclusion));
        }
    }
    p.premises.iter().try_for_each(|q| verify(q, calc))
}

/// `true` iff every node of `p` is a legal rule instance of `calc`.
pub fn check(p: &Proof, calc: Calculus) -> bool {
    verify(p, calc).is_ok()
}

/// The first principal position at which `rule` turns `conclusion` into
/// exactly `premises`.
pub(crate) fn infer_principal(conclusion: &Sequent, rule: Rule, premises: &[Sequent]) -> Option<Span> {
    let ant = &conclusion.antecedent;
    let mut candidates = ant.spans(true);
    candidates.insert(0, Span::root(0, ant.len()));
    candidates
        .into_iter()
        .find(|span| expected_premises(conclusion, rule, span).is_some_and(|e| e == premises))
}
