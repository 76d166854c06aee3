use std::collections::HashMap;
use std::time::{Duration, Instant};

use super::{Proof, Rule};
use crate::error::{Error, Result};
use crate::freegroup::{interpret_erased, interpret_hedge_erased};
use crate::syntax::{Calculus, Hedge, Sequent, Span, Tree, Type};

/// Resource bounds for one top-level query. `None` means unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: Option<usize>,
    pub timeout: Option<Duration>,
}

impl Limits {
    pub fn timeout_ms(ms: u64) -> Limits {
        Limits { max_nodes: None, timeout: Some(Duration::from_millis(ms)) }
    }
}

/// One backward rule application: the rule, where it acts, and the premises
/// it leaves to prove.
#[derive(Clone, Debug)]
pub(crate) struct Step {
    pub rule: Rule,
    pub principal: Span,
    pub premises: Vec<Sequent>,
}

fn step(rule: Rule, principal: Span, premises: Vec<Sequent>) -> Step {
    Step { rule, principal, premises }
}

/// All backward rule applications to `s`, in the fixed search order: axiom,
/// `=> 1`, the right rule of the succedent, then left rules level by level
/// (outermost first) and position by position (left to right).
pub(crate) fn steps(s: &Sequent, calc: Calculus) -> Vec<Step> {
    let mut out = Vec::new();
    let ant = &s.antecedent;
    let c = &s.succedent;
    let starred = calc.is_starred();
    let root = Span::root(0, ant.len());

    if let (Type::Prim(p), [Tree::Leaf(Type::Prim(q))]) = (c, ant.trees()) {
        if p == q {
            out.push(step(Rule::Ax, root.clone(), Vec::new()));
        }
    }
    if calc.has_unit() && *c == Type::Unit && ant.is_empty() {
        out.push(step(Rule::UnitR, root.clone(), Vec::new()));
    }

    match c {
        Type::Under(a, b) if starred || !ant.is_empty() => {
            let mut trees = vec![Tree::Leaf((**a).clone())];
            trees.extend(ant.trees().iter().cloned());
            out.push(step(Rule::UnderR, root.clone(), vec![Sequent::new(Hedge(trees), (**b).clone())]));
        }
        Type::Over(b, a) if starred || !ant.is_empty() => {
            let mut trees = ant.0.clone();
            trees.push(Tree::Leaf((**a).clone()));
            out.push(step(Rule::OverR, root.clone(), vec![Sequent::new(Hedge(trees), (**b).clone())]));
        }
        Type::Prod(a, b) => {
            let n = ant.len();
            for k in 0..=n {
                if !starred && (k == 0 || k == n) {
                    continue;
                }
                out.push(step(
                    Rule::ProdR,
                    Span::root(0, k),
                    vec![
                        Sequent::new(Hedge(ant.0[..k].to_vec()), (**a).clone()),
                        Sequent::new(Hedge(ant.0[k..].to_vec()), (**b).clone()),
                    ],
                ));
            }
        }
        Type::Dia(i, a) => {
            if let [Tree::Bracket(j, inner)] = ant.trees() {
                if i == j {
                    out.push(step(Rule::DiaR, root.clone(), vec![Sequent::new(inner.clone(), (**a).clone())]));
                }
            }
        }
        Type::BoxDown(i, a) if starred || !ant.is_empty() => {
            let bracket = Hedge(vec![Tree::Bracket(*i, ant.clone())]);
            out.push(step(Rule::BoxDownR, root.clone(), vec![Sequent::new(bracket, (**a).clone())]));
        }
        _ => {}
    }

    for path in ant.level_paths() {
        let level = ant.level(&path).expect("own path");
        let n = level.len();
        for (j, tree) in level.iter().enumerate() {
            let here = |st: usize, en: usize| Span::new(path.clone(), st, en);
            let rewrite = |st: usize, en: usize, with: Vec<Tree>| Sequent::new(ant.replace(&here(st, en), with), c.clone());
            match tree {
                Tree::Leaf(Type::Under(a, b)) => {
                    for st in 0..=j {
                        if !starred && st == j {
                            continue;
                        }
                        let arg = Sequent::new(Hedge(level[st..j].to_vec()), (**a).clone());
                        let main = rewrite(st, j + 1, vec![Tree::Leaf((**b).clone())]);
                        out.push(step(Rule::UnderL, here(st, j + 1), vec![arg, main]));
                    }
                }
                Tree::Leaf(Type::Over(b, a)) => {
                    for en in j + 1..=n {
                        if !starred && en == j + 1 {
                            continue;
                        }
                        let arg = Sequent::new(Hedge(level[j + 1..en].to_vec()), (**a).clone());
                        let main = rewrite(j, en, vec![Tree::Leaf((**b).clone())]);
                        out.push(step(Rule::OverL, here(j, en), vec![arg, main]));
                    }
                }
                Tree::Leaf(Type::Prod(a, b)) => {
                    let prem = rewrite(j, j + 1, vec![Tree::Leaf((**a).clone()), Tree::Leaf((**b).clone())]);
                    out.push(step(Rule::ProdL, here(j, j + 1), vec![prem]));
                }
                Tree::Leaf(Type::Dia(i, a)) => {
                    let prem = rewrite(j, j + 1, vec![Tree::bracket(*i, vec![Tree::Leaf((**a).clone())])]);
                    out.push(step(Rule::DiaL, here(j, j + 1), vec![prem]));
                }
                Tree::Leaf(Type::Unit) if calc.has_unit() => {
                    out.push(step(Rule::UnitL, here(j, j + 1), vec![rewrite(j, j + 1, Vec::new())]));
                }
                Tree::Bracket(i, inner) => {
                    if let [Tree::Leaf(Type::BoxDown(k, a))] = inner.trees() {
                        if k == i {
                            let prem = rewrite(j, j + 1, vec![Tree::Leaf((**a).clone())]);
                            out.push(step(Rule::BoxDownL, here(j, j + 1), vec![prem]));
                        }
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Backward proof search with a memo table shared by all queries made
/// through the same value.
pub struct Prover {
    calc: Calculus,
    limits: Limits,
    memo: HashMap<Sequent, bool>,
    nodes: usize,
    started: Instant,
}

impl Prover {
    pub fn new(calc: Calculus) -> Prover {
        Prover::with_limits(calc, Limits::default())
    }

    pub fn with_limits(calc: Calculus, limits: Limits) -> Prover {
        Prover { calc, limits, memo: HashMap::new(), nodes: 0, started: Instant::now() }
    }

    pub fn calculus(&self) -> Calculus {
        self.calc
    }

    /// Number of distinct sequents decided so far.
    pub fn memo_size(&self) -> usize {
        self.memo.len()
    }

    pub fn provable(&mut self, s: &Sequent) -> Result<bool> {
        self.calc.admits(s)?;
        self.nodes = 0;
        self.started = Instant::now();
        self.search(s)
    }

    /// The canonical proof: the first one found under the fixed rule order.
    pub fn prove(&mut self, s: &Sequent) -> Result<Option<Proof>> {
        if !self.provable(s)? {
            return Ok(None);
        }
        Ok(Some(self.build(s)))
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if let Some(max) = self.limits.max_nodes {
            if self.nodes > max {
                return Err(Error::Limit(format!("search exceeded {max} nodes")));
            }
        }
        if let Some(t) = self.limits.timeout {
            if self.nodes.is_multiple_of(256) && self.started.elapsed() > t {
                return Err(Error::Limit(format!("search exceeded {} ms", t.as_millis())));
            }
        }
        Ok(())
    }

    fn search(&mut self, s: &Sequent) -> Result<bool> {
        if let Some(&known) = self.memo.get(s) {
            return Ok(known);
        }
        self.tick()?;
        // Provable sequents have equal free-group images on both sides.
        let mut result = interpret_hedge_erased(&s.antecedent) == interpret_erased(&s.succedent);
        if result {
            result = false;
            for st in steps(s, self.calc) {
                let mut ok = true;
                for prem in &st.premises {
                    if !self.search(prem)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    result = true;
                    break;
                }
            }
        }
        self.memo.insert(s.clone(), result);
        Ok(result)
    }

    fn build(&mut self, s: &Sequent) -> Proof {
        for st in steps(s, self.calc) {
            if st.premises.iter().all(|p| self.memo.get(p) == Some(&true)) {
                let premises = st.premises.iter().map(|p| self.build(p)).collect();
                return Proof::new(s.clone(), st.rule, premises, st.principal);
            }
        }
        unreachable!("build called on a sequent not known to be provable: {s}")
    }
}

/// Decide `s` in `calc` and return its canonical cut-free proof.
pub fn prove(s: &Sequent, calc: Calculus) -> Result<Option<Proof>> {
    Prover::new(calc).prove(s)
}

pub fn prove_with(s: &Sequent, calc: Calculus, limits: Limits) -> Result<Option<Proof>> {
    Prover::with_limits(calc, limits).prove(s)
}

pub fn provable(s: &Sequent, calc: Calculus) -> Result<bool> {
    Prover::new(calc).provable(s)
}
