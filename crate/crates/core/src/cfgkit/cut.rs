use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{Hedge, Sequent, Span, Tree, Type};

/// How a [`CutDerivation`] node was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutRule {
    /// A member of the base set.
    Leaf,
    /// From `left: Γ => A` and `right: Δ[A] => B` infer `Δ[Γ] => B`;
    /// `position` is the one-leaf span of `A` in `right`.
    Cut { left: Box<CutDerivation>, right: Box<CutDerivation>, position: Span },
}

/// A derivation from a finite base set using Cut only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutDerivation {
    pub conclusion: Sequent,
    pub rule: CutRule,
}

impl CutDerivation {
    pub fn leaf(s: Sequent) -> CutDerivation {
        CutDerivation { conclusion: s, rule: CutRule::Leaf }
    }

    /// Cut `left` into the leaf of `right` at `position`.
    pub fn cut(left: CutDerivation, right: CutDerivation, position: Span) -> Result<CutDerivation> {
        let conclusion = cut_sequent(&left.conclusion, &right.conclusion, &position)?;
        Ok(CutDerivation {
            conclusion,
            rule: CutRule::Cut { left: Box::new(left), right: Box::new(right), position },
        })
    }

    /// Every conclusion in the derivation, root first.
    pub fn conclusions(&self) -> Vec<&Sequent> {
        let mut out = vec![&self.conclusion];
        if let CutRule::Cut { left, right, .. } = &self.rule {
            out.extend(left.conclusions());
            out.extend(right.conclusions());
        }
        out
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&Sequent> {
        let mut out = Vec::new();
        fn go<'a>(d: &'a CutDerivation, out: &mut Vec<&'a Sequent>) {
            match &d.rule {
                CutRule::Leaf => out.push(&d.conclusion),
                CutRule::Cut { left, right, .. } => {
                    go(left, out);
                    go(right, out);
                }
            }
        }
        go(self, &mut out);
        out
    }

    pub fn cuts(&self) -> usize {
        match &self.rule {
            CutRule::Leaf => 0,
            CutRule::Cut { left, right, .. } => 1 + left.cuts() + right.cuts(),
        }
    }

    /// Recompute the conclusion from the leaves, checking every Cut.
    pub fn replay(&self) -> Result<Sequent> {
        match &self.rule {
            CutRule::Leaf => Ok(self.conclusion.clone()),
            CutRule::Cut { left, right, position } => {
                let s = cut_sequent(&left.replay()?, &right.replay()?, position)?;
                if s != self.conclusion {
                    return Err(Error::Precondition(format!(
                        "cut replays to `{s}`, recorded `{}`",
                        self.conclusion
                    )));
                }
                Ok(s)
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write(0, &mut out);
        out
    }

    fn write(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        match &self.rule {
            CutRule::Leaf => out.push_str("Base  "),
            CutRule::Cut { .. } => out.push_str("Cut  "),
        }
        out.push_str(&self.conclusion.to_string());
        out.push('\n');
        if let CutRule::Cut { left, right, .. } = &self.rule {
            left.write(depth + 1, out);
            right.write(depth + 1, out);
        }
    }
}

impl fmt::Display for CutDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The conclusion of Cut with premises `left` and `right`, cutting into the
/// leaf of `right` at `position`.
pub fn cut_sequent(left: &Sequent, right: &Sequent, position: &Span) -> Result<Sequent> {
    let ant = &right.antecedent;
    let found = if position.len() == 1 && ant.contains_span(position) {
        ant.level(&position.path).and_then(|l| l[position.start].as_leaf())
    } else {
        None
    };
    match found {
        Some(t) if *t == left.succedent => Ok(Sequent::new(
            ant.replace(position, left.antecedent.0.clone()),
            right.succedent.clone(),
        )),
        _ => Err(Error::Precondition(format!(
            "cannot cut `{left}` into `{right}` at {position:?}"
        ))),
    }
}

/// What fills one leaf of a base antecedent during matching.
#[derive(Clone, Debug)]
enum Fill {
    /// The leaf of the target itself.
    Same,
    /// A derived piece: the sub-span of the target and its type.
    Derived(Span, Type),
}

#[derive(Clone, Debug)]
struct Back {
    base: usize,
    fills: Vec<Fill>,
}

/// Derivability chart over the spans of one target antecedent.
struct Chart<'a> {
    base: &'a [Sequent],
    by_succ: BTreeMap<&'a Type, Vec<usize>>,
    target: &'a Hedge,
    /// nullable types with the base sequent deriving them from nothing
    empty: BTreeMap<Type, Back>,
    cells: HashMap<Span, BTreeMap<Type, Back>>,
}

impl<'a> Chart<'a> {
    fn types_at(&self, span: &Span) -> Option<&BTreeMap<Type, Back>> {
        if span.is_empty() {
            Some(&self.empty)
        } else {
            self.cells.get(span)
        }
    }

    /// All ways to match `pat` against the trees `from..end` at `path`,
    /// each given as the fills for the leaves of `pat` in order.
    fn matches(&self, pat: &[Tree], path: &[usize], from: usize, end: usize, out: &mut Vec<Vec<Fill>>, acc: &mut Vec<Fill>) {
        let level = self.target.level(path).expect("own path");
        let Some((first, rest)) = pat.split_first() else {
            if from == end {
                out.push(acc.clone());
            }
            return;
        };
        match first {
            Tree::Bracket(i, inner) => {
                if let Some(Tree::Bracket(j, kids)) = level.get(from).filter(|_| from < end) {
                    if i != j {
                        return;
                    }
                    let mut sub_path = path.to_vec();
                    sub_path.push(from);
                    let mut inner_out = Vec::new();
                    self.matches(inner.trees(), &sub_path, 0, kids.len(), &mut inner_out, &mut Vec::new());
                    for fills in inner_out {
                        let n = acc.len();
                        acc.extend(fills);
                        self.matches(rest, path, from + 1, end, out, acc);
                        acc.truncate(n);
                    }
                }
            }
            Tree::Leaf(t) => {
                if from < end && level[from].as_leaf() == Some(t) {
                    acc.push(Fill::Same);
                    self.matches(rest, path, from + 1, end, out, acc);
                    acc.pop();
                }
                for to in from..=end {
                    let span = Span::new(path.to_vec(), from, to);
                    if self.types_at(&span).is_some_and(|m| m.contains_key(t)) {
                        acc.push(Fill::Derived(span, t.clone()));
                        self.matches(rest, path, to, end, out, acc);
                        acc.pop();
                    }
                }
            }
        }
    }

    /// Saturate the cell of `span` (all smaller spans done). Each round only
    /// sees the types found in earlier rounds, so derivations are well founded.
    fn fill(&mut self, span: &Span) {
        let mut found: BTreeMap<Type, Back> = BTreeMap::new();
        loop {
            self.cells.insert(span.clone(), found.clone());
            let mut fresh = Vec::new();
            for (succ, ids) in &self.by_succ {
                if found.contains_key(*succ) {
                    continue;
                }
                for &id in ids {
                    let mut out = Vec::new();
                    self.matches(self.base[id].antecedent.trees(), &span.path, span.start, span.end, &mut out, &mut Vec::new());
                    if let Some(fills) = out.into_iter().next() {
                        fresh.push(((*succ).clone(), Back { base: id, fills }));
                        break;
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            found.extend(fresh);
        }
        self.cells.insert(span.clone(), found);
    }

    fn build(&self, span: &Span, t: &Type) -> Result<CutDerivation> {
        let back = self
            .types_at(span)
            .and_then(|m| m.get(t))
            .ok_or_else(|| Error::Precondition("chart lost a derivation".into()))?
            .clone();
        let base = &self.base[back.base];
        let mut d = CutDerivation::leaf(base.clone());
        let positions = leaf_positions(&base.antecedent);
        for (pos, fill) in positions.iter().zip(&back.fills).rev() {
            if let Fill::Derived(sub, ty) = fill {
                let left = self.build(sub, ty)?;
                d = CutDerivation::cut(left, d, pos.clone())?;
            }
        }
        Ok(d)
    }
}

/// Leaf positions of a hedge in document order.
fn leaf_positions(h: &Hedge) -> Vec<Span> {
    fn go(trees: &[Tree], path: &mut Vec<usize>, out: &mut Vec<Span>) {
        for (i, t) in trees.iter().enumerate() {
            match t {
                Tree::Leaf(_) => out.push(Span::new(path.clone(), i, i + 1)),
                Tree::Bracket(_, inner) => {
                    path.push(i);
                    go(inner.trees(), path, out);
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(h.trees(), &mut Vec::new(), &mut out);
    out
}

/// Nullable types: derivable from the empty hedge using the base only.
fn nullable(base: &[Sequent]) -> BTreeMap<Type, Back> {
    let mut found: BTreeMap<Type, Back> = BTreeMap::new();
    loop {
        let mut grew = false;
        for (id, s) in base.iter().enumerate() {
            if found.contains_key(&s.succedent) {
                continue;
            }
            let leaves: Option<Vec<&Type>> = s.antecedent.trees().iter().map(Tree::as_leaf).collect();
            let Some(leaves) = leaves else { continue };
            if leaves.iter().all(|t| found.contains_key(*t)) {
                let fills = leaves.iter().map(|t| Fill::Derived(Span::root(0, 0), (*t).clone())).collect();
                found.insert(s.succedent.clone(), Back { base: id, fills });
                grew = true;
            }
        }
        if !grew {
            return found;
        }
    }
}

/// Spans of `h` ordered so that every span comes after all spans nested
/// strictly inside it.
fn spans_inside_out(h: &Hedge) -> Vec<Span> {
    let mut spans = h.spans(false);
    spans.sort_by_key(|s| {
        let depth = s.path.len();
        (std::cmp::Reverse(depth), s.len(), s.path.clone(), s.start)
    });
    spans
}

/// Decide `base ⊢_Cut s` by dynamic programming over the spans of the
/// antecedent of `s`, returning a derivation if one exists.
pub fn cut_derives(base: &[Sequent], s: &Sequent) -> Option<CutDerivation> {
    let mut by_succ: BTreeMap<&Type, Vec<usize>> = BTreeMap::new();
    for (i, b) in base.iter().enumerate() {
        by_succ.entry(&b.succedent).or_default().push(i);
    }
    let mut chart = Chart { base, by_succ, target: &s.antecedent, empty: nullable(base), cells: HashMap::new() };
    for span in spans_inside_out(&s.antecedent) {
        chart.fill(&span);
    }
    let whole = Span::root(0, s.antecedent.len());
    chart.types_at(&whole)?.get(&s.succedent)?;
    chart.build(&whole, &s.succedent).ok()
}

/// The closure of `base` under Cut restricted to sequents whose antecedent
/// has at most `max_leaves` leaves and `max_brackets` brackets. Small
/// instances only.
pub fn cut_closure(base: &[Sequent], max_leaves: usize, max_brackets: usize) -> BTreeSet<Sequent> {
    let fits = |s: &Sequent| s.antecedent.leaf_count() <= max_leaves && s.antecedent.bracket_count() <= max_brackets;
    let mut all: BTreeSet<Sequent> = base.iter().filter(|s| fits(s)).cloned().collect();
    loop {
        let current: Vec<Sequent> = all.iter().cloned().collect();
        let mut fresh = Vec::new();
        for right in &current {
            for pos in leaf_positions(&right.antecedent) {
                for left in &current {
                    if let Ok(s) = cut_sequent(left, right, &pos) {
                        if fits(&s) && !all.contains(&s) {
                            fresh.push(s);
                        }
                    }
                }
            }
        }
        if fresh.is_empty() {
            return all;
        }
        all.extend(fresh);
    }
}
