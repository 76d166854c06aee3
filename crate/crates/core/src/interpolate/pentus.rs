use std::collections::BTreeSet;

use crate::cfgkit::CutDerivation;
use crate::error::{Error, Result};
use crate::freegroup::{interpret, pentus_split};
use crate::prover::{prove, Proof};
use crate::syntax::{Calculus, Hedge, Sequent, Span, Tree, Type};

use super::bracket::bracket_step;
use super::extract::extract_at;
use super::thin::thin_index;

/// `true` iff `t` may appear in a sequent reduced over `b` with bound `m`:
/// built from `b` (and `◊1` in unit calculi), guarded, of length at most `m`.
pub fn in_bounds(t: &Type, b: &BTreeSet<String>, m: usize, calc: Calculus) -> bool {
    t.length() <= m
        && t.primitives().is_subset(b)
        && !is_indexed(t)
        && if calc.has_unit() { t.is_guarded() } else { !t.has_unit() }
}

fn is_indexed(t: &Type) -> bool {
    let mut idx = BTreeSet::new();
    t.collect_indices(&mut idx);
    idx.iter().any(Option::is_some)
}

fn check_bounds(s: &Sequent, b: &BTreeSet<String>, m: usize, calc: Calculus) -> Result<()> {
    match s.types().into_iter().find(|t| !in_bounds(t, b, m, calc)) {
        Some(t) => Err(Error::Precondition(format!("type `{t}` of `{s}` is outside the bound m = {m}"))),
        None => Ok(()),
    }
}

fn proof_of(s: &Sequent, calc: Calculus) -> Result<Proof> {
    prove(s, calc)?.ok_or_else(|| Error::Unprovable(s.to_string()))
}

/// Reduce a provable bracket-free sequent to a Cut derivation whose leaves
/// have at most two antecedent types, all within the bound `m`.
///
/// Each step thin-indexes the canonical proof, splits the free-group images
/// `u1 .. un un+1⁻¹` at the least admissible `k`, and replaces either the
/// pair `Ak Ak+1` or the prefix `A1 .. An-1` by its interpolant.
pub fn pentus_reduce(s: &Sequent, b: &BTreeSet<String>, m: usize, calc: Calculus) -> Result<CutDerivation> {
    if !s.antecedent.is_flat() {
        return Err(Error::Precondition(format!("`{s}` has brackets")));
    }
    check_bounds(s, b, m, calc)?;
    let proof = proof_of(s, calc)?;
    let n = s.antecedent.len();
    if n <= 2 {
        return Ok(CutDerivation::leaf(s.clone()));
    }
    let (ip, theta) = thin_index(&proof)?;
    let icalc = calc.indexed();
    let ic = &ip.conclusion;
    let mut words = ic.antecedent.yield_types().iter().map(interpret).collect::<Result<Vec<_>>>()?;
    words.push(interpret(&ic.succedent)?.inv());
    let k = pentus_split(&words)?;
    let types = s.antecedent.yield_types();
    let a = s.succedent.clone();
    if k < n {
        let r = extract_at(&ip, &Span::root(k - 1, k + 1), icalc)?;
        let e = r.interpolant.deindex(&theta);
        check_interpolant(&e, b, m, calc)?;
        let pair = Sequent::flat(types[k - 1..k + 1].to_vec(), e.clone());
        let mut rest_types = types[..k - 1].to_vec();
        rest_types.push(e);
        rest_types.extend_from_slice(&types[k + 1..]);
        let rest = pentus_reduce(&Sequent::flat(rest_types, a), b, m, calc)?;
        CutDerivation::cut(pentus_reduce(&pair, b, m, calc)?, rest, Span::root(k - 1, k))
    } else {
        let r = extract_at(&ip, &Span::root(0, n - 1), icalc)?;
        let e = r.interpolant.deindex(&theta);
        check_interpolant(&e, b, m, calc)?;
        let prefix = pentus_reduce(&Sequent::flat(types[..n - 1].to_vec(), e.clone()), b, m, calc)?;
        let last = pentus_reduce(&Sequent::flat([e, types[n - 1].clone()], a), b, m, calc)?;
        CutDerivation::cut(prefix, last, Span::root(0, 1))
    }
}

fn check_interpolant(e: &Type, b: &BTreeSet<String>, m: usize, calc: Calculus) -> Result<()> {
    if in_bounds(e, b, m, calc) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("interpolant `{e}` exceeds the bound m = {m}")))
    }
}

/// Position of the first empty bracket, outermost level first.
fn empty_bracket(h: &Hedge) -> Option<Span> {
    for path in h.level_paths() {
        let level = h.level(&path).expect("own path");
        for (i, t) in level.iter().enumerate() {
            if matches!(t, Tree::Bracket(_, inner) if inner.is_empty()) {
                return Some(Span::new(path, i, i + 1));
            }
        }
    }
    None
}

/// A Cut derivation of the provable sequent `s` from the short sequents and
/// the bracket bridges `⟨A⟩ => ◊A`, `⟨□↓A⟩ => A` (and `⟨⟩ => ◊1` in unit
/// calculi), built by eliminating innermost brackets one at a time and
/// reducing what is left with [`pentus_reduce`].
pub fn cut_complete(s: &Sequent, b: &BTreeSet<String>, m: usize, calc: Calculus) -> Result<CutDerivation> {
    if s.antecedent.is_flat() {
        return pentus_reduce(s, b, m, calc);
    }
    check_bounds(s, b, m, calc)?;
    let ant = &s.antecedent;
    if calc.has_unit() {
        if let Some(at) = empty_bracket(ant) {
            let i = match &ant.level(&at.path).expect("found")[at.start] {
                Tree::Bracket(i, _) => *i,
                Tree::Leaf(_) => unreachable!("found a bracket"),
            };
            let dia1 = Type::dia(i, Type::Unit);
            let rest = Sequent::new(ant.replace(&at, vec![Tree::Leaf(dia1.clone())]), s.succedent.clone());
            let rest = cut_complete(&rest, b, m, calc)?;
            let bridge = CutDerivation::leaf(Sequent::new(Hedge(vec![Tree::bracket(i, Vec::new())]), dia1));
            return CutDerivation::cut(bridge, rest, at);
        }
    }
    let path = ant.level_paths().pop().expect("has a bracket");
    let (&j, outer) = path.split_last().expect("not the root");
    let at = Span::new(outer.to_vec(), j, j + 1);
    let proof = proof_of(s, calc)?;
    let st = bracket_step(&proof, &at, calc)?;
    if st.b.length() + 2 > m {
        return Err(Error::Precondition(format!("bracket interpolant `{}` exceeds m - 2", st.b)));
    }
    let delta = pentus_reduce(&st.delta_proof.conclusion, b, m, calc)?;
    let inner = CutDerivation::cut(delta, CutDerivation::leaf(st.bridge()), Span::new(vec![0], 0, 1))?;
    let rest = cut_complete(&st.context_proof.conclusion, b, m, calc)?;
    CutDerivation::cut(inner, rest, at)
}
