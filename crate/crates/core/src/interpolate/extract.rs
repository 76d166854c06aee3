use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::prover::{check, Proof, Rule};
use crate::syntax::{Calculus, Context, Hedge, Sequent, Span, Tree, Type};

/// A split `(Δ; Γ[_])` of an antecedent `Γ[Δ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    pub context: Context,
    pub selected: Hedge,
}

impl Partition {
    pub fn new(context: Context, selected: Hedge) -> Partition {
        Partition { context, selected }
    }

    /// Cut `span` out of `antecedent`.
    pub fn from_span(antecedent: &Hedge, span: &Span) -> Result<Partition> {
        if !antecedent.contains_span(span) {
            return Err(Error::Partition(format!("{span:?} is not a span of `{antecedent}`")));
        }
        Ok(Partition { context: antecedent.context_of(span), selected: antecedent.slice(span) })
    }

    /// Where the selected hedge sits once plugged.
    pub fn span(&self) -> Span {
        self.context.span_for(self.selected.len())
    }

    pub fn plugged(&self) -> Hedge {
        self.context.plug(&self.selected)
    }

    /// Every partition of `antecedent`. Selections without any type are
    /// included only when `allow_empty`.
    pub fn all(antecedent: &Hedge, allow_empty: bool) -> Vec<Partition> {
        antecedent
            .spans(allow_empty)
            .iter()
            .map(|s| Partition::from_span(antecedent, s).expect("own span"))
            .filter(|p| allow_empty || p.selected.leaf_count() > 0)
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.selected, self.context)
    }
}

/// An interpolant together with cut-free proofs of both halves.
#[derive(Clone, Debug)]
pub struct InterpolationResult {
    pub interpolant: Type,
    /// `Δ => E`
    pub left_proof: Proof,
    /// `Γ[E] => C`
    pub right_proof: Proof,
    pub partition: Partition,
    /// `Γ[Δ] => C`
    pub conclusion: Sequent,
}

/// The four interpolation conditions, checked independently of extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub left_proof: bool,
    pub right_proof: bool,
    pub sigma_bound: bool,
    pub tau_bound: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.left_proof && self.right_proof && self.sigma_bound && self.tau_bound
    }
}

/// One row of the occurrence table: count in `E`, in `Δ`, and in `Γ[_] => C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub interpolant: usize,
    pub selected: usize,
    pub context: usize,
}

impl Counts {
    fn ok(&self) -> bool {
        self.interpolant <= self.selected.min(self.context)
    }
}

fn index_key(i: Option<u32>) -> String {
    match i {
        Some(i) => i.to_string(),
        None => "-".to_string(),
    }
}

impl InterpolationResult {
    pub fn sigma_table(&self) -> BTreeMap<String, Counts> {
        let mut names: BTreeSet<String> = self.conclusion.primitives();
        names.extend(self.interpolant.primitives());
        let c = &self.conclusion.succedent;
        names
            .into_iter()
            .map(|p| {
                let row = Counts {
                    interpolant: self.interpolant.sigma(&p),
                    selected: self.partition.selected.sigma(&p),
                    context: self.partition.context.sigma(&p) + c.sigma(&p),
                };
                (p, row)
            })
            .collect()
    }

    pub fn tau_table(&self) -> BTreeMap<String, Counts> {
        let mut idx: BTreeSet<Option<u32>> = self.conclusion.indices();
        self.interpolant.collect_indices(&mut idx);
        let c = &self.conclusion.succedent;
        idx.into_iter()
            .map(|i| {
                let row = Counts {
                    interpolant: self.interpolant.tau(i),
                    selected: self.partition.selected.tau(i),
                    context: self.partition.context.tau(i) + c.tau(i),
                };
                (index_key(i), row)
            })
            .collect()
    }

    /// Conditions (i)-(iv) recomputed from scratch.
    pub fn conditions(&self, calc: Calculus) -> Conditions {
        let e = &self.interpolant;
        let want_left = Sequent::new(self.partition.selected.clone(), e.clone());
        let want_right = Sequent::new(
            self.partition.context.plug(&Hedge(vec![Tree::Leaf(e.clone())])),
            self.conclusion.succedent.clone(),
        );
        Conditions {
            left_proof: self.left_proof.conclusion == want_left && check(&self.left_proof, calc),
            right_proof: self.right_proof.conclusion == want_right && check(&self.right_proof, calc),
            sigma_bound: self.sigma_table().values().all(Counts::ok),
            tau_bound: self.tau_table().values().all(Counts::ok),
        }
    }

    pub fn to_json(&self, calc: Calculus) -> serde_json::Value {
        let c = self.conditions(calc);
        json!({
            "sequent": self.conclusion.to_string(),
            "selected": self.partition.selected.to_string(),
            "context": self.partition.context.to_string(),
            "interpolant": self.interpolant.to_string(),
            "left_proof": self.left_proof.to_text(),
            "right_proof": self.right_proof.to_text(),
            "conditions": {
                "i": c.left_proof,
                "ii": c.right_proof,
                "iii": c.sigma_bound,
                "iv": c.tau_bound,
            },
            "sigma": self.sigma_table(),
            "tau": self.tau_table(),
        })
    }
}

#[derive(Clone, Copy)]
struct Mode {
    unit: bool,
    guarded: bool,
}

type Out = (Type, Proof, Proof);

/// Extract an interpolant for `part` by recursion on the cut-free proof `p`.
///
/// In calculi with the unit an empty selection is allowed; when moreover
/// every type of the conclusion is guarded, `⟨⟩` and `◊1` selections
/// interpolate to `◊1` and the result is guarded.
pub fn extract_interpolant(p: &Proof, part: &Partition, calc: Calculus) -> Result<InterpolationResult> {
    let conclusion = p.conclusion.clone();
    if part.plugged() != conclusion.antecedent {
        return Err(Error::Partition(format!("`{part}` does not split `{}`", conclusion.antecedent)));
    }
    let span = part.span();
    if span.is_empty() && !calc.has_unit() {
        return Err(Error::Partition(format!("empty selection in {calc}")));
    }
    let mode = Mode { unit: calc.has_unit(), guarded: calc.has_unit() && conclusion.is_guarded() };
    let (interpolant, left_proof, right_proof) = go(p, &span, mode)?;
    Ok(InterpolationResult { interpolant, left_proof, right_proof, partition: part.clone(), conclusion })
}

/// Convenience wrapper taking the selection as a span.
pub fn extract_at(p: &Proof, span: &Span, calc: Calculus) -> Result<InterpolationResult> {
    extract_interpolant(p, &Partition::from_span(&p.conclusion.antecedent, span)?, calc)
}

fn internal(msg: impl fmt::Display) -> Error {
    Error::Precondition(format!("interpolation: {msg}"))
}

#[derive(Debug, PartialEq, Eq)]
enum Rel {
    Contains,
    Inside,
    Overlap,
    Disjoint,
}

/// How `sel` relates to the nonempty region `a..b` of the level at `path`.
fn relate(sel: &Span, path: &[usize], a: usize, b: usize) -> Rel {
    let (s, e) = (sel.start, sel.end);
    if sel.path == path {
        if s <= a && e >= b {
            Rel::Contains
        } else if s >= a && e <= b {
            Rel::Inside
        } else if e <= a || s >= b {
            Rel::Disjoint
        } else {
            Rel::Overlap
        }
    } else if path.starts_with(&sel.path) {
        let k = path[sel.path.len()];
        if s <= k && k < e {
            Rel::Contains
        } else {
            Rel::Disjoint
        }
    } else if sel.path.starts_with(path) {
        let k = sel.path[path.len()];
        if a <= k && k < b {
            Rel::Inside
        } else {
            Rel::Disjoint
        }
    } else {
        Rel::Disjoint
    }
}

/// Where `x` ends up after the region `a..b` at `path` is replaced by `r`
/// trees; `x` must not lie strictly inside the region.
pub(crate) fn shift(x: &Span, path: &[usize], a: usize, b: usize, r: usize) -> Span {
    let mv = |k: usize| if k >= b { k + r - (b - a) } else { k };
    let mut out = x.clone();
    if x.path == path {
        out.start = mv(x.start);
        out.end = mv(x.end);
    } else if x.path.starts_with(path) {
        let d = path.len();
        out.path[d] = mv(x.path[d]);
    }
    out
}

/// The position of the region starting at `a` on `path`, relative to the
/// hedge selected by `sel`, which contains it.
fn relative(path: &[usize], a: usize, sel: &Span) -> (Vec<usize>, usize) {
    let d = sel.path.len();
    if path.len() == d {
        (Vec::new(), a - sel.start)
    } else {
        let mut rel = path[d..].to_vec();
        rel[0] -= sel.start;
        (rel, a)
    }
}

/// `sel`, which lies inside the region starting at `a` on `path`, seen from
/// a hedge consisting of that region alone.
pub(crate) fn rebase(sel: &Span, path: &[usize], a: usize) -> Span {
    let d = path.len();
    if sel.path.len() == d {
        Span::root(sel.start - a, sel.end - a)
    } else {
        let mut rel = sel.path[d..].to_vec();
        rel[0] -= a;
        Span::new(rel, sel.start, sel.end)
    }
}

fn one(path: &[usize], at: usize) -> Span {
    Span::new(path.to_vec(), at, at + 1)
}

fn dia_one(i: Option<u32>) -> Type {
    Type::dia(i, Type::Unit)
}

/// `1 => 1`
fn unit_identity() -> Result<Proof> {
    Proof::unit_l(Proof::unit_r(), &[], 0)
}

/// `◊1 => ◊1`
fn dia_one_identity(i: Option<u32>) -> Result<Proof> {
    Proof::dia_l(Proof::dia_r(unit_identity()?, i), &Span::root(0, 1))
}

type Reapply<'a> = dyn Fn(Proof, &[usize], usize) -> Result<Proof> + 'a;

/// The shared part of every left rule: the selection contains the active
/// region or is disjoint from it. The region `a..b` at `path` of the
/// conclusion became `a..a+r` in premise `main`.
#[allow(clippy::too_many_arguments)]
fn through(
    p: &Proof,
    sel: &Span,
    mode: Mode,
    main: usize,
    path: &[usize],
    a: usize,
    b: usize,
    r: usize,
    reapply: &Reapply<'_>,
) -> Result<Out> {
    let sel2 = shift(sel, path, a, b, r);
    let (e, left, right) = go(&p.premises[main], &sel2, mode)?;
    match relate(sel, path, a, b) {
        Rel::Contains => {
            let (rp, ra) = relative(path, a, &sel2);
            Ok((e, reapply(left, &rp, ra)?, right))
        }
        Rel::Disjoint => {
            let region = Span::new(path.to_vec(), a, a + r);
            let loc = shift(&region, &sel2.path, sel2.start, sel2.end, 1);
            Ok((e, left, reapply(right, &loc.path, loc.start)?))
        }
        rel => Err(internal(format!("{} with selection {rel:?}", p.rule))),
    }
}

fn go(p: &Proof, sel: &Span, mode: Mode) -> Result<Out> {
    let ant = &p.conclusion.antecedent;
    if sel.is_empty() {
        if !mode.unit {
            return Err(Error::Partition("empty selection".into()));
        }
        return Ok((Type::Unit, Proof::unit_r(), Proof::unit_l(p.clone(), &sel.path, sel.start)?));
    }
    let selected = ant.slice(sel);
    if mode.guarded {
        match selected.trees() {
            [Tree::Bracket(i, inner)] if inner.is_empty() => {
                let right = Proof::unit_l(p.clone(), &sel.path.iter().copied().chain([sel.start]).collect::<Vec<_>>(), 0)?;
                let right = Proof::dia_l(right, sel)?;
                return Ok((dia_one(*i), Proof::dia_r(Proof::unit_r(), *i), right));
            }
            [Tree::Leaf(Type::Dia(i, body))] if **body == Type::Unit => {
                return Ok((dia_one(*i), dia_one_identity(*i)?, p.clone()));
            }
            _ => {}
        }
    }
    if mode.unit && p.rule == Rule::UnitL && *sel == p.principal {
        return Ok((Type::Unit, unit_identity()?, p.clone()));
    }

    let c = &p.conclusion.succedent;
    let pr = &p.principal;
    match p.rule {
        Rule::Ax => Ok((c.clone(), Proof::ax(c.clone()), Proof::ax(c.clone()))),
        Rule::UnitR => Err(internal("nonempty selection of `=> 1`")),
        Rule::UnderR | Rule::OverR => {
            let sel2 = if p.rule == Rule::OverR {
                sel.clone()
            } else if sel.path.is_empty() {
                Span::root(sel.start + 1, sel.end + 1)
            } else {
                let mut path = sel.path.clone();
                path[0] += 1;
                Span::new(path, sel.start, sel.end)
            };
            let (e, left, right) = go(&p.premises[0], &sel2, mode)?;
            let right = if p.rule == Rule::UnderR { Proof::under_r(right)? } else { Proof::over_r(right)? };
            Ok((e, left, right))
        }
        Rule::BoxDownR => {
            let (e, left, right) = go(&p.premises[0], &sel.under_bracket(0), mode)?;
            Ok((e, left, Proof::box_r(right)?))
        }
        Rule::DiaR => {
            let i = match c {
                Type::Dia(i, _) => *i,
                _ => return Err(internal("DiaR without a diamond")),
            };
            if sel.path.is_empty() {
                let n = p.premises[0].conclusion.antecedent.len();
                let (e, left, right) = go(&p.premises[0], &Span::root(0, n), mode)?;
                let right = Proof::dia_l(Proof::dia_r(right, i), &Span::root(0, 1))?;
                Ok((Type::dia(i, e), Proof::dia_r(left, i), right))
            } else {
                let inner = sel.strip_prefix(0).ok_or_else(|| internal("DiaR selection outside the bracket"))?;
                let (e, left, right) = go(&p.premises[0], &inner, mode)?;
                Ok((e, left, Proof::dia_r(right, i)))
            }
        }
        Rule::ProdR => {
            let k = pr.end;
            let (l, r) = (&p.premises[0], &p.premises[1]);
            let first = sel.path.first().copied();
            let in_left = match first {
                Some(j) => j < k,
                None => sel.end <= k,
            };
            let in_right = match first {
                Some(j) => j >= k,
                None => sel.start >= k,
            };
            if in_left {
                let (e, left, right) = go(l, sel, mode)?;
                Ok((e, left, Proof::prod_r(right, r.clone())))
            } else if in_right {
                let sel2 = match first {
                    Some(j) => {
                        let mut path = sel.path.clone();
                        path[0] = j - k;
                        Span::new(path, sel.start, sel.end)
                    }
                    None => Span::root(sel.start - k, sel.end - k),
                };
                let (e, left, right) = go(r, &sel2, mode)?;
                Ok((e, left, Proof::prod_r(l.clone(), right)))
            } else {
                let (e, l0, r0) = go(l, &Span::root(sel.start, k), mode)?;
                let (f, l1, r1) = go(r, &Span::root(0, sel.end - k), mode)?;
                let right = Proof::prod_l(Proof::prod_r(r0, r1), &Span::root(sel.start, sel.start + 2))?;
                Ok((Type::prod(e, f), Proof::prod_r(l0, l1), right))
            }
        }
        Rule::ProdL => through(p, sel, mode, 0, &pr.path, pr.start, pr.end, 2, &|q, path, at| {
            Proof::prod_l(q, &Span::new(path.to_vec(), at, at + 2))
        }),
        Rule::DiaL => through(p, sel, mode, 0, &pr.path, pr.start, pr.end, 1, &|q, path, at| {
            Proof::dia_l(q, &one(path, at))
        }),
        Rule::UnitL => through(p, sel, mode, 0, &pr.path, pr.start, pr.end, 0, &|q, path, at| {
            Proof::unit_l(q, path, at)
        }),
        Rule::BoxDownL => {
            let i = match &ant.level(&pr.path).expect("principal")[pr.start] {
                Tree::Bracket(i, _) => *i,
                _ => return Err(internal("BoxDownL without a bracket")),
            };
            let mut inner_path = pr.path.clone();
            inner_path.push(pr.start);
            if sel.path == inner_path {
                // the □↓A leaf itself
                let (e, left, right) = go(&p.premises[0], &one(&pr.path, pr.start), mode)?;
                let left = Proof::box_r(Proof::box_l(left, &Span::root(0, 1), i)?)?;
                let right = Proof::box_l(right, &one(&pr.path, pr.start), i)?;
                return Ok((Type::boxd(i, e), left, right));
            }
            through(p, sel, mode, 0, &pr.path, pr.start, pr.end, 1, &|q, path, at| {
                Proof::box_l(q, &one(path, at), i)
            })
        }
        Rule::UnderL => under_l(p, sel, mode),
        Rule::OverL => over_l(p, sel, mode),
    }
}

fn under_l(p: &Proof, sel: &Span, mode: Mode) -> Result<Out> {
    let pr = &p.principal;
    let (path, a, b) = (&pr.path, pr.start, pr.end);
    let (arg, main) = (&p.premises[0], &p.premises[1]);
    let (s, e) = (sel.start, sel.end);
    let same = sel.path == *path;
    let rel = relate(sel, path, a, b);
    let within_arg = rel == Rel::Inside && (!same || e < b);
    if within_arg {
        let (x, left, right) = go(arg, &rebase(sel, path, a), mode)?;
        return Ok((x, left, Proof::under_l(right, main.clone(), &one(path, a))?));
    }
    if same && a < s && s < b && e >= b {
        // Γ'' A\B Π selected, Γ' stays outside
        let (x, l0, r0) = go(arg, &Span::root(0, s - a), mode)?;
        let (f, l1, r1) = go(main, &Span::new(path.clone(), a, a + 1 + (e - b)), mode)?;
        let left = Proof::under_r(Proof::under_l(r0, l1, &Span::root(0, 1))?)?;
        let right = Proof::under_l(l0, r1, &one(path, a))?;
        return Ok((Type::under(x, f.clone()), left, right));
    }
    if same && s < a && a < e && e < b {
        // Π Γ' selected with Γ' a prefix of the argument
        let (f, l0, r0) = go(arg, &Span::root(0, e - a), mode)?;
        let (x, l1, r1) = go(main, &Span::new(path.clone(), s, a), mode)?;
        let right = Proof::under_l(r0, r1, &one(path, s + 1))?;
        let right = Proof::prod_l(right, &Span::new(path.clone(), s, s + 2))?;
        return Ok((Type::prod(x, f), Proof::prod_r(l1, l0), right));
    }
    let arg_p = arg.clone();
    through(p, sel, mode, 1, path, a, b, 1, &move |q, qp, at| Proof::under_l(arg_p.clone(), q, &one(qp, at)))
}

fn over_l(p: &Proof, sel: &Span, mode: Mode) -> Result<Out> {
    let pr = &p.principal;
    let (path, a, b) = (&pr.path, pr.start, pr.end);
    let (arg, main) = (&p.premises[0], &p.premises[1]);
    let (s, e) = (sel.start, sel.end);
    let same = sel.path == *path;
    let rel = relate(sel, path, a, b);
    let within_arg = rel == Rel::Inside && (!same || s > a);
    if within_arg {
        let (x, left, right) = go(arg, &rebase(sel, path, a + 1), mode)?;
        return Ok((x, left, Proof::over_l(right, main.clone(), &one(path, a))?));
    }
    if same && s <= a && a < e && e < b {
        // Π B/A Γ' selected, Γ'' stays outside
        let (x, l0, r0) = go(arg, &Span::root(e - (a + 1), b - (a + 1)), mode)?;
        let (f, l1, r1) = go(main, &Span::new(path.clone(), s, a + 1), mode)?;
        let left = Proof::over_r(Proof::over_l(r0, l1, &Span::root(a - s, a - s + 1))?)?;
        let right = Proof::over_l(l0, r1, &one(path, s))?;
        return Ok((Type::over(f, x.clone()), left, right));
    }
    if same && a < s && s < b && e > b {
        // Γ'' Π selected with Γ'' a suffix of the argument
        let (f, l0, r0) = go(arg, &Span::root(s - (a + 1), b - (a + 1)), mode)?;
        let (x, l1, r1) = go(main, &Span::new(path.clone(), a + 1, a + 1 + (e - b)), mode)?;
        let right = Proof::over_l(r0, r1, &one(path, a))?;
        let right = Proof::prod_l(right, &Span::new(path.clone(), s, s + 2))?;
        return Ok((Type::prod(f, x), Proof::prod_r(l0, l1), right));
    }
    let arg_p = arg.clone();
    through(p, sel, mode, 1, path, a, b, 1, &move |q, qp, at| Proof::over_l(arg_p.clone(), q, &one(qp, at)))
}
