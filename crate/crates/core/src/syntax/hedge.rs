use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Type;

/// A type tree: a labelled leaf or a (possibly indexed) bracket around a hedge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(Type),
    Bracket(Option<u32>, Hedge),
}

/// A finite, possibly empty, sequence of type trees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hedge(pub Vec<Tree>);

/// A contiguous run of siblings `start..end` inside the level reached by
/// following the bracket positions in `path` from the root hedge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub path: Vec<usize>,
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(path: Vec<usize>, start: usize, end: usize) -> Span {
        Span { path, start, end }
    }

    pub fn root(start: usize, end: usize) -> Span {
        Span { path: Vec::new(), start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// The span one level down, as seen from inside the bracket at `index`
    /// of the current top level. `None` if the span is not inside it.
    pub fn strip_prefix(&self, index: usize) -> Option<Span> {
        match self.path.split_first() {
            Some((&first, rest)) if first == index => {
                Some(Span::new(rest.to_vec(), self.start, self.end))
            }
            _ => None,
        }
    }

    /// The same span seen from one level up, inside the bracket at `index`.
    pub fn under_bracket(&self, index: usize) -> Span {
        let mut path = Vec::with_capacity(self.path.len() + 1);
        path.push(index);
        path.extend_from_slice(&self.path);
        Span::new(path, self.start, self.end)
    }
}

impl Tree {
    pub fn leaf(t: Type) -> Tree {
        Tree::Leaf(t)
    }

    pub fn bracket(index: Option<u32>, trees: Vec<Tree>) -> Tree {
        Tree::Bracket(index, Hedge(trees))
    }

    pub fn as_leaf(&self) -> Option<&Type> {
        match self {
            Tree::Leaf(t) => Some(t),
            Tree::Bracket(..) => None,
        }
    }
}

impl From<Vec<Tree>> for Hedge {
    fn from(v: Vec<Tree>) -> Self {
        Hedge(v)
    }
}

impl Hedge {
    pub fn empty() -> Hedge {
        Hedge(Vec::new())
    }

    /// A bracket-free hedge with the given leaves.
    pub fn flat(types: impl IntoIterator<Item = Type>) -> Hedge {
        Hedge(types.into_iter().map(Tree::Leaf).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trees(&self) -> &[Tree] {
        &self.0
    }

    /// The leaf labels from left to right, brackets erased.
    pub fn yield_types(&self) -> Vec<Type> {
        let mut out = Vec::new();
        self.collect_yield(&mut out);
        out
    }

    fn collect_yield(&self, out: &mut Vec<Type>) {
        for t in &self.0 {
            match t {
                Tree::Leaf(ty) => out.push(ty.clone()),
                Tree::Bracket(_, h) => h.collect_yield(out),
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.0
            .iter()
            .map(|t| match t {
                Tree::Leaf(_) => 1,
                Tree::Bracket(_, h) => h.leaf_count(),
            })
            .sum()
    }

    pub fn bracket_count(&self) -> usize {
        self.0
            .iter()
            .map(|t| match t {
                Tree::Leaf(_) => 0,
                Tree::Bracket(_, h) => 1 + h.bracket_count(),
            })
            .sum()
    }

    pub fn is_flat(&self) -> bool {
        self.0.iter().all(|t| matches!(t, Tree::Leaf(_)))
    }

    /// Does an empty bracket pair occur anywhere?
    pub fn has_empty_bracket(&self) -> bool {
        self.0.iter().any(|t| match t {
            Tree::Leaf(_) => false,
            Tree::Bracket(_, h) => h.is_empty() || h.has_empty_bracket(),
        })
    }

    pub fn for_each_type<'a>(&'a self, f: &mut impl FnMut(&'a Type)) {
        for t in &self.0 {
            match t {
                Tree::Leaf(ty) => f(ty),
                Tree::Bracket(_, h) => h.for_each_type(f),
            }
        }
    }

    pub fn for_each_bracket_index(&self, f: &mut impl FnMut(Option<u32>)) {
        for t in &self.0 {
            if let Tree::Bracket(i, h) = t {
                f(*i);
                h.for_each_bracket_index(f);
            }
        }
    }

    pub fn sigma(&self, name: &str) -> usize {
        let mut n = 0;
        self.for_each_type(&mut |t| n += t.sigma(name));
        n
    }

    /// Occurrences of `<index` (one per bracket pair) plus modalities with
    /// that index.
    pub fn tau(&self, index: Option<u32>) -> usize {
        let mut n = 0;
        self.for_each_type(&mut |t| n += t.tau(index));
        self.for_each_bracket_index(&mut |i| n += usize::from(i == index));
        n
    }

    pub fn connectives(&self) -> usize {
        let mut n = 0;
        self.for_each_type(&mut |t| n += t.connectives());
        n
    }

    pub fn modalities(&self) -> usize {
        let mut n = 0;
        self.for_each_type(&mut |t| n += t.modalities());
        n
    }

    pub fn primitives(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.for_each_type(&mut |t| t.collect_primitives(&mut out));
        out
    }

    pub fn indices(&self) -> BTreeSet<Option<u32>> {
        let mut out = BTreeSet::new();
        self.for_each_type(&mut |t| t.collect_indices(&mut out));
        self.for_each_bracket_index(&mut |i| {
            out.insert(i);
        });
        out
    }

    pub fn deindex(&self, theta: &BTreeMap<String, String>) -> Hedge {
        Hedge(
            self.0
                .iter()
                .map(|t| match t {
                    Tree::Leaf(ty) => Tree::Leaf(ty.deindex(theta)),
                    Tree::Bracket(_, h) => Tree::Bracket(None, h.deindex(theta)),
                })
                .collect(),
        )
    }

    /// The sibling list reached by following `path`.
    pub fn level(&self, path: &[usize]) -> Option<&[Tree]> {
        let mut cur = &self.0;
        for &i in path {
            match cur.get(i) {
                Some(Tree::Bracket(_, h)) => cur = &h.0,
                _ => return None,
            }
        }
        Some(cur)
    }

    pub fn level_mut(&mut self, path: &[usize]) -> Option<&mut Vec<Tree>> {
        let mut cur = &mut self.0;
        for &i in path {
            match cur.get_mut(i) {
                Some(Tree::Bracket(_, h)) => cur = &mut h.0,
                _ => return None,
            }
        }
        Some(cur)
    }

    pub fn contains_span(&self, span: &Span) -> bool {
        self.level(&span.path)
            .is_some_and(|l| span.start <= span.end && span.end <= l.len())
    }

    /// The trees covered by `span`. Panics if the span is out of range.
    pub fn slice(&self, span: &Span) -> Hedge {
        let level = self.level(&span.path).expect("span path out of range");
        Hedge(level[span.start..span.end].to_vec())
    }

    /// Replace the trees covered by `span` with `with`. Panics if the span is
    /// out of range.
    pub fn replace(&self, span: &Span, with: Vec<Tree>) -> Hedge {
        let mut out = self.clone();
        let level = out.level_mut(&span.path).expect("span path out of range");
        level.splice(span.start..span.end, with);
        out
    }

    /// Paths of all levels (the root and the inside of every bracket),
    /// outermost first.
    pub fn level_paths(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut i = 0;
        while i < out.len() {
            let path = out[i].clone();
            let level = self.level(&path).expect("own path");
            for (j, t) in level.iter().enumerate() {
                if matches!(t, Tree::Bracket(..)) {
                    let mut p = path.clone();
                    p.push(j);
                    out.push(p);
                }
            }
            i += 1;
        }
        out
    }

    /// Every span, including empty ones when `allow_empty`.
    pub fn spans(&self, allow_empty: bool) -> Vec<Span> {
        let mut out = Vec::new();
        for path in self.level_paths() {
            let n = self.level(&path).expect("own path").len();
            for start in 0..=n {
                for end in start..=n {
                    if start == end && !allow_empty {
                        continue;
                    }
                    out.push(Span::new(path.clone(), start, end));
                }
            }
        }
        out
    }

    /// The context obtained by cutting `span` out and leaving a hole.
    pub fn context_of(&self, span: &Span) -> Context {
        Context {
            hedge: self.replace(span, Vec::new()),
            hole: Hole { path: span.path.clone(), index: span.start },
        }
    }
}

/// Where the hole of a [`Context`] sits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hole {
    pub path: Vec<usize>,
    pub index: usize,
}

/// A hedge with exactly one hole, represented as the hedge without the hole
/// together with the insertion point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    pub hedge: Hedge,
    pub hole: Hole,
}

impl Context {
    /// The trivial context `_`.
    pub fn hole() -> Context {
        Context::default()
    }

    /// `Γ[Δ]`: splice the trees of `d` in place of the hole.
    pub fn plug(&self, d: &Hedge) -> Hedge {
        let span = Span::new(self.hole.path.clone(), self.hole.index, self.hole.index);
        self.hedge.replace(&span, d.0.clone())
    }

    /// The span that a hedge of `len` trees occupies once plugged.
    pub fn span_for(&self, len: usize) -> Span {
        Span::new(self.hole.path.clone(), self.hole.index, self.hole.index + len)
    }

    /// `compose(c, c')[d] = c[c'[d]]`.
    pub fn compose(&self, inner: &Context) -> Context {
        let hedge = self.plug(&inner.hedge);
        let hole = match inner.hole.path.split_first() {
            None => Hole {
                path: self.hole.path.clone(),
                index: self.hole.index + inner.hole.index,
            },
            Some((&first, rest)) => {
                let mut path = self.hole.path.clone();
                path.push(self.hole.index + first);
                path.extend_from_slice(rest);
                Hole { path, index: inner.hole.index }
            }
        };
        Context { hedge, hole }
    }

    /// The yield on either side of the hole.
    pub fn yield_around(&self) -> (Vec<Type>, Vec<Type>) {
        let marker = Type::prim("\u{0}hole");
        let full = self.plug(&Hedge::flat([marker.clone()])).yield_types();
        let pos = full.iter().position(|t| *t == marker).expect("hole present");
        (full[..pos].to_vec(), full[pos + 1..].to_vec())
    }

    pub fn sigma(&self, name: &str) -> usize {
        self.hedge.sigma(name)
    }

    pub fn tau(&self, index: Option<u32>) -> usize {
        self.hedge.tau(index)
    }
}

fn write_trees(f: &mut fmt::Formatter<'_>, trees: &[Tree], hole: Option<&Hole>) -> fmt::Result {
    let mut first = true;
    let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
        if !std::mem::replace(&mut first, false) {
            f.write_str(" ")?;
        }
        Ok(())
    };
    let hole_here = hole.filter(|h| h.path.is_empty()).map(|h| h.index);
    for (i, t) in trees.iter().enumerate() {
        if hole_here == Some(i) {
            sep(f)?;
            f.write_str("_")?;
        }
        sep(f)?;
        match t {
            Tree::Leaf(ty) => write!(f, "{ty}")?,
            Tree::Bracket(index, h) => {
                let inner = hole.and_then(|hl| match hl.path.split_first() {
                    Some((&first, rest)) if first == i => Some(Hole {
                        path: rest.to_vec(),
                        index: hl.index,
                    }),
                    _ => None,
                });
                match index {
                    Some(k) => write!(f, "[:{k}")?,
                    None => f.write_str("[")?,
                }
                if !h.is_empty() || inner.is_some() {
                    f.write_str(" ")?;
                    write_trees(f, &h.0, inner.as_ref())?;
                }
                match index {
                    Some(k) => write!(f, " ]:{k}")?,
                    None => f.write_str(" ]")?,
                }
            }
        }
    }
    if hole_here == Some(trees.len()) {
        sep(f)?;
        f.write_str("_")?;
    }
    Ok(())
}

impl fmt::Display for Hedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_trees(f, &self.0, None)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_trees(f, std::slice::from_ref(self), None)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_trees(f, &self.hedge.0, Some(&self.hole))
    }
}

impl Hedge {
    /// Every non-indexed hedge with yield `leaves` and at most `max_brackets`
    /// bracket pairs, each exactly once. Empty brackets only if `allow_empty`.
    pub fn bracketings(leaves: &[Type], max_brackets: usize, allow_empty: bool) -> Vec<Hedge> {
        let mut memo = HashMap::new();
        (0..=max_brackets)
            .flat_map(|c| exact_bracketings(leaves, 0, leaves.len(), c, allow_empty, &mut memo))
            .map(Hedge)
            .collect()
    }

    /// As [`Hedge::bracketings`] with exactly `brackets` bracket pairs.
    pub fn bracketings_exact(leaves: &[Type], brackets: usize, allow_empty: bool) -> Vec<Hedge> {
        exact_bracketings(leaves, 0, leaves.len(), brackets, allow_empty, &mut HashMap::new())
            .into_iter()
            .map(Hedge)
            .collect()
    }
}

type Memo = HashMap<(usize, usize, usize), Vec<Vec<Tree>>>;

fn exact_bracketings(leaves: &[Type], i: usize, j: usize, c: usize, empty: bool, memo: &mut Memo) -> Vec<Vec<Tree>> {
    if let Some(v) = memo.get(&(i, j, c)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if i == j && c == 0 {
        out.push(Vec::new());
    }
    if i < j {
        for rest in exact_bracketings(leaves, i + 1, j, c, empty, memo) {
            let mut v = vec![Tree::Leaf(leaves[i].clone())];
            v.extend(rest);
            out.push(v);
        }
    }
    if c > 0 {
        let lo = if empty { i } else { i + 1 };
        for l in lo..=j {
            for c1 in 0..c {
                let inner = exact_bracketings(leaves, i, l, c1, empty, memo);
                if inner.is_empty() {
                    continue;
                }
                let rest = exact_bracketings(leaves, l, j, c - 1 - c1, empty, memo);
                for a in &inner {
                    for b in &rest {
                        let mut v = vec![Tree::bracket(None, a.clone())];
                        v.extend(b.iter().cloned());
                        out.push(v);
                    }
                }
            }
        }
    }
    memo.insert((i, j, c), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_context, parse_hedge};

    #[test]
    fn plug_trivial_context_is_identity() {
        let h = parse_hedge("a [ b c ] d").unwrap();
        assert_eq!(Context::hole().plug(&h), h);
    }

    #[test]
    fn plug_splices_into_bracket() {
        let c = parse_context("[ _ q ]").unwrap();
        let d = parse_hedge("a b").unwrap();
        assert_eq!(c.plug(&d), parse_hedge("[ a b q ]").unwrap());
    }

    #[test]
    fn yield_erases_brackets() {
        let h = parse_hedge("[ [ p ] dia p \\ p ]").unwrap();
        let y: Vec<String> = h.yield_types().iter().map(|t| t.to_string()).collect();
        assert_eq!(y, ["p", "dia p \\ p"]);
    }

    #[test]
    fn context_round_trips_through_text() {
        for text in ["_", "a _", "[ _ ]", "[:2 a [:1 _ ]:1 ]:2 b", "[ ] _ [ a ]"] {
            let c = parse_context(text).unwrap();
            assert_eq!(c.to_string(), text);
        }
    }

    #[test]
    fn empty_bracket_prints_with_space() {
        assert_eq!(parse_hedge("[ ]").unwrap().to_string(), "[ ]");
        assert_eq!(parse_hedge("[:2 ]:2").unwrap().to_string(), "[:2 ]:2");
    }

    #[test]
    fn compose_matches_nested_plug() {
        let outer = parse_context("x [ _ y ]").unwrap();
        let inner = parse_context("[ a _ ] b").unwrap();
        let d = parse_hedge("q r").unwrap();
        assert_eq!(outer.compose(&inner).plug(&d), outer.plug(&inner.plug(&d)));
    }

    #[test]
    fn yield_around_hole() {
        let c = parse_context("a [ b _ ] c").unwrap();
        let (l, r) = c.yield_around();
        assert_eq!(l.len(), 2);
        assert_eq!(r.len(), 1);
    }
}
