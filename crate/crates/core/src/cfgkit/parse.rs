use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

use super::grammar::{Cfg, Symbol};

/// A derivation in the original grammar. Leaves carry no production; an
/// internal node records the index of its production in `Cfg::productions`
/// and has one child per right-hand-side symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTree {
    pub symbol: Symbol,
    pub production: Option<usize>,
    pub children: Vec<DerivationTree>,
}

impl DerivationTree {
    fn leaf(symbol: Symbol) -> DerivationTree {
        DerivationTree { symbol, production: None, children: Vec::new() }
    }

    /// The leaf symbols, left to right.
    pub fn frontier(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Symbol>) {
        if self.production.is_none() {
            out.push(self.symbol.clone());
        }
        for c in &self.children {
            c.collect(out);
        }
    }

    /// Number of production applications.
    pub fn steps(&self) -> usize {
        usize::from(self.production.is_some()) + self.children.iter().map(Self::steps).sum::<usize>()
    }

    /// Every internal node uses a production of `g` with matching sides.
    pub fn is_valid_in(&self, g: &Cfg) -> bool {
        match self.production {
            None => self.children.is_empty(),
            Some(i) => g.productions.get(i).is_some_and(|p| {
                self.symbol == Symbol::N(p.lhs.clone())
                    && p.rhs.len() == self.children.len()
                    && p.rhs.iter().zip(&self.children).all(|(s, c)| *s == c.symbol && c.is_valid_in(g))
            }),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        match self.production {
            None => writeln!(f, "{pad}{}", self.symbol),
            Some(_) => {
                write!(f, "{pad}{} ->", self.symbol)?;
                if self.children.is_empty() {
                    write!(f, " eps")?;
                }
                for c in &self.children {
                    write!(f, " {}", c.symbol)?;
                }
                writeln!(f)?;
                self.children.iter().try_for_each(|c| c.write(f, depth + 1))
            }
        }
    }
}

impl fmt::Display for DerivationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

type Sym = u32;

#[derive(Clone, Copy, Debug)]
enum Back {
    Token,
    Unary(usize, Sym),
    Binary(usize, usize, Sym, Sym),
}

#[derive(Clone, Debug)]
struct Rule {
    lhs: Sym,
    rhs: Vec<Sym>,
    /// Original production and the kept positions of its right side; `None`
    /// for the helper rules introduced by binarization.
    origin: Option<(usize, Vec<usize>)>,
}

/// CKY membership over the ε-free, binarized image of a grammar. Built once
/// and queried many times.
#[derive(Clone, Debug)]
pub struct Parser {
    g: Cfg,
    ids: HashMap<Symbol, Sym>,
    syms: Vec<Option<Symbol>>,
    rules: Vec<Rule>,
    unary: HashMap<Sym, Vec<usize>>,
    binary: HashMap<(Sym, Sym), Vec<usize>>,
    /// For each nullable nonterminal, a production whose right side is
    /// nullable through strictly earlier witnesses.
    null_witness: BTreeMap<String, usize>,
}

impl Parser {
    pub fn new(g: &Cfg) -> Parser {
        let mut p = Parser {
            g: g.clone(),
            ids: HashMap::new(),
            syms: Vec::new(),
            rules: Vec::new(),
            unary: HashMap::new(),
            binary: HashMap::new(),
            null_witness: BTreeMap::new(),
        };
        p.find_null_witnesses();
        let null: BTreeSet<String> = p.null_witness.keys().cloned().collect();
        for (pi, prod) in g.productions.iter().enumerate() {
            let lhs = p.intern(Symbol::N(prod.lhs.clone()));
            for kept in kept_positions(&prod.rhs, &null) {
                if kept.is_empty() || (kept.len() == 1 && prod.rhs[kept[0]] == Symbol::N(prod.lhs.clone())) {
                    continue;
                }
                let rhs: Vec<Sym> = kept.iter().map(|&k| p.intern(prod.rhs[k].clone())).collect();
                p.add_binarized(lhs, rhs, (pi, kept));
            }
        }
        p
    }

    pub fn grammar(&self) -> &Cfg {
        &self.g
    }

    fn intern(&mut self, s: Symbol) -> Sym {
        if let Some(&i) = self.ids.get(&s) {
            return i;
        }
        let i = self.syms.len() as Sym;
        self.ids.insert(s.clone(), i);
        self.syms.push(Some(s));
        i
    }

    fn helper(&mut self) -> Sym {
        self.syms.push(None);
        (self.syms.len() - 1) as Sym
    }

    fn push_rule(&mut self, r: Rule) {
        let i = self.rules.len();
        match r.rhs.as_slice() {
            [x] => self.unary.entry(*x).or_default().push(i),
            [x, y] => self.binary.entry((*x, *y)).or_default().push(i),
            _ => unreachable!("binarized"),
        }
        self.rules.push(r);
    }

    fn add_binarized(&mut self, lhs: Sym, rhs: Vec<Sym>, origin: (usize, Vec<usize>)) {
        if rhs.len() <= 2 {
            return self.push_rule(Rule { lhs, rhs, origin: Some(origin) });
        }
        // A -> X0 H1, H1 -> X1 H2, ..., Hk -> Xk-1 Xk
        let mut left = lhs;
        let mut origin = Some(origin);
        for &x in &rhs[..rhs.len() - 2] {
            let h = self.helper();
            self.push_rule(Rule { lhs: left, rhs: vec![x, h], origin: origin.take() });
            left = h;
        }
        let n = rhs.len();
        self.push_rule(Rule { lhs: left, rhs: vec![rhs[n - 2], rhs[n - 1]], origin: None });
    }

    fn find_null_witnesses(&mut self) {
        loop {
            let mut changed = false;
            for (i, p) in self.g.productions.iter().enumerate() {
                if !self.null_witness.contains_key(&p.lhs)
                    && p.rhs.iter().all(|s| matches!(s, Symbol::N(n) if self.null_witness.contains_key(n)))
                {
                    self.null_witness.insert(p.lhs.clone(), i);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    pub fn is_nullable(&self, nt: &str) -> bool {
        self.null_witness.contains_key(nt)
    }

    fn eps_tree(&self, nt: &str) -> DerivationTree {
        let i = self.null_witness[nt];
        let children = self.g.productions[i].rhs.iter().map(|s| self.eps_tree(s.name())).collect();
        DerivationTree { symbol: Symbol::N(nt.to_string()), production: Some(i), children }
    }

    fn check_symbol(&self, s: &Symbol) -> Result<()> {
        if self.g.has_symbol(s) {
            Ok(())
        } else {
            Err(Error::UnknownSymbol(s.to_string()))
        }
    }

    /// A derivation of `s` from the nonterminal `nt`, if `nt ⇒* s`.
    pub fn derives(&self, nt: &str, s: &[Symbol]) -> Result<Option<DerivationTree>> {
        let root = Symbol::N(nt.to_string());
        self.check_symbol(&root)?;
        for x in s {
            self.check_symbol(x)?;
        }
        if s.is_empty() {
            return Ok(self.is_nullable(nt).then(|| self.eps_tree(nt)));
        }
        let Some(&target) = self.ids.get(&root) else { return Ok(None) };
        let chart = self.chart(s);
        let n = s.len();
        if !chart[0][n - 1].contains_key(&target) {
            return Ok(None);
        }
        Ok(Some(self.tree(&chart, target, 0, n)))
    }

    /// `true` iff the start symbol derives the terminal string `w`.
    pub fn accepts(&self, w: &[&str]) -> bool {
        let s: Vec<Symbol> = w.iter().map(|t| Symbol::T(t.to_string())).collect();
        if s.iter().any(|x| !self.g.has_symbol(x)) {
            return false;
        }
        if s.is_empty() {
            return self.is_nullable(&self.g.start);
        }
        let Some(start) = self.ids.get(&Symbol::N(self.g.start.clone())) else { return false };
        self.chart(&s)[0][s.len() - 1].contains_key(start)
    }

    /// `chart[i][l - 1]` holds the symbols deriving `s[i..i + l]`.
    fn chart(&self, s: &[Symbol]) -> Vec<Vec<HashMap<Sym, Back>>> {
        let n = s.len();
        let mut chart: Vec<Vec<HashMap<Sym, Back>>> = vec![vec![HashMap::new(); n]; n];
        for (i, x) in s.iter().enumerate() {
            if let Some(&id) = self.ids.get(x) {
                chart[i][0].insert(id, Back::Token);
                self.close(&mut chart[i][0]);
            }
        }
        for len in 2..=n {
            for i in 0..=n - len {
                let mut cell = HashMap::new();
                for k in 1..len {
                    let (left, right) = (&chart[i][k - 1], &chart[i + k][len - k - 1]);
                    for &x in left.keys() {
                        for &y in right.keys() {
                            for &r in self.binary.get(&(x, y)).into_iter().flatten() {
                                cell.entry(self.rules[r].lhs).or_insert(Back::Binary(r, k, x, y));
                            }
                        }
                    }
                }
                self.close(&mut cell);
                chart[i][len - 1] = cell;
            }
        }
        chart
    }

    fn close(&self, cell: &mut HashMap<Sym, Back>) {
        let mut todo: Vec<Sym> = cell.keys().copied().collect();
        while let Some(x) = todo.pop() {
            for &r in self.unary.get(&x).into_iter().flatten() {
                let a = self.rules[r].lhs;
                if let std::collections::hash_map::Entry::Vacant(e) = cell.entry(a) {
                    e.insert(Back::Unary(r, x));
                    todo.push(a);
                }
            }
        }
    }

    /// The binarized right side matched by the entry for `x` over `i..j`,
    /// expanding helper nonterminals.
    fn flatten(&self, chart: &[Vec<HashMap<Sym, Back>>], x: Sym, i: usize, j: usize, out: &mut Vec<(Sym, usize, usize)>) {
        match chart[i][j - i - 1][&x] {
            Back::Binary(_, k, l, r) => {
                out.push((l, i, i + k));
                if self.syms[r as usize].is_none() {
                    self.flatten(chart, r, i + k, j, out);
                } else {
                    out.push((r, i + k, j));
                }
            }
            _ => unreachable!("helpers are only built by binary rules"),
        }
    }

    fn tree(&self, chart: &[Vec<HashMap<Sym, Back>>], x: Sym, i: usize, j: usize) -> DerivationTree {
        let symbol = self.syms[x as usize].clone().expect("not a helper");
        let (rule, parts) = match chart[i][j - i - 1][&x] {
            Back::Token => return DerivationTree::leaf(symbol),
            Back::Unary(r, y) => (r, vec![(y, i, j)]),
            Back::Binary(r, k, l, y) => {
                let mut parts = vec![(l, i, i + k)];
                if self.syms[y as usize].is_none() {
                    self.flatten(chart, y, i + k, j, &mut parts);
                } else {
                    parts.push((y, i + k, j));
                }
                (r, parts)
            }
        };
        let (pi, kept) = self.rules[rule].origin.clone().expect("top rule");
        let prod = &self.g.productions[pi];
        let mut parts = parts.into_iter();
        let children = (0..prod.rhs.len())
            .map(|pos| {
                if kept.contains(&pos) {
                    let (y, a, b) = parts.next().expect("one part per kept position");
                    self.tree(chart, y, a, b)
                } else {
                    self.eps_tree(prod.rhs[pos].name())
                }
            })
            .collect();
        DerivationTree { symbol, production: Some(pi), children }
    }
}

/// Every subsequence of positions of `rhs` that keeps all non-nullable ones.
fn kept_positions(rhs: &[Symbol], null: &BTreeSet<String>) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for (i, s) in rhs.iter().enumerate() {
        let optional = matches!(s, Symbol::N(n) if null.contains(n));
        let mut next = Vec::with_capacity(out.len() * 2);
        for v in out {
            if optional {
                next.push(v.clone());
            }
            let mut w = v;
            w.push(i);
            next.push(w);
        }
        out = next;
    }
    out
}

/// A derivation of `s` from `nt` in `g`, if one exists.
pub fn derives(g: &Cfg, nt: &str, s: &[Symbol]) -> Result<Option<DerivationTree>> {
    Parser::new(g).derives(nt, s)
}

/// All terminal strings of length at most `n` derivable from the start
/// symbol, by semi-naive fixpoint over length-bounded string sets.
pub fn language_upto(g: &Cfg, n: usize) -> BTreeSet<Vec<String>> {
    let mut full: HashMap<&str, BTreeSet<Vec<&str>>> = HashMap::new();
    let mut delta: HashMap<&str, BTreeSet<Vec<&str>>> = HashMap::new();
    let mut first = true;
    loop {
        let mut fresh: HashMap<&str, BTreeSet<Vec<&str>>> = HashMap::new();
        for p in &g.productions {
            // at least one nonterminal on the right side reads from `delta`,
            // except on the first round
            let nts: Vec<usize> = (0..p.rhs.len()).filter(|&i| !p.rhs[i].is_terminal()).collect();
            let pivots: Vec<Option<usize>> = if first { vec![None] } else { nts.iter().map(|&i| Some(i)).collect() };
            for pivot in pivots {
                let mut acc: BTreeSet<Vec<&str>> = [Vec::new()].into();
                for (i, s) in p.rhs.iter().enumerate() {
                    let set = match s {
                        Symbol::T(t) if n >= 1 => [vec![t.as_str()]].into(),
                        Symbol::T(_) => BTreeSet::new(),
                        Symbol::N(x) => {
                            let src = if Some(i) == pivot { &delta } else { &full };
                            src.get(x.as_str()).cloned().unwrap_or_default()
                        }
                    };
                    acc = concat(&acc, &set, n);
                    if acc.is_empty() {
                        break;
                    }
                }
                let known = full.get(p.lhs.as_str());
                for w in acc {
                    if known.is_none_or(|k| !k.contains(&w)) {
                        fresh.entry(p.lhs.as_str()).or_default().insert(w);
                    }
                }
            }
        }
        first = false;
        if fresh.is_empty() {
            break;
        }
        for (k, ws) in &fresh {
            full.entry(k).or_default().extend(ws.iter().cloned());
        }
        delta = fresh;
    }
    full.remove(g.start.as_str())
        .unwrap_or_default()
        .into_iter()
        .map(|w| w.into_iter().map(str::to_string).collect())
        .collect()
}

fn concat<'a>(a: &BTreeSet<Vec<&'a str>>, b: &BTreeSet<Vec<&'a str>>, n: usize) -> BTreeSet<Vec<&'a str>> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            if x.len() + y.len() <= n {
                let mut w = x.clone();
                w.extend_from_slice(y);
                out.insert(w);
            }
        }
    }
    out
}
