//! Bounded type enumeration, the finite rule sets `S`, `T` (and their
//! guarded variants `S'`, `T'`) and the compilation of a categorial grammar
//! into an equivalent context-free grammar.

mod cache;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;

use rayon::prelude::*;

use crate::cfgkit::{Cfg, Symbol};
use crate::error::{Error, Result};
use crate::freegroup::{interpret_erased, GroupWord};
use crate::prover::{Limits, Proof, Prover};
use crate::syntax::{Calculus, Grammar, Hedge, Sequent, Tree, Type};

pub use cache::{cache_path, read_cache, write_cache};

/// All types of length at most `m` over the primitives `b` (plus the atom
/// `◊1` when `guarded`), each once, ordered by length and then by printed
/// form.
pub fn enum_types(b: &BTreeSet<String>, m: usize, guarded: bool) -> Vec<Type> {
    let mut by_len: Vec<Vec<Type>> = vec![Vec::new(); m + 1];
    for l in 1..=m {
        let mut level: Vec<Type> = Vec::new();
        if l == 1 {
            level.extend(b.iter().map(Type::prim));
        }
        if l == 2 && guarded {
            level.push(Type::dia(None, Type::Unit));
        }
        for l1 in 1..l {
            for x in &by_len[l1] {
                for y in &by_len[l - l1] {
                    level.push(Type::under(x.clone(), y.clone()));
                    level.push(Type::over(x.clone(), y.clone()));
                    level.push(Type::prod(x.clone(), y.clone()));
                }
            }
        }
        if l > 2 {
            for x in &by_len[l - 2] {
                level.push(Type::dia(None, x.clone()));
                level.push(Type::boxd(None, x.clone()));
            }
        }
        let mut keyed: Vec<(String, Type)> = level.into_iter().map(|t| (t.to_string(), t)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        by_len[l] = keyed.into_iter().map(|(_, t)| t).collect();
    }
    by_len.into_iter().flatten().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Guarded,
}

/// The sets `S_{B,m}` and `T_{B,m}` (or `S'`, `T'`), each member with its
/// canonical proof.
#[derive(Clone, Debug)]
pub struct RuleSets {
    pub s: BTreeSet<Sequent>,
    pub t: BTreeSet<Sequent>,
    pub mode: Mode,
    pub b: BTreeSet<String>,
    pub m: usize,
    pub calculus: Calculus,
    pub proofs: HashMap<Sequent, Proof>,
}

impl RuleSets {
    pub fn contains_s(&self, s: &Sequent) -> bool {
        self.s.contains(s)
    }

    pub fn contains_t(&self, s: &Sequent) -> bool {
        self.t.contains(s)
    }

    pub fn proof(&self, s: &Sequent) -> Option<&Proof> {
        self.proofs.get(s)
    }

    /// `T` as a slice-friendly list in canonical order.
    pub fn t_list(&self) -> Vec<Sequent> {
        self.t.iter().cloned().collect()
    }
}

/// Options for [`build_rulesets_with`] and [`compile_cfg_with`].
#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Directory for the rule-set cache; no caching when `None`.
    pub cache_dir: Option<PathBuf>,
    /// Per-sequent prover limits.
    pub limits: Limits,
    /// Replace the grammar's own `m` (compile only).
    pub m_override: Option<usize>,
    /// Refuse to compile when `|N|` would exceed this (default 20000).
    pub max_nonterminals: Option<usize>,
}

const DEFAULT_MAX_NONTERMINALS: usize = 20_000;

fn mode_of(calc: Calculus) -> Result<Mode> {
    match calc {
        Calculus::Ldia => Ok(Mode::Plain),
        Calculus::L1starDia => Ok(Mode::Guarded),
        other => Err(Error::Precondition(format!("rule sets are defined for Ldia and L1starDia, not {other}"))),
    }
}

/// Candidate antecedents: `n <= 2` (and `n >= 1` unless guarded), paired
/// with every succedent of equal free-group image.
pub fn candidates(types: &[Type], guarded: bool) -> Vec<Sequent> {
    let words: Vec<GroupWord> = types.iter().map(interpret_erased).collect();
    let mut by_word: HashMap<&GroupWord, Vec<usize>> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        by_word.entry(w).or_default().push(i);
    }
    let succ = |w: &GroupWord| by_word.get(w).map(Vec::as_slice).unwrap_or(&[]);
    let mut out = Vec::new();
    if guarded {
        for &c in succ(&GroupWord::identity()) {
            out.push(Sequent::flat([], types[c].clone()));
        }
    }
    for (i, a) in types.iter().enumerate() {
        for &c in succ(&words[i]) {
            out.push(Sequent::flat([a.clone()], types[c].clone()));
        }
    }
    let pairs: Vec<Vec<Sequent>> = (0..types.len())
        .into_par_iter()
        .map(|i| {
            let mut v = Vec::new();
            for j in 0..types.len() {
                let w = words[i].mul(&words[j]);
                for &c in succ(&w) {
                    v.push(Sequent::flat([types[i].clone(), types[j].clone()], types[c].clone()));
                }
            }
            v
        })
        .collect();
    out.extend(pairs.into_iter().flatten());
    out
}

/// The bracket bridges `⟨A⟩ => ◊A`, `⟨□↓A⟩ => A` for `||A|| <= m - 2`, and
/// `⟨⟩ => ◊1` when guarded.
pub fn bridges(types: &[Type], m: usize, guarded: bool) -> Vec<Sequent> {
    let mut out = Vec::new();
    if guarded {
        out.push(Sequent::new(Hedge(vec![Tree::bracket(None, Vec::new())]), Type::dia(None, Type::Unit)));
    }
    for a in types.iter().filter(|a| a.length() + 2 <= m) {
        out.push(Sequent::new(Hedge(vec![Tree::bracket(None, vec![Tree::Leaf(a.clone())])]), Type::dia(None, a.clone())));
        out.push(Sequent::new(Hedge(vec![Tree::bracket(None, vec![Tree::Leaf(Type::boxd(None, a.clone()))])]), a.clone()));
    }
    out
}

/// Prove every sequent, in parallel chunks with a fresh memo per chunk so
/// memory stays bounded. Output order follows input order.
fn prove_all(seqs: &[Sequent], calc: Calculus, limits: Limits) -> Result<Vec<Option<Proof>>> {
    let chunks: Vec<Vec<Option<Proof>>> = seqs
        .par_chunks(4096)
        .map(|chunk| {
            let mut prover = Prover::with_limits(calc, limits);
            chunk.iter().map(|s| prover.prove(s)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Build `S`/`T` for `calc` (`Ldia` gives the plain sets, `L1starDia` the
/// guarded ones).
pub fn build_rulesets(b: &BTreeSet<String>, m: usize, calc: Calculus) -> Result<RuleSets> {
    build_rulesets_with(b, m, calc, &BuildOptions::default())
}

pub fn build_rulesets_with(b: &BTreeSet<String>, m: usize, calc: Calculus, opts: &BuildOptions) -> Result<RuleSets> {
    let mode = mode_of(calc)?;
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let guarded = mode == Mode::Guarded;
    let types = enum_types(b, m, guarded);
    let cached = match &opts.cache_dir {
        Some(dir) => read_cache(&cache_path(dir, b, m, calc), b, m, calc)?,
        None => None,
    };
    let mut proofs: HashMap<Sequent, Proof> = HashMap::new();
    let members: Vec<Sequent> = match cached {
        Some(list) => list,
        None => {
            let cands = candidates(&types, guarded);
            let results = prove_all(&cands, calc, opts.limits)?;
            let mut found = Vec::new();
            for (seq, p) in cands.into_iter().zip(results) {
                if let Some(p) = p {
                    found.push(seq.clone());
                    proofs.insert(seq, p);
                }
            }
            if let Some(dir) = &opts.cache_dir {
                write_cache(&cache_path(dir, b, m, calc), b, m, calc, &found)?;
            }
            found
        }
    };
    let s: BTreeSet<Sequent> = members.into_iter().collect();
    let mut t = s.clone();
    t.extend(bridges(&types, m, guarded));
    let missing: Vec<Sequent> = t.iter().filter(|x| !proofs.contains_key(*x)).cloned().collect();
    for (seq, p) in missing.iter().zip(prove_all(&missing, calc, opts.limits)?) {
        match p {
            Some(p) => {
                proofs.insert(seq.clone(), p);
            }
            None => return Err(Error::Unprovable(seq.to_string())),
        }
    }
    Ok(RuleSets { s, t, mode, b: b.clone(), m, calculus: calc, proofs })
}

/// Compile `g` into the context-free grammar `G'` of the equivalence proof.
/// `calc` is `Ldia` or `LstarDia`; the latter builds the guarded sets in
/// `L1starDia` and adds `◊1 -> ε`.
pub fn compile_cfg(g: &Grammar, calc: Calculus) -> Result<Cfg> {
    compile_cfg_with(g, calc, &BuildOptions::default())
}

/// `m` for `g`: the largest length among lexical types and the target.
pub fn grammar_bound(g: &Grammar) -> usize {
    g.max_length()
}

pub fn compile_cfg_with(g: &Grammar, calc: Calculus, opts: &BuildOptions) -> Result<Cfg> {
    let rules_calc = match calc {
        Calculus::Ldia => Calculus::Ldia,
        Calculus::LstarDia => Calculus::L1starDia,
        other => return Err(Error::Precondition(format!("grammars are compiled for Ldia or LstarDia, not {other}"))),
    };
    for (a, t) in &g.lexicon {
        if !calc.admits_type(t) || t.has_unit() {
            return Err(Error::Precondition(format!("lexical type `{t}` of `{a}` is not a {calc} type")));
        }
    }
    let guarded = rules_calc == Calculus::L1starDia;
    let b = g.primitives();
    let m = opts.m_override.unwrap_or_else(|| grammar_bound(g));
    let types = enum_types(&b, m, guarded);
    let cap = opts.max_nonterminals.unwrap_or(DEFAULT_MAX_NONTERMINALS);
    if types.len() > cap {
        return Err(Error::Resource(format!("{} nonterminals for m = {m} exceed the cap of {cap}", types.len())));
    }
    let rules = build_rulesets_with(&b, m, rules_calc, opts)?;
    let mut cfg = Cfg::new(g.distinguished.to_string());
    cfg.nonterminals.extend(types.iter().map(Type::to_string));
    cfg.terminals.extend(g.alphabet.iter().cloned());
    let nt = |t: &Type| Symbol::N(t.to_string());
    for s in &rules.s {
        cfg.add(s.succedent.to_string(), s.antecedent.yield_types().iter().map(nt).collect());
    }
    if guarded {
        cfg.add(Type::dia(None, Type::Unit).to_string(), Vec::new());
    }
    let short: Vec<&Type> = types.iter().filter(|a| a.length() + 2 <= m).collect();
    for a in &short {
        cfg.add(Type::dia(None, (*a).clone()).to_string(), vec![nt(a)]);
    }
    for a in &short {
        cfg.add(a.to_string(), vec![nt(&Type::boxd(None, (*a).clone()))]);
    }
    for (a, t) in &g.lexicon {
        cfg.add(t.to_string(), vec![Symbol::T(a.clone())]);
    }
    Ok(cfg)
}

/// Number of members of `S` per antecedent length, for reports.
pub fn s_profile(r: &RuleSets) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for s in &r.s {
        *out.entry(s.antecedent.len()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests;
