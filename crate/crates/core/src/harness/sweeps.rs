use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Report;
use crate::cfgkit::cut_derives;
use crate::compiler::{build_rulesets, enum_types};
use crate::error::Result;
use crate::freegroup::{
    interpret, interpret_erased, interpret_hedge, interpret_hedge_erased, pentus_split, random_identity_tuple,
    Generator, GroupWord,
};
use crate::interpolate::{cut_complete, extract_interpolant, pentus_reduce, thin_index, verify_thin_eq2, Partition};
use crate::prover::{Proof, Prover};
use crate::syntax::{Calculus, Hedge, Sequent, Type};

/// Size limits of the exhaustive interpolation sweep.
#[derive(Clone, Debug)]
pub struct SweepBounds {
    pub prims: Vec<String>,
    pub max_leaves: usize,
    /// Connectives of the whole sequent, modalities included.
    pub max_connectives: usize,
    pub calc: Calculus,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds { prims: vec!["p".into(), "q".into()], max_leaves: 3, max_connectives: 3, calc: Calculus::Ldia }
    }
}

fn prim_set(prims: &[impl AsRef<str>]) -> BTreeSet<String> {
    prims.iter().map(|p| p.as_ref().to_string()).collect()
}

/// Unit-free types by number of connectives, `0 ..= max`.
fn types_by_connectives(prims: &[String], max: usize) -> Vec<Vec<Type>> {
    let mut by: Vec<Vec<Type>> = vec![prims.iter().map(Type::prim).collect()];
    for c in 1..=max {
        let mut level = Vec::new();
        for c1 in 0..c {
            for x in &by[c1] {
                for y in &by[c - 1 - c1] {
                    level.push(Type::under(x.clone(), y.clone()));
                    level.push(Type::over(x.clone(), y.clone()));
                    level.push(Type::prod(x.clone(), y.clone()));
                }
            }
        }
        for x in &by[c - 1] {
            level.push(Type::dia(None, x.clone()));
            level.push(Type::boxd(None, x.clone()));
        }
        by.push(level);
    }
    by
}

/// Every sequence of `1 ..= max_leaves` types followed by a succedent, with
/// total connectives at most `max`.
fn flat_shapes(by: &[Vec<Type>], max_leaves: usize, max: usize) -> Vec<(Vec<Type>, Type)> {
    fn go(by: &[Vec<Type>], left: usize, budget: usize, acc: &mut Vec<Type>, out: &mut Vec<(Vec<Type>, Type)>) {
        if !acc.is_empty() {
            for t in by[..=budget].iter().flatten() {
                out.push((acc.clone(), t.clone()));
            }
        }
        if left == 0 {
            return;
        }
        for (c, level) in by[..=budget].iter().enumerate() {
            for t in level {
                acc.push(t.clone());
                go(by, left - 1, budget - c, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(by, max_leaves, max, &mut Vec::new(), &mut out);
    out
}

/// Prove each sequent with one shared prover per chunk.
fn prove_each(seqs: &[Sequent], calc: Calculus) -> Result<Vec<Option<Proof>>> {
    let chunks: Vec<Vec<Option<Proof>>> = seqs
        .par_chunks(2048)
        .map(|chunk| {
            let mut prover = Prover::new(calc);
            chunk.iter().map(|s| prover.prove(s)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Every provable sequent within `bounds`, antecedents bracketed with at most
/// as many brackets as the sequent has modalities.
pub fn interpolation_population(bounds: &SweepBounds) -> Result<Vec<Proof>> {
    let by = types_by_connectives(&bounds.prims, bounds.max_connectives);
    let allow_empty = bounds.calc.is_starred();
    let mut cands = Vec::new();
    for (ant, succ) in flat_shapes(&by, bounds.max_leaves, bounds.max_connectives) {
        let mods: usize = ant.iter().map(Type::modalities).sum::<usize>() + succ.modalities();
        let target = interpret_erased(&succ);
        for h in Hedge::bracketings(&ant, mods, allow_empty) {
            if interpret_hedge_erased(&h) == target {
                cands.push(Sequent::new(h, succ.clone()));
            }
        }
    }
    Ok(prove_each(&cands, bounds.calc)?.into_iter().flatten().collect())
}

/// Conditions (i)-(iv) on every partition of every proof, then `||E|| = |⟦Δ⟧|`
/// on every partition of the thin-indexed proofs.
pub fn run_interpolation_on(proofs: &[Proof], calc: Calculus) -> Report {
    let mut r = Report::start(format!("interpolation sweep ({calc})"));
    let allow_empty = calc.has_unit();
    let results: Vec<(u64, u64, Option<String>)> = proofs
        .par_iter()
        .map(|p| {
            let s = &p.conclusion;
            let mut parts = 0;
            let mut thin = 0;
            for part in Partition::all(&s.antecedent, allow_empty) {
                parts += 1;
                match extract_interpolant(p, &part, calc) {
                    Ok(res) if res.conditions(calc).all() => {}
                    Ok(res) => return (parts, thin, Some(format!("{s} at `{part}`: {:?}", res.conditions(calc)))),
                    Err(e) => return (parts, thin, Some(format!("{s} at `{part}`: {e}"))),
                }
            }
            let ip = match thin_index(p) {
                Ok((ip, _)) => ip,
                Err(e) => return (parts, thin, Some(format!("thin_index {s}: {e}"))),
            };
            for part in Partition::all(&ip.conclusion.antecedent, allow_empty) {
                thin += 1;
                match verify_thin_eq2(&ip, &part) {
                    Ok(true) => {}
                    Ok(false) => return (parts, thin, Some(format!("{} at `{part}`: ||E|| differs", ip.conclusion))),
                    Err(e) => return (parts, thin, Some(format!("{} at `{part}`: {e}", ip.conclusion))),
                }
            }
            (parts, thin, None)
        })
        .collect();
    r.add("sequents", proofs.len() as u64);
    for (parts, thin, err) in results {
        r.add("partitions", parts);
        r.add("thin partitions", thin);
        if let Some(e) = err {
            r.fail(e);
        }
    }
    r.finish()
}

pub fn run_interpolation_sweep(bounds: &SweepBounds) -> Result<Report> {
    let pop = interpolation_population(bounds)?;
    Ok(run_interpolation_on(&pop, bounds.calc))
}

/// Seeded random tuples of `2 ..= max_n` words of length at most `word_len`
/// over `gens` generators multiplying to the identity; each must admit the
/// split returned by `pentus_split`.
pub fn run_pentus_trials(trials: usize, max_n: usize, word_len: usize, gens: usize, seed: u64) -> Report {
    let mut r = Report::start("adjacent split");
    let gens: Vec<Generator> = (0..gens).map(|i| Generator::Prim(format!("g{i}"))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = rng.gen_range(2..=max_n.max(2));
        let words = random_identity_tuple(&mut rng, n, word_len, &gens);
        let show = || words.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ; ");
        let product = words.iter().fold(GroupWord::identity(), |a, w| a.mul(w));
        if !product.is_identity() || words.iter().any(|w| w.len() > word_len) {
            r.fail(format!("generator produced a bad tuple: {}", show()));
            continue;
        }
        match pentus_split(&words) {
            Ok(k) if (1..n).contains(&k) => {
                let (u, v) = (&words[k - 1], &words[k]);
                if u.mul(v).len() <= u.len().max(v.len()) {
                    r.add("splits", 1);
                } else {
                    r.fail(format!("k = {k} is not a split of {}", show()));
                }
            }
            Ok(k) => r.fail(format!("k = {k} out of range for {}", show())),
            Err(e) => r.fail(format!("{}: {e}", show())),
        }
    }
    r.add("trials", trials as u64);
    r.finish()
}

/// Flat sequents `A1 .. An => A` with `1 <= n <= max_n` over `types` whose
/// erased free-group images agree.
fn flat_candidates(types: &[Type], max_n: usize) -> Vec<Sequent> {
    let words: Vec<GroupWord> = types.iter().map(interpret_erased).collect();
    let mut by_word: HashMap<&GroupWord, Vec<usize>> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        by_word.entry(w).or_default().push(i);
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, GroupWord)> = vec![(Vec::new(), GroupWord::identity())];
    while let Some((ant, w)) = stack.pop() {
        if !ant.is_empty() {
            for &c in by_word.get(&w).map(Vec::as_slice).unwrap_or(&[]) {
                out.push(Sequent::flat(ant.iter().map(|&i| types[i].clone()), types[c].clone()));
            }
        }
        if ant.len() < max_n {
            for (i, wi) in words.iter().enumerate() {
                let mut next = ant.clone();
                next.push(i);
                stack.push((next, w.mul(wi)));
            }
        }
    }
    out.sort();
    out
}

/// Every provable flat sequent with at most `max_n` types from
/// `enum_types(prims, m)` reduces to a Cut derivation over `S` that replays
/// to it, every intermediate conclusion being provable.
pub fn run_pentus_reduce(prims: &[&str], m: usize, max_n: usize) -> Result<Report> {
    let mut r = Report::start(format!("reduction to S (m = {m}, n <= {max_n})"));
    let b = prim_set(prims);
    let calc = Calculus::Ldia;
    let rules = build_rulesets(&b, m, calc)?;
    let types = enum_types(&b, m, false);
    let cands = flat_candidates(&types, max_n);
    let provable: Vec<Sequent> =
        cands.iter().zip(prove_each(&cands, calc)?).filter(|(_, p)| p.is_some()).map(|(s, _)| s.clone()).collect();
    r.add("candidates", cands.len() as u64);
    let outcomes: Vec<(u64, u64, Option<String>)> = provable
        .par_chunks(256)
        .flat_map_iter(|chunk| {
            let mut prover = Prover::new(calc);
            chunk
                .iter()
                .map(|s| {
                    let d = match pentus_reduce(s, &b, m, calc) {
                        Ok(d) => d,
                        Err(e) => return (0, 0, Some(format!("{s}: {e}"))),
                    };
                    match d.replay() {
                        Ok(t) if &t == s => {}
                        Ok(t) => return (0, 0, Some(format!("{s}: derivation replays to {t}"))),
                        Err(e) => return (0, 0, Some(format!("{s}: replay: {e}"))),
                    }
                    if let Some(l) = d.leaves().into_iter().find(|l| !rules.contains_s(l)) {
                        return (0, 0, Some(format!("{s}: leaf {l} is not in S")));
                    }
                    let mids = d.conclusions();
                    for c in &mids {
                        match prover.provable(c) {
                            Ok(true) => {}
                            Ok(false) => return (0, 0, Some(format!("{s}: intermediate {c} is unprovable"))),
                            Err(e) => return (0, 0, Some(format!("{s}: intermediate {c}: {e}"))),
                        }
                    }
                    (1, mids.len() as u64, None)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    for (ok, mids, err) in outcomes {
        r.add("reduced", ok);
        r.add("intermediate sequents", mids);
        if let Some(e) = err {
            r.fail(e);
        }
    }
    r.add("provable", provable.len() as u64);
    r.add("S", rules.s.len() as u64);
    Ok(r.finish())
}

/// All sequents over `enum_types(prims, m)` with yield at most `max_yield`
/// and at most as many brackets as modality occurrences, each with its proof
/// when provable in `calc` (`Ldia` or `L1starDia`).
pub fn cut_population(
    prims: &[&str],
    m: usize,
    max_yield: usize,
    calc: Calculus,
) -> Result<Vec<(Sequent, Option<Proof>)>> {
    let guarded = calc.has_unit();
    let types = enum_types(&prim_set(prims), m, guarded);
    let mut seqs = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(ant) = stack.pop() {
        let leaves: Vec<Type> = ant.iter().map(|&i| types[i].clone()).collect();
        let ant_mods: usize = leaves.iter().map(Type::modalities).sum();
        if !leaves.is_empty() || guarded {
            for succ in &types {
                for h in Hedge::bracketings(&leaves, ant_mods + succ.modalities(), guarded) {
                    seqs.push(Sequent::new(h, succ.clone()));
                }
            }
        }
        if ant.len() < max_yield {
            for i in 0..types.len() {
                let mut next = ant.clone();
                next.push(i);
                stack.push(next);
            }
        }
    }
    seqs.sort();
    seqs.dedup();
    let proofs = prove_each(&seqs, calc)?;
    Ok(seqs.into_iter().zip(proofs).collect())
}

/// Provable iff Cut-derivable from `T`, over `population`; derivations
/// found either way replay to the sequent and use only members of `T`.
pub fn run_cut_completeness(
    population: &[(Sequent, Option<Proof>)],
    prims: &[&str],
    m: usize,
    calc: Calculus,
) -> Result<Report> {
    let mut r = Report::start(format!("cut completeness ({calc}, m = {m})"));
    let b = prim_set(prims);
    let rules = build_rulesets(&b, m, calc)?;
    let base = rules.t_list();
    let outcomes: Vec<(bool, u64, Option<String>)> = population
        .par_iter()
        .map(|(s, p)| {
            let provable = p.is_some();
            let d = cut_derives(&base, s);
            if d.is_some() != provable {
                return (provable, 0, Some(format!("{s}: provable {provable}, cut-derivable {}", d.is_some())));
            }
            let mut built = vec![];
            if let Some(d) = d {
                built.push(d);
            }
            if provable {
                match cut_complete(s, &b, m, calc) {
                    Ok(d) => built.push(d),
                    Err(e) => return (provable, 0, Some(format!("{s}: cut_complete: {e}"))),
                }
            }
            for d in &built {
                match d.replay() {
                    Ok(t) if &t == s => {}
                    Ok(t) => return (provable, 0, Some(format!("{s}: derivation replays to {t}"))),
                    Err(e) => return (provable, 0, Some(format!("{s}: replay: {e}"))),
                }
                if let Some(l) = d.leaves().into_iter().find(|l| !rules.contains_t(l)) {
                    return (provable, 0, Some(format!("{s}: leaf {l} is not in T")));
                }
            }
            (provable, built.len() as u64, None)
        })
        .collect();
    for (provable, derivations, err) in outcomes {
        r.add("sequents", 1);
        r.add("provable", u64::from(provable));
        r.add("derivations checked", derivations);
        if let Some(e) = err {
            r.fail(e);
        }
    }
    r.add("T", base.len() as u64);
    Ok(r.finish())
}

/// `⟦Γ⟧ = ⟦C⟧` for the thin-indexed conclusion of every proof.
pub fn run_freegroup_soundness(proofs: &[Proof]) -> Report {
    let mut r = Report::start("free-group soundness");
    let outcomes: Vec<Option<String>> = proofs
        .par_iter()
        .map(|p| {
            let s = &p.conclusion;
            let (ip, _) = match thin_index(p) {
                Ok(x) => x,
                Err(e) => return Some(format!("thin_index {s}: {e}")),
            };
            let c = &ip.conclusion;
            match (interpret_hedge(&c.antecedent), interpret(&c.succedent)) {
                (Ok(a), Ok(b)) if a == b => None,
                (Ok(a), Ok(b)) => Some(format!("{c}: {a} vs {b}")),
                (Err(e), _) | (_, Err(e)) => Some(format!("{c}: {e}")),
            }
        })
        .collect();
    for err in outcomes {
        r.add("sequents", 1);
        if let Some(e) = err {
            r.fail(e);
        }
    }
    r.finish()
}
