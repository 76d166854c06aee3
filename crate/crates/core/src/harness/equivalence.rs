use std::path::Path;

use rayon::prelude::*;

use super::{HarnessOptions, Report};
use crate::cfgkit::{language_upto, Cfg, Parser, Symbol};
use crate::compiler::{compile_cfg_with, BuildOptions};
use crate::error::{Error, Result};
use crate::prover::{Limits, Prover};
use crate::syntax::{parse_grammar, Calculus, Grammar, Hedge, Sequent, Type};

/// Grammar files shipped in `grammars/`, with whether each is read in the
/// starred calculus.
pub const BUNDLED_GRAMMARS: &[(&str, bool)] = &[("anbn.lg", false), ("brackets.lg", false), ("starred.lg", true)];

/// Bracket pairs a provable sequent with these types can hold: each pair is
/// matched by a modality occurrence.
pub fn bracket_bound(lexical: &[Type], target: &Type) -> usize {
    lexical.iter().map(Type::modalities).sum::<usize>() + target.modalities()
}

/// Each way of choosing one lexical type per word.
fn assignments(g: &Grammar, w: &[String]) -> Vec<Vec<Type>> {
    let mut out: Vec<Vec<Type>> = vec![Vec::new()];
    for a in w {
        let choices: Vec<&Type> = g.types_of(a).collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push((*t).clone());
                    v
                })
            })
            .collect();
    }
    out
}

fn search(g: &Grammar, w: &[String], prover: &mut Prover, extra: Option<usize>) -> Result<Option<Sequent>> {
    let empty = prover.calculus().is_starred();
    for types in assignments(g, w) {
        let bound = bracket_bound(&types, &g.distinguished);
        let hedges = match extra {
            None => Hedge::bracketings(&types, bound, empty),
            Some(k) => Hedge::bracketings_exact(&types, bound + k, empty),
        };
        for h in hedges {
            let s = Sequent::new(h, g.distinguished.clone());
            if prover.provable(&s)? {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}

/// A provable sequent witnessing `w ∈ L(g)`, found by trying every lexical
/// assignment and every bracketing within [`bracket_bound`]. The prover's
/// calculus decides which of `L(g)` is meant.
pub fn generates(g: &Grammar, w: &[String], prover: &mut Prover) -> Result<Option<Sequent>> {
    search(g, w, prover, None)
}

#[derive(Clone, Debug)]
pub struct EquivalenceOutcome {
    pub report: Report,
    pub cfg: Cfg,
    pub strings: Vec<Vec<String>>,
    /// Membership decided by the prover.
    pub grammar_side: Vec<bool>,
    /// Membership decided by CKY on the compiled grammar.
    pub cfg_side: Vec<bool>,
}

impl EquivalenceOutcome {
    pub fn equivalent(&self) -> bool {
        self.grammar_side == self.cfg_side
    }
}

fn all_strings(alphabet: &[String], min: usize, max: usize) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut level: Vec<Vec<String>> = vec![Vec::new()];
    for n in 0..=max {
        if n >= min {
            out.extend(level.iter().cloned());
        }
        level = level
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |a| {
                    let mut v = w.clone();
                    v.push(a.clone());
                    v
                })
            })
            .collect();
    }
    out
}

fn show(w: &[String]) -> String {
    if w.is_empty() {
        "eps".to_string()
    } else {
        w.join(" ")
    }
}

/// Compare `L(g)` with `L(G')` on every string up to `max_len` (the empty
/// string included when `starred`). The two sides share no code beyond the
/// grammar itself: the prover over bracketed hedges, and CKY over the
/// compiled grammar. Strings up to length 3 are also searched for witnesses
/// with one bracket pair beyond the bound, of which there must be none.
pub fn run_equivalence(g: &Grammar, name: &str, starred: bool, max_len: usize, opts: &HarnessOptions) -> Result<EquivalenceOutcome> {
    let mut r = Report::start(format!("equivalence {name}"));
    let calc = if starred { Calculus::LstarDia } else { Calculus::Ldia };
    let limits = opts.timeout_ms.map(Limits::timeout_ms).unwrap_or_default();
    let build = BuildOptions { cache_dir: opts.cache_dir.clone(), limits, ..BuildOptions::default() };
    let cfg = compile_cfg_with(g, calc, &build)?;
    r.add("productions", cfg.productions.len() as u64);
    r.add("nonterminals", cfg.nonterminals.len() as u64);

    let alphabet: Vec<String> = g.alphabet.iter().cloned().collect();
    let strings = all_strings(&alphabet, usize::from(!starred), max_len);
    let grammar_side: Vec<Result<Option<Sequent>>> = strings
        .par_chunks(16)
        .flat_map_iter(|chunk| {
            let mut prover = Prover::with_limits(calc, limits);
            chunk.iter().map(|w| generates(g, w, &mut prover)).collect::<Vec<_>>()
        })
        .collect();
    let parser = Parser::new(&cfg);
    let lang = language_upto(&cfg, max_len);

    let mut g_side = Vec::with_capacity(strings.len());
    let mut c_side = Vec::with_capacity(strings.len());
    for (w, witness) in strings.iter().zip(grammar_side) {
        let witness = match witness {
            Ok(x) => x,
            Err(e) => {
                r.fail(format!("{}: {e}", show(w)));
                None
            }
        };
        let terms: Vec<&str> = w.iter().map(String::as_str).collect();
        let accepted = parser.accepts(&terms);
        r.expect(accepted == lang.contains(w), || format!("{}: CKY and language_upto disagree", show(w)));
        if accepted {
            let symbols: Vec<Symbol> = w.iter().map(Symbol::t).collect();
            let valid = matches!(parser.derives(&cfg.start, &symbols), Ok(Some(t)) if t.is_valid_in(&cfg) && t.frontier() == symbols);
            r.expect(valid, || format!("{}: no valid derivation tree", show(w)));
        }
        r.expect(witness.is_some() == accepted, || {
            format!("{}: in L(G) {}, in L(G') {accepted}", show(w), witness.is_some())
        });
        if let Some(s) = &witness {
            if r.count("members") < 8 {
                r.note(format!("{}  <-  {s}", show(w)));
            }
        }
        r.add("strings", 1);
        r.add("members", u64::from(accepted));
        g_side.push(witness.is_some());
        c_side.push(accepted);
    }

    let short: Vec<&Vec<String>> = strings.iter().filter(|w| w.len() <= 3).collect();
    let beyond: Vec<(String, Result<Option<Sequent>>)> = short
        .par_iter()
        .map(|w| {
            let mut prover = Prover::with_limits(calc, limits);
            (show(w), search(g, w, &mut prover, Some(1)))
        })
        .collect();
    for (w, found) in beyond {
        match found {
            Ok(None) => r.add("boundary checks", 1),
            Ok(Some(s)) => r.fail(format!("{w}: witness beyond the bracket bound: {s}")),
            Err(e) => r.fail(format!("{w}: {e}")),
        }
    }

    let bits: String = c_side.iter().map(|&b| if b { '1' } else { '0' }).collect();
    r.note(format!("membership vector: {bits}"));
    if g_side == c_side {
        r.note(format!("EQUIVALENT up to {max_len}"));
    }
    Ok(EquivalenceOutcome { report: r.finish(), cfg, strings, grammar_side: g_side, cfg_side: c_side })
}

/// [`run_equivalence`] on a grammar file.
pub fn run_equivalence_file(path: &Path, starred: bool, max_len: usize, opts: &HarnessOptions) -> Result<EquivalenceOutcome> {
    let text = std::fs::read_to_string(path)?;
    let g = parse_grammar(&text).map_err(Error::Parse)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string());
    run_equivalence(&g, &name, starred, max_len, opts)
}
