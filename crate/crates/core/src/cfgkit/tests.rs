use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::syntax::{parse_sequent, Hedge, Sequent, Type};

fn t(s: &str) -> Symbol {
    Symbol::t(s)
}

fn n(s: &str) -> Symbol {
    Symbol::n(s)
}

#[test]
fn reflexive_zero_step() {
    let mut g = Cfg::new("D");
    g.add("D", vec![n("D")]);
    let d = derives(&g, "D", &[n("D")]).unwrap().unwrap();
    assert_eq!(d.steps(), 0);
    assert_eq!(d.frontier(), vec![n("D")]);
}

#[test]
fn unit_nonterminal_derives_empty() {
    let mut g = Cfg::new("p");
    g.add("dia 1", vec![]);
    g.add("p", vec![n("dia 1"), n("p")]);
    g.add("p", vec![t("a")]);
    let d = derives(&g, "dia 1", &[]).unwrap().unwrap();
    assert_eq!(d.steps(), 1);
    assert!(d.is_valid_in(&g));
    let d = derives(&g, "p", &[t("a")]).unwrap().unwrap();
    assert!(d.is_valid_in(&g));
    assert_eq!(d.frontier(), vec![t("a")]);
    assert_eq!(derives(&g, "p", &[]).unwrap(), None);
}

#[test]
fn dia_to_body_one_step() {
    let mut g = Cfg::new("dia p");
    g.add("dia p", vec![n("p")]);
    let d = derives(&g, "dia p", &[n("p")]).unwrap().unwrap();
    assert_eq!(d.steps(), 1);
    assert_eq!(d.to_string(), "\"dia p\" -> \"p\"\n  \"p\"\n");
}

#[test]
fn unknown_symbols_are_errors() {
    let mut g = Cfg::new("D");
    g.add("D", vec![t("a")]);
    assert!(matches!(derives(&g, "D", &[t("b")]), Err(crate::Error::UnknownSymbol(_))));
    assert!(matches!(derives(&g, "E", &[t("a")]), Err(crate::Error::UnknownSymbol(_))));
}

#[test]
fn single_terminal_language() {
    let mut g = Cfg::new("D");
    g.add("D", vec![t("a")]);
    for k in 1..4 {
        assert_eq!(language_upto(&g, k), [vec!["a".to_string()]].into());
    }
    assert!(language_upto(&g, 0).is_empty());
}

#[test]
fn text_round_trip() {
    let mut g = Cfg::new("s");
    g.add("s", vec![n("s/q"), n("q")]);
    g.add("s/q", vec![t("a")]);
    g.add("q", vec![t("b")]);
    g.add("dia 1", vec![]);
    let text = g.to_text();
    assert!(text.starts_with("start: \"s\"\n"));
    assert!(text.contains("\"dia 1\" -> eps"));
    let back: Cfg = text.parse().unwrap();
    assert_eq!(back.productions, g.productions);
    assert_eq!(back.start, g.start);
    assert!("\"s\" -> a".parse::<Cfg>().is_err());
}

/// A random grammar over nonterminals `Z S A B E` and terminals `a b`.
/// `E -> eps` is the only empty production, `E` never stands alone with other
/// nonterminals, and the start `Z` has `Z -> S | E`, so only `Z` and `E` are
/// nullable.
fn random_grammar(rng: &mut ChaCha8Rng) -> Cfg {
    let nts = ["S", "A", "B"];
    let mut g = Cfg::new("Z");
    g.add("E", vec![]);
    let k = rng.gen_range(3..8);
    for _ in 0..k {
        let lhs = nts[rng.gen_range(0..3)];
        let len = rng.gen_range(1..4);
        let mut rhs: Vec<Symbol> = Vec::new();
        if rng.gen_bool(0.4) {
            for _ in 0..rng.gen_range(1..3) {
                rhs.push(n(nts[rng.gen_range(0..3)]));
            }
        } else {
            for _ in 0..len {
                rhs.push(match rng.gen_range(0..4) {
                    0 => t("a"),
                    1 => t("b"),
                    2 => n("E"),
                    _ => n(nts[rng.gen_range(0..3)]),
                });
            }
            if rhs.iter().all(|s| !s.is_terminal()) {
                rhs.push(t(if rng.gen_bool(0.5) { "a" } else { "b" }));
            }
        }
        g.add(lhs, rhs);
    }
    g.add("Z", vec![n("S")]);
    g.add("Z", vec![n("E")]);
    g.terminals.extend(["a".to_string(), "b".to_string()]);
    g
}

/// Terminal strings of length at most `n` reachable from the start by
/// rewriting sentential forms breadth first. Every symbol other than `E`
/// yields at least one terminal and each production adds at most three `E`,
/// so erasing them eagerly keeps every needed form within the bound.
fn bfs_language(g: &Cfg, n: usize) -> BTreeSet<Vec<String>> {
    let ok = |f: &[Symbol]| {
        f.iter().filter(|s| s.name() != "E").count() <= n && f.iter().filter(|s| s.name() == "E").count() <= 3
    };
    let start = vec![Symbol::n(g.start.clone())];
    let mut seen: BTreeSet<Vec<Symbol>> = [start.clone()].into();
    let mut queue: VecDeque<Vec<Symbol>> = [start].into();
    let mut out = BTreeSet::new();
    while let Some(f) = queue.pop_front() {
        if f.iter().all(Symbol::is_terminal) {
            out.insert(f.iter().map(|s| s.name().to_string()).collect());
            continue;
        }
        for (i, s) in f.iter().enumerate() {
            let Symbol::N(x) = s else { continue };
            for p in g.productions.iter().filter(|p| &p.lhs == x) {
                let mut next = f[..i].to_vec();
                next.extend(p.rhs.iter().cloned());
                next.extend_from_slice(&f[i + 1..]);
                if ok(&next) && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    out
}

fn all_strings(alphabet: &[&str], n: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..n {
        layer = layer
            .iter()
            .flat_map(|w| alphabet.iter().map(move |a| {
                let mut v = w.clone();
                v.push(a.to_string());
                v
            }))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn random_grammars_against_bfs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let g = random_grammar(&mut rng);
        let n = 4;
        let lang = language_upto(&g, n);
        assert_eq!(lang, bfs_language(&g, n), "{g}");
        let parser = Parser::new(&g);
        let null = g.nullable();
        let elim = language_upto(&g.eps_eliminated(), n);
        let mut with_eps = elim.clone();
        if null.contains("Z") {
            with_eps.insert(Vec::new());
        }
        assert_eq!(lang, with_eps, "{g}");
        for w in all_strings(&["a", "b"], n) {
            let refs: Vec<&str> = w.iter().map(String::as_str).collect();
            let member = lang.contains(&w);
            assert_eq!(parser.accepts(&refs), member, "{g} {w:?}");
            let syms: Vec<Symbol> = w.iter().map(|x| t(x)).collect();
            let d = parser.derives("Z", &syms).unwrap();
            assert_eq!(d.is_some(), member);
            if let Some(d) = d {
                assert!(d.is_valid_in(&g), "{g}\n{d}");
                assert_eq!(d.frontier(), syms);
            }
        }
    }
}

fn seq(s: &str) -> Sequent {
    parse_sequent(s).unwrap()
}

#[test]
fn member_of_base_is_a_leaf() {
    let base = vec![seq("p p\\q => q")];
    let d = cut_derives(&base, &base[0]).unwrap();
    assert_eq!(d.cuts(), 0);
}

#[test]
fn bracket_bridge_derivation() {
    let base = vec![seq("p => p"), seq("dia p => dia p"), seq("[ p ] => dia p")];
    let target = seq("[ p ] => dia p");
    // the three-premise shape: Δ => B into ⟨B⟩ => ◊B, then into Γ'[◊B] => C
    let inner = CutDerivation::cut(
        CutDerivation::leaf(base[0].clone()),
        CutDerivation::leaf(base[2].clone()),
        crate::syntax::Span::new(vec![0], 0, 1),
    )
    .unwrap();
    let whole = CutDerivation::cut(inner, CutDerivation::leaf(base[1].clone()), crate::syntax::Span::root(0, 1)).unwrap();
    assert_eq!(whole.leaves().len(), 3);
    assert_eq!(whole.replay().unwrap(), target);
    let found = cut_derives(&base, &target).unwrap();
    assert_eq!(found.replay().unwrap(), target);

    let base = vec![seq("p p\\q => q"), seq("dia q => dia q"), seq("[ q ] => dia q")];
    let target = seq("[ p p\\q ] => dia q");
    let d = cut_derives(&base, &target).unwrap();
    assert_eq!(d.replay().unwrap(), target);
    assert!(d.leaves().iter().all(|l| base.contains(l)));
    assert!(cut_derives(&base[..2], &target).is_none());
}

#[test]
fn cut_derives_matches_forward_closure() {
    let base = vec![
        seq("p p\\q => q"),
        seq("q q\\r => r"),
        seq("[ q ] => dia q"),
        seq("dia q q\\r => r"),
        seq("[ boxd p ] => p"),
        seq("r => r"),
        seq("q => q"),
    ];
    let closure = cut_closure(&base, 4, 2);
    for s in &closure {
        let d = cut_derives(&base, s).unwrap_or_else(|| panic!("{s}"));
        assert_eq!(&d.replay().unwrap(), s);
        assert!(d.leaves().iter().all(|l| base.contains(l)));
    }
    let atoms: Vec<Type> = ["p", "p\\q", "q\\r", "boxd p", "q"].iter().map(|x| crate::syntax::parse_type(x).unwrap()).collect();
    let succs: Vec<Type> = ["q", "r", "dia q", "p"].iter().map(|x| crate::syntax::parse_type(x).unwrap()).collect();
    let mut checked = 0;
    for len in 1..=3 {
        for combo in words(&atoms, len) {
            for h in Hedge::bracketings(&combo, 2, false) {
                for c in &succs {
                    let s = Sequent::new(h.clone(), c.clone());
                    assert_eq!(cut_derives(&base, &s).is_some(), closure.contains(&s), "{s}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

fn words(atoms: &[Type], len: usize) -> Vec<Vec<Type>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| atoms.iter().map(move |a| {
                let mut v = w.clone();
                v.push(a.clone());
                v
            }))
            .collect();
    }
    out
}

#[test]
fn empty_antecedent_cuts() {
    let base = vec![seq("[ ] => dia 1"), seq("dia 1 p => p")];
    let s = seq("[ ] p => p");
    let d = cut_derives(&base, &s).unwrap();
    assert_eq!(d.replay().unwrap(), s);
    assert_eq!(d.cuts(), 1);
}
