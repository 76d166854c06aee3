use super::*;
use crate::cfgkit::Production;
use crate::prover::provable;
use crate::syntax::{parse_grammar, parse_sequent, parse_type};

fn prims(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn seq(s: &str) -> Sequent {
    parse_sequent(s).unwrap()
}

/// Number of types of each length, counted by the recurrence on the shape of
/// the main connective.
fn count_by_length(nprims: usize, m: usize, guarded: bool) -> Vec<usize> {
    let mut c = vec![0usize; m + 1];
    for l in 1..=m {
        let mut n = 0;
        if l == 1 {
            n += nprims;
        }
        if l == 2 && guarded {
            n += 1;
        }
        for l1 in 1..l {
            n += 3 * c[l1] * c[l - l1];
        }
        if l > 2 {
            n += 2 * c[l - 2];
        }
        c[l] = n;
    }
    c
}

#[test]
fn small_enumerations() {
    let p = prims(&["p"]);
    assert_eq!(enum_types(&p, 1, false), vec![Type::prim("p")]);
    let two: BTreeSet<String> = enum_types(&p, 2, false).iter().map(Type::to_string).collect();
    let expect: BTreeSet<String> = ["p", "p \\ p", "p / p", "p * p"].iter().map(|s| parse_type(s).unwrap().to_string()).collect();
    assert_eq!(two, expect);
    let guarded = enum_types(&p, 2, true);
    assert!(guarded.contains(&parse_type("dia 1").unwrap()));
    assert!(!guarded.contains(&Type::Unit));
    assert_eq!(guarded.len(), 5);
}

#[test]
fn enumeration_counts_and_order() {
    for (names, m, guarded) in [(vec!["p"], 4, false), (vec!["p", "q"], 3, false), (vec!["p"], 4, true), (vec!["s", "q"], 3, true)] {
        let b = prims(&names);
        let ts = enum_types(&b, m, guarded);
        let total: usize = count_by_length(names.len(), m, guarded).iter().sum();
        assert_eq!(ts.len(), total);
        let distinct: BTreeSet<&Type> = ts.iter().collect();
        assert_eq!(distinct.len(), ts.len());
        for w in ts.windows(2) {
            assert!((w[0].length(), w[0].to_string()) < (w[1].length(), w[1].to_string()));
        }
        for t in &ts {
            assert!(t.length() <= m && t.primitives().is_subset(&b));
            assert!(if guarded { t.is_guarded() } else { !t.has_unit() });
        }
    }
}

#[test]
fn s_membership_matches_the_prover() {
    for (m, calc) in [(2, Calculus::Ldia), (3, Calculus::Ldia), (2, Calculus::L1starDia)] {
        let b = prims(&["p"]);
        let r = build_rulesets(&b, m, calc).unwrap();
        let ts = enum_types(&b, m, calc.has_unit());
        let mut prover = Prover::new(calc);
        let mut ants: Vec<Vec<Type>> = Vec::new();
        if calc.has_unit() {
            ants.push(Vec::new());
        }
        for a in &ts {
            ants.push(vec![a.clone()]);
            for b in &ts {
                ants.push(vec![a.clone(), b.clone()]);
            }
        }
        let mut count = 0;
        for ant in &ants {
            for c in &ts {
                let s = Sequent::flat(ant.clone(), c.clone());
                let yes = prover.provable(&s).unwrap();
                assert_eq!(r.contains_s(&s), yes, "{s}");
                count += usize::from(yes);
            }
        }
        assert_eq!(count, r.s.len());
        for s in &r.t {
            assert!(crate::prover::check(r.proof(s).unwrap(), calc));
        }
    }
}

#[test]
fn rule_set_examples() {
    let p = prims(&["p"]);
    let r2 = build_rulesets(&p, 2, Calculus::Ldia).unwrap();
    assert!(r2.contains_s(&seq("p p\\p => p")));
    assert!(!r2.contains_t(&seq("[ p ] => dia p")));
    let r3 = build_rulesets(&p, 3, Calculus::Ldia).unwrap();
    assert!(r3.contains_t(&seq("[ p ] => dia p")));
    assert!(r3.contains_t(&seq("[ boxd p ] => p")));
    let g = build_rulesets(&p, 2, Calculus::L1starDia).unwrap();
    assert!(g.contains_t(&seq("[ ] => dia 1")));
    assert!(g.contains_s(&seq(" => p / p")));
    assert!(build_rulesets(&p, 2, Calculus::LstarDia).is_err());
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let opts = BuildOptions { cache_dir: Some(dir.path().to_path_buf()), ..BuildOptions::default() };
    let b = prims(&["p"]);
    let first = build_rulesets_with(&b, 3, Calculus::Ldia, &opts).unwrap();
    let path = cache_path(dir.path(), &b, 3, Calculus::Ldia);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# lambek-diamond rule-set cache\n"));
    assert_eq!(read_cache(&path, &b, 3, Calculus::Ldia).unwrap().unwrap().len(), first.s.len());
    assert!(read_cache(&path, &b, 2, Calculus::Ldia).unwrap().is_none());
    let second = build_rulesets_with(&b, 3, Calculus::Ldia, &opts).unwrap();
    assert_eq!(first.s, second.s);
    assert_eq!(first.t, second.t);
}

fn has(cfg: &Cfg, lhs: &str, rhs: &[Symbol]) -> bool {
    let p = Production { lhs: parse_type(lhs).unwrap().to_string(), rhs: rhs.to_vec() };
    cfg.productions.contains(&p)
}

fn nt(s: &str) -> Symbol {
    Symbol::N(parse_type(s).unwrap().to_string())
}

#[test]
fn compile_small_lexicon() {
    let g = parse_grammar("lexicon a : p\nlexicon b : p \\ s\ntarget : s\n").unwrap();
    let cfg = compile_cfg(&g, Calculus::Ldia).unwrap();
    assert!(provable(&seq("p p\\s => s"), Calculus::Ldia).unwrap());
    assert!(has(&cfg, "s", &[nt("p"), nt("p \\ s")]));
    assert!(has(&cfg, "p", &[Symbol::t("a")]));
    assert!(has(&cfg, "p \\ s", &[Symbol::t("b")]));
    assert_eq!(cfg.start, "s");
    assert!(cfg.productions.iter().all(|p| !p.rhs.is_empty()));
    assert_eq!(compile_cfg(&g, Calculus::Ldia).unwrap().productions, cfg.productions);
}

#[test]
fn compile_families() {
    let g = parse_grammar("lexicon a : dia p\nlexicon b : p\ntarget : p\n").unwrap();
    let cfg = compile_cfg(&g, Calculus::Ldia).unwrap();
    let b = prims(&["p"]);
    for a in enum_types(&b, 1, false) {
        assert!(has(&cfg, &format!("dia ({a})"), &[nt(&a.to_string())]));
        assert!(has(&cfg, &a.to_string(), &[nt(&format!("boxd ({a})"))]));
    }
    let g = parse_grammar("lexicon c : p\ntarget : p\n").unwrap();
    let cfg = compile_cfg(&g, Calculus::LstarDia).unwrap();
    assert!(has(&cfg, "dia 1", &[]));
    assert!(cfg.nonterminals.contains("dia 1"));
}

#[test]
fn nonterminal_cap() {
    let g = parse_grammar("lexicon a : (p / q) / (r \\ s)\ntarget : p\n").unwrap();
    let opts = BuildOptions { max_nonterminals: Some(100), ..BuildOptions::default() };
    assert!(matches!(compile_cfg_with(&g, Calculus::Ldia, &opts), Err(Error::Resource(_))));
}
