use std::collections::BTreeSet;

use super::*;
use crate::prover::{check, prove};
use crate::syntax::{parse_sequent, parse_type, Calculus, Sequent, Span};

fn seq(text: &str) -> Sequent {
    parse_sequent(text).unwrap()
}

fn proof(text: &str, calc: Calculus) -> Proof {
    prove(&seq(text), calc).unwrap().unwrap_or_else(|| panic!("`{text}` unprovable in {calc}"))
}

const UNIT_EXAMPLE: &str = "p3/dia:1(p1 * dia:2(p2/p2)) [:1 p1 [:2 ]:2 ]:1 => p3";
const BRACKET_EXAMPLE: &str = "[ [ p ] dia p \\ p ] => boxd dia dia p";

#[test]
fn unit_example_interpolant() {
    let p = proof(UNIT_EXAMPLE, Calculus::L1starDiaM);
    let r = extract_at(&p, &Span::root(1, 2), Calculus::L1starDiaM).unwrap();
    assert_eq!(r.interpolant, parse_type("dia:1 (p1 * dia:2 1)").unwrap());
    assert!(r.interpolant.is_guarded());
    assert!(r.conditions(Calculus::L1starDiaM).all());
    assert_eq!(r.left_proof.conclusion.to_string(), "[:1 p1 [:2 ]:2 ]:1 => dia:1 (p1 * dia:2 1)");
}

#[test]
fn axiom_interpolant_is_the_primitive() {
    let p = Proof::ax(parse_type("p1").unwrap());
    let r = extract_at(&p, &Span::root(0, 1), Calculus::LdiaM).unwrap();
    assert_eq!(r.interpolant.to_string(), "p1");
    assert!(r.conditions(Calculus::LdiaM).all());
    assert!(verify_thin_eq2(&p, &r.partition).unwrap());
}

#[test]
fn a_family_interpolants() {
    for i in 1..=4 {
        assert_eq!(a_type(i).length(), 1);
        let p = a_family_proof(i).unwrap();
        assert!(check(&p, Calculus::L1star), "{}", p.conclusion);
        let r = extract_at(&p, &a_family_selection(i), Calculus::L1star).unwrap();
        assert_eq!(r.interpolant, a_type(i), "i = {i}");
        assert!(r.conditions(Calculus::L1star).all());
    }
    assert_eq!(a_type(2), parse_type("(1/((1/q)\\1))\\1").unwrap());
}

#[test]
fn a_family_collapses_above_zero() {
    let provable = |i: usize, j: usize| prove(&Sequent::flat([a_type(i)], a_type(j)), Calculus::L1star).unwrap().is_some();
    for i in 1..=4 {
        assert!(!provable(i, 0), "A{i} => A0");
        assert!(provable(0, i), "A0 => A{i}");
        for j in 1..=4 {
            assert!(provable(i, j), "A{i} => A{j}");
        }
    }
    // the same proof without the unit
    let s = parse_sequent("(r / ((r / q) \\ r)) \\ r => (r / q) \\ r").unwrap();
    assert!(prove(&s, Calculus::L).unwrap().is_some());
}

#[test]
fn thin_indexing_of_the_bracket_example() {
    let p = proof(BRACKET_EXAMPLE, Calculus::Ldia);
    let (ip, theta) = thin_index(&p).unwrap();
    assert_eq!(ip.conclusion.to_string(), "[:2 [:1 p1 ]:1 dia:1 p1 \\ p2 ]:2 => boxd:3 dia:3 dia:2 p2");
    assert!(ip.conclusion.is_thin());
    assert!(check(&ip, Calculus::LdiaM));
    assert_eq!(ip.conclusion.deindex(&theta), p.conclusion);
    let part = Partition::from_span(&ip.conclusion.antecedent, &Span::new(vec![0], 0, 2)).unwrap();
    assert_eq!(part.to_string(), "[:1 p1 ]:1 dia:1 p1 \\ p2 ; [:2 _ ]:2");
    assert!(verify_thin_eq2(&ip, &part).unwrap());
}

#[test]
fn every_partition_of_small_proofs() {
    for (text, calc) in [
        (BRACKET_EXAMPLE, Calculus::Ldia),
        ("(p * q) * r => p * (q * r)", Calculus::Ldia),
        ("p / dia q [ q ] => p", Calculus::Ldia),
        ("p / q q r \\ s => (p / r) \\ s", Calculus::Ldia),
        ("p / (q \\ r) q \\ r => p", Calculus::Ldia),
        ("[ boxd p ] q \\ r q => (p * (q \\ r)) * q", Calculus::Ldia),
        ("dia boxd p => p", Calculus::Ldia),
        ("[ ] => dia (p / p)", Calculus::LstarDia),
        ("p 1 [ 1 ] => p * dia 1", Calculus::L1starDia),
        ("1 p / p 1 => p \\ p", Calculus::L1starDia),
    ] {
        let s = seq(text);
        let Some(p) = prove(&s, calc).unwrap() else { continue };
        for part in Partition::all(&s.antecedent, calc.has_unit()) {
            let r = extract_interpolant(&p, &part, calc).unwrap_or_else(|e| panic!("{text} / {part}: {e}"));
            let c = r.conditions(calc);
            assert!(c.all(), "{text} / {part}: {c:?} E = {}", r.interpolant);
        }
        if calc.has_unit() {
            continue;
        }
        let (ip, _) = thin_index(&p).unwrap();
        for part in Partition::all(&ip.conclusion.antecedent, false) {
            assert!(verify_thin_eq2(&ip, &part).unwrap(), "{} / {part}", ip.conclusion);
            let r = extract_interpolant(&ip, &part, Calculus::LdiaM).unwrap();
            assert!(r.conditions(Calculus::LdiaM).all());
        }
    }
}

#[test]
fn empty_selection_needs_the_unit() {
    let p = proof("p => p", Calculus::Ldia);
    let part = Partition::from_span(&p.conclusion.antecedent, &Span::root(0, 0)).unwrap();
    assert!(matches!(extract_interpolant(&p, &part, Calculus::Ldia), Err(crate::Error::Partition(_))));
    let r = extract_interpolant(&p, &part, Calculus::L1starDia).unwrap();
    assert_eq!(r.interpolant.to_string(), "1");
    assert!(r.conditions(Calculus::L1starDia).all());
}

#[test]
fn mismatched_partition_is_rejected() {
    let p = proof("p => p", Calculus::Ldia);
    let other = Partition::from_span(&seq("q => q").antecedent, &Span::root(0, 1)).unwrap();
    assert!(extract_interpolant(&p, &other, Calculus::Ldia).is_err());
}

#[test]
fn bracket_step_base_cases() {
    let p = proof("[ p ] => dia p", Calculus::Ldia);
    let st = bracket_step(&p, &Span::root(0, 1), Calculus::Ldia).unwrap();
    assert_eq!(st.variant, BracketVariant::Dia);
    assert_eq!(st.b.to_string(), "p");
    assert_eq!(st.delta_proof.conclusion.to_string(), "p => p");
    assert_eq!(st.context_proof.conclusion.to_string(), "dia p => dia p");

    let p = proof("[ boxd q ] => q", Calculus::Ldia);
    let st = bracket_step(&p, &Span::root(0, 1), Calculus::Ldia).unwrap();
    assert_eq!(st.variant, BracketVariant::Box);
    assert_eq!(st.b.to_string(), "q");
    assert_eq!(st.delta_proof.conclusion.to_string(), "boxd q => boxd q");
    assert_eq!(st.context_proof.conclusion.to_string(), "q => q");
}

#[test]
fn bracket_step_through_other_rules() {
    for (text, calc) in [
        (BRACKET_EXAMPLE, Calculus::Ldia),
        ("p / dia q [ q ] => p", Calculus::Ldia),
        ("[ boxd p ] q \\ r q => (p * (q \\ r)) * q", Calculus::Ldia),
        ("[ p p \\ q ] r => dia q * r", Calculus::Ldia),
        ("r [ [ p ] ] => r * dia dia p", Calculus::Ldia),
    ] {
        let s = seq(text);
        let p = prove(&s, calc).unwrap().unwrap_or_else(|| panic!("{text}"));
        for path in s.antecedent.level_paths().into_iter().skip(1) {
            let (&j, outer) = path.split_last().unwrap();
            let at = Span::new(outer.to_vec(), j, j + 1);
            let st = bracket_step(&p, &at, calc).unwrap_or_else(|e| panic!("{text} at {at:?}: {e}"));
            assert!(check(&st.delta_proof, calc), "{text}");
            assert!(check(&st.context_proof, calc), "{text}");
            let inner = s.antecedent.level(&path).unwrap();
            assert_eq!(st.delta_proof.conclusion.antecedent.trees(), inner);
            let replaced = s.antecedent.replace(&at, vec![crate::syntax::Tree::Leaf(st.replacement())]);
            assert_eq!(st.context_proof.conclusion.antecedent, replaced);
        }
    }
}

#[test]
fn pentus_reduce_two_cuts() {
    let b: BTreeSet<String> = ["p".to_string()].into();
    let s = seq("p p\\p p\\p => p");
    let d = pentus_reduce(&s, &b, 2, Calculus::Ldia).unwrap();
    // the pair `p p\p` goes to `p`, leaving `p p\p => p`
    assert_eq!(d.cuts(), 1);
    assert_eq!(d.leaves().len(), 2);
    assert_eq!(d.replay().unwrap(), s);
    for leaf in d.leaves() {
        assert!(leaf.antecedent.len() <= 2);
        assert!(prove(leaf, Calculus::Ldia).unwrap().is_some());
    }
    let s = seq("p p\\p p\\p p\\p => p");
    let d = pentus_reduce(&s, &b, 2, Calculus::Ldia).unwrap();
    assert_eq!(d.cuts(), 2);
    assert_eq!(d.replay().unwrap(), s);
}

#[test]
fn cut_complete_examples() {
    let b: BTreeSet<String> = ["p".to_string(), "q".to_string()].into();
    for (text, m, calc) in [
        ("[ p ] p \\ q => dia p * (p \\ q)", 5, Calculus::Ldia),
        ("p / dia q [ q ] => p", 4, Calculus::Ldia),
        ("[ boxd p ] p \\ q => q", 3, Calculus::Ldia),
        ("[ ] p => dia 1 * p", 4, Calculus::L1starDia),
    ] {
        let s = seq(text);
        let d = cut_complete(&s, &b, m, calc).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(d.replay().unwrap(), s);
        for leaf in d.leaves() {
            assert!(prove(leaf, calc).unwrap().is_some(), "{leaf}");
            assert!(leaf.antecedent.leaf_count() <= 2, "{leaf}");
        }
    }
}
