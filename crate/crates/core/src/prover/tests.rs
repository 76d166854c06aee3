use super::*;
use crate::freegroup::{interpret, interpret_hedge};
use crate::syntax::{parse_sequent, Calculus, Sequent};

fn seq(text: &str) -> Sequent {
    parse_sequent(text).unwrap()
}

fn proved(text: &str, calc: Calculus) -> Proof {
    let p = prove(&seq(text), calc).unwrap().unwrap_or_else(|| panic!("`{text}` should be provable in {calc}"));
    verify(&p, calc).unwrap();
    p
}

const BRACKET_EXAMPLE: &str = "[ [ p ] dia p \\ p ] => boxd dia dia p";

#[test]
fn bracket_example_proof_shape() {
    let p = proved(BRACKET_EXAMPLE, Calculus::Ldia);
    let expected = "\
BoxDownR  [ [ p ] dia p \\ p ] => boxd dia dia p
  DiaR  [ [ [ p ] dia p \\ p ] ] => dia dia p
    DiaR  [ [ p ] dia p \\ p ] => dia p
      UnderL  [ p ] dia p \\ p => p
        DiaR  [ p ] => dia p
          Ax  p => p
        Ax  p => p
";
    assert_eq!(p.to_text(), expected);
}

#[test]
fn flat_counterexample_is_unprovable() {
    let s = seq("dia boxd p dia boxd q => dia boxd (p * q)");
    assert!(prove(&s, Calculus::Ldia).unwrap().is_none());
    let flat = translate_flat_sequent(&s).unwrap();
    let p = prove_flat(&flat, Calculus::L).unwrap().expect("translation provable in L");
    assert!(check(&p, Calculus::L));
}

#[test]
fn unit_example_is_provable() {
    proved("p3/dia:1(p1 * dia:2(p2/p2)) [:1 p1 [:2 ]:2 ]:1 => p3", Calculus::L1starDiaM);
}

#[test]
fn check_rejects_broken_proofs() {
    let mut p = proved(BRACKET_EXAMPLE, Calculus::Ldia);
    assert!(check(&p, Calculus::Ldia));
    // the UnderL node loses a premise
    p.premises[0].premises[0].premises[0].premises.pop();
    assert!(!check(&p, Calculus::Ldia));

    let unit = Proof::unit_r();
    assert!(check(&unit, Calculus::L1starDia));
    assert!(!check(&unit, Calculus::LstarDia));
    assert!(!check(&unit, Calculus::Ldia));
}

#[test]
fn check_enforces_nonempty_right_rules() {
    let ax = Proof::ax(crate::syntax::Type::prim("p"));
    let p = Proof::under_r(ax).unwrap();
    assert_eq!(p.conclusion.to_string(), "=> p \\ p");
    assert!(!check(&p, Calculus::Ldia));
    assert!(check(&p, Calculus::LstarDia));
    assert!(check(&p, Calculus::Lstar));
}

#[test]
fn text_format_round_trips() {
    for (text, calc) in [
        (BRACKET_EXAMPLE, Calculus::Ldia),
        ("p3/dia:1(p1 * dia:2(p2/p2)) [:1 p1 [:2 ]:2 ]:1 => p3", Calculus::L1starDiaM),
        ("p / q q p \\ r => r", Calculus::L),
        ("(p * q) * r => p * (q * r)", Calculus::Ldia),
    ] {
        let p = proved(text, calc);
        let back = parse_proof(&p.to_text()).unwrap();
        assert_eq!(back.to_text(), p.to_text());
        assert!(check(&back, calc), "{text}");
    }
}

#[test]
fn empty_antecedents_only_in_starred_calculi() {
    let s = seq("=> p \\ p");
    assert!(prove(&s, Calculus::Ldia).is_err());
    assert!(prove(&s, Calculus::LstarDia).unwrap().is_some());
    let s = seq("[ ] => dia (p / p)");
    assert!(prove(&s, Calculus::LstarDia).unwrap().is_some());
    assert!(prove(&seq("=> 1"), Calculus::L1star).unwrap().is_some());
}

#[test]
fn associativity_and_bracket_barriers() {
    proved("(p * q) * r => p * (q * r)", Calculus::Ldia);
    proved("p / q q => p", Calculus::Ldia);
    // brackets block access across their boundary
    assert!(prove(&seq("p / q [ q ] => p"), Calculus::Ldia).unwrap().is_none());
    proved("p / dia q [ q ] => p", Calculus::Ldia);
    proved("[ boxd p ] => p", Calculus::Ldia);
    proved("p => boxd dia p", Calculus::Ldia);
    proved("dia boxd p => p", Calculus::Ldia);
    assert!(prove(&seq("p => dia boxd p"), Calculus::Ldia).unwrap().is_none());
}

#[test]
fn premises_are_strictly_smaller() {
    for text in [BRACKET_EXAMPLE, "(p * q) * r => p * (q * r)", "p / dia q [ q ] => p"] {
        let s = seq(text);
        for st in super::search::steps(&s, Calculus::LstarDia) {
            for prem in &st.premises {
                assert!(prem.connectives() < s.connectives(), "{prem} from {s}");
            }
        }
    }
}

#[test]
fn limits_turn_into_errors() {
    let s = seq("(p * q) * r => p * (q * r)");
    let limits = Limits { max_nodes: Some(2), timeout: None };
    assert!(matches!(prove_with(&s, Calculus::Ldia, limits), Err(crate::Error::Limit(_))));
}

#[test]
fn indexed_proofs_preserve_free_group_image() {
    for text in [
        "p3/dia:1(p1 * dia:2(p2/p2)) [:1 p1 [:2 ]:2 ]:1 => p3",
        "[:2 [:1 p1 ]:1 dia:1 p1 \\ p2 ]:2 => boxd:3 dia:3 dia:2 p2",
    ] {
        let p = prove(&seq(text), Calculus::L1starDiaM).unwrap().unwrap();
        for node in p.post_order() {
            let s = &node.conclusion;
            assert_eq!(interpret_hedge(&s.antecedent).unwrap(), interpret(&s.succedent).unwrap(), "{s}");
        }
    }
}

#[test]
fn forward_constructors_match_checker() {
    use crate::syntax::{Span, Type};
    let p = Type::prim("p");
    let q = Type::prim("q");
    // p/q q => p
    let over = Proof::over_l(Proof::ax(q.clone()), Proof::ax(p.clone()), &Span::root(0, 1)).unwrap();
    assert_eq!(over.conclusion.to_string(), "p / q q => p");
    assert!(check(&over, Calculus::Ldia));
    // q q\p => p, then [ q ] ... via DiaL
    let under = Proof::under_l(Proof::ax(q.clone()), Proof::ax(p.clone()), &Span::root(0, 1)).unwrap();
    assert!(check(&under, Calculus::Ldia));
    let boxed = Proof::box_l(Proof::ax(p.clone()), &Span::root(0, 1), None).unwrap();
    assert_eq!(boxed.conclusion.to_string(), "[ boxd p ] => p");
    assert!(check(&boxed, Calculus::Ldia));
    let r = Proof::box_r(boxed).unwrap();
    assert_eq!(r.conclusion.to_string(), "boxd p => boxd p");
    assert!(check(&r, Calculus::Ldia));
    let d = Proof::dia_l(Proof::dia_r(Proof::ax(q.clone()), None), &Span::root(0, 1)).unwrap();
    assert_eq!(d.conclusion.to_string(), "dia q => dia q");
    let prod = Proof::prod_l(Proof::prod_r(Proof::ax(p.clone()), Proof::ax(q)), &Span::root(0, 2)).unwrap();
    assert_eq!(prod.conclusion.to_string(), "p * q => p * q");
    assert!(check(&prod, Calculus::Ldia));
    let u = Proof::unit_l(Proof::ax(p), &[], 1).unwrap();
    assert_eq!(u.conclusion.to_string(), "p 1 => p");
    assert!(check(&u, Calculus::L1starDia));
}
