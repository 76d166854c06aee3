use super::Report;
use crate::interpolate::{a_family_proof, a_family_selection, a_type, extract_at, thin_index};
use crate::prover::{check, parse_proof, prove, prove_flat, translate_flat_sequent};
use crate::syntax::{parse_sequent, parse_type, Calculus, Sequent, Span};

/// The worked bracket example.
pub const BRACKET_EXAMPLE: &str = "[ [ p ] dia p \\ p ] => boxd dia dia p";
/// Its thin-indexed form under the numbering of `thin_index`.
pub const BRACKET_EXAMPLE_INDEXED: &str = "[:2 [:1 p1 ]:1 dia:1 p1 \\ p2 ]:2 => boxd:3 dia:3 dia:2 p2";
/// Unprovable, though its flat translation is provable in `L`.
pub const FLAT_COUNTEREXAMPLE: &str = "dia boxd p dia boxd q => dia boxd (p * q)";
/// The unit example with a guarded interpolant.
pub const UNIT_EXAMPLE: &str = "p3/dia:1(p1 * dia:2(p2/p2)) [:1 p1 [:2 ]:2 ]:1 => p3";
pub const UNIT_INTERPOLANT: &str = "dia:1 (p1 * dia:2 1)";

fn seq(text: &str) -> Sequent {
    parse_sequent(text).expect("built-in sequent parses")
}

pub fn run_golden() -> Report {
    let mut r = Report::start("golden");
    let s = seq(BRACKET_EXAMPLE);
    match prove(&s, Calculus::Ldia) {
        Ok(Some(p)) => {
            r.expect(check(&p, Calculus::Ldia), || format!("proof of `{s}` fails the checker"));
            let round = parse_proof(&p.to_text()).map(|q| check(&q, Calculus::Ldia)).unwrap_or(false);
            r.expect(round, || format!("text form of the proof of `{s}` does not re-check"));
            r.note(format!("provable in Ldia: {s} ({} rule applications)", p.size()));
            r.add("provable", 1);
        }
        other => r.fail(format!("`{s}` expected provable in Ldia, got {other:?}")),
    }

    let f = seq(FLAT_COUNTEREXAMPLE);
    match prove(&f, Calculus::Ldia) {
        Ok(None) => {
            r.note(format!("unprovable in Ldia: {f}"));
            r.add("unprovable", 1);
        }
        other => r.fail(format!("`{f}` expected unprovable in Ldia, got {:?}", other.map(|o| o.is_some()))),
    }
    match translate_flat_sequent(&f).and_then(|t| prove_flat(&t, Calculus::L).map(|p| (t, p))) {
        Ok((t, Some(_))) => {
            r.note(format!("flat image provable in L: {t}"));
            r.add("provable", 1);
        }
        other => r.fail(format!("flat image of `{f}` expected provable in L, got {:?}", other.map(|o| o.1.is_some()))),
    }

    let e = seq(UNIT_EXAMPLE);
    let expect = parse_type(UNIT_INTERPOLANT).expect("parses");
    match prove(&e, Calculus::L1starDiaM).and_then(|p| {
        let p = p.ok_or_else(|| crate::Error::Unprovable(e.to_string()))?;
        extract_at(&p, &Span::root(1, 2), Calculus::L1starDiaM)
    }) {
        Ok(res) if res.interpolant == expect => {
            r.note(format!("interpolant of `{e}` at `{}`: {}", res.partition, res.interpolant));
            r.add("interpolants", 1);
        }
        Ok(res) => r.fail(format!("interpolant of `{e}` is `{}`, expected `{expect}`", res.interpolant)),
        Err(err) => r.fail(format!("`{e}`: {err}")),
    }
    r.finish()
}

pub fn run_thin() -> Report {
    let mut r = Report::start("thin-indexing");
    let s = seq(BRACKET_EXAMPLE);
    let expect = seq(BRACKET_EXAMPLE_INDEXED);
    let out = prove(&s, Calculus::Ldia).and_then(|p| thin_index(&p.ok_or_else(|| crate::Error::Unprovable(s.to_string()))?));
    match out {
        Ok((ip, theta)) => {
            r.expect(ip.conclusion == expect, || format!("indexed conclusion `{}`, expected `{expect}`", ip.conclusion));
            r.expect(ip.conclusion.is_thin(), || format!("`{}` is not thin", ip.conclusion));
            r.expect(check(&ip, Calculus::LdiaM), || "indexed proof fails the LdiaM checker".into());
            r.expect(ip.conclusion.deindex(&theta) == s, || "de-indexing does not recover the sequent".into());
            r.note(format!("{}", ip.conclusion));
            let theta: Vec<String> = theta.iter().map(|(k, v)| format!("{k}->{v}")).collect();
            r.note(format!("theta: {}", theta.join(", ")));
            r.add("sequents", 1);
        }
        Err(e) => r.fail(format!("{s}: {e}")),
    }
    r.finish()
}

/// Pairwise inequivalence and unit length of `A0 .. A_max_i`, and the
/// interpolants of the family proofs.
pub fn run_ai_family(max_i: usize) -> Report {
    let mut r = Report::start("a-family");
    for i in 0..=max_i {
        let ai = a_type(i);
        r.expect(ai.length() == 1, || format!("||A{i}|| = {}", ai.length()));
        let id = Sequent::flat([ai.clone()], ai.clone());
        match prove_flat(&id, Calculus::L1star) {
            Ok(Some(_)) => r.add("identities", 1),
            other => r.fail(format!("`{id}` expected provable, got {:?}", other.map(|o| o.is_some()))),
        }
        for j in 0..i {
            let s = Sequent::flat([ai.clone()], a_type(j));
            match prove_flat(&s, Calculus::L1star) {
                Ok(None) => r.add("inequivalent pairs", 1),
                Ok(Some(p)) => {
                    r.add("provable pairs", 1);
                    r.note(format!("A{i} => A{j} is provable ({} rule applications)", p.size()));
                    r.fail(format!("`{s}` expected unprovable, but it is provable"));
                }
                Err(e) => r.fail(format!("`{s}`: {e}")),
            }
        }
        if i >= 1 {
            let got = a_family_proof(i).and_then(|p| {
                if !check(&p, Calculus::L1star) {
                    return Err(crate::Error::Precondition(format!("family proof {i} fails the checker")));
                }
                extract_at(&p, &a_family_selection(i), Calculus::L1star)
            });
            match got {
                Ok(res) if res.interpolant == ai => {
                    r.add("interpolants", 1);
                    if i <= 3 {
                        r.note(format!("{} ; selection {} -> {}", res.conclusion, res.partition.selected, res.interpolant));
                    }
                }
                Ok(res) => r.fail(format!("family {i}: interpolant `{}`, expected `{ai}`", res.interpolant)),
                Err(e) => r.fail(format!("family {i}: {e}")),
            }
        }
    }
    r.finish()
}
