//! Types, hedges, contexts, sequents and grammars, with their text formats.
//!
//! Type syntax: `p`, `1`, `A \ B`, `B / A`, `A * B`, `dia A`, `boxd A`,
//! `dia:3 A`, `boxd:3 A`. Binary operators share one precedence level and do
//! not associate, so nested binaries are parenthesised; prefixes bind tighter.
//! Hedges are whitespace separated trees with `[ ... ]` or `[:i ... ]:i`
//! brackets, sequents are `hedge => type`, contexts contain one `_`.

mod calculus;
mod grammar;
mod hedge;
mod parse;
mod sequent;
mod ty;

pub use calculus::Calculus;
pub use grammar::{parse_grammar, Grammar};
pub use hedge::{Context, Hedge, Hole, Span, Tree};
pub use parse::{parse_context, parse_hedge, parse_sequent, parse_type, ParseError};
pub use sequent::Sequent;
pub use ty::Type;

/// `Γ[Δ]`
pub fn plug(c: &Context, d: &Hedge) -> Hedge {
    c.plug(d)
}

pub fn yield_of(h: &Hedge) -> Vec<Type> {
    h.yield_types()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn arb_type(indexed: bool) -> impl Strategy<Value = Type> {
        let leaf = prop_oneof![
            Just(Type::prim("p")),
            Just(Type::prim("q")),
            Just(Type::prim("p1")),
            Just(Type::Unit),
        ];
        let idx = move || if indexed { (1u32..4).prop_map(Some).boxed() } else { Just(None).boxed() };
        leaf.prop_recursive(4, 24, 2, move |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::under(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::over(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Type::prod(a, b)),
                (idx(), inner.clone()).prop_map(|(i, a)| Type::dia(i, a)),
                (idx(), inner).prop_map(|(i, a)| Type::boxd(i, a)),
            ]
        })
    }

    fn arb_hedge(indexed: bool) -> impl Strategy<Value = Hedge> {
        let idx = move || if indexed { (1u32..4).prop_map(Some).boxed() } else { Just(None).boxed() };
        let tree = arb_type(indexed).prop_map(Tree::Leaf).prop_recursive(3, 12, 3, move |inner| {
            (idx(), prop::collection::vec(inner, 0..3)).prop_map(|(i, v)| Tree::bracket(i, v))
        });
        prop::collection::vec(tree, 0..4).prop_map(Hedge)
    }

    fn total_tau(t: &Type) -> usize {
        t.modalities()
    }

    proptest! {
        #[test]
        fn type_print_parse_round_trip(t in prop_oneof![arb_type(false), arb_type(true)]) {
            let text = t.to_string();
            prop_assert_eq!(parse_type(&text).unwrap(), t);
        }

        #[test]
        fn sequent_print_parse_round_trip(h in arb_hedge(true), t in arb_type(true)) {
            let s = Sequent::new(h, t);
            prop_assert_eq!(parse_sequent(&s.to_string()).unwrap(), s);
        }

        #[test]
        fn length_is_sigma_plus_twice_tau(t in arb_type(true)) {
            let sigma: usize = t.primitives().iter().map(|p| t.sigma(p)).sum();
            prop_assert_eq!(t.length(), sigma + 2 * total_tau(&t));
        }

        #[test]
        fn plug_yield_is_prefix_middle_suffix(h in arb_hedge(false), d in arb_hedge(false), k in 0usize..20) {
            let spans = h.spans(true);
            let span = &spans[k % spans.len()];
            let c = h.context_of(&Span::new(span.path.clone(), span.start, span.start));
            let (pre, post) = c.yield_around();
            let mut expect = pre;
            expect.extend(d.yield_types());
            expect.extend(post);
            prop_assert_eq!(c.plug(&d).yield_types(), expect);
        }

        #[test]
        fn compose_is_nested_plug(h in arb_hedge(false), g in arb_hedge(false), d in arb_hedge(false), k in 0usize..20, j in 0usize..20) {
            let hs = h.spans(true);
            let gs = g.spans(true);
            let a = &hs[k % hs.len()];
            let b = &gs[j % gs.len()];
            let outer = h.context_of(&Span::new(a.path.clone(), a.start, a.start));
            let inner = g.context_of(&Span::new(b.path.clone(), b.start, b.start));
            prop_assert_eq!(outer.compose(&inner).plug(&d), outer.plug(&inner.plug(&d)));
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(parse_type("p").unwrap().length(), 1);
        assert_eq!(parse_type("dia 1").unwrap().length(), 2);
        assert_eq!(parse_type("(1/q)\\1").unwrap().length(), 1);
    }

    #[test]
    fn bracketings_count() {
        let ts = vec![Type::prim("p"), Type::prim("q")];
        let all = Hedge::bracketings(&ts, 1, false);
        // p q, [p] q, p [q], [p q]
        assert_eq!(all.len(), 4);
        let with_empty = Hedge::bracketings(&ts, 1, true);
        // plus [] in each of the three gaps
        assert_eq!(with_empty.len(), 7);
        let set: BTreeSet<_> = Hedge::bracketings(&ts, 3, true).into_iter().collect();
        assert_eq!(set.len(), Hedge::bracketings(&ts, 3, true).len());
        assert!(set.iter().all(|h| h.yield_types() == ts && h.bracket_count() <= 3));
    }

    #[test]
    fn sigma_counts_occurrences() {
        assert_eq!(parse_type("dia:1 p1 \\ p2").unwrap().sigma("p1"), 1);
    }
}
