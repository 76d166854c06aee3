use crate::error::Result;
use crate::prover::Proof;
use crate::syntax::{Span, Type};

/// `A0 = q`, `Ai+1 = (1 / Ai) \ 1`, all of length 1. Type raising makes
/// every `Ai` with `i >= 1` equivalent to `A1`; only `A0` stands apart.
pub fn a_type(i: usize) -> Type {
    let mut t = Type::prim("q");
    for _ in 0..i {
        t = Type::under(Type::over(Type::Unit, t), Type::Unit);
    }
    t
}

/// `1 => 1`
fn unit_identity() -> Result<Proof> {
    Proof::unit_l(Proof::unit_r(), &[], 0)
}

/// A proof of `(1/1)^(i-1) 1/q q (1\1)^i => 1` for `i >= 1`, built so that
/// the selection `q (1\1)^i` interpolates to `Ai`.
pub fn a_family_proof(i: usize) -> Result<Proof> {
    assert!(i >= 1, "the family starts at i = 1");
    let at = Span::root(0, 1);
    // 1/q q => 1
    let mut q = Proof::over_l(Proof::ax(Type::prim("q")), unit_identity()?, &at)?;
    let mut level = 1;
    loop {
        // X 1\1 => 1
        let p = Proof::under_l(q, unit_identity()?, &at)?;
        if level == i {
            return Ok(p);
        }
        // 1/1 X 1\1 => 1
        q = Proof::over_l(p, unit_identity()?, &at)?;
        level += 1;
    }
}

/// The span of `q (1\1)^i` in the conclusion of [`a_family_proof`].
pub fn a_family_selection(i: usize) -> Span {
    Span::root(i, 2 * i + 1)
}
