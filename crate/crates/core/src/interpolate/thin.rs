use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::prover::{Proof, Rule};
use crate::syntax::{Span, Type};

struct Fresh {
    prims: u32,
    indices: u32,
    theta: BTreeMap<String, String>,
}

fn one(s: &Span) -> Span {
    Span::new(s.path.clone(), s.start, s.start + 1)
}

fn rebuild(p: &Proof, fresh: &mut Fresh) -> Result<Proof> {
    let prem = p.premises.iter().map(|q| rebuild(q, fresh)).collect::<Result<Vec<_>>>()?;
    let mut prem = prem.into_iter();
    let mut next = || prem.next().expect("arity checked by the rule");
    let at = &p.principal;
    Ok(match p.rule {
        Rule::Ax => {
            let name = match &p.conclusion.succedent {
                Type::Prim(name) => name.clone(),
                t => return Err(Error::Precondition(format!("axiom on non-primitive `{t}`"))),
            };
            fresh.prims += 1;
            let fresh_name = format!("p{}", fresh.prims);
            fresh.theta.insert(fresh_name.clone(), name);
            Proof::ax(Type::prim(fresh_name))
        }
        Rule::UnitR => Proof::unit_r(),
        Rule::UnderR => Proof::under_r(next())?,
        Rule::OverR => Proof::over_r(next())?,
        Rule::BoxDownR => Proof::box_r(next())?,
        Rule::ProdR => {
            let l = next();
            Proof::prod_r(l, next())
        }
        Rule::DiaR => {
            fresh.indices += 1;
            Proof::dia_r(next(), Some(fresh.indices))
        }
        Rule::BoxDownL => {
            fresh.indices += 1;
            Proof::box_l(next(), at, Some(fresh.indices))?
        }
        Rule::DiaL => Proof::dia_l(next(), at)?,
        Rule::ProdL => Proof::prod_l(next(), &Span::new(at.path.clone(), at.start, at.start + 2))?,
        Rule::UnitL => Proof::unit_l(next(), &at.path, at.start)?,
        Rule::UnderL => {
            let arg = next();
            Proof::under_l(arg, next(), &one(at))?
        }
        Rule::OverL => {
            let arg = next();
            Proof::over_l(arg, next(), &one(at))?
        }
    })
}

/// Index a non-indexed proof thinly: every axiom instance gets its own
/// primitive `p1, p2, ...` and every `DiaR` and `BoxDownL` instance its own
/// index, both numbered in post-order. `DiaL` and `BoxDownR` inherit the
/// index of the bracket they act on. Returns the indexed proof and the map
/// from fresh primitives back to the original ones.
pub fn thin_index(p: &Proof) -> Result<(Proof, BTreeMap<String, String>)> {
    if !p.conclusion.indices().iter().all(Option::is_none) {
        return Err(Error::Precondition(format!("`{}` is already indexed", p.conclusion)));
    }
    let mut fresh = Fresh { prims: 0, indices: 0, theta: BTreeMap::new() };
    let q = rebuild(p, &mut fresh)?;
    Ok((q, fresh.theta))
}
