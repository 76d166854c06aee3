//! Thin indexing, interpolant extraction and the two reductions built on it:
//! eliminating a bracket pair and reducing a bracket-free sequent to short
//! ones under Cut.
//!
//! Extraction follows the last rule of a cut-free proof and the position of
//! the selected hedge relative to the rule's active part, returning the
//! interpolant `E` together with cut-free proofs of `Δ => E` and
//! `Γ[E] => C`.

mod bracket;
mod extract;
mod family;
mod pentus;
mod thin;

pub use bracket::{bracket_step, BracketStep, BracketVariant};
pub use extract::{extract_at, extract_interpolant, Conditions, Counts, InterpolationResult, Partition};
pub use family::{a_family_proof, a_family_selection, a_type};
pub use pentus::{cut_complete, in_bounds, pentus_reduce};
pub use thin::thin_index;

use crate::error::{Error, Result};
use crate::freegroup::interpret_hedge;
use crate::prover::{check, Proof};
use crate::syntax::Calculus;

/// `||E|| = |⟦Δ⟧|` for the interpolant of `part` in the thin indexed proof `p`.
pub fn verify_thin_eq2(p: &Proof, part: &Partition) -> Result<bool> {
    if !p.conclusion.is_thin() {
        return Err(Error::Precondition(format!("`{}` is not thin", p.conclusion)));
    }
    let calc = if check(p, Calculus::LdiaM) { Calculus::LdiaM } else { Calculus::L1starDiaM };
    let r = extract_interpolant(p, part, calc)?;
    Ok(r.interpolant.length() == interpret_hedge(&part.selected)?.len())
}

#[cfg(test)]
mod tests;
