//! Cut-free backward proof search, proof checking and the bracket-free
//! translation.
//!
//! The search tries, at every sequent, the axiom `p => p`, then `=> 1`, then
//! the right rule of the succedent (all split points for `*`), then the left
//! rules level by level from the outermost bracket inwards and left to right
//! within a level. Every backward step removes a connective or a unit, so the
//! search terminates; results are memoised per [`Prover`].

mod check;
mod flat;
mod proof;
mod search;
mod text;

pub use check::{check, verify};
pub use flat::{prove_flat, translate_flat, translate_flat_sequent, MARK_CLOSE, MARK_OPEN};
pub use proof::{Proof, Rule};
pub use search::{prove, prove_with, provable, Limits, Prover};
pub use text::parse_proof;


#[cfg(test)]
mod tests;
