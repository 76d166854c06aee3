//! Context-free grammars over type-named nonterminals, CKY membership with
//! derivation trees, bounded language enumeration, and derivability from a
//! finite set of sequents by Cut alone.

mod cut;
mod grammar;
mod parse;

pub use cut::{cut_closure, cut_derives, cut_sequent, CutDerivation, CutRule};
pub use grammar::{Cfg, Production, Symbol};
pub use parse::{derives, language_upto, DerivationTree, Parser};

#[cfg(test)]
mod tests;
