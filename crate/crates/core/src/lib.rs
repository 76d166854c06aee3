//! Lambek calculus with brackets and residuated modalities.
//!
//! The crate provides:
//!
//! * [`syntax`]: types, bracketed hedges, contexts, sequents, grammars and
//!   their text formats.
//! * [`prover`]: cut-free backward proof search for `L◊` and its variants
//!   (multimodal, empty antecedents, unit), an independent proof checker and
//!   the translation into the bracket-free calculus.
//! * [`freegroup`]: reduced free-group words and the interpretation of
//!   indexed types and hedges.
//! * [`interpolate`]: thin indexing, interpolant extraction from cut-free
//!   proofs, the bracket-elimination step and the reduction to
//!   two-premise sequents.
//! * [`cfgkit`]: context-free grammars, CKY membership, bounded language
//!   enumeration and Cut-only derivability.
//! * [`compiler`]: bounded type enumeration, the finite rule sets and the
//!   compilation of a categorial grammar into an equivalent CFG.
//! * [`harness`]: executable reports that exercise all of the above.
//!
//! ```
//! use lambek_diamond::prelude::*;
//!
//! let s = parse_sequent("[ [ p ] dia p \\ p ] => boxd dia dia p").unwrap();
//! let proof = prove(&s, Calculus::Ldia).unwrap().expect("provable");
//! assert!(check(&proof, Calculus::Ldia));
//! ```

pub mod cfgkit;
pub mod compiler;
pub mod error;
pub mod freegroup;
pub mod harness;
pub mod interpolate;
pub mod prover;
pub mod syntax;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::cfgkit::{cut_derives, derives, language_upto, Cfg, CutDerivation, Symbol};
    pub use crate::compiler::{build_rulesets, compile_cfg, enum_types, RuleSets};
    pub use crate::error::{Error, Result};
    pub use crate::freegroup::{interpret, interpret_hedge, pentus_split, GroupWord};
    pub use crate::interpolate::{
        bracket_step, extract_interpolant, pentus_reduce, thin_index, verify_thin_eq2,
        InterpolationResult, Partition,
    };
    pub use crate::prover::{check, prove, prove_flat, translate_flat, Proof, Rule};
    pub use crate::syntax::{
        parse_context, parse_grammar, parse_hedge, parse_sequent, parse_type, Calculus, Context,
        Grammar, Hedge, Sequent, Span, Tree, Type,
    };
}
