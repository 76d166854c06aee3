use thiserror::Error;

use crate::syntax::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    #[error("sequent `{sequent}` is not well formed for {calculus}: {reason}")]
    IllFormed {
        sequent: String,
        calculus: String,
        reason: String,
    },

    #[error("proof search exceeded its limit ({0})")]
    Limit(String),

    #[error("bad partition: {0}")]
    Partition(String),

    #[error("sequent `{0}` is not provable")]
    Unprovable(String),

    #[error("{0}")]
    Precondition(String),

    #[error("type `{0}` already contains a reserved primitive (m or n)")]
    ReservedPrimitive(String),

    #[error("grammar too large: {0}")]
    Resource(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
