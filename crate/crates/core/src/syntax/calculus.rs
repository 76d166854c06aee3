use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Hedge, Sequent, Tree, Type};
use crate::error::{Error, Result};

/// The sequent calculi supported by the prover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Calculus {
    /// `L◊`
    Ldia,
    /// `L◊m`, indexed brackets and modalities
    LdiaM,
    /// `L*◊`, empty antecedents allowed
    LstarDia,
    /// `L*1◊`, with the unit
    L1starDia,
    /// `L*1◊m`
    L1starDiaM,
    /// bracket-free Lambek calculus
    L,
    Lstar,
    L1star,
}

impl Calculus {
    pub const ALL: [Calculus; 8] = [
        Calculus::Ldia,
        Calculus::LdiaM,
        Calculus::LstarDia,
        Calculus::L1starDia,
        Calculus::L1starDiaM,
        Calculus::L,
        Calculus::Lstar,
        Calculus::L1star,
    ];

    pub fn has_brackets(self) -> bool {
        !matches!(self, Calculus::L | Calculus::Lstar | Calculus::L1star)
    }

    pub fn is_indexed(self) -> bool {
        matches!(self, Calculus::LdiaM | Calculus::L1starDiaM)
    }

    /// Empty antecedents allowed (no restriction on `=>\` and `=>/`).
    pub fn is_starred(self) -> bool {
        !matches!(self, Calculus::Ldia | Calculus::LdiaM | Calculus::L)
    }

    pub fn has_unit(self) -> bool {
        matches!(self, Calculus::L1starDia | Calculus::L1starDiaM | Calculus::L1star)
    }

    /// The multimodal counterpart, used for thin indexing.
    pub fn indexed(self) -> Calculus {
        match self {
            Calculus::Ldia | Calculus::LdiaM => Calculus::LdiaM,
            Calculus::LstarDia | Calculus::L1starDia | Calculus::L1starDiaM => Calculus::L1starDiaM,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Calculus::Ldia => "Ldia",
            Calculus::LdiaM => "LdiaM",
            Calculus::LstarDia => "LstarDia",
            Calculus::L1starDia => "L1starDia",
            Calculus::L1starDiaM => "L1starDiaM",
            Calculus::L => "L",
            Calculus::Lstar => "Lstar",
            Calculus::L1star => "L1star",
        }
    }

    fn type_error(self, t: &Type) -> Option<String> {
        match t {
            Type::Prim(_) => None,
            Type::Unit if !self.has_unit() => Some("unit not available".into()),
            Type::Unit => None,
            Type::Under(a, b) | Type::Over(a, b) | Type::Prod(a, b) => {
                self.type_error(a).or_else(|| self.type_error(b))
            }
            Type::Dia(i, a) | Type::BoxDown(i, a) => {
                if !self.has_brackets() {
                    Some("modalities not available".into())
                } else if i.is_some() != self.is_indexed() {
                    Some(self.index_message())
                } else {
                    self.type_error(a)
                }
            }
        }
    }

    fn index_message(self) -> String {
        if self.is_indexed() {
            "modalities and brackets must be indexed".into()
        } else {
            "indexed modalities or brackets in a non-indexed calculus".into()
        }
    }

    fn hedge_error(self, h: &Hedge) -> Option<String> {
        for t in &h.0 {
            let e = match t {
                Tree::Leaf(ty) => self.type_error(ty),
                Tree::Bracket(i, inner) => {
                    if !self.has_brackets() {
                        Some("brackets not available".into())
                    } else if i.is_some() != self.is_indexed() {
                        Some(self.index_message())
                    } else if inner.is_empty() && !self.is_starred() {
                        Some("empty bracket pair".into())
                    } else {
                        self.hedge_error(inner)
                    }
                }
            };
            if e.is_some() {
                return e;
            }
        }
        None
    }

    /// Reject sequents that do not belong to the language of this calculus.
    pub fn admits(self, s: &Sequent) -> Result<()> {
        let reason = if s.antecedent.is_empty() && !self.is_starred() {
            Some("empty antecedent".to_string())
        } else {
            self.hedge_error(&s.antecedent)
                .or_else(|| self.type_error(&s.succedent))
        };
        match reason {
            None => Ok(()),
            Some(reason) => Err(Error::IllFormed {
                sequent: s.to_string(),
                calculus: self.name().to_string(),
                reason,
            }),
        }
    }

    pub fn admits_type(self, t: &Type) -> bool {
        self.type_error(t).is_none()
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Calculus {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Calculus::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown calculus `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    #[test]
    fn admits_checks_calculus_features() {
        let s = parse_sequent("[ ] => dia 1").unwrap();
        assert!(Calculus::Ldia.admits(&s).is_err());
        assert!(Calculus::LstarDia.admits(&s).is_err());
        assert!(Calculus::L1starDia.admits(&s).is_ok());
        assert!(Calculus::L1starDiaM.admits(&s).is_err());

        let s = parse_sequent("=> p \\ p").unwrap();
        assert!(Calculus::Ldia.admits(&s).is_err());
        assert!(Calculus::Lstar.admits(&s).is_ok());
    }

    #[test]
    fn names_round_trip() {
        for c in Calculus::ALL {
            assert_eq!(c.name().parse::<Calculus>().unwrap(), c);
        }
    }
}
