use super::{prove, Proof};
use crate::error::{Error, Result};
use crate::syntax::{Calculus, Sequent, Type};

/// The reserved primitives of the bracket-free translation.
pub const MARK_OPEN: &str = "m";
pub const MARK_CLOSE: &str = "n";

fn flat(t: &Type) -> Result<Type> {
    Ok(match t {
        Type::Prim(p) if p == MARK_OPEN || p == MARK_CLOSE => {
            return Err(Error::ReservedPrimitive(p.clone()));
        }
        Type::Prim(_) | Type::Unit => t.clone(),
        Type::Under(a, b) => Type::under(flat(a)?, flat(b)?),
        Type::Over(b, a) => Type::over(flat(b)?, flat(a)?),
        Type::Prod(a, b) => Type::prod(flat(a)?, flat(b)?),
        Type::Dia(None, a) => Type::prod(Type::prim(MARK_OPEN), Type::prod(flat(a)?, Type::prim(MARK_CLOSE))),
        Type::BoxDown(None, a) => Type::over(Type::under(Type::prim(MARK_OPEN), flat(a)?), Type::prim(MARK_CLOSE)),
        Type::Dia(Some(_), _) | Type::BoxDown(Some(_), _) => {
            return Err(Error::Precondition(format!("cannot translate indexed type `{t}`")));
        }
    })
}

/// The bracket-free image: `◊A ↦ m * (A * n)`, `□↓A ↦ (m \ A) / n`,
/// homomorphic elsewhere.
pub fn translate_flat(t: &Type) -> Result<Type> {
    flat(t)
}

/// Translate a bracket-free sequent type by type.
pub fn translate_flat_sequent(s: &Sequent) -> Result<Sequent> {
    if !s.antecedent.is_flat() {
        return Err(Error::Precondition(format!("`{s}` has brackets in its antecedent")));
    }
    let ant = s.antecedent.yield_types().iter().map(flat).collect::<Result<Vec<_>>>()?;
    Ok(Sequent::flat(ant, flat(&s.succedent)?))
}

/// Decide a bracket-free sequent in `L`, `L*` or `L*` with the unit.
pub fn prove_flat(s: &Sequent, calc: Calculus) -> Result<Option<Proof>> {
    if calc.has_brackets() {
        return Err(Error::Precondition(format!("{calc} is not a bracket-free calculus")));
    }
    prove(s, calc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_sequent, parse_type};

    #[test]
    fn translation_examples() {
        let t = |s: &str| translate_flat(&parse_type(s).unwrap()).unwrap().to_string();
        assert_eq!(t("dia p"), "m * (p * n)");
        assert_eq!(t("boxd p"), "(m \\ p) / n");
        assert_eq!(t("p \\ q"), "p \\ q");
        assert!(translate_flat(&parse_type("m / p").unwrap()).is_err());
        assert!(translate_flat(&parse_type("dia:1 p").unwrap()).is_err());
    }

    #[test]
    fn box_readings_are_interderivable() {
        let a = parse_type("(m \\ p) / n").unwrap();
        let b = parse_type("m \\ (p / n)").unwrap();
        for (x, y) in [(&a, &b), (&b, &a)] {
            let s = Sequent::flat([x.clone()], y.clone());
            assert!(prove_flat(&s, Calculus::L).unwrap().is_some());
        }
    }

    #[test]
    fn flat_prover_rejects_bracket_calculi() {
        let s = parse_sequent("q => q").unwrap();
        assert!(prove_flat(&s, Calculus::Ldia).is_err());
        assert_eq!(prove_flat(&s, Calculus::L).unwrap().unwrap().size(), 1);
    }
}
