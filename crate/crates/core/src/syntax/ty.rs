use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A (possibly indexed) type of the Lambek calculus with brackets.
///
/// `Under(a, b)` is `a \ b`, `Over(b, a)` is `b / a`. Modalities carry an
/// optional positive index: `None` in the plain calculi, `Some(i)` in the
/// multimodal ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Prim(String),
    Unit,
    Under(Box<Type>, Box<Type>),
    Over(Box<Type>, Box<Type>),
    Prod(Box<Type>, Box<Type>),
    Dia(Option<u32>, Box<Type>),
    BoxDown(Option<u32>, Box<Type>),
}

impl Type {
    pub fn prim(name: impl Into<String>) -> Type {
        Type::Prim(name.into())
    }

    /// `left \ right`
    pub fn under(left: Type, right: Type) -> Type {
        Type::Under(Box::new(left), Box::new(right))
    }

    /// `left / right`
    pub fn over(left: Type, right: Type) -> Type {
        Type::Over(Box::new(left), Box::new(right))
    }

    pub fn prod(left: Type, right: Type) -> Type {
        Type::Prod(Box::new(left), Box::new(right))
    }

    pub fn dia(index: Option<u32>, body: Type) -> Type {
        Type::Dia(index, Box::new(body))
    }

    pub fn boxd(index: Option<u32>, body: Type) -> Type {
        Type::BoxDown(index, Box::new(body))
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Type::Under(..) | Type::Over(..) | Type::Prod(..))
    }

    /// `||A||`: primitives count 1, the unit 0, each modality 2.
    pub fn length(&self) -> usize {
        match self {
            Type::Prim(_) => 1,
            Type::Unit => 0,
            Type::Under(a, b) | Type::Over(a, b) | Type::Prod(a, b) => a.length() + b.length(),
            Type::Dia(_, a) | Type::BoxDown(_, a) => a.length() + 2,
        }
    }

    /// Number of connective and unit occurrences. Every backward rule of the
    /// sequent calculus strictly decreases the sum of this over a sequent.
    pub fn connectives(&self) -> usize {
        match self {
            Type::Prim(_) => 0,
            Type::Unit => 1,
            Type::Under(a, b) | Type::Over(a, b) | Type::Prod(a, b) => {
                1 + a.connectives() + b.connectives()
            }
            Type::Dia(_, a) | Type::BoxDown(_, a) => 1 + a.connectives(),
        }
    }

    /// Number of modality occurrences (either kind, any index).
    pub fn modalities(&self) -> usize {
        match self {
            Type::Prim(_) | Type::Unit => 0,
            Type::Under(a, b) | Type::Over(a, b) | Type::Prod(a, b) => {
                a.modalities() + b.modalities()
            }
            Type::Dia(_, a) | Type::BoxDown(_, a) => 1 + a.modalities(),
        }
    }

    /// Occurrences of the primitive `name`.
    pub fn sigma(&self, name: &str) -> usize {
        match self {
            Type::Prim(p) => usize::from(p == name),
            Type::Unit => 0,
            Type::Under(a, b) | Type::Over(a, b) | Type::Prod(a, b) => {
                a.sigma(name) + b.sigma(name)
            }
            Type::Dia(_, a) | Type::BoxDown(_, a) => a.sigma(name),
        }
    }

    /// Occurrences of modalities carrying `index`. With `None` this counts the
    /// modalities of a non-indexed type.
    pub fn tau(&self, index: Option<u32>) -> usize {
        match self {
            Type::Prim(_) | Type::Unit => 0,
            Type::Under(a, b) | Type::Over(a, b) | Type::Prod(a, b) => a.tau(index) + b.tau(index),
            Type::Dia(i, a) | Type::BoxDown(i, a) => usize::from(*i == index) + a.tau(index),
        }
    }

    pub fn collect_primitives(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Prim(p) => {
                out.insert(p.clone());
            }
            Type::Unit => {}
            Type::Under(a, b) | Type::Over(a, b) | Type::Prod(a, b) => {
                a.collect_primitives(out);
                b.collect_primitives(out);
            }
            Type::Dia(_, a) | Type::BoxDown(_, a) => a.collect_primitives(out),
        }
    }

    pub fn primitives(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_primitives(&mut out);
        out
    }

    /// Modality indices, `None` standing for a non-indexed modality.
    pub fn collect_indices(&self, out: &mut BTreeSet<Option<u32>>) {
        match self {
            Type::Prim(_) | Type::Unit => {}
            Type::Under(a, b) | Type::Over(a, b) | Type::Prod(a, b) => {
                a.collect_indices(out);
                b.collect_indices(out);
            }
            Type::Dia(i, a) | Type::BoxDown(i, a) => {
                out.insert(*i);
                a.collect_indices(out);
            }
        }
    }

    pub fn has_unit(&self) -> bool {
        match self {
            Type::Prim(_) => false,
            Type::Unit => true,
            Type::Under(a, b) | Type::Over(a, b) | Type::Prod(a, b) => a.has_unit() || b.has_unit(),
            Type::Dia(_, a) | Type::BoxDown(_, a) => a.has_unit(),
        }
    }

    /// Every unit occurrence is the immediate body of a diamond.
    pub fn is_guarded(&self) -> bool {
        match self {
            Type::Prim(_) => true,
            Type::Unit => false,
            Type::Dia(_, a) if **a == Type::Unit => true,
            Type::Under(a, b) | Type::Over(a, b) | Type::Prod(a, b) => {
                a.is_guarded() && b.is_guarded()
            }
            Type::Dia(_, a) | Type::BoxDown(_, a) => a.is_guarded(),
        }
    }

    /// Rename primitives through `theta` (identity outside its domain) and
    /// strip every modality index.
    pub fn deindex(&self, theta: &BTreeMap<String, String>) -> Type {
        match self {
            Type::Prim(p) => Type::Prim(theta.get(p).cloned().unwrap_or_else(|| p.clone())),
            Type::Unit => Type::Unit,
            Type::Under(a, b) => Type::under(a.deindex(theta), b.deindex(theta)),
            Type::Over(a, b) => Type::over(a.deindex(theta), b.deindex(theta)),
            Type::Prod(a, b) => Type::prod(a.deindex(theta), b.deindex(theta)),
            Type::Dia(_, a) => Type::dia(None, a.deindex(theta)),
            Type::BoxDown(_, a) => Type::boxd(None, a.deindex(theta)),
        }
    }
}

struct Operand<'a>(&'a Type);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_binary() {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn modality(f: &mut fmt::Formatter<'_>, word: &str, index: Option<u32>) -> fmt::Result {
    match index {
        Some(i) => write!(f, "{word}:{i}"),
        None => f.write_str(word),
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Prim(p) => f.write_str(p),
            Type::Unit => f.write_str("1"),
            Type::Under(a, b) => write!(f, "{} \\ {}", Operand(a), Operand(b)),
            Type::Over(a, b) => write!(f, "{} / {}", Operand(a), Operand(b)),
            Type::Prod(a, b) => write!(f, "{} * {}", Operand(a), Operand(b)),
            Type::Dia(i, a) => {
                modality(f, "dia", *i)?;
                write!(f, " {}", Operand(a))
            }
            Type::BoxDown(i, a) => {
                modality(f, "boxd", *i)?;
                write!(f, " {}", Operand(a))
            }
        }
    }
}
