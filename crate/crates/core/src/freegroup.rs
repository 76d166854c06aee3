//! Reduced words of the free group over primitives and bracket generators,
//! and the interpretation of indexed types and hedges in it.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::syntax::{Hedge, Tree, Type};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Prim(String),
    Open(u32),
    Close(u32),
}

/// A generator or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Generator, inverse: bool) -> Letter {
        Letter { gen, inverse }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }

    fn flipped(&self) -> Letter {
        Letter { gen: self.gen.clone(), inverse: !self.inverse }
    }
}

/// A reduced word. Construction always reduces, so `len` is `|u|`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord::default()
    }

    pub fn generator(gen: Generator) -> GroupWord {
        GroupWord { letters: vec![Letter::new(gen, false)] }
    }

    pub fn prim(name: &str) -> GroupWord {
        GroupWord::generator(Generator::Prim(name.to_string()))
    }

    /// Reduce an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> GroupWord {
        let mut out = GroupWord::identity();
        for l in letters {
            out.push(l);
        }
        out
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last().is_some_and(|last| last.cancels(&l)) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        for l in &other.letters {
            out.push(l.clone());
        }
        out
    }

    pub fn inv(&self) -> GroupWord {
        GroupWord { letters: self.letters.iter().rev().map(Letter::flipped).collect() }
    }

    /// Sum of exponents of `gen`; a homomorphism to the integers.
    pub fn exponent(&self, gen: &Generator) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == *gen)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Prim(p) => f.write_str(p),
            Generator::Open(i) => write!(f, "<{i}"),
            Generator::Close(i) => write!(f, ">{i}"),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gen)?;
        if self.inverse {
            f.write_str("'")?;
        }
        Ok(())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn bracketed(index: u32, body: &GroupWord, inverse: bool) -> GroupWord {
    let open = GroupWord::from_letters([Letter::new(Generator::Open(index), inverse)]);
    let close = GroupWord::from_letters([Letter::new(Generator::Close(index), inverse)]);
    open.mul(body).mul(&close)
}

/// How a missing index is treated.
#[derive(Clone, Copy)]
enum Indexing {
    Strict,
    Erased,
}

fn index_of(i: Option<u32>, mode: Indexing, what: &dyn fmt::Display) -> Result<u32> {
    match (i, mode) {
        (Some(i), _) => Ok(i),
        (None, Indexing::Erased) => Ok(0),
        (None, Indexing::Strict) => Err(Error::Precondition(format!(
            "free-group interpretation needs indexed input: `{what}`"
        ))),
    }
}

fn interpret_type(t: &Type, mode: Indexing) -> Result<GroupWord> {
    Ok(match t {
        Type::Prim(p) => GroupWord::prim(p),
        Type::Unit => GroupWord::identity(),
        Type::Under(a, b) => interpret_type(a, mode)?.inv().mul(&interpret_type(b, mode)?),
        Type::Over(b, a) => interpret_type(b, mode)?.mul(&interpret_type(a, mode)?.inv()),
        Type::Prod(a, b) => interpret_type(a, mode)?.mul(&interpret_type(b, mode)?),
        Type::Dia(i, a) => bracketed(index_of(*i, mode, t)?, &interpret_type(a, mode)?, false),
        Type::BoxDown(i, a) => bracketed(index_of(*i, mode, t)?, &interpret_type(a, mode)?, true),
    })
}

fn interpret_trees(h: &Hedge, mode: Indexing) -> Result<GroupWord> {
    let mut out = GroupWord::identity();
    for t in h.trees() {
        let w = match t {
            Tree::Leaf(ty) => interpret_type(ty, mode)?,
            Tree::Bracket(i, inner) => bracketed(index_of(*i, mode, t)?, &interpret_trees(inner, mode)?, false),
        };
        out = out.mul(&w);
    }
    Ok(out)
}

/// `⟦A⟧` for an indexed type.
pub fn interpret(t: &Type) -> Result<GroupWord> {
    interpret_type(t, Indexing::Strict)
}

/// `⟦Γ⟧` for an indexed hedge.
pub fn interpret_hedge(h: &Hedge) -> Result<GroupWord> {
    interpret_trees(h, Indexing::Strict)
}

/// The interpretation with every non-indexed bracket and modality read as
/// index 0. Plain types behave like a one-index multimodal language, so this
/// is still sound for provability and serves as a cheap necessary condition.
pub fn interpret_erased(t: &Type) -> GroupWord {
    interpret_type(t, Indexing::Erased).expect("erased interpretation is total")
}

pub fn interpret_hedge_erased(h: &Hedge) -> GroupWord {
    interpret_trees(h, Indexing::Erased).expect("erased interpretation is total")
}

/// The least `k` (1-based, `k < n`) with `|u_k u_{k+1}| <= max(|u_k|, |u_{k+1}|)`
/// for words whose product is the identity.
pub fn pentus_split(words: &[GroupWord]) -> Result<usize> {
    if words.len() < 2 {
        return Err(Error::Precondition("pentus_split needs at least two words".into()));
    }
    let product = words.iter().fold(GroupWord::identity(), |acc, w| acc.mul(w));
    if !product.is_identity() {
        return Err(Error::Precondition(format!("product is {product}, not the identity")));
    }
    words
        .windows(2)
        .position(|pair| pair[0].mul(&pair[1]).len() <= pair[0].len().max(pair[1].len()))
        .map(|k| k + 1)
        .ok_or_else(|| Error::Precondition("no split found; the product is not the identity".into()))
}

fn random_word(rng: &mut impl Rng, len: usize, gens: &[Generator]) -> GroupWord {
    let mut w = GroupWord::identity();
    while w.len() < len {
        let g = gens[rng.gen_range(0..gens.len())].clone();
        w.push(Letter::new(g, rng.gen_bool(0.5)));
    }
    w
}

/// `n` words of length at most `max_len` whose product is the identity, built
/// as the telescoping factors `w_{i-1}^{-1} w_i` of random partial products
/// with `w_0 = w_n = e`. Factors that come out too long are resampled.
pub fn random_identity_tuple(
    rng: &mut impl Rng,
    n: usize,
    max_len: usize,
    gens: &[Generator],
) -> Vec<GroupWord> {
    'retry: loop {
        let mut partial = vec![GroupWord::identity()];
        for _ in 1..n {
            let len = rng.gen_range(0..=max_len);
            partial.push(random_word(rng, len, gens));
        }
        partial.push(GroupWord::identity());
        let mut out = Vec::with_capacity(n);
        for pair in partial.windows(2) {
            let u = pair[0].inv().mul(&pair[1]);
            if u.len() > max_len {
                continue 'retry;
            }
            out.push(u);
        }
        return out;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_hedge, parse_type};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gens() -> Vec<Generator> {
        vec![Generator::Prim("a".into()), Generator::Prim("b".into()), Generator::Open(1)]
    }

    fn letter(g: &str, inverse: bool) -> Letter {
        Letter::new(Generator::Prim(g.into()), inverse)
    }

    fn arb_letters() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0usize..3, any::<bool>()), 0..10).prop_map(|v| {
            v.into_iter().map(|(g, s)| Letter::new(gens()[g].clone(), s)).collect()
        })
    }

    /// Cancel adjacent inverse pairs in an arbitrary order until none is left.
    fn reduce_randomly(mut letters: Vec<Letter>, choices: &[usize]) -> Vec<Letter> {
        let mut k = 0;
        loop {
            let sites: Vec<usize> = (0..letters.len().saturating_sub(1))
                .filter(|&i| letters[i].cancels(&letters[i + 1]))
                .collect();
            if sites.is_empty() {
                return letters;
            }
            let pick = sites[choices.get(k).copied().unwrap_or(0) % sites.len()];
            k += 1;
            letters.drain(pick..pick + 2);
        }
    }

    proptest! {
        #[test]
        fn reduction_is_confluent(letters in arb_letters(), choices in prop::collection::vec(0usize..8, 0..10)) {
            let canonical = GroupWord::from_letters(letters.clone());
            let other = reduce_randomly(letters, &choices);
            prop_assert_eq!(canonical.letters(), other.as_slice());
        }

        #[test]
        fn group_laws(a in arb_letters(), b in arb_letters(), c in arb_letters()) {
            let (a, b, c) = (GroupWord::from_letters(a), GroupWord::from_letters(b), GroupWord::from_letters(c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&GroupWord::identity()), a.clone());
            prop_assert!(a.mul(&a.inv()).is_identity());
            prop_assert!(a.inv().mul(&a).is_identity());
            prop_assert_eq!(a.inv().len(), a.len());
        }

        #[test]
        fn split_exists_on_identity_tuples(seed in any::<u64>(), n in 2usize..7) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let words = random_identity_tuple(&mut rng, n, 4, &gens());
            let k = pentus_split(&words).unwrap();
            // scan every adjacent pair independently
            let witnesses: Vec<usize> = (0..n - 1)
                .filter(|&i| words[i].mul(&words[i + 1]).len() <= words[i].len().max(words[i + 1].len()))
                .map(|i| i + 1)
                .collect();
            prop_assert_eq!(Some(&k), witnesses.first());
        }
    }

    #[test]
    fn cancellation_examples() {
        let a = GroupWord::from_letters([letter("a", false)]);
        assert!(a.mul(&a.inv()).is_identity());
        let ab = GroupWord::from_letters([letter("a", false), letter("b", false)]);
        let ba = GroupWord::from_letters([letter("b", true), letter("a", false)]);
        assert_eq!(ab.mul(&ba), GroupWord::from_letters([letter("a", false), letter("a", false)]));
        let u = GroupWord::from_letters([
            Letter::new(Generator::Open(1), false),
            Letter::new(Generator::Prim("p1".into()), false),
        ]);
        assert_eq!(u.inv().len(), 2);
    }

    #[test]
    fn interpretation_examples() {
        assert_eq!(interpret(&parse_type("dia:2 p1").unwrap()).unwrap().to_string(), "<2 p1 >2");
        assert_eq!(interpret(&parse_type("boxd:2 p1").unwrap()).unwrap().to_string(), "<2' p1 >2'");
        assert_eq!(
            interpret_hedge(&parse_hedge("[:1 p1 [:2 ]:2 ]:1").unwrap()).unwrap().to_string(),
            "<1 p1 <2 >2 >1"
        );
        assert!(interpret(&parse_type("dia p").unwrap()).is_err());
        assert!(interpret(&parse_type("1 / 1").unwrap()).unwrap().is_identity());
    }

    #[test]
    fn split_examples() {
        let u = GroupWord::from_letters([letter("a", false), letter("b", true)]);
        assert_eq!(pentus_split(&[u.clone(), u.inv()]).unwrap(), 1);
        let w: Vec<GroupWord> = [("a", false), ("b", false), ("b", true), ("a", true)]
            .iter()
            .map(|(g, s)| GroupWord::from_letters([letter(g, *s)]))
            .collect();
        assert_eq!(pentus_split(&w).unwrap(), 2);
        assert!(pentus_split(&w[..2]).is_err());
        assert!(pentus_split(&w[..1]).is_err());
    }

    #[test]
    fn interpretation_is_no_longer_than_the_type() {
        for text in ["dia:1 p1 \\ p2", "boxd:3 dia:3 dia:2 p2", "(p1 / p2) * dia:1 (p2 \\ p1)", "dia:1 (p1 * dia:2 1)"] {
            let t = parse_type(text).unwrap();
            assert!(interpret(&t).unwrap().len() <= t.length(), "{text}");
        }
    }
}
