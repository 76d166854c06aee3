use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Hedge, Type};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: Hedge,
    pub succedent: Type,
}

impl Sequent {
    pub fn new(antecedent: Hedge, succedent: Type) -> Sequent {
        Sequent { antecedent, succedent }
    }

    /// `A1 ... An => C` with a bracket-free antecedent.
    pub fn flat(antecedent: impl IntoIterator<Item = Type>, succedent: Type) -> Sequent {
        Sequent::new(Hedge::flat(antecedent), succedent)
    }

    pub fn sigma(&self, name: &str) -> usize {
        self.antecedent.sigma(name) + self.succedent.sigma(name)
    }

    pub fn tau(&self, index: Option<u32>) -> usize {
        self.antecedent.tau(index) + self.succedent.tau(index)
    }

    pub fn connectives(&self) -> usize {
        self.antecedent.connectives() + self.succedent.connectives()
    }

    pub fn modalities(&self) -> usize {
        self.antecedent.modalities() + self.succedent.modalities()
    }

    pub fn primitives(&self) -> BTreeSet<String> {
        let mut out = self.antecedent.primitives();
        self.succedent.collect_primitives(&mut out);
        out
    }

    pub fn indices(&self) -> BTreeSet<Option<u32>> {
        let mut out = self.antecedent.indices();
        self.succedent.collect_indices(&mut out);
        out
    }

    pub fn types(&self) -> Vec<&Type> {
        let mut out = Vec::new();
        self.antecedent.for_each_type(&mut |t| out.push(t));
        out.push(&self.succedent);
        out
    }

    /// Thin: every primitive and every index occurs at most twice.
    pub fn is_thin(&self) -> bool {
        self.primitives().iter().all(|p| self.sigma(p) <= 2)
            && self
                .indices()
                .into_iter()
                .flatten()
                .all(|i| self.tau(Some(i)) <= 2)
    }

    pub fn deindex(&self, theta: &BTreeMap<String, String>) -> Sequent {
        Sequent::new(self.antecedent.deindex(theta), self.succedent.deindex(theta))
    }

    pub fn is_guarded(&self) -> bool {
        self.types().into_iter().all(Type::is_guarded)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.antecedent.is_empty() {
            write!(f, "=> {}", self.succedent)
        } else {
            write!(f, "{} => {}", self.antecedent, self.succedent)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    #[test]
    fn thin_examples() {
        let s = parse_sequent("[:2 [:1 p1 ]:1 dia:1 p1 \\ p2 ]:2 => boxd:3 dia:3 dia:2 p2").unwrap();
        assert!(s.is_thin());
        assert_eq!(s.tau(Some(2)), 2);
        assert_eq!(s.tau(Some(5)), 0);
        assert!(!parse_sequent("p1 p1 p1 => p1").unwrap().is_thin());
        assert!(!parse_sequent("dia:1 p1 dia:1 p1 dia:1 p1 => p2").unwrap().is_thin());
    }

    #[test]
    fn deindex_recovers_plain_sequent() {
        let s = parse_sequent("[:2 [:1 p1 ]:1 dia:1 p1 \\ p2 ]:2 => boxd:3 dia:3 dia:2 p2").unwrap();
        let theta: BTreeMap<String, String> =
            [("p1", "p"), ("p2", "p")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(
            s.deindex(&theta),
            parse_sequent("[ [ p ] dia p \\ p ] => boxd dia dia p").unwrap()
        );
        let theta: BTreeMap<String, String> = [("p1".to_string(), "q".to_string())].into();
        assert_eq!(
            parse_sequent("p1 => p1").unwrap().deindex(&theta),
            parse_sequent("q => q").unwrap()
        );
        let theta: BTreeMap<String, String> = [("p3".to_string(), "p".to_string())].into();
        assert_eq!(
            parse_sequent("dia:7 p3 => dia:7 p3").unwrap().deindex(&theta),
            parse_sequent("dia p => dia p").unwrap()
        );
    }

    #[test]
    fn empty_antecedent_prints_bare_arrow() {
        assert_eq!(parse_sequent("=> 1").unwrap().to_string(), "=> 1");
    }
}
