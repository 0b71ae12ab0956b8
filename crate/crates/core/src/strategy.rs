//! Named, swappable implementations behind trait objects.

use crate::alphabet::Alphabet;
use crate::blocks::factorize_via_blocks_capped;
use crate::envelope::DEFAULT_MAX_POINTS;
use crate::error::{Error, Result};
use crate::factor::{factorize, Factorization};
use crate::upset::UpSet;

/// An ordered name → implementation table. Registering an existing name
/// replaces the entry in place.
pub struct Registry<T: ?Sized> {
    entries: Vec<(String, Box<T>)>,
}

impl<T: ?Sized> Default for Registry<T> {
    fn default() -> Self {
        Registry { entries: vec![] }
    }
}

impl<T: ?Sized> Registry<T> {
    pub fn register(&mut self, name: &str, item: Box<T>) {
        match self.entries.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = item,
            None => self.entries.push((name.to_string(), item)),
        }
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, item)| item.as_ref())
    }

    /// Like [`Registry::get`], with an error naming the alternatives.
    pub fn require(&self, name: &str) -> Result<&T> {
        self.get(name).ok_or_else(|| {
            Error::Parse(format!(
                "unknown name {name:?}, expected one of: {}",
                self.names().join(", ")
            ))
        })
    }

    /// Drops every entry whose name fails `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&str) -> bool) {
        self.entries.retain(|(n, _)| keep(n));
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &T)> {
        self.entries
            .iter()
            .map(|(n, item)| (n.as_str(), item.as_ref()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A way of computing the irreducible factorization.
pub trait Factorizer: Send + Sync {
    fn describe(&self) -> &str;

    /// `A*` gives no factors and `∅` is an error, whatever the method.
    fn factorize(&self, alphabet: &Alphabet, f: &UpSet) -> Result<Factorization>;
}

/// Split search over generator antichains.
pub struct AntichainSearch;

impl Factorizer for AntichainSearch {
    fn describe(&self) -> &str {
        "split search over generator antichains"
    }

    fn factorize(&self, alphabet: &Alphabet, f: &UpSet) -> Result<Factorization> {
        factorize(alphabet, f)
    }
}

/// Blocks of the envelope graph.
pub struct BlockPath {
    pub max_points: usize,
}

impl Default for BlockPath {
    fn default() -> Self {
        BlockPath {
            max_points: DEFAULT_MAX_POINTS,
        }
    }
}

impl Factorizer for BlockPath {
    fn describe(&self) -> &str {
        "cut vertices of the envelope transition graph"
    }

    fn factorize(&self, alphabet: &Alphabet, f: &UpSet) -> Result<Factorization> {
        if f.is_all() {
            return Ok(Factorization { factors: vec![] });
        }
        factorize_via_blocks_capped(alphabet, f, self.max_points)
    }
}

/// "antichain" and "blocks".
pub fn builtin_factorizers() -> Registry<dyn Factorizer> {
    let mut r: Registry<dyn Factorizer> = Registry::default();
    r.register("antichain", Box::new(AntichainSearch));
    r.register("blocks", Box::new(BlockPath::default()));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_agree_on_examples() {
        let al = Alphabet::discrete(&["a", "b"]).unwrap();
        let reg = builtin_factorizers();
        assert_eq!(reg.names(), vec!["antichain", "blocks"]);
        for gens in [vec!["ab"], vec!["aa", "bb"], vec!["abb", "bab"], vec![""]] {
            let f = UpSet::parse(&al, &gens).unwrap();
            let results: Vec<Factorization> = reg
                .iter()
                .map(|(_, m)| m.factorize(&al, &f).unwrap())
                .collect();
            assert_eq!(results[0], results[1], "{gens:?}");
        }
        for (_, m) in reg.iter() {
            assert!(matches!(
                m.factorize(&al, &UpSet::empty()),
                Err(Error::EmptySegment(_))
            ));
        }
    }

    #[test]
    fn registering_a_name_twice_replaces() {
        struct Nothing;
        impl Factorizer for Nothing {
            fn describe(&self) -> &str {
                "no factors"
            }
            fn factorize(&self, _: &Alphabet, _: &UpSet) -> Result<Factorization> {
                Ok(Factorization { factors: vec![] })
            }
        }
        let mut reg = builtin_factorizers();
        reg.register("blocks", Box::new(Nothing));
        assert_eq!(reg.len(), 2);
        assert_eq!(reg.require("blocks").unwrap().describe(), "no factors");
        assert!(reg.require("nope").is_err());
    }
}
