//! Words over an alphabet and the Higman ordering.

use std::cmp::Ordering;
use std::ops::Deref;

use crate::alphabet::{Alphabet, Letter};

/// A finite sequence of letters. `Word::empty()` is ε.
///
/// Words order canonically by length first, then lexicographically on letter
/// ids. This is unrelated to the Higman order and only fixes a normal form
/// for antichains.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn is_epsilon(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub fn suffix_from(&self, k: usize) -> Word {
        Word(self.0[k..].to_vec())
    }

    /// All `(u, v)` with `self = u·v`, from `(ε, self)` to `(self, ε)`.
    pub fn splits(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        (0..=self.len()).map(move |k| (self.prefix(k), self.suffix_from(k)))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Higman ordering: `u ≤ v` when `u` embeds into `v` by a strictly increasing
/// position map with letterwise `≤`.
///
/// Greedy: each letter of `u` takes the leftmost remaining position of `v`
/// above it.
pub fn higman_leq(alphabet: &Alphabet, u: &[Letter], v: &[Letter]) -> bool {
    if u.len() > v.len() {
        return false;
    }
    let mut j = 0;
    for &a in u {
        loop {
            if j == v.len() {
                return false;
            }
            let b = v[j];
            j += 1;
            if alphabet.leq(a, b) {
                break;
            }
        }
    }
    true
}

/// Strict Higman order.
pub fn higman_lt(alphabet: &Alphabet, u: &[Letter], v: &[Letter]) -> bool {
    u != v && higman_leq(alphabet, u, v)
}

/// Reverses the word and applies the letter involution.
pub fn involute_word(alphabet: &Alphabet, u: &[Letter]) -> Word {
    u.iter().rev().map(|&a| alphabet.bar(a)).collect()
}
