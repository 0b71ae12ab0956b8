//! Upper and lower cones, and the closure they induce on final segments.

use std::collections::HashSet;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::upset::{Side, UpSet};
use crate::word::{higman_leq, Word};

/// A finite lower set, kept as its antichain of maximal words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DownSetMax {
    maxgens: Vec<Word>,
}

impl DownSetMax {
    /// Keeps the maximal words, canonically sorted.
    pub fn maximize(alphabet: &Alphabet, words: impl IntoIterator<Item = Word>) -> DownSetMax {
        let mut words: Vec<Word> = words.into_iter().collect();
        words.sort();
        words.dedup();
        let keep: Vec<bool> = words
            .iter()
            .map(|w| {
                !words
                    .iter()
                    .any(|x| x != w && x.len() >= w.len() && higman_leq(alphabet, w, x))
            })
            .collect();
        let maxgens = words
            .into_iter()
            .zip(keep)
            .filter_map(|(w, k)| k.then_some(w))
            .collect();
        DownSetMax { maxgens }
    }

    pub fn maxgens(&self) -> &[Word] {
        &self.maxgens
    }

    pub fn member(&self, alphabet: &Alphabet, w: &Word) -> bool {
        self.maxgens.iter().any(|g| higman_leq(alphabet, w, g))
    }

    /// The lower set `XY`, which is the downward closure of the pairwise products.
    pub fn concat(&self, alphabet: &Alphabet, other: &DownSetMax) -> DownSetMax {
        DownSetMax::maximize(
            alphabet,
            self.maxgens
                .iter()
                .flat_map(|u| other.maxgens.iter().map(move |v| u.concat(v))),
        )
    }
}

/// Every word obtained from `w` by deleting letters and lowering the rest.
pub fn down_closure_of_word(alphabet: &Alphabet, w: &Word) -> HashSet<Word> {
    let mut out: HashSet<Word> = HashSet::from([Word::empty()]);
    for &a in w.iter() {
        let extended: Vec<Word> = out
            .iter()
            .flat_map(|s| {
                alphabet.below(a).iter().map(move |&b| {
                    let mut v = s.letters().to_vec();
                    v.push(b);
                    Word::from(v)
                })
            })
            .collect();
        out.extend(extended);
    }
    out
}

/// `F^∇`: the words below every member of `F`, as maximal elements.
pub fn lower_cone(alphabet: &Alphabet, f: &UpSet) -> Result<DownSetMax> {
    let Some(g0) = f.gens().first() else {
        return Err(Error::Precondition(
            "lower cone of the empty segment is all of A*".into(),
        ));
    };
    let candidates = down_closure_of_word(alphabet, g0)
        .into_iter()
        .filter(|w| f.gens().iter().all(|g| higman_leq(alphabet, w, g)));
    Ok(DownSetMax::maximize(alphabet, candidates))
}

/// `X^Δ`: the words above every word of `X`. The empty family gives `A*`.
pub fn upper_cone(alphabet: &Alphabet, words: &[Word]) -> UpSet {
    words.iter().fold(UpSet::all(), |acc, w| {
        acc.intersect(alphabet, &UpSet::principal(w.clone()))
    })
}

/// `F^{∇Δ}`, with `∅` closed.
pub fn closure(alphabet: &Alphabet, f: &UpSet) -> UpSet {
    match lower_cone(alphabet, f) {
        Ok(down) => upper_cone(alphabet, down.maxgens()),
        Err(_) => UpSet::empty(),
    }
}

pub fn is_closed(alphabet: &Alphabet, f: &UpSet) -> bool {
    closure(alphabet, f) == *f
}

/// Closure of the union.
pub fn closed_union(alphabet: &Alphabet, fs: &[UpSet]) -> UpSet {
    let union = fs
        .iter()
        .fold(UpSet::empty(), |acc, f| acc.union_meet(alphabet, f));
    closure(alphabet, &union)
}

/// The first split of a closed `z` with a factor that is not closed.
pub fn unclosed_factor(
    alphabet: &Alphabet,
    z: &UpSet,
    splits: &[(UpSet, UpSet)],
) -> Option<(UpSet, UpSet)> {
    if !is_closed(alphabet, z) {
        return None;
    }
    splits
        .iter()
        .find(|(x, y)| !is_closed(alphabet, x) || !is_closed(alphabet, y))
        .cloned()
}

/// `Y·(∩ Zi)` against `∩ (Y·Zi)`, the finite case of distributivity over
/// intersections; `side` picks which side `Y` multiplies from.
pub fn distributes_over_intersection(
    alphabet: &Alphabet,
    y: &UpSet,
    zs: &[UpSet],
    side: Side,
) -> bool {
    let mul = |a: &UpSet, b: &UpSet| match side {
        Side::Left => a.concat(alphabet, b),
        Side::Right => b.concat(alphabet, a),
    };
    let meet = zs
        .iter()
        .fold(UpSet::all(), |acc, z| acc.intersect(alphabet, z));
    let lhs = mul(y, &meet);
    let rhs = zs
        .iter()
        .fold(UpSet::all(), |acc, z| acc.intersect(alphabet, &mul(y, z)));
    lhs == rhs
}
