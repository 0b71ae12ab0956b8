//! Brute-force ground truth over bounded languages.
//!
//! Nothing here calls into the antichain algebra: membership is decided by
//! exhaustive embedding search and languages are explicit finite word sets
//! `F ∩ A^{≤L}`. It is exponentially slow by construction and only meant for
//! small instances.

use std::collections::{BTreeSet, HashSet};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::upset::{Side, UpSet};
use crate::word::Word;

/// Default cap on the number of candidate words enumerated by [`truncate`].
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

/// A finite truncation `F ∩ A^{≤L}` of a language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedLanguage {
    pub len_cap: usize,
    pub words: BTreeSet<Word>,
}

impl BoundedLanguage {
    pub fn new(len_cap: usize, words: impl IntoIterator<Item = Word>) -> BoundedLanguage {
        BoundedLanguage {
            len_cap,
            words: words.into_iter().filter(|w| w.len() <= len_cap).collect(),
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Number of words of length ≤ `len` over `k` letters.
pub fn count_words(k: usize, len: usize) -> usize {
    let mut total: usize = 0;
    let mut layer: usize = 1;
    for _ in 0..=len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(k);
    }
    total
}

/// All words of length ≤ `len`, shortest first.
pub fn all_words(alphabet: &Alphabet, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for a in alphabet.letters() {
                let mut v = w.letters().to_vec();
                v.push(a);
                next.push(Word::from(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Tries every strictly increasing position map from `u` into `v`.
pub fn embeds_exhaustive(alphabet: &Alphabet, u: &[Letter], v: &[Letter]) -> bool {
    fn go(al: &Alphabet, u: &[Letter], v: &[Letter], i: usize, from: usize) -> bool {
        if i == u.len() {
            return true;
        }
        (from..v.len()).any(|j| al.leq(u[i], v[j]) && go(al, u, v, i + 1, j + 1))
    }
    go(alphabet, u, v, 0, 0)
}

fn above_some(alphabet: &Alphabet, gens: &[Word], w: &Word) -> bool {
    gens.iter().any(|g| embeds_exhaustive(alphabet, g, w))
}

/// Minimal elements of a finite word set under the exhaustive order.
pub fn min_elements(alphabet: &Alphabet, words: &BTreeSet<Word>) -> BTreeSet<Word> {
    words
        .iter()
        .filter(|w| {
            !words
                .iter()
                .any(|x| x != *w && embeds_exhaustive(alphabet, x, w))
        })
        .cloned()
        .collect()
}

/// Maximal elements of a finite word set.
pub fn max_elements(alphabet: &Alphabet, words: &BTreeSet<Word>) -> BTreeSet<Word> {
    words
        .iter()
        .filter(|w| {
            !words
                .iter()
                .any(|x| x != *w && embeds_exhaustive(alphabet, w, x))
        })
        .cloned()
        .collect()
}

/// `↑gens ∩ A^{≤len}` by enumeration.
pub fn up_closure(alphabet: &Alphabet, gens: &[Word], len: usize) -> Result<BoundedLanguage> {
    let count = count_words(alphabet.len(), len);
    if count > DEFAULT_ENUMERATION_CAP {
        return Err(Error::Limit(format!(
            "{count} candidate words exceed the enumeration cap {DEFAULT_ENUMERATION_CAP}"
        )));
    }
    Ok(BoundedLanguage::new(
        len,
        all_words(alphabet, len)
            .into_iter()
            .filter(|w| above_some(alphabet, gens, w)),
    ))
}

/// Every member of `f` of length ≤ `len`.
pub fn truncate(alphabet: &Alphabet, f: &UpSet, len: usize) -> Result<BoundedLanguage> {
    up_closure(alphabet, f.gens(), len)
}

/// Minimal elements of the pairwise concatenation `XY`.
pub fn oracle_concat_min(
    alphabet: &Alphabet,
    x: &BoundedLanguage,
    y: &BoundedLanguage,
) -> BTreeSet<Word> {
    let product: BTreeSet<Word> = x
        .words
        .iter()
        .flat_map(|u| y.words.iter().map(move |v| u.concat(v)))
        .collect();
    min_elements(alphabet, &product)
}

/// Pairwise concatenation, truncated at `len`.
pub fn concat_bounded(x: &BoundedLanguage, y: &BoundedLanguage, len: usize) -> BoundedLanguage {
    BoundedLanguage::new(
        len,
        x.words.iter().flat_map(|u| {
            y.words
                .iter()
                .filter(move |v| u.len() + v.len() <= len)
                .map(move |v| u.concat(v))
        }),
    )
}

/// `{u : u·w ∈ F}` (right) or `{u : w·u ∈ F}` (left), for `|u| ≤ L − |w|`.
pub fn oracle_residual(
    alphabet: &Alphabet,
    f_trunc: &BoundedLanguage,
    w: &Word,
    side: Side,
) -> Result<BTreeSet<Word>> {
    if w.len() > f_trunc.len_cap {
        return Err(Error::Precondition(format!(
            "word of length {} exceeds the truncation level {}",
            w.len(),
            f_trunc.len_cap
        )));
    }
    let room = f_trunc.len_cap - w.len();
    Ok(all_words(alphabet, room)
        .into_iter()
        .filter(|u| {
            let probe = match side {
                Side::Right => u.concat(w),
                Side::Left => w.concat(u),
            };
            f_trunc.contains(&probe)
        })
        .collect())
}

/// `{u : u·b ∈ F for every b ∈ B}` (right side), where `B` is given by words
/// and only `u` with `|u| + max|b| ≤ L` are decided.
pub fn oracle_residual_set(
    alphabet: &Alphabet,
    f_trunc: &BoundedLanguage,
    b: &[Word],
    side: Side,
) -> Result<BTreeSet<Word>> {
    let longest = b.iter().map(|w| w.len()).max().unwrap_or(0);
    if longest > f_trunc.len_cap {
        return Err(Error::Precondition(
            "residual operand longer than truncation".into(),
        ));
    }
    let room = f_trunc.len_cap - longest;
    let mut out: BTreeSet<Word> = all_words(alphabet, room).into_iter().collect();
    for w in b {
        let one = oracle_residual(alphabet, f_trunc, w, side)?;
        out.retain(|u| one.contains(u));
    }
    Ok(out)
}

/// Words of length ≤ `len` below every word of `words` (`words^∇` truncated);
/// for an empty family, all words up to `len`.
pub fn lower_cone_brute(alphabet: &Alphabet, words: &[Word], len: usize) -> BTreeSet<Word> {
    all_words(alphabet, len)
        .into_iter()
        .filter(|w| words.iter().all(|g| embeds_exhaustive(alphabet, w, g)))
        .collect()
}

/// Words of length ≤ `len` above every word of `words` (`words^Δ` truncated).
pub fn upper_cone_brute(alphabet: &Alphabet, words: &[Word], len: usize) -> BTreeSet<Word> {
    all_words(alphabet, len)
        .into_iter()
        .filter(|w| words.iter().all(|g| embeds_exhaustive(alphabet, g, w)))
        .collect()
}

/// Minimal common upper bounds of `u` and `v`, by enumeration up to `|u|+|v|`.
pub fn min_upper_bounds_brute(alphabet: &Alphabet, u: &Word, v: &Word) -> BTreeSet<Word> {
    let both = upper_cone_brute(alphabet, &[u.clone(), v.clone()], u.len() + v.len());
    min_elements(alphabet, &both)
}

/// Labels of paths `x → y` of length ≤ `len` in a transition relation, by
/// subset simulation.
pub fn path_language(
    alphabet: &Alphabet,
    states: usize,
    trans: &[(usize, Letter, usize)],
    x: usize,
    y: usize,
    len: usize,
) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut frontier: Vec<(Word, BTreeSet<usize>)> = vec![(Word::empty(), BTreeSet::from([x]))];
    for depth in 0..=len {
        let mut next = vec![];
        for (w, set) in &frontier {
            if set.contains(&y) {
                out.insert(w.clone());
            }
            if depth == len {
                continue;
            }
            for a in alphabet.letters() {
                let reached: BTreeSet<usize> = trans
                    .iter()
                    .filter(|(p, b, q)| *b == a && set.contains(p) && *q < states)
                    .map(|&(_, _, q)| q)
                    .collect();
                if !reached.is_empty() {
                    let mut v = w.letters().to_vec();
                    v.push(a);
                    next.push((Word::from(v), reached));
                }
            }
        }
        frontier = next;
    }
    out
}

/// All nonempty antichains among words of length `1..=max_len`.
pub fn all_antichains(alphabet: &Alphabet, max_len: usize, max_size: usize) -> Vec<Vec<Word>> {
    let words: Vec<Word> = all_words(alphabet, max_len)
        .into_iter()
        .filter(|w| !w.is_epsilon())
        .collect();
    let mut out = vec![];
    let mut current = vec![];
    fn go(
        al: &Alphabet,
        words: &[Word],
        start: usize,
        max_size: usize,
        current: &mut Vec<Word>,
        out: &mut Vec<Vec<Word>>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        if current.len() == max_size {
            return;
        }
        for i in start..words.len() {
            let w = &words[i];
            if current
                .iter()
                .all(|c| !embeds_exhaustive(al, c, w) && !embeds_exhaustive(al, w, c))
            {
                current.push(w.clone());
                go(al, words, i + 1, max_size, current, out);
                current.pop();
            }
        }
    }
    go(alphabet, &words, 0, max_size, &mut current, &mut out);
    out
}

/// Two-factor splits of `↑gens` found by trying every pair of antichains of
/// bounded size and comparing truncations at `len`. Only complete when every
/// factor generator has length ≤ `max_len` and at most `max_size` elements;
/// at toy scale both hold whenever `len` covers the generators.
pub fn two_factor_splits_brute(
    alphabet: &Alphabet,
    gens: &[Word],
    max_len: usize,
    max_size: usize,
    len: usize,
) -> Result<Vec<(Vec<Word>, Vec<Word>)>> {
    let target = up_closure(alphabet, gens, len)?;
    let candidates = all_antichains(alphabet, max_len, max_size);
    let closures: Vec<BoundedLanguage> = candidates
        .iter()
        .map(|c| up_closure(alphabet, c, len))
        .collect::<Result<_>>()?;
    let mut out = vec![];
    for (i, x) in candidates.iter().enumerate() {
        for (j, y) in candidates.iter().enumerate() {
            let product = concat_bounded(&closures[i], &closures[j], len);
            if product == target {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}

/// Words of length ≤ `len` that split as `u·v` with `u ∈ x` and `v ∈ y`.
/// Both languages must be truncated at `len` or beyond.
pub fn concat_by_splits(
    alphabet: &Alphabet,
    x: &BoundedLanguage,
    y: &BoundedLanguage,
    len: usize,
) -> BoundedLanguage {
    BoundedLanguage::new(
        len,
        all_words(alphabet, len).into_iter().filter(|w| {
            (0..=w.len()).any(|k| x.contains(&w.prefix(k)) && y.contains(&w.suffix_from(k)))
        }),
    )
}

/// Minimal elements of an up-closed truncated language: members none of
/// whose one-step predecessors (drop a letter, or lower one) is a member.
/// Linear where [`min_elements`] is quadratic.
pub fn min_elements_upclosed(alphabet: &Alphabet, lang: &BoundedLanguage) -> BTreeSet<Word> {
    lang.words
        .iter()
        .filter(|w| {
            (0..w.len()).all(|i| {
                let mut v = w.letters().to_vec();
                v.remove(i);
                if lang.contains(&Word::from(v)) {
                    return false;
                }
                alphabet.below(w[i]).iter().all(|&b| {
                    let mut v = w.letters().to_vec();
                    v[i] = b;
                    b == w[i] || !lang.contains(&Word::from(v))
                })
            })
        })
        .cloned()
        .collect()
}

/// Set of words as a hash set, for quick membership in tests.
pub fn as_set(lang: &BoundedLanguage) -> HashSet<Word> {
    lang.words.iter().cloned().collect()
}
