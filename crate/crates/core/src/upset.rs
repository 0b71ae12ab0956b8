//! Final segments of `A*`, represented by their antichain of minimal words.
//!
//! Set inclusion is the primary order here. The algebraic reading reverses
//! it: `A*` is the neutral and least element, `∅` is the greatest, union is
//! the meet and intersection is the join.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::{higman_leq, involute_word, Word};

/// Which side a quotient or residual removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::Parse(format!(
                "side must be left or right, got `{other}`"
            ))),
        }
    }
}

/// An upward-closed language `↑gens`.
///
/// `gens` is a Higman antichain sorted by (length, letter ids). `[]` is `∅`
/// and `[ε]` is `A*`. Structural equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpSet {
    gens: Vec<Word>,
}

impl UpSet {
    pub fn empty() -> UpSet {
        UpSet { gens: vec![] }
    }

    /// `A*`, the neutral element.
    pub fn all() -> UpSet {
        UpSet {
            gens: vec![Word::empty()],
        }
    }

    pub fn principal(w: Word) -> UpSet {
        UpSet { gens: vec![w] }
    }

    /// `↑words`, keeping only the minimal words.
    pub fn minimize(alphabet: &Alphabet, words: impl IntoIterator<Item = Word>) -> UpSet {
        UpSet {
            gens: minimal_words(alphabet, words.into_iter().collect()),
        }
    }

    /// Builds from compact word strings, e.g. `UpSet::parse(&al, &["ab", "ba"])`.
    pub fn parse(alphabet: &Alphabet, words: &[&str]) -> Result<UpSet> {
        let ws = words
            .iter()
            .map(|s| alphabet.parse_word(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(UpSet::minimize(alphabet, ws))
    }

    pub fn gens(&self) -> &[Word] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<Word> {
        self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_epsilon()
    }

    pub fn max_len(&self) -> usize {
        self.gens.iter().map(|g| g.len()).max().unwrap_or(0)
    }

    pub fn member(&self, alphabet: &Alphabet, w: &[Letter]) -> bool {
        self.gens.iter().any(|g| higman_leq(alphabet, g, w))
    }

    /// `self ⊇ other` as sets.
    pub fn contains(&self, alphabet: &Alphabet, other: &UpSet) -> bool {
        other.gens.iter().all(|g| self.member(alphabet, g))
    }

    /// `↑(FG)`. The pairwise product of two antichains is already an
    /// antichain with `|F|·|G|` elements.
    pub fn concat(&self, alphabet: &Alphabet, other: &UpSet) -> UpSet {
        let mut gens: Vec<Word> = self
            .gens
            .iter()
            .flat_map(|u| other.gens.iter().map(move |v| u.concat(v)))
            .collect();
        gens.sort();
        debug_assert!(
            {
                let expected = gens.len();
                let mut check = gens.clone();
                check.dedup();
                check.len() == expected && is_antichain(alphabet, &check)
            },
            "product of antichains is not an antichain"
        );
        UpSet { gens }
    }

    /// Set union, the meet of the reversed order.
    pub fn union_meet(&self, alphabet: &Alphabet, other: &UpSet) -> UpSet {
        UpSet::minimize(alphabet, self.gens.iter().chain(other.gens.iter()).cloned())
    }

    /// Set intersection, the join of the reversed order.
    pub fn intersect(&self, alphabet: &Alphabet, other: &UpSet) -> UpSet {
        if self.is_all() {
            return other.clone();
        }
        if other.is_all() {
            return self.clone();
        }
        if other.contains(alphabet, self) {
            return self.clone();
        }
        if self.contains(alphabet, other) {
            return other.clone();
        }
        let mut words = vec![];
        for u in &self.gens {
            for v in &other.gens {
                if higman_leq(alphabet, u, v) {
                    words.push(v.clone());
                } else if higman_leq(alphabet, v, u) {
                    words.push(u.clone());
                } else {
                    words.extend(min_upper_bounds(alphabet, u, v));
                }
            }
        }
        UpSet::minimize(alphabet, words)
    }

    /// `{u : u·w ∈ F}` (right) or `{u : w·u ∈ F}` (left).
    pub fn quotient(&self, alphabet: &Alphabet, w: &[Letter], side: Side) -> UpSet {
        let mut cur = self.clone();
        match side {
            Side::Right => {
                for &c in w.iter().rev() {
                    cur = cur.quotient_letter(alphabet, c, Side::Right);
                }
            }
            Side::Left => {
                for &c in w {
                    cur = cur.quotient_letter(alphabet, c, Side::Left);
                }
            }
        }
        cur
    }

    fn quotient_letter(&self, alphabet: &Alphabet, c: Letter, side: Side) -> UpSet {
        let mut words = Vec::with_capacity(self.gens.len() * 2);
        for z in &self.gens {
            words.push(z.clone());
            match side {
                Side::Right => {
                    if let Some((&d, rest)) = z.split_last() {
                        if alphabet.leq(d, c) {
                            words.push(Word::from(rest.to_vec()));
                        }
                    }
                }
                Side::Left => {
                    if let Some((&d, rest)) = z.split_first() {
                        if alphabet.leq(d, c) {
                            words.push(Word::from(rest.to_vec()));
                        }
                    }
                }
            }
        }
        UpSet::minimize(alphabet, words)
    }

    /// Largest `R` with `R·B ⊆ F` (right) or `B·R ⊆ F` (left).
    pub fn residual(&self, alphabet: &Alphabet, b: &UpSet, side: Side) -> UpSet {
        let mut acc = UpSet::all();
        for g in &b.gens {
            acc = acc.intersect(alphabet, &self.quotient(alphabet, g, side));
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    /// Shortest generator length.
    pub fn graduation(&self) -> Result<usize> {
        self.gens
            .first()
            .map(|g| g.len())
            .ok_or(Error::EmptySegment(
                "graduation undefined on the empty segment",
            ))
    }

    /// `{ᾱ : α ∈ F}`.
    pub fn involute(&self, alphabet: &Alphabet) -> UpSet {
        UpSet::minimize(
            alphabet,
            self.gens.iter().map(|g| involute_word(alphabet, g)),
        )
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayUpSet<'a> {
        DisplayUpSet {
            set: self,
            alphabet,
        }
    }
}

/// Renders `∅`, `A*`, or `↑{…}`.
pub struct DisplayUpSet<'a> {
    set: &'a UpSet,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayUpSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.set.is_empty() {
            return write!(f, "∅");
        }
        if self.set.is_all() {
            return write!(f, "A*");
        }
        let parts: Vec<String> = self
            .set
            .gens
            .iter()
            .map(|g| self.alphabet.display_word(g))
            .collect();
        write!(f, "↑{{{}}}", parts.join(","))
    }
}

/// Canonical antichain of minimal words.
///
/// Words are scanned shortest first, so each one only needs comparing with
/// the minimal words already kept and with its own length class.
pub fn minimal_words(alphabet: &Alphabet, mut words: Vec<Word>) -> Vec<Word> {
    words.sort();
    words.dedup();
    let mut kept: Vec<Word> = Vec::with_capacity(words.len());
    let mut start = 0;
    while start < words.len() {
        let len = words[start].len();
        let end = start + words[start..].iter().take_while(|w| w.len() == len).count();
        let class: Vec<&Word> = words[start..end]
            .iter()
            .filter(|w| !kept.iter().any(|k| higman_leq(alphabet, k, w)))
            .collect();
        let minimal: Vec<Word> = class
            .iter()
            .filter(|w| !class.iter().any(|x| x != *w && higman_leq(alphabet, x, w)))
            .map(|w| (*w).clone())
            .collect();
        kept.extend(minimal);
        start = end;
    }
    kept.sort();
    kept
}

pub fn is_antichain(alphabet: &Alphabet, words: &[Word]) -> bool {
    words.iter().enumerate().all(|(i, u)| {
        words
            .iter()
            .enumerate()
            .all(|(j, v)| i == j || !higman_leq(alphabet, u, v))
    })
}

/// Minimal words above both `u` and `v`.
///
/// Every such word is a merge of `u` and `v`: positions taken from `u` alone,
/// from `v` alone, or shared with a minimal common upper bound letter.
pub fn min_upper_bounds(alphabet: &Alphabet, u: &[Letter], v: &[Letter]) -> Vec<Word> {
    let mut memo: HashMap<(usize, usize), Vec<Word>> = HashMap::new();
    merges(alphabet, u, v, 0, 0, &mut memo)
}

fn merges(
    alphabet: &Alphabet,
    u: &[Letter],
    v: &[Letter],
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), Vec<Word>>,
) -> Vec<Word> {
    if i == u.len() {
        return vec![Word::from(v[j..].to_vec())];
    }
    if j == v.len() {
        return vec![Word::from(u[i..].to_vec())];
    }
    if let Some(hit) = memo.get(&(i, j)) {
        return hit.clone();
    }
    let mut out = vec![];
    let prepend = |c: Letter, tails: Vec<Word>, out: &mut Vec<Word>| {
        for t in tails {
            let mut w = Vec::with_capacity(t.len() + 1);
            w.push(c);
            w.extend_from_slice(&t);
            out.push(Word::from(w));
        }
    };
    let tails = merges(alphabet, u, v, i + 1, j, memo);
    prepend(u[i], tails, &mut out);
    let tails = merges(alphabet, u, v, i, j + 1, memo);
    prepend(v[j], tails, &mut out);
    let shared = alphabet.min_common_upper(u[i], v[j]).to_vec();
    if !shared.is_empty() {
        let tails = merges(alphabet, u, v, i + 1, j + 1, memo);
        for c in shared {
            prepend(c, tails.clone(), &mut out);
        }
    }
    // Pruning is sound: c·s ≤ c·t whenever s ≤ t.
    let out = minimal_words(alphabet, out);
    memo.insert((i, j), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::AlphabetSpec;
    use crate::oracle::{self, up_closure};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn ab() -> Alphabet {
        Alphabet::discrete(&["a", "b"]).unwrap()
    }

    fn ordered_ab() -> Alphabet {
        Alphabet::from_spec(&AlphabetSpec {
            letters: vec!["a".into(), "b".into()],
            order: vec![("a".into(), "b".into())],
            involution: None,
        })
        .unwrap()
    }

    fn up(al: &Alphabet, ws: &[&str]) -> UpSet {
        UpSet::parse(al, ws).unwrap()
    }

    fn trunc(al: &Alphabet, f: &UpSet, len: usize) -> BTreeSet<Word> {
        oracle::truncate(al, f, len).unwrap().words
    }

    #[test]
    fn minimize_examples() {
        let al = ab();
        assert_eq!(up(&al, &["a", "ab", "b"]), up(&al, &["a", "b"]));
        assert_eq!(up(&al, &["a", "ab", "b"]).gens().len(), 2);
        assert_eq!(
            trunc(&al, &up(&al, &["a", "ab", "b"]), 4),
            oracle::up_closure(
                &al,
                &[
                    al.parse_word("a").unwrap(),
                    al.parse_word("ab").unwrap(),
                    al.parse_word("b").unwrap()
                ],
                4
            )
            .unwrap()
            .words
        );
        assert_eq!(UpSet::minimize(&al, vec![]), UpSet::empty());
        let ord = ordered_ab();
        assert_eq!(up(&ord, &["a", "b"]), up(&ord, &["a"]));
    }

    #[test]
    fn membership() {
        let al = ab();
        let f = up(&al, &["ab"]);
        assert!(f.member(&al, &al.parse_word("aab").unwrap()));
        assert!(!f.member(&al, &al.parse_word("ba").unwrap()));
        assert!(UpSet::all().member(&al, &[]));
        assert!(!UpSet::empty().member(&al, &al.parse_word("ab").unwrap()));
    }

    #[test]
    fn containment() {
        let al = ab();
        assert!(up(&al, &["a"]).contains(&al, &up(&al, &["ab"])));
        assert!(!up(&al, &["ab"]).contains(&al, &up(&al, &["a"])));
        assert!(up(&al, &["ab"]).contains(&al, &UpSet::empty()));
        assert!(UpSet::empty().contains(&al, &UpSet::empty()));
        assert!(UpSet::all().contains(&al, &up(&al, &["ba"])));
    }

    #[test]
    fn concatenation() {
        let al = ab();
        let (a, b) = (up(&al, &["a"]), up(&al, &["b"]));
        assert_eq!(a.concat(&al, &b), up(&al, &["ab"]));
        let f = up(&al, &["aa", "b"]);
        assert_eq!(f.concat(&al, &UpSet::all()), f);
        assert_eq!(UpSet::all().concat(&al, &f), f);
        assert_eq!(UpSet::empty().concat(&al, &f), UpSet::empty());
        assert_eq!(f.concat(&al, &UpSet::empty()), UpSet::empty());
        assert_eq!(
            trunc(&al, &a.concat(&al, &b), 4),
            trunc(&al, &up(&al, &["ab"]), 4)
        );
    }

    #[test]
    fn meet_is_union() {
        let al = ab();
        assert_eq!(
            up(&al, &["aa"]).union_meet(&al, &up(&al, &["bb"])),
            up(&al, &["aa", "bb"])
        );
        let f = up(&al, &["ab", "ba"]);
        assert_eq!(f.union_meet(&al, &f), f);
        assert_eq!(f.union_meet(&al, &UpSet::empty()), f);
    }

    #[test]
    fn upper_bounds_of_two_words() {
        let al = ab();
        let a = al.parse_word("a").unwrap();
        let b = al.parse_word("b").unwrap();
        let mut got = min_upper_bounds(&al, &a, &b);
        got.sort();
        assert_eq!(
            got,
            vec![al.parse_word("ab").unwrap(), al.parse_word("ba").unwrap()]
        );
        let u = al.parse_word("aba").unwrap();
        assert_eq!(min_upper_bounds(&al, &u, &[]), vec![u.clone()]);
        let ord = ordered_ab();
        assert_eq!(
            min_upper_bounds(
                &ord,
                &ord.parse_word("a").unwrap(),
                &ord.parse_word("b").unwrap()
            ),
            vec![ord.parse_word("b").unwrap()]
        );
    }

    #[test]
    fn upper_bounds_match_brute_force() {
        let three = Alphabet::from_spec(&AlphabetSpec {
            letters: vec!["a".into(), "b".into(), "c".into()],
            order: vec![("a".into(), "c".into()), ("b".into(), "c".into())],
            involution: None,
        })
        .unwrap();
        for al in [ab(), ordered_ab(), three] {
            let words = oracle::all_words(&al, 2);
            for u in &words {
                for v in &words {
                    let got: BTreeSet<Word> = min_upper_bounds(&al, u, v).into_iter().collect();
                    assert_eq!(got, oracle::min_upper_bounds_brute(&al, u, v));
                }
            }
        }
    }

    #[test]
    fn intersection() {
        let al = ab();
        let got = up(&al, &["a"]).intersect(&al, &up(&al, &["b"]));
        assert_eq!(got, up(&al, &["ab", "ba"]));
        let brute: BTreeSet<Word> = trunc(&al, &up(&al, &["a"]), 4)
            .intersection(&trunc(&al, &up(&al, &["b"]), 4))
            .cloned()
            .collect();
        assert_eq!(trunc(&al, &got, 4), brute);
        let f = up(&al, &["aab", "b"]);
        assert_eq!(f.intersect(&al, &UpSet::all()), f);
        assert_eq!(
            up(&al, &["ab"]).intersect(&al, &up(&al, &["b"])),
            up(&al, &["ab"])
        );
        assert_eq!(f.intersect(&al, &UpSet::empty()), UpSet::empty());
    }

    #[test]
    fn quotients() {
        let al = ab();
        let f = up(&al, &["ab"]);
        let b = al.parse_word("b").unwrap();
        let a = al.parse_word("a").unwrap();
        assert_eq!(f.quotient(&al, &b, Side::Right), up(&al, &["a"]));
        assert_eq!(f.quotient(&al, &a, Side::Right), up(&al, &["ab"]));
        assert_eq!(f.quotient(&al, &[], Side::Right), f);
        assert_eq!(f.quotient(&al, &[], Side::Left), f);
        assert_eq!(f.quotient(&al, &a, Side::Left), up(&al, &["b"]));

        let trunc4 = up_closure(&al, f.gens(), 4).unwrap();
        let brute = oracle::oracle_residual(&al, &trunc4, &b, Side::Right).unwrap();
        assert_eq!(
            oracle::min_elements(&al, &brute),
            BTreeSet::from([a.clone()])
        );
        let brute = oracle::oracle_residual(&al, &trunc4, &a, Side::Right).unwrap();
        assert_eq!(
            oracle::min_elements(&al, &brute),
            BTreeSet::from([al.parse_word("ab").unwrap()])
        );
    }

    #[test]
    fn residuals() {
        let al = ab();
        let f = up(&al, &["ab"]);
        assert_eq!(f.residual(&al, &UpSet::empty(), Side::Right), UpSet::all());
        assert_eq!(
            f.residual(&al, &up(&al, &["b"]), Side::Right),
            up(&al, &["a"])
        );
        assert_eq!(f.residual(&al, &f, Side::Left), UpSet::all());
        assert_eq!(
            UpSet::empty().residual(&al, &up(&al, &["a"]), Side::Left),
            UpSet::empty()
        );
        // the oracle agrees on the second example
        let t = up_closure(&al, f.gens(), 5).unwrap();
        let brute =
            oracle::oracle_residual_set(&al, &t, &[al.parse_word("b").unwrap()], Side::Right)
                .unwrap();
        assert_eq!(brute, trunc(&al, &up(&al, &["a"]), 4));
    }

    #[test]
    fn graduation() {
        let al = ab();
        assert_eq!(up(&al, &["aa", "b"]).graduation(), Ok(1));
        assert_eq!(UpSet::all().graduation(), Ok(0));
        assert!(matches!(
            UpSet::empty().graduation(),
            Err(Error::EmptySegment(_))
        ));
    }

    #[test]
    fn involution() {
        let al = ab();
        assert_eq!(up(&al, &["ab"]).involute(&al), up(&al, &["ba"]));
        assert_eq!(up(&al, &["a", "b"]).involute(&al), up(&al, &["a", "b"]));
        assert_eq!(UpSet::empty().involute(&al), UpSet::empty());
    }

    #[test]
    fn display() {
        let al = ab();
        assert_eq!(up(&al, &["ba", "ab"]).display(&al).to_string(), "↑{ab,ba}");
        assert_eq!(UpSet::all().display(&al).to_string(), "A*");
        assert_eq!(UpSet::empty().display(&al).to_string(), "∅");
    }

    // Three letters, a ≤ c and b ≤ c, with the involution swapping a and b.

    fn alphabet3() -> Alphabet {
        Alphabet::from_spec(&AlphabetSpec {
            letters: vec!["a".into(), "b".into(), "c".into()],
            order: vec![("a".into(), "c".into()), ("b".into(), "c".into())],
            involution: Some(vec![("a".into(), "b".into())]),
        })
        .unwrap()
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..3, 0..=max_len)
            .prop_map(|v| v.into_iter().map(Letter).collect::<Word>())
    }

    fn arb_upset(max_gens: usize, max_len: usize) -> impl Strategy<Value = UpSet> {
        prop::collection::vec(arb_word(max_len), 1..=max_gens)
            .prop_map(|ws| UpSet::minimize(&alphabet3(), ws))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ops_agree_with_truncation_oracle(f in arb_upset(3, 3), g in arb_upset(3, 3), w in arb_word(2)) {
            let al = alphabet3();
            let l = 6;
            let tf = trunc(&al, &f, l);
            let tg = trunc(&al, &g, l);
            // union and intersection
            let u: BTreeSet<Word> = tf.union(&tg).cloned().collect();
            prop_assert_eq!(trunc(&al, &f.union_meet(&al, &g), l), u);
            let i: BTreeSet<Word> = tf.intersection(&tg).cloned().collect();
            prop_assert_eq!(trunc(&al, &f.intersect(&al, &g), l), i);
            // concatenation
            let fl = oracle::BoundedLanguage::new(l, tf.clone());
            let gl = oracle::BoundedLanguage::new(l, tg.clone());
            prop_assert_eq!(trunc(&al, &f.concat(&al, &g), l), oracle::concat_bounded(&fl, &gl, l).words);
            // quotients, with margin: answers up to l - |w| are exact
            for side in [Side::Left, Side::Right] {
                let q = f.quotient(&al, &w, side);
                let brute = oracle::oracle_residual(&al, &fl, &w, side).unwrap();
                prop_assert_eq!(trunc(&al, &q, l - w.len()), brute);
            }
            // membership
            for x in oracle::all_words(&al, 3) {
                prop_assert_eq!(f.member(&al, &x), tf.contains(&x));
            }
        }

        #[test]
        fn residual_is_largest(f in arb_upset(3, 3), g in arb_upset(2, 2)) {
            let al = alphabet3();
            for side in [Side::Left, Side::Right] {
                let r = f.residual(&al, &g, side);
                let prod = match side {
                    Side::Right => r.concat(&al, &g),
                    Side::Left => g.concat(&al, &r),
                };
                prop_assert!(f.contains(&al, &prod));
                // maximality against the oracle: every u with u·B ⊆ F is in r
                let l = 5;
                let tf = oracle::up_closure(&al, f.gens(), l).unwrap();
                let brute = oracle::oracle_residual_set(&al, &tf, g.gens(), side).unwrap();
                let room = l - g.max_len();
                prop_assert_eq!(trunc(&al, &r, room), brute);
            }
        }

        #[test]
        fn monoid_laws(f in arb_upset(3, 3), g in arb_upset(3, 3), h in arb_upset(2, 2)) {
            let al = alphabet3();
            let fg = f.concat(&al, &g);
            prop_assert_eq!(fg.gens().len(), f.gens().len() * g.gens().len());
            prop_assert_eq!(fg.graduation().unwrap(), f.graduation().unwrap() + g.graduation().unwrap());
            // cancellation
            if fg == f.concat(&al, &h) { prop_assert_eq!(&g, &h); }
            if g.concat(&al, &f) == h.concat(&al, &f) { prop_assert_eq!(&g, &h); }
            // distributivity over union
            prop_assert_eq!(
                f.concat(&al, &g.union_meet(&al, &h)),
                fg.union_meet(&al, &f.concat(&al, &h))
            );
            // involution reverses products
            prop_assert_eq!(fg.involute(&al), g.involute(&al).concat(&al, &f.involute(&al)));
            prop_assert_eq!(f.involute(&al).involute(&al), f.clone());
            // monotone
            let bigger = f.union_meet(&al, &h);
            prop_assert!(bigger.concat(&al, &g).contains(&al, &fg));
        }

        /// X ⊆ X', Y ⊆ Y', XY = X'Y' forces equality.
        #[test]
        fn semicancellation(x in arb_upset(2, 3), y in arb_upset(2, 3), dx in arb_word(3), dy in arb_word(3)) {
            let al = alphabet3();
            let xy = x.concat(&al, &y);
            let x2 = x.union_meet(&al, &UpSet::principal(dx));
            let y2 = y.union_meet(&al, &UpSet::principal(dy));
            if x2.concat(&al, &y2) == xy {
                prop_assert_eq!(x2, x);
                prop_assert_eq!(y2, y);
            }
        }

        #[test]
        fn min_homomorphism(xs in prop::collection::vec(arb_word(3), 1..4), ys in prop::collection::vec(arb_word(3), 1..4)) {
            let al = alphabet3();
            let l = 6;
            let x = oracle::BoundedLanguage::new(l, xs.clone());
            let y = oracle::BoundedLanguage::new(l, ys.clone());
            let brute = oracle::oracle_concat_min(&al, &x, &y);
            let got = UpSet::minimize(&al, xs).concat(&al, &UpSet::minimize(&al, ys));
            prop_assert_eq!(got.gens().iter().cloned().collect::<BTreeSet<_>>(), brute);
        }
    }
}
