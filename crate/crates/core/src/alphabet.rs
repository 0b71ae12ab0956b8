//! Finite ordered alphabets with an order-preserving involution.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

/// Interned letter id, an index into the owning [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u8);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The JSON form of an alphabet.
///
/// `order` pairs mean "first ≤ second"; an omitted `involution` is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetSpec {
    pub letters: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<(String, String)>>,
}

/// A finite poset of letters together with an order-preserving involution.
///
/// All derived tables (the order matrix, down-sets, minimal common upper
/// bounds) are computed once at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
    leq: Vec<bool>,
    bar: Vec<Letter>,
    below: Vec<Vec<Letter>>,
    mcub: Vec<Vec<Letter>>,
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Alphabet")
            .field("letters", &self.names)
            .field("order", &self.order_pairs())
            .finish()
    }
}

pub const MAX_LETTERS: usize = 255;

impl Alphabet {
    /// Discrete order, identity involution.
    pub fn discrete<S: AsRef<str>>(letters: &[S]) -> Result<Alphabet> {
        Alphabet::from_spec(&AlphabetSpec {
            letters: letters.iter().map(|s| s.as_ref().to_string()).collect(),
            order: vec![],
            involution: None,
        })
    }

    /// Validates a spec and builds the alphabet.
    ///
    /// The order is the reflexive-transitive closure of the given pairs and is
    /// rejected if that closure is not antisymmetric. Involution pairs are read
    /// as a map; a letter missing from its domain is sent to the unique letter
    /// mapping onto it, or to itself.
    pub fn from_spec(spec: &AlphabetSpec) -> Result<Alphabet> {
        let n = spec.letters.len();
        if n == 0 {
            return Err(Error::InvalidAlphabet("no letters".into()));
        }
        if n > MAX_LETTERS {
            return Err(Error::InvalidAlphabet(format!(
                "{n} letters, at most {MAX_LETTERS} supported"
            )));
        }
        let mut index = HashMap::new();
        for (i, name) in spec.letters.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidAlphabet("empty letter name".into()));
            }
            if index.insert(name.clone(), Letter(i as u8)).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate letter `{name}`")));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownLetter(s.to_string()))
        };

        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in &spec.order {
            let (a, b) = (lookup(a)?, lookup(b)?);
            leq[a.index() * n + b.index()] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::InvalidAlphabet(format!(
                        "cycle in order pairs: `{}` and `{}` are mutually below each other",
                        spec.letters[i], spec.letters[j]
                    )));
                }
            }
        }

        let mut map: Vec<Option<Letter>> = vec![None; n];
        if let Some(pairs) = &spec.involution {
            for (a, b) in pairs {
                let (a, b) = (lookup(a)?, lookup(b)?);
                match map[a.index()] {
                    Some(prev) if prev != b => {
                        return Err(Error::InvalidAlphabet(format!(
                            "involution is not a bijection: `{}` mapped twice",
                            spec.letters[a.index()]
                        )))
                    }
                    _ => map[a.index()] = Some(b),
                }
            }
        }
        let explicit = map.clone();
        for i in 0..n {
            if map[i].is_none() {
                let preimages: Vec<usize> = (0..n)
                    .filter(|&j| explicit[j] == Some(Letter(i as u8)))
                    .collect();
                map[i] = Some(match preimages.as_slice() {
                    [j] => Letter(*j as u8),
                    _ => Letter(i as u8),
                });
            }
        }
        let bar: Vec<Letter> = map.into_iter().map(|l| l.expect("filled")).collect();
        let images: BTreeSet<Letter> = bar.iter().copied().collect();
        if images.len() != n {
            return Err(Error::InvalidAlphabet(
                "involution is not a bijection".into(),
            ));
        }
        for i in 0..n {
            if bar[bar[i].index()].index() != i {
                return Err(Error::InvalidAlphabet(format!(
                    "involution applied twice does not fix `{}`",
                    spec.letters[i]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if leq[i * n + j] && !leq[bar[i].index() * n + bar[j].index()] {
                    return Err(Error::InvalidAlphabet(format!(
                        "involution is not order-preserving on `{}` ≤ `{}`",
                        spec.letters[i], spec.letters[j]
                    )));
                }
            }
        }

        let below = (0..n)
            .map(|b| {
                (0..n)
                    .filter(|&a| leq[a * n + b])
                    .map(|a| Letter(a as u8))
                    .collect()
            })
            .collect();
        let mut mcub = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let common: Vec<usize> = (0..n)
                    .filter(|&c| leq[a * n + c] && leq[b * n + c])
                    .collect();
                let minimal = common
                    .iter()
                    .filter(|&&c| !common.iter().any(|&d| d != c && leq[d * n + c]))
                    .map(|&c| Letter(c as u8))
                    .collect();
                mcub.push(minimal);
            }
        }

        Ok(Alphabet {
            names: spec.letters.clone(),
            index,
            leq,
            bar,
            below,
            mcub,
        })
    }

    pub fn from_json(text: &str) -> Result<Alphabet> {
        let spec: AlphabetSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Alphabet::from_spec(&spec)
    }

    /// Spec with the covering relation flattened to all strict pairs.
    pub fn to_spec(&self) -> AlphabetSpec {
        let involution = if self.bar.iter().enumerate().all(|(i, b)| b.index() == i) {
            None
        } else {
            Some(
                self.letters()
                    .map(|a| (self.name(a).to_string(), self.name(self.bar(a)).to_string()))
                    .collect(),
            )
        };
        AlphabetSpec {
            letters: self.names.clone(),
            order: self
                .order_pairs()
                .into_iter()
                .map(|(a, b)| (self.name(a).to_string(), self.name(b).to_string()))
                .collect(),
            involution,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(|i| Letter(i as u8))
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a.index()]
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: Letter, b: Letter) -> bool {
        self.leq[a.index() * self.names.len() + b.index()]
    }

    #[inline]
    pub fn bar(&self, a: Letter) -> Letter {
        self.bar[a.index()]
    }

    /// Letters below or equal to `a`.
    pub fn below(&self, a: Letter) -> &[Letter] {
        &self.below[a.index()]
    }

    /// Minimal letters above both `a` and `b` (possibly none).
    pub fn min_common_upper(&self, a: Letter, b: Letter) -> &[Letter] {
        &self.mcub[a.index() * self.names.len() + b.index()]
    }

    /// Strict order pairs `a < b`.
    pub fn order_pairs(&self) -> Vec<(Letter, Letter)> {
        let mut out = vec![];
        for a in self.letters() {
            for b in self.letters() {
                if a != b && self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// True when every letter name is a single `char`.
    pub fn compact(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses the compact string form, one character per letter.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut buf = [0u8; 4];
        s.chars()
            .map(|c| self.letter(c.encode_utf8(&mut buf)))
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    pub fn word_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Word> {
        names
            .iter()
            .map(|n| self.letter(n.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    /// Renders a word: the compact string when possible, `[a·b·c]` otherwise.
    pub fn display_word(&self, w: &Word) -> String {
        if self.compact() {
            w.iter().map(|&a| self.name(a)).collect()
        } else {
            let parts: Vec<&str> = w.iter().map(|&a| self.name(a)).collect();
            format!("[{}]", parts.join("·"))
        }
    }

    pub fn word_to_json(&self, w: &Word) -> serde_json::Value {
        if self.compact() {
            serde_json::Value::String(self.display_word(w))
        } else {
            serde_json::Value::Array(
                w.iter()
                    .map(|&a| serde_json::Value::String(self.name(a).to_string()))
                    .collect(),
            )
        }
    }

    /// Accepts either the compact string or an array of letter names.
    pub fn word_from_json(&self, v: &serde_json::Value) -> Result<Word> {
        match v {
            serde_json::Value::String(s) => self.parse_word(s),
            serde_json::Value::Array(items) => {
                let names = items
                    .iter()
                    .map(|x| {
                        x.as_str()
                            .ok_or_else(|| Error::Parse(format!("letter must be a string: {x}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.word_from_names(&names)
            }
            other => Err(Error::Parse(format!("not a word: {other}"))),
        }
    }
}
