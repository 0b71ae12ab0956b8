//! Seeded random instances: alphabets, antichains, irreducibles, products.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Alphabet, AlphabetSpec, Letter};
use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::upset::UpSet;
use crate::word::Word;

/// Size caps for generated and accepted instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_gens: usize,
    pub max_len: usize,
    pub max_letters: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_gens: 8,
            max_len: 6,
            max_letters: 4,
        }
    }
}

impl Limits {
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        if alphabet.len() > self.max_letters {
            return Err(Error::Limit(format!(
                "alphabet has {} letters, limit is {}",
                alphabet.len(),
                self.max_letters
            )));
        }
        Ok(())
    }

    pub fn check(&self, f: &UpSet) -> Result<()> {
        if f.gens().len() > self.max_gens {
            return Err(Error::Limit(format!(
                "{} generators, limit is {}",
                f.gens().len(),
                self.max_gens
            )));
        }
        if f.max_len() > self.max_len {
            return Err(Error::Limit(format!(
                "generator of length {}, limit is {}",
                f.max_len(),
                self.max_len
            )));
        }
        Ok(())
    }

    pub fn admits(&self, f: &UpSet) -> bool {
        self.check(f).is_ok()
    }
}

/// The generator behind every seeded routine.
pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with a label and an index into an independent seed.
pub fn derive_seed(seed: u64, label: &str, index: u64) -> u64 {
    // FNV-1a over the label, then a splitmix64 finalizer.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut z = seed ^ h.rotate_left(17) ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Trivially ordered letters `a, b, …`.
pub fn discrete_alphabet(letters: usize) -> Alphabet {
    Alphabet::discrete(&NAMES[..letters]).expect("valid names")
}

/// An alphabet of 2 to `max_letters` letters with a random involution and
/// a random partial order compatible with it.
pub fn random_alphabet<R: Rng>(rng: &mut R, max_letters: usize) -> Alphabet {
    let k = rng.gen_range(2..=max_letters.clamp(2, NAMES.len()));
    loop {
        let mut idx: Vec<usize> = (0..k).collect();
        idx.shuffle(rng);
        let mut bar: Vec<usize> = (0..k).collect();
        let mut i = 0;
        while i + 1 < k {
            if rng.gen_bool(0.5) {
                bar[idx[i]] = idx[i + 1];
                bar[idx[i + 1]] = idx[i];
                i += 2;
            } else {
                i += 1;
            }
        }
        let mut pairs = vec![];
        if rng.gen_bool(0.6) {
            idx.shuffle(rng);
            for i in 0..k {
                for j in i + 1..k {
                    if rng.gen_bool(0.3) {
                        pairs.push((idx[i], idx[j]));
                        pairs.push((bar[idx[i]], bar[idx[j]]));
                    }
                }
            }
        }
        let spec = AlphabetSpec {
            letters: NAMES[..k].iter().map(|s| s.to_string()).collect(),
            order: pairs
                .iter()
                .map(|&(a, b)| (NAMES[a].to_string(), NAMES[b].to_string()))
                .collect(),
            involution: Some(
                (0..k)
                    .filter(|&a| bar[a] > a)
                    .map(|a| (NAMES[a].to_string(), NAMES[bar[a]].to_string()))
                    .collect(),
            ),
        };
        // A mirrored pair can close a cycle; draw again.
        if let Ok(al) = Alphabet::from_spec(&spec) {
            return al;
        }
    }
}

pub fn random_word<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    min_len: usize,
    max_len: usize,
) -> Word {
    let len = rng.gen_range(min_len..=max_len);
    (0..len)
        .map(|_| Letter(rng.gen_range(0..alphabet.len()) as u8))
        .collect()
}

/// A nonempty antichain of nonempty words.
pub fn random_antichain<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_gens: usize,
    max_len: usize,
) -> UpSet {
    let n = rng.gen_range(1..=max_gens.max(1));
    let words: Vec<Word> = (0..n)
        .map(|_| random_word(rng, alphabet, 1, max_len))
        .collect();
    UpSet::minimize(alphabet, words)
}

/// Rejection-samples an irreducible other than `∅`.
pub fn random_irreducible<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    max_gens: usize,
    max_len: usize,
) -> UpSet {
    loop {
        let f = random_antichain(rng, alphabet, max_gens, max_len);
        if is_irreducible(alphabet, &f) {
            return f;
        }
    }
}

/// A product of 1 to 4 random irreducibles within `limits`, with its factors.
pub fn random_product<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    limits: &Limits,
) -> (UpSet, Vec<UpSet>) {
    let target = rng.gen_range(1..=4);
    let mut factors: Vec<UpSet> = vec![];
    let mut product = UpSet::all();
    let mut misses = 0;
    while factors.len() < target && misses < 20 {
        let room_len = limits.max_len - product.max_len();
        let room_gens = limits.max_gens / product.gens().len();
        if room_len == 0 || room_gens == 0 {
            break;
        }
        let f = random_irreducible(rng, alphabet, room_gens.min(3), room_len.min(3));
        let next = product.concat(alphabet, &f);
        if limits.admits(&next) {
            product = next;
            factors.push(f);
        } else {
            misses += 1;
        }
    }
    (product, factors)
}

/// Two nonempty segments whose product is within `limits`, each either a
/// product of irreducibles or an arbitrary antichain.
pub fn random_gluable_pair<R: Rng>(
    rng: &mut R,
    alphabet: &Alphabet,
    limits: &Limits,
) -> (UpSet, UpSet) {
    let half = Limits {
        max_gens: limits.max_gens,
        max_len: limits.max_len / 2,
        max_letters: limits.max_letters,
    };
    loop {
        let draw = |rng: &mut R| {
            if rng.gen_bool(0.5) {
                random_product(rng, alphabet, &half).0
            } else {
                random_antichain(rng, alphabet, 3, half.max_len)
            }
        };
        let (f1, f2) = (draw(rng), draw(rng));
        if limits.admits(&f1.concat(alphabet, &f2)) {
            return (f1, f2);
        }
    }
}
