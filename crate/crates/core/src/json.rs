//! Wire formats. Words are compact strings when every letter name is one
//! character and arrays of names otherwise.

use serde_json::{json, Map, Value};

use crate::alphabet::Alphabet;
use crate::blocks::BlockPath;
use crate::envelope::{EnvelopeSpace, TransitionSystem};
use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::macneille::DownSetMax;
use crate::upset::UpSet;
use crate::word::Word;

fn words_to_json(alphabet: &Alphabet, words: &[Word]) -> Value {
    Value::Array(words.iter().map(|w| alphabet.word_to_json(w)).collect())
}

fn words_from_json(alphabet: &Alphabet, v: &Value) -> Result<Vec<Word>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array of words, got {v}")))?
        .iter()
        .map(|w| alphabet.word_from_json(w))
        .collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn index(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|i| i as usize)
        .ok_or_else(|| Error::Parse(format!("field {key:?} must be a nonnegative integer")))
}

/// `{"gens":[...]}`.
pub fn upset_to_json(alphabet: &Alphabet, f: &UpSet) -> Value {
    json!({ "gens": words_to_json(alphabet, f.gens()) })
}

/// Reads `{"gens":[...]}`; the generators need not be minimal.
pub fn upset_from_json(alphabet: &Alphabet, v: &Value) -> Result<UpSet> {
    Ok(UpSet::minimize(
        alphabet,
        words_from_json(alphabet, field(v, "gens")?)?,
    ))
}

pub fn parse_upset(alphabet: &Alphabet, text: &str) -> Result<UpSet> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    upset_from_json(alphabet, &v)
}

/// `{"factors":[{"gens":...}, ...]}`.
pub fn factorization_to_json(alphabet: &Alphabet, f: &Factorization) -> Value {
    json!({
        "factors": f.factors.iter().map(|x| upset_to_json(alphabet, x)).collect::<Vec<_>>()
    })
}

pub fn factorization_from_json(alphabet: &Alphabet, v: &Value) -> Result<Factorization> {
    let factors = field(v, "factors")?
        .as_array()
        .ok_or_else(|| Error::Parse("factors must be an array".into()))?
        .iter()
        .map(|x| upset_from_json(alphabet, x))
        .collect::<Result<_>>()?;
    Ok(Factorization { factors })
}

/// `{"maxgens":[...]}`.
pub fn downset_to_json(alphabet: &Alphabet, d: &DownSetMax) -> Value {
    json!({ "maxgens": words_to_json(alphabet, d.maxgens()) })
}

pub fn downset_from_json(alphabet: &Alphabet, v: &Value) -> Result<DownSetMax> {
    Ok(DownSetMax::maximize(
        alphabet,
        words_from_json(alphabet, field(v, "maxgens")?)?,
    ))
}

/// `{"points":[...], "x":i, "y":j, "dist":[[...]]}`.
pub fn envelope_to_json(alphabet: &Alphabet, s: &EnvelopeSpace) -> Value {
    json!({
        "points": s.points.iter().map(|p| upset_to_json(alphabet, p)).collect::<Vec<_>>(),
        "x": s.x,
        "y": s.y,
        "dist": s.dist.iter().map(|row| {
            row.iter().map(|d| upset_to_json(alphabet, d)).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

pub fn envelope_from_json(alphabet: &Alphabet, v: &Value) -> Result<EnvelopeSpace> {
    let points: Vec<UpSet> = field(v, "points")?
        .as_array()
        .ok_or_else(|| Error::Parse("points must be an array".into()))?
        .iter()
        .map(|p| upset_from_json(alphabet, p))
        .collect::<Result<_>>()?;
    let n = points.len();
    let dist: Vec<Vec<UpSet>> = field(v, "dist")?
        .as_array()
        .ok_or_else(|| Error::Parse("dist must be an array".into()))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("dist rows must be arrays".into()))?
                .iter()
                .map(|d| upset_from_json(alphabet, d))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let (x, y) = (index(v, "x")?, index(v, "y")?);
    if dist.len() != n || dist.iter().any(|row| row.len() != n) || x >= n || y >= n {
        return Err(Error::Parse("envelope dimensions do not match".into()));
    }
    Ok(EnvelopeSpace { points, x, y, dist })
}

/// `{"states":n, "trans":[[p,"a",q], ...]}`.
pub fn transitions_to_json(alphabet: &Alphabet, m: &TransitionSystem) -> Value {
    json!({
        "states": m.states,
        "trans": m.trans.iter().map(|&(p, a, q)| json!([p, alphabet.name(a), q])).collect::<Vec<_>>(),
    })
}

pub fn transitions_from_json(alphabet: &Alphabet, v: &Value) -> Result<TransitionSystem> {
    let states = index(v, "states")?;
    let trans = field(v, "trans")?
        .as_array()
        .ok_or_else(|| Error::Parse("trans must be an array".into()))?
        .iter()
        .map(|t| {
            let bad = || Error::Parse(format!("transition must be [p, letter, q]: {t}"));
            let parts = t.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let p = parts[0].as_u64().ok_or_else(bad)? as usize;
            let a = alphabet.letter(parts[1].as_str().ok_or_else(bad)?)?;
            let q = parts[2].as_u64().ok_or_else(bad)? as usize;
            Ok((p, a, q))
        })
        .collect::<Result<_>>()?;
    Ok(TransitionSystem { states, trans })
}

/// `{"blocks":[[0,1],[1,2]], "cuts":[1]}`.
pub fn block_path_to_json(path: &BlockPath) -> Value {
    json!({ "blocks": path.blocks, "cuts": path.cuts })
}

pub fn block_path_from_json(v: &Value) -> Result<BlockPath> {
    let blocks = serde_json::from_value(field(v, "blocks")?.clone())
        .map_err(|e| Error::Parse(format!("blocks: {e}")))?;
    let cuts = serde_json::from_value(field(v, "cuts")?.clone())
        .map_err(|e| Error::Parse(format!("cuts: {e}")))?;
    Ok(BlockPath { blocks, cuts })
}

/// The alphabet spec as JSON, for counterexample payloads.
pub fn alphabet_to_json(alphabet: &Alphabet) -> Value {
    serde_json::to_value(alphabet.to_spec()).expect("spec serializes")
}

/// Builds an object from key/value pairs, preserving order.
pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{block_decomposition, graph_of};
    use crate::envelope::{build_envelope, to_transition_system};
    use crate::factor::factorize;
    use crate::macneille::lower_cone;

    fn ab() -> Alphabet {
        Alphabet::discrete(&["a", "b"]).unwrap()
    }

    #[test]
    fn upset_forms() {
        let al = ab();
        let f = UpSet::parse(&al, &["ba", "ab"]).unwrap();
        let v = upset_to_json(&al, &f);
        assert_eq!(v.to_string(), r#"{"gens":["ab","ba"]}"#);
        assert_eq!(upset_from_json(&al, &v).unwrap(), f);
        assert_eq!(parse_upset(&al, r#"{"gens":[]}"#).unwrap(), UpSet::empty());
        assert_eq!(parse_upset(&al, r#"{"gens":[""]}"#).unwrap(), UpSet::all());
        assert_eq!(
            parse_upset(&al, r#"{"gens":["a","ab"]}"#).unwrap(),
            UpSet::parse(&al, &["a"]).unwrap()
        );
        assert!(parse_upset(&al, r#"{"gens":["z"]}"#).is_err());
        assert!(parse_upset(&al, r#"{"gen":[]}"#).is_err());
        assert!(parse_upset(&al, "{").is_err());
    }

    #[test]
    fn long_letter_names_use_arrays() {
        let al = Alphabet::discrete(&["up", "down"]).unwrap();
        let f = upset_from_json(&al, &json!({"gens": [["up", "down"]]})).unwrap();
        assert_eq!(upset_to_json(&al, &f), json!({"gens": [["up", "down"]]}));
    }

    #[test]
    fn structured_round_trips() {
        let al = ab();
        let f = UpSet::parse(&al, &["ab"]).unwrap();
        let fac = factorize(&al, &f).unwrap();
        let v = factorization_to_json(&al, &fac);
        assert_eq!(
            v.to_string(),
            r#"{"factors":[{"gens":["a"]},{"gens":["b"]}]}"#
        );
        assert_eq!(factorization_from_json(&al, &v).unwrap(), fac);

        let d = lower_cone(&al, &UpSet::parse(&al, &["ab", "ba"]).unwrap()).unwrap();
        let v = downset_to_json(&al, &d);
        assert_eq!(v.to_string(), r#"{"maxgens":["a","b"]}"#);
        assert_eq!(downset_from_json(&al, &v).unwrap(), d);

        let s = build_envelope(&al, &f);
        let v = envelope_to_json(&al, &s);
        assert_eq!(envelope_from_json(&al, &v).unwrap(), s);
        let m = to_transition_system(&al, &s);
        let v = transitions_to_json(&al, &m);
        assert!(v["trans"].as_array().unwrap().contains(&json!([0, "a", 1])));
        assert_eq!(transitions_from_json(&al, &v).unwrap(), m);
        let bp = block_decomposition(&graph_of(&m), s.x, s.y).unwrap();
        let v = block_path_to_json(&bp);
        assert_eq!(v.to_string(), r#"{"blocks":[[0,1],[1,2]],"cuts":[1]}"#);
        assert_eq!(block_path_from_json(&v).unwrap(), bp);
    }
}
