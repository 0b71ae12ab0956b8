//! Irreducibility and unique factorization of nonempty final segments.
//!
//! Every factorization `↑Z = XY` comes from a factorization `Z = Min(X)·Min(Y)`
//! of the generator antichain, and `(u, v) ↦ uv` is a bijection
//! `Min(X) × Min(Y) → Z`. The search below fixes a shortest generator `z0`,
//! tries each split `z0 = u0·v0`, and looks for antichains `U ∋ u0`, `V ∋ v0`
//! whose pairwise products are exactly `Z`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::upset::{is_antichain, Side, UpSet};
use crate::word::Word;

/// The decomposition of a nonempty final segment into irreducibles.
/// `A*` has the empty factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub factors: Vec<UpSet>,
}

impl Factorization {
    pub fn product(&self, alphabet: &Alphabet) -> UpSet {
        self.factors
            .iter()
            .fold(UpSet::all(), |acc, f| acc.concat(alphabet, f))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

fn check_splittable(f: &UpSet) -> Result<()> {
    if f.is_empty() {
        return Err(Error::Precondition("splits of the empty segment".into()));
    }
    if f.is_all() {
        return Err(Error::Precondition("splits of A*".into()));
    }
    Ok(())
}

/// Visits every nontrivial `(X, Y)` with `XY = F`, possibly more than once.
fn search_splits<B>(
    alphabet: &Alphabet,
    f: &UpSet,
    mut visit: impl FnMut(UpSet, UpSet) -> ControlFlow<B>,
) -> Option<B> {
    let z = f.gens();
    let zset: HashSet<&Word> = z.iter().collect();
    let total = z.len();
    let z0 = &z[0];
    for k in 1..z0.len() {
        let (u0, v0) = (z0.prefix(k), z0.suffix_from(k));
        let ucand: Vec<Word> = z
            .iter()
            .filter(|g| g.len() > v0.len() && g.ends_with(&v0))
            .map(|g| g.prefix(g.len() - v0.len()))
            .filter(|u| u != &u0)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vcand: Vec<Word> = z
            .iter()
            .filter(|g| g.len() > u0.len() && g.starts_with(&u0))
            .map(|g| g.suffix_from(u0.len()))
            .filter(|v| v != &v0)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for ucount in 1..=ucand.len() + 1 {
            if !total.is_multiple_of(ucount) {
                continue;
            }
            let vsize = total / ucount;
            if vsize > vcand.len() + 1 {
                continue;
            }
            let mut found = None;
            for_each_subset(&ucand, ucount - 1, &mut |extra| {
                let mut uset: Vec<Word> = vec![u0.clone()];
                uset.extend(extra.iter().map(|w| (*w).clone()));
                if !is_antichain(alphabet, &uset) {
                    return ControlFlow::Continue(());
                }
                let vmax: Vec<Word> = vcand
                    .iter()
                    .filter(|v| uset.iter().all(|u| zset.contains(&u.concat(v))))
                    .cloned()
                    .collect();
                if vmax.len() + 1 < vsize {
                    return ControlFlow::Continue(());
                }
                let mut inner = None;
                for_each_subset(&vmax, vsize - 1, &mut |vextra| {
                    let mut vset: Vec<Word> = vec![v0.clone()];
                    vset.extend(vextra.iter().map(|w| (*w).clone()));
                    let products: HashSet<Word> = uset
                        .iter()
                        .flat_map(|u| vset.iter().map(move |v| u.concat(v)))
                        .collect();
                    if products.len() == total
                        && products.iter().all(|p| zset.contains(p))
                        && is_antichain(alphabet, &vset)
                    {
                        let x = UpSet::minimize(alphabet, uset.clone());
                        let y = UpSet::minimize(alphabet, vset);
                        if let ControlFlow::Break(b) = visit(x, y) {
                            inner = Some(b);
                            return ControlFlow::Break(());
                        }
                    }
                    ControlFlow::Continue(())
                });
                if let Some(b) = inner {
                    found = Some(b);
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Calls `f` on every `size`-subset of `items`, in lexicographic index order.
fn for_each_subset<'a, T>(
    items: &'a [T],
    size: usize,
    f: &mut dyn FnMut(&[&'a T]) -> ControlFlow<()>,
) {
    fn go<'a, T>(
        items: &'a [T],
        start: usize,
        size: usize,
        current: &mut Vec<&'a T>,
        f: &mut dyn FnMut(&[&'a T]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if current.len() == size {
            return f(current);
        }
        let need = size - current.len();
        for i in start..items.len() {
            if items.len() - i < need {
                break;
            }
            current.push(&items[i]);
            go(items, i + 1, size, current, f)?;
            current.pop();
        }
        ControlFlow::Continue(())
    }
    let _ = go(items, 0, size, &mut Vec::with_capacity(size), f);
}

/// All pairs `(X, Y)` with `XY = F` and `X ≠ A* ≠ Y`, deduplicated and sorted.
pub fn two_factor_splits(alphabet: &Alphabet, f: &UpSet) -> Result<Vec<(UpSet, UpSet)>> {
    check_splittable(f)?;
    let mut out = BTreeSet::new();
    search_splits::<()>(alphabet, f, |x, y| {
        out.insert((x, y));
        ControlFlow::Continue(())
    });
    Ok(out.into_iter().collect())
}

/// One nontrivial split, if any.
pub fn find_split(alphabet: &Alphabet, f: &UpSet) -> Result<Option<(UpSet, UpSet)>> {
    check_splittable(f)?;
    Ok(search_splits(alphabet, f, |x, y| {
        ControlFlow::Break((x, y))
    }))
}

/// `∅` is irreducible, `A*` is not; otherwise irreducible iff no nontrivial split.
pub fn is_irreducible(alphabet: &Alphabet, f: &UpSet) -> bool {
    if f.is_empty() {
        return true;
    }
    if f.is_all() {
        return false;
    }
    // γ(F) = 1 forces one factor to have γ = 0, i.e. to be A*.
    if f.graduation() == Ok(1) {
        return true;
    }
    matches!(find_split(alphabet, f), Ok(None))
}

/// The unique factorization of a nonempty final segment into irreducibles.
///
/// Splits off the shortest left factor at each step, which is always
/// irreducible.
pub fn factorize(alphabet: &Alphabet, f: &UpSet) -> Result<Factorization> {
    if f.is_empty() {
        return Err(Error::EmptySegment("empty segment has no factorization"));
    }
    let mut factors = vec![];
    let mut rest = f.clone();
    while !rest.is_all() {
        let splits = two_factor_splits(alphabet, &rest)?;
        let Some((left, right)) = splits.into_iter().min_by_key(|(x, _)| {
            (
                x.graduation().unwrap_or(usize::MAX),
                x.gens().len(),
                x.clone(),
            )
        }) else {
            factors.push(rest);
            break;
        };
        factors.push(left);
        rest = right;
    }
    Ok(Factorization { factors })
}

/// Factorizes by recursing on both halves of whichever split `choose` picks.
pub fn factorize_with(
    alphabet: &Alphabet,
    f: &UpSet,
    choose: &mut dyn FnMut(&[(UpSet, UpSet)]) -> usize,
) -> Result<Factorization> {
    if f.is_empty() {
        return Err(Error::EmptySegment("empty segment has no factorization"));
    }
    if f.is_all() {
        return Ok(Factorization { factors: vec![] });
    }
    let splits = two_factor_splits(alphabet, f)?;
    if splits.is_empty() {
        return Ok(Factorization {
            factors: vec![f.clone()],
        });
    }
    let i = choose(&splits).min(splits.len() - 1);
    let (x, y) = &splits[i];
    let mut left = factorize_with(alphabet, x, choose)?;
    let right = factorize_with(alphabet, y, choose)?;
    left.factors.extend(right.factors);
    Ok(left)
}

/// Every factor sequence reachable through any sequence of split choices.
/// Freeness says this set has exactly one element.
pub fn all_factorizations(alphabet: &Alphabet, f: &UpSet) -> Result<BTreeSet<Vec<UpSet>>> {
    fn go(
        alphabet: &Alphabet,
        f: &UpSet,
        memo: &mut BTreeMap<UpSet, BTreeSet<Vec<UpSet>>>,
    ) -> Result<BTreeSet<Vec<UpSet>>> {
        if let Some(hit) = memo.get(f) {
            return Ok(hit.clone());
        }
        let mut out = BTreeSet::new();
        if f.is_all() {
            out.insert(vec![]);
        } else {
            let splits = two_factor_splits(alphabet, f)?;
            if splits.is_empty() {
                out.insert(vec![f.clone()]);
            }
            for (x, y) in splits {
                let lefts = go(alphabet, &x, memo)?;
                let rights = go(alphabet, &y, memo)?;
                for l in &lefts {
                    for r in &rights {
                        let mut seq = l.clone();
                        seq.extend(r.iter().cloned());
                        out.insert(seq);
                    }
                }
            }
        }
        memo.insert(f.clone(), out.clone());
        Ok(out)
    }
    if f.is_empty() {
        return Err(Error::EmptySegment("empty segment has no factorization"));
    }
    go(alphabet, f, &mut BTreeMap::new())
}

/// Which of the two factorizations is refined by the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Overlap {
    /// `G1 = F1·W` and `F2 = W·G2`.
    #[serde(rename = "F1-prefix")]
    F1Prefix,
    /// `F1 = G1·W` and `G2 = W·F2`.
    #[serde(rename = "G1-prefix")]
    G1Prefix,
}

/// Given `F1·F2 = G1·G2`, finds the interpolant `W`.
pub fn equidivisibility_witness(
    alphabet: &Alphabet,
    f1: &UpSet,
    f2: &UpSet,
    g1: &UpSet,
    g2: &UpSet,
) -> Result<(Overlap, UpSet)> {
    if [f1, f2, g1, g2].iter().any(|x| x.is_empty()) {
        return Err(Error::Precondition(
            "equidivisibility needs nonempty operands".into(),
        ));
    }
    if f1.concat(alphabet, f2) != g1.concat(alphabet, g2) {
        return Err(Error::Precondition("products differ".into()));
    }
    let w = g1.residual(alphabet, f1, Side::Left);
    if g1 == &f1.concat(alphabet, &w) && f2 == &w.concat(alphabet, g2) {
        return Ok((Overlap::F1Prefix, w));
    }
    let w = f1.residual(alphabet, g1, Side::Left);
    if f1 == &g1.concat(alphabet, &w) && g2 == &w.concat(alphabet, f2) {
        return Ok((Overlap::G1Prefix, w));
    }
    Err(Error::Invariant(format!(
        "no equidivisibility witness for {}·{} = {}·{}",
        f1.display(alphabet),
        f2.display(alphabet),
        g1.display(alphabet),
        g2.display(alphabet)
    )))
}

/// Outcome of the convexity check for one candidate pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Convexity {
    /// Dominated by another supplied candidate.
    NotMinimal,
    /// Conditions that hold, each with its witness.
    Holds {
        /// `U1·W ⊆ V1`, `V1 ⊆ U1`, `U2 = W·V2`.
        first: Option<UpSet>,
        /// `W·U2 ⊆ V2`, `V2 ⊆ U2`, `U1 = V1·W`.
        second: Option<UpSet>,
    },
    /// Minimal among candidates but neither condition holds.
    Fails,
}

impl Convexity {
    pub fn holds(&self) -> bool {
        matches!(self, Convexity::Holds { .. })
    }
}

/// Checks the convexity half of summability of `(V1, V2)` against candidate
/// pairs `(U1, U2)` with `U1·U2 ⊆ V1·V2`.
///
/// Only candidates minimal among those supplied are tested; the verdict is
/// meaningful for pairs that are minimal over all of the monoid, such as
/// the ones derived from an envelope.
pub fn verify_summable(
    alphabet: &Alphabet,
    v1: &UpSet,
    v2: &UpSet,
    candidates: &[(UpSet, UpSet)],
) -> Result<Vec<Convexity>> {
    if v1.is_empty() || v2.is_empty() {
        return Err(Error::Precondition(
            "summability needs nonempty operands".into(),
        ));
    }
    let v = v1.concat(alphabet, v2);
    for (u1, u2) in candidates {
        if !v.contains(alphabet, &u1.concat(alphabet, u2)) {
            return Err(Error::Precondition(format!(
                "candidate ({}, {}) is not above V1·V2",
                u1.display(alphabet),
                u2.display(alphabet)
            )));
        }
    }
    let dominated = |i: usize| {
        let (u1, u2) = &candidates[i];
        candidates.iter().enumerate().any(|(j, (w1, w2))| {
            j != i && (w1, w2) != (u1, u2) && w1.contains(alphabet, u1) && w2.contains(alphabet, u2)
        })
    };
    Ok(candidates
        .iter()
        .enumerate()
        .map(|(i, (u1, u2))| {
            if dominated(i) {
                return Convexity::NotMinimal;
            }
            let first = {
                let w = u2.residual(alphabet, v2, Side::Right);
                (u1.contains(alphabet, v1)
                    && *u2 == w.concat(alphabet, v2)
                    && v1.contains(alphabet, &u1.concat(alphabet, &w)))
                .then_some(w)
            };
            let second = {
                let w = u1.residual(alphabet, v1, Side::Left);
                (u2.contains(alphabet, v2)
                    && *u1 == v1.concat(alphabet, &w)
                    && v2.contains(alphabet, &w.concat(alphabet, u2)))
                .then_some(w)
            };
            if first.is_none() && second.is_none() {
                Convexity::Fails
            } else {
                Convexity::Holds { first, second }
            }
        })
        .collect())
}
