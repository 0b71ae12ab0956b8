//! The residuation distance on final segments, the envelope of the two-point
//! space at distance `F`, and its transition system.

use std::collections::{BTreeSet, HashSet};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::upset::{Side, UpSet};
use crate::word::Word;

/// `d(p, q) = ⌈p̄·q̄⁻¹⌉ ∨ ⌈p⁻¹·q⌉`. The join of the reversed order is set
/// intersection.
pub fn d_v(alphabet: &Alphabet, p: &UpSet, q: &UpSet) -> UpSet {
    let left = p
        .involute(alphabet)
        .residual(alphabet, &q.involute(alphabet), Side::Right);
    if left.is_empty() {
        return left;
    }
    left.intersect(alphabet, &q.residual(alphabet, p, Side::Left))
}

/// Whether `r ⊆ d_V(p, q)`, decided without residuals: by adjunction this
/// holds iff `p·r ⊆ q` and `r·q̄ ⊆ p̄`.
pub fn below_distance(alphabet: &Alphabet, r: &UpSet, p: &UpSet, q: &UpSet) -> bool {
    q.contains(alphabet, &p.concat(alphabet, r))
        && p.involute(alphabet)
            .contains(alphabet, &r.concat(alphabet, &q.involute(alphabet)))
}

/// A finite space with distances in final segments. Point `i` is labelled by
/// `dist[x][i]`, which for an envelope is the point itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeSpace {
    pub points: Vec<UpSet>,
    pub x: usize,
    pub y: usize,
    pub dist: Vec<Vec<UpSet>>,
}

impl EnvelopeSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn segment(&self) -> &UpSet {
        &self.dist[self.x][self.y]
    }

    pub fn index_of(&self, p: &UpSet) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// `d(p,p) = A*`, and `A*` only on the diagonal.
    pub fn check_d1(&self) -> Result<()> {
        for p in 0..self.len() {
            for q in 0..self.len() {
                if self.dist[p][q].is_all() != (p == q) {
                    return Err(self.violation("d1", p, q));
                }
            }
        }
        Ok(())
    }

    /// `d(p,q) ⊇ d(p,r)·d(r,q)`.
    pub fn check_d2(&self, alphabet: &Alphabet) -> Result<()> {
        let n = self.len();
        for p in 0..n {
            for r in 0..n {
                for q in 0..n {
                    let via = self.dist[p][r].concat(alphabet, &self.dist[r][q]);
                    if !self.dist[p][q].contains(alphabet, &via) {
                        return Err(self.violation("d2", p, q));
                    }
                }
            }
        }
        Ok(())
    }

    /// `d(q,p)` is the involute of `d(p,q)`.
    pub fn check_d3(&self, alphabet: &Alphabet) -> Result<()> {
        for p in 0..self.len() {
            for q in 0..self.len() {
                if self.dist[q][p] != self.dist[p][q].involute(alphabet) {
                    return Err(self.violation("d3", p, q));
                }
            }
        }
        Ok(())
    }

    /// `d(p,q) = ∩_z d_V(d(z,p), d(z,q))`: the embedding into the monoid
    /// through distance rows is isometric.
    ///
    /// By adjunction `d(p,q) ⊆ d_V(d(z,p), d(z,q))` says exactly
    /// `d(z,p)·d(p,q) ⊆ d(z,q)` and `d(p,q)·d(q,z) ⊆ d(p,z)`, which are
    /// instances of d2 once d3 holds. So d2 and d3 are checked first, after
    /// which each term contains `d(p,q)` and the `z = x` term usually
    /// settles equality on its own.
    pub fn check_metricsup(&self, alphabet: &Alphabet) -> Result<()> {
        self.check_d3(alphabet)?;
        self.check_d2(alphabet)?;
        let n = self.len();
        for p in 0..n {
            for q in 0..n {
                let d = &self.dist[p][q];
                let term = |z: usize| d_v(alphabet, &self.dist[z][p], &self.dist[z][q]);
                if term(self.x) == *d {
                    continue;
                }
                let sup = (0..n).fold(UpSet::all(), |acc, z| acc.intersect(alphabet, &term(z)));
                if sup != *d {
                    return Err(self.violation("metricsup", p, q));
                }
            }
        }
        Ok(())
    }

    /// Every generator `αβ` of `d(p,q)` passes through a point `z` with
    /// `α ∈ d(p,z)` and `β ∈ d(z,q)`.
    pub fn check_convex_splits(&self, alphabet: &Alphabet) -> Result<()> {
        let n = self.len();
        for p in 0..n {
            for q in 0..n {
                for g in self.dist[p][q].gens() {
                    for k in 1..g.len() {
                        let (alpha, beta) = (g.prefix(k), g.suffix_from(k));
                        let ok = (0..n).any(|z| {
                            self.dist[p][z].member(alphabet, &alpha)
                                && self.dist[z][q].member(alphabet, &beta)
                        });
                        if !ok {
                            return Err(Error::Invariant(format!(
                                "no point splits {} between points {p} and {q}",
                                alphabet.display_word(g)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Two balls `B(p1,r1)`, `B(p2,r2)` with `d(p1,p2) ⊇ r1·r̄2` meet, for radii
    /// drawn from the distance values of the space.
    pub fn check_two_ball_helly(&self, alphabet: &Alphabet, max_radii: usize) -> Result<()> {
        let n = self.len();
        let radii: Vec<&UpSet> = self
            .dist
            .iter()
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .take(max_radii)
            .collect();
        for r1 in &radii {
            for r2 in &radii {
                let reach = r1.concat(alphabet, &r2.involute(alphabet));
                for p1 in 0..n {
                    for p2 in 0..n {
                        if !self.dist[p1][p2].contains(alphabet, &reach) {
                            continue;
                        }
                        let meet = (0..n).any(|z| {
                            self.dist[p1][z].contains(alphabet, r1)
                                && self.dist[p2][z].contains(alphabet, r2)
                        });
                        if !meet {
                            return Err(Error::Invariant(format!(
                                "balls around points {p1} and {p2} with radii {} and {} do not meet",
                                r1.display(alphabet),
                                r2.display(alphabet)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Axioms d1 to d3 and `d(x,y) = F`; the cheap checks run on every build.
    pub fn check_axioms(&self, alphabet: &Alphabet, f: &UpSet) -> Result<()> {
        self.check_d1()?;
        self.check_d2(alphabet)?;
        self.check_d3(alphabet)?;
        if self.segment() != f {
            return Err(Error::Invariant("d(x,y) differs from the segment".into()));
        }
        Ok(())
    }

    /// All structural checks, including the cubic ones.
    pub fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        self.check_axioms(alphabet, self.segment())?;
        self.check_metricsup(alphabet)?;
        self.check_convex_splits(alphabet)?;
        Ok(())
    }

    fn violation(&self, what: &str, p: usize, q: usize) -> Error {
        Error::Invariant(format!("{what} fails between points {p} and {q}"))
    }
}

/// Refusal threshold used by [`build_envelope`]: large enough that only
/// pathological inputs reach it.
pub const DEFAULT_MAX_POINTS: usize = 4096;

/// The envelope `S_F`: right quotients of `F`, closed under intersection,
/// together with `A*`.
///
/// # Panics
///
/// If the envelope exceeds [`DEFAULT_MAX_POINTS`]; use
/// [`build_envelope_capped`] to get an error instead.
pub fn build_envelope(alphabet: &Alphabet, f: &UpSet) -> EnvelopeSpace {
    build_envelope_capped(alphabet, f, DEFAULT_MAX_POINTS).expect("envelope within the point cap")
}

/// [`build_envelope`], refusing with a limit error once more than
/// `max_points` points appear.
pub fn build_envelope_capped(
    alphabet: &Alphabet,
    f: &UpSet,
    max_points: usize,
) -> Result<EnvelopeSpace> {
    let too_many = |n: usize| {
        Error::Limit(format!(
            "envelope has more than {max_points} points (reached {n})"
        ))
    };
    let mut quotients: BTreeSet<UpSet> = BTreeSet::from([f.clone(), UpSet::all()]);
    let mut todo = vec![f.clone()];
    while let Some(p) = todo.pop() {
        for a in alphabet.letters() {
            let q = p.quotient(alphabet, &[a], Side::Right);
            if quotients.insert(q.clone()) {
                if quotients.len() > max_points {
                    return Err(too_many(quotients.len()));
                }
                todo.push(q);
            }
        }
    }

    // Any intersection of quotients is reached by intersecting with one
    // quotient at a time.
    let base: Vec<UpSet> = quotients.into_iter().collect();
    let mut points = base.clone();
    let mut seen: HashSet<UpSet> = points.iter().cloned().collect();
    let mut i = 0;
    while i < points.len() {
        for q in &base {
            let m = points[i].intersect(alphabet, q);
            if seen.insert(m.clone()) {
                points.push(m);
                if points.len() > max_points {
                    return Err(too_many(points.len()));
                }
            }
        }
        i += 1;
    }
    points.sort();

    let n = points.len();
    let mut dist = vec![vec![UpSet::all(); n]; n];
    for p in 0..n {
        for q in p + 1..n {
            let d = d_v(alphabet, &points[p], &points[q]);
            dist[q][p] = d.involute(alphabet);
            dist[p][q] = d;
        }
    }
    let x = points
        .iter()
        .position(|p| p.is_all())
        .expect("A* is a point");
    let y = points.iter().position(|p| p == f).expect("F is a point");
    Ok(EnvelopeSpace { points, x, y, dist })
}

/// A letter-labelled transition relation on states `0..states`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransitionSystem {
    pub states: usize,
    pub trans: BTreeSet<(usize, Letter, usize)>,
}

impl TransitionSystem {
    /// Loops on every letter, mirrored transitions, closed upward in letters.
    pub fn check_invariants(&self, alphabet: &Alphabet) -> Result<()> {
        for p in 0..self.states {
            for a in alphabet.letters() {
                if !self.trans.contains(&(p, a, p)) {
                    return Err(Error::Invariant(format!("state {p} lacks a loop")));
                }
            }
        }
        for &(p, a, q) in &self.trans {
            if p >= self.states || q >= self.states {
                return Err(Error::Invariant("transition to an unknown state".into()));
            }
            if !self.trans.contains(&(q, alphabet.bar(a), p)) {
                return Err(Error::Invariant(format!(
                    "transition {p}→{q} has no mirror"
                )));
            }
            for b in alphabet.letters() {
                if alphabet.leq(a, b) && !self.trans.contains(&(p, b, q)) {
                    return Err(Error::Invariant(format!(
                        "transition {p}→{q} not closed upward in letters"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The letters labelling `p → q`, as a final segment of length-1 words.
    pub fn letters_between(&self, p: usize, q: usize) -> Vec<Letter> {
        self.trans
            .range((p, Letter(0), q)..=(p, Letter(u8::MAX), q))
            .filter(|t| t.2 == q)
            .map(|t| t.1)
            .collect()
    }

    /// The subsystem on `keep`, renumbered in the given order, with loops
    /// reinstated.
    pub fn restrict(&self, alphabet: &Alphabet, keep: &[usize]) -> TransitionSystem {
        let index = |s: usize| keep.iter().position(|&k| k == s);
        let mut trans: BTreeSet<(usize, Letter, usize)> = self
            .trans
            .iter()
            .filter_map(|&(p, a, q)| Some((index(p)?, a, index(q)?)))
            .collect();
        for i in 0..keep.len() {
            for a in alphabet.letters() {
                trans.insert((i, a, i));
            }
        }
        TransitionSystem {
            states: keep.len(),
            trans,
        }
    }
}

/// `T = {(p, a, q) : a ∈ d(p, q)}`.
pub fn to_transition_system(alphabet: &Alphabet, s: &EnvelopeSpace) -> TransitionSystem {
    let mut trans = BTreeSet::new();
    for p in 0..s.len() {
        for q in 0..s.len() {
            for a in alphabet.letters() {
                if s.dist[p][q].member(alphabet, &[a]) {
                    trans.insert((p, a, q));
                }
            }
        }
    }
    TransitionSystem {
        states: s.len(),
        trans,
    }
}

/// Path languages from `x` to every state.
///
/// Least solution of `L(q) = [q = x]·A* ∪ ⋃_r L(r)·↑{a : r →a q}` over final
/// segments. Kleene iteration terminates because ascending chains of final
/// segments are finite.
pub fn languages_from(alphabet: &Alphabet, m: &TransitionSystem, x: usize) -> Vec<UpSet> {
    let n = m.states;
    let incoming: Vec<Vec<(usize, UpSet)>> = (0..n)
        .map(|q| {
            (0..n)
                .filter(|&r| r != q)
                .filter_map(|r| {
                    let letters = m.letters_between(r, q);
                    (!letters.is_empty()).then(|| {
                        (
                            r,
                            UpSet::minimize(
                                alphabet,
                                letters.into_iter().map(|a| Word::from(vec![a])),
                            ),
                        )
                    })
                })
                .collect()
        })
        .collect();
    let mut lang = vec![UpSet::empty(); n];
    lang[x] = UpSet::all();
    loop {
        let mut changed = false;
        for q in 0..n {
            let mut next = lang[q].clone();
            for (r, base) in &incoming[q] {
                if lang[*r].is_empty() || next.contains(alphabet, &lang[*r].concat(alphabet, base))
                {
                    continue;
                }
                next = next.union_meet(alphabet, &lang[*r].concat(alphabet, base));
            }
            if next != lang[q] {
                lang[q] = next;
                changed = true;
            }
        }
        if !changed {
            return lang;
        }
    }
}

/// Labels of all paths `x → y`.
pub fn automaton_language(alphabet: &Alphabet, m: &TransitionSystem, x: usize, y: usize) -> UpSet {
    languages_from(alphabet, m, x).swap_remove(y)
}

/// The path-language distance equals the envelope distance on every pair.
pub fn check_path_distances(
    alphabet: &Alphabet,
    s: &EnvelopeSpace,
    m: &TransitionSystem,
) -> Result<()> {
    for p in 0..s.len() {
        let langs = languages_from(alphabet, m, p);
        for (q, lang) in langs.iter().enumerate() {
            if *lang != s.dist[p][q] {
                return Err(Error::Invariant(format!(
                    "path language {} → {} is {}, distance is {}",
                    p,
                    q,
                    lang.display(alphabet),
                    s.dist[p][q].display(alphabet)
                )));
            }
        }
    }
    Ok(())
}

/// Identifies `y` of `s1` with `x` of `s2`; cross distances run through the
/// shared point.
pub fn glue(alphabet: &Alphabet, s1: &EnvelopeSpace, s2: &EnvelopeSpace) -> EnvelopeSpace {
    let n1 = s1.len();
    let mut map2 = vec![0; s2.len()];
    let mut next = n1;
    for (v, slot) in map2.iter_mut().enumerate() {
        if v == s2.x {
            *slot = s1.y;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let n = next;
    let mut dist = vec![vec![UpSet::all(); n]; n];
    for u in 0..n1 {
        for v in 0..n1 {
            dist[u][v] = s1.dist[u][v].clone();
        }
    }
    for u in 0..s2.len() {
        for v in 0..s2.len() {
            dist[map2[u]][map2[v]] = s2.dist[u][v].clone();
        }
    }
    for u in 0..n1 {
        for v in (0..s2.len()).filter(|&v| v != s2.x) {
            let d = s1.dist[u][s1.y].concat(alphabet, &s2.dist[s2.x][v]);
            dist[map2[v]][u] = d.involute(alphabet);
            dist[u][map2[v]] = d;
        }
    }
    let x = s1.x;
    let points = dist[x].clone();
    EnvelopeSpace {
        points,
        x,
        y: map2[s2.y],
        dist,
    }
}

/// Whether a bijection fixing `x` and `y` preserves every distance exactly.
pub fn spaces_isomorphic(s1: &EnvelopeSpace, s2: &EnvelopeSpace) -> bool {
    isomorphism(s1, s2).is_some()
}

/// The point map of an isometry `s1 → s2` fixing `x` and `y`, if one exists.
pub fn isomorphism(s1: &EnvelopeSpace, s2: &EnvelopeSpace) -> Option<Vec<usize>> {
    let n = s1.len();
    if n != s2.len() || (s1.x == s1.y) != (s2.x == s2.y) {
        return None;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut order: Vec<usize> = vec![s1.x];
    if s1.y != s1.x {
        order.push(s1.y);
    }
    order.extend((0..n).filter(|&i| i != s1.x && i != s1.y));

    fn go(
        s1: &EnvelopeSpace,
        s2: &EnvelopeSpace,
        order: &[usize],
        k: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&i) = order.get(k) else {
            return true;
        };
        let choices: Vec<usize> = if i == s1.x {
            vec![s2.x]
        } else if i == s1.y {
            vec![s2.y]
        } else {
            (0..s2.len()).filter(|&j| j != s2.x && j != s2.y).collect()
        };
        for j in choices {
            if used[j] {
                continue;
            }
            let fits = order[..k].iter().all(|&i2| {
                s1.dist[i][i2] == s2.dist[j][image[i2]] && s1.dist[i2][i] == s2.dist[image[i2]][j]
            }) && s1.dist[i][i] == s2.dist[j][j];
            if fits {
                image[i] = j;
                used[j] = true;
                if go(s1, s2, order, k + 1, image, used) {
                    return true;
                }
                used[j] = false;
                image[i] = usize::MAX;
            }
        }
        false
    }
    go(s1, s2, &order, 0, &mut image, &mut used).then_some(image)
}

/// Pairs `(s, x2)` with `x̄2 = ⌈s⁻¹·F⌉` for every point `s`: the largest
/// `x2` with `s·x̄2 ⊆ F`.
pub fn derive_minimal_pairs(alphabet: &Alphabet, s: &EnvelopeSpace) -> Vec<(UpSet, UpSet)> {
    let f = s.segment();
    s.points
        .iter()
        .map(|p| {
            let r = f.residual(alphabet, p, Side::Left);
            (p.clone(), r.involute(alphabet))
        })
        .collect()
}

/// Each derived pair has `x1·x̄2 ⊆ F` and no other derived pair contains it
/// componentwise.
pub fn check_minimal_pairs(alphabet: &Alphabet, f: &UpSet, pairs: &[(UpSet, UpSet)]) -> Result<()> {
    for (i, (x1, x2)) in pairs.iter().enumerate() {
        if !f.contains(alphabet, &x1.concat(alphabet, &x2.involute(alphabet))) {
            return Err(Error::Invariant(format!(
                "pair ({}, {}) escapes the segment",
                x1.display(alphabet),
                x2.display(alphabet)
            )));
        }
        let dominated = pairs.iter().enumerate().any(|(j, (y1, y2))| {
            j != i && (y1, y2) != (x1, x2) && y1.contains(alphabet, x1) && y2.contains(alphabet, x2)
        });
        if dominated {
            return Err(Error::Invariant(format!(
                "pair ({}, {}) is not minimal",
                x1.display(alphabet),
                x2.display(alphabet)
            )));
        }
    }
    Ok(())
}

/// Whether every map fixing `x` and `y` with `d(fp, fq) ⊇ d(p, q)` is the
/// identity. Refuses spaces larger than `max_points`.
pub fn nonexpansive_maps_are_trivial(
    alphabet: &Alphabet,
    s: &EnvelopeSpace,
    max_points: usize,
) -> Result<bool> {
    let n = s.len();
    if n > max_points {
        return Err(Error::Limit(format!(
            "{n} points exceed the self-map search limit {max_points}"
        )));
    }
    let mut image = vec![usize::MAX; n];
    image[s.x] = s.x;
    image[s.y] = s.y;
    let free: Vec<usize> = (0..n).filter(|&i| i != s.x && i != s.y).collect();

    fn go(
        alphabet: &Alphabet,
        s: &EnvelopeSpace,
        free: &[usize],
        k: usize,
        image: &mut [usize],
    ) -> bool {
        let Some(&p) = free.get(k) else {
            return image.iter().enumerate().any(|(i, &j)| i != j);
        };
        for j in 0..s.len() {
            image[p] = j;
            let ok = (0..s.len()).filter(|&q| image[q] != usize::MAX).all(|q| {
                s.dist[j][image[q]].contains(alphabet, &s.dist[p][q])
                    && s.dist[image[q]][j].contains(alphabet, &s.dist[q][p])
            });
            if ok && go(alphabet, s, free, k + 1, image) {
                return true;
            }
        }
        image[p] = usize::MAX;
        false
    }
    Ok(!go(alphabet, s, &free, 0, &mut image))
}

/// The transition graph in DOT, loops omitted, one edge per ordered pair
/// labelled by its letters.
pub fn transition_dot(alphabet: &Alphabet, s: &EnvelopeSpace, m: &TransitionSystem) -> String {
    let mut out = String::from("digraph envelope {\n  rankdir=LR;\n");
    for (i, p) in s.points.iter().enumerate() {
        let shape = if i == s.x || i == s.y {
            "doublecircle"
        } else {
            "circle"
        };
        out.push_str(&format!(
            "  {i} [label=\"{}\", shape={shape}];\n",
            dot_escape(&p.display(alphabet).to_string())
        ));
    }
    for p in 0..m.states {
        for q in 0..m.states {
            if p == q {
                continue;
            }
            let letters = m.letters_between(p, q);
            if letters.is_empty() {
                continue;
            }
            let label: Vec<&str> = letters.iter().map(|&a| alphabet.name(a)).collect();
            out.push_str(&format!(
                "  {p} -> {q} [label=\"{}\"];\n",
                dot_escape(&label.join(","))
            ));
        }
    }
    out.push_str("}\n");
    out
}

pub(crate) fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
