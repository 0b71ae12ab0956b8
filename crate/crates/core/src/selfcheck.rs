//! Seeded property suites over random instances, with a JSON report.
//!
//! Every case draws from its own seed, derived from the run seed, the suite
//! name and the case index, so reports do not depend on scheduling.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::alphabet::Alphabet;
use crate::blocks::{cut_vertices, graph_of};
use crate::envelope::{
    build_envelope_capped, check_minimal_pairs, check_path_distances, derive_minimal_pairs, glue,
    nonexpansive_maps_are_trivial, spaces_isomorphic, to_transition_system, EnvelopeSpace,
};
use crate::error::Error;
use crate::factor::{
    all_factorizations, equidivisibility_witness, is_irreducible, two_factor_splits,
    verify_summable, Convexity,
};
use crate::gen::{
    derive_seed, discrete_alphabet, random_alphabet, random_antichain, random_gluable_pair,
    random_product, rng_from, Limits,
};
use crate::json::{alphabet_to_json, object, upset_to_json};
use crate::macneille::{closure, is_closed, lower_cone, upper_cone, DownSetMax};
use crate::oracle;
use crate::strategy::{builtin_factorizers, Factorizer, Registry};
use crate::upset::{Side, UpSet};
use crate::word::Word;

/// Shared configuration for a run.
pub struct Context {
    pub factorizers: Registry<dyn Factorizer>,
    pub limits: Limits,
    /// Envelope size above which an instance is redrawn.
    pub max_points: usize,
}

impl Default for Context {
    fn default() -> Self {
        Context {
            factorizers: builtin_factorizers(),
            limits: Limits::default(),
            max_points: 64,
        }
    }
}

/// A failed case, with enough data to replay it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub message: String,
    pub alphabet: Value,
    pub input: Value,
}

impl Failure {
    fn new(al: &Alphabet, input: Value, message: impl Into<String>) -> Failure {
        Failure {
            message: message.into(),
            alphabet: alphabet_to_json(al),
            input,
        }
    }
}

/// The outcome of one case. Findings are reported without failing.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CaseResult {
    pub failure: Option<Failure>,
    pub findings: Vec<Value>,
}

impl CaseResult {
    pub fn pass() -> CaseResult {
        CaseResult::default()
    }

    fn from_check(
        al: &Alphabet,
        input: Value,
        check: std::result::Result<(), String>,
    ) -> CaseResult {
        match check {
            Ok(()) => CaseResult::pass(),
            Err(message) => CaseResult {
                failure: Some(Failure::new(al, input, message)),
                findings: vec![],
            },
        }
    }
}

/// A property suite.
pub trait Suite: Send + Sync {
    fn describe(&self) -> &str;

    fn run_case(&self, ctx: &Context, seed: u64) -> CaseResult;

    /// Cases actually run when `requested` are asked for.
    fn case_count(&self, requested: usize) -> usize {
        requested
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseFailure {
    pub case: usize,
    #[serde(flatten)]
    pub failure: Failure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<CaseFailure>,
    pub findings: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub cases: usize,
    pub ok: bool,
    pub suites: Vec<SuiteReport>,
}

/// Failures kept per suite in the report; the count is always complete.
pub const MAX_REPORTED_FAILURES: usize = 5;

pub fn run(ctx: &Context, suites: &Registry<dyn Suite>, seed: u64, cases: usize) -> Report {
    let reports: Vec<SuiteReport> = suites
        .iter()
        .map(|(name, suite)| run_suite(ctx, name, suite, seed, cases))
        .collect();
    Report {
        seed,
        cases,
        ok: reports.iter().all(|r| r.failed == 0),
        suites: reports,
    }
}

pub fn run_suite(
    ctx: &Context,
    name: &str,
    suite: &dyn Suite,
    seed: u64,
    cases: usize,
) -> SuiteReport {
    let count = suite.case_count(cases);
    let results: Vec<CaseResult> = (0..count)
        .into_par_iter()
        .map(|i| {
            let case_seed = derive_seed(seed, name, i as u64);
            catch_unwind(AssertUnwindSafe(|| suite.run_case(ctx, case_seed))).unwrap_or_else(
                |panic| {
                    let message = panic
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "panic".into());
                    CaseResult {
                        failure: Some(Failure {
                            message: format!("panicked: {message}"),
                            alphabet: Value::Null,
                            input: json!({ "case_seed": case_seed }),
                        }),
                        findings: vec![],
                    }
                },
            )
        })
        .collect();
    let mut report = SuiteReport {
        name: name.to_string(),
        cases: count,
        passed: 0,
        failed: 0,
        failures: vec![],
        findings: vec![],
    };
    for (case, r) in results.into_iter().enumerate() {
        report.findings.extend(r.findings);
        match r.failure {
            None => report.passed += 1,
            Some(failure) => {
                report.failed += 1;
                if report.failures.len() < MAX_REPORTED_FAILURES {
                    report.failures.push(CaseFailure { case, failure });
                }
            }
        }
    }
    report
}

/// Every built-in suite, in report order.
pub fn builtin_suites() -> Registry<dyn Suite> {
    let mut r: Registry<dyn Suite> = Registry::default();
    r.register("factorization", Box::new(FactorizationSuite));
    r.register("blocks", Box::new(BlockAgreementSuite));
    r.register("oracle", Box::new(OracleSuite));
    r.register("monoid", Box::new(MonoidSuite));
    r.register("macneille", Box::new(MacNeilleSuite));
    r.register("metric", Box::new(MetricSuite));
    r.register("gluing", Box::new(GluingSuite));
    r.register("prefix-suffix", Box::new(PrefixSuffixAudit::default()));
    r
}

/// Draws a product of irreducibles or an arbitrary antichain, with equal
/// odds. With `need_envelope`, antichains whose envelope exceeds the context
/// cap are redrawn and the envelope is returned.
pub fn draw_instance(
    ctx: &Context,
    rng: &mut ChaCha8Rng,
    need_envelope: bool,
) -> (Alphabet, UpSet, Option<EnvelopeSpace>) {
    let al = random_alphabet(rng, ctx.limits.max_letters);
    let product = rng.gen_bool(0.5);
    loop {
        let f = if product {
            random_product(rng, &al, &ctx.limits).0
        } else {
            random_antichain(rng, &al, ctx.limits.max_gens, ctx.limits.max_len)
        };
        if !need_envelope {
            return (al, f, None);
        }
        if let Ok(s) = build_envelope_capped(&al, &f, ctx.max_points) {
            return (al, f, Some(s));
        }
    }
}

fn show(al: &Alphabet, f: &UpSet) -> String {
    f.display(al).to_string()
}

fn ensure(cond: bool, message: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn lift<T>(r: crate::error::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e: Error| e.to_string())
}

/// Factor products, irreducibility of factors, and independence from the
/// order of splits.
pub struct FactorizationSuite;

impl Suite for FactorizationSuite {
    fn describe(&self) -> &str {
        "factorize reproduces F with irreducible factors, in every recursion order"
    }

    fn run_case(&self, ctx: &Context, seed: u64) -> CaseResult {
        let mut rng = rng_from(seed);
        let (al, f, _) = draw_instance(ctx, &mut rng, false);
        let check = || -> std::result::Result<(), String> {
            let fac = lift(lift(ctx.factorizers.require("antichain"))?.factorize(&al, &f))?;
            ensure(fac.product(&al) == f, || {
                "factors do not multiply back".into()
            })?;
            for x in &fac.factors {
                ensure(is_irreducible(&al, x) && !x.is_all(), || {
                    format!("factor {} is reducible", show(&al, x))
                })?;
            }
            let gamma: usize = fac
                .factors
                .iter()
                .map(|x| x.graduation().unwrap_or(0))
                .sum();
            ensure(Ok(gamma) == f.graduation(), || {
                "graduation is not additive".into()
            })?;
            let orders = lift(all_factorizations(&al, &f))?;
            ensure(orders.len() == 1 && orders.contains(&fac.factors), || {
                format!("{} distinct factor sequences", orders.len())
            })
        };
        CaseResult::from_check(&al, json!({ "F": upset_to_json(&al, &f) }), check())
    }
}

/// The block method agrees with the split search, and cut vertices detect
/// reducibility.
pub struct BlockAgreementSuite;

impl Suite for BlockAgreementSuite {
    fn describe(&self) -> &str {
        "blocks of the envelope graph give the same factors as split search"
    }

    fn run_case(&self, ctx: &Context, seed: u64) -> CaseResult {
        let mut rng = rng_from(seed);
        let (al, f, s) = draw_instance(ctx, &mut rng, true);
        let s = s.expect("envelope requested");
        let check = || -> std::result::Result<(), String> {
            let by_search = lift(lift(ctx.factorizers.require("antichain"))?.factorize(&al, &f))?;
            let by_blocks = lift(lift(ctx.factorizers.require("blocks"))?.factorize(&al, &f))?;
            ensure(by_search == by_blocks, || {
                format!(
                    "split search gives {} factors, blocks give {}",
                    by_search.len(),
                    by_blocks.len()
                )
            })?;
            let cuts = cut_vertices(&graph_of(&to_transition_system(&al, &s)));
            ensure(cuts.is_empty() == is_irreducible(&al, &f), || {
                format!("{} cut vertices disagree with irreducibility", cuts.len())
            })
        };
        CaseResult::from_check(&al, json!({ "F": upset_to_json(&al, &f) }), check())
    }
}

const ORACLE_LEN: usize = 6;

/// Up-set operations against explicit truncated languages.
pub struct OracleSuite;

impl Suite for OracleSuite {
    fn describe(&self) -> &str {
        "member, concat, union, intersect, quotient, residual and minimize agree with enumeration"
    }

    fn run_case(&self, _ctx: &Context, seed: u64) -> CaseResult {
        let mut rng = rng_from(seed);
        let al = random_alphabet(&mut rng, 3);
        let x = random_antichain(&mut rng, &al, 5, 4);
        let y = random_antichain(&mut rng, &al, 5, 4);
        let w = crate::gen::random_word(&mut rng, &al, 0, 2);
        let b = random_antichain(&mut rng, &al, 2, 2);
        let l = ORACLE_LEN;
        let check = || -> std::result::Result<(), String> {
            let tx = lift(oracle::truncate(&al, &x, l))?;
            let ty = lift(oracle::truncate(&al, &y, l))?;
            let trunc =
                |f: &UpSet, len: usize| lift(oracle::truncate(&al, f, len)).map(|t| t.words);
            for v in oracle::all_words(&al, l) {
                ensure(x.member(&al, &v) == tx.contains(&v), || "member".into())?;
            }
            ensure(
                trunc(&x.concat(&al, &y), l)? == oracle::concat_bounded(&tx, &ty, l).words,
                || "concat".into(),
            )?;
            let union: std::collections::BTreeSet<Word> =
                tx.words.union(&ty.words).cloned().collect();
            ensure(trunc(&x.union_meet(&al, &y), l)? == union, || {
                "union".into()
            })?;
            let inter: std::collections::BTreeSet<Word> =
                tx.words.intersection(&ty.words).cloned().collect();
            ensure(trunc(&x.intersect(&al, &y), l)? == inter, || {
                "intersect".into()
            })?;
            for side in [Side::Left, Side::Right] {
                let q = x.quotient(&al, &w, side);
                ensure(
                    trunc(&q, l - w.len())? == lift(oracle::oracle_residual(&al, &tx, &w, side))?,
                    || format!("{side:?} quotient by {}", al.display_word(&w)),
                )?;
                let r = x.residual(&al, &b, side);
                ensure(
                    trunc(&r, l - b.max_len())?
                        == lift(oracle::oracle_residual_set(&al, &tx, b.gens(), side))?,
                    || format!("{side:?} residual by {}", show(&al, &b)),
                )?;
            }
            let mut raw: Vec<Word> = x.gens().to_vec();
            raw.extend(y.gens().iter().cloned());
            let expected = oracle::min_elements(&al, &raw.iter().cloned().collect());
            ensure(
                UpSet::minimize(&al, raw)
                    .gens()
                    .iter()
                    .cloned()
                    .collect::<std::collections::BTreeSet<_>>()
                    == expected,
                || "minimize".into(),
            )
        };
        let input = json!({
            "X": upset_to_json(&al, &x),
            "Y": upset_to_json(&al, &y),
            "w": al.word_to_json(&w),
            "B": upset_to_json(&al, &b),
        });
        CaseResult::from_check(&al, input, check())
    }
}

/// Min-homomorphism, cardinality, cancellation and equidivisibility.
pub struct MonoidSuite;

impl Suite for MonoidSuite {
    fn describe(&self) -> &str {
        "Min(XY) = Min(X)Min(Y), |UV| = |U||V|, cancellation, equidivisibility"
    }

    fn run_case(&self, ctx: &Context, seed: u64) -> CaseResult {
        let mut rng = rng_from(seed);
        let al = random_alphabet(&mut rng, ctx.limits.max_letters);
        let (x, y) = random_gluable_pair(&mut rng, &al, &ctx.limits);
        let check = || -> std::result::Result<(), String> {
            let xy = x.concat(&al, &y);
            let cap = x.max_len() + y.max_len();
            let tx = lift(oracle::truncate(&al, &x, cap))?;
            let ty = lift(oracle::truncate(&al, &y, cap))?;
            let txy = oracle::concat_by_splits(&al, &tx, &ty, cap);
            ensure(lift(oracle::truncate(&al, &xy, cap))? == txy, || {
                "XY differs from the split enumeration".into()
            })?;
            let min = oracle::min_elements_upclosed(&al, &txy);
            ensure(
                xy.gens()
                    .iter()
                    .cloned()
                    .collect::<std::collections::BTreeSet<_>>()
                    == min,
                || "Min(XY) differs from the minimal pairwise products".into(),
            )?;
            ensure(xy.gens().len() == x.gens().len() * y.gens().len(), || {
                "cardinality law fails".into()
            })?;
            ensure(xy.residual(&al, &x, Side::Left) == y, || {
                "left cancellation".into()
            })?;
            ensure(xy.residual(&al, &y, Side::Right) == x, || {
                "right cancellation".into()
            })?;
            let fac = lift(crate::factor::factorize(&al, &xy))?;
            let k = rng_from(seed ^ 1).gen_range(0..=fac.len());
            let g1 = fac.factors[..k]
                .iter()
                .fold(UpSet::all(), |a, f| a.concat(&al, f));
            let g2 = fac.factors[k..]
                .iter()
                .fold(UpSet::all(), |a, f| a.concat(&al, f));
            let (_, w) = lift(equidivisibility_witness(&al, &x, &y, &g1, &g2))?;
            ensure(
                (g1 == x.concat(&al, &w) && y == w.concat(&al, &g2))
                    || (x == g1.concat(&al, &w) && g2 == w.concat(&al, &y)),
                || "witness does not verify".into(),
            )
        };
        let input = json!({ "X": upset_to_json(&al, &x), "Y": upset_to_json(&al, &y) });
        CaseResult::from_check(&al, input, check())
    }
}

/// Cones are multiplicative; closure laws; factors of closed sets are closed.
pub struct MacNeilleSuite;

impl Suite for MacNeilleSuite {
    fn describe(&self) -> &str {
        "(XY)^∇ = X^∇Y^∇, (XY)^Δ = X^ΔY^Δ, closure laws, closed factors"
    }

    fn run_case(&self, ctx: &Context, seed: u64) -> CaseResult {
        let mut rng = rng_from(seed);
        let al = random_alphabet(&mut rng, ctx.limits.max_letters);
        let (x, y) = random_gluable_pair(&mut rng, &al, &ctx.limits);
        let check = || -> std::result::Result<(), String> {
            let xy = x.concat(&al, &y);
            let lx = lift(lower_cone(&al, &x))?;
            let ly = lift(lower_cone(&al, &y))?;
            let lxy = lift(lower_cone(&al, &xy))?;
            ensure(lxy == lx.concat(&al, &ly), || {
                "lower cone not multiplicative".into()
            })?;
            let brute = oracle::lower_cone_brute(&al, xy.gens(), ORACLE_LEN);
            let ours: std::collections::BTreeSet<Word> = oracle::all_words(&al, ORACLE_LEN)
                .into_iter()
                .filter(|w| lxy.member(&al, w))
                .collect();
            ensure(ours == brute, || {
                "lower cone differs from enumeration".into()
            })?;
            ensure(
                upper_cone(&al, xy.gens())
                    == upper_cone(&al, x.gens()).concat(&al, &upper_cone(&al, y.gens())),
                || "upper cone not multiplicative".into(),
            )?;
            let cx = closure(&al, &x);
            ensure(cx.contains(&al, &x), || "closure not extensive".into())?;
            ensure(closure(&al, &cx) == cx, || "closure not idempotent".into())?;
            let meet = x.intersect(&al, &y);
            ensure(cx.contains(&al, &closure(&al, &meet)), || {
                "closure not monotone".into()
            })?;
            let z = closure(&al, &xy);
            if !z.is_all() && !z.is_empty() && ctx.limits.admits(&z) {
                for (a, b) in lift(two_factor_splits(&al, &z))? {
                    ensure(is_closed(&al, &a) && is_closed(&al, &b), || {
                        format!(
                            "split ({}, {}) of a closed set",
                            show(&al, &a),
                            show(&al, &b)
                        )
                    })?;
                }
                for f in lift(crate::factor::factorize(&al, &z))?.factors {
                    ensure(is_closed(&al, &f), || {
                        format!("factor {} not closed", show(&al, &f))
                    })?;
                }
            }
            let _: DownSetMax = lx;
            Ok(())
        };
        let input = json!({ "X": upset_to_json(&al, &x), "Y": upset_to_json(&al, &y) });
        CaseResult::from_check(&al, input, check())
    }
}

/// Distance axioms, isometric embedding, path semantics, convexity and
/// minimality of the envelope.
pub struct MetricSuite;

impl Suite for MetricSuite {
    fn describe(&self) -> &str {
        "d1-d3, metricsup, convex splits, path languages, two-ball Helly, minimal pairs"
    }

    fn run_case(&self, ctx: &Context, seed: u64) -> CaseResult {
        let mut rng = rng_from(seed);
        let (al, f, s) = draw_instance(ctx, &mut rng, true);
        let s = s.expect("envelope requested");
        let check = || -> std::result::Result<(), String> {
            lift(s.check_axioms(&al, &f))?;
            lift(s.check_metricsup(&al))?;
            lift(s.check_convex_splits(&al))?;
            lift(s.check_two_ball_helly(&al, 12))?;
            let m = to_transition_system(&al, &s);
            lift(m.check_invariants(&al))?;
            lift(check_path_distances(&al, &s, &m))?;
            let pairs = derive_minimal_pairs(&al, &s);
            lift(check_minimal_pairs(&al, &f, &pairs))?;
            if s.len() <= 6 {
                ensure(lift(nonexpansive_maps_are_trivial(&al, &s, 6))?, || {
                    "a nonexpansive self-map fixing x and y moves a point".into()
                })?;
            }
            if let Some(split) = lift(two_factor_splits(&al, &f).or_else(|_| Ok(vec![])))?.first() {
                let (v1, v2) = split;
                let candidates: Vec<(UpSet, UpSet)> = pairs
                    .iter()
                    .map(|(p, x2)| (p.clone(), x2.involute(&al)))
                    .collect();
                let outcomes = lift(verify_summable(&al, v1, v2, &candidates))?;
                if let Some(i) = outcomes.iter().position(|o| *o == Convexity::Fails) {
                    return Err(format!(
                        "pair ({}, {}) satisfies neither convexity condition",
                        show(&al, &candidates[i].0),
                        show(&al, &candidates[i].1)
                    ));
                }
            }
            Ok(())
        };
        CaseResult::from_check(&al, json!({ "F": upset_to_json(&al, &f) }), check())
    }
}

/// Envelopes of products are gluings of envelopes.
pub struct GluingSuite;

impl Suite for GluingSuite {
    fn describe(&self) -> &str {
        "S(F1F2) is isometric to S(F1) glued to S(F2)"
    }

    fn run_case(&self, ctx: &Context, seed: u64) -> CaseResult {
        let mut rng = rng_from(seed);
        let al = random_alphabet(&mut rng, ctx.limits.max_letters);
        let (f1, f2) = random_gluable_pair(&mut rng, &al, &ctx.limits);
        let check = || -> std::result::Result<(), String> {
            let product = f1.concat(&al, &f2);
            let whole = lift(build_envelope_capped(&al, &product, 4 * ctx.max_points))?;
            let s1 = lift(build_envelope_capped(&al, &f1, 4 * ctx.max_points))?;
            let s2 = lift(build_envelope_capped(&al, &f2, 4 * ctx.max_points))?;
            let glued = glue(&al, &s1, &s2);
            lift(glued.check_axioms(&al, &product))?;
            ensure(spaces_isomorphic(&whole, &glued), || {
                format!("{} vs {} points, not isometric", whole.len(), glued.len())
            })
        };
        let input = json!({ "F1": upset_to_json(&al, &f1), "F2": upset_to_json(&al, &f2) });
        CaseResult::from_check(&al, input, check())
    }
}

/// Two-generator antichains over trivially ordered letters: irreducible iff
/// no common first letter and no common last letter. Exhaustive; mismatches
/// are findings.
pub struct PrefixSuffixAudit {
    pub max_len: usize,
    pub letter_counts: Vec<usize>,
}

impl Default for PrefixSuffixAudit {
    fn default() -> Self {
        PrefixSuffixAudit {
            max_len: 4,
            letter_counts: vec![2, 3],
        }
    }
}

/// Outcome of the exhaustive audit.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AuditSummary {
    pub checked: usize,
    pub findings: Vec<Value>,
}

impl PrefixSuffixAudit {
    pub fn audit(&self) -> AuditSummary {
        let mut summary = AuditSummary::default();
        for &k in &self.letter_counts {
            let al = discrete_alphabet(k);
            let words: Vec<Word> = oracle::all_words(&al, self.max_len)
                .into_iter()
                .filter(|w| !w.is_epsilon())
                .collect();
            for (i, u) in words.iter().enumerate() {
                for v in &words[i + 1..] {
                    let f = UpSet::minimize(&al, vec![u.clone(), v.clone()]);
                    if f.gens().len() != 2 {
                        continue;
                    }
                    summary.checked += 1;
                    let shares = u[0] == v[0] || u[u.len() - 1] == v[v.len() - 1];
                    let irreducible = is_irreducible(&al, &f);
                    if irreducible == shares {
                        summary.findings.push(object([
                            ("alphabet", alphabet_to_json(&al)),
                            ("F", upset_to_json(&al, &f)),
                            ("irreducible", Value::Bool(irreducible)),
                            ("criterion", Value::Bool(!shares)),
                        ]));
                    }
                }
            }
        }
        summary
    }
}

impl Suite for PrefixSuffixAudit {
    fn describe(&self) -> &str {
        "no common prefix and no common suffix versus irreducibility (findings only)"
    }

    fn case_count(&self, _requested: usize) -> usize {
        1
    }

    fn run_case(&self, _ctx: &Context, _seed: u64) -> CaseResult {
        CaseResult {
            failure: None,
            findings: self.audit().findings,
        }
    }
}
