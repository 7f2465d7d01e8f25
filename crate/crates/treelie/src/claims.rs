//! Registry of named, replayable verification claims.
//!
//! Every claim re-derives one displayed identity, membership
//! certificate or trace computation from the source development, using
//! only exact integer arithmetic. Claims are grouped into suites:
//!
//! * `core-relations`: the AS and IHX relation lists plus seeded
//!   antisymmetry and Jacobi properties of the bracket,
//! * `expansion`: the labelling/expansion composite and the tripod
//!   expansion display,
//! * `coinvariants`: desk-scale tensor-power coinvariant computations,
//! * `brackets-fast`: sub-second bracket identity replays,
//! * `membership`: integer lattice inclusion and equality certificates
//!   (full mode only),
//! * `trace`: Lagrangian trace kernel, image and functional values,
//! * `prop44`: the kernel-intersection decompositions (full mode only).
//!
//! Identifiers such as `L3.4` or `P2.2-odd` name the statements being
//! replayed and are stable external interface data, as are the short
//! `anchor` quotations that locate each statement in its source.

use crate::cache::{load_span, store_span};
use crate::coef::Coef;
use crate::config::{Config, Mode};
use crate::expand::{eq_rational, expand, is_zero_rational, TensorVec};
use crate::gl::GlMap;
use crate::johnson::{Recipe, RecipeCtx, Span};
use crate::report::{digest, ClaimResult, Status, SuiteReport};
use crate::symplectic::{a, b, Label};
use crate::tree::TreeSum;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

/// Outcome of running one claim.
pub struct Outcome {
    pub status: Status,
    pub detail: String,
    pub witness: String,
}

impl Outcome {
    fn verified(detail: impl Into<String>, witness: impl Into<String>) -> Outcome {
        Outcome { status: Status::Verified, detail: detail.into(), witness: witness.into() }
    }

    fn failed(detail: impl Into<String>, witness: impl Into<String>) -> Outcome {
        Outcome { status: Status::Failed, detail: detail.into(), witness: witness.into() }
    }

    fn out_of_hypothesis(detail: impl Into<String>, witness: impl Into<String>) -> Outcome {
        Outcome {
            status: Status::OutOfHypothesis,
            detail: detail.into(),
            witness: witness.into(),
        }
    }

    fn skipped(detail: impl Into<String>) -> Outcome {
        Outcome { status: Status::Skipped, detail: detail.into(), witness: String::new() }
    }
}

type Runner = Box<dyn Fn(&ClaimCtx) -> Outcome + Send + Sync>;

/// One registered claim.
pub struct Claim {
    pub id: &'static str,
    pub suite: &'static str,
    pub title: &'static str,
    /// Short quotation locating the replayed statement in its source.
    pub anchor: &'static str,
    /// Indices the claim's computation ranges over.
    pub support: &'static [u32],
    /// Lattice claims build spans and only run in full mode.
    pub lattice: bool,
    run: Runner,
}

impl Claim {
    fn new(
        id: &'static str,
        suite: &'static str,
        title: &'static str,
        anchor: &'static str,
        support: &'static [u32],
        run: impl Fn(&ClaimCtx) -> Outcome + Send + Sync + 'static,
    ) -> Claim {
        Claim { id, suite, title, anchor, support, lattice: false, run: Box::new(run) }
    }

    fn lattice(
        id: &'static str,
        suite: &'static str,
        title: &'static str,
        anchor: &'static str,
        support: &'static [u32],
        run: impl Fn(&ClaimCtx) -> Outcome + Send + Sync + 'static,
    ) -> Claim {
        Claim { id, suite, title, anchor, support, lattice: true, run: Box::new(run) }
    }
}

/// Shared lattice spans, built once per run and optionally persisted.
pub struct SpanStore {
    cache_dir: Option<PathBuf>,
    spans: Mutex<BTreeMap<String, Arc<Span>>>,
}

impl SpanStore {
    pub fn new(cache_dir: Option<PathBuf>) -> SpanStore {
        SpanStore { cache_dir, spans: Mutex::new(BTreeMap::new()) }
    }

    /// The span of a recipe over a support, memoised across claims.
    pub fn span(&self, recipe: &Recipe, support: &[u32]) -> Arc<Span> {
        let key = format!("{recipe} @ {support:?}");
        if let Some(s) = self.spans.lock().expect("span store lock").get(&key) {
            return s.clone();
        }
        let recipe_text = recipe.to_string();
        let cached = self
            .cache_dir
            .as_deref()
            .and_then(|dir| load_span(dir, &recipe_text, support));
        let span = match cached {
            Some(s) => Arc::new(s),
            None => {
                let built = RecipeCtx::new(support).span(recipe);
                if let Some(dir) = self.cache_dir.as_deref() {
                    let _ = store_span(dir, &recipe_text, support, &built);
                }
                Arc::new(built)
            }
        };
        self.spans
            .lock()
            .expect("span store lock")
            .entry(key)
            .or_insert(span)
            .clone()
    }
}

/// Execution context handed to each claim.
pub struct ClaimCtx<'a> {
    pub config: &'a Config,
    pub store: &'a SpanStore,
    pub deadline: Option<Instant>,
}

impl<'a> ClaimCtx<'a> {
    pub fn over_budget(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ salt)
    }
}

/// All registered claims in stable order.
pub fn registry() -> Vec<Claim> {
    let mut out = Vec::new();
    out.extend(core_relation_claims());
    out.extend(expansion_claims());
    out.extend(coinvariant_claims());
    out.extend(bracket_claims());
    out.extend(membership_claims());
    out.extend(trace_claims());
    out.extend(prop44_claims());
    out
}

/// Runs the claims selected by a suite name, a claim id prefix or
/// `all`, and assembles the deterministic report.
pub fn run_claims(selector: &str, config: &Config) -> Result<SuiteReport> {
    let registry = registry();
    let selected: Vec<&Claim> = registry
        .iter()
        .filter(|c| {
            selector == "all"
                || c.suite == selector
                || c.id == selector
                || c.id.starts_with(&format!("{selector}."))
        })
        .collect();
    if selected.is_empty() {
        return Err(Error::Usage(format!("unknown suite or claim id {selector:?}")));
    }
    let store = SpanStore::new(config.cache_dir.clone());
    let deadline = config.budget.map(|s| Instant::now() + Duration::from_secs(s));
    let ctx = ClaimCtx { config, store: &store, deadline };

    let mut slots: Vec<Option<ClaimResult>> = Vec::new();
    slots.resize_with(selected.len(), || None);
    let fast: Vec<usize> =
        (0..selected.len()).filter(|&i| !selected[i].lattice).collect();
    let fast_results: Vec<(usize, ClaimResult)> = fast
        .par_iter()
        .map(|&i| (i, run_one(selected[i], &ctx)))
        .collect();
    for (i, r) in fast_results {
        slots[i] = Some(r);
    }
    for (i, claim) in selected.iter().enumerate() {
        if claim.lattice {
            slots[i] = Some(run_one(claim, &ctx));
        }
    }
    let results = slots.into_iter().map(|r| r.expect("every claim ran")).collect();
    Ok(SuiteReport { suite: selector.to_string(), config: config.clone(), results })
}

fn run_one(claim: &Claim, ctx: &ClaimCtx) -> ClaimResult {
    let start = Instant::now();
    let outcome = if claim.lattice && ctx.config.mode == Mode::Fast {
        Outcome::skipped("lattice claim, requires full mode")
    } else if !claim.support.iter().all(|i| ctx.config.support.contains(i)) {
        Outcome::out_of_hypothesis(
            format!("requires support indices {:?}", claim.support),
            String::new(),
        )
    } else if ctx.over_budget() {
        Outcome::skipped("budget exhausted before this claim started")
    } else {
        (claim.run)(ctx)
    };
    ClaimResult {
        id: claim.id.to_string(),
        title: claim.title.to_string(),
        status: outcome.status,
        mode: ctx.config.mode.as_str(),
        support: claim.support.to_vec(),
        witness: digest(&outcome.witness),
        detail: outcome.detail,
        wall: start.elapsed(),
    }
}

/// Stable dump of the registry for `claims list`.
pub fn registry_json() -> String {
    use serde_json::{Map, Value};
    let claims = registry()
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("id".into(), Value::String(c.id.into()));
            m.insert("suite".into(), Value::String(c.suite.into()));
            m.insert("title".into(), Value::String(c.title.into()));
            m.insert("anchor".into(), Value::String(c.anchor.into()));
            m.insert(
                "support".into(),
                Value::Array(
                    c.support.iter().map(|i| Value::String(i.to_string())).collect(),
                ),
            );
            m.insert(
                "mode".into(),
                Value::String(if c.lattice { "full" } else { "fast" }.into()),
            );
            Value::Object(m)
        })
        .collect();
    let mut root = Map::new();
    root.insert("schema".into(), Value::String(crate::report::SCHEMA_VERSION.into()));
    root.insert("claims".into(), Value::Array(claims));
    let mut out =
        serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
    out.push('\n');
    out
}

fn letters(support: &[u32]) -> Vec<Label> {
    let mut out = Vec::new();
    for &i in support {
        out.push(a(i));
        out.push(b(i));
    }
    out
}

/// Equality witness text for two sums.
fn eq_witness(lhs: &TreeSum, rhs: &TreeSum) -> String {
    format!("lhs = {lhs}\nrhs = {rhs}")
}

fn check_symbolic(lhs: &TreeSum, rhs: &TreeSum, what: &str) -> Outcome {
    let w = eq_witness(lhs, rhs);
    if lhs == rhs {
        Outcome::verified(format!("{what}: equal as canonical sums"), w)
    } else {
        Outcome::failed(format!("{what}: canonical sums differ"), w)
    }
}

fn check_rational(lhs: &TreeSum, rhs: &TreeSum, what: &str) -> Outcome {
    let w = eq_witness(lhs, rhs);
    if lhs == rhs {
        Outcome::verified(format!("{what}: equal as canonical sums"), w)
    } else if eq_rational(lhs, rhs) {
        Outcome::verified(format!("{what}: equal after expansion"), w)
    } else {
        Outcome::failed(format!("{what}: expansions differ"), w)
    }
}

// ---------------------------------------------------------------------------
// core-relations
// ---------------------------------------------------------------------------

const SUPPORT4: &[u32] = &[1, 2, 3, 4];
const SUPPORT6: &[u32] = &[1, 2, 3, 4, 5, 6];

/// Checks `relation` on every tuple of labels over the claim support.
fn all_instances(
    ctx: &ClaimCtx,
    arity: usize,
    support: &[u32],
    relation: impl Fn(&[Label]) -> bool,
    what: &str,
) -> Outcome {
    let alphabet = letters(support);
    let mut pick = vec![0usize; arity];
    let mut count = 0u64;
    'odo: loop {
        let tuple: Vec<Label> = pick.iter().map(|&t| alphabet[t]).collect();
        if !relation(&tuple) {
            let shown: Vec<String> = tuple.iter().map(|l| l.to_string()).collect();
            return Outcome::failed(
                format!("{what} fails at ({})", shown.join(",")),
                shown.join(","),
            );
        }
        count += 1;
        if count % 4096 == 0 && ctx.over_budget() {
            return Outcome::skipped(format!("budget exhausted after {count} instances"));
        }
        let mut t = 0;
        loop {
            if t == pick.len() {
                break 'odo;
            }
            pick[t] += 1;
            if pick[t] < alphabet.len() {
                break;
            }
            pick[t] = 0;
            t += 1;
        }
    }
    Outcome::verified(
        format!("{what} holds for all {count} instantiations"),
        format!("{what}: {count} instantiations"),
    )
}

fn cat(labels: &[Label]) -> TreeSum {
    TreeSum::caterpillar(labels)
}

fn core_relation_claims() -> Vec<Claim> {
    let mut v = Vec::new();
    v.push(Claim::new(
        "R2.2-AS1",
        "core-relations",
        "a tripod with equal outer leaves vanishes",
        "\\tree{a,b,a}=0",
        SUPPORT4,
        |ctx| {
            all_instances(ctx, 2, SUPPORT4, |t| cat(&[t[0], t[1], t[0]]).is_zero(), "t(x,y,x) = 0")
        },
    ));
    v.push(Claim::new(
        "R2.2-AS2",
        "core-relations",
        "reversing a tripod negates it",
        "\\tree{a,b,c}=-\\tree{c,b,a}",
        SUPPORT4,
        |ctx| {
            all_instances(
                ctx,
                3,
                SUPPORT4,
                |t| cat(&[t[0], t[1], t[2]]) == cat(&[t[2], t[1], t[0]]).neg(),
                "t(x,y,z) = -t(z,y,x)",
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-AS3",
        "core-relations",
        "a degree-two tree with equal first two leaves vanishes",
        "\\tree{a,a,c,d}=0",
        SUPPORT4,
        |ctx| {
            all_instances(
                ctx,
                3,
                SUPPORT4,
                |t| cat(&[t[0], t[0], t[1], t[2]]).is_zero(),
                "t(x,x,z,w) = 0",
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-AS4",
        "core-relations",
        "swapping the first two leaves of a degree-two tree negates it",
        "\\tree{a,b,c,d}=-\\tree{b,a,c,d}",
        SUPPORT4,
        |ctx| {
            all_instances(
                ctx,
                4,
                SUPPORT4,
                |t| {
                    cat(&[t[0], t[1], t[2], t[3]])
                        == cat(&[t[1], t[0], t[2], t[3]]).neg()
                },
                "t(x1,x2,x3,x4) = -t(x2,x1,x3,x4)",
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-AS5",
        "core-relations",
        "reversing a degree-two tree preserves it",
        "\\tree{a,b,c,d}=\\tree{d,c,b,a}",
        SUPPORT4,
        |ctx| {
            all_instances(
                ctx,
                4,
                SUPPORT4,
                |t| cat(&[t[0], t[1], t[2], t[3]]) == cat(&[t[3], t[2], t[1], t[0]]),
                "t(x1,x2,x3,x4) = t(x4,x3,x2,x1)",
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-AS6",
        "core-relations",
        "a degree-three tree with equal first two leaves vanishes",
        "\\tree{a,a,c,d,e}=0",
        SUPPORT4,
        |ctx| {
            all_instances(
                ctx,
                4,
                SUPPORT4,
                |t| cat(&[t[0], t[0], t[1], t[2], t[3]]).is_zero(),
                "t(x,x,z,w,v) = 0",
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-AS7",
        "core-relations",
        "swapping the first two leaves of a degree-three tree negates it",
        "\\tree{a,b,c,d,e}=-\\tree{b,a,c,d,e}",
        SUPPORT4,
        |ctx| {
            all_instances(
                ctx,
                5,
                SUPPORT4,
                |t| {
                    cat(&[t[0], t[1], t[2], t[3], t[4]])
                        == cat(&[t[1], t[0], t[2], t[3], t[4]]).neg()
                },
                "t(x1,..,x5) = -t(x2,x1,x3,x4,x5)",
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-AS8",
        "core-relations",
        "reversing a degree-three tree negates it",
        "\\tree{a,b,c,d}=-\\tree{e,d,c,b,a}",
        SUPPORT4,
        |ctx| {
            all_instances(
                ctx,
                5,
                SUPPORT4,
                |t| {
                    cat(&[t[0], t[1], t[2], t[3], t[4]])
                        == cat(&[t[4], t[3], t[2], t[1], t[0]]).neg()
                },
                "t(x1,..,x5) = -t(x5,x4,x3,x2,x1)",
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-IHX1",
        "core-relations",
        "the degree-two IHX exchange",
        "\\tree{a,b,c,d}=\\tree{a,c,b,d}+\\tree{c,b,a,d}",
        SUPPORT4,
        |ctx| {
            all_instances(
                ctx,
                4,
                SUPPORT4,
                |t| {
                    let mut rhs = cat(&[t[0], t[2], t[1], t[3]]);
                    rhs.add_assign(&cat(&[t[2], t[1], t[0], t[3]]));
                    eq_rational(&cat(&[t[0], t[1], t[2], t[3]]), &rhs)
                },
                "IHX at the first internal vertex, degree 2",
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-IHX2",
        "core-relations",
        "the degree-three IHX exchange at the first internal vertex",
        "\\tree{a,b,c,d,e}=\\tree{a,c,b,d,e}+\\tree{c,b,a,d,e}",
        SUPPORT4,
        |ctx| {
            all_instances(
                ctx,
                5,
                SUPPORT4,
                |t| {
                    let mut rhs = cat(&[t[0], t[2], t[1], t[3], t[4]]);
                    rhs.add_assign(&cat(&[t[2], t[1], t[0], t[3], t[4]]));
                    eq_rational(&cat(&[t[0], t[1], t[2], t[3], t[4]]), &rhs)
                },
                "IHX at the first internal vertex, degree 3",
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-IHX3",
        "core-relations",
        "the degree-three IHX exchange at the last internal vertex",
        "\\tree{a,b,c,d,e}=\\tree{a,b,d,c,e}+\\tree{a,b,e,d,c}",
        SUPPORT4,
        |ctx| {
            all_instances(
                ctx,
                5,
                SUPPORT4,
                |t| {
                    let mut rhs = cat(&[t[0], t[1], t[3], t[2], t[4]]);
                    rhs.add_assign(&cat(&[t[0], t[1], t[4], t[3], t[2]]));
                    eq_rational(&cat(&[t[0], t[1], t[2], t[3], t[4]]), &rhs)
                },
                "IHX at the last internal vertex, degree 3",
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-antisym",
        "core-relations",
        "seeded bracket antisymmetry",
        "graded Lie algebra",
        SUPPORT6,
        |ctx| {
            let mut rng = ctx.rng(0x616e_7469);
            for round in 0..1000u32 {
                let x = random_sum(&mut rng, ctx.config.genus);
                let y = random_sum(&mut rng, ctx.config.genus);
                let mut s = x.bracket(&y);
                s.add_assign(&y.bracket(&x));
                if !s.is_zero() {
                    return Outcome::failed(
                        format!("[x,y] + [y,x] nonzero at round {round}"),
                        format!("x = {x}\ny = {y}"),
                    );
                }
                if round % 128 == 0 && ctx.over_budget() {
                    return Outcome::skipped(format!("budget exhausted after {round} rounds"));
                }
            }
            Outcome::verified(
                "[x,y] = -[y,x] on 1000 seeded random pairs",
                format!("antisym seed {}", ctx.config.seed),
            )
        },
    ));
    v.push(Claim::new(
        "R2.2-jacobi",
        "core-relations",
        "seeded Jacobi identity after expansion",
        "graded Lie algebra",
        SUPPORT6,
        |ctx| {
            let mut rng = ctx.rng(0x6a61_636f);
            for round in 0..1000u32 {
                let degrees = [[1, 1, 1], [1, 1, 2], [1, 2, 2], [1, 1, 3]]
                    [rng.gen_range(0..4usize)];
                let x = random_tree(&mut rng, ctx.config.genus, degrees[0]);
                let y = random_tree(&mut rng, ctx.config.genus, degrees[1]);
                let z = random_tree(&mut rng, ctx.config.genus, degrees[2]);
                let mut s = x.bracket(&y).bracket(&z);
                s.add_assign(&y.bracket(&z).bracket(&x));
                s.add_assign(&z.bracket(&x).bracket(&y));
                if !is_zero_rational(&s) {
                    return Outcome::failed(
                        format!("Jacobi sum nonzero at round {round}"),
                        format!("x = {x}\ny = {y}\nz = {z}"),
                    );
                }
                if round % 64 == 0 && ctx.over_budget() {
                    return Outcome::skipped(format!("budget exhausted after {round} rounds"));
                }
            }
            Outcome::verified(
                "[[x,y],z] + [[y,z],x] + [[z,x],y] expands to zero on 1000 seeded triples",
                format!("jacobi seed {}", ctx.config.seed),
            )
        },
    ));
    v
}

fn random_label(rng: &mut ChaCha8Rng, genus: u32) -> Label {
    let i = rng.gen_range(1..=genus);
    if rng.gen_bool(0.5) {
        a(i)
    } else {
        b(i)
    }
}

fn random_tree(rng: &mut ChaCha8Rng, genus: u32, degree: usize) -> TreeSum {
    loop {
        let labels: Vec<Label> =
            (0..degree + 2).map(|_| random_label(rng, genus)).collect();
        let s = cat(&labels);
        if !s.is_zero() {
            return s;
        }
    }
}

fn random_sum(rng: &mut ChaCha8Rng, genus: u32) -> TreeSum {
    let degree = rng.gen_range(1..=3usize);
    let mut s = TreeSum::zero();
    for _ in 0..rng.gen_range(1..=2usize) {
        let c = Coef::from(rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 });
        s.add_assign(&random_tree(rng, genus, degree).scaled(&c));
    }
    s
}

// ---------------------------------------------------------------------------
// expansion
// ---------------------------------------------------------------------------

fn expansion_claims() -> Vec<Claim> {
    let mut v = Vec::new();
    v.push(Claim::new(
        "L2.1",
        "expansion",
        "relabelling every root of the expansion multiplies by the leaf count",
        "is multiplication by k+2",
        SUPPORT6,
        |ctx| {
            for k in 1..=3usize {
                let mut rng = ctx.rng(0x6c61_6200 + k as u64);
                for round in 0..200u32 {
                    let t = random_tree(&mut rng, ctx.config.genus, k);
                    let (key, _) = t.terms().next().expect("nonzero tree");
                    let tree = crate::tree::PlanarTree::parse_key(key)
                        .expect("canonical keys parse");
                    let mut relabelled = TreeSum::zero();
                    for (label, rooted) in crate::expand::eta_terms(&tree) {
                        relabelled.add_planar(&rooted.labelled(label), &Coef::ONE);
                    }
                    let want = t.scaled(&Coef::from((k + 2) as i64));
                    if relabelled != want {
                        return Outcome::failed(
                            format!("Lab after eta differs from (k+2)id at degree {k}, round {round}"),
                            eq_witness(&relabelled, &want),
                        );
                    }
                }
            }
            Outcome::verified(
                "Lab following eta is multiplication by k+2 for k = 1, 2, 3 on 200 seeded trees each",
                format!("lab-eta seed {}", ctx.config.seed),
            )
        },
    ));
    v.push(Claim::new(
        "L2.1.tripod",
        "expansion",
        "the expansion of a tripod is the six-term alternating tensor",
        "(*,a,b) corresponds to [b,a]",
        SUPPORT4,
        |_ctx| {
            let cases = [
                [a(1), b(2), a(3)],
                [a(1), a(2), a(3)],
                [b(1), a(2), b(4)],
            ];
            let mut witness = String::new();
            for [x, y, z] in cases {
                let got = expand(&cat(&[x, y, z]));
                let mut want = TensorVec::zero();
                for (u, p, q) in [(x, z, y), (y, x, z), (z, y, x)] {
                    want.add_word(vec![u, p, q], Coef::ONE);
                    want.add_word(vec![u, q, p], Coef::ONE.neg());
                }
                if got != want {
                    return Outcome::failed(
                        format!("tripod expansion differs at t({x},{y},{z})"),
                        format!("{got:?}"),
                    );
                }
                witness.push_str(&format!("t({x},{y},{z}) expands to 6 signed words\n"));
            }
            Outcome::verified(
                "each tripod expands to x(zy-yz) + y(xz-zx) + z(yx-xy), the listed display times the fixed convention sign",
                witness,
            )
        },
    ));
    v
}

// ---------------------------------------------------------------------------
// coinvariants
// ---------------------------------------------------------------------------

fn coinv_witness(n: usize, g: u32, r: &crate::coinv::CoinvResult) -> String {
    let tors: Vec<String> = r.torsion.iter().map(|d| d.to_string()).collect();
    format!("coinv({n},{g}): dim {} free {} torsion [{}]", r.dim, r.free_rank, tors.join(","))
}

fn coinvariant_claims() -> Vec<Claim> {
    let mut v = Vec::new();
    v.push(Claim::new(
        "P2.2-odd",
        "coinvariants",
        "odd tensor powers have zero coinvariants below the genus",
        "is zero for n odd",
        SUPPORT4,
        |_ctx| {
            let mut witness = String::new();
            for (n, g) in [(1usize, 2u32), (1, 3), (3, 4)] {
                let r = crate::coinv::coinvariants(n, g);
                witness.push_str(&coinv_witness(n, g, &r));
                witness.push('\n');
                if !r.is_zero() {
                    return Outcome::failed(
                        format!("coinvariants of (n,g) = ({n},{g}) do not vanish"),
                        witness,
                    );
                }
            }
            Outcome::verified("(1,2), (1,3) and (3,4) all vanish, free part and torsion", witness)
        },
    ));
    v.push(Claim::new(
        "P2.2-even",
        "coinvariants",
        "the square at genus three matches the recorded oracle",
        "for n even it is generated by the images of the basic tensors",
        &[1, 2, 3],
        |_ctx| {
            let r = crate::coinv::coinvariants(2, 3);
            let witness = coinv_witness(2, 3, &r);
            if r.dim == 36 && r.free_rank == 2 && r.torsion.is_empty() {
                Outcome::verified("free of rank 2 with no torsion, as recorded", witness)
            } else {
                Outcome::failed("value differs from the recorded oracle (2, [])", witness)
            }
        },
    ));
    v.push(Claim::new(
        "P2.2-low-genus",
        "coinvariants",
        "the square at genus two, outside the hypothesis n < g",
        "For any integer 1 <= n < g",
        &[1, 2],
        |_ctx| {
            let r = crate::coinv::coinvariants(2, 2);
            let witness = coinv_witness(2, 2, &r);
            let two = Coef::from(2);
            if r.dim == 16 && r.free_rank == 2 && r.torsion == vec![two.clone(), two] {
                Outcome::out_of_hypothesis(
                    "n = g = 2 violates n < g; torsion Z/2 x Z/2 appears, as recorded",
                    witness,
                )
            } else {
                Outcome::failed("value differs from the recorded oracle (2, [2,2])", witness)
            }
        },
    ));
    v.push(Claim::new(
        "P2.2-relation",
        "coinvariants",
        "one transvection relation in coordinates",
        "quotient of the tensor power by all elements G v - v",
        &[1, 3],
        |_ctx| {
            let gmap = GlMap::transvection(1, 3, 1).expect("distinct indices");
            let word = vec![a(3), a(1)];
            let rel = crate::coinv::relation(&gmap, &word);
            let witness = format!("relation on a3 (x) a1: {} terms", rel.len());
            if rel.len() == 1 && rel.get(&vec![a(1), a(1)]) == Some(&Coef::ONE) {
                Outcome::verified("(Id + E_13)(a3 (x) a1) - a3 (x) a1 = a1 (x) a1 exactly", witness)
            } else {
                Outcome::failed("relation vector differs from a1 (x) a1", witness)
            }
        },
    ));
    v
}

// ---------------------------------------------------------------------------
// brackets-fast
// ---------------------------------------------------------------------------

fn bracket_claims() -> Vec<Claim> {
    Vec::new()
}

// ---------------------------------------------------------------------------
// membership
// ---------------------------------------------------------------------------

fn membership_claims() -> Vec<Claim> {
    Vec::new()
}

// ---------------------------------------------------------------------------
// trace
// ---------------------------------------------------------------------------

fn trace_claims() -> Vec<Claim> {
    Vec::new()
}

// ---------------------------------------------------------------------------
// prop44
// ---------------------------------------------------------------------------

fn prop44_claims() -> Vec<Claim> {
    Vec::new()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_and_nonempty() {
        let reg = registry();
        assert!(!reg.is_empty());
        let mut ids: Vec<&str> = reg.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        assert_eq!(before, ids.len());
    }

    #[test]
    fn registry_dump_mentions_required_entries() {
        let dump = registry_json();
        assert!(dump.contains("P2.2-odd"));
        assert!(dump.contains("\"schema\""));
    }

    #[test]
    fn unknown_selector_is_a_usage_error() {
        let config = Config::default();
        assert!(matches!(run_claims("no-such-suite", &config), Err(Error::Usage(_))));
    }

    #[test]
    fn coinvariant_suite_verifies() {
        let config = Config::default();
        let report = run_claims("coinvariants", &config).unwrap();
        assert!(!report.failed());
        let statuses: Vec<Status> = report.results.iter().map(|r| r.status).collect();
        assert!(statuses.contains(&Status::OutOfHypothesis));
        assert!(statuses.contains(&Status::Verified));
    }

    #[test]
    fn narrowed_support_flags_out_of_hypothesis() {
        let mut config = Config::default();
        config.set("genus", "2").unwrap();
        config.set("support", "1,2").unwrap();
        config.validate().unwrap();
        let report = run_claims("P2.2-even", &config).unwrap();
        assert_eq!(report.results.len(), 1);
        assert_eq!(report.results[0].status, Status::OutOfHypothesis);
        assert!(report.results[0].detail.contains("support"));
    }

    #[test]
    fn expansion_suite_verifies() {
        let config = Config::default();
        let report = run_claims("expansion", &config).unwrap();
        assert!(!report.failed());
        assert_eq!(report.results.len(), 2);
        for r in &report.results {
            assert_eq!(r.status, Status::Verified);
        }
    }
}
