//! Batch verification of the claimed bounds and constructions against the
//! exhaustive oracle.
//!
//! Checks run in parallel; the report is ordered by check id and, apart
//! from the elapsed time in the summary line, is a pure function of the spec.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, BoundValue, GraphParams};
use crate::certify::{Certifier, Property, Verdict};
use crate::construct;
use crate::corpus::{CorpusGraph, CorpusSpec, RandomSpec};
use crate::dynamics::{self, default_limit, Outcome};
use crate::error::{Error, Result};
use crate::generators as gen;
use crate::graph::Graph;
use crate::model::{Alpha, ThresholdModel};
use crate::nodeset::NodeSet;
use crate::search::{self, SearchOptions, SearchResult};

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: u32,
    pub name: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub measured: Value,
    /// Searches or runs that overran the round budget.
    pub indeterminate: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckReport {
    /// The measured values on one line, shortened for terminals.
    pub fn measured_summary(&self) -> String {
        const WIDTH: usize = 160;
        let s = self.measured.to_string();
        match s.char_indices().nth(WIDTH) {
            Some((i, _)) => format!("{}...", &s[..i]),
            None => s,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub checks: Vec<CheckReport>,
    pub seed: u64,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One JSON object per check, then a summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&serde_json::to_string(c).expect("report serializes"));
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let summary = json!({
            "summary": {
                "checks": self.checks.len(),
                "passed": passed,
                "failed": self.checks.len() - passed,
                "seed": self.seed,
            },
            "elapsed_ms": self.elapsed.as_millis() as u64,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

/// Accumulates the outcome of one check.
struct Tally {
    failures: Vec<String>,
    failed: usize,
    indeterminate: u64,
    measured: serde_json::Map<String, Value>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            failures: Vec::new(),
            failed: 0,
            indeterminate: 0,
            measured: serde_json::Map::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn record(&mut self, key: &str, value: impl Serialize) {
        self.measured
            .insert(key.into(), serde_json::to_value(value).expect("serializable"));
    }

    /// Searches must be complete: an overrun is both counted and a failure.
    fn search(&mut self, res: &SearchResult, label: impl FnOnce() -> String) {
        self.indeterminate += res.indeterminate;
        if res.indeterminate > 0 {
            let label = label();
            self.expect(false, || format!("{label}: {} subsets overran the budget", res.indeterminate));
        }
    }

    fn verdict(&mut self, v: Verdict) -> Verdict {
        if v == Verdict::Indeterminate {
            self.indeterminate += 1;
        }
        v
    }
}

struct Ctx {
    spec: CorpusSpec,
    graphs: Vec<CorpusGraph>,
    trees: Vec<CorpusGraph>,
}

type CheckFn = fn(&Ctx, &mut Tally) -> Result<()>;

struct CheckDef {
    id: u32,
    name: &'static str,
    claim: &'static str,
    run: CheckFn,
}

const CHECKS: &[CheckDef] = &[
    CheckDef {
        id: 1,
        name: "complete-and-regular-dynamos",
        claim: "K_n (n = 6..10) has minimum dynamo r in r-BP and two-way r-BP (r = 1..3); \
                every (n-1)-subset of a 3-regular graph fails in two-way 3-BP",
        run: check_complete_and_regular,
    },
    CheckDef {
        id: 2,
        name: "cycle-half-threshold",
        claim: "two-way alpha-BP with alpha = 1/2 on C_n: minimum dynamo 1 for odd n, more than 1 for even n",
        run: check_cycle_half,
    },
    CheckDef {
        id: 3,
        name: "twoway-r1-bipartite",
        claim: "two-way 1-BP minimum dynamo is 2 on bipartite graphs and 1 otherwise; \
                the constructed dynamo is certified and of that size",
        run: check_twoway_r1,
    },
    CheckDef {
        id: 4,
        name: "twoway-alpha-sqrt-lower",
        claim: "for alpha in {4/5, 7/8}: minimum two-way dynamo >= 2*alpha*sqrt(n) - 1, \
                and the two-round-core potential never increases from round 1 on dynamo runs",
        run: check_sqrt_lower,
    },
    CheckDef {
        id: 5,
        name: "clique-with-leaves-tightness",
        claim: "the clique of the clique-with-leaves graph is a two-way alpha-BP dynamo of size \
                sqrt(alpha/(1-alpha)*n) whenever k-1 >= alpha*d",
        run: check_clique_leaves,
    },
    CheckDef {
        id: 6,
        name: "monotone-lower",
        claim: "minimum monotone dynamo >= sqrt(alpha/(1-alpha)*n) - 1 (alpha in {3/5, 3/4}), \
                and >= alpha/(2-alpha)*n on trees",
        run: check_monotone_lower,
    },
    CheckDef {
        id: 7,
        name: "labeling-dynamos",
        claim: "every labeling set D_L is an alpha-BP dynamo; the best of 100 samples is at most \
                E|D_L| + 1 and the sample mean is within 10% of E|D_L|",
        run: check_labeling,
    },
    CheckDef {
        id: 8,
        name: "dense-small-dynamos",
        claim: "with min degree >= n/2 + r, a size-r two-way dynamo is found from any (2r-1)-set, \
                and the number of size-r dynamos grows like n^r",
        run: check_dense,
    },
    CheckDef {
        id: 9,
        name: "stable-sets",
        claim: "the partition construction yields a stable set of size <= n/c + 2c (c = floor(1/alpha)); \
                minimum stable >= ceil(1/(1-alpha)); the tight family attains it",
        run: check_stable,
    },
    CheckDef {
        id: 10,
        name: "immortal-r2-and-chain",
        claim: "two-way 2-BP minimum immortal on C_n is n for odd n and n/2 for even n; \
                the 3-regular chain on 18 nodes has no immortal set of size <= 10",
        run: check_immortal,
    },
    CheckDef {
        id: 11,
        name: "implications-and-coupling",
        claim: "monotone dynamo => dynamo, stable => immortal, and c <= c' => step(c) <= step(c') \
                on 1000 random queries",
        run: check_implications,
    },
    CheckDef {
        id: 13,
        name: "oracle-vs-bounds",
        claim: "for every corpus graph and model the exact minima lie within the closed-form bounds \
                and no construction beats the oracle",
        run: check_bounds_table,
    },
];

const TERMINATION: CheckDef = CheckDef {
    id: 12,
    name: "twoway-termination",
    claim: "every two-way run ends in a fixed point or a 2-cycle within the default budget",
    run: check_termination,
};

fn a(p: u64, q: u64) -> Alpha {
    Alpha::new(p, q).expect("valid alpha")
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn min_of(
    t: &mut Tally,
    g: &Graph,
    m: ThresholdModel,
    p: Property,
    name: &str,
) -> Result<Option<usize>> {
    let res = search::min_set(g, m, p, &opts())?;
    t.search(&res, || format!("{name} {m} {p}"));
    Ok(res.min_size)
}

fn execute(def: &CheckDef, ctx: &Ctx) -> CheckReport {
    let mut t = Tally::new();
    let outcome = (def.run)(ctx, &mut t);
    let error = outcome.err().map(|e| e.to_string());
    CheckReport {
        id: def.id,
        name: def.name,
        claim: def.claim,
        passed: t.failed == 0 && error.is_none(),
        measured: Value::Object(t.measured),
        indeterminate: t.indeterminate,
        failures: t.failures,
        error,
    }
}

/// Runs every check against the corpus the spec describes.
pub fn run(spec: &CorpusSpec) -> Result<VerifyReport> {
    if spec.is_empty() {
        return Err(Error::Precondition("corpus spec lists no graphs".into()));
    }
    let start = Instant::now();
    let ctx = Ctx {
        graphs: spec.graphs()?,
        trees: spec.trees()?,
        spec: spec.clone(),
    };
    let mut checks: Vec<CheckReport> = CHECKS.par_iter().map(|d| execute(d, &ctx)).collect();
    let mut last = execute(&TERMINATION, &ctx);
    let elsewhere: u64 = checks.iter().map(|c| c.indeterminate).sum();
    if elsewhere > 0 {
        last.passed = false;
        last.failures.push(format!("{elsewhere} budget overruns in other checks"));
    }
    last.measured["overruns_elsewhere"] = json!(elsewhere);
    checks.push(last);
    checks.sort_by_key(|c| c.id);
    Ok(VerifyReport {
        checks,
        seed: spec.seed,
        elapsed: start.elapsed(),
    })
}

fn check_complete_and_regular(_: &Ctx, t: &mut Tally) -> Result<()> {
    let mut rows = Vec::new();
    for n in 6..=10 {
        let g = gen::complete(n)?;
        for r in 1..=3 {
            for m in [ThresholdModel::r(r), ThresholdModel::two_way_r(r)] {
                let got = min_of(t, &g, m, Property::Dynamo, "K_n")?;
                t.expect(got == Some(r), || format!("K_{n} {m}: min {got:?}, expected {r}"));
                rows.push(json!({"n": n, "model": m.name(), "r": r, "min": got}));
            }
        }
    }
    t.record("complete", rows);
    let m = ThresholdModel::two_way_r(3);
    let mut regular = Vec::new();
    for (name, g) in [("petersen", gen::petersen()), ("regular-chain(3,18)", gen::regular_chain(3, 18)?)] {
        let cert = Certifier::new(&g, m)?;
        let n = g.n();
        let mut holds = 0;
        for v in 0..n {
            let mut s = g.full_set();
            s.remove(v);
            if t.verdict(cert.verdict(Property::Dynamo, &s)) != Verdict::Fails {
                holds += 1;
            }
        }
        let full = cert.verdict(Property::Dynamo, &g.full_set()) == Verdict::Holds;
        t.expect(holds == 0 && full, || format!("{name}: {holds} (n-1)-subsets did not fail"));
        regular.push(json!({"graph": name, "n": n, "non_failing_n_minus_1": holds, "min": if holds == 0 && full { Some(n) } else { None }}));
    }
    t.record("regular", regular);
    Ok(())
}

fn check_cycle_half(_: &Ctx, t: &mut Tally) -> Result<()> {
    let m = ThresholdModel::two_way_alpha(a(1, 2));
    let mut rows = Vec::new();
    for n in 3..=9 {
        let got = min_of(t, &gen::cycle(n)?, m, Property::Dynamo, "cycle")?;
        if n % 2 == 1 {
            t.expect(got == Some(1), || format!("C_{n}: min {got:?}, expected 1"));
        } else {
            t.expect(got.is_some_and(|k| k > 1), || format!("C_{n}: min {got:?}, expected > 1"));
        }
        rows.push(json!({"n": n, "min": got}));
    }
    t.record("cycles", rows);
    Ok(())
}

fn check_twoway_r1(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let spec = CorpusSpec {
        families: Vec::new(),
        random_graphs: Some(RandomSpec {
            count: 50,
            n: [4, 12],
            p: [0.15, 0.5],
            seed: ctx.spec.seed.wrapping_mul(1000).wrapping_add(3),
        }),
        random_trees: None,
        models: Vec::new(),
        seed: ctx.spec.seed,
    };
    let graphs = spec.graphs()?;
    let m = ThresholdModel::two_way_r(1);
    let (mut bip, mut seeds) = (0, Vec::new());
    for cg in &graphs {
        let g = &cg.graph;
        let expected = if g.is_bipartite() { 2 } else { 1 };
        bip += (expected == 2) as usize;
        let got = min_of(t, g, m, Property::Dynamo, &cg.name)?;
        t.expect(got == Some(expected), || format!("{}: min {got:?}, expected {expected}", cg.name));
        let c = construct::dynamo_twoway_r1(g)?;
        t.expect(c.certified && c.size == expected, || {
            format!("{}: construction size {} certified {}", cg.name, c.size, c.certified)
        });
        seeds.extend(cg.seed);
    }
    t.record("graphs", graphs.len());
    t.record("bipartite", bip);
    t.record("non_bipartite", graphs.len() - bip);
    t.record("seeds", seeds);
    Ok(())
}

/// Corpus graphs small enough for the criteria stated at `n ≤ 12`.
fn small(ctx: &Ctx) -> impl Iterator<Item = &CorpusGraph> {
    ctx.graphs.iter().filter(|g| g.graph.n() <= 12)
}

fn check_sqrt_lower(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let mut runs = 0;
    let mut tight = Vec::new();
    for alpha in [a(4, 5), a(7, 8)] {
        let m = ThresholdModel::two_way_alpha(alpha);
        let graphs: Vec<_> = small(ctx).collect();
        let results: Vec<_> = graphs
            .par_iter()
            .map(|cg| -> Result<_> {
                let g = &cg.graph;
                let res = search::min_set(g, m, Property::Dynamo, &opts())?;
                let mut sets = match res.min_size {
                    Some(k) => search::all_min_sets(g, m, Property::Dynamo, k, &opts())?,
                    None => Vec::new(),
                };
                sets.push(g.full_set());
                let mut bad = Vec::new();
                for s in &sets {
                    let trace = dynamics::run(g, m, s, default_limit(g.n()))?;
                    let Some(end) = trace.first_full() else { continue };
                    let phi: Vec<usize> = (1..=end + 1)
                        .map(|t| dynamics::potential_phi_core(g, &trace, t))
                        .collect::<Result<_>>()?;
                    if let Some(i) = phi.windows(2).position(|w| w[1] > w[0]) {
                        bad.push(format!("{} {m} set {:?}: phi_{} = {} > phi_{} = {}", cg.name, s.to_vec(), i + 2, phi[i + 1], i + 1, phi[i]));
                    }
                }
                Ok((cg, res, sets.len(), bad))
            })
            .collect::<Result<_>>()?;
        for (cg, res, count, bad) in results {
            t.search(&res, || format!("{} {m}", cg.name));
            let n = cg.graph.n();
            let lower = BoundValue::surd(alpha.to_ratio() * q(2), q(n as i64), q(-1));
            let min = res.min_size.unwrap_or(0);
            t.expect(res.min_size.is_some() && lower.le_int(min), || {
                format!("{} {m}: min {:?} < {lower}", cg.name, res.min_size)
            });
            if !lower.le_int(min.saturating_sub(1)) {
                tight.push(json!({"graph": cg.name, "alpha": alpha.to_string(), "min": min, "bound": lower.to_string()}));
            }
            runs += count;
            for b in bad {
                t.expect(false, || b);
            }
        }
    }
    t.record("dynamo_runs_checked", runs);
    t.record("bound_met_within_one", tight);
    Ok(())
}

fn check_clique_leaves(_: &Ctx, t: &mut Tally) -> Result<()> {
    let mut rows = Vec::new();
    for (k, n) in [(4, 16), (5, 25)] {
        let g = gen::clique_with_leaves(k, n)?;
        let d = k - 1 + n / k - 1;
        for alpha in [a(1, 2), a(3, 4), a(4, 5)] {
            // k-1 >= αd, i.e. q(k-1) >= pd
            if !alpha.reached(k - 1, d) {
                rows.push(json!({"k": k, "n": n, "alpha": alpha.to_string(), "applies": false}));
                continue;
            }
            let m = ThresholdModel::two_way_alpha(alpha);
            let clique = g.node_set(0..k)?;
            let v = t.verdict(Certifier::new(&g, m)?.verdict(Property::Dynamo, &clique));
            let size = BoundValue::surd(q(1), alpha.to_ratio() / (q(1) - alpha.to_ratio()) * q(n as i64), q(0));
            let exact = size == BoundValue::integer(k);
            t.expect(v == Verdict::Holds, || format!("clique of ({k},{n}) at {alpha} is not a dynamo"));
            t.expect(exact, || format!("({k},{n}) at {alpha}: sqrt(alpha/(1-alpha) n) = {size} != {k}"));
            rows.push(json!({"k": k, "n": n, "alpha": alpha.to_string(), "applies": true, "dynamo": v == Verdict::Holds, "formula": size.to_string()}));
        }
    }
    let applied = rows.iter().filter(|r| r["applies"] == true).count();
    t.expect(applied > 0, || "no (k, n, alpha) case satisfies k-1 >= alpha*d".into());
    t.record("cases", rows);
    Ok(())
}

fn check_monotone_lower(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let mut checked = 0;
    for alpha in [a(3, 5), a(3, 4)] {
        let m = ThresholdModel::two_way_alpha(alpha);
        let ratio = alpha.to_ratio() / (q(1) - alpha.to_ratio());
        let graphs: Vec<_> = small(ctx).collect();
        let results: Vec<_> = graphs
            .par_iter()
            .map(|cg| search::min_set(&cg.graph, m, Property::MonotoneDynamo, &opts()))
            .collect::<Result<_>>()?;
        for (cg, res) in graphs.iter().zip(&results) {
            t.search(res, || format!("{} {m}", cg.name));
            let n = cg.graph.n();
            let lower = BoundValue::surd(q(1), ratio.clone() * q(n as i64), q(-1));
            t.expect(res.min_size.is_some_and(|k| lower.le_int(k)), || {
                format!("{} {m}: monotone min {:?} < {lower}", cg.name, res.min_size)
            });
            checked += 1;
        }
    }
    let mut trees = Vec::new();
    for alpha in [a(3, 5), a(3, 4)] {
        let m = ThresholdModel::two_way_alpha(alpha);
        let results: Vec<_> = ctx
            .trees
            .par_iter()
            .map(|cg| search::min_set(&cg.graph, m, Property::MonotoneDynamo, &opts()))
            .collect::<Result<_>>()?;
        for (cg, res) in ctx.trees.iter().zip(&results) {
            t.search(res, || format!("{} {m}", cg.name));
            let n = cg.graph.n();
            let bound = BoundValue::rational(
                alpha.to_ratio() / (q(2) - alpha.to_ratio())
                    * q(n as i64),
            );
            t.expect(res.min_size.is_some_and(|k| bound.le_int(k)), || {
                format!("{} {m}: monotone min {:?} < {bound}", cg.name, res.min_size)
            });
            trees.push(json!({"tree": cg.name, "alpha": alpha.to_string(), "min": res.min_size, "bound": bound.to_string()}));
        }
    }
    t.expect(!ctx.trees.is_empty(), || "corpus has no random trees".into());
    t.record("corpus_searches", checked);
    t.record("trees", trees);
    Ok(())
}

fn check_labeling(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (i, alpha) in [a(1, 3), a(1, 2), a(2, 3)].into_iter().enumerate() {
        let m = ThresholdModel::alpha(alpha);
        let seed = ctx.spec.seed.wrapping_mul(7919).wrapping_add(i as u64);
        let results: Vec<_> = ctx
            .graphs
            .par_iter()
            .map(|cg| construct::dynamo_by_labeling(&cg.graph, m, seed, 100))
            .collect::<Result<_>>()?;
        for (cg, rep) in ctx.graphs.iter().zip(&results) {
            let e = rep.expectation.to_f64();
            let best = rep.report.size;
            t.expect(rep.failures == 0 && rep.report.certified, || {
                format!("{} {m}: {} sampled D_L failed", cg.name, rep.failures)
            });
            let e_plus_one = bounds::labeling_expectation(&cg.graph, m)? + q(1);
            t.expect(BoundValue::rational(e_plus_one).ge_int(best), || {
                format!("{} {m}: best {best} > E + 1 = {}", cg.name, e + 1.0)
            });
            // |mean - E| <= E/10, exactly: |10·Σ sizes − 1000·E| ≤ 100·E
            let sum: usize = rep.sizes.iter().sum();
            let exact_e = bounds::labeling_expectation(&cg.graph, m)?;
            let ten = q(10);
            let dev = (q(sum as i64) / q(100) - &exact_e).abs();
            t.expect(dev.clone() * ten <= exact_e, || {
                format!("{} {m}: mean {} vs E {e:.4}", cg.name, rep.mean)
            });
            worst = worst.max((dev / exact_e).to_f64().unwrap_or(f64::NAN));
            count += 1;
        }
    }
    t.record("graph_model_pairs", count);
    t.record("samples_each", 100);
    t.record("worst_relative_mean_deviation", worst);
    Ok(())
}

fn check_dense(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let mut rows = Vec::new();
    let mut counts = std::collections::BTreeMap::new();
    for r in [2, 3] {
        for n in [20, 30, 40] {
            let g = gen::complete_minus_matching(n)?;
            if !bounds::gunderson_condition(n, g.min_degree(), r) {
                rows.push(json!({"n": n, "r": r, "applies": false}));
                continue;
            }
            let rep = construct::dense_small_dynamo(&g, r, ctx.spec.seed.wrapping_add(n as u64))?;
            t.expect(rep.report.certified && rep.report.size == r, || {
                format!("n={n} r={r}: size {} certified {}", rep.report.size, rep.report.certified)
            });
            let c = construct::count_small_dynamos(&g, r, None)?;
            t.indeterminate += c.indeterminate;
            t.expect(c.indeterminate == 0 && !c.partial, || format!("n={n} r={r}: incomplete count"));
            counts.insert((n, r), c.count);
            rows.push(json!({"n": n, "r": r, "applies": true, "size": rep.report.size, "reached": rep.reached, "count": c.count, "total": c.total}));
        }
        if let (Some(&big), Some(&base)) = (counts.get(&(40, r)), counts.get(&(20, r))) {
            // count(40)/count(20) ≥ 0.5·2^r
            t.expect(2 * big >= base << r, || format!("r={r}: count(40) = {big}, count(20) = {base}"));
        }
    }
    t.record("cases", rows);
    Ok(())
}

fn check_stable(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let mut built = 0;
    for alpha in [a(1, 3), a(1, 2)] {
        let c = alpha.floor_inv();
        for cg in &ctx.graphs {
            let rep = construct::stable_by_partition(&cg.graph, alpha)?;
            let n = cg.graph.n();
            // size ≤ n/c + 2c  ⟺  c·size ≤ n + 2c²
            t.expect(rep.report.certified && c * rep.report.size <= n + 2 * c * c, || {
                format!("{} alpha={alpha}: size {} certified {}", cg.name, rep.report.size, rep.report.certified)
            });
            built += 1;
        }
    }
    let mut searched = 0;
    for alpha in [a(1, 2), a(2, 3), a(4, 5)] {
        let m = ThresholdModel::two_way_alpha(alpha);
        let lower = alpha.ceil_inv_complement();
        let graphs: Vec<_> = small(ctx).collect();
        let results: Vec<_> = graphs
            .par_iter()
            .map(|cg| search::min_set(&cg.graph, m, Property::Stable, &opts()))
            .collect::<Result<_>>()?;
        for (cg, res) in graphs.iter().zip(&results) {
            t.search(res, || format!("{} {m}", cg.name));
            // V is stable, so the bound is capped at n
            let floor = lower.min(cg.graph.n());
            t.expect(res.min_size.is_some_and(|k| k >= floor), || {
                format!("{} {m}: min stable {:?} < {floor}", cg.name, res.min_size)
            });
            searched += 1;
        }
    }
    let mut tight = Vec::new();
    for alpha in [a(1, 3), a(1, 2), a(2, 3), a(3, 4), a(4, 5)] {
        let s = alpha.ceil_inv_complement();
        let m = ThresholdModel::two_way_alpha(alpha);
        for n in [8, 12] {
            let g = gen::stable_tight(alpha, n)?;
            let v2 = g.node_set(0..s)?;
            let v = t.verdict(Certifier::new(&g, m)?.verdict(Property::Stable, &v2));
            let min = min_of(t, &g, m, Property::Stable, "stable-tight")?;
            t.expect(v == Verdict::Holds && min == Some(s), || {
                format!("stable-tight({alpha},{n}): V_2 {v:?}, oracle min {min:?}, expected {s}")
            });
            tight.push(json!({"alpha": alpha.to_string(), "n": n, "size": s, "oracle_min": min}));
        }
    }
    t.record("partitions_built", built);
    t.record("stable_searches", searched);
    t.record("tight_family", tight);
    Ok(())
}

fn check_immortal(_: &Ctx, t: &mut Tally) -> Result<()> {
    let m = ThresholdModel::two_way_r(2);
    let mut rows = Vec::new();
    for n in 5..=10 {
        let got = min_of(t, &gen::cycle(n)?, m, Property::Immortal, "cycle")?;
        let expected = if n % 2 == 0 { n / 2 } else { n };
        t.expect(got == Some(expected), || format!("C_{n}: min immortal {got:?}, expected {expected}"));
        rows.push(json!({"n": n, "min": got}));
    }
    t.record("cycles", rows);
    let g = gen::regular_chain(3, 18)?;
    let res = search::min_set(
        &g,
        ThresholdModel::two_way_r(3),
        Property::Immortal,
        &SearchOptions {
            max_size: Some(10),
            ..opts()
        },
    )?;
    t.search(&res, || "regular-chain(3,18)".into());
    t.expect(res.min_size.is_none() && res.searched_up_to == 10, || {
        format!("regular-chain(3,18): immortal set of size {:?} found", res.min_size)
    });
    t.record("chain_examined", res.examined);
    t.record("chain_min_at_least", res.searched_up_to + 1);
    Ok(())
}

/// Models from `pool` whose parameters are valid on `g`.
fn valid_models(g: &Graph, pool: &[ThresholdModel]) -> Vec<ThresholdModel> {
    pool.iter().copied().filter(|m| m.validate(g).is_ok()).collect()
}

fn model_pool(ctx: &Ctx) -> Vec<ThresholdModel> {
    if ctx.spec.models.is_empty() {
        CorpusSpec::default().models
    } else {
        ctx.spec.models.clone()
    }
}

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> NodeSet {
    let mut s = NodeSet::empty(n);
    while s.is_empty() {
        for v in 0..n {
            if rng.gen_bool(0.5) {
                s.insert(v);
            }
        }
    }
    s
}

fn check_implications(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let pool = model_pool(ctx);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.spec.seed.wrapping_mul(31).wrapping_add(11));
    let mut queries = Vec::with_capacity(1000);
    while queries.len() < 1000 {
        let cg = &ctx.graphs[rng.gen_range(0..ctx.graphs.len())];
        let models = valid_models(&cg.graph, &pool);
        if models.is_empty() {
            continue;
        }
        let m = models[rng.gen_range(0..models.len())];
        let c = random_set(&mut rng, cg.graph.n());
        let c2 = c.union(&random_set(&mut rng, cg.graph.n()));
        queries.push((cg, m, c, c2));
    }
    let verdicts: Vec<_> = queries
        .par_iter()
        .map(|(cg, m, c, c2)| -> Result<_> {
            let cert = Certifier::new(&cg.graph, *m)?;
            let v: Vec<Verdict> = Property::ALL.iter().map(|&p| cert.verdict(p, c)).collect();
            let d = cert.dynamics();
            Ok((v, d.step(c).is_subset(&d.step(c2))))
        })
        .collect::<Result<_>>()?;
    let mut tally = [0usize; 3];
    for ((cg, m, c, c2), (v, coupled)) in queries.iter().zip(verdicts) {
        let [dynamo, monotone, stable, immortal] = [v[0], v[1], v[2], v[3]];
        for x in &v {
            t.verdict(*x);
        }
        let set = || format!("{} {m} {:?}", cg.name, c.to_vec());
        t.expect(monotone != Verdict::Holds || dynamo == Verdict::Holds, || format!("monotone but not dynamo: {}", set()));
        t.expect(stable != Verdict::Holds || immortal == Verdict::Holds, || format!("stable but not immortal: {}", set()));
        t.expect(coupled, || format!("coupling broken: {} vs {:?}", set(), c2.to_vec()));
        tally[0] += (monotone == Verdict::Holds) as usize;
        tally[1] += (stable == Verdict::Holds) as usize;
        tally[2] += (c != c2) as usize;
    }
    t.record("queries", queries.len());
    t.record("monotone_true", tally[0]);
    t.record("stable_true", tally[1]);
    t.record("strict_supersets", tally[2]);
    Ok(())
}

fn check_termination(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let mut pool: Vec<ThresholdModel> = model_pool(ctx).into_iter().filter(|m| m.is_two_way()).collect();
    for (p, q) in [(1, 3), (1, 2), (3, 5), (2, 3), (3, 4), (4, 5), (7, 8)] {
        pool.push(ThresholdModel::two_way_alpha(a(p, q)));
    }
    pool.extend((1..=3).map(ThresholdModel::two_way_r));
    pool.dedup();
    let results: Vec<_> = ctx
        .graphs
        .par_iter()
        .enumerate()
        .map(|(i, cg)| -> Result<_> {
            let g = &cg.graph;
            let n = g.n();
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.spec.seed.wrapping_mul(131).wrapping_add(i as u64));
            let mut starts: Vec<NodeSet> = Vec::new();
            for v in 0..n {
                starts.push(g.node_set([v])?);
                let mut s = g.full_set();
                s.remove(v);
                starts.push(s);
            }
            starts.push(g.full_set());
            starts.extend((0..20).map(|_| random_set(&mut rng, n)));
            let (mut runs, mut bad, mut overruns, mut max_period) = (0, Vec::new(), 0u64, 0);
            for m in valid_models(g, &pool) {
                for s in &starts {
                    let trace = dynamics::run(g, m, s, default_limit(n))?;
                    runs += 1;
                    match trace.outcome() {
                        Outcome::LimitReached => {
                            overruns += 1;
                            bad.push(format!("{} {m} {:?}: budget exhausted", cg.name, s.to_vec()));
                        }
                        o => {
                            let p = o.period().unwrap_or(1);
                            max_period = max_period.max(p);
                            if p > 2 {
                                bad.push(format!("{} {m} {:?}: period {p}", cg.name, s.to_vec()));
                            }
                        }
                    }
                }
            }
            Ok((runs, bad, overruns, max_period))
        })
        .collect::<Result<_>>()?;
    let (mut runs, mut max_period) = (0, 0);
    for (r, bad, overruns, p) in results {
        runs += r;
        max_period = max_period.max(p);
        t.indeterminate += overruns;
        for b in bad {
            t.expect(false, || b);
        }
    }
    t.record("runs", runs);
    t.record("max_period", max_period);
    Ok(())
}

fn check_bounds_table(ctx: &Ctx, t: &mut Tally) -> Result<()> {
    let pool = model_pool(ctx);
    let jobs: Vec<(&CorpusGraph, ThresholdModel)> = ctx
        .graphs
        .iter()
        .flat_map(|cg| valid_models(&cg.graph, &pool).into_iter().map(move |m| (cg, m)))
        .collect();
    let rows: Vec<_> = jobs
        .par_iter()
        .map(|&(cg, m)| table_row(cg, m))
        .collect::<Result<_>>()?;
    let listed = rows.len() <= 50;
    let mut table = Vec::new();
    for (row, failures, overruns) in rows {
        t.indeterminate += overruns;
        for f in failures {
            t.expect(false, || f);
        }
        if listed {
            table.push(row);
        }
    }
    t.record("rows", jobs.len());
    if listed {
        t.record("table", table);
    }
    Ok(())
}

fn table_row(cg: &CorpusGraph, m: ThresholdModel) -> Result<(Value, Vec<String>, u64)> {
    let g = &cg.graph;
    let params = GraphParams::of(g);
    let rep = bounds::report(m, &params)?;
    let mut failures = Vec::new();
    let mut overruns = 0;
    let mut mins = [None; 4];
    for (i, &p) in Property::ALL.iter().enumerate() {
        let res = search::min_set(g, m, p, &opts())?;
        overruns += res.indeterminate;
        if res.indeterminate > 0 {
            failures.push(format!("{} {m} {p}: {} budget overruns", cg.name, res.indeterminate));
        }
        mins[i] = res.min_size;
    }
    let [dynamo, monotone, stable, immortal] = mins;
    let mut within = |what: &str, k: Option<usize>, b: &bounds::BoundPair| match k {
        Some(k) if b.contains(k) => {}
        _ => failures.push(format!(
            "{} {m} {what}: min {k:?} outside [{}, {}]",
            cg.name, b.lower, b.upper
        )),
    };
    within("dynamo", dynamo, &rep.dynamo);
    within("stable", stable, &rep.stable);
    within("immortal", immortal, &rep.immortal);
    if !monotone.is_some_and(|k| rep.monotone_dynamo_lower.value.le_int(k)) {
        failures.push(format!(
            "{} {m} monotone: min {monotone:?} below {}",
            cg.name, rep.monotone_dynamo_lower.value
        ));
    }
    if dynamo.zip(monotone).is_some_and(|(d, md)| d > md) {
        failures.push(format!("{} {m}: monotone minimum below dynamo minimum", cg.name));
    }
    // constructions can match the oracle but never beat it
    let mut built = serde_json::Map::new();
    let mut compare = |name: &str, size: usize, certified: bool, min: Option<usize>, exact: bool| {
        let ok = certified && min.is_some_and(|k| if exact { size == k } else { size >= k });
        if !ok {
            failures.push(format!("{} {m} {name}: size {size} certified {certified} vs min {min:?}", cg.name));
        }
        built.insert(name.into(), json!(size));
    };
    match m {
        ThresholdModel::TwoWayR { r: 1 } => {
            let c = construct::dynamo_twoway_r1(g)?;
            compare("twoway-r1", c.size, c.certified, dynamo, true);
        }
        ThresholdModel::TwoWayR { r: 2 } => {
            let c = construct::immortal_r2(g)?;
            compare("immortal-r2", c.report.size, c.report.certified, immortal, false);
            if c.case != "odd hamiltonian" && g.n().is_multiple_of(2) && 2 * c.report.size > g.n() {
                failures.push(format!("{} {m}: immortal-r2 size {} above n/2", cg.name, c.report.size));
            }
        }
        ThresholdModel::TwoWayAlpha { alpha } if alpha.cmp_frac(1, 2).is_le() => {
            let c = construct::stable_by_partition(g, alpha)?;
            compare("partition", c.report.size, c.report.certified, stable, false);
        }
        ThresholdModel::R { .. } | ThresholdModel::Alpha { .. } => {
            let c = construct::dynamo_by_labeling(g, m, 0, 20)?;
            compare("labeling", c.report.size, c.report.certified && c.failures == 0, dynamo, false);
        }
        _ => {}
    }
    let row = json!({
        "graph": cg.name,
        "model": m.to_string(),
        "dynamo": dynamo,
        "monotone": monotone,
        "stable": stable,
        "immortal": immortal,
        "dynamo_bounds": [rep.dynamo.lower.to_string(), rep.dynamo.upper.to_string()],
        "stable_bounds": [rep.stable.lower.to_string(), rep.stable.upper.to_string()],
        "immortal_bounds": [rep.immortal.lower.to_string(), rep.immortal.upper.to_string()],
        "constructions": built,
    });
    Ok((row, failures, overruns))
}
