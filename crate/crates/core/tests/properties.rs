//! Randomized properties, checked against a deliberately naive reference
//! implementation that shares nothing with the library but the edge list.

use std::collections::{BTreeSet, HashSet};

use dynamo_core::bounds::{self, GraphParams};
use dynamo_core::certify::{Certifier, Property, Verdict};
use dynamo_core::construct::{self, Labeling};
use dynamo_core::dynamics::{self, Diagnostics, Outcome};
use dynamo_core::generators as gen;
use dynamo_core::search::{self, SearchOptions};
use dynamo_core::{Alpha, Graph, NodeSet, ThresholdModel};
use proptest::prelude::*;
use proptest::sample::Index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------- reference

struct Naive {
    adj: Vec<Vec<usize>>,
    two_way: bool,
    /// `(p, q)`: a node needs `count * q >= p * deg`; `r` is `(r, 0)`.
    rule: (usize, usize),
}

impl Naive {
    fn new(g: &Graph, m: ThresholdModel) -> Naive {
        let mut adj = vec![Vec::new(); g.n()];
        for &(u, v) in g.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let (two_way, rule) = match m {
            ThresholdModel::R { r } => (false, (r, 0)),
            ThresholdModel::TwoWayR { r } => (true, (r, 0)),
            ThresholdModel::Alpha { alpha } => (false, (alpha.num() as usize, alpha.den() as usize)),
            ThresholdModel::TwoWayAlpha { alpha } => (true, (alpha.num() as usize, alpha.den() as usize)),
        };
        Naive { adj, two_way, rule }
    }

    fn step(&self, c: &[bool]) -> Vec<bool> {
        (0..c.len())
            .map(|v| {
                let black = self.adj[v].iter().filter(|&&u| c[u]).count();
                let deg = self.adj[v].len();
                let ok = match self.rule {
                    (r, 0) => black >= r,
                    (p, q) => black * q >= p * deg,
                };
                ok || (!self.two_way && c[v])
            })
            .collect()
    }

    /// Every configuration from `c0` until the first repeat.
    fn orbit(&self, c0: Vec<bool>) -> Vec<Vec<bool>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut c = c0;
        while seen.insert(c.clone()) {
            out.push(c.clone());
            c = self.step(&c);
        }
        out
    }

    fn holds(&self, property: Property, set: &[bool]) -> bool {
        let orbit = self.orbit(set.to_vec());
        let full = |c: &Vec<bool>| c.iter().all(|&b| b);
        match property {
            Property::Dynamo => orbit.iter().any(full),
            Property::MonotoneDynamo => match orbit.iter().position(full) {
                Some(t) => (1..=t).all(|i| (0..set.len()).all(|v| !orbit[i - 1][v] || orbit[i][v])),
                None => false,
            },
            Property::Stable => orbit.iter().all(|c| (0..set.len()).all(|v| !set[v] || c[v])),
            Property::Immortal => orbit.iter().all(|c| c.iter().any(|&b| b)),
        }
    }

    /// Smallest set with the property, lexicographically least among ties.
    fn min_set(&self, property: Property) -> Option<Vec<usize>> {
        let n = self.adj.len();
        for k in 1..=n {
            let mut hits: Vec<Vec<usize>> = (0u32..1 << n)
                .filter(|m| m.count_ones() as usize == k)
                .filter(|&m| self.holds(property, &bits(n, m)))
                .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
                .collect();
            hits.sort();
            if let Some(first) = hits.into_iter().next() {
                return Some(first);
            }
        }
        None
    }
}

fn bits(n: usize, mask: u32) -> Vec<bool> {
    (0..n).map(|v| mask >> v & 1 == 1).collect()
}

fn as_bools(s: &NodeSet) -> Vec<bool> {
    (0..s.universe()).map(|v| s.contains(v)).collect()
}

/// Lengths of all simple cycles, by brute force.
fn cycle_lengths(g: &Graph) -> BTreeSet<usize> {
    fn go(g: &Graph, start: usize, v: usize, on: &mut Vec<bool>, len: usize, out: &mut BTreeSet<usize>) {
        for &u in g.neighbors(v) {
            if u == start && len >= 3 {
                out.insert(len);
            } else if u > start && !on[u] {
                on[u] = true;
                go(g, start, u, on, len + 1, out);
                on[u] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..g.n() {
        let mut on = vec![false; g.n()];
        on[s] = true;
        go(g, s, s, &mut on, 1, &mut out);
    }
    out
}

// --------------------------------------------------------------- strategies

/// Connected graphs: a random recursive tree plus independent extra edges.
fn graph(lo: usize, hi: usize, density: f64) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(move |n| {
        (
            prop::collection::vec(any::<Index>(), n - 1),
            prop::collection::vec(prop::bool::weighted(density), n * (n - 1) / 2),
        )
            .prop_map(move |(parents, extra)| {
                let mut edges = BTreeSet::new();
                for (i, p) in parents.iter().enumerate() {
                    edges.insert((p.index(i + 1), i + 1));
                }
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if extra[k] {
                            edges.insert((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, edges).unwrap()
            })
    })
}

fn alpha_in(lo: (u64, u64), hi: (u64, u64)) -> impl Strategy<Value = Alpha> {
    (2u64..=9, any::<Index>()).prop_filter_map("alpha out of range", move |(q, i)| {
        let p = 1 + i.index(q as usize - 1) as u64;
        let a = Alpha::new(p, q).ok()?;
        let above = a.cmp_frac(lo.0, lo.1).is_gt();
        let below = a.cmp_frac(hi.0, hi.1).is_le();
        (above && below).then_some(a)
    })
}

/// Any of the four models, valid on a graph with minimum degree `delta`.
fn model(delta: usize) -> impl Strategy<Value = ThresholdModel> {
    let r = 1..=delta.max(1);
    prop_oneof![
        r.clone().prop_map(ThresholdModel::r),
        r.prop_map(ThresholdModel::two_way_r),
        alpha_in((0, 1), (1, 1)).prop_map(ThresholdModel::alpha),
        alpha_in((0, 1), (1, 1)).prop_map(ThresholdModel::two_way_alpha),
    ]
}

fn graph_and_model(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, ThresholdModel)> {
    graph(lo, hi, 0.3).prop_flat_map(|g| {
        let d = g.min_degree();
        (Just(g), model(d))
    })
}

fn subset(n: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), n)
}

fn set_of(g: &Graph, flags: &[bool]) -> NodeSet {
    g.node_set((0..g.n()).filter(|&v| flags[v])).unwrap()
}

fn verdict(g: &Graph, m: ThresholdModel, p: Property, s: &NodeSet) -> bool {
    match Certifier::new(g, m).unwrap().verdict(p, s) {
        Verdict::Holds => true,
        Verdict::Fails => false,
        Verdict::Indeterminate => panic!("default budget overran on n = {}", g.n()),
    }
}

// ---------------------------------------------------------------- properties

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn search_agrees_with_reference((g, m) in graph_and_model(2, 7)) {
        let naive = Naive::new(&g, m);
        for p in Property::ALL {
            let res = search::min_set(&g, m, p, &SearchOptions::default()).unwrap();
            let expect = naive.min_set(p);
            prop_assert_eq!(res.indeterminate, 0);
            prop_assert_eq!(res.min_size, expect.as_ref().map(Vec::len), "{} {}", m, p);
            prop_assert_eq!(res.witness.map(|w| w.to_vec()), expect);
        }
    }

    #[test]
    fn bounds_contain_exact_minima((g, m) in graph_and_model(2, 7)) {
        let params = GraphParams::of(&g);
        let dynamo = bounds::dynamo_bounds(m, &params).unwrap();
        let (stable, immortal) = bounds::stable_immortal_bounds(m, &params).unwrap();
        let opts = SearchOptions::default();
        let size = |p| search::min_set(&g, m, p, &opts).unwrap().min_size;
        let d = size(Property::Dynamo).expect("V is a dynamo");
        prop_assert!(dynamo.contains(d), "{} dynamo {} outside {:?}", m, d, dynamo);
        let s = size(Property::Stable).expect("V is stable");
        prop_assert!(stable.contains(s), "{} stable {} outside {:?}", m, s, stable);
        let i = size(Property::Immortal).expect("V is immortal");
        prop_assert!(immortal.contains(i), "{} immortal {} outside {:?}", m, i, immortal);
        if let Some(md) = size(Property::MonotoneDynamo) {
            let low = bounds::monotone_dynamo_lower(m, g.n(), g.is_tree()).unwrap();
            prop_assert!(low.value.le_int(md), "{} monotone {} below {}", m, md, low.value);
        }
    }

    #[test]
    fn minima_ignore_node_names((g, m) in graph_and_model(3, 7), seed: u64) {
        let h = gen::relabel(&g, &mut ChaCha8Rng::seed_from_u64(seed));
        for p in Property::ALL {
            let a = search::min_set(&g, m, p, &SearchOptions::default()).unwrap().min_size;
            let b = search::min_set(&h, m, p, &SearchOptions::default()).unwrap().min_size;
            prop_assert_eq!(a, b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn certify_agrees_with_reference(
        (g, m, flags) in graph_and_model(2, 12).prop_flat_map(|(g, m)| {
            let n = g.n();
            (Just(g), Just(m), subset(n))
        })
    ) {
        prop_assume!(flags.iter().any(|&b| b));
        let s = set_of(&g, &flags);
        let naive = Naive::new(&g, m);
        let cert = Certifier::new(&g, m).unwrap();
        for p in Property::ALL {
            let full = cert.certificate(p, &s).unwrap();
            prop_assert_eq!(full.verdict, cert.verdict(p, &s));
            prop_assert_eq!(full.verdict.holds(), naive.holds(p, &flags), "{} {} {:?}", m, p, s);
        }
    }

    #[test]
    fn step_matches_reference_and_is_monotone(
        (g, m, a, b) in graph_and_model(2, 16).prop_flat_map(|(g, m)| {
            let n = g.n();
            (Just(g), Just(m), subset(n), subset(n))
        })
    ) {
        let c = set_of(&g, &a);
        let wider = c.union(&set_of(&g, &b));
        let sc = dynamics::step(&g, m, &c).unwrap();
        let sw = dynamics::step(&g, m, &wider).unwrap();
        prop_assert!(sc.is_subset(&sw));
        prop_assert_eq!(as_bools(&sc), Naive::new(&g, m).step(&a));
    }

    #[test]
    fn runs_end_as_expected(
        (g, m, flags) in graph_and_model(2, 16).prop_flat_map(|(g, m)| {
            let n = g.n();
            (Just(g), Just(m), subset(n))
        })
    ) {
        let c0 = set_of(&g, &flags);
        let tr = dynamics::run(&g, m, &c0, dynamics::default_limit(g.n())).unwrap();
        prop_assert_eq!(&tr, &dynamics::run(&g, m, &c0, dynamics::default_limit(g.n())).unwrap());
        if m.is_two_way() {
            let settled = matches!(tr.outcome(), Outcome::FixedPoint | Outcome::Cycle { period: 2, .. });
            prop_assert!(settled, "{:?}", tr.outcome());
        } else {
            prop_assert_eq!(tr.outcome(), Outcome::FixedPoint);
            prop_assert!(tr.rounds() <= g.n());
            prop_assert!(tr.configs().windows(2).all(|w| w[0].is_subset(&w[1])));
        }
    }

    #[test]
    fn core_potential_never_increases(
        (g, alpha, flags) in graph(2, 14, 0.4).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), alpha_in((3, 4), (1, 1)), subset(n))
        })
    ) {
        let m = ThresholdModel::two_way_alpha(alpha);
        let tr = dynamics::run(&g, m, &set_of(&g, &flags), dynamics::default_limit(g.n())).unwrap();
        let phi = Diagnostics::compute(&g, &tr).phi_core;
        prop_assert!(phi.windows(2).all(|w| w[1] <= w[0]), "{:?}", phi);
    }

    #[test]
    fn monotone_runs_shed_boundary(
        (g, alpha, flags) in graph(2, 10, 0.5).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), alpha_in((1, 2), (1, 1)), subset(n))
        })
    ) {
        let m = ThresholdModel::two_way_alpha(alpha);
        let opts = SearchOptions::default();
        let k = search::min_set(&g, m, Property::MonotoneDynamo, &opts).unwrap().min_size.unwrap();
        let mut sets = search::all_min_sets(&g, m, Property::MonotoneDynamo, k, &opts).unwrap();
        let wider = sets[0].union(&set_of(&g, &flags));
        if verdict(&g, m, Property::MonotoneDynamo, &wider) {
            sets.push(wider);
        }
        for d in sets {
            let tr = dynamics::run(&g, m, &d, dynamics::default_limit(g.n())).unwrap();
            let c = tr.configs();
            for t in 0..c.len() - 1 {
                let gained = c[t + 1].difference(&c[t]).len();
                prop_assert!(g.edge_boundary(&c[t + 1]) + gained <= g.edge_boundary(&c[t]));
            }
        }
    }

    #[test]
    fn implications_between_properties(
        (g, m, flags, extra) in graph_and_model(2, 12).prop_flat_map(|(g, m)| {
            let n = g.n();
            (Just(g), Just(m), subset(n), any::<Index>())
        })
    ) {
        prop_assume!(flags.iter().any(|&b| b));
        let s = set_of(&g, &flags);
        let holds = |p, s: &NodeSet| verdict(&g, m, p, s);
        let dynamo = holds(Property::Dynamo, &s);
        prop_assert!(!holds(Property::MonotoneDynamo, &s) || dynamo);
        prop_assert!(!holds(Property::Stable, &s) || holds(Property::Immortal, &s));
        let mut bigger = s.clone();
        bigger.insert(extra.index(g.n()));
        prop_assert!(!dynamo || holds(Property::Dynamo, &bigger));
        if !m.is_two_way() {
            prop_assert_eq!(dynamo, holds(Property::MonotoneDynamo, &s));
            let one = g.node_set([extra.index(g.n())]).unwrap();
            prop_assert!(holds(Property::Stable, &one) && holds(Property::Immortal, &one));
        }
        prop_assert!(holds(Property::Dynamo, &g.full_set()) && holds(Property::Stable, &g.full_set()));
    }

    #[test]
    fn graph_identities(g in graph(1, 20, 0.25), flags in subset(20)) {
        let a = set_of(&g, &flags[..g.n()]);
        let rest = a.complement();
        prop_assert_eq!(g.edge_boundary(&a) + g.edges_within(&a) + g.edges_within(&rest), g.m());
        prop_assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g.clone());
        match g.find_odd_cycle() {
            Ok(cycle) => {
                prop_assert!(!g.is_bipartite());
                prop_assert!(cycle.len() % 2 == 1 && cycle.len() >= 3);
                for i in 0..cycle.len() {
                    prop_assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
            }
            Err(_) => prop_assert!(g.is_bipartite()),
        }
    }

    #[test]
    fn labeling_sets_are_dynamos(
        (g, m) in graph(2, 14, 0.3).prop_flat_map(|g| {
            let d = g.min_degree();
            let one_way = prop_oneof![
                (1..=d).prop_map(ThresholdModel::r),
                alpha_in((0, 1), (1, 1)).prop_map(ThresholdModel::alpha),
            ];
            (Just(g), one_way)
        }),
        seed: u64,
    ) {
        let l = Labeling::random(g.n(), &mut ChaCha8Rng::seed_from_u64(seed));
        for l in [l.reversed(), l] {
            let d = l.dynamo_set(&g, m);
            prop_assert!(!d.is_empty());
            prop_assert!(verdict(&g, m, Property::Dynamo, &d));
        }
    }

    #[test]
    fn partition_is_locally_optimal(g in graph(2, 16, 0.3), alpha in alpha_in((0, 1), (1, 2))) {
        let rep = construct::stable_by_partition(&g, alpha).unwrap();
        prop_assert!(rep.report.certified);
        let part_of: Vec<usize> = (0..g.n())
            .map(|v| rep.parts.iter().position(|p| p.contains(v)).unwrap())
            .collect();
        for v in 0..g.n() {
            let own = part_of[v];
            if rep.parts[own].len() <= rep.size_floor {
                continue;
            }
            for (j, p) in rep.parts.iter().enumerate() {
                prop_assert!(j == own || g.degree_in(v, p) <= g.degree_in(v, &rep.parts[own]));
            }
        }
        let cut: usize = g.edges().iter().filter(|&&(u, v)| part_of[u] != part_of[v]).count();
        prop_assert_eq!(cut, rep.cut_edges);
        for v in rep.report.set.iter() {
            prop_assert!(alpha.reached(g.degree_in(v, &rep.report.set), g.degree(v)));
        }
        prop_assert!(rep.report.guarantee.ge_int(rep.report.size));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructions_never_beat_the_oracle(g in graph(3, 9, 0.45)) {
        let opts = SearchOptions::default();
        let r1 = construct::dynamo_twoway_r1(&g).unwrap();
        let best = search::min_set(&g, ThresholdModel::two_way_r(1), Property::Dynamo, &opts).unwrap();
        prop_assert!(r1.certified);
        prop_assert_eq!(Some(r1.size), best.min_size);
        let half = Alpha::new(1, 2).unwrap();
        let part = construct::stable_by_partition(&g, half).unwrap();
        let best = search::min_set(&g, ThresholdModel::two_way_alpha(half), Property::Stable, &opts).unwrap();
        prop_assert!(part.report.size >= best.min_size.unwrap());
        if g.min_degree() >= 2 {
            let imm = construct::immortal_r2(&g).unwrap();
            let best = search::min_set(&g, ThresholdModel::two_way_r(2), Property::Immortal, &opts).unwrap();
            prop_assert!(imm.report.certified);
            prop_assert!(imm.report.size >= best.min_size.unwrap());
            let lengths = cycle_lengths(&g);
            prop_assert_eq!(imm.longest_cycle.len(), *lengths.iter().max().unwrap());
            if lengths.iter().any(|&l| l % 2 == 0 || 2 * l <= g.n()) {
                prop_assert!(2 * imm.report.size <= g.n(), "{} via {}", imm.report.size, imm.case);
            }
        }
    }

    #[test]
    fn search_is_thread_count_independent((g, m) in graph_and_model(4, 9), p_ix: Index) {
        let p = Property::ALL[p_ix.index(Property::ALL.len())];
        let on = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| search::min_set(&g, m, p, &SearchOptions::default()).unwrap())
        };
        prop_assert_eq!(on(1), on(3));
    }
}
