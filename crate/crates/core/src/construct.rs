//! Constructive algorithms that produce certified sets.
//!
//! Every report is re-certified by simulation; the `certified` flag is never
//! taken from the construction's own guarantee.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, BoundValue, GraphParams};
use crate::certify::{Certifier, Property, Verdict};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{Alpha, ThresholdModel};
use crate::nodeset::NodeSet;
use crate::search::{binomial, chunk_bounds, for_each_in_range, next_combination};

/// Node count above which the exact longest-cycle search refuses to run.
pub const LONGEST_CYCLE_GUARD: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub construction: &'static str,
    pub property: Property,
    #[serde(flatten)]
    pub model: ThresholdModel,
    pub set: NodeSet,
    pub size: usize,
    /// Size the construction is guaranteed not to exceed.
    pub guarantee: BoundValue,
    pub certified: bool,
}

fn report(
    g: &Graph,
    construction: &'static str,
    property: Property,
    model: ThresholdModel,
    set: NodeSet,
    guarantee: BoundValue,
) -> Result<ConstructionReport> {
    let certified = Certifier::new(g, model)?.verdict(property, &set) == Verdict::Holds;
    Ok(ConstructionReport {
        construction,
        property,
        model,
        size: set.len(),
        set,
        guarantee,
        certified,
    })
}

/// A bijection from nodes to labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    label: Vec<usize>,
}

impl Labeling {
    /// From `label[v]` for each node; must be a permutation of `1..=n`.
    pub fn new(label: Vec<usize>) -> Result<Self> {
        let n = label.len();
        let mut seen = vec![false; n + 1];
        for &l in &label {
            if l == 0 || l > n || std::mem::replace(&mut seen[l], true) {
                return Err(Error::Precondition(format!(
                    "labels must be a permutation of 1..={n}"
                )));
            }
        }
        Ok(Labeling { label })
    }

    /// Nodes listed in increasing label order.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let mut label = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            if v >= order.len() {
                return Err(Error::NodeOutOfRange { node: v, n: order.len() });
            }
            label[v] = i + 1;
        }
        Labeling::new(label)
    }

    pub fn random(n: usize, rng: &mut ChaCha8Rng) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        Labeling::from_order(&order).expect("a shuffle is a permutation")
    }

    /// The order read backwards; uniform whenever `self` is.
    pub fn reversed(&self) -> Self {
        let n = self.label.len();
        Labeling {
            label: self.label.iter().map(|&l| n + 1 - l).collect(),
        }
    }

    pub fn label(&self, v: usize) -> usize {
        self.label[v]
    }

    /// `D_L`: nodes with fewer lower-labelled neighbors than their threshold.
    pub fn dynamo_set(&self, g: &Graph, m: ThresholdModel) -> NodeSet {
        let mut d = g.empty_set();
        for v in 0..g.n() {
            let lower = g
                .neighbors(v)
                .iter()
                .filter(|&&u| self.label[u] < self.label[v])
                .count();
            if lower < m.required(g.degree(v)) {
                d.insert(v);
            }
        }
        d
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelingReport {
    #[serde(flatten)]
    pub report: ConstructionReport,
    pub seed: u64,
    /// `|D_L|` for each sampled labeling, in draw order.
    pub sizes: Vec<usize>,
    /// Sampled `D_L` that did not certify.
    pub failures: usize,
    /// Exact expectation of `|D_L|` over uniform labelings.
    pub expectation: BoundValue,
    pub mean: f64,
    /// Closed-form upper bound from the minimum degree.
    pub closed_form: BoundValue,
}

/// Smallest `D_L` over `samples` seeded random labelings, for one-way models.
///
/// Labelings come in antithetic pairs `L`, reverse `L`: each is uniform, so
/// the sample mean stays unbiased, with lower variance than independent draws.
pub fn dynamo_by_labeling(
    g: &Graph,
    m: ThresholdModel,
    seed: u64,
    samples: usize,
) -> Result<LabelingReport> {
    if m.is_two_way() {
        return Err(Error::Model(format!(
            "labeling dynamos need a one-way model, got {}",
            m.name()
        )));
    }
    if samples == 0 {
        return Err(Error::Precondition("samples must be at least 1".into()));
    }
    let cert = Certifier::new(g, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = Vec::with_capacity(samples);
    let mut last: Option<Labeling> = None;
    for _ in 0..samples {
        let l = match last.take() {
            Some(prev) => prev.reversed(),
            None => {
                let l = Labeling::random(g.n(), &mut rng);
                last = Some(l.clone());
                l
            }
        };
        sets.push(l.dynamo_set(g, m));
    }
    let failures = sets
        .par_iter()
        .filter(|d| cert.verdict(Property::Dynamo, d) != Verdict::Holds)
        .count();
    let sizes: Vec<usize> = sets.iter().map(NodeSet::len).collect();
    let best = (0..samples).min_by_key(|&i| sizes[i]).expect("samples ≥ 1");
    let expectation = BoundValue::rational(bounds::labeling_expectation(g, m)?);
    let closed_form = bounds::dynamo_bounds(m, &GraphParams::of(g))?.upper;
    let mean = sizes.iter().sum::<usize>() as f64 / samples as f64;
    let rep = report(
        g,
        "labeling",
        Property::Dynamo,
        m,
        sets[best].clone(),
        closed_form.clone(),
    )?;
    Ok(LabelingReport {
        report: rep,
        seed,
        sizes,
        failures,
        expectation,
        mean,
        closed_form,
    })
}

/// Minimum dynamo in two-way 1-BP: an edge when bipartite, else a node on an
/// odd cycle.
pub fn dynamo_twoway_r1(g: &Graph) -> Result<ConstructionReport> {
    let m = ThresholdModel::two_way_r(1);
    m.validate(g)?;
    let (set, size) = if g.is_bipartite() {
        let (u, v) = g.edges()[0];
        (g.node_set([u, v])?, 2)
    } else {
        (g.node_set([g.find_odd_cycle()?[0]])?, 1)
    };
    report(g, "twoway-r1", Property::Dynamo, m, set, BoundValue::integer(size))
}

#[derive(Clone, Debug, Serialize)]
pub struct DenseReport {
    #[serde(flatten)]
    pub report: ConstructionReport,
    pub seed: u64,
    /// The `(2r−1)`-set the dynamo was drawn from.
    pub pool: NodeSet,
    /// Nodes with at least `r` neighbors in the returned set.
    pub reached: usize,
    /// The proof's floor `n/(2r)^{2r}` on `reached`.
    pub reached_floor: BoundValue,
}

/// Size-`r` two-way dynamo in a graph with `δ ≥ n/2 + r`.
pub fn dense_small_dynamo(g: &Graph, r: usize, seed: u64) -> Result<DenseReport> {
    let (n, delta) = (g.n(), g.min_degree());
    if r == 0 {
        return Err(Error::Model("r must be at least 1".into()));
    }
    if !bounds::gunderson_condition(n, delta, r) {
        return Err(Error::Precondition(format!(
            "minimum degree {delta} is below n/2 + r = {n}/2 + {r}"
        )));
    }
    let m = ThresholdModel::two_way_r(r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = rand::seq::index::sample(&mut rng, n, 2 * r - 1).into_vec();
    pool.sort_unstable();
    let reached = |d: &NodeSet| (0..n).filter(|&v| g.degree_in(v, d) >= r).count();
    let mut best: Option<(usize, NodeSet)> = None;
    let mut pick: Vec<usize> = (0..r).collect();
    loop {
        let d = g.node_set(pick.iter().map(|&i| pool[i]))?;
        let c = reached(&d);
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            best = Some((c, d));
        }
        if !next_combination(&mut pick, pool.len()) {
            break;
        }
    }
    let (count, set) = best.expect("at least one subset");
    let floor = BigRational::new(n.into(), (2 * r).pow(2 * r as u32).into());
    Ok(DenseReport {
        report: report(g, "dense-small", Property::Dynamo, m, set, BoundValue::integer(r))?,
        seed,
        pool: g.node_set(pool)?,
        reached: count,
        reached_floor: BoundValue::rational(floor),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynamoCount {
    pub r: usize,
    pub count: u64,
    pub examined: u64,
    pub total: u64,
    /// Set when the budget stopped the enumeration early.
    pub partial: bool,
    pub indeterminate: u64,
}

/// Number of `r`-subsets that are two-way r-BP dynamos.
pub fn count_small_dynamos(g: &Graph, r: usize, budget: Option<u64>) -> Result<DynamoCount> {
    let cert = Certifier::new(g, ThresholdModel::two_way_r(r))?;
    let n = g.n();
    let total = binomial(n, r);
    let examined = budget.map_or(total, |b| b.min(total));
    let (count, indeterminate) = chunk_bounds(examined)
        .into_par_iter()
        .map(|(start, end)| {
            let (mut hits, mut unknown) = (0u64, 0u64);
            for_each_in_range(n, r, start, end, |_, set| {
                match cert.verdict(Property::Dynamo, set) {
                    Verdict::Holds => hits += 1,
                    Verdict::Indeterminate => unknown += 1,
                    Verdict::Fails => {}
                }
                true
            });
            (hits, unknown)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(DynamoCount {
        r,
        count,
        examined,
        total,
        partial: examined < total,
        indeterminate,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    #[serde(flatten)]
    pub report: ConstructionReport,
    /// `c = ⌊1/α⌋`.
    pub parts_count: usize,
    pub parts: Vec<NodeSet>,
    pub cut_edges: usize,
    pub moves: usize,
    /// Smallest size any part is allowed to shrink to.
    pub size_floor: usize,
}

/// Local search for a min-cut partition into `⌊1/α⌋` parts under a size
/// floor; returns its largest part, which is stable in two-way α-BP.
pub fn stable_by_partition(g: &Graph, alpha: Alpha) -> Result<PartitionReport> {
    if alpha.cmp_frac(1, 2) == std::cmp::Ordering::Greater {
        return Err(Error::Precondition(format!("partition construction needs alpha <= 1/2, got {alpha}")));
    }
    let n = g.n();
    let c = alpha.floor_inv();
    let size_floor = (n / c).saturating_sub(1);
    let mut part: Vec<usize> = (0..n).map(|v| v % c).collect();
    let mut sizes = vec![0usize; c];
    for &p in &part {
        sizes[p] += 1;
    }
    let mut moves = 0;
    let mut counts = vec![0usize; c];
    loop {
        let mut moved = false;
        for v in 0..n {
            let from = part[v];
            if sizes[from] <= size_floor {
                continue;
            }
            counts.iter_mut().for_each(|x| *x = 0);
            for &u in g.neighbors(v) {
                counts[part[u]] += 1;
            }
            let to = (0..c).max_by_key(|&p| (counts[p], std::cmp::Reverse(p))).expect("c ≥ 2");
            if counts[to] > counts[from] {
                part[v] = to;
                sizes[from] -= 1;
                sizes[to] += 1;
                moves += 1;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    let parts: Vec<NodeSet> = (0..c)
        .map(|p| g.node_set((0..n).filter(|&v| part[v] == p)))
        .collect::<Result<_>>()?;
    let cut_edges = g.edges().iter().filter(|&&(u, v)| part[u] != part[v]).count();
    let largest = (0..c).max_by_key(|&p| (sizes[p], std::cmp::Reverse(p))).expect("c ≥ 2");
    let (stable, _) = bounds::stable_immortal_bounds(
        ThresholdModel::two_way_alpha(alpha),
        &GraphParams::new(n),
    )?;
    Ok(PartitionReport {
        report: report(
            g,
            "partition",
            Property::Stable,
            ThresholdModel::two_way_alpha(alpha),
            parts[largest].clone(),
            stable.upper,
        )?,
        parts_count: c,
        parts,
        cut_edges,
        moves,
        size_floor,
    })
}

/// A longest simple cycle (at least 3 nodes), in cyclic order starting at its
/// smallest node; `None` for forests.
pub fn longest_cycle(g: &Graph) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n > LONGEST_CYCLE_GUARD {
        return Err(Error::CapExceeded { n, cap: LONGEST_CYCLE_GUARD });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let mut best: Vec<usize> = Vec::new();
    for s in 0..n {
        let allowed = !0u64 << s & mask(n);
        if (allowed.count_ones() as usize) <= best.len() {
            break;
        }
        let mut path = vec![s];
        extend(&adj, s, allowed, 1 << s, &mut path, &mut best, n);
        if best.len() == n {
            break;
        }
    }
    Ok((best.len() >= 3).then_some(best))
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

fn extend(
    adj: &[u64],
    s: usize,
    allowed: u64,
    visited: u64,
    path: &mut Vec<usize>,
    best: &mut Vec<usize>,
    n: usize,
) {
    let last = *path.last().expect("non-empty path");
    if path.len() >= 3 && adj[last] >> s & 1 == 1 && path.len() > best.len() {
        *best = path.clone();
        if best.len() == n {
            return;
        }
    }
    let free = allowed & !visited;
    if path.len() + free.count_ones() as usize <= best.len() {
        return;
    }
    let mut next = adj[last] & free;
    while next != 0 {
        let u = next.trailing_zeros() as usize;
        next &= next - 1;
        path.push(u);
        extend(adj, s, allowed, visited | 1 << u, path, best, n);
        path.pop();
        if best.len() == n {
            return;
        }
    }
}

/// The cheapest immortal set a single cycle yields: alternate nodes of an
/// even cycle, every node of an odd one.
fn cycle_set(cycle: &[usize]) -> Vec<usize> {
    if cycle.len().is_multiple_of(2) {
        cycle.iter().skip(1).step_by(2).copied().collect()
    } else {
        cycle.to_vec()
    }
}

fn cycle_cost(len: usize) -> usize {
    if len.is_multiple_of(2) {
        len / 2
    } else {
        len
    }
}

/// Cycle minimizing [`cycle_cost`], by exhaustive search with pruning.
fn cheapest_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut best: Option<Vec<usize>> = None;
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    fn go(
        g: &Graph,
        s: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        best: &mut Option<Vec<usize>>,
    ) {
        let last = *path.last().expect("non-empty path");
        let bound = best.as_ref().map_or(usize::MAX, |b| cycle_cost(b.len()));
        if path.len() >= 3 && g.has_edge(last, s) && cycle_cost(path.len()) < bound {
            *best = Some(path.clone());
        }
        let bound = best.as_ref().map_or(usize::MAX, |b| cycle_cost(b.len()));
        // any extension closes into a cycle of at least path.len()+1 nodes
        if (path.len() + 2) / 2 >= bound {
            return;
        }
        for &u in g.neighbors(last) {
            if u > s && !on_path[u] {
                on_path[u] = true;
                path.push(u);
                go(g, s, path, on_path, best);
                path.pop();
                on_path[u] = false;
            }
        }
    }
    for s in 0..n {
        path.push(s);
        on_path[s] = true;
        go(g, s, &mut path, &mut on_path, &mut best);
        on_path[s] = false;
        path.pop();
    }
    best
}

#[derive(Clone, Debug, Serialize)]
pub struct ImmortalReport {
    #[serde(flatten)]
    pub report: ConstructionReport,
    pub longest_cycle: Vec<usize>,
    /// The cycle the returned set comes from.
    pub cycle: Vec<usize>,
    /// Which branch of the case analysis produced the set.
    pub case: &'static str,
}

/// Immortal set for two-way 2-BP from a longest cycle.
pub fn immortal_r2(g: &Graph) -> Result<ImmortalReport> {
    let m = ThresholdModel::two_way_r(2);
    m.validate(g)?;
    let n = g.n();
    let c = longest_cycle(g)?.expect("minimum degree 2 forces a cycle");
    let k = c.len();
    let (cycle, case) = if k % 2 == 0 {
        (c.clone(), "even longest cycle")
    } else if 2 * k <= n {
        (c.clone(), "short longest cycle")
    } else if k < n {
        detour(g, &c)
    } else {
        // odd Hamiltonian cycle: no n/2 guarantee; take the best cycle overall
        (cheapest_cycle(g).expect("graph has a cycle"), "odd hamiltonian")
    };
    let set = g.node_set(cycle_set(&cycle))?;
    let (_, immortal) = bounds::stable_immortal_bounds(m, &GraphParams::new(n))?;
    Ok(ImmortalReport {
        report: report(g, "immortal-r2", Property::Immortal, m, set, immortal.upper)?,
        longest_cycle: c,
        cycle,
        case,
    })
}

/// Walks off an odd cycle `c` through the outside nodes until it returns to
/// `c` or closes on itself, and returns the cycle this produces.
fn detour(g: &Graph, c: &[usize]) -> (Vec<usize>, &'static str) {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in c.iter().enumerate() {
        pos[v] = i;
    }
    let on_cycle = |v: usize| pos[v] != usize::MAX;
    let (w1, u) = (0..n)
        .filter(|&w| !on_cycle(w))
        .find_map(|w| g.neighbors(w).iter().find(|&&x| on_cycle(x)).map(|&x| (w, x)))
        .expect("connected graph with nodes off the cycle");
    let mut walk = vec![w1];
    let mut prev = u;
    loop {
        let cur = *walk.last().expect("non-empty walk");
        let next = *g
            .neighbors(cur)
            .iter()
            .find(|&&x| x != prev)
            .expect("minimum degree 2");
        if on_cycle(next) {
            if next == u {
                let mut cyc = vec![u];
                cyc.extend(&walk);
                return (cyc, "detour back to the same node");
            }
            // path u, w_1..w_j, next plus either arc of c between next and u
            let k = c.len();
            let (pu, px) = (pos[u], pos[next]);
            let arc = |from: usize, to: usize, step: usize| {
                let mut out = Vec::new();
                let mut i = from;
                while i != to {
                    i = (i + step) % k;
                    out.push(c[i]);
                }
                out
            };
            // closing arcs from next back to u, excluding next itself
            let forward = arc(px, pu, 1);
            let backward = arc(px, pu, k - 1);
            let mut base = vec![u];
            base.extend(&walk);
            base.push(next);
            for closing in [forward, backward] {
                let mut cyc = base.clone();
                cyc.extend(&closing[..closing.len() - 1]);
                if cyc.len() % 2 == 0 {
                    return (cyc, "detour to another node");
                }
            }
            unreachable!("an odd cycle split by a path leaves one even side");
        }
        if let Some(j) = walk.iter().position(|&w| w == next) {
            return (walk[j..].to_vec(), "detour closes outside");
        }
        prev = cur;
        walk.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators as gen;

    fn a(p: u64, q: u64) -> Alpha {
        Alpha::new(p, q).unwrap()
    }

    fn is_cycle(g: &Graph, c: &[usize]) -> bool {
        let mut seen = std::collections::HashSet::new();
        c.len() >= 3
            && c.iter().all(|&v| seen.insert(v))
            && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
    }

    #[test]
    fn labeling_star_center_first() {
        let g = gen::star(5).unwrap();
        let l = Labeling::from_order(&[0, 1, 2, 3, 4, 5]).unwrap();
        let d = l.dynamo_set(&g, ThresholdModel::alpha(a(1, 2)));
        assert_eq!(d.to_vec(), vec![0]);
    }

    #[test]
    fn labeling_clique_takes_first_labels() {
        let g = gen::complete(5).unwrap();
        let m = ThresholdModel::alpha(a(1, 2));
        for order in [[0, 1, 2, 3, 4], [4, 2, 0, 3, 1]] {
            let d = Labeling::from_order(&order).unwrap().dynamo_set(&g, m);
            assert_eq!(d.to_vec().len(), 2);
            assert!(d.contains(order[0]) && d.contains(order[1]));
        }
    }

    #[test]
    fn reversed_labeling_flips_order() {
        let l = Labeling::from_order(&[2, 0, 1]).unwrap();
        let r = l.reversed();
        assert_eq!((r.label(2), r.label(0), r.label(1)), (3, 2, 1));
        assert_eq!(r.reversed(), l);
    }

    #[test]
    fn labeling_rejects_non_bijections() {
        assert!(Labeling::new(vec![1, 1, 2]).is_err());
        assert!(Labeling::new(vec![0, 1, 2]).is_err());
        assert!(Labeling::new(vec![3, 1, 2]).is_ok());
    }

    #[test]
    fn labeling_more_samples_never_worse() {
        let g = gen::petersen();
        let m = ThresholdModel::alpha(a(2, 3));
        let few = dynamo_by_labeling(&g, m, 7, 5).unwrap();
        let many = dynamo_by_labeling(&g, m, 7, 40).unwrap();
        assert!(many.report.size <= few.report.size);
        assert_eq!(&many.sizes[..5], &few.sizes[..]);
        assert_eq!(many.failures, 0);
        assert!(many.report.certified);
    }

    #[test]
    fn twoway_r1_examples() {
        assert_eq!(dynamo_twoway_r1(&gen::cycle(6).unwrap()).unwrap().size, 2);
        assert_eq!(dynamo_twoway_r1(&gen::cycle(5).unwrap()).unwrap().size, 1);
        let k4 = dynamo_twoway_r1(&gen::complete(4).unwrap()).unwrap();
        assert_eq!(k4.size, 1);
        assert!(k4.certified);
    }

    #[test]
    fn dense_examples() {
        let g = gen::complete(12).unwrap();
        let rep = dense_small_dynamo(&g, 2, 1).unwrap();
        assert_eq!(rep.report.size, 2);
        assert!(rep.report.certified);
        let rep = dense_small_dynamo(&gen::complete_minus_matching(20).unwrap(), 2, 3).unwrap();
        assert_eq!(rep.report.size, 2);
        assert!(rep.report.certified);
        assert!(matches!(
            dense_small_dynamo(&gen::path(10).unwrap(), 2, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_small_dynamos(&gen::complete(6).unwrap(), 2, None).unwrap().count, 15);
        assert_eq!(count_small_dynamos(&gen::cycle(6).unwrap(), 2, None).unwrap().count, 0);
        assert!(count_small_dynamos(&gen::cycle(6).unwrap(), 0, None).is_err());
        let part = count_small_dynamos(&gen::complete(6).unwrap(), 2, Some(4)).unwrap();
        assert_eq!((part.count, part.partial), (4, true));
    }

    #[test]
    fn partition_examples() {
        let k4 = stable_by_partition(&gen::complete(4).unwrap(), a(1, 2)).unwrap();
        assert!(k4.report.certified);
        let c8 = stable_by_partition(&gen::cycle(8).unwrap(), a(1, 2)).unwrap();
        assert!(c8.report.certified);
        assert!(c8.report.guarantee.ge_int(c8.report.size));
        assert!(stable_by_partition(&gen::cycle(8).unwrap(), a(3, 4)).is_err());
    }

    #[test]
    fn longest_cycles() {
        assert_eq!(longest_cycle(&gen::petersen()).unwrap().unwrap().len(), 9);
        assert_eq!(longest_cycle(&gen::complete(7).unwrap()).unwrap().unwrap().len(), 7);
        assert_eq!(longest_cycle(&gen::path(5).unwrap()).unwrap(), None);
        let c = longest_cycle(&gen::complete_bipartite(3, 5).unwrap()).unwrap().unwrap();
        assert_eq!(c.len(), 6);
        assert!(is_cycle(&gen::complete_bipartite(3, 5).unwrap(), &c));
        assert!(longest_cycle(&gen::cycle(25).unwrap()).is_err());
    }

    #[test]
    fn immortal_examples() {
        let c6 = immortal_r2(&gen::cycle(6).unwrap()).unwrap();
        assert_eq!(c6.report.set.to_vec(), vec![1, 3, 5]);
        assert!(c6.report.certified);
        let c5 = immortal_r2(&gen::cycle(5).unwrap()).unwrap();
        assert_eq!(c5.report.size, 5);
        let p = immortal_r2(&gen::petersen()).unwrap();
        assert!(p.report.certified);
        assert!(p.report.size <= 5);
        assert!(is_cycle(&gen::petersen(), &p.cycle));
    }

    #[test]
    fn detour_branches_stay_within_half() {
        // C_5 on 0..5 plus a pendant triangle 5-6-7 hung on node 0
        let g = Graph::new(
            8,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (7, 5)],
        )
        .unwrap();
        let rep = immortal_r2(&g).unwrap();
        assert!(rep.report.certified);
        assert!(rep.report.size <= 4);
        assert!(is_cycle(&g, &rep.cycle));
        // C_7 with a chord path of two outside nodes from 0 to 3
        let g = Graph::new(
            9,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 7), (7, 8), (8, 3)],
        )
        .unwrap();
        let rep = immortal_r2(&g).unwrap();
        assert!(rep.report.certified);
        assert!(is_cycle(&g, &rep.cycle));
    }
}
