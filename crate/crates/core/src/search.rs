//! Exhaustive minimum-set search.
//!
//! Subsets are visited by increasing size and lexicographically (as sorted id
//! tuples) within a size. Each size is split into contiguous rank ranges that
//! run in parallel; merging keeps the lexicographically least hit, so results
//! do not depend on the worker count.

use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{Certifier, Property, Verdict};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::ThresholdModel;
use crate::nodeset::NodeSet;

const CHUNK: u64 = 1024;

/// Largest universe the rank arithmetic supports.
pub const MAX_NODES: usize = 64;

pub fn default_cap(property: Property) -> usize {
    match property {
        Property::Dynamo | Property::MonotoneDynamo => 16,
        Property::Stable => 20,
        Property::Immortal => 24,
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Maximum node count; defaults to [`default_cap`].
    pub cap: Option<usize>,
    /// Stop after this subset size; `None` searches up to `n`.
    pub max_size: Option<usize>,
    /// Round budget per certification.
    pub limit: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub property: Property,
    #[serde(flatten)]
    pub model: ThresholdModel,
    pub n: usize,
    /// `None` when nothing certified up to `searched_up_to`.
    pub min_size: Option<usize>,
    pub witness: Option<NodeSet>,
    /// Subsets in enumeration order up to and including the witness.
    pub examined: u64,
    pub searched_up_to: usize,
    /// Subsets among `examined` whose run overran the budget.
    pub indeterminate: u64,
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
pub fn unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut c = 0;
    for i in 0..k {
        loop {
            let with_c = binomial(n - c - 1, k - i - 1);
            if rank < with_c {
                break;
            }
            rank -= with_c;
            c += 1;
        }
        out.push(c);
        c += 1;
    }
    out
}

/// Advances to the next `k`-subset in lexicographic order.
pub fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Visits the `k`-subsets with ranks in `start..end`, stopping early when `f`
/// returns `false`.
pub(crate) fn for_each_in_range(
    n: usize,
    k: usize,
    start: u64,
    end: u64,
    mut f: impl FnMut(u64, &NodeSet) -> bool,
) {
    if start >= end {
        return;
    }
    let mut combo = unrank(n, k, start);
    let mut set = NodeSet::empty(n);
    for rank in start..end {
        for &v in &combo {
            set.insert(v);
        }
        if !f(rank, &set) {
            return;
        }
        for &v in &combo {
            set.remove(v);
        }
        if !next_combination(&mut combo, n) {
            return;
        }
    }
}

pub(crate) fn chunk_bounds(total: u64) -> Vec<(u64, u64)> {
    (0..total.div_ceil(CHUNK))
        .map(|i| (i * CHUNK, ((i + 1) * CHUNK).min(total)))
        .collect()
}

fn check_cap(g: &Graph, property: Property, opts: &SearchOptions) -> Result<()> {
    let cap = opts.cap.unwrap_or_else(|| default_cap(property)).min(MAX_NODES);
    if g.n() > cap {
        return Err(Error::CapExceeded { n: g.n(), cap });
    }
    Ok(())
}

fn certifier<'g>(g: &'g Graph, m: ThresholdModel, opts: &SearchOptions) -> Result<Certifier<'g>> {
    let c = Certifier::new(g, m)?;
    Ok(match opts.limit {
        Some(l) => c.with_limit(l),
        None => c,
    })
}

/// Scans all `k`-subsets; the first certified rank and the count of
/// indeterminate subsets before it (or in total when nothing certified).
fn first_at_size(cert: &Certifier, property: Property, n: usize, k: usize) -> (Option<u64>, u64) {
    let chunks = chunk_bounds(binomial(n, k));
    let batch = rayon::current_num_threads().max(1) * 4;
    let mut indeterminate = 0;
    for group in chunks.chunks(batch) {
        let results: Vec<(Option<u64>, u64)> = group
            .par_iter()
            .map(|&(start, end)| {
                let mut hit = None;
                let mut unknown = 0;
                for_each_in_range(n, k, start, end, |rank, set| match cert.verdict(property, set) {
                    Verdict::Holds => {
                        hit = Some(rank);
                        false
                    }
                    Verdict::Indeterminate => {
                        unknown += 1;
                        true
                    }
                    Verdict::Fails => true,
                });
                (hit, unknown)
            })
            .collect();
        for (hit, unknown) in results {
            indeterminate += unknown;
            if hit.is_some() {
                return (hit, indeterminate);
            }
        }
    }
    (None, indeterminate)
}

/// Smallest certified set, lexicographically least among those of that size.
pub fn min_set(
    g: &Graph,
    m: ThresholdModel,
    property: Property,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    check_cap(g, property, opts)?;
    let cert = certifier(g, m, opts)?;
    let n = g.n();
    let top = opts.max_size.unwrap_or(n).min(n);
    let mut examined = 0;
    let mut indeterminate = 0;
    for k in 1..=top {
        let (hit, unknown) = first_at_size(&cert, property, n, k);
        indeterminate += unknown;
        if let Some(rank) = hit {
            let witness = g.node_set(unrank(n, k, rank))?;
            return Ok(SearchResult {
                property,
                model: m,
                n,
                min_size: Some(k),
                witness: Some(witness),
                examined: examined + rank + 1,
                searched_up_to: k,
                indeterminate,
            });
        }
        examined += binomial(n, k);
    }
    Ok(SearchResult {
        property,
        model: m,
        n,
        min_size: None,
        witness: None,
        examined,
        searched_up_to: top,
        indeterminate,
    })
}

/// Every certified set of exactly `size` nodes, in lexicographic order.
pub fn all_min_sets(
    g: &Graph,
    m: ThresholdModel,
    property: Property,
    size: usize,
    opts: &SearchOptions,
) -> Result<Vec<NodeSet>> {
    check_cap(g, property, opts)?;
    let cert = certifier(g, m, opts)?;
    let n = g.n();
    if size == 0 || size > n {
        return Ok(Vec::new());
    }
    let per_chunk: Vec<(Vec<NodeSet>, u64)> = chunk_bounds(binomial(n, size))
        .into_par_iter()
        .map(|(start, end)| {
            let mut hits = Vec::new();
            let mut unknown = 0;
            for_each_in_range(n, size, start, end, |_, set| {
                match cert.verdict(property, set) {
                    Verdict::Holds => hits.push(set.clone()),
                    Verdict::Indeterminate => unknown += 1,
                    Verdict::Fails => {}
                }
                true
            });
            (hits, unknown)
        })
        .collect();
    let unknown: u64 = per_chunk.iter().map(|c| c.1).sum();
    if unknown > 0 {
        return Err(Error::Precondition(format!(
            "{unknown} subsets of size {size} overran the round budget"
        )));
    }
    Ok(per_chunk.into_iter().flat_map(|c| c.0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators as gen;
    use crate::model::Alpha;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(40, 3), 9880);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(64, 32), 1832624140942590534);
    }

    #[test]
    fn unrank_matches_successor_order() {
        for n in 1..9 {
            for k in 1..=n {
                let mut combo: Vec<usize> = (0..k).collect();
                let mut rank = 0;
                loop {
                    assert_eq!(unrank(n, k, rank), combo);
                    rank += 1;
                    if !next_combination(&mut combo, n) {
                        break;
                    }
                }
                assert_eq!(rank, binomial(n, k));
            }
        }
    }

    #[test]
    fn complete_graph_min_dynamo_is_r() {
        let g = gen::complete(8).unwrap();
        let res = min_set(&g, ThresholdModel::two_way_r(3), Property::Dynamo, &Default::default()).unwrap();
        assert_eq!(res.min_size, Some(3));
        assert_eq!(res.witness.unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(res.examined, 8 + 28 + 1);
    }

    #[test]
    fn cycle_immortal_minima() {
        let m = ThresholdModel::two_way_r(2);
        let odd = min_set(&gen::cycle(7).unwrap(), m, Property::Immortal, &Default::default()).unwrap();
        assert_eq!(odd.min_size, Some(7));
        let even = min_set(&gen::cycle(8).unwrap(), m, Property::Immortal, &Default::default()).unwrap();
        assert_eq!(even.min_size, Some(4));
        assert_eq!(even.witness.unwrap().to_vec(), vec![0, 2, 4, 6]);
    }

    #[test]
    fn listing_examples() {
        let k6 = gen::complete(6).unwrap();
        let m = ThresholdModel::two_way_r(2);
        let all = all_min_sets(&k6, m, Property::Dynamo, 2, &Default::default()).unwrap();
        assert_eq!(all.len(), 15);
        let c6 = gen::cycle(6).unwrap();
        assert!(all_min_sets(&c6, m, Property::Dynamo, 5, &Default::default())
            .unwrap()
            .is_empty());
        let imm: Vec<Vec<usize>> = all_min_sets(&c6, m, Property::Immortal, 3, &Default::default())
            .unwrap()
            .iter()
            .map(NodeSet::to_vec)
            .collect();
        assert!(imm.contains(&vec![0, 2, 4]));
        assert!(imm.contains(&vec![1, 3, 5]));
    }

    #[test]
    fn cap_and_max_size() {
        let g = gen::cycle(20).unwrap();
        let m = ThresholdModel::two_way_r(2);
        assert!(matches!(
            min_set(&g, m, Property::Dynamo, &Default::default()),
            Err(Error::CapExceeded { n: 20, cap: 16 })
        ));
        let partial = min_set(
            &gen::cycle(9).unwrap(),
            m,
            Property::Immortal,
            &SearchOptions {
                max_size: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(partial.min_size, None);
        assert_eq!(partial.searched_up_to, 4);
        assert_eq!(partial.examined, 9 + 36 + 84 + 126);
    }

    #[test]
    fn independent_of_thread_count() {
        let g = gen::petersen();
        let m = ThresholdModel::two_way_alpha(Alpha::new(1, 2).unwrap());
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| min_set(&g, m, Property::Stable, &Default::default()).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
