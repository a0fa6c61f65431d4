//! Named graph families, including the extremal constructions that show the
//! bounds in [`crate::bounds`] are tight.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::Alpha;

fn too_small(what: &str, detail: String) -> Error {
    Error::Precondition(format!("{what}: {detail}"))
}

/// `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(too_small("complete", format!("need n >= 2, got {n}")));
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `C_n` on `0, 1, …, n−1` in cyclic order.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(too_small("cycle", format!("need n >= 3, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `P_n` on `n` nodes.
pub fn path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(too_small("path", format!("need n >= 2, got {n}")));
    }
    Graph::new(n, (0..n - 1).map(|i| (i, i + 1)))
}

/// The star `S_n`: internal node 0 joined to `leaves` leaves `1..=leaves`.
pub fn star(leaves: usize) -> Result<Graph> {
    if leaves < 2 {
        return Err(too_small("star", format!("need at least 2 leaves, got {leaves}")));
    }
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 || a + b < 2 {
        return Err(too_small("complete-bipartite", format!("sides {a}, {b}")));
    }
    Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).expect("petersen is valid")
}

/// `K_n` minus the perfect matching `{2i, 2i+1}`; `δ = n − 2`.
pub fn complete_minus_matching(n: usize) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(too_small(
            "complete-minus-matching",
            format!("need even n >= 4, got {n}"),
        ));
    }
    Graph::new(
        n,
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| !(u % 2 == 0 && v == u + 1)).map(move |v| (u, v))),
    )
}

/// A clique on `0..k` where each clique node gets `n/k − 1` private leaves.
pub fn clique_with_leaves(k: usize, n: usize) -> Result<Graph> {
    if k < 2 || n < k || !n.is_multiple_of(k) {
        return Err(too_small(
            "clique-with-leaves",
            format!("need k >= 2 and k | n, got k = {k}, n = {n}"),
        ));
    }
    let per = n / k - 1;
    let clique = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v)));
    let leaves = (0..k).flat_map(|c| (0..per).map(move |j| (c, k + c * per + j)));
    Graph::new(n, clique.chain(leaves))
}

/// Edges of the circulant `r`-regular graph on `offset..offset+l`: each node
/// joined to its `⌊r/2⌋` nearest nodes on each side, plus the antipodal node
/// when `r` is odd.
fn circulant_edges(r: usize, l: usize, offset: usize) -> Result<Vec<(usize, usize)>> {
    if l < r + 1 || (r * l) % 2 == 1 {
        return Err(too_small(
            "circulant",
            format!("no {r}-regular circulant on {l} nodes"),
        ));
    }
    let mut edges = Vec::with_capacity(r * l / 2);
    for i in 0..l {
        for s in 1..=r / 2 {
            edges.push((offset + i, offset + (i + s) % l));
        }
        if r % 2 == 1 && i < l / 2 {
            edges.push((offset + i, offset + i + l / 2));
        }
    }
    Ok(edges)
}

/// Deterministic `r`-regular circulant graph on `l` nodes.
pub fn circulant_regular(r: usize, l: usize) -> Result<Graph> {
    Graph::new(l, circulant_edges(r, l, 0)?)
}

/// Parameters of the chained-cliques construction for an even node count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainLayout {
    /// Number of gadget cliques `K = ⌊n/(r+1)⌋ − 1`.
    pub gadgets: usize,
    /// Size of the regular tail `ℓ = n − K(r+1)`.
    pub tail: usize,
}

impl ChainLayout {
    pub fn for_even(r: usize, n: usize) -> Result<Self> {
        let gadgets = (n / (r + 1)).saturating_sub(1);
        if gadgets == 0 {
            return Err(too_small(
                "regular-chain",
                format!("n = {n} leaves no room for a gadget at r = {r}"),
            ));
        }
        let tail = n - gadgets * (r + 1);
        if tail < r + 1 || (r * tail) % 2 == 1 {
            return Err(too_small(
                "regular-chain",
                format!("tail of {tail} nodes cannot be {r}-regular"),
            ));
        }
        Ok(ChainLayout { gadgets, tail })
    }
}

/// Node id of `v_i^{(j)}` (both 1-based) in [`regular_chain`].
pub fn chain_node(r: usize, i: usize, j: usize) -> usize {
    (i - 1) * (r + 1) + (j - 1)
}

/// A chain of `K_{r+1}`-minus-an-edge gadgets closed through an `r`-regular
/// circulant tail: an `r`-regular graph on even `n` with no immortal set
/// smaller than `n − 2r − 1` under two-way `r`-BP.
///
/// Gadget `i` occupies ids `chain_node(r, i, 1..=r+1)`; the tail follows. For
/// odd `n` the graph is built on `n − 1` nodes and an extra node (id `n − 1`)
/// is joined to `v_i^{(2)}` for `1 ≤ i ≤ r`, leaving `r` nodes of degree `r+1`.
pub fn regular_chain(r: usize, n: usize) -> Result<Graph> {
    if r < 3 {
        return Err(too_small("regular-chain", format!("need r >= 3, got {r}")));
    }
    let even_n = n - n % 2;
    let layout = ChainLayout::for_even(r, even_n)?;
    if n % 2 == 1 && layout.gadgets < r {
        return Err(too_small(
            "regular-chain",
            format!(
                "odd n needs at least r = {r} gadgets, got {}",
                layout.gadgets
            ),
        ));
    }
    let k = layout.gadgets;
    let mut edges = Vec::new();
    for i in 1..=k {
        for a in 1..=r + 1 {
            for b in a + 1..=r + 1 {
                if (a, b) != (1, 2) {
                    edges.push((chain_node(r, i, a), chain_node(r, i, b)));
                }
            }
        }
        if i < k {
            edges.push((chain_node(r, i, 2), chain_node(r, i + 1, 1)));
        }
    }
    let base = k * (r + 1);
    let tail = circulant_edges(r, layout.tail, base)?;
    // open the tail edge {base, base+1} and splice it into the chain ends
    let (v_tail, u_tail) = (base, base + 1);
    edges.extend(
        tail.into_iter()
            .filter(|&(a, b)| (a.min(b), a.max(b)) != (v_tail, u_tail)),
    );
    edges.push((v_tail, chain_node(r, 1, 1)));
    edges.push((u_tail, chain_node(r, k, 2)));
    if n % 2 == 1 {
        let w = n - 1;
        edges.extend((1..=r).map(|i| (chain_node(r, i, 2), w)));
    }
    Graph::new(n, edges)
}

/// A clique `V_2 = 0..s` with `s = ⌈1/(1−α)⌉`, a path `V_1 = s..n`, and the
/// bridge `{0, s}`. `V_2` is a stable set of the least possible size.
pub fn stable_tight(alpha: Alpha, n: usize) -> Result<Graph> {
    let s = alpha.ceil_inv_complement();
    if s + 1 > n {
        return Err(too_small(
            "stable-tight",
            format!("need n >= {} for alpha = {alpha}, got {n}", s + 1),
        ));
    }
    let clique = (0..s).flat_map(|u| (u + 1..s).map(move |v| (u, v)));
    let path = (s..n - 1).map(|i| (i, i + 1));
    Graph::new(n, clique.chain(path).chain(std::iter::once((0, s))))
}

/// Connected `G(n, p)` sample by rejection; gives up after 10 000 draws.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n < 2 || !(0.0..=1.0).contains(&p) {
        return Err(too_small("random", format!("n = {n}, p = {p}")));
    }
    for _ in 0..10_000 {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        match Graph::new(n, edges) {
            Ok(g) => return Ok(g),
            Err(Error::Structure(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Precondition(format!(
        "no connected G({n}, {p}) sample in 10000 draws"
    )))
}

/// Uniform random labeled tree on `n` nodes via a Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 2 {
        return Err(too_small("tree", format!("need n >= 2, got {n}")));
    }
    if n == 2 {
        return Graph::new(2, [(0, 1)]);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges)
}

/// Shuffles node ids; useful to check that results do not depend on labels.
pub fn relabel<R: Rng>(g: &Graph, rng: &mut R) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    Graph::new(g.n(), g.edges().iter().map(|&(u, v)| (perm[u], perm[v])))
        .expect("relabeling preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn degrees(g: &Graph) -> Vec<usize> {
        (0..g.n()).map(|v| g.degree(v)).collect()
    }

    #[test]
    fn basic_families() {
        assert_eq!(complete(4).unwrap().m(), 6);
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.m(), 5);
        assert!(degrees(&c5).iter().all(|&d| d == 2));
        let s = star(4).unwrap();
        assert_eq!(s.n(), 5);
        assert_eq!(s.degree(0), 4);
        assert!(complete(1).is_err());
        assert!(cycle(2).is_err());
        assert!(star(1).is_err());
    }

    #[test]
    fn petersen_is_cubic() {
        let p = petersen();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(degrees(&p).iter().all(|&d| d == 3));
        assert!(!p.is_bipartite());
    }

    #[test]
    fn clique_with_leaves_shape() {
        let g = clique_with_leaves(4, 16).unwrap();
        assert_eq!(g.n(), 16);
        for c in 0..4 {
            assert_eq!(g.degree(c), 6);
        }
        let leaves = (0..16).filter(|&v| g.degree(v) == 1).count();
        assert_eq!(leaves, 4 * (16 / 4 - 1));
        assert_eq!(clique_with_leaves(5, 5).unwrap(), complete(5).unwrap());
        assert!(clique_with_leaves(3, 7).is_err());
    }

    #[test]
    fn regular_chain_even() {
        let g = regular_chain(3, 18).unwrap();
        assert_eq!((g.n(), g.m()), (18, 27));
        assert!(degrees(&g).iter().all(|&d| d == 3));
        // K = 3 gadgets of 4 nodes, tail of 6
        assert_eq!(ChainLayout::for_even(3, 18).unwrap(), ChainLayout { gadgets: 3, tail: 6 });
        for i in 1..=3 {
            assert!(!g.has_edge(chain_node(3, i, 1), chain_node(3, i, 2)));
        }
    }

    #[test]
    fn regular_chain_odd_has_r_heavy_nodes() {
        let g = regular_chain(3, 17).unwrap();
        assert_eq!(g.n(), 17);
        let d = degrees(&g);
        assert_eq!(d.iter().filter(|&&x| x == 4).count(), 3);
        assert_eq!(d.iter().filter(|&&x| x == 3).count(), 14);
    }

    #[test]
    fn regular_chain_feasibility() {
        // K = ⌊8/4⌋ − 1 = 1, ℓ = 4 = r + 1: one gadget closed by a K_4 tail
        let g = regular_chain(3, 8).unwrap();
        assert!(degrees(&g).iter().all(|&d| d == 3));
        // K = ⌊6/4⌋ − 1 = 0
        assert!(regular_chain(3, 6).is_err());
        // odd n = 9 gives K = 1 < r
        assert!(regular_chain(3, 9).is_err());
        assert!(regular_chain(2, 18).is_err());
        for r in 3..7 {
            for n in (2 * (r + 1)..60).step_by(2) {
                let g = regular_chain(r, n).unwrap();
                assert!(degrees(&g).iter().all(|&d| d == r), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn circulant_is_regular() {
        for r in 2..7 {
            for l in r + 1..20 {
                if (r * l) % 2 == 0 {
                    let g = circulant_regular(r, l).unwrap();
                    assert!(degrees(&g).iter().all(|&d| d == r), "r={r} l={l}");
                } else {
                    assert!(circulant_regular(r, l).is_err());
                }
            }
        }
    }

    #[test]
    fn stable_tight_sizes() {
        let half = Alpha::new(1, 2).unwrap();
        let g = stable_tight(half, 10).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.degree(0), 2);
        let g = stable_tight(Alpha::new(3, 4).unwrap(), 10).unwrap();
        assert_eq!(g.degree(1), 3); // clique of 4
        let g = stable_tight(Alpha::new(2, 3).unwrap(), 4).unwrap();
        assert_eq!(g.m(), 3 + 1);
        assert!(stable_tight(Alpha::new(2, 3).unwrap(), 3).is_err());
    }

    #[test]
    fn complete_minus_matching_degrees() {
        let g = complete_minus_matching(20).unwrap();
        assert!(degrees(&g).iter().all(|&d| d == 18));
        assert!(!g.has_edge(0, 1));
        assert!(complete_minus_matching(7).is_err());
    }

    #[test]
    fn random_families_are_valid_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for n in 2..15 {
            let t = random_tree(n, &mut a).unwrap();
            assert!(t.is_tree());
            assert_eq!(t, random_tree(n, &mut b).unwrap());
            let g = random_connected(n, 0.4, &mut a).unwrap();
            assert_eq!(g, random_connected(n, 0.4, &mut b).unwrap());
        }
    }

    #[test]
    fn every_generator_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let graphs = vec![
            complete(6).unwrap(),
            cycle(7).unwrap(),
            path(5).unwrap(),
            star(5).unwrap(),
            complete_bipartite(2, 3).unwrap(),
            petersen(),
            complete_minus_matching(8).unwrap(),
            clique_with_leaves(3, 12).unwrap(),
            regular_chain(3, 18).unwrap(),
            regular_chain(3, 17).unwrap(),
            stable_tight(Alpha::new(4, 5).unwrap(), 9).unwrap(),
            random_tree(11, &mut rng).unwrap(),
            random_connected(12, 0.3, &mut rng).unwrap(),
        ];
        for g in graphs {
            assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
        }
    }
}
