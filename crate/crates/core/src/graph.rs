//! Simple undirected connected graphs and the edge-list text format.
//!
//! ```text
//! # comment lines start with '#'
//! <n> <m>
//! <u> <v>      (m lines, 0-based ids)
//! ```

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

/// Immutable simple connected graph on nodes `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Normalized `(u, v)` with `u < v`, sorted.
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    rows: Vec<NodeSet>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges, out-of-range ids and
    /// disconnected inputs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structure("graph has no nodes".into()));
        }
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::NodeOutOfRange { node: u.max(v), n });
            }
            if u == v {
                return Err(Error::Structure(format!("self-loop at node {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Structure(format!("duplicate edge {{{u}, {v}}}")));
            }
        }
        let edges: Vec<_> = seen.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        let mut rows = vec![NodeSet::empty(n); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
            rows[u].insert(v);
            rows[v].insert(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let g = Graph { n, edges, adj, rows };
        if !g.reachable_from(0).is_full() {
            return Err(Error::Structure("graph is disconnected".into()));
        }
        Ok(g)
    }

    /// Parses the edge-list format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header \"n m\"".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, l) = lines.next().ok_or_else(|| Error::Parse {
                line: hline,
                message: format!("expected {m} edges, found {}", edges.len()),
            })?;
            edges.push(parse_pair(line, l)?);
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                message: format!("trailing content after {m} edges"),
            });
        }
        Graph::new(n, edges)
    }

    /// Serializes to the edge-list format; `parse` inverts it exactly.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::with_capacity(8 * (self.edges.len() + 1));
        let _ = writeln!(s, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Neighborhood of `v` as a bit row.
    #[inline]
    pub fn row(&self, v: usize) -> &NodeSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `|Γ(v) ∩ set|`.
    #[inline]
    pub fn degree_in(&self, v: usize, set: &NodeSet) -> usize {
        self.rows[v].intersection_len(set)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.rows[u].contains(v)
    }

    pub fn is_tree(&self) -> bool {
        self.m() + 1 == self.n
    }

    pub fn empty_set(&self) -> NodeSet {
        NodeSet::empty(self.n)
    }

    pub fn full_set(&self) -> NodeSet {
        NodeSet::full(self.n)
    }

    /// Builds a node set, checking every id against `n`.
    pub fn node_set(&self, ids: impl IntoIterator<Item = usize>) -> Result<NodeSet> {
        NodeSet::from_ids(self.n, ids).map_err(|node| Error::NodeOutOfRange { node, n: self.n })
    }

    pub(crate) fn check_set(&self, s: &NodeSet) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::Precondition(format!(
                "node set over {} nodes used with a graph on {} nodes",
                s.universe(),
                self.n
            )));
        }
        Ok(())
    }

    /// `|∂(A)|`: edges with exactly one endpoint in `a`.
    pub fn edge_boundary(&self, a: &NodeSet) -> usize {
        a.iter().map(|v| self.degree(v) - self.degree_in(v, a)).sum()
    }

    /// Number of edges with both endpoints in `a`.
    pub fn edges_within(&self, a: &NodeSet) -> usize {
        a.iter().map(|v| self.degree_in(v, a)).sum::<usize>() / 2
    }

    fn reachable_from(&self, s: usize) -> NodeSet {
        let mut seen = NodeSet::empty(self.n);
        let mut stack = vec![s];
        seen.insert(s);
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Breadth-first 2-coloring from node 0: colors, BFS parents, depths and
    /// the first monochromatic edge in scan order, if any.
    fn bfs_coloring(&self) -> (Vec<u8>, Vec<usize>, Vec<usize>, Option<(usize, usize)>) {
        let mut color = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut depth = vec![0; self.n];
        let mut queue = VecDeque::from([0]);
        color[0] = 0;
        let mut conflict = None;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if color[w] == color[u] && conflict.is_none() {
                    conflict = Some((u, w));
                }
            }
        }
        (color, parent, depth, conflict)
    }

    /// The two color classes `(U, W)` with `0 ∈ U`, or `None` if not bipartite.
    pub fn bipartition(&self) -> Option<(NodeSet, NodeSet)> {
        let (color, _, _, conflict) = self.bfs_coloring();
        if conflict.is_some() {
            return None;
        }
        let u = NodeSet::from_ids(self.n, (0..self.n).filter(|&v| color[v] == 0)).ok()?;
        let w = u.complement();
        Some((u, w))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bfs_coloring().3.is_none()
    }

    /// A simple cycle of odd length, listed in cyclic order (closing edge
    /// from the last node back to the first is implied).
    pub fn find_odd_cycle(&self) -> Result<Vec<usize>> {
        let (_, parent, depth, conflict) = self.bfs_coloring();
        let (a, b) = conflict.ok_or_else(|| Error::Precondition("graph is bipartite".into()))?;
        // same color on a BFS edge forces equal depth
        debug_assert_eq!(depth[a], depth[b]);
        let (mut x, mut y) = (a, b);
        let mut left = vec![x];
        let mut right = vec![y];
        while x != y {
            x = parent[x];
            y = parent[y];
            left.push(x);
            right.push(y);
        }
        right.pop();
        right.reverse();
        // a -> ... -> lca -> ... -> b, closed by the edge {b, a}
        left.extend(right);
        Ok(left)
    }
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize)> {
    let err = |message: String| Error::Parse { line, message };
    let mut it = l.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| err(format!("missing {what} in {l:?}")))?;
        tok.parse()
            .map_err(|_| err(format!("{what} is not a non-negative integer: {tok:?}")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(err(format!("expected two fields in {l:?}")));
    }
    Ok((a, b))
}
