//! Dense bit-vector node sets.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

const WORD: usize = 64;

/// A subset of the nodes `0..n` of a graph, stored as a dense bit-vector.
///
/// Also used as the black set of a configuration.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    n: usize,
    words: Vec<u64>,
}

impl NodeSet {
    pub fn empty(n: usize) -> Self {
        NodeSet {
            n,
            words: vec![0; n.div_ceil(WORD)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let hi = (lo + WORD).min(n);
            *w = if hi - lo == WORD {
                u64::MAX
            } else {
                (1u64 << (hi - lo)) - 1
            };
        }
        s
    }

    /// Builds a set from node ids, rejecting ids `>= n`.
    pub fn from_ids<I: IntoIterator<Item = usize>>(n: usize, ids: I) -> Result<Self, usize> {
        let mut s = Self::empty(n);
        for v in ids {
            if v >= n {
                return Err(v);
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Universe size (node count of the owning graph).
    #[inline]
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "node {v} out of range for universe {}", self.n);
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        assert!(v < self.n, "node {v} out of range for universe {}", self.n);
        self.words[v / WORD] &= !(1 << (v % WORD));
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    /// Size of the intersection with `other`.
    #[inline]
    pub fn intersection_len(&self, other: &NodeSet) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> NodeSet {
        NodeSet::full(self.n).difference(self)
    }

    fn zip_with(&self, other: &NodeSet, f: impl Fn(u64, u64) -> u64) -> NodeSet {
        debug_assert_eq!(self.n, other.n);
        NodeSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

// Serialized as the sorted id list; the universe travels with the graph.
impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Wire form of a node set when the universe is not known at decode time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeIds(pub Vec<usize>);

impl NodeIds {
    pub fn into_set(self, n: usize) -> Result<NodeSet, usize> {
        NodeSet::from_ids(n, self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_empty() {
        for n in [0, 1, 63, 64, 65, 130] {
            assert_eq!(NodeSet::full(n).len(), n);
            assert!(NodeSet::empty(n).is_empty());
            assert_eq!(NodeSet::full(n).complement(), NodeSet::empty(n));
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert_eq!(NodeSet::from_ids(4, [0, 4]), Err(4));
    }

    proptest! {
        #[test]
        fn set_algebra_matches_vec_model(
            n in 1usize..150,
            a in proptest::collection::vec(any::<prop::sample::Index>(), 0..40),
            b in proptest::collection::vec(any::<prop::sample::Index>(), 0..40),
        ) {
            let a: Vec<usize> = a.iter().map(|i| i.index(n)).collect();
            let b: Vec<usize> = b.iter().map(|i| i.index(n)).collect();
            let sa = NodeSet::from_ids(n, a.iter().copied()).unwrap();
            let sb = NodeSet::from_ids(n, b.iter().copied()).unwrap();
            let mut want_a: Vec<usize> = a.clone();
            want_a.sort();
            want_a.dedup();
            prop_assert_eq!(sa.to_vec(), want_a.clone());
            let inter: Vec<usize> = want_a.iter().copied().filter(|v| b.contains(v)).collect();
            prop_assert_eq!(sa.intersection(&sb).to_vec(), inter.clone());
            prop_assert_eq!(sa.intersection_len(&sb), inter.len());
            prop_assert_eq!(sa.is_subset(&sa.union(&sb)), true);
            prop_assert_eq!(sa.difference(&sb).len() + inter.len(), sa.len());
        }
    }
}
