//! Graph corpora for batch verification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators as gen;
use crate::graph::Graph;
use crate::model::{Alpha, ThresholdModel};

/// One generator swept over the cartesian product of its parameter lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub generator: String,
    #[serde(default)]
    pub params: Vec<Vec<usize>>,
}

/// Seeded connected samples from the edge-probability model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub count: usize,
    pub n: [usize; 2],
    pub p: [f64; 2],
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub count: usize,
    pub n: [usize; 2],
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    #[serde(default)]
    pub families: Vec<FamilySpec>,
    #[serde(default)]
    pub random_graphs: Option<RandomSpec>,
    #[serde(default)]
    pub random_trees: Option<TreeSpec>,
    #[serde(default)]
    pub models: Vec<ThresholdModel>,
    /// Seed for the sampling done by the checks themselves.
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct CorpusGraph {
    pub name: String,
    pub graph: Graph,
    /// Seed that produced a random graph.
    pub seed: Option<u64>,
}

fn family(generator: &str, params: &[Vec<usize>]) -> FamilySpec {
    FamilySpec {
        generator: generator.into(),
        params: params.to_vec(),
    }
}

impl Default for CorpusSpec {
    /// Small named families plus seeded random graphs, all with `n ≤ 12`.
    fn default() -> Self {
        let a = |p, q| Alpha::new(p, q).expect("valid alpha");
        CorpusSpec {
            families: vec![
                family("complete", &[(2..=10).collect()]),
                family("cycle", &[(3..=12).collect()]),
                family("path", &[(2..=12).collect()]),
                family("star", &[(2..=11).collect()]),
                family("complete-bipartite", &[vec![1, 2, 3, 4, 5], vec![3, 5, 7]]),
                family("petersen", &[]),
                family("complete-minus-matching", &[vec![4, 6, 8, 10, 12]]),
                family("clique-with-leaves", &[vec![2, 3], vec![6]]),
            ],
            random_graphs: Some(RandomSpec {
                count: 24,
                n: [5, 12],
                p: [0.2, 0.6],
                seed: 11,
            }),
            random_trees: Some(TreeSpec {
                count: 20,
                n: [4, 14],
                seed: 23,
            }),
            models: vec![
                ThresholdModel::r(1),
                ThresholdModel::r(2),
                ThresholdModel::two_way_r(1),
                ThresholdModel::two_way_r(2),
                ThresholdModel::two_way_r(3),
                ThresholdModel::alpha(a(1, 3)),
                ThresholdModel::alpha(a(1, 2)),
                ThresholdModel::alpha(a(2, 3)),
                ThresholdModel::two_way_alpha(a(1, 2)),
                ThresholdModel::two_way_alpha(a(2, 3)),
                ThresholdModel::two_way_alpha(a(4, 5)),
            ],
            seed: 1,
        }
    }
}

/// Builds a named deterministic family member.
pub fn build(generator: &str, p: &[usize]) -> Result<Graph> {
    let arity = |k: usize| {
        if p.len() == k {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "generator {generator} takes {k} parameters, got {}",
                p.len()
            )))
        }
    };
    match generator {
        "complete" => arity(1).and_then(|_| gen::complete(p[0])),
        "cycle" => arity(1).and_then(|_| gen::cycle(p[0])),
        "path" => arity(1).and_then(|_| gen::path(p[0])),
        "star" => arity(1).and_then(|_| gen::star(p[0])),
        "complete-bipartite" => arity(2).and_then(|_| gen::complete_bipartite(p[0], p[1])),
        "petersen" => arity(0).map(|_| gen::petersen()),
        "complete-minus-matching" => arity(1).and_then(|_| gen::complete_minus_matching(p[0])),
        "clique-with-leaves" => arity(2).and_then(|_| gen::clique_with_leaves(p[0], p[1])),
        "regular-chain" => arity(2).and_then(|_| gen::regular_chain(p[0], p[1])),
        "circulant" => arity(2).and_then(|_| gen::circulant_regular(p[0], p[1])),
        "stable-tight" => arity(3).and_then(|_| {
            gen::stable_tight(Alpha::new(p[0] as u64, p[1] as u64)?, p[2])
        }),
        other => Err(Error::Precondition(format!("unknown generator {other:?}"))),
    }
}

fn product(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect()
    })
}

fn span(rng: &mut ChaCha8Rng, [lo, hi]: [usize; 2]) -> Result<usize> {
    if lo > hi {
        return Err(Error::Precondition(format!("empty range [{lo}, {hi}]")));
    }
    Ok(rng.gen_range(lo..=hi))
}

impl CorpusSpec {
    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
            && self.random_graphs.as_ref().is_none_or(|r| r.count == 0)
            && self.random_trees.as_ref().is_none_or(|t| t.count == 0)
    }

    /// Named-family and random graphs (not the random trees).
    pub fn graphs(&self) -> Result<Vec<CorpusGraph>> {
        let mut out = Vec::new();
        for f in &self.families {
            for p in product(&f.params) {
                let args: Vec<String> = p.iter().map(usize::to_string).collect();
                out.push(CorpusGraph {
                    name: format!("{}({})", f.generator, args.join(",")),
                    graph: build(&f.generator, &p)?,
                    seed: None,
                });
            }
        }
        if let Some(r) = &self.random_graphs {
            if !(0.0..=1.0).contains(&r.p[0]) || !(r.p[0]..=1.0).contains(&r.p[1]) {
                return Err(Error::Precondition(format!("bad probability range {:?}", r.p)));
            }
            for i in 0..r.count {
                let seed = r.seed.wrapping_add(i as u64);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let n = span(&mut rng, r.n)?;
                let p = if r.p[0] == r.p[1] {
                    r.p[0]
                } else {
                    rng.gen_range(r.p[0]..r.p[1])
                };
                out.push(CorpusGraph {
                    name: format!("gnp(n={n},p={p:.3},seed={seed})"),
                    graph: gen::random_connected(n, p, &mut rng)?,
                    seed: Some(seed),
                });
            }
        }
        Ok(out)
    }

    pub fn trees(&self) -> Result<Vec<CorpusGraph>> {
        let Some(t) = &self.random_trees else {
            return Ok(Vec::new());
        };
        (0..t.count)
            .map(|i| {
                let seed = t.seed.wrapping_add(i as u64);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let n = span(&mut rng, t.n)?;
                Ok(CorpusGraph {
                    name: format!("tree(n={n},seed={seed})"),
                    graph: gen::random_tree(n, &mut rng)?,
                    seed: Some(seed),
                })
            })
            .collect()
    }
}
