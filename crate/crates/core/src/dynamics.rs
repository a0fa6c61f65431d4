//! Synchronous simulation of the four threshold processes.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::ThresholdModel;
use crate::nodeset::NodeSet;

/// Black set of a configuration; every other node is white.
pub type Configuration = NodeSet;

/// Default round budget for a graph on `n` nodes.
pub fn default_limit(n: usize) -> usize {
    4 * n + 16
}

/// How a run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    /// `step(C_T) = C_T`.
    FixedPoint,
    /// `C_{start+period} = C_start` with `period ≥ 2` minimal.
    Cycle { period: usize, start: usize },
    /// The round budget ran out before any configuration repeated.
    LimitReached,
}

impl Outcome {
    pub fn period(&self) -> Option<usize> {
        match *self {
            Outcome::FixedPoint => Some(1),
            Outcome::Cycle { period, .. } => Some(period),
            Outcome::LimitReached => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Outcome::FixedPoint => "fixed-point",
            Outcome::Cycle { .. } => "cycle",
            Outcome::LimitReached => "limit-reached",
        }
    }
}

/// `C_0, …, C_T` and how the run ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    configs: Vec<Configuration>,
    outcome: Outcome,
}

impl RunTrace {
    pub fn configs(&self) -> &[Configuration] {
        &self.configs
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    /// `T`, the index of the last recorded configuration.
    pub fn rounds(&self) -> usize {
        self.configs.len() - 1
    }

    pub fn config(&self, t: usize) -> Result<&Configuration> {
        self.configs.get(t).ok_or(Error::RoundOutOfRange {
            t,
            last: self.rounds(),
        })
    }

    /// `C_t` for any `t`, extending a terminated trace periodically past `T`.
    pub fn config_at(&self, t: usize) -> Result<&Configuration> {
        if t <= self.rounds() {
            return Ok(&self.configs[t]);
        }
        match self.outcome {
            Outcome::FixedPoint => Ok(self.last()),
            Outcome::Cycle { period, start } => Ok(&self.configs[start + (t - start) % period]),
            Outcome::LimitReached => Err(Error::RoundOutOfRange {
                t,
                last: self.rounds(),
            }),
        }
    }

    pub fn last(&self) -> &Configuration {
        self.configs.last().expect("trace is never empty")
    }

    /// Round index where the terminal fixed point or cycle begins.
    pub fn terminal_start(&self) -> Option<usize> {
        match self.outcome {
            Outcome::FixedPoint => Some(self.rounds()),
            Outcome::Cycle { start, .. } => Some(start),
            Outcome::LimitReached => None,
        }
    }

    /// First round whose configuration is all black.
    pub fn first_full(&self) -> Option<usize> {
        self.configs.iter().position(NodeSet::is_full)
    }

    /// One JSON object per round, then a terminal outcome object.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (t, c) in self.configs.iter().enumerate() {
            out.push_str(&json!({ "t": t, "black": c }).to_string());
            out.push('\n');
        }
        let mut tail = json!({
            "outcome": self.outcome.name(),
            "period": self.outcome.period().unwrap_or(0),
        });
        if let Outcome::Cycle { start, .. } = self.outcome {
            tail["start"] = json!(start);
        }
        out.push_str(&tail.to_string());
        out.push('\n');
        out
    }
}

/// A graph and a validated model with per-node thresholds precomputed.
#[derive(Clone, Debug)]
pub struct Dynamics<'g> {
    graph: &'g Graph,
    model: ThresholdModel,
    required: Vec<usize>,
}

impl<'g> Dynamics<'g> {
    pub fn new(graph: &'g Graph, model: ThresholdModel) -> Result<Self> {
        model.validate(graph)?;
        let required = (0..graph.n())
            .map(|v| model.required(graph.degree(v)))
            .collect();
        Ok(Dynamics {
            graph,
            model,
            required,
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn model(&self) -> ThresholdModel {
        self.model
    }

    /// Writes `step(c)` into `out`.
    pub fn step_into(&self, c: &Configuration, out: &mut Configuration) {
        let keep = !self.model.is_two_way();
        for w in out.words_mut() {
            *w = 0;
        }
        for v in 0..self.graph.n() {
            let black = (keep && c.contains(v))
                || self.graph.row(v).intersection_len(c) >= self.required[v];
            if black {
                out.insert(v);
            }
        }
    }

    pub fn step(&self, c: &Configuration) -> Configuration {
        let mut out = NodeSet::empty(self.graph.n());
        self.step_into(c, &mut out);
        out
    }

    /// Iterates `step` until a configuration repeats or `limit` steps ran.
    pub fn run(&self, c0: &Configuration, limit: usize) -> RunTrace {
        let mut configs = vec![c0.clone()];
        let mut seen: HashMap<Configuration, usize> = HashMap::from([(c0.clone(), 0)]);
        for t in 0..limit {
            let next = self.step(&configs[t]);
            if let Some(&s) = seen.get(&next) {
                let period = t + 1 - s;
                let outcome = if period == 1 {
                    Outcome::FixedPoint
                } else {
                    Outcome::Cycle { period, start: s }
                };
                return RunTrace { configs, outcome };
            }
            seen.insert(next.clone(), t + 1);
            configs.push(next);
        }
        RunTrace {
            configs,
            outcome: Outcome::LimitReached,
        }
    }
}

/// One synchronous round of `m` on `g`.
pub fn step(g: &Graph, m: ThresholdModel, c: &Configuration) -> Result<Configuration> {
    g.check_set(c)?;
    Ok(Dynamics::new(g, m)?.step(c))
}

/// Runs `m` on `g` from `c0` for at most `limit` rounds.
pub fn run(g: &Graph, m: ThresholdModel, c0: &Configuration, limit: usize) -> Result<RunTrace> {
    g.check_set(c0)?;
    if limit == 0 {
        return Err(Error::Precondition("round budget must be at least 1".into()));
    }
    Ok(Dynamics::new(g, m)?.run(c0, limit))
}

/// `B_t`: nodes black in two consecutive rounds `t'−1, t'` for some `t' ≤ t`.
///
/// `t` may pass the end of a terminated trace; it must be within the recorded
/// rounds when the budget ran out.
pub fn two_round_core(trace: &RunTrace, t: usize) -> Result<NodeSet> {
    if t == 0 {
        return Err(Error::RoundOutOfRange {
            t,
            last: trace.rounds(),
        });
    }
    trace.config_at(t)?;
    let mut core = NodeSet::empty(trace.last().universe());
    // past the terminal cycle nothing new can join
    let horizon = t.min(trace.rounds() + trace.outcome().period().unwrap_or(0));
    for tp in 1..=horizon {
        core = core.union(&trace.config_at(tp - 1)?.intersection(trace.config_at(tp)?));
    }
    Ok(core)
}

/// `Φ_t = |B_t| + |∂(B_t)|`.
pub fn potential_phi_core(g: &Graph, trace: &RunTrace, t: usize) -> Result<usize> {
    let core = two_round_core(trace, t)?;
    Ok(core.len() + g.edge_boundary(&core))
}

/// `Φ = |∂(D)|` for the black set `D`.
pub fn potential_phi_boundary(g: &Graph, black: &NodeSet) -> usize {
    g.edge_boundary(black)
}

/// Potential sequences along a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    /// `B_1, …, B_T`.
    pub cores: Vec<NodeSet>,
    /// `Φ_1, …, Φ_T` with `Φ_t = |B_t| + |∂(B_t)|`.
    pub phi_core: Vec<usize>,
    /// `|∂(D_0)|, …, |∂(D_T)|`.
    pub phi_boundary: Vec<usize>,
}

impl Diagnostics {
    pub fn compute(g: &Graph, trace: &RunTrace) -> Diagnostics {
        let c = trace.configs();
        let mut cores = Vec::with_capacity(c.len().saturating_sub(1));
        let mut core = NodeSet::empty(g.n());
        for t in 1..c.len() {
            core = core.union(&c[t - 1].intersection(&c[t]));
            cores.push(core.clone());
        }
        let phi_core = cores.iter().map(|b| b.len() + g.edge_boundary(b)).collect();
        let phi_boundary = c.iter().map(|d| g.edge_boundary(d)).collect();
        Diagnostics {
            cores,
            phi_core,
            phi_boundary,
        }
    }

    /// `Φ` at round `t ≥ 1`.
    pub fn phi_at(&self, t: usize) -> usize {
        self.phi_core[t - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators as gen;
    use crate::model::Alpha;

    fn half() -> Alpha {
        Alpha::new(1, 2).unwrap()
    }

    // 1-based ids in the examples map to 0-based here: v_i -> i - 1
    #[test]
    fn step_on_c5_half() {
        let g = gen::cycle(5).unwrap();
        let c = g.node_set([0]).unwrap();
        let next = step(&g, ThresholdModel::two_way_alpha(half()), &c).unwrap();
        assert_eq!(next.to_vec(), vec![1, 4]);
    }

    #[test]
    fn full_is_fixed_for_every_model() {
        let g = gen::petersen();
        let all = g.full_set();
        for m in [
            ThresholdModel::r(3),
            ThresholdModel::two_way_r(3),
            ThresholdModel::alpha(Alpha::new(9, 10).unwrap()),
            ThresholdModel::two_way_alpha(Alpha::new(9, 10).unwrap()),
        ] {
            assert_eq!(step(&g, m, &all).unwrap(), all);
        }
    }

    #[test]
    fn step_on_k5_two_way_r2() {
        let g = gen::complete(5).unwrap();
        let c = g.node_set([0, 1]).unwrap();
        let next = step(&g, ThresholdModel::two_way_r(2), &c).unwrap();
        assert_eq!(next.to_vec(), vec![2, 3, 4]);
    }

    #[test]
    fn invalid_model_rejected() {
        let g = gen::cycle(5).unwrap();
        let c = g.node_set([0]).unwrap();
        assert!(matches!(
            step(&g, ThresholdModel::two_way_r(3), &c),
            Err(Error::Model(_))
        ));
        assert!(run(&g, ThresholdModel::r(1), &c, 0).is_err());
        let wrong = NodeSet::empty(7);
        assert!(step(&g, ThresholdModel::r(1), &wrong).is_err());
    }

    #[test]
    fn odd_cycle_fills_at_half() {
        let g = gen::cycle(5).unwrap();
        let tr = run(
            &g,
            ThresholdModel::two_way_alpha(half()),
            &g.node_set([0]).unwrap(),
            default_limit(5),
        )
        .unwrap();
        assert_eq!(tr.outcome(), Outcome::FixedPoint);
        assert!(tr.last().is_full());
        assert!(tr.rounds() <= 2 * (5 / 2) + 2);
    }

    #[test]
    fn even_cycle_alternates_at_r1() {
        let g = gen::cycle(4).unwrap();
        let tr = run(
            &g,
            ThresholdModel::two_way_r(1),
            &g.node_set([0]).unwrap(),
            default_limit(4),
        )
        .unwrap();
        assert_eq!(tr.outcome(), Outcome::Cycle { period: 2, start: 1 });
        assert_eq!(tr.configs()[1].to_vec(), vec![1, 3]);
        assert_eq!(tr.configs()[2].to_vec(), vec![0, 2]);
        for t in 1..=tr.rounds() {
            assert!(two_round_core(&tr, t).unwrap().is_empty());
        }
    }

    #[test]
    fn one_way_runs_end_within_n_plus_one() {
        let g = gen::path(7).unwrap();
        let tr = run(&g, ThresholdModel::r(1), &g.node_set([3]).unwrap(), 100).unwrap();
        assert_eq!(tr.outcome(), Outcome::FixedPoint);
        assert!(tr.rounds() <= g.n() + 1);
        for w in tr.configs().windows(2) {
            assert!(w[0].is_subset(&w[1]));
        }
    }

    #[test]
    fn core_past_the_end_of_a_cycle() {
        let g = gen::cycle(4).unwrap();
        let tr = run(&g, ThresholdModel::two_way_r(1), &g.node_set([0]).unwrap(), 10).unwrap();
        assert_eq!(tr.config_at(7).unwrap().to_vec(), vec![1, 3]);
        assert!(two_round_core(&tr, 50).unwrap().is_empty());
    }

    #[test]
    fn limit_reached_is_reported() {
        let g = gen::path(9).unwrap();
        let tr = run(&g, ThresholdModel::r(1), &g.node_set([0]).unwrap(), 3).unwrap();
        assert_eq!(tr.outcome(), Outcome::LimitReached);
        assert_eq!(tr.rounds(), 3);
    }

    #[test]
    fn core_starting_full_is_everything() {
        let g = gen::complete(4).unwrap();
        let tr = run(&g, ThresholdModel::two_way_r(2), &g.full_set(), 10).unwrap();
        assert_eq!(tr.rounds(), 0);
        assert!(two_round_core(&tr, 1).unwrap().is_full());
        assert_eq!(potential_phi_core(&g, &tr, 1).unwrap(), 4);
        assert!(matches!(
            two_round_core(&tr, 0),
            Err(Error::RoundOutOfRange { .. })
        ));
    }

    #[test]
    fn clique_with_leaves_core_at_half() {
        let g = gen::clique_with_leaves(4, 16).unwrap();
        let clique = g.node_set(0..4).unwrap();
        let tr = run(&g, ThresholdModel::two_way_alpha(half()), &clique, 100).unwrap();
        assert_eq!(two_round_core(&tr, 1).unwrap(), clique);
        // at 3/4 the clique nodes lose their threshold at once (3 < 4.5)
        let tr = run(
            &g,
            ThresholdModel::two_way_alpha(Alpha::new(3, 4).unwrap()),
            &clique,
            100,
        )
        .unwrap();
        assert!(two_round_core(&tr, 1).unwrap().is_empty());
    }

    #[test]
    fn potentials() {
        let g = gen::complete(4).unwrap();
        let tr = run(&g, ThresholdModel::two_way_r(1), &g.node_set([0, 1]).unwrap(), 10).unwrap();
        // every node has a black neighbor, so C_1 = V and B_1 = {0,1}
        assert_eq!(two_round_core(&tr, 1).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(potential_phi_core(&g, &tr, 1).unwrap(), 6);
        assert_eq!(potential_phi_boundary(&g, &g.node_set([0, 1]).unwrap()), 4);
        assert_eq!(potential_phi_boundary(&g, &g.full_set()), 0);
    }

    #[test]
    fn trace_json_lines() {
        let g = gen::cycle(4).unwrap();
        let tr = run(&g, ThresholdModel::two_way_r(1), &g.node_set([0]).unwrap(), 10).unwrap();
        let lines: Vec<_> = tr.to_json_lines().lines().map(String::from).collect();
        assert_eq!(lines[0], r#"{"black":[0],"t":0}"#);
        assert_eq!(lines[1], r#"{"black":[1,3],"t":1}"#);
        assert_eq!(lines.last().unwrap(), r#"{"outcome":"cycle","period":2,"start":1}"#);
    }
}
