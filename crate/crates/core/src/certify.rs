//! Exact decision of the four set properties.
//!
//! Each property quantifies over every configuration in which the set is
//! black. All four rules are monotone in the black set, so the worst case is
//! the configuration where exactly the set is black; one run from there
//! decides the property.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::dynamics::{default_limit, Dynamics, Outcome, RunTrace};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::ThresholdModel;
use crate::nodeset::NodeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Dynamo,
    #[serde(rename = "monotone")]
    MonotoneDynamo,
    Stable,
    Immortal,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Dynamo,
        Property::MonotoneDynamo,
        Property::Stable,
        Property::Immortal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Dynamo => "dynamo",
            Property::MonotoneDynamo => "monotone",
            Property::Stable => "stable",
            Property::Immortal => "immortal",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown property {s:?}")))
    }
}

/// Three-valued answer: a budget overrun is neither yes nor no.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Holds => s.serialize_bool(true),
            Verdict::Fails => s.serialize_bool(false),
            Verdict::Indeterminate => s.serialize_str("indeterminate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub property: Property,
    pub verdict: Verdict,
    /// Round at which the property was settled.
    pub rounds: usize,
    /// First violating round, or the start of the terminal cycle.
    pub failure_round: Option<usize>,
    pub trace: RunTrace,
}

impl Certificate {
    pub fn to_json(&self, with_trace: bool) -> Value {
        let mut v = json!({
            "property": self.property,
            "verdict": self.verdict,
            "rounds": self.rounds,
            "failure_round": self.failure_round,
            "outcome": self.trace.outcome(),
        });
        if with_trace {
            v["trace"] = json!(self.trace.configs());
        }
        v
    }
}

/// Decides properties on one graph under one model.
#[derive(Clone, Debug)]
pub struct Certifier<'g> {
    dynamics: Dynamics<'g>,
    limit: usize,
}

impl<'g> Certifier<'g> {
    pub fn new(g: &'g Graph, m: ThresholdModel) -> Result<Self> {
        Ok(Certifier {
            dynamics: Dynamics::new(g, m)?,
            limit: default_limit(g.n()),
        })
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit.max(1);
        self
    }

    pub fn dynamics(&self) -> &Dynamics<'g> {
        &self.dynamics
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn check_input(&self, set: &NodeSet) -> Result<()> {
        self.dynamics.graph().check_set(set)?;
        if set.is_empty() {
            return Err(Error::Precondition("the queried set must be non-empty".into()));
        }
        Ok(())
    }

    /// Full certificate with the witnessing trace.
    pub fn certificate(&self, property: Property, set: &NodeSet) -> Result<Certificate> {
        self.check_input(set)?;
        let trace = self.dynamics.run(set, self.limit);
        Ok(judge(property, set, trace))
    }

    /// Verdict only, stopping as soon as the answer is known.
    ///
    /// Agrees with [`Certifier::certificate`]; used in the inner loop of the
    /// exhaustive searches.
    pub fn verdict(&self, property: Property, set: &NodeSet) -> Verdict {
        let n = set.universe();
        let mut cur = set.clone();
        match property {
            Property::Dynamo | Property::MonotoneDynamo if cur.is_full() => return Verdict::Holds,
            Property::Immortal if cur.is_empty() => return Verdict::Fails,
            _ => {}
        }
        let mut next = NodeSet::empty(n);
        let mut seen: HashSet<NodeSet> = HashSet::from([cur.clone()]);
        for _ in 0..self.limit {
            self.dynamics.step_into(&cur, &mut next);
            let settled = match property {
                Property::Dynamo => next.is_full().then_some(Verdict::Holds),
                Property::MonotoneDynamo => {
                    if !cur.is_subset(&next) {
                        Some(Verdict::Fails)
                    } else {
                        next.is_full().then_some(Verdict::Holds)
                    }
                }
                Property::Stable => (!set.is_subset(&next)).then_some(Verdict::Fails),
                Property::Immortal => next.is_empty().then_some(Verdict::Fails),
            };
            if let Some(v) = settled {
                return v;
            }
            if !seen.insert(next.clone()) {
                return match property {
                    Property::Dynamo | Property::MonotoneDynamo => Verdict::Fails,
                    Property::Stable | Property::Immortal => Verdict::Holds,
                };
            }
            std::mem::swap(&mut cur, &mut next);
        }
        Verdict::Indeterminate
    }
}

fn judge(property: Property, set: &NodeSet, trace: RunTrace) -> Certificate {
    let configs = trace.configs();
    let terminated = trace.outcome() != Outcome::LimitReached;
    let unsettled = if terminated {
        Verdict::Fails
    } else {
        Verdict::Indeterminate
    };
    let (verdict, rounds, failure_round) = match property {
        Property::Dynamo => match trace.first_full() {
            Some(t) => (Verdict::Holds, t, None),
            None => (unsettled, trace.rounds(), trace.terminal_start()),
        },
        Property::MonotoneDynamo => {
            let full = trace.first_full();
            let broken = (1..configs.len()).find(|&t| !configs[t - 1].is_subset(&configs[t]));
            match (full, broken) {
                (_, Some(t)) => (Verdict::Fails, t, Some(t)),
                (Some(t), None) => (Verdict::Holds, t, None),
                (None, None) => (unsettled, trace.rounds(), trace.terminal_start()),
            }
        }
        Property::Stable | Property::Immortal => {
            let violated = if property == Property::Stable {
                configs.iter().position(|c| !set.is_subset(c))
            } else {
                configs.iter().position(NodeSet::is_empty)
            };
            match violated {
                Some(t) => (Verdict::Fails, t, Some(t)),
                None if terminated => (Verdict::Holds, trace.rounds(), None),
                None => (Verdict::Indeterminate, trace.rounds(), None),
            }
        }
    };
    Certificate {
        property,
        verdict,
        rounds,
        failure_round,
        trace,
    }
}

pub fn certify(g: &Graph, m: ThresholdModel, property: Property, set: &NodeSet) -> Result<Certificate> {
    Certifier::new(g, m)?.certificate(property, set)
}

pub fn is_dynamo(g: &Graph, m: ThresholdModel, d: &NodeSet) -> Result<Certificate> {
    certify(g, m, Property::Dynamo, d)
}

pub fn is_monotone_dynamo(g: &Graph, m: ThresholdModel, d: &NodeSet) -> Result<Certificate> {
    certify(g, m, Property::MonotoneDynamo, d)
}

pub fn is_stable(g: &Graph, m: ThresholdModel, s: &NodeSet) -> Result<Certificate> {
    certify(g, m, Property::Stable, s)
}

pub fn is_immortal(g: &Graph, m: ThresholdModel, s: &NodeSet) -> Result<Certificate> {
    certify(g, m, Property::Immortal, s)
}
