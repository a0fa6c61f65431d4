//! Threshold dynamics on graphs.
//!
//! Simulates r- and α-bootstrap percolation and their two-way variants,
//! decides whether a node set is a dynamic monopoly (dynamo), a monotone
//! dynamo, a stable set or an immortal set, builds such sets constructively,
//! finds exact minima by exhaustive search, and evaluates the closed-form
//! bounds on those minima.

pub mod bounds;
pub mod certify;
pub mod cli;
pub mod construct;
pub mod corpus;
pub mod dynamics;
pub mod error;
pub mod generators;
pub mod graph;
pub mod model;
pub mod nodeset;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;
pub use model::{Alpha, ThresholdModel};
pub use nodeset::NodeSet;
