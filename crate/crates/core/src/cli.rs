//! The `dynamo` command line. Every subcommand prints JSON on stdout.
//!
//! Exit codes: 0 success, 1 domain error (bad graph, failed precondition,
//! failed verification), 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, GraphParams};
use crate::certify::{Certifier, Property};
use crate::construct;
use crate::corpus::{self, CorpusSpec};
use crate::dynamics::{default_limit, Dynamics};
use crate::error::Error;
use crate::generators as gen;
use crate::graph::Graph;
use crate::model::{Alpha, ThresholdModel};
use crate::nodeset::NodeSet;
use crate::search::{self, SearchOptions};
use crate::verify;

#[derive(Parser, Debug)]
#[command(name = "dynamo", version, about = "Threshold dynamics, dynamos, stable and immortal sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Process to run.
    #[arg(long, value_parser = ["r", "twoway-r", "alpha", "twoway-alpha"])]
    model: String,
    /// Absolute threshold for the r models.
    #[arg(long)]
    r: Option<usize>,
    /// Fractional threshold P/Q for the alpha models.
    #[arg(long)]
    alpha: Option<Alpha>,
}

impl ModelArgs {
    fn model(&self) -> Result<ThresholdModel, Failure> {
        ThresholdModel::from_parts(&self.model, self.r, self.alpha).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Edges,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Construction {
    /// Smallest `D_L` over seeded random labelings (one-way models).
    Labeling,
    /// Minimum two-way 1-BP dynamo.
    TwowayR1,
    /// Size-r two-way dynamo in a dense graph.
    Dense,
    /// Number of size-r two-way dynamos.
    CountDense,
    /// Stable set from a min-cut partition (two-way alpha <= 1/2).
    Partition,
    /// Immortal set in two-way 2-BP from a longest cycle.
    ImmortalR2,
    /// An exact longest cycle.
    LongestCycle,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph from a named family.
    Generate {
        /// complete, cycle, path, star, complete-bipartite, petersen,
        /// complete-minus-matching, clique-with-leaves, regular-chain,
        /// circulant, stable-tight, gnp, tree.
        family: String,
        params: Vec<usize>,
        /// Edge probability for gnp.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the process from a set and print each round.
    Simulate {
        graph: String,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Decide whether a set has a property.
    Certify {
        graph: String,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        #[arg(long, default_value = "dynamo")]
        property: Property,
        #[arg(long)]
        limit: Option<usize>,
        /// Include every configuration of the run.
        #[arg(long)]
        trace: bool,
    },
    /// Exact minimum set by exhaustive search.
    SearchMin {
        graph: String,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value = "dynamo")]
        property: Property,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        limit: Option<usize>,
        /// Also list every set of the minimum size.
        #[arg(long)]
        all: bool,
    },
    /// Run a constructive algorithm and certify its output.
    Construct {
        #[arg(value_enum)]
        construction: Construction,
        graph: String,
        #[arg(long, value_parser = ["r", "alpha"])]
        model: Option<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        alpha: Option<Alpha>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Labelings to sample.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Subsets to examine when counting.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Closed-form bounds on the minimum sizes.
    Bounds {
        #[command(flatten)]
        model: ModelArgs,
        /// Take the parameters from this graph instead of the flags.
        graph: Option<String>,
        #[arg(long, required_unless_present = "graph")]
        n: Option<usize>,
        /// Minimum degree.
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        bipartite: Option<bool>,
        #[arg(long)]
        tree: bool,
    },
    /// Run every verification check over a corpus; JSON lines.
    CorpusVerify {
        /// JSON corpus spec; the built-in corpus when omitted.
        spec: Option<String>,
        /// Override the spec's sampling seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    /// Already reported on stdout.
    Silent,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Domain(format!("{path}: {e}")))?;
    Ok(text)
}

#[derive(serde::Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Reads the edge-list format, or the JSON that `generate` prints.
fn load_graph(path: &str) -> Result<Graph, Failure> {
    let text = read_input(path)?;
    let g = if text.trim_start().starts_with('{') {
        let j: JsonGraph = serde_json::from_str(&text).map_err(|e| Failure::Domain(format!("{path}: {e}")))?;
        Graph::new(j.n, j.edges)
    } else {
        Graph::parse(&text)
    };
    g.map_err(|e| Failure::Domain(format!("{path}: {e}")))
}

fn node_set(g: &Graph, ids: &[usize]) -> Result<NodeSet, Failure> {
    Ok(g.node_set(ids.iter().copied())?)
}

fn emit(out: &mut impl Write, v: &impl Serialize) -> Result<(), Failure> {
    let line = serde_json::to_string(v).expect("output serializes");
    writeln!(out, "{line}").map_err(|e| Failure::Domain(e.to_string()))
}

fn generate(family: &str, params: &[usize], p: Option<f64>, seed: u64) -> Result<Graph, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match (family, params) {
        ("gnp", &[n]) => {
            let p = p.ok_or_else(|| Failure::Usage("gnp needs --p".into()))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Failure::Usage(format!("--p must lie in [0, 1], got {p}")));
            }
            Ok(gen::random_connected(n, p, &mut rng)?)
        }
        ("tree", &[n]) => Ok(gen::random_tree(n, &mut rng)?),
        ("gnp" | "tree", _) => Err(Failure::Usage(format!("{family} takes one parameter n"))),
        _ => Ok(corpus::build(family, params)?),
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

#[allow(clippy::too_many_arguments)]
fn construct(
    which: Construction,
    g: &Graph,
    model: Option<&str>,
    r: Option<usize>,
    alpha: Option<Alpha>,
    seed: u64,
    samples: usize,
    budget: Option<u64>,
) -> Result<Value, Failure> {
    let need_r = || r.ok_or_else(|| Failure::Usage("this construction needs --r".into()));
    let need_alpha = || alpha.ok_or_else(|| Failure::Usage("this construction needs --alpha".into()));
    Ok(match which {
        Construction::Labeling => {
            let name = model.ok_or_else(|| Failure::Usage("labeling needs --model r|alpha".into()))?;
            let m = ThresholdModel::from_parts(name, r, alpha).map_err(|e| Failure::Usage(e.to_string()))?;
            to_value(&construct::dynamo_by_labeling(g, m, seed, samples)?)
        }
        Construction::TwowayR1 => to_value(&construct::dynamo_twoway_r1(g)?),
        Construction::Dense => to_value(&construct::dense_small_dynamo(g, need_r()?, seed)?),
        Construction::CountDense => to_value(&construct::count_small_dynamos(g, need_r()?, budget)?),
        Construction::Partition => to_value(&construct::stable_by_partition(g, need_alpha()?)?),
        Construction::ImmortalR2 => to_value(&construct::immortal_r2(g)?),
        Construction::LongestCycle => {
            let cycle = construct::longest_cycle(g)?;
            json!({ "construction": "longest-cycle", "length": cycle.as_ref().map_or(0, Vec::len), "cycle": cycle })
        }
    })
}

fn search_opts(cap: Option<usize>, max_size: Option<usize>, limit: Option<usize>) -> SearchOptions {
    SearchOptions { cap, max_size, limit }
}

fn dispatch(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Generate {
            family,
            params,
            p,
            seed,
            format,
        } => {
            let g = generate(&family, &params, p, seed)?;
            match format {
                Format::Edges => write!(out, "{}", g.to_edge_list()).map_err(|e| Failure::Domain(e.to_string())),
                Format::Json => emit(
                    out,
                    &json!({ "family": family, "params": params, "seed": seed, "n": g.n(), "m": g.m(), "edges": g.edges() }),
                ),
            }
        }
        Command::Simulate {
            graph,
            model,
            set,
            limit,
        } => {
            let g = load_graph(&graph)?;
            let m = model.model()?;
            let c0 = node_set(&g, &set)?;
            let trace = Dynamics::new(&g, m)?.run(&c0, limit.unwrap_or_else(|| default_limit(g.n())));
            write!(out, "{}", trace.to_json_lines()).map_err(|e| Failure::Domain(e.to_string()))
        }
        Command::Certify {
            graph,
            model,
            set,
            property,
            limit,
            trace,
        } => {
            let g = load_graph(&graph)?;
            let m = model.model()?;
            let s = node_set(&g, &set)?;
            let mut cert = Certifier::new(&g, m)?;
            if let Some(l) = limit {
                cert = cert.with_limit(l);
            }
            let c = cert.certificate(property, &s)?;
            let mut v = json!(m);
            for (k, x) in c.to_json(trace).as_object().expect("object").iter() {
                v[k] = x.clone();
            }
            v["set"] = json!(s);
            emit(out, &v)
        }
        Command::SearchMin {
            graph,
            model,
            property,
            cap,
            max_size,
            limit,
            all,
        } => {
            let g = load_graph(&graph)?;
            let m = model.model()?;
            let opts = search_opts(cap, max_size, limit);
            let res = search::min_set(&g, m, property, &opts)?;
            let mut v = json!(res);
            if all {
                let sets = match res.min_size {
                    Some(k) => search::all_min_sets(&g, m, property, k, &opts)?,
                    None => Vec::new(),
                };
                v["all"] = json!(sets);
            }
            emit(out, &v)
        }
        Command::Construct {
            construction,
            graph,
            model,
            r,
            alpha,
            seed,
            samples,
            budget,
        } => {
            let g = load_graph(&graph)?;
            let v = construct(construction, &g, model.as_deref(), r, alpha, seed, samples, budget)?;
            emit(out, &v)
        }
        Command::Bounds {
            model,
            graph,
            n,
            delta,
            bipartite,
            tree,
        } => {
            let m = model.model()?;
            let params = match graph {
                Some(path) => GraphParams::of(&load_graph(&path)?),
                None => {
                    let mut p = GraphParams::new(n.expect("clap enforces --n"));
                    p.delta = delta;
                    p.bipartite = bipartite;
                    if tree {
                        p = p.with_tree(true);
                    }
                    p
                }
            };
            emit(out, &bounds::report(m, &params)?)
        }
        Command::CorpusVerify { spec, seed } => {
            let mut spec = match spec {
                Some(path) => serde_json::from_str::<CorpusSpec>(&read_input(&path)?)
                    .map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
                None => CorpusSpec::default(),
            };
            if let Some(s) = seed {
                spec.seed = s;
            }
            if spec.is_empty() {
                return Err(Failure::Usage("corpus spec lists no graphs".into()));
            }
            let report = verify::run(&spec)?;
            write!(out, "{}", report.to_json_lines()).map_err(|e| Failure::Domain(e.to_string()))?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Silent)
            }
        }
    }
}

/// Parses `args` (program name first), runs the command and maps the outcome
/// to an exit code.
pub fn run_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Silent) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

pub fn main() -> ExitCode {
    run_with(std::env::args_os())
}
