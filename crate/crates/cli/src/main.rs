use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use parcol::bounds::{ceil_lg, gray_count_bound, hopf_stiefel, pathpower_bounds};
use parcol::coloring::{
    canonicalize, find_parity_path, spec_violation, ColoringError, EdgeColoring, PathBudget,
    DEFAULT_PEC_VERTEX_BUDGET,
};
use parcol::experiment::{run, run_all, IDS};
use parcol::gf2::Gf2Vector;
use parcol::graph::{generate, hub_graph, two_block_graph, Family, Graph, GraphError};
use parcol::gray::{gray_coloring, trim_sweep, GrayError};
use parcol::solver::{exact_p, exact_phat, hypercube_embed, Budget, SolverError};

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "parcol", version, about = "Strong parity edge-colorings of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// Graph JSON file; read from stdin when omitted
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct ColoringInput {
    /// Comma list in edge-id order, JSON `{"colors": [...]}`, or a file holding either
    #[arg(long)]
    coloring: String,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph: complete N, complete_bipartite S T, path N, path_power N L,
    /// bip_path_power N L, cycle N, hypercube K, two_block N, hub K
    Gen {
        family: String,
        params: Vec<usize>,
        /// Emit DOT instead of JSON
        #[arg(long)]
        dot: bool,
    },
    /// Check that a coloring is a strong parity edge-coloring
    CheckSpec {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        coloring: ColoringInput,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Check that a coloring admits no parity path
    CheckPec {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        coloring: ColoringInput,
        /// Largest graph the path search accepts
        #[arg(long, default_value_t = DEFAULT_PEC_VERTEX_BUDGET)]
        max_vertices: usize,
        /// Stop after this many search steps
        #[arg(long)]
        max_steps: Option<u64>,
    },
    /// Canonical coloring refined by a spec
    Canonicalize {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        coloring: ColoringInput,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Exact strong parity edge chromatic number
    Phat {
        #[command(flatten)]
        graph: GraphInput,
        /// Time limit such as 60s or 2m
        #[arg(long, value_parser = humantime::parse_duration)]
        budget: Option<Duration>,
        /// Stop after visiting this many search nodes
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Exact parity edge chromatic number
    P {
        #[command(flatten)]
        graph: GraphInput,
        /// Time limit such as 60s or 2m
        #[arg(long, value_parser = humantime::parse_duration)]
        budget: Option<Duration>,
        /// Stop after visiting this many search nodes
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Path-power bounds as TSV: n, width, lower, gray_count, upper
    Bounds {
        #[arg(long)]
        n: u64,
        /// Single width; all widths up to ceil(lg n) when omitted
        #[arg(long)]
        ell: Option<u64>,
    },
    /// The Hopf-Stiefel function s o t
    HopfStiefel { s: u64, t: u64 },
    /// Gray code coloring of a path power, or the trimmed-window sweep
    Gray {
        #[arg(long, required_unless_present = "check_trim")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "check_trim")]
        ell: Option<usize>,
        /// Check every valid trimmed window up to this length instead
        #[arg(long)]
        check_trim: Option<usize>,
    },
    /// Embed the graph in the smallest hypercube that could hold it
    Embed {
        #[command(flatten)]
        graph: GraphInput,
        /// Time limit such as 60s or 2m
        #[arg(long, value_parser = humantime::parse_duration)]
        budget: Option<Duration>,
        /// Stop after visiting this many search nodes
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Run a named experiment, or run-all
    Experiment {
        id: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_graph(input: &GraphInput) -> Result<Graph> {
    let text = match &input.graph {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading graph from stdin")?;
            s
        }
    };
    let g: Graph = serde_json::from_str(&text).context("parsing graph JSON")?;
    Ok(g)
}

fn read_coloring(input: &ColoringInput, g: &Graph) -> Result<EdgeColoring> {
    let path = PathBuf::from(&input.coloring);
    let text = if path.is_file() { std::fs::read_to_string(&path)? } else { input.coloring.clone() };
    let text = text.trim();
    let phi = if text.starts_with('{') {
        serde_json::from_str(text).context("parsing coloring JSON")?
    } else {
        EdgeColoring::parse_list(text)?
    };
    phi.check_graph(g)?;
    Ok(phi)
}

fn generate_named(family: &str, params: &[usize]) -> Result<Graph> {
    Ok(match (family, params) {
        ("two_block", [n]) => two_block_graph(*n)?.graph,
        ("hub", [k]) => hub_graph(*k)?.graph,
        ("two_block" | "hub", _) => bail!(GraphError::ParameterOutOfRange(format!("{family} takes 1 parameter"))),
        _ => generate(Family::parse(family, params)?)?,
    })
}

fn budget(time: Option<Duration>, nodes: Option<u64>) -> Budget {
    Budget { time, nodes }
}

// a closed pipe (e.g. `| head`) is not an error worth reporting
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn print(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("valid JSON"));
}

fn hex(xs: &[Gf2Vector]) -> Vec<String> {
    xs.iter().map(Gf2Vector::to_hex).collect()
}

fn solved(r: Result<parcol::solver::Solution<Value>, SolverError>) -> Result<u8> {
    match r {
        Ok(sol) => {
            print(&json!({ "value": sol.value, "status": "exact", "witness": sol.witness }));
            Ok(0)
        }
        Err(SolverError::BudgetExceeded { lower, upper }) => {
            print(&json!({ "value": null, "status": "interval", "lower": lower, "upper": upper }));
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(e.into()),
    }
}

fn execute(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen { family, params, dot } => {
            let g = generate_named(&family, &params)?;
            if dot {
                emit(g.to_dot(None).trim_end());
            } else {
                emit(&serde_json::to_string(&g)?);
            }
        }
        Command::CheckSpec { graph, coloring, root } | Command::Canonicalize { graph, coloring, root } => {
            let g = read_graph(&graph)?;
            let phi = read_coloring(&coloring, &g)?;
            match canonicalize(&g, &phi, root) {
                Ok(res) => {
                    let mut out = res.to_json();
                    out["spec"] = json!(true);
                    print(&out);
                }
                Err(ColoringError::NotSpec(..)) => {
                    let (u, v) = spec_violation(&g, &phi, root)?.expect("reported as not a spec");
                    print(&json!({ "spec": false, "parity_walk_between": [u, v] }));
                    return Ok(EXIT_CHECK);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::CheckPec { graph, coloring, max_vertices, max_steps } => {
            let g = read_graph(&graph)?;
            let phi = read_coloring(&coloring, &g)?;
            let path = find_parity_path(&g, &phi, PathBudget { max_vertices, max_steps })?;
            print(&json!({ "pec": path.is_none(), "parity_path": path }));
            if path.is_some() {
                return Ok(EXIT_CHECK);
            }
        }
        Command::Phat { graph, budget: b, max_nodes } => {
            let g = read_graph(&graph)?;
            let r = exact_phat(&g, budget(b, max_nodes)).map(|s| parcol::solver::Solution {
                value: s.value,
                witness: json!(hex(s.witness.labels())),
                nodes: s.nodes,
            });
            return solved(r);
        }
        Command::P { graph, budget: b, max_nodes } => {
            let g = read_graph(&graph)?;
            let r = exact_p(&g, budget(b, max_nodes)).map(|s| parcol::solver::Solution {
                value: s.value,
                witness: json!(s.witness.colors()),
                nodes: s.nodes,
            });
            return solved(r);
        }
        Command::Bounds { n, ell } => {
            let widths = match ell {
                Some(w) => vec![w],
                None => (1..=ceil_lg(n) as u64).collect(),
            };
            emit("n\tell\tlower\tgray_count\tupper");
            for w in widths {
                let (lo, hi) = pathpower_bounds(n, w)?;
                emit(&format!("{n}\t{w}\t{lo}\t{}\t{hi}", gray_count_bound(n, w)));
            }
        }
        Command::HopfStiefel { s, t } => {
            if s == 0 || t == 0 {
                bail!(GraphError::ParameterOutOfRange("s and t must be positive".into()));
            }
            emit(&hopf_stiefel(s, t).to_string());
        }
        Command::Gray { n, ell, check_trim } => {
            if let Some(m) = check_trim {
                return match trim_sweep(m) {
                    Ok(count) => {
                        print(&json!({ "max_m": m, "checked": count, "holds": true }));
                        Ok(0)
                    }
                    Err((q, r, m2)) => {
                        print(&json!({ "max_m": m, "holds": false, "counterexample": [q, r, m2] }));
                        Ok(EXIT_CHECK)
                    }
                };
            }
            let (n, ell) = (n.expect("required by clap"), ell.expect("required by clap"));
            let gc = gray_coloring(n, ell)?;
            let bounds = if gc.in_regime { pathpower_bounds(n as u64, ell as u64).ok() } else { None };
            print(&json!({
                "n": n,
                "ell": ell,
                "in_regime": gc.in_regime,
                "labeling": hex(gc.labeling.labels()),
                "coloring": gc.coloring.colors(),
                "num_colors": gc.coloring.num_colors(),
                "census": if gc.in_regime { json!(gc.census()) } else { Value::Null },
                "bounds": bounds.map(|(lo, hi)| json!({
                    "lower": lo,
                    "gray_count": gray_count_bound(n as u64, ell as u64),
                    "upper": hi,
                })),
            }));
        }
        Command::Embed { graph, budget: b, max_nodes } => {
            let g = read_graph(&graph)?;
            match hypercube_embed(&g, budget(b, max_nodes)) {
                Ok(Some(emb)) => {
                    let coords: Vec<String> = emb.coords.iter().map(|x| format!("{x:0w$b}", w = emb.k)).collect();
                    print(&json!({ "k": emb.k, "coords": coords }));
                }
                Ok(None) => {
                    print(&json!({ "k": ceil_lg(g.n() as u64), "coords": null }));
                    return Ok(EXIT_CHECK);
                }
                Err(SolverError::BudgetExceeded { lower, upper }) => {
                    print(&json!({ "status": "interval", "lower": lower, "upper": upper }));
                    return Ok(EXIT_BUDGET);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Experiment { id, seed } => {
            let reports = if id == "run-all" {
                run_all(seed)
            } else {
                match run(&id, seed) {
                    Some(r) => vec![r],
                    None => bail!(UnknownExperiment(id)),
                }
            };
            for r in &reports {
                eprintln!("{}", r.line());
            }
            emit(&serde_json::to_string_pretty(&reports)?);
            if reports.iter().any(|r| !r.pass) {
                return Ok(EXIT_CHECK);
            }
        }
    }
    Ok(0)
}

#[derive(Debug, thiserror::Error)]
#[error("unknown experiment {0}; expected run-all or one of {ids}", ids = IDS.join(", "))]
struct UnknownExperiment(String);

fn is_guard(cause: &(dyn std::error::Error + 'static)) -> bool {
    if let Some(e) = cause.downcast_ref::<GraphError>() {
        return matches!(e, GraphError::SizeCapExceeded { .. });
    }
    if let Some(e) = cause.downcast_ref::<ColoringError>() {
        return match e {
            ColoringError::Graph(g) => is_guard(g),
            other => matches!(other, ColoringError::BudgetExceeded(_) | ColoringError::OracleCapExceeded(_)),
        };
    }
    if let Some(e) = cause.downcast_ref::<SolverError>() {
        return match e {
            SolverError::Graph(g) => is_guard(g),
            SolverError::Coloring(c) => is_guard(c),
            other => matches!(other, SolverError::BudgetExceeded { .. } | SolverError::TooLarge(_)),
        };
    }
    if let Some(e) = cause.downcast_ref::<GrayError>() {
        return match e {
            GrayError::Graph(g) => is_guard(g),
            _ => false,
        };
    }
    false
}

/// Budget and size-guard failures get their own exit status.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.chain().any(is_guard) {
        EXIT_BUDGET
    } else {
        EXIT_USAGE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
