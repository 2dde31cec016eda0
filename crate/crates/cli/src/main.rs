use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linspect_core::io::{detect_format, parse_graph, read_catalog, Format};
use linspect_core::{Budget, Graph, SolveOptions};

mod commands;

/// Exact linear intersection numbers of graphs.
#[derive(Parser)]
#[command(name = "linspect", version)]
struct Cli {
    /// Input format; detected from the content when omitted.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetArgs {
    /// Give up after exploring this many search nodes.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Give up after this many seconds.
    #[arg(long)]
    budget_secs: Option<f64>,
}

impl BudgetArgs {
    fn options(self) -> SolveOptions {
        SolveOptions::with_budget(Budget {
            max_nodes: self.budget_nodes,
            max_time: self.budget_secs.map(Duration::from_secs_f64),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute v(G), or the reduced number with --reduced, with a certificate.
    Solve {
        file: PathBuf,
        #[arg(long)]
        reduced: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Print a certificate document instead of text.
        #[arg(long)]
        json: bool,
        /// Let closed forms for recognized classes seed the search.
        #[arg(long)]
        fast_path: bool,
        /// Omit the timestamp so output is byte-reproducible.
        #[arg(long)]
        deterministic: bool,
    },
    /// Print every lower bound and the edge upper bound.
    Bounds {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Vertex taxonomy and almost triangle-free decomposition.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Compare the chromatic number with v(G).
    Efl {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Apply a graph surgery and report the value it predicts.
    Surgery {
        #[command(subcommand)]
        op: SurgeryOp,
        /// Solve the graphs involved and check every prediction.
        #[arg(long, global = true)]
        verify: bool,
        #[arg(long, global = true)]
        json: bool,
    },
    /// Run an invariant check on every graph of a graph6 catalog.
    Batch {
        catalog: PathBuf,
        #[arg(long, value_enum)]
        check: Check,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Re-check a certificate document from scratch.
    Verify { certificate: PathBuf },
}

#[derive(Subcommand)]
enum SurgeryOp {
    /// Identify vertex `a1` of the first graph with `a2` of the second.
    Join {
        first: PathBuf,
        second: PathBuf,
        a1: usize,
        a2: usize,
    },
    /// Merge two non-adjacent vertices.
    Collapse { file: PathBuf, a: usize, b: usize },
    /// Delete the edges of a clique of at least three vertices.
    RemoveClique {
        file: PathBuf,
        #[arg(required = true, num_args = 3..)]
        clique: Vec<usize>,
    },
    /// Delete one edge.
    DeleteEdge { file: PathBuf, a: usize, b: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Efl,
    Oracle,
    Atf,
    Bounds,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

/// A failed command: the message goes to stderr, the code to the shell.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const CHECK_FAILED: u8 = 1;
pub const USAGE: u8 = 2;
pub const BUDGET: u8 = 3;
pub const PARSE: u8 = 4;

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn read_text(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure::new(USAGE, format!("{}: {e}", path.display())))
}

fn load_graph(path: &PathBuf, format: Option<Format>) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    let format = format.unwrap_or_else(|| detect_format(&text));
    parse_graph(&text, format).map_err(|e| Failure::new(PARSE, format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let load = |p: &PathBuf| load_graph(p, cli.format);
    match cli.command {
        Command::Solve {
            file,
            reduced,
            budget,
            json,
            fast_path,
            deterministic,
        } => {
            let opts = SolveOptions {
                fast_path,
                ..budget.options()
            };
            commands::solve(&load(&file)?, reduced, &opts, json, deterministic)
        }
        Command::Bounds { file, json } => commands::bounds(&load(&file)?, json),
        Command::Classify { file, budget, json } => {
            commands::classify(&load(&file)?, &budget.options(), json)
        }
        Command::Efl { file, budget } => commands::efl(&load(&file)?, &budget.options()),
        Command::Surgery { op, verify, json } => {
            let opts = SolveOptions::default();
            let outcome = match op {
                SurgeryOp::Join {
                    first,
                    second,
                    a1,
                    a2,
                } => linspect_core::constructions::join_at_vertex(
                    &load(&first)?,
                    &load(&second)?,
                    a1,
                    a2,
                    &opts,
                ),
                SurgeryOp::Collapse { file, a, b } => {
                    linspect_core::constructions::collapse(&load(&file)?, a, b, &opts)
                }
                SurgeryOp::RemoveClique { file, clique } => {
                    let g = load(&file)?;
                    if let Some(&x) = clique.iter().find(|&&x| x >= g.n()) {
                        return Err(Failure::new(USAGE, format!("vertex {x} out of range")));
                    }
                    linspect_core::constructions::remove_clique(
                        &g,
                        clique.into_iter().collect(),
                        &opts,
                    )
                }
                SurgeryOp::DeleteEdge { file, a, b } => {
                    linspect_core::constructions::delete_edge(&load(&file)?, (a, b), &opts)
                }
            }
            .map_err(|e| Failure::new(USAGE, e.to_string()))?;
            commands::surgery(&outcome, verify, json, &opts)
        }
        Command::Batch {
            catalog,
            check,
            budget,
        } => {
            let text = read_text(&catalog)?;
            let graphs = read_catalog(&text).map_err(|(line, e)| {
                Failure::new(PARSE, format!("{}:{line}: {e}", catalog.display()))
            })?;
            let lines: Vec<&str> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            commands::batch(&graphs, &lines, check, &budget.options())
        }
        Command::Verify { certificate } => commands::verify(&read_text(&certificate)?),
    }
}

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("LINSPECT_THREADS")
        .ok()
        .and_then(|t| t.parse().ok())
    {
        // Only fails when a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("linspect: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
