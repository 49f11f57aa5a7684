//! `qwalk`: generate networks, compile walk circuits, run and compare them.

mod commands;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Discrete-time quantum walks on complex networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a Watts-Strogatz graph.
    Gen(GenArgs),
    /// Evolve a walk and write per-step node probabilities.
    Run(RunArgs),
    /// Write the compiled circuit as JSON and report its resources.
    Export(ExportArgs),
    /// Summarize a graph file.
    Info {
        /// Graph JSON or edge-list file.
        graph: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Node count, even ring degree and rewiring probability.
    #[arg(long, num_args = 3, value_names = ["N", "K", "BETA"], required = true)]
    ws: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
    format: GraphFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Edgelist,
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct GraphSource {
    /// Graph JSON or edge-list file, or a builtin: cycleN, completeN, starN, pathN, triangle.
    #[arg(short = 'g', long = "graph", group = "source")]
    graph: Option<String>,
    /// Generate a Watts-Strogatz graph instead of reading one.
    #[arg(long, num_args = 3, value_names = ["N", "K", "BETA"], group = "source")]
    ws: Option<Vec<String>>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Number of walk steps.
    #[arg(short = 't', long, default_value_t = 1)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Engine::Both)]
    engine: Engine,
    /// `uniform`, `single-arc TAIL HEAD` or `custom FILE`.
    #[arg(long, num_args = 1..=3, value_names = ["KIND", "ARG"], default_values_t = vec!["uniform".to_string()])]
    init: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long, default_value_t = qwalk_core::circuit::DEFAULT_QUBIT_BUDGET)]
    qubit_budget: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write per-step circuit statevectors (JSON) to this file.
    #[arg(long)]
    snapshots: Option<PathBuf>,
    /// Add multinomially sampled counts with this many shots per step.
    #[arg(long)]
    shots: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Circuit,
    Oracle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(short = 't', long, default_value_t = 1)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = qwalk_core::circuit::DEFAULT_QUBIT_BUDGET)]
    qubit_budget: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => commands::gen(
            &a.ws,
            a.seed,
            a.output.as_deref(),
            matches!(a.format, GraphFormat::Json),
        ),
        Command::Run(a) => {
            let opts = commands::RunOptions {
                steps: a.steps,
                engine: a.engine,
                init: a.init,
                seed: a.seed,
                tolerance: a.tolerance,
                qubit_budget: a.qubit_budget,
                format: a.format,
                output: a.output,
                snapshots: a.snapshots,
                shots: a.shots,
            };
            commands::run(a.source.graph.as_deref(), a.source.ws.as_deref(), &opts)
        }
        Command::Export(a) => commands::export(
            a.source.graph.as_deref(),
            a.source.ws.as_deref(),
            a.seed,
            a.steps,
            a.qubit_budget,
            a.output.as_deref(),
        ),
        Command::Info { graph } => commands::info(&graph),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("qwalk: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
