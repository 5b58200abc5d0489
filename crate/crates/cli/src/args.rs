use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qwmst",
    version,
    about = "Minimum spanning trees ranked by quantum-walk transition probabilities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a random complete graph with integer weights.
    Gen(GenArgs),
    /// Quantum Kruskal on a graph file.
    Solve(SolveArgs),
    /// Quantum Kruskal with a maximum-degree constraint.
    SolveMdc(SolveMdcArgs),
    /// Run a classical baseline.
    Baseline(BaselineArgs),
    /// Weight and entropy of every spanning tree (V <= 9), as CSV.
    Entropy(EntropyArgs),
    /// Seeded experiment sweeps, as CSV.
    #[command(subcommand)]
    Sweep(SweepCommand),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub v: usize,
    #[arg(long, default_value_t = 1)]
    pub wmin: u64,
    #[arg(long, default_value_t = 20)]
    pub wmax: u64,
    #[arg(long, env = "QWMST_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct TauArgs {
    /// Fixed evolution time.
    #[arg(long, conflicts_with = "tau_heuristic")]
    pub tau: Option<f64>,
    /// Use safety * (4/(pi sqrt V) + 0.1) instead of a fixed time.
    #[arg(long)]
    pub tau_heuristic: bool,
    #[arg(long, default_value_t = 0.5, requires = "tau_heuristic")]
    pub safety: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the Hamiltonian as CSV.
    #[arg(long)]
    pub dump_h: Option<PathBuf>,
    /// Write the transition-probability matrix at the solve time as CSV.
    #[arg(long)]
    pub dump_p: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub tau: TauArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SolveMdcArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub delta: usize,
    #[command(flatten)]
    pub tau: TauArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BaselineArgs {
    pub input: PathBuf,
    /// kruskal, prim, kruskal_mdc, prim_mdc, greedy_mdc, ant_colony_mdc or exact_dcmst.
    #[arg(long)]
    pub algo: String,
    #[arg(long)]
    pub delta: Option<usize>,
    /// Seed for the ant colony.
    #[arg(long, env = "QWMST_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct EntropyArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    pub tau: f64,
    /// Mark trees above this maximum degree infeasible.
    #[arg(long)]
    pub delta: Option<usize>,
    /// Probabilities used for the entropy: raw or normalized.
    #[arg(long, default_value = "raw")]
    pub basis: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Vertex counts: a value, an inclusive range "4..8" or a list "4,8,16".
    #[arg(long, default_value = "4")]
    pub v: String,
    /// Maximum degrees, same syntax as --v.
    #[arg(long, default_value = "2")]
    pub deltas: String,
    #[arg(long, default_value_t = 10)]
    pub instances: usize,
    #[arg(long, env = "QWMST_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub wmin: u64,
    #[arg(long, default_value_t = 20)]
    pub wmax: u64,
    #[arg(long, default_value_t = 0.01)]
    pub tau_start: f64,
    #[arg(long, default_value_t = 3.0)]
    pub tau_stop: f64,
    #[arg(long, default_value_t = 0.01)]
    pub tau_step: f64,
    /// Comma-separated algorithm labels for mdc-bench.
    #[arg(long)]
    pub algos: Option<String>,
    #[command(flatten)]
    pub tau: TauArgs,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    /// CSV output path (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Resume journal; finished tasks are skipped on rerun.
    #[arg(long)]
    pub journal: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SweepCommand {
    /// Selected weight against the MST weight at every grid time.
    Tau(SweepArgs),
    /// Largest grid time whose whole prefix reproduces the MST.
    TauMax(SweepArgs),
    /// Every algorithm at every maximum degree.
    MdcBench(SweepArgs),
    /// Per-degree failure rate of Quantum Kruskal with MDC against the exact optimum.
    FailureRate {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Also write the per-instance records here.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Split-propagator deviation per (time, steps).
    Trotter {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Graph file; defaults to the first generated instance.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Step counts, same syntax as --v.
        #[arg(long, default_value = "1,2,4,8")]
        steps: String,
    },
}
