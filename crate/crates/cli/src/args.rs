use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "caseiso",
    version,
    about = "Delay bounds and simulations for delayed case isolation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the maximum admissible delay over R0 or over c_v.
    Bound(BoundArgs),
    /// Classify one parameter set and report its rightmost root.
    Classify(ClassifyArgs),
    /// Integrate a delayed SIR system and fit its growth rate.
    Dde(DdeArgs),
    /// Run a network Monte Carlo ensemble.
    Netsim(NetsimArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    /// x is R0 of a homogeneous population.
    R0,
    /// x is the contact-rate coefficient of variation at fixed R0.
    Cv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum HetMode {
    #[default]
    Mixed,
    FixedGraph,
}

impl From<HetMode> for caseiso::HeterogeneityMode {
    fn from(m: HetMode) -> Self {
        match m {
            HetMode::Mixed => caseiso::HeterogeneityMode::MixedPopulation,
            HetMode::FixedGraph => caseiso::HeterogeneityMode::FixedGraph,
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub sweep: Sweep,
    /// Inclusive range `start:stop:step`.
    #[arg(long)]
    pub range: String,
    /// Comma-separated isolated fractions.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    /// R0 held fixed in the c_v sweep.
    #[arg(long, default_value_t = 3.0)]
    pub r0: f64,
    /// Mean degree, only used by the fixed-graph correction.
    #[arg(long, default_value_t = 4.0)]
    pub mu: f64,
    #[arg(long, value_enum, default_value_t = HetMode::Mixed)]
    pub het_mode: HetMode,
    #[arg(long)]
    pub out: PathBuf,
}

/// Transmission, recovery and isolation parameters.
#[derive(Debug, Args, Clone)]
pub struct RateArgs {
    /// Per-contact transmission rate.
    #[arg(long, conflicts_with = "r0", required_unless_present = "r0")]
    pub rho: Option<f64>,
    /// Homogeneous-equivalent reproduction number `rho mu / gamma`; sets rho.
    #[arg(long)]
    pub r0: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    #[arg(long)]
    pub alpha: f64,
    /// Isolation delay in days.
    #[arg(long, default_value_t = 0.0)]
    pub t_delay: f64,
}

/// Contact heterogeneity: a degree distribution file or its first two moments.
#[derive(Debug, Args, Clone)]
pub struct PopulationArgs {
    /// Degree distribution as `k,count` CSV.
    #[arg(long, conflicts_with_all = ["mu", "cv"])]
    pub dist: Option<PathBuf>,
    #[arg(long, default_value_t = 4.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 0.0)]
    pub cv: f64,
    #[arg(long, value_enum, default_value_t = HetMode::Mixed)]
    pub het_mode: HetMode,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub rates: RateArgs,
    #[command(flatten)]
    pub population: PopulationArgs,
    /// Also write the result line to this file, with a sidecar.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SystemChoice {
    Homogeneous,
    Reduced,
    Partitioned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum HistoryChoice {
    #[default]
    Constant,
    /// Pure exponential at the rightmost root's real part.
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum PartitionSeeding {
    /// Infectious counts proportional to N_k.
    #[default]
    Uniform,
    /// Infectious counts proportional to k N_k.
    DegreeWeighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum IsolationScheme {
    /// Every partition isolates the fraction alpha.
    #[default]
    Uniform,
    /// Partition k isolates alpha k / n.
    DegreeProportional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum SusceptibleChoice {
    #[default]
    Frozen,
    Dynamic,
}

#[derive(Debug, Args)]
pub struct DdeArgs {
    #[arg(long, value_enum, default_value_t = SystemChoice::Reduced)]
    pub system: SystemChoice,
    #[command(flatten)]
    pub rates: RateArgs,
    #[command(flatten)]
    pub population: PopulationArgs,
    #[arg(long, default_value_t = caseiso::dde::DEFAULT_DT)]
    pub dt: f64,
    /// Integration horizon in days.
    #[arg(long, default_value_t = 100.0)]
    pub horizon: f64,
    #[arg(long, value_enum, default_value_t = HistoryChoice::Constant)]
    pub history: HistoryChoice,
    /// Initial infectious proportion.
    #[arg(long, default_value_t = 1e-5)]
    pub initial: f64,
    #[arg(long, value_enum, default_value_t = PartitionSeeding::Uniform)]
    pub seeding: PartitionSeeding,
    #[arg(long, value_enum, default_value_t = IsolationScheme::Uniform)]
    pub isolation: IsolationScheme,
    #[arg(long, value_enum, default_value_t = SusceptibleChoice::Frozen)]
    pub susceptible: SusceptibleChoice,
    /// Replace the delay by the stability bound of the parameter set.
    #[arg(long)]
    pub at_boundary: bool,
    /// Integrate the partitioned and reduced systems side by side.
    #[arg(long, requires = "dist")]
    pub paired: bool,
    /// Start of the growth fit window; defaults to `5 max(1/gamma, T_delay)`.
    #[arg(long)]
    pub fit_start: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphChoice {
    Config,
    Ba,
    Ws,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum SeedingChoice {
    #[default]
    Uniform,
    Degree,
}

#[derive(Debug, Args)]
pub struct NetsimArgs {
    #[arg(long, value_enum)]
    pub graph: GraphChoice,
    #[arg(long, default_value_t = 100_000)]
    pub nodes: usize,
    #[arg(long, default_value_t = 4.0)]
    pub mean_degree: f64,
    /// Rewiring probability of the small-world generator.
    #[arg(long, default_value_t = caseiso::netsim::GraphKind::DEFAULT_REWIRE)]
    pub rewire: f64,
    #[arg(long, default_value_t = 0.2)]
    pub rho: f64,
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub t_delay: f64,
    #[arg(long, value_enum, default_value_t = SeedingChoice::Uniform)]
    pub seeding: SeedingChoice,
    #[arg(long, default_value_t = caseiso::netsim::EnsembleConfig::DEFAULT_INITIAL_CASES)]
    pub initial_cases: usize,
    #[arg(long, default_value_t = 100)]
    pub runs: usize,
    #[arg(long, default_value_t = 30)]
    pub days: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Share one graph realisation across all runs.
    #[arg(long)]
    pub reuse_graph: bool,
    /// 100000 nodes and 100 runs.
    #[arg(long, conflicts_with_all = ["nodes", "runs"])]
    pub desk_scale: bool,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Per-run daily series.
    #[arg(long)]
    pub out: PathBuf,
    /// Ensemble summary; defaults to `<out>.summary.csv`.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Write the edge list of the first run's graph here.
    #[arg(long)]
    pub edge_list: Option<PathBuf>,
}
