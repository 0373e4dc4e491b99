use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use spectral_kcluster::SolverOptions;

pub const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (edge-list v1, partition-csv v1, report v1, manifest v1)"
);

#[derive(Debug, Parser)]
#[command(name = "spectral-kcluster", version = VERSION, about = "Greedy spectral k-clustering and partition diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Sample a planted-partition graph.
    Generate(GenerateArgs),
    /// Smallest eigenvalues of the normalized Laplacian.
    Spectrum(SpectrumArgs),
    /// Spectral embedding coordinates.
    Embed(EmbedArgs),
    /// Partition a graph into k clusters.
    Cluster(ClusterArgs),
    /// Score a partition.
    Evaluate(EvaluateArgs),
    /// Re-run a recorded invocation and check its outputs.
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::Spectrum(_) => "spectrum",
            Command::Embed(_) => "embed",
            Command::Cluster(_) => "cluster",
            Command::Evaluate(_) => "evaluate",
            Command::Replay(_) => "replay",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SolverArgs {
    /// Residual tolerance for every eigenpair.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Matrix-vector product budget [default: 10 n].
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Graphs up to this size use the dense solver.
    #[arg(long, default_value_t = 300)]
    pub dense_cutoff: usize,
}

impl SolverArgs {
    pub fn options(&self) -> SolverOptions {
        SolverOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            dense_cutoff: self.dense_cutoff,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GenerateArgs {
    /// Block sizes.
    #[arg(long, value_delimiter = ',', default_value = "40,40,40,40,40")]
    pub blocks: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub p_in: f64,
    #[arg(long, default_value_t = 0.05)]
    pub p_mid: f64,
    #[arg(long, default_value_t = 0.005)]
    pub p_out: f64,
    /// Groups of block indices, e.g. "0,1;2,3,4".
    #[arg(long, default_value = "0,1;2,3,4")]
    pub supergroups: String,
    #[arg(long, env = "SPECTRAL_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Edge-list output.
    #[arg(long)]
    pub out: PathBuf,
    /// Planted block partition (CSV).
    #[arg(long)]
    pub blocks_out: Option<PathBuf>,
    /// Supergroup partition (CSV).
    #[arg(long)]
    pub supergroups_out: Option<PathBuf>,
    /// Lift the size guards.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Reports min(k + 1, n) eigenvalues.
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    /// CSV "index,eigenvalue".
    #[arg(long)]
    pub out: PathBuf,
    /// SVG plot with the k / k+1 gap highlighted.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct EmbedArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    /// CSV "vertex,x1,...,xk".
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Greedy,
    Fast,
    Kmeans,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingArg {
    Random,
    Exhaustive,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ClusterArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Method::Greedy)]
    pub method: Method,
    /// Sampling error of the fast method.
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Multiply the default radius by this factor.
    #[arg(long, conflicts_with = "radius")]
    pub radius_scale: Option<f64>,
    /// Use this radius R directly (balls have radius 2R).
    #[arg(long)]
    pub radius: Option<f64>,
    /// Candidate selection of the fast method.
    #[arg(long, value_enum, default_value_t = SamplingArg::Random)]
    pub sampling: SamplingArg,
    /// Iteration cap of the k-means baseline.
    #[arg(long, default_value_t = 100)]
    pub kmeans_iter: usize,
    #[arg(long, env = "SPECTRAL_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    /// Partition CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Per-round trace (JSON).
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub partition: PathBuf,
    /// Partition to measure the distance to.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Spectral dimension [default: cluster count of the partition].
    #[arg(long)]
    pub k: Option<usize>,
    /// Clusters up to this size get exact internal conductance.
    #[arg(long, default_value_t = 20)]
    pub exact_limit: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub solver: SolverArgs,
    /// JSON report.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest written next to an earlier output.
    #[arg(long)]
    pub manifest: PathBuf,
}
