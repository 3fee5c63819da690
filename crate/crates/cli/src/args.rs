use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "minranklab",
    version,
    about = "Minrank solvers, Kneser constructions and bound checkers"
)]
pub struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact minrank and its sandwich bounds.
    #[command(subcommand)]
    Minrank(MinrankCmd),
    /// Generalized Kneser graphs and their real representations.
    #[command(subcommand)]
    Kneser(KneserCmd),
    /// Constants and inequality checks for the local-lemma lower bound.
    #[command(subcommand)]
    Lll(LllCmd),
    /// Exhaustive lemma sweeps.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Extremal-value experiments.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Convert between graph6 (.g6) and edge-list files.
    Convert(ConvertArgs),
}

#[derive(Debug, Subcommand)]
pub enum MinrankCmd {
    /// Exact minrank over GF(p) with a witness matrix.
    Exact(MinrankExactArgs),
    /// Field-independent lower and upper bounds.
    Bounds(GraphArg),
}

#[derive(Debug, Args, Serialize)]
pub struct GraphArg {
    /// Graph file: graph6 if it ends in .g6, otherwise a directed edge list.
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct MinrankExactArgs {
    /// Prime field size.
    #[arg(long)]
    pub field: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub graph: GraphArg,
    /// Refuse when more candidate subspaces would have to be enumerated.
    #[arg(long, default_value_t = 5_000_000)]
    pub max_subspaces: u64,
}

#[derive(Debug, Subcommand)]
pub enum KneserCmd {
    /// Build K(d, s, m), its representation matrix and factorization.
    Build(KneserBuildArgs),
    /// Rank-bound numbers for the odd-girth construction, no matrices built.
    Theorem(KneserTheoremArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct KneserBuildArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub m: usize,
    /// Compute the exact rank by fraction-free elimination.
    #[arg(long)]
    pub check_rank: bool,
    /// Search for odd cycles of length at most L (needs s = d/2).
    #[arg(long, value_name = "L")]
    pub check_odd_girth: Option<usize>,
    /// Write the representation matrix in the matrix text format.
    #[arg(long, value_name = "PATH")]
    pub emit_matrix: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct KneserTheoremArgs {
    /// Odd cycle-length bound.
    #[arg(long)]
    pub ell: usize,
    /// Target vertex count; d is the smallest multiple of 2*ell that reaches it.
    #[arg(long, conflicts_with = "d", required_unless_present = "d")]
    pub n: Option<u64>,
    /// Ground-set size, a multiple of 2*ell.
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum LllCmd {
    /// Find constants and check the inequalities at n or over a grid.
    Analyze(LllAnalyzeArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct LllAnalyzeArgs {
    /// Forbidden graph: a name such as K3, C5, P4, K1,3, or a graph file.
    #[arg(long)]
    pub h_graph: String,
    #[arg(long)]
    pub field_size: u64,
    #[arg(long, conflicts_with = "find_threshold", required_unless_present = "find_threshold")]
    pub n: Option<u64>,
    /// Scan n = 2, 4, ..., 2^40 for the point from which everything holds.
    #[arg(long)]
    pub find_threshold: bool,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Run one or more lemma sweeps; one JSON line per report.
    Lemma(VerifyLemmaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaId {
    Sparsity,
    Count,
    Submatrix,
    Collection,
    Forest,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyLemmaArgs {
    /// Which sweep; repeat the flag to run several.
    #[arg(long, value_enum, required = true)]
    pub id: Vec<LemmaId>,
    /// Largest matrix size for matrix sweeps (default 4 for sparsity, 3 otherwise).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Vertex count for the forest sweep.
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// Tree for the forest sweep.
    #[arg(long, default_value = "P3")]
    pub h: String,
    /// Prime field size.
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Also write a CSV summary.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCmd {
    /// Sampled lower bound on g(n, H, F).
    GEstimate(GEstimateArgs),
    /// Exact g(n, H, F) by exhaustive sweep (n <= 6).
    GExhaustive(GExhaustiveArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GEstimateArgs {
    #[arg(long)]
    pub n: usize,
    /// Forbidden graph: a name or a graph file.
    #[arg(long)]
    pub h: String,
    #[arg(long)]
    pub field: u64,
    #[arg(long)]
    pub samples: u64,
    #[arg(long, env = "MINRANKLAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Arc probability, or `theorem` for 1 - c2 n^-gamma.
    #[arg(long, default_value = "0.5")]
    pub edge_prob: String,
    #[arg(long, default_value_t = 5_000_000)]
    pub max_subspaces: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct GExhaustiveArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub h: String,
    #[arg(long)]
    pub field: u64,
    #[arg(long, default_value_t = 5_000_000)]
    pub max_subspaces: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct ConvertArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long = "out", value_name = "PATH")]
    pub output: PathBuf,
}
