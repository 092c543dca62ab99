use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "tprod", version, about = "Boundedness analysis for products of Toeplitz operators on H2")]
pub struct Cli {
    /// Worker threads (TP_THREADS overrides).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full analysis of T_u T_v.
    Analyze(AnalyzeArgs),
    /// Check whether (u, v) is an admissible pair.
    Admissible(PairArgs),
    /// Boundary pathology constructions and scans.
    #[command(subcommand)]
    Pathology(PathologyCommand),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub u: String,
    /// Analytic part of v.
    #[arg(long = "v-plus")]
    pub v_plus: String,
    /// v = v_plus + conj(v_minus); v_minus must vanish at 0.
    #[arg(long = "v-minus")]
    pub v_minus: Option<String>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Largest section degree N; a power of two >= 32.
    #[arg(long = "max-degree", default_value_t = 256)]
    pub max_degree: usize,
    /// Comma-separated Sarason radii, strictly increasing in (0, 1).
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,
    /// JSON report path (stdout when absent).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// CSV norm table path.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum PathologyCommand {
    /// Blaschke quotient with a pole of prescribed order at 1.
    PoleOrder {
        /// Comma-separated zeros inside the disk.
        #[arg(long, value_delimiter = ',', conflicts_with = "dyadic")]
        zeros: Option<Vec<String>>,
        /// Use the zeros 1 - 2^-k, k = 1..=count.
        #[arg(long)]
        dyadic: Option<usize>,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Scan |(z - zeta)^n f| on dyadic arcs approaching zeta.
    Oscillation {
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "1")]
        zeta: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Step function with poles of every order at 1.
    StepFunction {
        #[arg(long)]
        k: usize,
        /// Power used in the growth column.
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Boundary L^p norm refinement table.
    HpNorm {
        #[arg(long)]
        f: String,
        #[arg(long)]
        p: f64,
        /// Comma-separated grid sizes (powers of two).
        #[arg(long, value_delimiter = ',')]
        grids: Option<Vec<usize>>,
        #[arg(long)]
        table: Option<PathBuf>,
    },
}
