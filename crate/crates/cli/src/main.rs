use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "nodal", version, about = "Weighted expansion of Laplacian eigenvector supports")]
struct Cli {
    /// Eigensolver used for Laplacian spectra.
    #[arg(long, global = true, default_value = "jacobi")]
    solver: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct SearchArgs {
    /// Search mode: exact or heuristic.
    #[arg(long, default_value = "exact")]
    mode: String,
    /// Move evaluations allowed to the heuristic.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
}

#[derive(clap::Args, Debug, Clone)]
#[command(group(ArgGroup::new("weights_source").required(true).args(["eigvec", "weights"])))]
struct WeightSource {
    /// Use w = y^2 for eigenvector K, on its positive and negative supports.
    #[arg(long, value_name = "K")]
    eigvec: Option<usize>,
    /// Node weights file, one value per line, applied to the whole graph.
    #[arg(long, value_name = "WFILE")]
    weights: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the Laplacian eigenvalues as one CSV line.
    Spectrum { file: PathBuf },
    /// Check a + b <= k for eigenvector k and report every proof step.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        search: SearchArgs,
        /// Also check that both supports of the second eigenvector expand.
        #[arg(long)]
        corollary: bool,
    },
    /// Decide whether a weighted graph is a c-expander.
    ExpanderCheck {
        file: PathBuf,
        #[command(flatten)]
        source: WeightSource,
        #[arg(long)]
        c: f64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search for a partition into k classes that all expand less than c.
    Partition {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        c: f64,
        #[command(flatten)]
        source: WeightSource,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run every proof-step check on user-supplied support partitions.
    VerifyProof {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "PFILE")]
        pos: PathBuf,
        #[arg(long, value_name = "PFILE")]
        neg: PathBuf,
    },
    /// Generate a graph family as an edge list.
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Two isomorphic regular blocks joined by a path: weighted versus
    /// unweighted expansion of the positive support.
    DemoCounterexample {
        #[arg(long, default_value_t = 10)]
        n_block: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Defaults to 2 * n_block.
        #[arg(long)]
        path_len: Option<usize>,
    },
    /// Check a + b <= k on every connected graph up to max-n nodes.
    BatchVerify {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled graphs per size above the full-enumeration limit.
        #[arg(long, default_value_t = 50_000)]
        sample_cap: usize,
        /// Largest size enumerated in full.
        #[arg(long, default_value_t = 6)]
        full_max_n: usize,
    },
}

/// How a successful run ended.
pub enum Outcome {
    Pass,
    CheckFailed,
}

fn exit_code(result: &anyhow::Result<Outcome>) -> u8 {
    match result {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::CheckFailed) => 1,
        Err(_) => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli);
    if let Err(e) = &result {
        eprintln!("error: {e:#}");
    }
    ExitCode::from(exit_code(&result))
}
