mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "minrank",
    version,
    about = "Minrank of graphs: solver, bounds and experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample G(n, p) and print it as graph JSON.
    Gen(GenArgs),
    /// Compute the minrank of a graph and emit a certificate.
    Minrank(MinrankArgs),
    /// Check a minrank certificate.
    Verify(VerifyArgs),
    /// Threshold and union bound for G(n, p).
    Bounds(BoundsArgs),
    /// Monte Carlo report over a grid of (n, p).
    Experiment(ExperimentArgs),
    /// Zero-pattern tools.
    #[command(subcommand)]
    Patterns(PatternsCommand),
    /// Geometric representations.
    #[command(subcommand)]
    Geom(GeomCommand),
}

#[derive(Args, Debug)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct MinrankArgs {
    /// Graph JSON file (`-` for stdin); otherwise sample with --n/--p/--seed.
    graph: Option<PathBuf>,
    #[arg(long, conflicts_with = "graph", requires = "p")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Prime modulus q of GF(q).
    #[arg(long, default_value_t = 2)]
    field: u32,
    /// Search node budget.
    #[arg(long, default_value_t = minrank_lab::minrank::DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Certificate JSON file (`-` for stdin).
    certificate: PathBuf,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    p: f64,
    /// Rank bound; defaults to the threshold rounded down, at least 1.
    #[arg(long)]
    k: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long = "n-list", alias = "n", value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[arg(long = "p-list", alias = "p", value_delimiter = ',', required = true)]
    p_list: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    field: u32,
    #[arg(long, default_value_t = minrank_lab::minrank::DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads; the output does not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value = "csv")]
    format: String,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand, Debug)]
enum PatternsCommand {
    /// Count the zero-patterns of a polynomial family over GF(q).
    Rbg {
        /// JSON list of polynomials, or `{"polys": [...]}`.
        polys: PathBuf,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Find an (n, k, s) witness for a square matrix.
    NksWitness {
        /// Matrix JSON file (`gf:q` or `rational`).
        matrix: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Count (n, k, s) zero-patterns for every k and s.
    NksCensus {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Find a principal submatrix with a witness and no larger rank ratio.
    Lemma22 {
        /// Matrix JSON file; otherwise a random GF(q) matrix from --n/--rank/--seed.
        matrix: Option<PathBuf>,
        #[arg(long, conflicts_with = "matrix", requires = "rank")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand, Debug)]
enum GeomCommand {
    /// Vertices of the unit regular simplex with d points.
    Simplex {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Unit-distance matrix of a point configuration and its rank.
    UnitDistance {
        /// PointConfig JSON; otherwise place a sampled G(n, p) on a simplex.
        config: Option<PathBuf>,
        #[arg(long, conflicts_with = "config", requires = "p")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Touching-spheres matrix of a sphere configuration and its rank.
    Spheres {
        /// SphereConfig JSON.
        config: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Bilinear factorization of a symmetric polynomial of degree <= 3.
    Pgraph {
        /// MultiPoly JSON in 2d variables, x block first.
        poly: PathBuf,
        #[arg(long)]
        d: usize,
        /// `rational` or a prime q.
        #[arg(long, default_value = "rational")]
        field: String,
        /// JSON list of points; adds the matrix P(x_i, x_j).
        #[arg(long)]
        reps: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
