use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use reload_cover_cli::experiment::Plan;
use reload_cover_cli::{
    cmd_classify, cmd_cover, cmd_experiment, cmd_generate, cmd_reduce, cmd_verify, Algorithm, Kind,
};

/// Monochromatic and minimum reload cost cycle covers of 2-edge-colored complete graphs.
///
/// Randomness is ChaCha8 seeded from a single u64, so every run is
/// reproducible. Exit codes: 0 ok, 1 error, 2 no cover, 3 infeasible, 4 parse error.
#[derive(Parser)]
#[command(name = "mrc3", version)]
struct Cli {
    /// Accept asymmetric reload cost matrices in instance files.
    #[arg(long, global = true)]
    asymmetric: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random 2-edge-colored K_n.
    Generate {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value = "equitable")]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Uniform reload cost between red and blue.
        #[arg(long, default_value_t = 1)]
        cost: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Report whether a coloring is equitable, nearly equitable or neither.
    Classify { instance: PathBuf },
    /// Find a cycle cover and report its reload cost.
    Cover {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "mcca")]
        algorithm: Algorithm,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a cover file against an instance.
    Verify { instance: PathBuf, cover: PathBuf },
    /// Complete a partial instance with big-M fresh colors.
    Reduce {
        instance: PathBuf,
        /// Defaults to n * max(rho) + 1.
        #[arg(long)]
        big_m: Option<u64>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the cover algorithm on generated instances and write CSV.
    Experiment {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "equitable")]
        kinds: Vec<Kind>,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed_start: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let asym = cli.asymmetric;
    let mut stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Generate { n, kind, seed, cost, out } => cmd_generate(n, kind, seed, cost, out.as_deref(), &mut stdout),
        Command::Classify { instance } => cmd_classify(&instance, asym, &mut stdout),
        Command::Cover { instance, algorithm, out } => cmd_cover(&instance, algorithm, out.as_deref(), asym, &mut stdout),
        Command::Verify { instance, cover } => cmd_verify(&instance, &cover, asym, &mut stdout),
        Command::Reduce { instance, big_m, out } => cmd_reduce(&instance, big_m, out.as_deref(), asym, &mut stdout),
        Command::Experiment { n_min, n_max, kinds, seeds, seed_start, csv } => {
            let plan = Plan { n_min, n_max, kinds, seed_start, seeds };
            cmd_experiment(&plan, csv.as_deref(), &mut stdout)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("mrc3: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
