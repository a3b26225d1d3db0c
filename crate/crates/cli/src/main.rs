use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod render;

use commands::{CliError, Outcome};

/// Equidistant cyclic codes, the imprimitive groups built from them, and
/// certificates for their intersection density.
#[derive(Parser, Debug)]
#[command(name = "pqdensity", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Cap on enumerated codewords, group elements, or brute-force group order.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Seed for the randomized factor splitter.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factor the cyclotomic polynomial Phi_m over F_r.
    Factor {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u64,
    },
    /// Build a cyclic code and check its zero counts and weights.
    Code(CodeArgs),
    /// Certify the intersection density of a code group or the degree-33 example.
    Certify(CertifyArgs),
    /// List projective primes p = (q^k - 1)/(q - 1) with k <= kmax.
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        kmax: u32,
    },
    /// Exact intersection density of a small explicit group by clique search.
    Density {
        /// Group file: {"degree": n, "generators": [[...]], "order": optional}.
        #[arg(long)]
        group: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct CodeArgs {
    #[arg(long, required_unless_present = "spec", requires = "r")]
    m: Option<u64>,
    #[arg(long, requires = "m")]
    r: Option<u64>,
    /// Index of the parity-check factor in the sorted factor list.
    #[arg(long, default_value_t = 0, conflicts_with = "spec")]
    factor: usize,
    /// Code spec file: {"m": .., "r": .., "h": [ascending coefficients]}.
    #[arg(long, conflicts_with_all = ["m", "r"])]
    spec: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long, requires = "k", conflicts_with_all = ["spec", "example33"])]
    q: Option<u64>,
    #[arg(long, requires = "q")]
    k: Option<u32>,
    /// Code length; defaults to (q^k - 1)/(q - 1).
    #[arg(long, requires = "q")]
    p: Option<u64>,
    #[arg(long, default_value_t = 0)]
    factor: usize,
    #[arg(long, conflicts_with = "example33")]
    spec: Option<PathBuf>,
    #[arg(long)]
    example33: bool,
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let budget = cli.budget;
    match &cli.command {
        Command::Factor { m, r } => commands::factor(*m, *r, cli.seed),
        Command::Code(args) => commands::code(args, cli.seed, budget),
        Command::Certify(args) => commands::certify(args, cli.seed, budget),
        Command::Search { q, kmax } => commands::search(*q, *kmax),
        Command::Density { group } => commands::density(group, budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&outcome.value).expect("json")),
                Format::Text => print!("{}", render::text(&outcome.value)),
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
