use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fvs::cli::{self, CliError, CmdOutput, SolveFlags};
use fvs::graph::VertexId;

#[derive(Parser)]
#[command(name = "fvs", version, about = "Exact feedback vertex set solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a feedback vertex set within the budget exists
    Solve {
        /// Instance file ('n m' header, then 'u v' edge lines)
        path: String,
        /// Deletion budget
        #[arg(allow_negative_numbers = true)]
        budget: i64,
        /// Append a key=value block of search counters
        #[arg(long)]
        stats: bool,
        /// Record the search and verify its structural guarantees
        #[arg(long)]
        audit: bool,
        /// Disable the per-path exclusion cap (plain recursion)
        #[arg(long = "no-cutoff")]
        no_cutoff: bool,
        /// Vertices the solution must avoid; they must induce a forest
        #[arg(long = "forbid-list", value_delimiter = ',', value_name = "V,V,...")]
        forbid_list: Vec<VertexId>,
    },
    /// Compute a minimum feedback vertex set
    Minimum { path: String },
    /// Brute-force a minimum feedback vertex set (small graphs only)
    Oracle { path: String },
    /// Generate seeded instance files
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Uniform random graph with n vertices and m edges
    Random {
        n: u32,
        m: u64,
        seed: u64,
        /// Output instance file
        out: String,
    },
    /// Random tree plus k wired-in vertices; solvable with budget k
    Planted {
        n: u32,
        k: u64,
        seed: u64,
        /// Output instance file
        out: String,
    },
}

fn run(command: Command) -> Result<CmdOutput, CliError> {
    match command {
        Command::Solve {
            path,
            budget,
            stats,
            audit,
            no_cutoff,
            forbid_list,
        } => cli::cmd_solve(
            &path,
            budget,
            &SolveFlags {
                stats,
                audit,
                no_cutoff,
                forbid: forbid_list,
            },
        ),
        Command::Minimum { path } => cli::cmd_minimum(&path),
        Command::Oracle { path } => cli::cmd_oracle(&path),
        Command::Gen(GenCommand::Random { n, m, seed, out }) => {
            cli::cmd_gen(cli::GenKind::Random, n, m, seed, &out)
        }
        Command::Gen(GenCommand::Planted { n, k, seed, out }) => {
            cli::cmd_gen(cli::GenKind::Planted, n, k, seed, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            print!("{}", output.text);
            ExitCode::from(output.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
