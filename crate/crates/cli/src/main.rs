//! `ctt`: build, contract and round tensor trains for the problem catalog.
//!
//! Reports go to stdout as JSON, summaries to stderr. Randomized instances
//! come from a ChaCha8 generator seeded with `--seed`.

mod bench;
mod commands;
mod error;
mod inputs;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ctt::Exec;
use error::CliError;
use serde_json::Value;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "ctt", version, about = "Exact tensor trains from derivative functions")]
struct Cli {
    /// Include wall-clock time in run reports (makes them nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count N-queens placements.
    Queens {
        #[arg(long)]
        n: usize,
        /// Round the tensor to this relative accuracy after building it.
        #[arg(long)]
        eps: Option<f64>,
        /// Also return one placement.
        #[arg(long)]
        find: bool,
        /// Compare with backtracking enumeration.
        #[arg(long)]
        oracle: bool,
        /// Largest board accepted.
        #[arg(long, default_value_t = ctt::problems::queens::DEFAULT_QUEENS_CAP)]
        cap: usize,
        /// Write the tensor to this file.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Permanent of a square matrix.
    Permanent {
        /// CSV file, one row per line.
        #[arg(long, conflicts_with = "random")]
        matrix: Option<PathBuf>,
        /// Use a random N×N matrix with entries uniform on [0, 1).
        #[arg(long)]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Compare with Ryser's formula (and the permutation sum for N ≤ 9).
        #[arg(long)]
        oracle: bool,
    },
    /// Semivalue payoffs of a cooperative game.
    Game(GameArgs),
    /// 0-1 or bounded knapsack from a JSON configuration.
    Knapsack {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// Split a multiset into parts of equal sum.
    Partition {
        /// JSON array of positive integers.
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        parts: usize,
        /// Also count all balanced assignments.
        #[arg(long)]
        count: bool,
        #[arg(long)]
        oracle: bool,
    },
    /// Count models of, or find a model for, a DIMACS CNF formula.
    Sat {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, conflicts_with = "model")]
        count: bool,
        #[arg(long)]
        model: bool,
        #[arg(long)]
        oracle: bool,
    },
    /// Count subsets of {1..n} whose sum is divisible by m.
    Subsets {
        #[arg(long)]
        n: usize,
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        oracle: bool,
    },
    /// QTT representation of the step function x > t on d bits.
    QttStep {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Operations on saved tensors.
    Tt {
        #[command(subcommand)]
        op: TtOp,
    },
    /// Size sweeps with operation counts and growth fits.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GameName {
    Shoes,
    Airport,
    Majority,
    Bankruptcy,
    Seller,
}

impl GameName {
    pub fn family(self) -> ctt::games::GameFamily {
        use ctt::games::GameFamily as F;
        match self {
            GameName::Shoes => F::Shoes,
            GameName::Airport => F::Airport,
            GameName::Majority => F::WeightedMajority,
            GameName::Bankruptcy => F::Bankruptcy,
            GameName::Seller => F::OneSeller,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Weights {
    Shapley,
    Banzhaf,
}

impl From<Weights> for ctt::games::WeightFn {
    fn from(w: Weights) -> Self {
        match w {
            Weights::Shapley => ctt::games::WeightFn::Shapley,
            Weights::Banzhaf => ctt::games::WeightFn::Banzhaf,
        }
    }
}

#[derive(Args, Debug)]
pub struct GameArgs {
    #[arg(value_enum)]
    game: GameName,
    /// Number of players for a random instance.
    #[arg(long)]
    players: Option<usize>,
    /// JSON file {kind, players, params, weights, seed} instead of a random instance.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    weights: Option<Weights>,
    /// Compare every payoff with subset enumeration.
    #[arg(long)]
    oracle: bool,
    /// One-seller only: also run the direct recurrence for interior players.
    #[arg(long)]
    iterative: bool,
}

#[derive(Subcommand, Debug)]
enum TtOp {
    /// Round a tensor to relative accuracy eps.
    Round {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shape, ranks and structure of a tensor.
    Info {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// One entry of a tensor.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated 0-based indices.
        #[arg(long)]
        idx: String,
    },
}

pub struct Ctx {
    pub timing: bool,
    pub exec: Exec,
}

fn run(cli: Cli) -> Result<Value, CliError> {
    let ctx = Ctx { timing: cli.timing, exec: if cli.sequential { Exec::Sequential } else { Exec::default() } };
    let report = match cli.command {
        Command::Queens { n, eps, find, oracle, cap, save } => commands::queens(&ctx, n, eps, find, oracle, cap, save)?,
        Command::Permanent { matrix, random, seed, oracle } => commands::permanent_cmd(&ctx, matrix, random, seed, oracle)?,
        Command::Game(args) => commands::game(&ctx, args)?,
        Command::Knapsack { config, oracle } => commands::knapsack(&ctx, &config, oracle)?,
        Command::Partition { set, parts, count, oracle } => commands::partition(&ctx, &set, parts, count, oracle)?,
        Command::Sat { cnf, count: _, model, oracle } => commands::sat(&ctx, &cnf, model, oracle)?,
        Command::Subsets { n, modulus, oracle } => commands::subsets(&ctx, n, modulus, oracle)?,
        Command::QttStep { d, t, save } => commands::qtt_step(&ctx, d, t, save)?,
        Command::Tt { op } => match op {
            TtOp::Round { input, eps, out } => commands::tt_round_cmd(&ctx, &input, eps, out)?,
            TtOp::Info { input } => commands::tt_info(&input)?,
            TtOp::Eval { input, idx } => commands::tt_eval(&input, &inputs::parse_indices(&idx).map_err(CliError::input)?)?,
        },
        Command::Bench(args) => return bench::run(&ctx, args),
    };
    Ok(serde_json::to_value(report)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or_default().trim_start_matches("error: ");
            let err = CliError { kind: "usage", message: first.to_string() };
            let _ = e.print();
            println!("{}", err.to_json());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let pretty = cli.pretty;
    match run(cli) {
        Ok(Value::Null) => ExitCode::SUCCESS,
        Ok(v) => {
            let text = if pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) };
            println!("{}", text.expect("reports serialize"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            println!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
