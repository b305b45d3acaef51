mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hm3::rational::Param;

/// Exit codes: 0 success or perfect matching, 1 verified negative answer,
/// 2 undecided or stage failure, 64 usage error, 65 data error.
pub mod exit {
    pub const OK: u8 = 0;
    pub const NO: u8 = 1;
    pub const UNDECIDED: u8 = 2;
    pub const USAGE: u8 = 64;
    pub const DATA: u8 = 65;
}

#[derive(Parser, Debug)]
#[command(name = "hm3", version, about = "Perfect matchings in 3-uniform hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Extremal,
    ExtremalPlus,
    Random,
    MinDegree,
    Perturbed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Fallback {
    Auto,
    On,
    Off,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated hypergraph
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Edge probability (random)
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Minimum degree floor (min-degree)
        #[arg(long, default_value_t = 0)]
        tau: usize,
        /// Toggled triples (perturbed)
        #[arg(long, default_value_t = 0)]
        flips: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a hypergraph file has a perfect matching
    Solve {
        file: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Node budget for the branch search (orders above 24)
        #[arg(long, default_value_t = hm3::exact::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Check a witness file against a hypergraph file
    Verify { file: PathBuf, witness: PathBuf },
    /// Print the degree threshold for order n
    Threshold {
        #[arg(long)]
        n: usize,
    },
    /// Decide every 3-graph on six vertices
    EnumerateN6 {
        #[arg(long)]
        workers: Option<usize>,
        /// Write the CSV report here instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Sample graphs with a minimum degree floor and decide each
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: usize,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        /// Directory for counterexample files
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run the absorbing / cover / extremal driver
    Pipeline {
        file: PathBuf,
        #[arg(long, default_value = "3/10")]
        alpha: Param,
        /// Defaults to alpha^(3/2)
        #[arg(long)]
        eta: Option<Param>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Fallback::Auto)]
        fallback: Fallback,
        /// Cover-engine trace CSV
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Extremal stage trace CSV
        #[arg(long)]
        stage_trace: Option<PathBuf>,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Classify the 512 balanced 3x3 bipartite link graphs
    Linkfact,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
