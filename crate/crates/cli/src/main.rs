//! `qdf`: verify, construct, develop and enumerate difference-family
//! biquasigroups from the command line.
//!
//! Exit codes: 0 ok, 1 violation (a failed axiom or theorem check, printed
//! with its witness), 2 error (unreadable or malformed input, bad usage).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod outcome;

use outcome::{color_enabled, CmdResult};

#[derive(Parser, Debug)]
#[command(name = "qdf", version, about = "Quasigroup difference families: verification, construction, enumeration")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Global {
    /// Emit one JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized batteries.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for enumeration; 1 runs sequentially.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Classify a Cayley table as magma, quasigroup, loop or group.
    Classify { table: PathBuf },
    /// Check the DFBQ axioms for a DFBQ file or a pair of table files.
    VerifyDfbq {
        /// DFBQ file: add table, a "%" line, sub table.
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file", requires = "sub")]
        add: Option<PathBuf>,
        #[arg(long, conflicts_with = "file", requires = "add")]
        sub: Option<PathBuf>,
    },
    /// Write a DFBQ as a group with two permutations alpha and beta.
    Decompose {
        file: PathBuf,
        /// Also write the group table to this file.
        #[arg(long)]
        group_out: Option<PathBuf>,
    },
    /// Build the DFBQ a + b = g(a, beta b), a - b = alpha(g(a, b^-1)).
    Construct {
        /// Group table file.
        #[arg(long)]
        group: PathBuf,
        /// Images of alpha, e.g. "0 2 1"; must fix the group identity.
        #[arg(long)]
        alpha: String,
        /// Images of beta.
        #[arg(long)]
        beta: String,
        /// Write the DFBQ here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Develop base blocks through the translations x -> x + g.
    Develop {
        /// Addition table, or a DFBQ file.
        input: PathBuf,
        blocks: PathBuf,
        /// Permutation file (one per line) to develop through instead; the
        /// input then supplies the difference operation (a plain table is
        /// read as the subtraction).
        #[arg(long)]
        translations: Option<PathBuf>,
    },
    /// Check that a block list is a 2-(v, k, lambda) design.
    CheckDesign { v: usize, blocks: PathBuf },
    /// Check that base blocks form a difference family over a DFBQ.
    VerifyQdf {
        /// DFBQ file, or a group table (its subtraction DFBQ is used).
        input: PathBuf,
        blocks: PathBuf,
    },
    /// Compare the DFBQ development with the group development.
    DevEquality {
        /// DFBQ file or group table; omit to sample random DFBQs of --order.
        input: Option<PathBuf>,
        /// Base blocks; omit to use the standard battery.
        blocks: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        order: Option<usize>,
        /// Random cases in addition to the battery.
        #[arg(long, default_value_t = 0)]
        samples: u64,
    },
    /// Enumerate Latin squares or DFBQs of one order.
    Enumerate {
        kind: Kind,
        order: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Brute)]
        mode: ModeArg,
        /// Print every object found.
        #[arg(long)]
        emit: bool,
        /// Report elapsed_ms=0 so output is byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
    /// Check the structure theorem on every DFBQ of one order.
    StructureCheck { order: usize },
    /// Search for difference families over a DFBQ or group.
    SearchDf {
        /// DFBQ file, or a group table (its subtraction DFBQ is used).
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
        #[arg(long, default_value_t = 8)]
        max_blocks: usize,
        /// Keep one family per distinct development.
        #[arg(long)]
        dedup: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum Kind {
    Latin,
    Dfbq,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum ModeArg {
    Brute,
    Constructive,
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Classify { .. } => "classify",
            Verb::VerifyDfbq { .. } => "verify-dfbq",
            Verb::Decompose { .. } => "decompose",
            Verb::Construct { .. } => "construct",
            Verb::Develop { .. } => "develop",
            Verb::CheckDesign { .. } => "check-design",
            Verb::VerifyQdf { .. } => "verify-qdf",
            Verb::DevEquality { .. } => "dev-equality",
            Verb::Enumerate { .. } => "enumerate",
            Verb::StructureCheck { .. } => "structure-check",
            Verb::SearchDf { .. } => "search-df",
        }
    }

    fn run(self, g: Global) -> CmdResult {
        use commands::*;
        match self {
            Verb::Classify { table } => classify(&table),
            Verb::VerifyDfbq { file, add, sub } => verify_dfbq(file.as_deref(), add.as_deref(), sub.as_deref()),
            Verb::Decompose { file, group_out } => decompose(&file, group_out.as_deref()),
            Verb::Construct { group, alpha, beta, out } => construct(&group, &alpha, &beta, out.as_deref()),
            Verb::Develop { input, blocks, translations } => develop(&input, &blocks, translations.as_deref()),
            Verb::CheckDesign { v, blocks } => check_design(v, &blocks),
            Verb::VerifyQdf { input, blocks } => verify_qdf(&input, &blocks),
            Verb::DevEquality { input, blocks, order, samples } => {
                dev_equality(input.as_deref(), blocks.as_deref(), order, samples, g.seed)
            }
            Verb::Enumerate { kind, order, mode, emit, no_timing } => {
                enumerate(kind, order, mode, emit, no_timing, g.jobs.into())
            }
            Verb::StructureCheck { order } => structure_check(order, g.seed, g.jobs.into()),
            Verb::SearchDf { input, k, lambda, max_blocks, dedup } => search_df(&input, k, lambda, max_blocks, dedup),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verb = cli.verb.name();
    let g = cli.global;
    match cli.verb.run(g) {
        Ok(outcome) => {
            if g.json {
                println!("{}", outcome.render_json(verb));
            } else {
                print!("{}", outcome.render_text(color_enabled()));
            }
            ExitCode::from(outcome.status.exit_code() as u8)
        }
        Err(e) => {
            if g.json {
                println!("{}", e.render_json(verb));
            } else {
                eprintln!("qdf {verb}: error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
