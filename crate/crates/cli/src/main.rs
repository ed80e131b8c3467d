//! `shortres`: inspect algebras, compute Betti tables, search for exact
//! zero divisors, verify Poincaré-series identities and run seeded surveys.
//!
//! Exit codes: 0 ran, 1 a refutation was found, 2 usage or input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "shortres",
    version,
    about = "Resolutions and exact zero divisors over short artinian algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Caps {
    /// Homological degree cap N.
    #[arg(long = "capN", default_value_t = 6)]
    cap_n: usize,
    /// Internal degree cap J.
    #[arg(long = "capJ", default_value_t = 10)]
    cap_j: usize,
}

#[derive(Args, Debug, Clone)]
struct Search {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random pencils to scan, optionally followed by `,` and the number of
    /// random annihilator elements tried per candidate.
    #[arg(long, default_value = "64,16")]
    budget: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function, balancedness, Gorenstein flag, socle and μ(m^i).
    Inspect { file: PathBuf },
    /// Graded Betti table of a module as JSON.
    Betti {
        file: PathBuf,
        /// `k`, `R`, or `cyclic:f1;f2;...` for R/(f1, f2, ...).
        #[arg(long, default_value = "k")]
        module: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Search for an exact pair of zero divisors.
    Ezd {
        file: PathBuf,
        #[command(flatten)]
        search: Search,
    },
    /// Verify one law on an algebra file.
    Verify {
        law: Law,
        file: PathBuf,
        /// First element of the pair (searched for when omitted).
        #[arg(long)]
        a: Option<String>,
        /// Second element of the pair.
        #[arg(long)]
        b: Option<String>,
        /// Conca generator for `golod` (searched for when omitted).
        #[arg(long)]
        c: Option<String>,
        /// Module: `k`, `R`, `R/aR`, or `cyclic:f1;f2;...`. Repeatable for
        /// `gorenstein-rationality`.
        #[arg(long)]
        module: Vec<String>,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        search: Search,
    },
    /// Seeded survey of random Gorenstein algebras with H = 1 + et + et^2 + t^3.
    Survey {
        #[arg(long, default_value_t = 3)]
        e: usize,
        #[arg(long, default_value_t = 101)]
        p: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Random cyclic modules per sample.
        #[arg(long, default_value_t = 10)]
        modules: usize,
        /// Only the Koszul and rationality checks.
        #[arg(long)]
        quick: bool,
        /// Write JSONL here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        search: Search,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    PoincareFactorization,
    GradedFactorization,
    InitialForms,
    Golod,
    KoszulSocle,
    GorensteinRationality,
    CompleteIntersection,
    PeriodicResolution,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Inspect { file } => commands::inspect(&file),
        Command::Betti { file, module, caps } => commands::betti(&file, &module, caps.cap_n, caps.cap_j),
        Command::Ezd { file, search } => commands::ezd(&file, &search.budget, search.seed),
        Command::Verify {
            law,
            file,
            a,
            b,
            c,
            module,
            caps,
            search,
        } => commands::verify(
            law,
            &file,
            commands::VerifyArgs {
                a,
                b,
                c,
                modules: module,
                n: caps.cap_n,
                jcap: caps.cap_j,
                seed: search.seed,
                budget: search.budget,
            },
        ),
        Command::Survey {
            e,
            p,
            samples,
            modules,
            quick,
            out,
            sequential,
            caps,
            search,
        } => commands::survey(commands::SurveyArgs {
            e,
            p,
            samples,
            modules,
            quick,
            out,
            sequential,
            n: caps.cap_n,
            jcap: caps.cap_j,
            seed: search.seed,
            budget: search.budget,
        }),
    };
    match result {
        Ok(commands::Ran::Clean) => ExitCode::SUCCESS,
        Ok(commands::Ran::Refuted) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
