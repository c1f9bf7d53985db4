//! `moddiag`: counting series, oracle checks and asymptotics for modular
//! k-noncrossing diagrams.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation failure,
//! 3 verification failure.

mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use commands::Failure;
use moddiag::selftest::{Level, Mutation};
use output::Format;

#[derive(Parser)]
#[command(name = "moddiag", version, about = "Modular k-noncrossing diagrams: exact counts and asymptotics")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    /// Perturb the sigma_1 factor of the sigma identity.
    Sigma1,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients Q_k(0..=n).
    Coeffs {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Brute-force counts of modular diagrams next to the series coefficients.
    Oracle {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Shape table (colored for k >= 3), checked by enumeration for s <= 6.
    Shapes {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        s: u32,
    },
    /// Exact root checks of the q_{0,k} polynomials, k = 2..9.
    #[command(name = "table1-check")]
    Table1Check,
    /// Certified growth rates 1/gamma_k for k = 3..9.
    Table2 {
        #[arg(long, default_value_t = 4)]
        digits: u32,
    },
    /// Dominant singularity, certificates and coefficient fits for one k.
    Asympt {
        #[arg(long)]
        k: usize,
        /// Width of the isolating interval, e.g. 1e-12 or 1/1000.
        #[arg(long, default_value = "1e-12")]
        tol: String,
        #[arg(long, default_value_t = 4)]
        digits: u32,
        /// Coefficients used by the fits.
        #[arg(long, default_value_t = 400)]
        n: usize,
    },
    /// First index where Q_2 and the general formula at k = 2 disagree.
    Remark {
        #[arg(long, default_value_t = 40)]
        n: usize,
    },
    /// Run the built-in checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, value_enum)]
        mutate: Option<MutationArg>,
    },
}

fn run(cli: &Cli) -> commands::Outcome {
    match &cli.command {
        Command::Coeffs { k, n } => commands::coeffs(*k, *n),
        Command::Oracle { k, n } => commands::oracle(*k, *n),
        Command::Shapes { k, s } => commands::shapes(*k, *s),
        Command::Table1Check => commands::table1_check(),
        Command::Table2 { digits } => commands::table2(*digits),
        Command::Asympt { k, tol, digits, n } => commands::asympt(*k, tol, *digits, *n),
        Command::Remark { n } => commands::remark(*n),
        Command::Selftest { level, mutate } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            commands::selftest(level, mutate.map(|MutationArg::Sigma1| Mutation::Sigma1))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            report.print(cli.format);
            if report.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(3)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Computation(e)) => {
            eprintln!("computation failed: {e}");
            ExitCode::from(2)
        }
    }
}
