use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hilbk3::exec::Mode;

mod commands;
mod gram;
mod report;

#[derive(Parser)]
#[command(
    name = "hilbk3",
    version,
    about = "Exact computations on Hilbert schemes of points on a K3 surface"
)]
struct Cli {
    /// Emit JSON (default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit a plain-text table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Run the data-parallel loops sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of the Hilbert scheme with the per-stratum ledger.
    Betti {
        #[arg(long)]
        n: usize,
        /// Betti numbers of the surface as "b0,b2,b4" (default K3).
        #[arg(long)]
        surface: Option<String>,
    },
    /// Rule out proper trianalytic subvarieties candidate by candidate.
    Certify {
        #[arg(long)]
        n: usize,
        /// Gram matrix of H^2 of the surface (default K3 lattice).
        #[arg(long)]
        gram: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// sl2-invariant ideals of C[x,y]/m^N.
    Ideals {
        #[arg(long = "N", value_name = "N")]
        order: usize,
    },
    /// sl2-fixed monomial ideals of colength i.
    Punctual {
        #[arg(long)]
        i: usize,
    },
    /// Diagonal strata of the symmetric power.
    Strata {
        #[arg(long)]
        n: usize,
    },
    /// The Frobenius algebra Sym(V) / I.
    Frobenius {
        #[arg(long)]
        dimv: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gram: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Highest total degree of multiplication tables to print.
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Betti { .. } => "betti",
            Command::Certify { .. } => "certify",
            Command::Ideals { .. } => "ideals",
            Command::Punctual { .. } => "punctual",
            Command::Strata { .. } => "strata",
            Command::Frobenius { .. } => "frobenius",
        }
    }
}

fn run(cmd: &Command, mode: Mode) -> anyhow::Result<report::Report> {
    match cmd {
        Command::Betti { n, surface } => commands::betti(*n, surface.as_deref()),
        Command::Certify { n, gram, seed } => commands::certify(*n, gram.as_deref(), *seed),
        Command::Ideals { order } => commands::ideals(*order),
        Command::Punctual { i } => commands::punctual(*i),
        Command::Strata { n } => commands::strata(*n),
        Command::Frobenius {
            dimv,
            n,
            gram,
            seed,
            max_degree,
        } => commands::frobenius(commands::FrobeniusArgs {
            dim_v: *dimv,
            n: *n,
            gram: gram.as_deref(),
            seed: *seed,
            max_degree: *max_degree,
            mode,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = if cli.sequential {
        Mode::Sequential
    } else {
        Mode::Parallel
    };
    match run(&cli.command, mode) {
        Ok(rep) => {
            let text = if cli.table {
                rep.table.clone()
            } else {
                serde_json::to_string_pretty(&rep.to_json()).expect("serializable")
            };
            emit(&text);
            if rep.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let payload = report::error_json(cli.command.name(), &e);
            if cli.table {
                eprintln!("error: {e:#}");
            } else {
                emit(&serde_json::to_string_pretty(&payload).expect("serializable"));
            }
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}
