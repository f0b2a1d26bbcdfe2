//! Command-line front end for `krylov-sublab`: instance generation, solves,
//! verification suites and the two convergence figures.

pub mod commands;
pub mod config;
pub mod output;
pub mod suites;
pub mod svg;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};

use config::{resolve, Command, Params};

#[derive(Parser, Debug)]
#[command(
    name = "krylov-sublab",
    version,
    about = "Restarted GMRES experiments and cycle-convergence checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Write a seeded instance as A.mtx, b.mtx, x0.mtx and instance.json.
    Gen(Params),
    /// Run GMRES(m) and write convergence.csv and report.json.
    Solve(Params),
    /// Run verification suites and write a verdict document; exit 1 on any failure.
    Verify(Params),
    /// Reproduce figure 1 (normal matrix) or figure 2 (nonnormal seed search).
    Figure {
        /// 1 or 2.
        which: u8,
        #[command(flatten)]
        params: Params,
    },
}

/// Dispatches a parsed command line and returns the process exit status.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Cmd::Gen(p) => commands::cmd_gen(&resolve(Command::Gen, p)?),
        Cmd::Solve(p) => commands::cmd_solve(&resolve(Command::Solve, p)?),
        Cmd::Verify(p) => {
            let cfg = resolve(Command::Verify, p)?;
            suites::select(&cfg.suite)?;
            commands::cmd_verify(&cfg)
        }
        Cmd::Figure { which: 1, params } => {
            commands::cmd_figure1(&resolve(Command::Figure1, params)?)
        }
        Cmd::Figure { which: 2, params } => {
            commands::cmd_figure2(&resolve(Command::Figure2, params)?)
        }
        Cmd::Figure { which, .. } => bail!("unknown figure {which}; expected 1 or 2"),
    }
}
