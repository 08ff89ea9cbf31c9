//! Command-line frontend for `equiquad`.
//!
//! [`run`] executes a parsed command against any writer, so the binary and
//! the tests share one code path.

use std::io::Write;

pub mod args;
mod commands;
pub mod format;
pub mod integrand;

pub use args::{Cli, Command, Format};

pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    let mut o = commands::Output {
        format: cli.format,
        digits: cli.digits,
        out,
    };
    match &cli.command {
        Command::Corrections(args) => commands::corrections(args, &mut o),
        Command::Weights(args) => commands::weights(args, &mut o),
        Command::Catalog(args) => commands::catalog(args, &mut o),
        Command::Integrate(args) => commands::integrate(args, &mut o),
        Command::Order(args) => commands::order(args, &mut o),
    }?;
    o.out.flush()?;
    Ok(())
}
