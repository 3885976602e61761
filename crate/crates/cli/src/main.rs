//! `geoaffine` command-line front end.

mod cli;
mod commands;
mod output;
mod plot;

use std::process::ExitCode;

use clap::Parser;
use cli::{Cli, Command};
use geoaffine_core::GeoError;

/// A checked property failed.
const EXIT_FAILED: u8 = 1;
/// Invalid arguments or configuration.
const EXIT_USAGE: u8 = 2;
/// A geometric precondition failed at run time (e.g. an empty sub-level set).
const EXIT_GEOMETRY: u8 = 3;

fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::VerifyCounterexample(a) => commands::verify_counterexample(a),
        Command::Scan(a) => commands::scan(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Triangles(a) => commands::triangles(a),
        Command::PlotLevelset(a) => commands::plot_levelset(a),
        Command::Transport(a) => commands::transport(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            let geometric = e
                .chain()
                .filter_map(|c| c.downcast_ref::<GeoError>())
                .any(|g| {
                    !matches!(
                        g,
                        GeoError::InvalidSpace(_)
                            | GeoError::InvalidPoint(_)
                            | GeoError::InvalidTangent(_)
                            | GeoError::DimensionMismatch { .. }
                            | GeoError::ZeroProbe
                            | GeoError::UnsupportedDimension(_)
                    )
                });
            ExitCode::from(if geometric { EXIT_GEOMETRY } else { EXIT_USAGE })
        }
    }
}
