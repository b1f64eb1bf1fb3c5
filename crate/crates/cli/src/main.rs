//! `soliton-forge`: command-line access to soliton construction, direct
//! scattering, conserved energies, two-soliton analysis and time evolution.
//!
//! Exit codes: 0 on success, 2 for malformed input, 3 for numerical
//! failures (reported as a JSON object `{"error": kind, "message": …}` on
//! standard output).

mod args;
mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use soliton_core::{Error, Result};

use args::{Common, Params};
use commands::Output;

/// Environment variable capping the number of worker threads.
const THREADS_ENV: &str = "SOLITON_FORGE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "soliton-forge", version, about = "Solitons of the focusing NLS hierarchy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Field of the solitons given by --z/--kappa or a PhasePoint JSON.
    MakeSoliton(Common),
    /// Eigenvalues of a field inside --region.
    Spectrum(Common),
    /// Adds solitons (--point or --z/--kappa) to the field in --in.
    Add(Common),
    /// Removes the eigenvalues inside --region; --json-out receives them.
    Remove(Common),
    /// Hamiltonians, fractional energies (--param s=…) and trace residual.
    Energies(Common),
    /// Closed-form two-soliton (z1, z2, beta); --json-out receives the
    /// effective parameters.
    TwoSoliton(Common),
    /// Bump trajectory of a two-soliton along --flow (t0, t1, steps).
    Trajectory(Common),
    /// Evolves the field in --in to time t along --flow.
    Evolve(Common),
    /// Orbital-stability experiment (eps, shape, t, records).
    Stability(Common),
}

fn configure_threads() -> Result<()> {
    let Ok(text) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Schema(format!("{THREADS_ENV} must be a positive integer, got '{text}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Numeric(format!("cannot start the thread pool: {e}")))
}

fn write(path: Option<&std::path::Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes()).map_err(Error::from)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    let (common, handler): (&Common, fn(&Common, Params) -> Result<Output>) = match &cli.command {
        Command::MakeSoliton(c) => (c, commands::make_soliton),
        Command::Spectrum(c) => (c, commands::spectrum),
        Command::Add(c) => (c, commands::add),
        Command::Remove(c) => (c, commands::remove),
        Command::Energies(c) => (c, commands::energies),
        Command::TwoSoliton(c) => (c, commands::two_soliton),
        Command::Trajectory(c) => (c, commands::trajectory_cmd),
        Command::Evolve(c) => (c, commands::evolve_cmd),
        Command::Stability(c) => (c, commands::stability),
    };
    let params = Params::collect(common)?;
    let output = handler(common, params)?;
    write(common.out.as_deref(), &output.main)?;
    if let (Some(path), Some(json)) = (&common.json_out, &output.json) {
        write(Some(path), json)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is_schema() => {
            eprintln!("soliton-forge: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            println!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(3)
        }
    }
}
