//! leosim: deterministic LEO satellite access simulator.
//!
//! Exit codes: 0 on success, 1 on configuration/schema errors, 2 on runtime
//! failures. Every run writes `manifest.json` next to its outputs with the
//! fully resolved configuration; identical configs produce byte-identical
//! output files.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use commands::Common;
use config::{CliResult, ScenarioConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "leosim", version, about = "Deterministic LEO satellite access simulator")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Scenario config file (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Named preset: a constellation or a radio profile.
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Reserved: no stochastic paths exist yet; echoed in the manifest.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for grid evaluation.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Ephemeris time series for a constellation.
    Propagate,
    /// Pass prediction and access-geometry time series for one UE.
    Access,
    /// Doppler/delay extremes over a synthetic overhead pass.
    Doppler {
        /// Orbit altitude (m).
        #[arg(long)]
        alt: Option<f64>,
        /// Carrier frequency (Hz).
        #[arg(long)]
        freq: Option<f64>,
    },
    /// Satellite radio profile chain plus C/N0, SNR, and capacity.
    Linkbudget {
        /// Radio profile preset name.
        #[arg(long)]
        profile: Option<String>,
    },
    /// Delay/Doppler prediction error versus ephemeris age.
    #[command(name = "precomp-error")]
    PrecompError,
    /// Idle or connected mobility event simulation.
    Mobility,
    /// Satellites-in-view map over a global grid.
    Coverage,
}

fn run(cli: Cli) -> CliResult<()> {
    let mut cfg = match &cli.global.config {
        Some(path) => ScenarioConfig::from_file(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(preset) = &cli.global.preset {
        cfg.apply_preset(preset)?;
    }
    let common = Common {
        out: cli.global.out.clone(),
        seed: cli.global.seed,
        threads: cli.global.threads,
    };
    match cli.command {
        Command::Propagate => commands::propagate(&mut cfg, &common),
        Command::Access => commands::access(&mut cfg, &common),
        Command::Doppler { alt, freq } => {
            if let Some(alt) = alt {
                cfg.altitude_m = Some(alt);
            }
            if let Some(freq) = freq {
                cfg.carrier_hz = Some(freq);
            }
            commands::doppler(&mut cfg, &common)
        }
        Command::Linkbudget { profile } => {
            if let Some(name) = profile {
                cfg.profile = Some(config::ProfileSpec::Preset(name));
            }
            commands::linkbudget(&mut cfg, &common)
        }
        Command::PrecompError => commands::precomp_error(&mut cfg, &common),
        Command::Mobility => commands::mobility(&mut cfg, &common),
        Command::Coverage => commands::coverage(&mut cfg, &common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outcomes; anything else is a
            // configuration error.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
