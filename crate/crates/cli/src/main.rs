//! `garch-boot`: run the simulation, fitting and Monte-Carlo experiments and
//! write their CSV tables.
//!
//! Settings are resolved as: built-in defaults, then `--config FILE`, then each
//! `--set KEY=VALUE` in order, then `--seed`, `--threads` and `--out`.
//!
//! Exit codes: 0 on success, 2 for usage or validation errors, 3 for data errors
//! (unreadable or malformed input).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use garch_boot::harness::{self, ExperimentConfig, ExperimentReport};
use garch_boot::GarchError;

#[derive(Parser, Debug)]
#[command(name = "garch-boot", version, about = "GARCH simulation, QMLE and bootstrap inference experiments")]
struct Cli {
    /// Key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Override one configuration key; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate a path from the configured model (columns t,x,h).
    Simulate,
    /// Fit the configured orders by QMLE to a series file, or to a simulated path.
    Fit {
        /// One observation per line; '#' starts a comment line.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Limiting covariance of ARCH(1) over an (omega0, alpha0) grid.
    Contour,
    /// Ratio of n times the estimator covariance to the limiting covariance.
    Convergence,
    /// Sum of absolute errors per replication.
    Sae,
    /// Coverage of bootstrap and limiting-law intervals and ellipses.
    Coverage,
}

fn load_config(cli: &Cli) -> garch_boot::Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    for s in &cli.set {
        cfg.apply_assignment(s)?;
    }
    if let Some(seed) = cli.seed {
        cfg.master_seed = seed;
    }
    if let Some(t) = cli.threads {
        cfg.threads = Some(t);
    }
    if let Some(out) = &cli.out {
        cfg.output_dir = out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> garch_boot::Result<ExperimentReport> {
    // A malformed configuration is a usage error, not a data error.
    let cfg = load_config(cli).map_err(|e| match e {
        GarchError::InvalidArgument(_) | GarchError::InvalidSpec(_) => e,
        other => GarchError::InvalidArgument(other.to_string()),
    })?;
    let report = match &cli.command {
        Command::Simulate => harness::cmd_simulate(&cfg)?,
        Command::Fit { input } => {
            let sample = input.as_deref().map(harness::read_series).transpose()?;
            harness::cmd_fit(&cfg, sample.as_ref())?
        }
        Command::Contour => harness::cmd_contour(&cfg)?,
        Command::Convergence => harness::cmd_convergence(&cfg)?,
        Command::Sae => harness::cmd_sae(&cfg)?,
        Command::Coverage => harness::cmd_coverage(&cfg)?,
    };
    for path in report.write(&cfg.output_dir)? {
        log::info!("wrote {}", path.display());
    }
    Ok(report)
}

fn exit_code(e: &GarchError) -> u8 {
    if e.is_data_error() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if let Some(s) = &report.summary {
                print!("{s}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
