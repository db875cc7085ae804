//! `duoris`: sweep runner and validation CLI for the double-surface
//! NOMA performance toolkit.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use duoris_cli::{config, csvio, presets, report, sweep};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "duoris",
    about = "Monte Carlo + closed-form performance sweeps for double-RIS NOMA downlinks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep from a config file and/or a named preset, emitting
    /// CSV and per-curve plot data.
    Run {
        /// TOML config path (omit to use the reference defaults).
        config: Option<PathBuf>,
        /// Named preset (fig2 … fig11); base overrides from the config
        /// file still apply.
        #[arg(long)]
        preset: Option<String>,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the Monte Carlo trial count.
        #[arg(long)]
        trials: Option<u64>,
        /// Override the Monte Carlo seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Cross-validate the Monte Carlo and analytic engines on one spec
    /// and report per-point bands plus high-power slope fits.
    Validate {
        /// TOML config path (omit to use the reference defaults).
        config: Option<PathBuf>,
        /// Override the Monte Carlo trial count.
        #[arg(long)]
        trials: Option<u64>,
        /// Override the Monte Carlo seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the available figure presets.
    Presets,
}

/// Worker-count override, applied before any parallel work starts.
const WORKERS_ENV: &str = "DUORIS_WORKERS";

fn init_worker_pool() -> Result<()> {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v
            .parse()
            .with_context(|| format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))?;
        if n == 0 {
            bail!("{WORKERS_ENV} must be >= 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("worker pool already initialized")?;
    }
    Ok(())
}

fn load_specs(
    config: Option<&PathBuf>,
    preset: Option<&String>,
    trials: Option<u64>,
    seed: Option<u64>,
) -> Result<Vec<sweep::SweepSpec>> {
    let mut specs = match preset {
        Some(name) => presets::resolve_preset(name)
            .ok_or_else(|| anyhow!("unknown preset {name:?}; see `duoris presets`"))?,
        None => {
            let spec = match config {
                Some(path) => config::load_config(path)?,
                None => config::load_config_str("")?,
            };
            vec![spec]
        }
    };
    // When both a preset and a config are given, the config's base
    // section re-parameterizes every sweep in the family.
    if preset.is_some() {
        if let Some(path) = config {
            let overrides = config::load_config(path)?;
            for spec in &mut specs {
                spec.base = overrides.base.clone();
                spec.trials = overrides.trials;
                spec.seed = overrides.seed;
                spec.qc = overrides.qc.clone();
                spec.overheads = overrides.overheads;
            }
        }
    }
    for spec in &mut specs {
        if let Some(t) = trials {
            spec.trials = t;
        }
        if let Some(s) = seed {
            spec.seed = s;
        }
    }
    Ok(specs)
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    init_worker_pool()?;
    match cli.command {
        Command::Run {
            config,
            preset,
            out,
            trials,
            seed,
        } => {
            let specs = load_specs(config.as_ref(), preset.as_ref(), trials, seed)?;
            std::fs::create_dir_all(&out)
                .with_context(|| format!("creating {}", out.display()))?;
            let mut all_rows = Vec::new();
            let mut had_errors = false;
            for spec in &specs {
                let result = sweep::run_sweep(spec);
                for e in &result.errors {
                    had_errors = true;
                    eprintln!(
                        "engine error at {} / {}: {}",
                        e.axis_value, e.variant, e.message
                    );
                }
                all_rows.extend(result.rows);
            }
            let csv_path = out.join("sweep.csv");
            csvio::emit_csv(&all_rows, &csv_path)?;
            let curves = csvio::emit_plotdata(&all_rows, &out.join("curves"))?;
            println!(
                "{} rows -> {} (+ {} curve files in {})",
                all_rows.len(),
                csv_path.display(),
                curves.len(),
                out.join("curves").display()
            );
            Ok(if had_errors { 1 } else { 0 })
        }
        Command::Validate {
            config,
            trials,
            seed,
        } => {
            let specs = load_specs(config.as_ref(), None, trials, seed)?;
            let report = report::validate(&specs[0]);
            print!("{}", report.render());
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Presets => {
            for p in presets::PRESETS {
                println!("{:<7} {}", p.name, p.description);
            }
            Ok(0)
        }
    }
}
