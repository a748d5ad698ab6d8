//! Command-line front end: `zeta-brownian sample | verify | plot`.
//!
//! Exit code is 0 iff every asserted threshold passes; errors exit with 2.

pub mod commands;
pub mod config;
pub mod experiments;
pub mod output;
pub mod svg;

pub use commands::{cmd_plot, cmd_sample, cmd_verify, ManifestEntry, RunManifest};
pub use config::{Overrides, RunConfig};
pub use experiments::{Check, Experiment, ExperimentReport, ZetaEnsemble};

use crate::error::Result;
use crate::process::{Model, TauRange};
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "zeta-brownian", version, about = "Sample and test the horizontal log-zeta process")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample paths into paths.csv.
    Sample {
        #[command(flatten)]
        run: RunArgs,
        /// Also render paths.svg.
        #[arg(long)]
        plot: bool,
    },
    /// Run verification experiments and write JSON reports.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Experiment name, or `all`.
        #[arg(long, value_parser = parse_experiments, default_value = "all")]
        experiment: ExperimentSet,
        #[arg(long)]
        plot: bool,
    },
    /// Render a CSV written by `sample` or `verify` as SVG.
    Plot {
        csv: PathBuf,
        /// Defaults to the CSV path with an .svg extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Comma-separated experiment names.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSet(pub Vec<Experiment>);

fn parse_experiments(s: &str) -> std::result::Result<ExperimentSet, String> {
    if s == "all" {
        return Ok(ExperimentSet(Experiment::ALL.to_vec()));
    }
    s.split(',')
        .map(|p| p.trim().parse().map_err(|e: crate::Error| e.to_string()))
        .collect::<std::result::Result<_, _>>()
        .map(ExperimentSet)
}

#[derive(Debug, Args, Default)]
pub struct RunArgs {
    /// Flat TOML file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long = "T")]
    pub t: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// direct | prime_sum | selberg_mollified
    #[arg(long)]
    pub model: Option<Model>,
    #[arg(long)]
    pub x_exp: Option<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub alpha_max: Option<f64>,
    /// T_to_2T | zero_to_T
    #[arg(long)]
    pub tau_range: Option<TauRange>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            t: self.t,
            n_samples: self.n,
            model: self.model,
            x_exponent: self.x_exp,
            grid_points: self.grid,
            alpha_max: self.alpha_max,
            tau_range: self.tau_range,
            seed: self.seed,
            workers: self.workers,
            output_dir: self.out.clone(),
        }
    }

    pub fn resolve(&self) -> Result<RunConfig> {
        let base = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let c = self.overrides().apply(base);
        c.validate()?;
        Ok(c)
    }
}

/// Runs a parsed command; `Ok(true)` iff all thresholds passed.
pub fn execute(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Sample { run, plot } => {
            let m = cmd_sample(&run.resolve()?, *plot)?;
            eprintln!("sampled {} paths into {}", m.config.n_samples, m.config.output_dir.display());
            Ok(true)
        }
        Command::Verify { run, experiment, plot } => {
            let (reports, m) = cmd_verify(&run.resolve()?, &experiment.0, *plot)?;
            for r in &reports {
                println!("{:<14} {}", r.experiment.as_str(), if r.pass { "pass" } else { "FAIL" });
                for c in r.thresholds.iter().filter(|c| !c.pass) {
                    println!("    {} = {:.6} outside [{:?}, {:?}]", c.name, c.observed, c.lower, c.upper);
                }
            }
            Ok(m.pass())
        }
        Command::Plot { csv, out } => {
            let out = out.clone().unwrap_or_else(|| csv.with_extension("svg"));
            cmd_plot(csv, &out)?;
            Ok(true)
        }
    }
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "zeta-brownian", "verify", "--T", "1e8", "--n", "40", "--model", "direct", "--x-exp", "0.1",
            "--grid", "64", "--alpha-max", "2", "--tau-range", "zero_to_T", "--seed", "3", "--workers", "2",
            "--out", "o", "--experiment", "clt,arcsine", "--plot",
        ])
        .unwrap();
        let Command::Verify { run, experiment, plot } = cli.command else { panic!() };
        assert!(plot);
        assert_eq!(experiment.0, vec![Experiment::Clt, Experiment::Arcsine]);
        let c = run.resolve().unwrap();
        assert_eq!((c.t, c.n_samples, c.model, c.grid_points, c.seed), (1e8, 40, Model::Direct, 64, 3));
        assert_eq!((c.alpha_max, c.tau_range, c.workers), (2.0, TauRange::ZeroToT, 2));
        assert_eq!(c.output_dir, PathBuf::from("o"));
    }

    #[test]
    fn bad_input_exits_nonzero() {
        assert_eq!(run(["zeta-brownian", "verify", "--experiment", "nope"]), 2);
        assert_eq!(run(["zeta-brownian", "verify", "--x-exp", "0.5", "--experiment", "mv"]), 2);
    }

    #[test]
    fn config_file_then_flags() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.toml");
        std::fs::write(&p, "T = 1e7\nseed = 5\nworkers = 3\n").unwrap();
        let args = RunArgs {
            config: Some(p),
            seed: Some(8),
            ..Default::default()
        };
        let c = args.resolve().unwrap();
        assert_eq!((c.t, c.seed, c.workers), (1e7, 8, 3));
    }
}
