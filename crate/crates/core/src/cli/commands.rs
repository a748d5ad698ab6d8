use super::config::RunConfig;
use super::experiments::*;
use super::output::*;
use super::svg;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Files and verdicts from one experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub experiment: Option<Experiment>,
    pub files: Vec<PathBuf>,
    pub statistics: Vec<String>,
    pub thresholds: Vec<Check>,
    pub pass: bool,
}

/// Written next to every run's outputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: RunConfig,
    pub code_version: String,
    pub outputs: Vec<ManifestEntry>,
    pub rejections: u64,
    pub wall_clock_seconds: f64,
}

impl RunManifest {
    pub fn pass(&self) -> bool {
        self.outputs.iter().all(|e| e.pass)
    }
}

fn manifest(command: &str, config: &RunConfig, outputs: Vec<ManifestEntry>, rejections: u64, start: Instant) -> RunManifest {
    RunManifest {
        command: command.into(),
        config: config.clone(),
        code_version: env!("CARGO_PKG_VERSION").into(),
        outputs,
        rejections,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    }
}

fn prepare(config: &RunConfig) -> Result<()> {
    config.validate()?;
    std::fs::create_dir_all(&config.output_dir).map_err(|e| Error::io(&config.output_dir, e))
}

/// Samples `n_samples` paths into `<out>/paths.csv`.
pub fn cmd_sample(config: &RunConfig, plot: bool) -> Result<RunManifest> {
    let start = Instant::now();
    prepare(config)?;
    let tables = load_tables(config)?;
    let ens = sample_ensemble(config, &tables, config.n_samples)?;
    let csv = config.output_dir.join("paths.csv");
    write_paths_csv(&csv, &ens.paths)?;
    let mut files = vec![csv.clone()];
    if plot {
        let svg_path = config.output_dir.join("paths.svg");
        write_text(&svg_path, &svg::paths_svg(&read_paths_csv(&csv)?, "sampled paths: Re Z"))?;
        files.push(svg_path);
    }
    let entry = ManifestEntry {
        experiment: None,
        files,
        statistics: Vec::new(),
        thresholds: Vec::new(),
        pass: true,
    };
    let m = manifest("sample", config, vec![entry], ens.rejections, start);
    write_json(&config.output_dir.join("manifest-sample.json"), &m)?;
    Ok(m)
}

fn write_report(config: &RunConfig, report: &ExperimentReport, plot: bool) -> Result<ManifestEntry> {
    let name = report.experiment.as_str();
    let dir = &config.output_dir;
    let json = dir.join(format!("{name}.json"));
    write_json(&json, report)?;
    let mut files = vec![json];
    if !report.statistics.is_empty() {
        let csv = dir.join(format!("{name}-statistics.csv"));
        write_statistics_csv(&csv, &report.statistics)?;
        files.push(csv);
    }
    if let (true, Some(svg)) = (plot, &report.plot) {
        let p = dir.join(format!("{name}.svg"));
        write_text(&p, svg)?;
        files.push(p);
    }
    let mut statistics: Vec<String> = report.statistics.iter().map(|r| r.statistic.clone()).collect();
    statistics.dedup();
    Ok(ManifestEntry {
        experiment: Some(report.experiment),
        files,
        statistics,
        thresholds: report.thresholds.clone(),
        pass: report.pass,
    })
}

/// Runs the experiments; path experiments share one ensemble.
pub fn cmd_verify(config: &RunConfig, experiments: &[Experiment], plot: bool) -> Result<(Vec<ExperimentReport>, RunManifest)> {
    let start = Instant::now();
    prepare(config)?;
    let mut ens = None;
    let mut rejections = 0;
    let mut reports = Vec::new();
    let mut entries = Vec::new();
    for &e in experiments {
        let report = if e.needs_paths() {
            if ens.is_none() {
                let tables = load_tables(config)?;
                let s = sample_ensemble(config, &tables, config.n_samples)?;
                rejections = s.rejections;
                ens = Some(s);
            }
            let ens = ens.as_ref().expect("sampled above");
            match e {
                Experiment::Clt => clt_report(config, ens)?,
                Experiment::Covariance => covariance_report(config, ens)?,
                Experiment::Reflection => reflection_report(config, ens)?,
                Experiment::Arcsine => arcsine_report(config, ens)?,
                Experiment::Localtime => localtime_report(config, ens)?,
                Experiment::Signchanges => signchanges_report(config, ens)?,
                _ => {
                    let rmt = sample_rmt(config, RMT_DIMENSION, config.n_samples)?;
                    rmt_compare_report(config, ens, &rmt)?
                }
            }
        } else {
            run_experiment(config, e)?.0
        };
        entries.push(write_report(config, &report, plot)?);
        reports.push(report);
    }
    let m = manifest("verify", config, entries, rejections, start);
    write_json(&config.output_dir.join("manifest-verify.json"), &m)?;
    Ok((reports, m))
}

/// Renders any CSV this crate writes; the kind is read from its schema line.
pub fn cmd_plot(csv: &Path, out: &Path) -> Result<()> {
    let (kind, _) = open_csv(csv)?;
    let title = csv.file_stem().and_then(|s| s.to_str()).unwrap_or("plot");
    let svg = match kind {
        CsvKind::Paths => svg::paths_svg(&read_paths_csv(csv)?, title),
        CsvKind::Rmt => {
            let rows: Vec<PathRow> = read_rmt_csv(csv)?
                .into_iter()
                .map(|r| PathRow {
                    tau: r.sample_id as f64,
                    alpha: r.alpha,
                    re_z: r.re_z,
                    im_z: r.im_z,
                    model: format!("unitary n={}", r.n),
                })
                .collect();
            svg::paths_svg(&rows, title)
        }
        CsvKind::Statistics => {
            let mut groups: BTreeMap<String, Vec<f64>> = BTreeMap::new();
            for r in read_statistics_csv(csv)? {
                groups.entry(r.statistic).or_default().push(r.value);
            }
            svg::ecdf_svg(&groups.into_iter().collect::<Vec<_>>(), title)
        }
    };
    write_text(out, &svg)
}
