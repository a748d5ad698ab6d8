use super::config::RunConfig;
use super::output::StatisticRow;
use super::svg;
use crate::arith::{build_mollifier, MollifierNorm, MollifierTable, PrimeTable};
use crate::error::{Error, Result};
use crate::oracle::{arcsine_cdf_total, bm_statistic_sample, max_limit_cdf};
use crate::process::{
    alpha_grid, max_statistic, max_statistic_capped, zeta_cap, Model, PathSampler, PathStatistic, Phi, ProcessPath,
    Trajectory, BLOCK,
};
use crate::rmt::{rmt_path, sample_haar_unitary, Centering};
use crate::rng::{derive_seed, task_rng};
use crate::stats::{
    complex_covariance, ex_decay_check, fourth_moment_check, increment_weights, ks_one_sample, ks_two_sample,
    lemma22_hypotheses_check, lemma33_check, mv_mean_value_check, EmpiricalDistribution,
};
use crate::zeta::ResidualForm;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::fmt;
use std::str::FromStr;

/// The verification experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Clt,
    Covariance,
    Reflection,
    Arcsine,
    Localtime,
    Signchanges,
    RmtCompare,
    Lemma33,
    Mv,
    FourthMoment,
    Lemma22,
    ExDecay,
}

impl Experiment {
    pub const ALL: [Experiment; 12] = [
        Experiment::Clt,
        Experiment::Covariance,
        Experiment::Reflection,
        Experiment::Arcsine,
        Experiment::Localtime,
        Experiment::Signchanges,
        Experiment::RmtCompare,
        Experiment::Lemma33,
        Experiment::Mv,
        Experiment::FourthMoment,
        Experiment::Lemma22,
        Experiment::ExDecay,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Experiment::Clt => "clt",
            Experiment::Covariance => "covariance",
            Experiment::Reflection => "reflection",
            Experiment::Arcsine => "arcsine",
            Experiment::Localtime => "localtime",
            Experiment::Signchanges => "signchanges",
            Experiment::RmtCompare => "rmt_compare",
            Experiment::Lemma33 => "lemma33",
            Experiment::Mv => "mv",
            Experiment::FourthMoment => "fourth_moment",
            Experiment::Lemma22 => "lemma22",
            Experiment::ExDecay => "ex_decay",
        }
    }

    /// Whether the experiment consumes sampled zeta paths.
    pub fn needs_paths(&self) -> bool {
        matches!(
            self,
            Experiment::Clt
                | Experiment::Covariance
                | Experiment::Reflection
                | Experiment::Arcsine
                | Experiment::Localtime
                | Experiment::Signchanges
                | Experiment::RmtCompare
        )
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Experiment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Experiment> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment `{s}`")))
    }
}

/// One asserted threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: &str, observed: f64, upper: f64) -> Check {
        Check {
            name: name.into(),
            observed,
            lower: None,
            upper: Some(upper),
            pass: observed <= upper,
        }
    }

    pub fn between(name: &str, observed: f64, lower: f64, upper: f64) -> Check {
        Check {
            name: name.into(),
            observed,
            lower: Some(lower),
            upper: Some(upper),
            pass: (lower..=upper).contains(&observed),
        }
    }
}

/// A verification report; serialises to `{experiment, config, results, thresholds, pass}`.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: Experiment,
    pub config: RunConfig,
    pub results: serde_json::Value,
    pub thresholds: Vec<Check>,
    pub pass: bool,
    #[serde(skip)]
    pub statistics: Vec<StatisticRow>,
    #[serde(skip)]
    pub plot: Option<String>,
}

impl ExperimentReport {
    fn new(experiment: Experiment, config: &RunConfig, results: serde_json::Value, thresholds: Vec<Check>) -> Self {
        let pass = thresholds.iter().all(|c| c.pass);
        ExperimentReport {
            experiment,
            config: config.clone(),
            results,
            thresholds,
            pass,
            statistics: Vec::new(),
            plot: None,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.thresholds.iter().find(|c| c.name == name)
    }
}

/// `alpha` values at which every sampled path is also evaluated.
pub const COVARIANCE_ALPHAS: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
/// Oracle grid size for the Brownian comparisons.
pub const ORACLE_GRID: usize = 4096;
/// Dimension of the random-matrix analogue.
pub const RMT_DIMENSION: usize = 256;

/// Prime table or mollifier needed by the configured model.
pub enum Tables {
    None,
    Primes(PrimeTable),
    Mollifier(MollifierTable),
}

pub fn load_tables(config: &RunConfig) -> Result<Tables> {
    Ok(match config.model {
        Model::Direct => Tables::None,
        Model::PrimeSum => Tables::Primes(PrimeTable::load_or_sieve(config.t.floor() as u64)?),
        Model::SelbergMollified => Tables::Mollifier(build_mollifier(config.x(), MollifierNorm::Selberg)?),
    })
}

pub fn build_sampler(config: &RunConfig, tables: &Tables) -> Result<PathSampler> {
    let grid = alpha_grid(config.grid_points, config.alpha_max)?;
    let s = match (config.model, tables) {
        (Model::Direct, _) => PathSampler::direct(config.t, grid)?,
        (Model::PrimeSum, Tables::Primes(p)) => PathSampler::prime_sum(config.t, config.t, grid, p)?,
        (Model::SelbergMollified, Tables::Mollifier(m)) => PathSampler::selberg(config.t, grid, m)?,
        _ => return Err(Error::Config("tables do not match the model".into())),
    };
    s.with_extra_alphas(&COVARIANCE_ALPHAS)
}

pub(crate) fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}

/// Paths sampled for one configuration, in task order.
#[derive(Clone, Debug)]
pub struct ZetaEnsemble {
    pub paths: Vec<ProcessPath>,
    /// Values at [`COVARIANCE_ALPHAS`], one vector per path.
    pub extra: Vec<Vec<Complex64>>,
    pub rejections: u64,
}

impl ZetaEnsemble {
    /// The first `n` paths.
    pub fn head(&self, n: usize) -> ZetaEnsemble {
        let n = n.min(self.paths.len());
        ZetaEnsemble {
            paths: self.paths[..n].to_vec(),
            extra: self.extra[..n].to_vec(),
            rejections: self.rejections,
        }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// `Re Z(1)` of every path.
    pub fn re_at_one(&self) -> Vec<f64> {
        self.extra.iter().map(|e| e[3].re).collect()
    }
}

/// `n` paths from the stream `derive_seed(seed, "paths")`, spread over
/// `workers` threads in blocks of task indices; the result does not depend
/// on the worker count.
pub fn sample_ensemble(config: &RunConfig, tables: &Tables, n: usize) -> Result<ZetaEnsemble> {
    let sampler = build_sampler(config, tables)?;
    let seed = derive_seed(config.seed, "paths");
    let blocks: Vec<std::ops::Range<u64>> = (0..n as u64)
        .step_by(BLOCK)
        .map(|s| s..(s + BLOCK as u64).min(n as u64))
        .collect();
    let chunks: Vec<_> = pool(config.workers)?.install(|| {
        blocks
            .par_iter()
            .map(|r| sampler.sample_tasks(config.tau_range, seed, r.clone()))
            .collect()
    });
    let mut ens = ZetaEnsemble {
        paths: Vec::with_capacity(n),
        extra: Vec::with_capacity(n),
        rejections: 0,
    };
    for r in chunks.into_iter().flatten() {
        let s = r?;
        ens.rejections += s.rejections as u64;
        ens.paths.push(s.path);
        ens.extra.push(s.extra);
    }
    Ok(ens)
}

fn unit_part(p: &ProcessPath) -> ProcessPath {
    let m = p.alpha_grid.iter().take_while(|&&a| a <= 1.0 + 1e-12).count();
    ProcessPath {
        alpha_grid: p.alpha_grid[..m].to_vec(),
        values: p.values[..m].to_vec(),
        ..p.clone()
    }
}

fn bm_sample(config: &RunConfig, statistic: PathStatistic, n: usize, grid: &[f64]) -> Result<Vec<f64>> {
    let seed = derive_seed(config.seed, "bm");
    pool(config.workers)?.install(|| bm_statistic_sample(statistic, n, grid, seed))
}

fn ed(v: Vec<f64>) -> Result<EmpiricalDistribution> {
    EmpiricalDistribution::new(v)
}

fn rows(tag: &str, v: &[f64]) -> Vec<StatisticRow> {
    v.iter()
        .enumerate()
        .map(|(i, &value)| StatisticRow {
            sample_id: i as u64,
            statistic: tag.into(),
            value,
        })
        .collect()
}

fn require_paths(ens: &ZetaEnsemble) -> Result<()> {
    if ens.len() < 2 {
        return Err(Error::Config("path experiments need at least 2 samples".into()));
    }
    Ok(())
}

fn two_sample_report(
    experiment: Experiment,
    config: &RunConfig,
    zeta: Vec<f64>,
    bm: Vec<f64>,
    limit: Option<&dyn Fn(f64) -> f64>,
    extra: serde_json::Value,
) -> Result<ExperimentReport> {
    let name = experiment.as_str();
    let (dz, db) = (ed(zeta.clone())?, ed(bm.clone())?);
    let ks2 = ks_two_sample(&dz, &db);
    let mut checks = vec![Check::at_most("ks_two_sample", ks2, 0.10)];
    let mut results = json!({
        "n_zeta": zeta.len(),
        "n_oracle": bm.len(),
        "zeta_mean": dz.mean(),
        "oracle_mean": db.mean(),
        "ks_two_sample": ks2,
        "details": extra,
    });
    if let Some(f) = limit {
        let ks1 = ks_one_sample(&dz, f);
        results["ks_one_sample"] = json!(ks1);
        results["oracle_ks_one_sample"] = json!(ks_one_sample(&db, f));
        checks.push(Check::at_most("ks_one_sample", ks1, 0.15));
    }
    let mut r = ExperimentReport::new(experiment, config, results, checks);
    r.statistics = rows(&format!("zeta_{name}"), &zeta);
    r.statistics.extend(rows(&format!("bm_{name}"), &bm));
    r.plot = Some(svg::ecdf_svg(
        &[(format!("zeta {name}"), zeta), (format!("oracle {name}"), bm)],
        &format!("{name}: empirical distributions"),
    ));
    Ok(r)
}

fn normal_half_variance_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x))
}

pub fn clt_report(config: &RunConfig, ens: &ZetaEnsemble) -> Result<ExperimentReport> {
    require_paths(ens)?;
    let re = ens.re_at_one();
    let im: Vec<f64> = ens.extra.iter().map(|e| e[3].im).collect();
    let (dre, dim) = (ed(re.clone())?, ed(im.clone())?);
    let var = |v: &[f64]| {
        let m = v.iter().sum::<f64>() / v.len() as f64;
        v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64
    };
    let (ks_re, ks_im) = (ks_one_sample(&dre, normal_half_variance_cdf), ks_one_sample(&dim, normal_half_variance_cdf));
    let results = json!({
        "alpha": 1.0,
        "mean_re": dre.mean(), "mean_im": dim.mean(),
        "var_re": var(&re), "var_im": var(&im),
        "ks_re": ks_re, "ks_im": ks_im,
        "rejections": ens.rejections,
    });
    let checks = vec![Check::at_most("ks_re", ks_re, 0.15), Check::at_most("ks_im", ks_im, 0.15)];
    let mut r = ExperimentReport::new(Experiment::Clt, config, results, checks);
    r.statistics = rows("re_z_1", &re);
    r.statistics.extend(rows("im_z_1", &im));
    r.plot = Some(svg::ecdf_svg(&[("Re Z(1)".into(), re), ("Im Z(1)".into(), im)], "clt: Z(1) components"));
    Ok(r)
}

fn covariance_json(c: &crate::stats::CovarianceEstimate) -> serde_json::Value {
    json!({
        "alphas": c.alphas,
        "n_samples": c.n_samples,
        "re": c.matrix.iter().map(|r| r.iter().map(|z| z.re).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "im": c.matrix.iter().map(|r| r.iter().map(|z| z.im).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "standard_errors": c.standard_errors,
    })
}

fn covariance_checks(c: &crate::stats::CovarianceEstimate, tol: f64) -> Vec<Check> {
    let mut checks = Vec::new();
    for (i, &a) in c.alphas.iter().enumerate() {
        for (j, &b) in c.alphas.iter().enumerate().skip(i) {
            let dev = (c.matrix[i][j] - Complex64::new(a.min(b), 0.0)).norm();
            checks.push(Check::at_most(&format!("deviation_{a}_{b}"), dev, tol));
        }
    }
    checks
}

pub fn covariance_report(config: &RunConfig, ens: &ZetaEnsemble) -> Result<ExperimentReport> {
    require_paths(ens)?;
    let c = complex_covariance(&ens.extra, &COVARIANCE_ALPHAS)?;
    let checks = covariance_checks(&c, 0.15);
    let mut r = ExperimentReport::new(Experiment::Covariance, config, covariance_json(&c), checks);
    let re: Vec<Vec<f64>> = c.matrix.iter().map(|row| row.iter().map(|z| z.re).collect()).collect();
    r.plot = Some(svg::heatmap_svg(&COVARIANCE_ALPHAS, &re, 1.0, "covariance (real part)"));
    for (k, v) in ens.extra.iter().enumerate() {
        for (a, z) in COVARIANCE_ALPHAS.iter().zip(v) {
            r.statistics.push(StatisticRow {
                sample_id: k as u64,
                statistic: format!("re_z_{a}"),
                value: z.re,
            });
            r.statistics.push(StatisticRow {
                sample_id: k as u64,
                statistic: format!("im_z_{a}"),
                value: z.im,
            });
        }
    }
    Ok(r)
}

fn oracle_grid() -> Vec<f64> {
    alpha_grid(ORACLE_GRID, 1.0).expect("valid oracle grid")
}

pub fn reflection_report(config: &RunConfig, ens: &ZetaEnsemble) -> Result<ExperimentReport> {
    require_paths(ens)?;
    let unit: Vec<ProcessPath> = ens.paths.iter().map(unit_part).collect();
    let zeta: Vec<f64> = unit.iter().map(max_statistic).collect();
    let cap = zeta_cap(config.t);
    let capped: Vec<f64> = unit.iter().map(|p| max_statistic_capped(p, cap)).collect();
    let bm = bm_sample(config, PathStatistic::Max, zeta.len(), &oracle_grid())?;
    let capped_ks = ks_two_sample(&ed(capped)?, &ed(bm.clone())?);
    let tail_share = unit.iter().filter(|p| p.tail_sup() > p.values.iter().map(|v| v.re).fold(f64::MIN, f64::max)).count();
    let extra = json!({
        "cap": cap,
        "ks_two_sample_with_constant_cap": capped_ks,
        "paths_with_max_in_tail": tail_share,
    });
    two_sample_report(Experiment::Reflection, config, zeta, bm, Some(&max_limit_cdf), extra)
}

pub fn arcsine_report(config: &RunConfig, ens: &ZetaEnsemble) -> Result<ExperimentReport> {
    require_paths(ens)?;
    let zeta: Vec<f64> = ens.paths.iter().map(|p| PathStatistic::Arcsine.apply(p)).collect::<Result<_>>()?;
    let bm = bm_sample(config, PathStatistic::Arcsine, zeta.len(), &oracle_grid())?;
    two_sample_report(Experiment::Arcsine, config, zeta, bm, Some(&arcsine_cdf_total), json!({}))
}

pub fn localtime_report(config: &RunConfig, ens: &ZetaEnsemble) -> Result<ExperimentReport> {
    require_paths(ens)?;
    let stat = PathStatistic::Occupation {
        phi: Phi::PositivePartCapped,
        t: 1.0_f64.min(config.alpha_max),
    };
    let zeta: Vec<f64> = ens.paths.iter().map(|p| stat.apply(p)).collect::<Result<_>>()?;
    let bm = bm_sample(config, stat, zeta.len(), &oracle_grid())?;
    two_sample_report(Experiment::Localtime, config, zeta, bm, None, json!({"phi": "x+ min 1", "t": 1.0}))
}

pub fn signchanges_report(config: &RunConfig, ens: &ZetaEnsemble) -> Result<ExperimentReport> {
    require_paths(ens)?;
    let zeta: Vec<f64> = ens.paths.iter().map(|p| PathStatistic::SignChanges.apply(p)).collect::<Result<_>>()?;
    let grid = ens.paths[0].alpha_grid.clone();
    let bm = bm_sample(config, PathStatistic::SignChanges, zeta.len(), &grid)?;
    let frac = |v: &[f64], k: f64| v.iter().filter(|&&c| c >= k).count() as f64 / v.len() as f64;
    let (z1, b1, z3, b3) = (frac(&zeta, 1.0), frac(&bm, 1.0), frac(&zeta, 3.0), frac(&bm, 3.0));
    let results = json!({
        "grid_points": grid.len(),
        "zeta_fraction_at_least_1": z1, "oracle_fraction_at_least_1": b1,
        "zeta_fraction_at_least_3": z3, "oracle_fraction_at_least_3": b3,
        "zeta_mean_count": zeta.iter().sum::<f64>() / zeta.len() as f64,
        "oracle_mean_count": bm.iter().sum::<f64>() / bm.len() as f64,
    });
    let checks = vec![
        Check::at_most("fraction_at_least_1_gap", (z1 - b1).abs(), 0.05),
        Check::at_most("fraction_at_least_3_gap", (z3 - b3).abs(), 0.07),
    ];
    let mut r = ExperimentReport::new(Experiment::Signchanges, config, results, checks);
    r.statistics = rows("zeta_sign_changes", &zeta);
    r.statistics.extend(rows("bm_sign_changes", &bm));
    r.plot = Some(svg::ecdf_svg(&[("zeta".into(), zeta), ("oracle".into(), bm)], "sign changes on [0, 1]"));
    Ok(r)
}

/// Random-matrix samples: literal values at [`COVARIANCE_ALPHAS`] and the
/// centred `Re` at `alpha = 1`, plus the number of discarded draws.
pub struct RmtEnsemble {
    pub literal: Vec<Vec<Complex64>>,
    pub centred_re_at_one: Vec<f64>,
    pub retries: u64,
}

pub fn sample_rmt(config: &RunConfig, n_dim: usize, n: usize) -> Result<RmtEnsemble> {
    let seed = derive_seed(config.seed, "rmt");
    let draws: Vec<Result<(Vec<Complex64>, f64, u32)>> = pool(config.workers)?.install(|| {
        (0..n as u64)
            .into_par_iter()
            .map(|i| {
                let s = sample_haar_unitary(n_dim, seed, i)?;
                let lit = rmt_path(&s, &COVARIANCE_ALPHAS, Centering::Literal)?;
                let cen = rmt_path(&s, &[1.0], Centering::Centred)?;
                Ok((lit.values, cen.values[0].re, s.retries))
            })
            .collect()
    });
    let mut out = RmtEnsemble {
        literal: Vec::with_capacity(n),
        centred_re_at_one: Vec::with_capacity(n),
        retries: 0,
    };
    for d in draws {
        let (l, c, r) = d?;
        out.literal.push(l);
        out.centred_re_at_one.push(c);
        out.retries += r as u64;
    }
    Ok(out)
}

pub fn rmt_compare_report(config: &RunConfig, ens: &ZetaEnsemble, rmt: &RmtEnsemble) -> Result<ExperimentReport> {
    require_paths(ens)?;
    let c = complex_covariance(&rmt.literal, &COVARIANCE_ALPHAS)?;
    let mut checks = covariance_checks(&c, 0.2);
    let zeta = ens.re_at_one();
    let ks = ks_two_sample(&ed(rmt.centred_re_at_one.clone())?, &ed(zeta.clone())?);
    let literal_re: Vec<f64> = rmt.literal.iter().map(|v| v[3].re).collect();
    let ks_literal = ks_two_sample(&ed(literal_re)?, &ed(zeta.clone())?);
    checks.push(Check::at_most("ks_re_at_one", ks, 0.15));
    let results = json!({
        "dimension": RMT_DIMENSION,
        "covariance": covariance_json(&c),
        "ks_re_at_one_centred": ks,
        "ks_re_at_one_literal": ks_literal,
        "eigensolver_retries": rmt.retries,
    });
    let mut r = ExperimentReport::new(Experiment::RmtCompare, config, results, checks);
    r.statistics = rows("rmt_re_z_1_centred", &rmt.centred_re_at_one);
    r.statistics.extend(rows("zeta_re_z_1", &zeta));
    r.plot = Some(svg::ecdf_svg(
        &[("unitary (centred)".into(), rmt.centred_re_at_one.clone()), ("zeta".into(), zeta)],
        "Re Z(1): unitary vs zeta",
    ));
    Ok(r)
}

pub fn lemma33_report(config: &RunConfig) -> Result<ExperimentReport> {
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut entries = Vec::new();
    let mut worst: f64 = 0.0;
    for &t in &[1e6f64, 1e8, 1e10] {
        let x = t.powf(config.x_exponent);
        let table = PrimeTable::load_or_sieve(x.powi(3).ceil() as u64)?;
        for &a in &grid {
            for &b in grid.iter().filter(|&&b| b >= a) {
                let r = lemma33_check(a, b, x, t, &table)?;
                worst = worst.max(r.abs());
                entries.push(json!({"T": t, "x": x, "alpha": a, "beta": b, "ratio": r}));
            }
        }
    }
    let results = json!({"entries": entries, "max_abs_ratio": worst});
    Ok(ExperimentReport::new(Experiment::Lemma33, config, results, vec![Check::at_most("max_abs_ratio", worst, 5.0)]))
}

pub fn mv_report(config: &RunConfig) -> Result<ExperimentReport> {
    let mut rng = task_rng(derive_seed(config.seed, "mv"), 0);
    let t = config.t;
    let mut worst: f64 = 0.0;
    let mut cases = Vec::new();
    for _ in 0..100 {
        let k = rng.random_range(1..=40);
        let span = 10f64.powf(rng.random_range(-1.0..2.0));
        let mut lambdas: Vec<f64> = (0..k).map(|_| span * rng.random::<f64>()).collect();
        lambdas.sort_by(f64::total_cmp);
        lambdas.dedup();
        let a: Vec<Complex64> = lambdas
            .iter()
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        let r = mv_mean_value_check(&lambdas, &a, t)?;
        worst = worst.max(r.normalized_error);
        cases.push(r);
    }
    let a = Complex64::new(0.3, -1.1);
    let single = mv_mean_value_check(&[2.5], &[a], t)?;
    let rel = (single.numeric_integral - single.main_term).abs() / single.main_term;
    let results = json!({"cases": cases, "worst_normalized_error": worst, "single_frequency": single});
    let checks = vec![
        Check::at_most("worst_normalized_error", worst, 10.0),
        Check::at_most("single_frequency_relative_error", rel, 1e-12),
    ];
    Ok(ExperimentReport::new(Experiment::Mv, config, results, checks))
}

/// `(a, b)` pairs of the increment weight family.
pub const FOURTH_MOMENT_PAIRS: [(f64, f64); 4] = [(0.0, 0.5), (0.25, 0.75), (0.5, 1.0), (0.9, 1.0)];

pub fn fourth_moment_report(config: &RunConfig) -> Result<ExperimentReport> {
    let x = config.x();
    let m = build_mollifier(x, MollifierNorm::Selberg)?;
    let seed = derive_seed(config.seed, "fourth_moment");
    let n = config.n_samples.max(1);
    let mut reports = Vec::new();
    let mut checks = Vec::new();
    for &(a, b) in &FOURTH_MOMENT_PAIRS {
        let w = increment_weights(a, b, config.t, &m)?;
        let r = pool(config.workers)?.install(|| fourth_moment_check(&w, x, config.t, n, seed))?;
        checks.push(Check::at_most(&format!("ratio_{a}_{b}"), r.ratio, 20.0));
        reports.push(json!({"a": a, "b": b, "report": r}));
    }
    let results = json!({"x": x, "support": m.len(), "pairs": reports});
    Ok(ExperimentReport::new(Experiment::FourthMoment, config, results, checks))
}

pub fn lemma22_report(config: &RunConfig) -> Result<ExperimentReport> {
    let table = PrimeTable::load_or_sieve(config.t.floor() as u64)?;
    let r = lemma22_hypotheses_check(&COVARIANCE_ALPHAS, config.t, &table)?;
    let one = r
        .pairs
        .iter()
        .find(|p| p.alpha_i == 1.0 && p.alpha_j == 1.0)
        .and_then(|p| p.ratio)
        .expect("(1, 1) pair present");
    let checks = vec![
        Check::between("sup_attained_at", r.sup_attained_at as f64, 2.0, 2.0),
        Check::at_most("sup_formula_gap", (r.sup_a - r.sup_explicit).abs(), 1e-12),
        Check::between("ratio_1_1", one, 0.6, 1.4),
        Check::at_most("tail_fraction", r.tail_fraction, 0.2),
    ];
    Ok(ExperimentReport::new(Experiment::Lemma22, config, serde_json::to_value(&r)?, checks))
}

pub const EX_DECAY_XS: [f64; 3] = [10.0, 100.0, 1000.0];

pub fn ex_decay_report(config: &RunConfig) -> Result<ExperimentReport> {
    let seed = derive_seed(config.seed, "ex_decay");
    let heights: Vec<f64> = (0..50).map(|i| config.tau_range.draw(config.t, &mut task_rng(seed, i))).collect();
    let run = |form| pool(config.workers)?.install(|| ex_decay_check(1.0, &EX_DECAY_XS, &heights, form, MollifierNorm::Selberg));
    let log_form = run(ResidualForm::LogForm)?;
    let deriv_form = run(ResidualForm::LogDerivForm)?;
    let checks = vec![Check::at_most("slope_log_form", log_form.slope, -0.3)];
    let results = json!({"log_form": log_form, "logderiv_form": deriv_form});
    Ok(ExperimentReport::new(Experiment::ExDecay, config, results, checks))
}

/// Runs one experiment; path experiments sample `config.n_samples` paths.
pub fn run_experiment(config: &RunConfig, experiment: Experiment) -> Result<(ExperimentReport, u64)> {
    if !experiment.needs_paths() {
        let r = match experiment {
            Experiment::Lemma33 => lemma33_report(config)?,
            Experiment::Mv => mv_report(config)?,
            Experiment::FourthMoment => fourth_moment_report(config)?,
            Experiment::Lemma22 => lemma22_report(config)?,
            Experiment::ExDecay => ex_decay_report(config)?,
            _ => unreachable!("path experiments handled below"),
        };
        return Ok((r, 0));
    }
    let tables = load_tables(config)?;
    let ens = sample_ensemble(config, &tables, config.n_samples)?;
    let r = match experiment {
        Experiment::Clt => clt_report(config, &ens)?,
        Experiment::Covariance => covariance_report(config, &ens)?,
        Experiment::Reflection => reflection_report(config, &ens)?,
        Experiment::Arcsine => arcsine_report(config, &ens)?,
        Experiment::Localtime => localtime_report(config, &ens)?,
        Experiment::Signchanges => signchanges_report(config, &ens)?,
        Experiment::RmtCompare => {
            let rmt = sample_rmt(config, RMT_DIMENSION, config.n_samples)?;
            rmt_compare_report(config, &ens, &rmt)?
        }
        _ => unreachable!("non-path experiments handled above"),
    };
    Ok((r, ens.rejections))
}
