use super::path::{check_grid, normalization, sigma_of, Model, ProcessPath, TauRange};
use crate::arith::{MollifierTable, PrimeTable};
use crate::error::{Error, Result};
use crate::phasor::unit_phasor;
use crate::rng::task_rng;
use crate::spectral::{BinLayout, Spectrum};
use crate::zeta::{log_zeta_far_right, zeta_line, HorizontalLog, DEFAULT_STEP, PRINCIPAL_SIGMA};
use num_complex::Complex64;

/// Heights processed per pass over the Dirichlet terms.
pub const BLOCK: usize = 8;
/// Draws allowed per task before near-zero rejections give up.
pub const MAX_REJECTIONS: u32 = 64;

// Right end of the binned range; beyond it the tail is summed directly.
const BIN_SIGMA_MAX: f64 = 6.0;
const FAR_TERMS: f64 = 2000.0;
const FAR_SIGMAS: [f64; 6] = [7.0, 8.0, 10.0, 14.0, 20.0, 40.0];
const TAIL_STEP: f64 = 0.05;

enum Backend {
    Direct { step: f64 },
    Binned {
        layout: BinLayout,
        terms: Vec<(f64, f64)>,
        far: Vec<(f64, f64)>,
    },
}

/// A sampled path together with the task it came from.
#[derive(Clone, Debug)]
pub struct SampledPath {
    pub index: u64,
    pub path: ProcessPath,
    /// Values at the sampler's extra abscissae (normalised).
    pub extra: Vec<Complex64>,
    /// Heights redrawn after near-zero failures.
    pub rejections: u32,
}

/// Builds [`ProcessPath`]s for one `(T, model, grid)`.
///
/// The Dirichlet models bin their terms once per block of heights (see
/// [`crate::spectral`]), so a path costs one pass over the terms plus
/// `O(bins)` per abscissa. The direct model walks `log zeta` downward from
/// `sigma = 3/2`.
pub struct PathSampler {
    t: f64,
    model: Model,
    alpha_grid: Vec<f64>,
    extra_alphas: Vec<f64>,
    norm: f64,
    tail_sigmas: Vec<f64>,
    backend: Backend,
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 10.0 && t.is_finite()) {
        return Err(Error::domain(format!("T must exceed 10, got {t}")));
    }
    Ok(())
}

fn tail_sigmas() -> Vec<f64> {
    let n = ((BIN_SIGMA_MAX - PRINCIPAL_SIGMA) / TAIL_STEP).round() as usize;
    (0..=n).map(|k| PRINCIPAL_SIGMA + TAIL_STEP * k as f64).collect()
}

impl PathSampler {
    fn build(t: f64, model: Model, alpha_grid: Vec<f64>, backend: Backend) -> Result<Self> {
        check_t(t)?;
        check_grid(&alpha_grid)?;
        Ok(PathSampler {
            t,
            model,
            alpha_grid,
            extra_alphas: Vec::new(),
            norm: normalization(t),
            tail_sigmas: tail_sigmas(),
            backend,
        })
    }

    /// `log zeta` continued horizontally, with the default step.
    pub fn direct(t: f64, alpha_grid: Vec<f64>) -> Result<Self> {
        Self::build(t, Model::Direct, alpha_grid, Backend::Direct { step: DEFAULT_STEP })
    }

    /// `sum_{p <= cutoff} p^{-s}`; the usual model takes `cutoff = T`.
    pub fn prime_sum(t: f64, cutoff: f64, alpha_grid: Vec<f64>, table: &PrimeTable) -> Result<Self> {
        table.require(cutoff, "prime sum cutoff")?;
        let primes = table.up_to(cutoff);
        let terms: Vec<(f64, f64)> = primes.iter().map(|&p| ((p as f64).ln(), 1.0)).collect();
        Self::binned(t, Model::PrimeSum, alpha_grid, terms)
    }

    /// `sum_{n <= x^3} Lambda_x(n) / (n^s log n)`.
    pub fn selberg(t: f64, alpha_grid: Vec<f64>, mollifier: &MollifierTable) -> Result<Self> {
        let terms: Vec<(f64, f64)> = mollifier
            .entries()
            .map(|(n, w)| {
                let l = (n as f64).ln();
                (l, w / l)
            })
            .collect();
        Self::binned(t, Model::SelbergMollified, alpha_grid, terms)
    }

    fn binned(t: f64, model: Model, alpha_grid: Vec<f64>, terms: Vec<(f64, f64)>) -> Result<Self> {
        let l_max = terms.last().map_or(1.0, |&(l, _)| l);
        let l_min = terms.first().map_or(0.0, |&(l, _)| l).min(l_max);
        let layout = BinLayout::new(l_min, l_max, BIN_SIGMA_MAX);
        let far_l = FAR_TERMS.ln();
        let far = terms.iter().copied().take_while(|&(l, _)| l <= far_l).collect();
        Self::build(t, model, alpha_grid, Backend::Binned { layout, terms, far })
    }

    /// Also evaluate every path at these `alpha` (returned in [`SampledPath::extra`]).
    pub fn with_extra_alphas(mut self, alphas: &[f64]) -> Result<Self> {
        if alphas.iter().any(|&a| !(0.0..=4.0).contains(&a)) {
            return Err(Error::domain("extra alphas must lie in [0, 4]"));
        }
        self.extra_alphas = alphas.to_vec();
        Ok(self)
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn alpha_grid(&self) -> &[f64] {
        &self.alpha_grid
    }

    pub fn normalization(&self) -> f64 {
        self.norm
    }

    /// Height used by `attempt` (0-based) of task `index`.
    pub fn draw_tau(&self, range: TauRange, seed: u64, index: u64, attempt: u32) -> f64 {
        let mut rng = task_rng(seed, index);
        let mut tau = range.draw(self.t, &mut rng);
        for _ in 0..attempt {
            tau = range.draw(self.t, &mut rng);
        }
        tau
    }

    /// Path at a fixed height.
    pub fn sample(&self, tau: f64) -> Result<ProcessPath> {
        self.sample_heights(&[tau]).pop().expect("one result per height").map(|(p, _)| p)
    }

    /// Paths at several heights, with the extra values.
    pub fn sample_heights(&self, taus: &[f64]) -> Vec<Result<(ProcessPath, Vec<Complex64>)>> {
        if let Some(&bad) = taus.iter().find(|&&tau| !(tau >= 2.0)) {
            let e = || Error::domain(format!("heights below 2 are rejected, got {bad}"));
            return taus.iter().map(|_| Err(e())).collect();
        }
        match &self.backend {
            Backend::Direct { step } => taus.iter().map(|&tau| self.direct_one(tau, *step)).collect(),
            Backend::Binned { layout, terms, far } => {
                let mut out = Vec::with_capacity(taus.len());
                for chunk in taus.chunks(BLOCK) {
                    let spectra = layout.accumulate(terms.iter().copied(), chunk);
                    for (spec, &tau) in spectra.iter().zip(chunk) {
                        out.push(Ok(self.binned_one(spec, far, tau)));
                    }
                }
                out
            }
        }
    }

    /// Tasks `indices` of a run: each draws its height from its own stream
    /// and redraws after near-zero failures.
    pub fn sample_tasks(&self, range: TauRange, seed: u64, indices: std::ops::Range<u64>) -> Vec<Result<SampledPath>> {
        match self.backend {
            Backend::Binned { .. } => {
                let taus: Vec<f64> = indices.clone().map(|i| self.draw_tau(range, seed, i, 0)).collect();
                indices
                    .zip(self.sample_heights(&taus))
                    .map(|(index, r)| {
                        r.map(|(path, extra)| SampledPath {
                            index,
                            path,
                            extra,
                            rejections: 0,
                        })
                    })
                    .collect()
            }
            Backend::Direct { .. } => indices.map(|i| self.direct_task(range, seed, i)).collect(),
        }
    }

    fn direct_task(&self, range: TauRange, seed: u64, index: u64) -> Result<SampledPath> {
        let mut rng = task_rng(seed, index);
        for attempt in 0..=MAX_REJECTIONS {
            let tau = range.draw(self.t, &mut rng);
            match self.sample_heights(&[tau]).pop().expect("one result") {
                Ok((path, extra)) => {
                    return Ok(SampledPath {
                        index,
                        path,
                        extra,
                        rejections: attempt,
                    })
                }
                Err(e) if e.is_near_zero() => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::domain(format!("task {index}: {MAX_REJECTIONS} near-zero rejections in a row")))
    }

    fn all_sigmas(&self) -> Vec<f64> {
        self.alpha_grid
            .iter()
            .chain(&self.extra_alphas)
            .map(|&a| sigma_of(a, self.t))
            .collect()
    }

    fn assemble(&self, tau: f64, mut logs: Vec<Complex64>, tail: f64) -> (ProcessPath, Vec<Complex64>) {
        for v in &mut logs {
            *v /= self.norm;
        }
        let extra = logs.split_off(self.alpha_grid.len());
        let path = ProcessPath {
            t: self.t,
            tau,
            alpha_grid: self.alpha_grid.clone(),
            values: logs,
            model: self.model,
            normalization: self.norm,
            tail_sup: tail / self.norm,
        };
        (path, extra)
    }

    fn binned_one(&self, spec: &Spectrum, far: &[(f64, f64)], tau: f64) -> (ProcessPath, Vec<Complex64>) {
        let logs: Vec<Complex64> = self.all_sigmas().iter().map(|&s| spec.eval(s)).collect();
        let mut tail = 0.0f64;
        for &s in &self.tail_sigmas {
            tail = tail.max(spec.eval(s).re);
        }
        for &s in &FAR_SIGMAS {
            let v: f64 = far.iter().map(|&(l, a)| (unit_phasor(tau, l) * (a * (-s * l).exp())).re).sum();
            tail = tail.max(v);
        }
        self.assemble(tau, logs, tail)
    }

    fn direct_one(&self, tau: f64, step: f64) -> Result<(ProcessPath, Vec<Complex64>)> {
        let sigmas = self.all_sigmas();
        let lo = sigmas.iter().copied().fold(PRINCIPAL_SIGMA, f64::min);
        let line = zeta_line(tau, lo, BIN_SIGMA_MAX)?;
        let mut order: Vec<usize> = (0..sigmas.len()).collect();
        order.sort_by(|&a, &b| sigmas[b].total_cmp(&sigmas[a]));
        let mut logs = vec![Complex64::new(0.0, 0.0); sigmas.len()];
        let mut walk = HorizontalLog::new(&line, step)?;
        for i in order {
            let s = sigmas[i];
            logs[i] = if s >= PRINCIPAL_SIGMA {
                line.eval(s).ln()
            } else {
                walk.advance_to(s)?
            };
        }
        let mut tail = 0.0f64;
        for &s in &self.tail_sigmas {
            tail = tail.max(line.eval(s).norm().ln());
        }
        for &s in &FAR_SIGMAS {
            tail = tail.max(log_zeta_far_right(s, tau).re);
        }
        Ok(self.assemble(tau, logs, tail))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_mollifier, sieve, MollifierNorm};
    use crate::process::alpha_grid;
    use crate::zeta::{dirichlet_prime_sum, selberg_log_sum, zeta_em};

    #[test]
    fn prime_sum_path_matches_direct_sum() {
        let table = sieve(200_000).unwrap();
        let t = 1.0e5;
        let grid = alpha_grid(17, 1.0).unwrap();
        let s = PathSampler::prime_sum(t, t, grid.clone(), &table).unwrap();
        let tau = 123_456.789;
        let p = s.sample(tau).unwrap();
        for (k, &a) in grid.iter().enumerate() {
            let d = dirichlet_prime_sum(sigma_of(a, t), tau, t, &table).unwrap() / s.normalization();
            assert!((p.values[k] - d).norm() < 1e-11, "k={k}");
        }
    }

    #[test]
    fn cutoff_one_gives_zero_path() {
        let table = sieve(100).unwrap();
        let s = PathSampler::prime_sum(1e6, 1.0, alpha_grid(9, 1.0).unwrap(), &table).unwrap();
        let p = s.sample(5_000.0).unwrap();
        assert!(p.values.iter().all(|v| *v == Complex64::new(0.0, 0.0)));
        assert_eq!(p.tail_sup, 0.0);
    }

    #[test]
    fn selberg_path_matches_direct_sum() {
        let m = build_mollifier(20.0, MollifierNorm::Selberg).unwrap();
        let t = 1.0e6;
        let grid = alpha_grid(9, 1.0).unwrap();
        let s = PathSampler::selberg(t, grid.clone(), &m).unwrap();
        let tau = 1.7e6;
        let p = s.sample(tau).unwrap();
        for (k, &a) in grid.iter().enumerate() {
            let d = selberg_log_sum(sigma_of(a, t), tau, &m) / s.normalization();
            assert!((p.values[k] - d).norm() < 1e-11);
        }
    }

    #[test]
    fn direct_path_exponentiates_to_zeta() {
        let t = 1.0e4;
        let grid = alpha_grid(33, 1.0).unwrap();
        let s = PathSampler::direct(t, grid.clone()).unwrap();
        let tau = 12_345.6;
        let p = s.sample(tau).unwrap();
        let c = 1.5f64 + Complex64::new(0.0, tau);
        let z0 = zeta_em(c.re, c.im, 1e-10).unwrap();
        assert!((p.values[0] * s.normalization() - z0.ln()).norm() < 1e-8);
        for (k, &a) in grid.iter().enumerate() {
            let z = zeta_em(sigma_of(a, t), tau, 1e-10).unwrap();
            let e = (p.values[k] * p.normalization).exp();
            assert!((e - z).norm() <= 1e-6 * z.norm(), "k={k}");
        }
        // the tail covers sigma = 3/2 itself
        assert!(p.tail_sup >= p.values[0].re - 1e-12);
    }

    #[test]
    fn extra_alphas_match_grid_values() {
        let table = sieve(100_000).unwrap();
        let grid = alpha_grid(5, 1.0).unwrap();
        let s = PathSampler::prime_sum(5e4, 5e4, grid, &table)
            .unwrap()
            .with_extra_alphas(&[0.25, 1.0])
            .unwrap();
        let (p, extra) = s.sample_heights(&[77_777.0]).pop().unwrap().unwrap();
        assert_eq!(extra[0], p.values[1]);
        assert_eq!(extra[1], p.values[4]);
    }

    #[test]
    fn tasks_are_order_independent() {
        let table = sieve(100_000).unwrap();
        let s = PathSampler::prime_sum(5e4, 5e4, alpha_grid(5, 1.0).unwrap(), &table).unwrap();
        let all = s.sample_tasks(TauRange::TToTwoT, 9, 0..20);
        let part = s.sample_tasks(TauRange::TToTwoT, 9, 13..17);
        for (a, b) in all[13..17].iter().zip(&part) {
            assert_eq!(a.as_ref().unwrap().path, b.as_ref().unwrap().path);
        }
        for r in &all {
            let tau = r.as_ref().unwrap().path.tau;
            assert!((5e4..=1e5).contains(&tau));
        }
    }

    #[test]
    fn rejects_low_heights_and_small_t() {
        assert!(PathSampler::direct(5.0, alpha_grid(3, 1.0).unwrap()).is_err());
        let s = PathSampler::direct(100.0, alpha_grid(3, 1.0).unwrap()).unwrap();
        assert!(s.sample(1.0).is_err());
        assert!(PathSampler::direct(100.0, vec![0.1, 0.2]).is_err());
    }
}
