//! Complex Brownian motion and the limit laws it predicts.

use crate::error::{Error, Result};
use crate::process::{PathStatistic, Trajectory};
use crate::rng::task_rng;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::{FRAC_2_PI, SQRT_2};

/// `(B_1 + i B_2) / sqrt(2)` sampled on a grid, `B(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct BrownianPath {
    pub alpha_grid: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl Trajectory for BrownianPath {
    fn alpha_grid(&self) -> &[f64] {
        &self.alpha_grid
    }
    fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Default grid size for oracle paths.
pub const ORACLE_GRID_POINTS: usize = 4096;

/// Brownian path on `alpha_grid` (which must start at 0) drawn from `rng`.
pub fn simulate_bm_with<R: Rng + ?Sized>(alpha_grid: &[f64], rng: &mut R) -> Result<BrownianPath> {
    if alpha_grid.first() != Some(&0.0) {
        return Err(Error::domain("Brownian grid must start at 0"));
    }
    let mut values = Vec::with_capacity(alpha_grid.len());
    let mut z = Complex64::new(0.0, 0.0);
    values.push(z);
    for w in alpha_grid.windows(2) {
        let dt = w[1] - w[0];
        if !(dt > 0.0) {
            return Err(Error::domain("Brownian grid must be strictly increasing"));
        }
        let sd = (0.5 * dt).sqrt();
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        z += Complex64::new(re, im) * sd;
        values.push(z);
    }
    Ok(BrownianPath {
        alpha_grid: alpha_grid.to_vec(),
        values,
    })
}

/// Path number `index` of the stream seeded by `seed`.
pub fn simulate_bm(alpha_grid: &[f64], seed: u64, index: u64) -> Result<BrownianPath> {
    simulate_bm_with(alpha_grid, &mut task_rng(seed, index))
}

/// `1 - 2 int_u^inf phi(x) dx = erf(u / sqrt 2)` for `u >= 0`, else 0.
pub fn half_normal_cdf(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    libm::erf(u / SQRT_2)
}

/// Limit law of the normalised horizontal maximum: `sup Re B` on `[0, 1]`
/// is `|N(0, 1/2)|`, so `P(max <= y) = half_normal_cdf(y sqrt 2)`.
pub fn max_limit_cdf(y: f64) -> f64 {
    half_normal_cdf(SQRT_2 * y)
}

/// `(2/pi) arcsin(sqrt y)`.
pub fn arcsine_cdf(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::domain(format!("arcsine law lives on [0, 1], got {y}")));
    }
    Ok(FRAC_2_PI * y.sqrt().asin())
}

/// `arcsine_cdf` clamped to `[0, 1]` outside its support, for KS tests.
pub fn arcsine_cdf_total(y: f64) -> f64 {
    arcsine_cdf(y.clamp(0.0, 1.0)).expect("clamped into support")
}

/// `n_paths` draws of `statistic` on Brownian paths, path `i` from stream `i`.
pub fn bm_statistic_sample(statistic: PathStatistic, n_paths: usize, grid: &[f64], seed: u64) -> Result<Vec<f64>> {
    use rayon::prelude::*;
    (0..n_paths as u64)
        .into_par_iter()
        .map(|i| statistic.apply(&simulate_bm(grid, seed, i)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{alpha_grid, Phi};

    fn erf_series(x: f64) -> f64 {
        // Maclaurin series, fine for |x| <= 3.
        let mut term = x;
        let mut sum = x;
        for n in 1..200 {
            term *= -x * x / n as f64;
            sum += term / (2 * n + 1) as f64;
        }
        sum * 2.0 / std::f64::consts::PI.sqrt()
    }

    #[test]
    fn half_normal_values() {
        assert_eq!(half_normal_cdf(0.0), 0.0);
        assert_eq!(half_normal_cdf(-1.0), 0.0);
        assert!((half_normal_cdf(40.0) - 1.0).abs() < 1e-15);
        let v = half_normal_cdf(1.0);
        assert!((v - 0.682_689_492_137_086).abs() < 1e-13, "{v:e}");
        for k in 1..40 {
            let u = 0.1 * k as f64;
            assert!((half_normal_cdf(u) - erf_series(u / SQRT_2)).abs() < 1e-13);
        }
    }

    #[test]
    fn arcsine_values() {
        assert_eq!(arcsine_cdf(0.0).unwrap(), 0.0);
        assert!((arcsine_cdf(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((arcsine_cdf(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((arcsine_cdf(0.25).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(arcsine_cdf(1.1).is_err() && arcsine_cdf(-0.1).is_err());
    }

    #[test]
    fn path_starts_at_zero_and_is_reproducible() {
        let g = alpha_grid(64, 1.0).unwrap();
        let a = simulate_bm(&g, 3, 5).unwrap();
        assert_eq!(a.values[0], Complex64::new(0.0, 0.0));
        assert_eq!(a, simulate_bm(&g, 3, 5).unwrap());
        assert!(simulate_bm(&[0.1, 0.2], 3, 5).is_err());
    }

    #[test]
    fn variance_and_covariance() {
        let g = vec![0.0, 0.3, 0.5, 0.7, 1.0];
        let n = 100_000;
        let (mut v1, mut c37) = (0.0, Complex64::new(0.0, 0.0));
        let (mut m3, mut m7) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        let (mut inc, mut i1, mut i2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = simulate_bm(&g, 11, i).unwrap();
            v1 += p.values[4].re * p.values[4].re;
            c37 += p.values[1].conj() * p.values[3];
            m3 += p.values[1];
            m7 += p.values[3];
            let a = p.values[2].re;
            let b = p.values[4].re - p.values[2].re;
            inc += a * b;
            i1 += a * a;
            i2 += b * b;
        }
        let nf = n as f64;
        assert!((v1 / nf - 0.5).abs() < 0.01);
        let cov = c37 / nf - (m3 / nf).conj() * (m7 / nf);
        assert!((cov.re - 0.3).abs() < 0.02 && cov.im.abs() < 0.02);
        assert!((inc / (i1 * i2).sqrt()).abs() < 0.02);
    }

    #[test]
    fn occupation_of_one_is_horizon() {
        let g = alpha_grid(128, 1.0).unwrap();
        let s = bm_statistic_sample(PathStatistic::Occupation { phi: Phi::One, t: 0.7 }, 50, &g, 1).unwrap();
        assert!(s.iter().all(|&v| (v - 0.7).abs() < 1e-12));
    }
}
