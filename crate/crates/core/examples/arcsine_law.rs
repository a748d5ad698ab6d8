//! Time Re Z spends positive on [0, 1], against the arcsine law.

use zeta_brownian::arith::PrimeTable;
use zeta_brownian::oracle::{arcsine_cdf_total, bm_statistic_sample};
use zeta_brownian::process::{alpha_grid, arcsine_statistic, PathSampler, PathStatistic, TauRange};
use zeta_brownian::stats::{ks_one_sample, ks_two_sample, EmpiricalDistribution};

fn main() -> zeta_brownian::Result<()> {
    let t: f64 = 1e6;
    let n = 500;
    let grid = alpha_grid(512, 1.0)?;
    let table = PrimeTable::load_or_sieve(t as u64)?;
    let sampler = PathSampler::prime_sum(t, t, grid.clone(), &table)?;
    let fractions: Vec<f64> = sampler
        .sample_tasks(TauRange::TToTwoT, 5, 0..n as u64)
        .into_iter()
        .map(|r| r.map(|s| arcsine_statistic(&s.path)))
        .collect::<zeta_brownian::Result<_>>()?;
    let bm = bm_statistic_sample(PathStatistic::Arcsine, n, &grid, 6)?;

    let z = EmpiricalDistribution::new(fractions)?;
    let b = EmpiricalDistribution::new(bm)?;
    for y in [0.1, 0.25, 0.5, 0.75, 0.9] {
        println!("P(fraction <= {y}): zeta {:.3}, brownian {:.3}, arcsine {:.3}", z.cdf(y), b.cdf(y), arcsine_cdf_total(y));
    }
    println!("KS zeta vs brownian {:.4}, zeta vs arcsine {:.4}", ks_two_sample(&z, &b), ks_one_sample(&z, arcsine_cdf_total));
    Ok(())
}
