//! Horizontal maximum of Re Z against the Brownian reflection law.

use zeta_brownian::arith::PrimeTable;
use zeta_brownian::oracle::{bm_statistic_sample, max_limit_cdf, ORACLE_GRID_POINTS};
use zeta_brownian::process::{alpha_grid, max_statistic, max_statistic_capped, zeta_cap, PathSampler, PathStatistic, TauRange};
use zeta_brownian::stats::{ks_one_sample, ks_two_sample, EmpiricalDistribution};

fn main() -> zeta_brownian::Result<()> {
    let t: f64 = 1e6;
    let n = 500;
    let table = PrimeTable::load_or_sieve(t as u64)?;
    let sampler = PathSampler::prime_sum(t, t, alpha_grid(512, 1.0)?, &table)?;
    let paths: Vec<_> = sampler
        .sample_tasks(TauRange::TToTwoT, 3, 0..n as u64)
        .into_iter()
        .collect::<zeta_brownian::Result<_>>()?;

    let maxima: Vec<f64> = paths.iter().map(|p| max_statistic(&p.path)).collect();
    let capped: Vec<f64> = paths.iter().map(|p| max_statistic_capped(&p.path, zeta_cap(t))).collect();
    let bm = bm_statistic_sample(PathStatistic::Max, n, &alpha_grid(ORACLE_GRID_POINTS, 1.0)?, 4)?;

    let z = EmpiricalDistribution::new(maxima)?;
    let c = EmpiricalDistribution::new(capped)?;
    let b = EmpiricalDistribution::new(bm)?;
    println!("mean max: zeta {:.4}, capped at log zeta(3/2) {:.4}, brownian {:.4}", z.mean(), c.mean(), b.mean());
    println!("KS zeta vs brownian       {:.4}", ks_two_sample(&z, &b));
    println!("KS zeta vs |N(0, 1/2)|    {:.4}", ks_one_sample(&z, max_limit_cdf));
    println!("KS brownian vs |N(0, 1/2)| {:.4}", ks_one_sample(&b, max_limit_cdf));
    Ok(())
}
