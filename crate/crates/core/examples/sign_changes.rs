//! Sign changes and the running supremum of |Re Z| near alpha = 0.

use zeta_brownian::arith::PrimeTable;
use zeta_brownian::oracle::bm_statistic_sample;
use zeta_brownian::process::{alpha_grid, running_sup, sign_change_count_until, PathSampler, PathStatistic, TauRange};

fn main() -> zeta_brownian::Result<()> {
    let t: f64 = 1e6;
    let n = 400;
    let grid = alpha_grid(512, 1.0)?;
    let table = PrimeTable::load_or_sieve(t as u64)?;
    let sampler = PathSampler::prime_sum(t, t, grid.clone(), &table)?;
    let paths: Vec<_> = sampler
        .sample_tasks(TauRange::TToTwoT, 12, 0..n as u64)
        .into_iter()
        .collect::<zeta_brownian::Result<_>>()?;
    let zeta: Vec<usize> = paths.iter().map(|p| sign_change_count_until(&p.path, 1.0)).collect();
    let bm = bm_statistic_sample(PathStatistic::SignChanges, n, &grid, 13)?;
    let frac = |c: &mut dyn Iterator<Item = f64>, k: f64| c.filter(|&v| v >= k).count() as f64 / n as f64;
    for k in [1.0, 3.0, 10.0] {
        println!(
            "P(at least {k} sign changes): zeta {:.3}, brownian {:.3}",
            frac(&mut zeta.iter().map(|&c| c as f64), k),
            frac(&mut bm.iter().cloned(), k)
        );
    }

    let s = running_sup(&paths[0].path);
    println!("\nrunning sup of |Re Z| for the first path:");
    for k in [8, 32, 128, 511] {
        println!("  alpha = {:.3}: {:.4}", grid[k], s[k]);
    }
    Ok(())
}
