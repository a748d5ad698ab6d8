//! Real and imaginary parts of Z(1) against N(0, 1/2).

use zeta_brownian::arith::PrimeTable;
use zeta_brownian::process::{alpha_grid, PathSampler, TauRange};
use zeta_brownian::stats::{ks_one_sample, EmpiricalDistribution};

fn main() -> zeta_brownian::Result<()> {
    let t: f64 = 1e6;
    let table = PrimeTable::load_or_sieve(t as u64)?;
    let sampler = PathSampler::prime_sum(t, t, alpha_grid(2, 1.0)?, &table)?;
    let paths: Vec<_> = sampler
        .sample_tasks(TauRange::TToTwoT, 9, 0..1000)
        .into_iter()
        .collect::<zeta_brownian::Result<_>>()?;
    let re: Vec<f64> = paths.iter().map(|p| p.path.values[1].re).collect();
    let im: Vec<f64> = paths.iter().map(|p| p.path.values[1].im).collect();
    let cdf = |x: f64| 0.5 * (1.0 + libm::erf(x));
    for (name, v) in [("Re", re), ("Im", im)] {
        let var = v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64;
        let d = EmpiricalDistribution::new(v)?;
        println!("{name} Z(1): mean {:+.4}, second moment {:.4}, KS vs N(0, 1/2) {:.4}", d.mean(), var, ks_one_sample(&d, cdf));
    }
    println!("(the second moments sit below 1/2 by about log 2 / (2 log log T))");
    Ok(())
}
