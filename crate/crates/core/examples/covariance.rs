//! Empirical covariance of Z at alpha in {1/4, 1/2, 3/4, 1} against min(alpha_i, alpha_j).

use zeta_brownian::arith::PrimeTable;
use zeta_brownian::process::{alpha_grid, PathSampler, TauRange};
use zeta_brownian::stats::complex_covariance;

fn main() -> zeta_brownian::Result<()> {
    let alphas = [0.25, 0.5, 0.75, 1.0];
    for t in [1e6f64, 1e8] {
        let table = PrimeTable::load_or_sieve(t as u64)?;
        let sampler = PathSampler::prime_sum(t, t, alpha_grid(2, 1.0)?, &table)?.with_extra_alphas(&alphas)?;
        let extra: Vec<_> = sampler
            .sample_tasks(TauRange::TToTwoT, 21, 0..400)
            .into_iter()
            .map(|r| r.map(|s| s.extra))
            .collect::<zeta_brownian::Result<_>>()?;
        let c = complex_covariance(&extra, &alphas)?;
        println!("T = {t:e}, {} samples (real part, jackknife error):", c.n_samples);
        for (i, row) in c.matrix.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, z)| format!("{:.3}±{:.3}", z.re, c.standard_errors[i][j]))
                .collect();
            println!("  {}", cells.join("  "));
        }
        println!("  max |C - min(a_i, a_j)| = {:.3}", c.max_deviation(|a, b| a.min(b)));
    }
    Ok(())
}
