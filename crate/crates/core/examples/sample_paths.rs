//! Sampling trajectories of the horizontal process under the three models,
//! and writing them to the versioned paths CSV.

use zeta_brownian::arith::{build_mollifier, MollifierNorm, PrimeTable};
use zeta_brownian::cli::output::{read_paths_csv, write_paths_csv};
use zeta_brownian::process::{alpha_grid, PathSampler, TauRange};

fn main() -> zeta_brownian::Result<()> {
    let t: f64 = 1e6;
    let grid = alpha_grid(65, 1.0)?;
    let table = PrimeTable::load_or_sieve(t as u64)?;
    let mollifier = build_mollifier(t.powf(0.05), MollifierNorm::Selberg)?;

    let direct = PathSampler::direct(t, grid.clone())?;
    let primes = PathSampler::prime_sum(t, t, grid.clone(), &table)?;
    let selberg = PathSampler::selberg(t, grid, &mollifier)?;

    let mut paths = Vec::new();
    for i in 0..3 {
        let tau = direct.draw_tau(TauRange::TToTwoT, 42, i, 0);
        let d = direct.sample(tau)?;
        let p = primes.sample(tau)?;
        let s = selberg.sample(tau)?;
        let gap = |a: &[zeta_brownian::Complex64], b: &[zeta_brownian::Complex64]| {
            a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
        };
        println!("tau = {tau:.3}");
        println!("  Z(0) = {:.4}, Z(1) = {:.4}", d.values[0], d.values[64]);
        println!("  sup |direct - prime_sum| = {:.3}, sup |direct - mollified| = {:.3}", gap(&d.values, &p.values), gap(&d.values, &s.values));
        paths.extend([d, p, s]);
    }

    let dir = std::env::temp_dir().join("zeta-brownian-example");
    std::fs::create_dir_all(&dir).expect("temp dir is writable");
    let csv = dir.join("paths.csv");
    write_paths_csv(&csv, &paths)?;
    println!("\nwrote {} rows to {}", read_paths_csv(&csv)?.len(), csv.display());
    Ok(())
}
