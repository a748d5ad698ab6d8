//! Occupation measure of Re Z on [0, 1] and the functional with phi = min(x+, 1).

use zeta_brownian::arith::PrimeTable;
use zeta_brownian::oracle::simulate_bm;
use zeta_brownian::process::{alpha_grid, occupation_functional, occupation_histogram, positive_part_capped, PathSampler, TauRange};

fn main() -> zeta_brownian::Result<()> {
    let t: f64 = 1e6;
    let grid = alpha_grid(512, 1.0)?;
    let table = PrimeTable::load_or_sieve(t as u64)?;
    let sampler = PathSampler::prime_sum(t, t, grid.clone(), &table)?;
    let tau = sampler.draw_tau(TauRange::TToTwoT, 8, 0, 0);
    let path = sampler.sample(tau)?;
    let bm = simulate_bm(&grid, 8, 0)?;

    for (name, hist) in [("zeta", occupation_histogram(&path, 1.0)?), ("brownian", occupation_histogram(&bm, 1.0)?)] {
        println!("{name}: occupation mass {:.4} over {} bins of width {}", hist.total(), hist.mass.len(), hist.bin_width);
        for (k, m) in hist.mass.iter().enumerate().filter(|(_, m)| **m > 0.05) {
            let v = (hist.first_bin + k as i64) as f64 * hist.bin_width;
            println!("  [{v:+.2}, {:+.2}): {m:.3}", v + hist.bin_width);
        }
    }
    println!("<L_1, min(x+, 1)>: zeta {:.4}, brownian {:.4}",
        occupation_functional(&path, positive_part_capped, 1.0)?,
        occupation_functional(&bm, positive_part_capped, 1.0)?);
    Ok(())
}
