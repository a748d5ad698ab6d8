//! Counter-based streams: results depend on (seed, task index) only, not on
//! how tasks are split over threads.

use zeta_brownian::cli::experiments::{sample_ensemble, load_tables};
use zeta_brownian::cli::RunConfig;
use zeta_brownian::rng::{derive_seed, task_rng};
use rand::Rng;

fn main() -> zeta_brownian::Result<()> {
    let a: f64 = task_rng(7, 3).random();
    let b: f64 = task_rng(7, 3).random();
    let c: f64 = task_rng(7, 4).random();
    println!("task 3 twice: {a} {b}; task 4: {c}");
    println!("labelled sub-seeds: paths {:#x}, bm {:#x}", derive_seed(7, "paths"), derive_seed(7, "bm"));

    let base = RunConfig { n_samples: 64, grid_points: 64, ..RunConfig::default() };
    let tables = load_tables(&base)?;
    let one = sample_ensemble(&RunConfig { workers: 1, ..base.clone() }, &tables, 64)?;
    let four = sample_ensemble(&RunConfig { workers: 4, ..base }, &tables, 64)?;
    let same = one.paths.iter().zip(&four.paths).all(|(p, q)| p.values == q.values && p.tau == q.tau);
    println!("64 paths with 1 and 4 workers identical: {same}");
    Ok(())
}
