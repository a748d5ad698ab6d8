//! log det(I - e^{-r} U) for Haar unitaries, r = n^{-alpha}, as the
//! random-matrix counterpart of the horizontal process.

use zeta_brownian::process::alpha_grid;
use zeta_brownian::rmt::{rmt_path, sample_haar_unitary, Centering};
use zeta_brownian::stats::complex_covariance;

fn main() -> zeta_brownian::Result<()> {
    let n = 128;
    let s = sample_haar_unitary(n, 1, 0)?;
    let spacing = s.eigenangles.windows(2).map(|w| w[1] - w[0]).sum::<f64>() / (n - 1) as f64;
    println!("n = {n}: mean eigenangle spacing {spacing:.5} (2 pi / n = {:.5})", std::f64::consts::TAU / n as f64);

    let grid = alpha_grid(5, 1.0)?;
    let lit = rmt_path(&s, &grid, Centering::Literal)?;
    let cen = rmt_path(&s, &grid, Centering::Centred)?;
    for ((a, l), c) in grid.iter().zip(&lit.values).zip(&cen.values) {
        println!("  alpha = {a:.2}: literal {l:.4}, centred {c:.4}");
    }

    let alphas = [0.25, 0.5, 0.75, 1.0];
    let samples: Vec<_> = (0..500)
        .map(|i| Ok(rmt_path(&sample_haar_unitary(n, 2, i)?, &alphas, Centering::Literal)?.values))
        .collect::<zeta_brownian::Result<_>>()?;
    let c = complex_covariance(&samples, &alphas)?;
    println!("\ncovariance over 500 draws, max |C - min(a_i, a_j)| = {:.3}", c.max_deviation(|a, b| a.min(b)));
    Ok(())
}
