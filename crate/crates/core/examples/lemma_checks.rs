//! Numeric checks of the moment and mean-value inequalities.
//!
//! Run with `cargo run --release --example lemma_checks`.

use zeta_brownian::arith::{build_mollifier, MollifierNorm, PrimeTable};
use zeta_brownian::rng::task_rng;
use zeta_brownian::stats::*;
use zeta_brownian::zeta::ResidualForm;
use zeta_brownian::Complex64;
use rand::Rng;

fn main() -> zeta_brownian::Result<()> {
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    for &t in &[1e6f64, 1e8, 1e10] {
        let x = t.powf(0.05);
        let table = PrimeTable::load_or_sieve(x.powi(3).ceil() as u64)?;
        let mut worst: f64 = 0.0;
        for &a in &grid {
            for &b in grid.iter().filter(|&&b| b >= a) {
                worst = worst.max(lemma33_check(a, b, x, t, &table)?.abs());
            }
        }
        println!("prime sum increments, T = {t:e}: max |ratio| = {worst:.4}");
    }

    let mut rng = task_rng(5, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let k = rng.random_range(1..40);
        let mut lambdas: Vec<f64> = (0..k).map(|_| rng.random::<f64>() * 50.0).collect();
        lambdas.sort_by(f64::total_cmp);
        lambdas.dedup();
        let a: Vec<Complex64> = lambdas.iter().map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
        worst = worst.max(mv_mean_value_check(&lambdas, &a, 1000.0)?.normalized_error);
    }
    println!("mean value: worst |numeric - main| delta / mass over 100 cases = {worst:.3}");

    let t = 1e6f64;
    let x = t.powf(0.05);
    let m = build_mollifier(x, MollifierNorm::Selberg)?;
    for &(a, b) in &[(0.0, 0.5), (0.25, 0.75), (0.5, 1.0), (0.9, 1.0)] {
        let w = increment_weights(a, b, t, &m)?;
        let r = fourth_moment_check(&w, x, t, 2000, 17)?;
        println!("fourth moment (a, b) = ({a}, {b}): estimate {:.3e}, bound {:.3e}, ratio {:.3}", r.moment_estimate, r.bound, r.ratio);
    }

    let table = PrimeTable::load_or_sieve(100_000_000)?;
    let r = lemma22_hypotheses_check(&[0.25, 0.5, 0.75, 1.0], 1e8, &table)?;
    println!("CLT hypotheses at T = 1e8: sup a = {:.4} at p = {}, sum a^2 = {:.4}, tail fraction past m_T = {:.0}: {:.3}", r.sup_a, r.sup_attained_at, r.sum_sq, r.m_t, r.tail_fraction);
    for p in &r.pairs {
        println!("  ({}, {}): covariance {:.3}, ratio {:?}", p.alpha_i, p.alpha_j, p.covariance, p.ratio.map(|v| (v * 1000.0).round() / 1000.0));
    }
    for alphas in [&[0.25, 0.5][..], &[1.0][..]] {
        let r = lemma22_hypotheses_check(alphas, 1e8, &table)?;
        println!("  tail fraction for alphas {alphas:?}: {:.3}", r.tail_fraction);
    }

    let mut rng = task_rng(6, 0);
    let heights: Vec<f64> = (0..50).map(|_| 1e4 + 1e4 * rng.random::<f64>()).collect();
    for form in [ResidualForm::LogForm, ResidualForm::LogDerivForm] {
        let r = ex_decay_check(1.0, &[10.0, 100.0, 1000.0], &heights, form, MollifierNorm::Selberg)?;
        println!("e_x decay {form:?}: mean |e_x| = {:?}, slope {:.3}", r.mean_abs, r.slope);
    }
    Ok(())
}
