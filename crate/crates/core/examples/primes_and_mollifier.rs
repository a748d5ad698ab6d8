//! Prime table, von Mangoldt weights and the mollified weights `Lambda_x`.
//!
//! Set `ZB_CACHE_DIR` to keep the sieve on disk between runs.

use zeta_brownian::arith::{branch_factors, build_mollifier, lambda_x, von_mangoldt, MollifierNorm, PrimeTable};

fn main() -> zeta_brownian::Result<()> {
    let table = PrimeTable::load_or_sieve(10_000_000)?;
    println!("pi(1e7) = {}", table.prime_count());
    println!("pi(1e6) = {}", table.up_to(1e6).len());
    println!("last primes: {:?}", &table.primes()[table.prime_count() - 3..]);

    for n in [8u64, 12, 49, 97] {
        println!("Lambda({n}) = {:.6}", von_mangoldt(n));
    }

    let x = 10.0;
    println!("\nLambda_x(n) / Lambda(n) at x = {x}:");
    for n in [2u64, 7, 11, 37, 101, 211, 997] {
        let l = von_mangoldt(n);
        println!(
            "  n = {n:>4}: selberg {:.5}  log^2 n denominator {:.5}",
            lambda_x(n, x, MollifierNorm::Selberg) / l,
            lambda_x(n, x, MollifierNorm::LogSquaredN) / l
        );
    }

    // the three branches agree at x and x^2 only with the 2 log^2 x denominator
    for norm in [MollifierNorm::Selberg, MollifierNorm::LogSquaredN] {
        let at_x = branch_factors(x, x, norm);
        let at_x2 = branch_factors(x * x, x, norm);
        println!("{norm:?}: jump at x = {:.3e}, at x^2 = {:.3e}", at_x[1] - at_x[0], at_x2[2] - at_x2[1]);
    }

    let m = build_mollifier(1e6f64.powf(0.05), MollifierNorm::Selberg)?;
    println!("\nmollifier for T = 1e6: x = {:.4}, {} prime powers, total weight {:.4}", m.x(), m.len(), m.total_weight());
    Ok(())
}
