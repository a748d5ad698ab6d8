//! Arithmetic substrate: primes, the von Mangoldt function and Selberg's
//! mollified weights `Lambda_x`.

mod cache;
mod mollifier;
mod sieve;

pub use cache::{cache_path, load_cached, store_cached, CACHE_ENV, CACHE_VERSION};
pub use mollifier::{
    branch_factors, build_mollifier, lambda_x, mollifier_factor, MollifierNorm, MollifierTable,
};
pub use sieve::{sieve, von_mangoldt, PrimeTable, MAX_SIEVE_LIMIT};
