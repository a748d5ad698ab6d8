use crate::error::{Error, Result};

/// Upper bound accepted by [`sieve`].
pub const MAX_SIEVE_LIMIT: u64 = 1 << 40;

const SEGMENT_ODDS: usize = 1 << 18;

/// All primes up to `limit`, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub(crate) fn from_parts(limit: u64, primes: Vec<u64>) -> Self {
        PrimeTable { limit, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `pi(limit)`.
    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    /// Primes `<= bound` (a prefix of the table).
    pub fn up_to(&self, bound: f64) -> &[u64] {
        let end = self.primes.partition_point(|&p| (p as f64) <= bound);
        &self.primes[..end]
    }

    /// Fails with a capacity error unless the table covers `bound`.
    pub fn require(&self, bound: f64, what: &'static str) -> Result<()> {
        if (self.limit as f64) < bound.floor() {
            return Err(Error::Capacity {
                what,
                needed: bound,
                limit: self.limit as f64,
            });
        }
        Ok(())
    }

    /// Reads the table from the on-disk cache when `ZB_CACHE_DIR` is set,
    /// sieving and storing it otherwise.
    pub fn load_or_sieve(limit: u64) -> Result<PrimeTable> {
        match super::cache_path(limit) {
            Some(path) => {
                if let Some(table) = super::load_cached(&path, limit)? {
                    return Ok(table);
                }
                let table = sieve(limit)?;
                super::store_cached(&path, &table)?;
                Ok(table)
            }
            None => sieve(limit),
        }
    }
}

fn small_sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Segmented sieve of Eratosthenes over odd numbers.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::Capacity {
            what: "prime sieve",
            needed: limit as f64,
            limit: MAX_SIEVE_LIMIT as f64,
        });
    }
    if limit < 2 {
        return Ok(PrimeTable::from_parts(limit, Vec::new()));
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let base: Vec<u64> = small_sieve(root as usize)
        .into_iter()
        .filter(|&p| p > 2 && p * p <= limit)
        .collect();

    let estimate = if limit > 16 {
        (1.2 * limit as f64 / (limit as f64).ln()) as usize
    } else {
        8
    };
    let mut primes = Vec::with_capacity(estimate);
    primes.push(2);

    // Odd number 2i + 1 is at index i; index 0 (the number 1) is skipped.
    let max_index = (limit - 1) / 2;
    let mut seg = vec![false; SEGMENT_ODDS];
    let mut low = 1u64;
    while low <= max_index {
        let high = (low + SEGMENT_ODDS as u64 - 1).min(max_index);
        let len = (high - low + 1) as usize;
        seg[..len].fill(false);
        for &p in &base {
            // First odd multiple of p that is >= p^2 and inside the segment.
            let lo_num = 2 * low + 1;
            let mut start = p * p;
            if start < lo_num {
                let rem = lo_num % p;
                start = if rem == 0 { lo_num } else { lo_num + (p - rem) };
                if start % 2 == 0 {
                    start += p;
                }
            }
            let hi_num = 2 * high + 1;
            let mut m = start;
            while m <= hi_num {
                seg[((m - 1) / 2 - low) as usize] = true;
                m += 2 * p;
            }
        }
        for (k, &c) in seg[..len].iter().enumerate() {
            if !c {
                primes.push(2 * (low + k as u64) + 1);
            }
        }
        low = high + 1;
    }
    Ok(PrimeTable::from_parts(limit, primes))
}

/// `Lambda(n)`: `log p` when `n = p^k` with `k >= 1`, zero otherwise.
pub fn von_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let p = smallest_factor(n);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    if m == 1 {
        (p as f64).ln()
    } else {
        0.0
    }
}

fn smallest_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}
