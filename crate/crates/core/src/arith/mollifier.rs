use super::sieve::{sieve, von_mangoldt, MAX_SIEVE_LIMIT};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Denominator used in the two mollified branches of `Lambda_x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MollifierNorm {
    /// `2 log^2 x`: continuous at `x` and `x^2`, vanishing at `x^3`.
    #[default]
    Selberg,
    /// `log^2 n`, as printed in some statements of the decomposition.
    /// Jumps from `Lambda(n)` to `2 Lambda(n)` at `n = x`.
    LogSquaredN,
}

/// The three branch formulas of `Lambda_x(n) / Lambda(n)` evaluated at `n`
/// regardless of which range `n` falls in: `[n <= x, x <= n <= x^2, x^2 <= n <= x^3]`.
pub fn branch_factors(n: f64, x: f64, norm: MollifierNorm) -> [f64; 3] {
    let lx = x.ln();
    let ln = n.ln();
    let denom = match norm {
        MollifierNorm::Selberg => 2.0 * lx * lx,
        MollifierNorm::LogSquaredN => ln * ln,
    };
    let a = 3.0 * lx - ln; // log(x^3 / n)
    let b = 2.0 * lx - ln; // log(x^2 / n)
    [1.0, (a * a - 2.0 * b * b) / denom, a * a / denom]
}

/// `Lambda_x(n) / Lambda(n)` for a real argument `n >= 1`.
pub fn mollifier_factor(n: f64, x: f64, norm: MollifierNorm) -> f64 {
    let x2 = x * x;
    let x3 = x2 * x;
    if n <= x {
        1.0
    } else if n > x3 {
        0.0
    } else {
        let f = branch_factors(n, x, norm);
        if n <= x2 {
            f[1]
        } else {
            f[2]
        }
    }
}

/// Selberg's mollified von Mangoldt weight `Lambda_x(n)`.
pub fn lambda_x(n: u64, x: f64, norm: MollifierNorm) -> f64 {
    assert!(x > 1.0, "lambda_x needs x > 1, got {x}");
    let lam = von_mangoldt(n);
    if lam == 0.0 {
        return 0.0;
    }
    lam * mollifier_factor(n as f64, x, norm)
}

/// Prime powers `n <= x^3` with positive weight `Lambda_x(n)`, ascending in `n`.
#[derive(Clone, Debug)]
pub struct MollifierTable {
    x: f64,
    norm: MollifierNorm,
    n: Vec<u64>,
    weight: Vec<f64>,
}

impl MollifierTable {
    /// Table with explicit entries; zero weights are dropped and entries sorted.
    pub fn from_entries(x: f64, norm: MollifierNorm, entries: Vec<(u64, f64)>) -> Self {
        let mut entries: Vec<(u64, f64)> = entries.into_iter().filter(|e| e.1 > 0.0).collect();
        entries.sort_unstable_by_key(|e| e.0);
        let (n, weight) = entries.into_iter().unzip();
        MollifierTable { x, norm, n, weight }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn norm(&self) -> MollifierNorm {
        self.norm
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = (u64, f64)> + '_ {
        self.n.iter().copied().zip(self.weight.iter().copied())
    }

    pub fn ns(&self) -> &[u64] {
        &self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weight
    }

    pub fn total_weight(&self) -> f64 {
        self.weight.iter().sum()
    }
}

/// All prime powers `n <= x^3` with their weights `Lambda_x(n)`.
pub fn build_mollifier(x: f64, norm: MollifierNorm) -> Result<MollifierTable> {
    if x.partial_cmp(&1.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::domain(format!("mollifier cutoff x must exceed 1, got {x}")));
    }
    let x3 = x * x * x;
    if x3 > MAX_SIEVE_LIMIT as f64 {
        return Err(Error::Capacity {
            what: "mollifier support x^3",
            needed: x3,
            limit: MAX_SIEVE_LIMIT as f64,
        });
    }
    let bound = x3.floor() as u64;
    let table = sieve(bound)?;
    let mut entries = Vec::with_capacity(table.prime_count() + table.prime_count() / 8);
    for &p in table.primes() {
        let lp = (p as f64).ln();
        let mut q = p;
        loop {
            let w = lp * mollifier_factor(q as f64, x, norm);
            if w > 0.0 {
                entries.push((q, w));
            }
            match q.checked_mul(p) {
                Some(next) if next <= bound => q = next,
                _ => break,
            }
        }
    }
    Ok(MollifierTable::from_entries(x, norm, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_weight_below_x() {
        for p in [2u64, 3, 5, 7] {
            assert_eq!(lambda_x(p, 7.5, MollifierNorm::Selberg), (p as f64).ln());
        }
        assert_eq!(lambda_x(4, 7.5, MollifierNorm::Selberg), 2f64.ln());
        assert_eq!(lambda_x(6, 7.5, MollifierNorm::Selberg), 0.0);
    }

    #[test]
    fn vanishes_beyond_cube() {
        assert_eq!(lambda_x(29, 3.0, MollifierNorm::Selberg), 0.0);
        assert_eq!(lambda_x(1_000_003, 10.0, MollifierNorm::Selberg), 0.0);
        // n = x^3 exactly sits on the zero of the outer branch.
        assert_eq!(lambda_x(27, 3.0, MollifierNorm::Selberg), 0.0);
    }

    #[test]
    fn branches_meet_at_x_squared() {
        for &x in &[3.0f64, 7.0, 10.0, 31.0] {
            let f = branch_factors(x * x, x, MollifierNorm::Selberg);
            assert!((f[1] - 0.5).abs() < 1e-12);
            assert!((f[2] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn continuity_and_literal_jump() {
        for x in [10.0f64, 50.0, 1000.0] {
            let s = branch_factors(x, x, MollifierNorm::Selberg);
            assert!((s[0] - s[1]).abs() < 1e-12);
            let s2 = branch_factors(x * x, x, MollifierNorm::Selberg);
            assert!((s2[1] - s2[2]).abs() < 1e-12);
            assert!(branch_factors(x * x * x, x, MollifierNorm::Selberg)[2].abs() < 1e-12);
            let l = branch_factors(x, x, MollifierNorm::LogSquaredN);
            assert!((l[1] - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn envelope_exhaustive_scan() {
        for xi in 3..=100u32 {
            let x = xi as f64 + 0.37;
            let bound = (x * x * x) as u64 + 2;
            for n in 2..bound.min(20_000) {
                let lam = von_mangoldt(n);
                let w = lambda_x(n, x, MollifierNorm::Selberg);
                assert!(w >= 0.0 && w <= lam * (1.0 + 1e-12), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn table_for_x_three_matches_enumeration() {
        let t = build_mollifier(3.0, MollifierNorm::Selberg).unwrap();
        let expected: Vec<u64> = vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25];
        assert_eq!(t.ns(), &expected[..]);
        for (n, w) in t.entries() {
            let direct = lambda_x(n, 3.0, MollifierNorm::Selberg);
            assert!((w - direct).abs() < 1e-15);
            if n <= 3 {
                assert_eq!(w, von_mangoldt(n));
            }
        }
        let chebyshev: f64 = (2..=27u64).map(von_mangoldt).sum();
        assert!(t.total_weight() <= chebyshev);
    }

    #[test]
    fn largest_entry_respects_tail_bound() {
        let x = 12.0f64;
        let t = build_mollifier(x, MollifierNorm::Selberg).unwrap();
        let (n, w) = t.entries().last().unwrap();
        let lx = x.ln();
        let bound = von_mangoldt(n) * (3.0 * lx - (n as f64).ln()).powi(2) / (2.0 * lx * lx);
        assert!(w <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn rejects_bad_cutoff() {
        assert!(build_mollifier(1.0, MollifierNorm::Selberg).is_err());
        assert!(matches!(
            build_mollifier(1.0e5, MollifierNorm::Selberg),
            Err(Error::Capacity { .. })
        ));
    }
}
