use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Sorted sample; the carrier of every distributional comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    samples: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::domain("empirical distribution needs at least one sample"));
        }
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::domain("NaN in sample"));
        }
        samples.sort_by(f64::total_cmp);
        Ok(EmpiricalDistribution { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn n(&self) -> usize {
        self.samples.len()
    }

    /// `#{x_i <= x} / n`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.samples.partition_point(|&s| s <= x) as f64 / self.n() as f64
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.n() as f64
    }

    /// Fraction of samples satisfying `pred`.
    pub fn fraction(&self, pred: impl Fn(f64) -> bool) -> f64 {
        self.samples.iter().filter(|&&x| pred(x)).count() as f64 / self.n() as f64
    }
}

/// `sup_x |F_n(x) - F(x)|`, checking both sides of every jump of `F_n`.
pub fn ks_one_sample(dist: &EmpiricalDistribution, cdf: impl Fn(f64) -> f64) -> f64 {
    let s = dist.samples();
    let n = s.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < s.len() {
        let mut j = i;
        while j + 1 < s.len() && s[j + 1] == s[i] {
            j += 1;
        }
        let f = cdf(s[i]);
        let below = i as f64 / n;
        let above = (j + 1) as f64 / n;
        d = d.max((above - f).abs()).max((f - below).abs());
        i = j + 1;
    }
    d
}

/// `sup_x |F_a(x) - F_b(x)|` by a merged scan.
pub fn ks_two_sample(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
    let (xa, xb) = (a.samples(), b.samples());
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let x = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::task_rng;
    use rand::Rng;

    fn ed(v: &[f64]) -> EmpiricalDistribution {
        EmpiricalDistribution::new(v.to_vec()).unwrap()
    }

    fn brute(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> f64 {
        a.samples()
            .iter()
            .chain(b.samples())
            .map(|&x| (a.cdf(x) - b.cdf(x)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn one_sample_examples() {
        assert!((ks_one_sample(&ed(&[0.0]), |_| 0.3) - 0.7).abs() < 1e-15);
        let d = ed(&[1.0, 2.0, 3.0, 4.0]);
        let step = |x: f64| d.cdf(x);
        // the ECDF itself: both sides of every jump coincide with one side
        let v = ks_one_sample(&d, step);
        assert!(v <= 0.25 + 1e-15);
        assert!(EmpiricalDistribution::new(vec![]).is_err());
    }

    #[test]
    fn one_sample_uniform_calibration() {
        let mut rng = task_rng(21, 0);
        let d = ed(&(0..10_000).map(|_| rng.random::<f64>()).collect::<Vec<_>>());
        assert!(ks_one_sample(&d, |x| x.clamp(0.0, 1.0)) <= 0.0136 * 1.5);
    }

    #[test]
    fn two_sample_examples() {
        let a = ed(&[0.3, 0.1, 0.7]);
        assert_eq!(ks_two_sample(&a, &a), 0.0);
        assert_eq!(ks_two_sample(&ed(&[0.0]), &ed(&[1.0])), 1.0);
    }

    #[test]
    fn two_sample_matches_brute_force_and_is_a_metric() {
        let mut rng = task_rng(22, 0);
        for _ in 0..200 {
            let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
                let n = rng.random_range(1..=100);
                // coarse values force ties
                ed(&(0..n).map(|_| (rng.random::<f64>() * 20.0).floor()).collect::<Vec<_>>())
            };
            let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            let ab = ks_two_sample(&a, &b);
            assert!((ab - brute(&a, &b)).abs() < 1e-15);
            assert_eq!(ab, ks_two_sample(&b, &a));
            assert!(ab <= ks_two_sample(&a, &c) + ks_two_sample(&c, &b) + 1e-15);
        }
    }
}
