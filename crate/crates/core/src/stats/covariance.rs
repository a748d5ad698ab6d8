use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Sample covariance matrix `E[conj(X_i) X_j] - conj(E X_i) E X_j` with
/// leave-one-out jackknife standard errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovarianceEstimate {
    pub alphas: Vec<f64>,
    pub matrix: Vec<Vec<Complex64>>,
    pub n_samples: usize,
    pub standard_errors: Vec<Vec<f64>>,
}

impl CovarianceEstimate {
    /// Largest `|C_ij - target(alpha_i, alpha_j)|`.
    pub fn max_deviation(&self, target: impl Fn(f64, f64) -> f64) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, &a) in self.alphas.iter().enumerate() {
            for (j, &b) in self.alphas.iter().enumerate() {
                worst = worst.max((self.matrix[i][j] - Complex64::new(target(a, b), 0.0)).norm());
            }
        }
        worst
    }
}

/// Covariance of the vectors in `samples`, entry `k` of each belonging to `alphas[k]`.
pub fn complex_covariance(samples: &[Vec<Complex64>], alphas: &[f64]) -> Result<CovarianceEstimate> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::domain("covariance needs at least 2 samples"));
    }
    let d = alphas.len();
    if samples.iter().any(|s| s.len() != d) {
        return Err(Error::domain("sample vectors must match the alpha list in length"));
    }
    let nf = n as f64;
    // Shift by the first sample so constant coordinates centre to exact zeros.
    let origin = &samples[0];
    let mut mean = vec![Complex64::new(0.0, 0.0); d];
    for s in samples {
        for ((m, x), o) in mean.iter_mut().zip(s).zip(origin) {
            *m += x - o;
        }
    }
    for m in &mut mean {
        *m /= nf;
    }
    let centred: Vec<Vec<Complex64>> = samples
        .iter()
        .map(|s| s.iter().zip(origin).zip(&mean).map(|((x, o), m)| (x - o) - m).collect())
        .collect();
    let zero = Complex64::new(0.0, 0.0);
    let mut c = vec![vec![zero; d]; d];
    for r in &centred {
        for i in 0..d {
            for j in i..d {
                c[i][j] += r[i].conj() * r[j];
            }
        }
    }
    for i in 0..d {
        for j in i..d {
            c[i][j] /= nf;
        }
        c[i][i].im = 0.0;
        for j in 0..i {
            c[i][j] = c[j][i].conj();
        }
    }
    // Leave-one-out: C_(-k) = (n C - n/(n-1) conj(D_k) D_k^T) / (n - 1).
    let mut se = vec![vec![0.0; d]; d];
    let mut jk_mean = vec![vec![zero; d]; d];
    let loo = |r: &[Complex64], i: usize, j: usize| (c[i][j] * nf - r[i].conj() * r[j] * (nf / (nf - 1.0))) / (nf - 1.0);
    for r in &centred {
        for i in 0..d {
            for j in 0..d {
                jk_mean[i][j] += loo(r, i, j);
            }
        }
    }
    for row in &mut jk_mean {
        for v in row.iter_mut() {
            *v /= nf;
        }
    }
    for r in &centred {
        for i in 0..d {
            for j in 0..d {
                se[i][j] += (loo(r, i, j) - jk_mean[i][j]).norm_sqr();
            }
        }
    }
    for row in &mut se {
        for v in row.iter_mut() {
            *v = (*v * (nf - 1.0) / nf).sqrt();
        }
    }
    Ok(CovarianceEstimate {
        alphas: alphas.to_vec(),
        matrix: c,
        n_samples: n,
        standard_errors: se,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::simulate_bm;
    use crate::rng::task_rng;
    use rand::Rng;
    use rand_distr::StandardNormal;

    #[test]
    fn constant_vectors_have_zero_covariance() {
        let v = vec![Complex64::new(1.5, -2.0), Complex64::new(0.1, 0.0)];
        let c = complex_covariance(&[v.clone(), v.clone(), v], &[0.1, 0.2]).unwrap();
        assert!(c.matrix.iter().flatten().all(|z| *z == Complex64::new(0.0, 0.0)));
        assert!(complex_covariance(&[vec![Complex64::new(0.0, 0.0)]], &[0.0]).is_err());
    }

    #[test]
    fn brownian_covariance_is_min() {
        let g = vec![0.0, 0.3, 0.7];
        let samples: Vec<Vec<Complex64>> = (0..4000).map(|i| simulate_bm(&g, 13, i).unwrap().values[1..].to_vec()).collect();
        let c = complex_covariance(&samples, &[0.3, 0.7]).unwrap();
        assert!((c.matrix[0][1] - Complex64::new(0.3, 0.0)).norm() <= 3.0 * c.standard_errors[0][1]);
        for i in 0..2 {
            for j in 0..2 {
                assert!((c.matrix[i][j] - c.matrix[j][i].conj()).norm() <= 1e-12);
            }
            assert!(c.matrix[i][i].re >= 0.0 && c.matrix[i][i].im == 0.0);
        }
    }

    #[test]
    fn synthetic_real_gaussian() {
        // X = (g1, 0.6 g1 + 0.8 g2): covariance [[1, 0.6], [0.6, 1]].
        let mut rng = task_rng(14, 0);
        let samples: Vec<Vec<Complex64>> = (0..5000)
            .map(|_| {
                let a: f64 = rng.sample(StandardNormal);
                let b: f64 = rng.sample(StandardNormal);
                vec![Complex64::new(a, 0.0), Complex64::new(0.6 * a + 0.8 * b, 0.0)]
            })
            .collect();
        let c = complex_covariance(&samples, &[0.0, 1.0]).unwrap();
        let want = [[1.0, 0.6], [0.6, 1.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((c.matrix[i][j].re - want[i][j]).abs() <= 3.0 * c.standard_errors[i][j]);
            }
        }
    }

    #[test]
    fn jackknife_matches_explicit_leave_one_out() {
        let mut rng = task_rng(15, 0);
        let samples: Vec<Vec<Complex64>> = (0..12)
            .map(|_| (0..3).map(|_| Complex64::new(rng.random(), rng.random())).collect())
            .collect();
        let al = [0.1, 0.2, 0.3];
        let full = complex_covariance(&samples, &al).unwrap();
        let loo: Vec<CovarianceEstimate> = (0..12)
            .map(|k| {
                let rest: Vec<_> = samples.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, s)| s.clone()).collect();
                complex_covariance(&rest, &al).unwrap()
            })
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                let m: Complex64 = loo.iter().map(|c| c.matrix[i][j]).sum::<Complex64>() / 12.0;
                let v: f64 = loo.iter().map(|c| (c.matrix[i][j] - m).norm_sqr()).sum::<f64>() * 11.0 / 12.0;
                assert!((v.sqrt() - full.standard_errors[i][j]).abs() < 1e-12);
            }
        }
    }
}
