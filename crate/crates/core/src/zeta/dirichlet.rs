use super::log::{log_zeta_horizontal, zeta_log_deriv, DEFAULT_STEP};
use crate::arith::{MollifierTable, PrimeTable};
use crate::error::{Error, Result};
use crate::phasor::unit_phasor;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which Dirichlet polynomial stands in for `log zeta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirichletModel {
    /// `sum_{p <= P} p^-s`.
    PrimeSum,
    /// `sum_{n <= x^3} Lambda_x(n) / (n^s log n)`.
    SelbergMollified,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletModelConfig {
    pub model: DirichletModel,
    /// `P = T` for the prime sum, `x^3` for the mollified sum.
    pub cutoff: f64,
}

impl DirichletModelConfig {
    pub fn new(model: DirichletModel, cutoff: f64) -> Result<Self> {
        if !(cutoff >= 2.0) {
            return Err(Error::domain(format!("model cutoff must be >= 2, got {cutoff}")));
        }
        Ok(DirichletModelConfig { model, cutoff })
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.sum.re, &mut self.comp.re, z.re);
        neumaier(&mut self.sum.im, &mut self.comp.im, z.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// `sum_{p <= cutoff} p^{-sigma - i t}`, ascending in `p`, compensated.
pub fn dirichlet_prime_sum(sigma: f64, t: f64, cutoff: f64, table: &PrimeTable) -> Result<Complex64> {
    table.require(cutoff, "prime sum cutoff")?;
    let mut acc = CompensatedSum::default();
    for &p in table.up_to(cutoff) {
        let l = (p as f64).ln();
        acc.add(unit_phasor(t, l) * (-sigma * l).exp());
    }
    Ok(acc.value())
}

/// `sum_{n <= x^3} Lambda_x(n) / (log n) n^{-sigma - i t}`.
pub fn selberg_log_sum(sigma: f64, t: f64, mollifier: &MollifierTable) -> Complex64 {
    let mut acc = CompensatedSum::default();
    for (n, w) in mollifier.entries() {
        let l = (n as f64).ln();
        acc.add(unit_phasor(t, l) * (w / l * (-sigma * l).exp()));
    }
    acc.value()
}

/// `sum_{n <= x^3} Lambda_x(n) n^{-sigma - i t}`.
pub fn selberg_sum(sigma: f64, t: f64, mollifier: &MollifierTable) -> Complex64 {
    let mut acc = CompensatedSum::default();
    for (n, w) in mollifier.entries() {
        let l = (n as f64).ln();
        acc.add(unit_phasor(t, l) * (w * (-sigma * l).exp()));
    }
    acc.value()
}

/// Which level the residual of Selberg's decomposition is taken at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualForm {
    /// `log zeta(s) - sum Lambda_x(n) / (n^s log n)`.
    LogForm,
    /// `zeta'/zeta(s) + sum Lambda_x(n) / n^s`.
    LogDerivForm,
}

/// The residual `e_x` of the mollified approximation at `sigma + i t`.
pub fn ex_residual(sigma: f64, t: f64, mollifier: &MollifierTable, form: ResidualForm) -> Result<Complex64> {
    if !(sigma > 0.5) {
        return Err(Error::domain(format!("residual needs sigma > 1/2, got {sigma}")));
    }
    match form {
        ResidualForm::LogForm => {
            Ok(log_zeta_horizontal(t, sigma, DEFAULT_STEP)? - selberg_log_sum(sigma, t, mollifier))
        }
        ResidualForm::LogDerivForm => Ok(zeta_log_deriv(sigma, t)? + selberg_sum(sigma, t, mollifier)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_mollifier, lambda_x, sieve, MollifierNorm};

    #[test]
    fn four_term_prime_sum() {
        let table = sieve(100).unwrap();
        let v = dirichlet_prime_sum(2.0, 0.0, 10.0, &table).unwrap();
        let expect = 0.25 + 1.0 / 9.0 + 1.0 / 25.0 + 1.0 / 49.0;
        assert!((v.re - expect).abs() < 1e-15 && v.im == 0.0);
        assert!((expect - 0.421_519_274_376_417).abs() < 1e-14);
        assert_eq!(dirichlet_prime_sum(2.0, 5.0, 1.0, &table).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn prime_sum_capacity() {
        let table = sieve(100).unwrap();
        assert!(matches!(
            dirichlet_prime_sum(1.0, 0.0, 1000.0, &table),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn prime_sum_reversed_order() {
        let table = sieve(1_000_000).unwrap();
        for &(sigma, t) in &[(0.5 + 1.0 / 13.8, 123_456.0), (0.9, 9.87e5), (0.6, 42.0)] {
            let v = dirichlet_prime_sum(sigma, t, 1e6, &table).unwrap();
            let mut naive = Complex64::new(0.0, 0.0);
            for &p in table.primes().iter().rev() {
                let l = (p as f64).ln();
                naive += unit_phasor(t, l) * (-sigma * l).exp();
            }
            assert!((v - naive).norm() <= 1e-9 * v.norm().max(1.0));
        }
    }

    #[test]
    fn selberg_sum_small_cases() {
        let m = build_mollifier(3.0, MollifierNorm::Selberg).unwrap();
        let v = selberg_log_sum(1.0, 0.0, &m);
        let brute: f64 = (2..=27u64)
            .map(|n| {
                let w = lambda_x(n, 3.0, MollifierNorm::Selberg);
                if w == 0.0 {
                    0.0
                } else {
                    w / (n as f64).ln() / n as f64
                }
            })
            .sum();
        assert!((v.re - brute).abs() < 1e-14 && v.im == 0.0 && v.re > 0.0);

        let single = MollifierTable::from_entries(3.0, MollifierNorm::Selberg, vec![(2, 2f64.ln())]);
        for &(sigma, t) in &[(0.7, 3.0), (2.0, 100.0)] {
            let v = selberg_log_sum(sigma, t, &single);
            let expect = unit_phasor(t, 2f64.ln()) * 2f64.powf(-sigma);
            assert!((v - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn selberg_sum_decays_with_sigma() {
        let m = build_mollifier(5.0, MollifierNorm::Selberg).unwrap();
        let bound = |sigma: f64| -> f64 {
            m.entries()
                .map(|(n, w)| w / (n as f64).ln() * (n as f64).powf(-sigma))
                .sum()
        };
        let mut prev = f64::INFINITY;
        for sigma in [1.0, 2.0, 4.0, 8.0, 16.0] {
            let b = bound(sigma);
            assert!(selberg_log_sum(sigma, 17.0, &m).norm() <= b + 1e-15);
            assert!(b < prev);
            prev = b;
        }
    }

    #[test]
    fn residual_far_right() {
        let m = build_mollifier(10.0, MollifierNorm::Selberg).unwrap();
        for &t in &[20.0, 500.0] {
            let e = ex_residual(10.0, t, &m, ResidualForm::LogForm).unwrap();
            assert!(e.norm() < 1e-3);
        }
        // x^3 = 10^4.5 > 10^4 covers every term of size above 1e-20 at sigma = 5.
        let m = build_mollifier(31.0, MollifierNorm::Selberg).unwrap();
        for &t in &[20.0, 500.0] {
            let e = ex_residual(5.0, t, &m, ResidualForm::LogDerivForm).unwrap();
            assert!(e.norm() < 1e-4, "{e}");
        }
    }

    #[test]
    fn model_config_validation() {
        assert!(DirichletModelConfig::new(DirichletModel::PrimeSum, 1.0).is_err());
        assert!(DirichletModelConfig::new(DirichletModel::PrimeSum, 2.0).is_ok());
    }
}
