//! Euler-Maclaurin evaluation of `zeta(s)` and `zeta'(s)`.
//!
//! `zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
//!          + sum_{k=1}^{m} B_2k/(2k)! s(s+1)...(s+2k-2) N^(1-s-2k) + R`,
//! with `m = 12` correction terms and `N` grown from
//! `max(20, 1.3 t / 2pi + 20)` until the first omitted term is below `tol`.

use crate::error::{Error, Result};
use crate::phasor::unit_phasor;
use crate::spectral::{BinLayout, Spectrum};
use num_complex::Complex64;

/// Bernoulli correction terms kept.
pub const CORRECTION_TERMS: usize = 12;

// B_2k / (2k)! for k = 1..=13; the last entry only feeds the remainder estimate.
const BERNOULLI_RATIO: [f64; CORRECTION_TERMS + 1] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394e23,
    8_553_103.0 / 6.0 / 4.032_914_611_266_056_3e26,
];

const MAX_TRUNCATION: f64 = 4.0e9;

fn initial_truncation(t: f64) -> f64 {
    (1.3 * t.abs() / std::f64::consts::TAU).ceil().max(0.0) + 20.0
}

/// Tail of the Euler-Maclaurin formula at truncation `n_trunc`, together with
/// its `s`-derivative and the magnitude of the first omitted correction.
struct Tail {
    value: Complex64,
    deriv: Complex64,
    remainder: f64,
}

fn tail(s: Complex64, n_trunc: f64) -> Tail {
    let ln_n = n_trunc.ln();
    let n_pow_ms = unit_phasor(s.im, ln_n) * (-s.re * ln_n).exp(); // N^-s
    let one = Complex64::new(1.0, 0.0);
    let sm1 = s - one;
    let head = n_pow_ms * n_trunc / sm1; // N^(1-s)/(s-1)
    let mut value = head + n_pow_ms * 0.5;
    let mut deriv = -head * ln_n - head / sm1 - n_pow_ms * (0.5 * ln_n);

    // P_k(s) = s(s+1)...(s+2k-2); power = N^(1-s-2k).
    let mut p = s;
    let mut dp = one;
    let inv_n2 = 1.0 / (n_trunc * n_trunc);
    let mut power = n_pow_ms / n_trunc; // N^(-s-1) = N^(1-s-2)
    let mut remainder = 0.0;
    for (k, &c) in BERNOULLI_RATIO.iter().enumerate() {
        let term = p * power * c;
        if k == CORRECTION_TERMS {
            let j = (2 * k + 1) as f64; // bound factor |s + 2m + 1| / (sigma + 2m + 1)
            remainder = term.norm() * (s + j).norm() / (s.re + j).max(1e-3);
            break;
        }
        value += term;
        deriv += (dp - p * ln_n) * power * c;
        let a = s + (2 * k + 1) as f64;
        let b = s + (2 * k + 2) as f64;
        let q = a * b;
        dp = dp * q + p * (a + b);
        p *= q;
        power *= inv_n2;
    }
    Tail {
        value,
        deriv,
        remainder,
    }
}

/// Rough rounding floor of the partial sum `sum_{n<N} n^-s`: accumulated
/// rounding plus the phase error of `t log n` in double precision.
fn rounding_floor(sigma: f64, t: f64, n_trunc: f64) -> f64 {
    let mass = |a: f64| -> f64 {
        if (a - 1.0).abs() < 1e-9 {
            1.0 + n_trunc.ln()
        } else {
            1.0 + (n_trunc.powf(1.0 - a) - 1.0) / (1.0 - a)
        }
    };
    let eps = f64::EPSILON;
    eps * (8.0 * mass(sigma).max(1.0) + t.abs() * n_trunc.ln() * mass(2.0 * sigma).max(1.0).sqrt())
}

fn check_domain(sigma: f64, t: f64) -> Result<()> {
    if !(sigma > -1.0) || !t.is_finite() {
        return Err(Error::domain(format!("zeta needs sigma > -1, got {sigma}")));
    }
    if sigma == 1.0 && t == 0.0 {
        return Err(Error::domain("pole of zeta at s = 1"));
    }
    Ok(())
}

/// Truncation point meeting `tol` at `sigma + i t` (estimate of the first omitted term).
fn choose_truncation(sigma: f64, t: f64, tol: f64) -> Result<f64> {
    let mut n = initial_truncation(t).max(20.0);
    let s = Complex64::new(sigma, t.abs());
    loop {
        let rem = tail(s, n).remainder;
        if rem <= tol {
            break;
        }
        n = (n * 1.25).ceil();
        if n > MAX_TRUNCATION {
            return Err(Error::Capacity {
                what: "Euler-Maclaurin truncation",
                needed: n,
                limit: MAX_TRUNCATION,
            });
        }
    }
    let floor = rounding_floor(sigma, t, n);
    if tol < floor {
        return Err(Error::Precision { tol, floor });
    }
    Ok(n)
}

fn direct_sum(sigma: f64, t: f64, n_trunc: u64, with_deriv: bool) -> (Complex64, Complex64) {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    for n in 1..n_trunc {
        let l = (n as f64).ln();
        let term = unit_phasor(t, l) * (-sigma * l).exp();
        sum += term;
        if with_deriv {
            dsum -= term * l;
        }
    }
    (sum, dsum)
}

fn evaluate(sigma: f64, t: f64, tol: f64, with_deriv: bool) -> Result<(Complex64, Complex64)> {
    check_domain(sigma, t)?;
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let ta = t.abs();
    let n = choose_truncation(sigma, ta, tol)?;
    let (sum, dsum) = direct_sum(sigma, ta, n as u64, with_deriv);
    let tl = tail(Complex64::new(sigma, ta), n);
    let (mut z, mut dz) = (sum + tl.value, dsum + tl.deriv);
    if t < 0.0 {
        z = z.conj();
        dz = dz.conj();
    }
    Ok((z, dz))
}

/// `zeta(sigma + i t)` with absolute error at most `tol`.
pub fn zeta_em(sigma: f64, t: f64, tol: f64) -> Result<Complex64> {
    evaluate(sigma, t, tol, false).map(|r| r.0)
}

/// `(zeta, zeta')` at `sigma + i t`; the derivative carries roughly
/// `log N` times the value's error.
pub fn zeta_and_derivative(sigma: f64, t: f64, tol: f64) -> Result<(Complex64, Complex64)> {
    evaluate(sigma, t, tol, true)
}

/// `zeta(sigma + i t)` for many `sigma` at one height.
///
/// The partial sum `sum_{n<N} n^-s` is binned once (see [`crate::spectral`])
/// so each abscissa costs `O(bins)` instead of `O(N)`. Valid for
/// `sigma_lo <= sigma <= sigma_max`.
#[derive(Clone, Debug)]
pub struct ZetaLine {
    t: f64,
    sigma_lo: f64,
    n_trunc: f64,
    partial: Spectrum,
}

impl ZetaLine {
    pub fn new(t: f64, sigma_lo: f64, sigma_max: f64, tol: f64) -> Result<ZetaLine> {
        check_domain(sigma_lo, t)?;
        if t < 0.0 {
            return Err(Error::domain("ZetaLine expects t >= 0"));
        }
        let sigma_max = sigma_max.max(sigma_lo.abs()).max(1e-3);
        let n_trunc = choose_truncation(sigma_lo, t, tol)?;
        let n = n_trunc as u64;
        let layout = BinLayout::new(0.0, ((n - 1) as f64).ln().max(0.0), sigma_max);
        let partial = layout
            .accumulate((1..n).map(|k| ((k as f64).ln(), 1.0)), &[t])
            .pop()
            .expect("one spectrum per height");
        Ok(ZetaLine {
            t,
            sigma_lo,
            n_trunc,
            partial,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn truncation(&self) -> f64 {
        self.n_trunc
    }

    pub fn sigma_range(&self) -> (f64, f64) {
        (self.sigma_lo, self.partial.layout().sigma_max())
    }

    pub fn eval(&self, sigma: f64) -> Complex64 {
        debug_assert!(sigma >= self.sigma_lo - 1e-12);
        let s = Complex64::new(sigma, self.t);
        self.partial.eval(sigma) + tail(s, self.n_trunc).value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn classical_values() {
        let z2 = zeta_em(2.0, 0.0, 1e-13).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-12 && z2.im == 0.0);
        let z0 = zeta_em(0.0, 0.0, 1e-13).unwrap();
        assert!((z0.re + 0.5).abs() < 1e-12);
        let z4 = zeta_em(4.0, 0.0, 1e-13).unwrap();
        assert!((z4.re - PI.powi(4) / 90.0).abs() < 1e-12);
        let zm = zeta_em(-0.5, 0.0, 1e-12).unwrap();
        assert!((zm.re + 0.207_886_224_977_354_6).abs() < 1e-11);
    }

    #[test]
    fn first_zero() {
        let z = zeta_em(0.5, 14.134_725_141_734_695, 1e-12).unwrap();
        assert!(z.norm() < 1e-6, "{z}");
    }

    #[test]
    fn reference_values_off_axis() {
        // Reference values from a 30-digit evaluation.
        let z = zeta_em(0.5, 100.0, 1e-12).unwrap();
        assert!((z - Complex64::new(2.692_619_885_681_324, -0.020_386_029_602_598_16)).norm() < 1e-10);
        let z = zeta_em(2.0, 3.0, 1e-12).unwrap();
        assert!((z - Complex64::new(0.798_021_985_146_275_7, -0.113_744_308_052_938_5)).norm() < 1e-11);
    }

    #[test]
    fn pole_and_domain() {
        assert!(matches!(zeta_em(1.0, 0.0, 1e-10), Err(Error::Domain(_))));
        assert!(matches!(zeta_em(-1.5, 3.0, 1e-10), Err(Error::Domain(_))));
        assert!(matches!(zeta_em(0.5, 1e4, 1e-30), Err(Error::Precision { .. })));
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for &(sigma, t) in &[(2.0, 0.0), (0.7, 25.0), (1.3, 400.0)] {
            let (_, dz) = zeta_and_derivative(sigma, t, 1e-12).unwrap();
            let h = 1e-5;
            let zp = zeta_em(sigma + h, t, 1e-12).unwrap();
            let zm = zeta_em(sigma - h, t, 1e-12).unwrap();
            let fd = (zp - zm) / (2.0 * h);
            assert!((fd - dz).norm() < 1e-7 * (1.0 + dz.norm()), "{sigma} {t}");
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let a = zeta_em(0.8, 33.0, 1e-12).unwrap();
        let b = zeta_em(0.8, -33.0, 1e-12).unwrap();
        assert!((a - b.conj()).norm() < 1e-15);
    }

    #[test]
    fn line_agrees_with_direct_evaluation() {
        for &(t, tol) in &[(14.0, 1e-11), (2_000.0, 1e-11), (123_456.7, 2e-9)] {
            let line = ZetaLine::new(t, 0.5, 6.0, tol).unwrap();
            for &sigma in &[0.5, 0.51, 0.8, 1.0, 1.5, 3.0, 6.0] {
                let a = line.eval(sigma);
                let b = zeta_em(sigma, t, tol).unwrap();
                assert!((a - b).norm() < 4.0 * tol, "t={t} sigma={sigma} {a} {b}");
            }
        }
    }
}
