//! Haar-random unitary matrices and the characteristic-polynomial process
//! `alpha -> log det(exp(n^{-alpha}) I - U) / sqrt(log n)`.
//!
//! Eigenangles come from the Cayley transform: for unitary `U` without
//! eigenvalue `-1`, `H = i (I + U)^{-1} (I - U)` is Hermitian with
//! eigenvalues `tan(theta_j / 2)`. A Hermitian eigensolve is several times
//! cheaper than a general Schur decomposition at these sizes.

use crate::error::{Error, Result};
use crate::process::Trajectory;
use crate::rng::task_rng;
use faer::linalg::solvers::Solve;
use faer::{c64, Mat, Side};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Largest supported dimension.
pub const MAX_DIMENSION: usize = 4096;
/// Factors of modulus below this abort the path (resample).
pub const FACTOR_FLOOR: f64 = 1e-14;

// |tan(theta/2)| above this means an eigenvalue within ~2e-5 of -1; rotate.
const CAYLEY_LIMIT: f64 = 1e5;
const ROTATIONS: usize = 4;
const MAX_DRAWS: u32 = 32;
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;

/// Eigenangles of one Haar unitary, sorted ascending in `[0, 2 pi)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitarySample {
    pub n: usize,
    pub eigenangles: Vec<f64>,
    /// Draws discarded because the eigensolve failed.
    pub retries: u32,
}

impl UnitarySample {
    /// Sample built from given angles (reduced mod `2 pi` and sorted).
    pub fn from_angles(angles: &[f64]) -> UnitarySample {
        let mut eigenangles: Vec<f64> = angles.iter().map(|&a| wrap(a)).collect();
        eigenangles.sort_by(f64::total_cmp);
        UnitarySample {
            n: eigenangles.len(),
            eigenangles,
            retries: 0,
        }
    }

    /// Same spectrum turned by `c`.
    pub fn rotated(&self, c: f64) -> UnitarySample {
        let shifted: Vec<f64> = self.eigenangles.iter().map(|a| a + c).collect();
        UnitarySample {
            retries: self.retries,
            ..UnitarySample::from_angles(&shifted)
        }
    }
}

fn wrap(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Haar unitary: QR of a complex Ginibre matrix with `R`'s diagonal made
/// positive by moving its phases into `Q`.
pub fn haar_unitary_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mat<c64> {
    let z = Mat::<c64>::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = z.qr();
    let r = qr.R();
    let mut q = qr.compute_Q();
    for j in 0..n {
        let d = r[(j, j)];
        let m = d.norm();
        let phase = if m > 0.0 { d / m } else { c64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Eigenangles of a unitary matrix via the Cayley transform, or `None`
/// when every trial rotation leaves an eigenvalue too close to `-1` or the
/// Hermitian eigensolve fails.
pub fn unitary_eigenangles(u: &Mat<c64>) -> Option<Vec<f64>> {
    let n = u.nrows();
    let id = Mat::<c64>::identity(n, n);
    for k in 0..ROTATIONS {
        let phi = GOLDEN_ANGLE * k as f64;
        let rot = c64::new(phi.cos(), phi.sin());
        let ur = Mat::<c64>::from_fn(n, n, |i, j| u[(i, j)] * rot);
        let lu = (&id + &ur).partial_piv_lu();
        let x = lu.solve(&id - &ur);
        let h = Mat::<c64>::from_fn(n, n, |i, j| {
            // i * X, symmetrised
            let a = x[(i, j)];
            let b = x[(j, i)].conj();
            c64::new(0.0, 0.5) * (a - b)
        });
        let Ok(vals) = h.self_adjoint_eigenvalues(Side::Lower) else {
            continue;
        };
        if vals.iter().any(|v| !v.is_finite() || v.abs() > CAYLEY_LIMIT) {
            continue;
        }
        let mut angles: Vec<f64> = vals.iter().map(|&v| wrap(2.0 * v.atan() - phi)).collect();
        angles.sort_by(f64::total_cmp);
        return Some(angles);
    }
    None
}

/// faer otherwise splits each factorisation over the current rayon pool,
/// and the split (hence the rounding) depends on the pool size.
fn pin_sequential_linalg() {
    static PIN: std::sync::Once = std::sync::Once::new();
    PIN.call_once(|| faer::set_global_parallelism(faer::Par::Seq));
}

/// Eigenangles of a Haar unitary of dimension `n` drawn from `rng`.
///
/// Sets faer's global parallelism to sequential on first use, so results do
/// not depend on the worker count.
pub fn sample_haar_unitary_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<UnitarySample> {
    pin_sequential_linalg();
    if !(1..=MAX_DIMENSION).contains(&n) {
        return Err(Error::domain(format!("dimension must lie in [1, {MAX_DIMENSION}], got {n}")));
    }
    for retries in 0..MAX_DRAWS {
        let u = haar_unitary_matrix(n, rng);
        if let Some(eigenangles) = unitary_eigenangles(&u) {
            return Ok(UnitarySample { n, eigenangles, retries });
        }
    }
    Err(Error::NoConvergence { attempts: MAX_DRAWS })
}

/// Sample number `index` of the stream seeded by `seed`.
pub fn sample_haar_unitary(n: usize, seed: u64, index: u64) -> Result<UnitarySample> {
    sample_haar_unitary_with(n, &mut task_rng(seed, index))
}

/// How the determinant is taken.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Centering {
    /// `log det(e^r I - U)`, `r = n^{-alpha}`.
    #[default]
    Literal,
    /// `log det(I - e^{-r} U)`, which equals the literal value minus `n r`:
    /// the deterministic drift `n^{1 - alpha}` removed.
    Centred,
}

/// `alpha -> Z_n(alpha)` on a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RmtPath {
    pub n: usize,
    pub alpha_grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub centering: Centering,
}

impl Trajectory for RmtPath {
    fn alpha_grid(&self) -> &[f64] {
        &self.alpha_grid
    }
    fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// `sum_j log(e^r - e^{i theta_j})` (or the centred form) without the
/// `1/sqrt(log n)` normalisation. Every factor has positive real part for
/// `r > 0`, so the principal logarithm is the branch continued from
/// `alpha = 0`.
pub fn log_det_unnormalized(sample: &UnitarySample, r: f64, centering: Centering) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    let er = r.exp();
    let emr = (-r).exp();
    for &th in &sample.eigenangles {
        let e = Complex64::new(th.cos(), th.sin());
        let f = match centering {
            Centering::Literal => Complex64::new(er, 0.0) - e,
            Centering::Centred => Complex64::new(1.0, 0.0) - e * emr,
        };
        let m = f.norm();
        if m < FACTOR_FLOOR {
            return Err(Error::NearZero {
                sigma: r,
                t: th,
                modulus: m,
            });
        }
        acc += f.ln();
    }
    Ok(acc)
}

/// The normalised process on `alpha_grid`; needs `n >= 2`.
pub fn rmt_path(sample: &UnitarySample, alpha_grid: &[f64], centering: Centering) -> Result<RmtPath> {
    if sample.n < 2 {
        return Err(Error::domain("normalisation by sqrt(log n) needs n >= 2"));
    }
    let n = sample.n as f64;
    let norm = n.ln().sqrt();
    let values = alpha_grid
        .iter()
        .map(|&a| log_det_unnormalized(sample, n.powf(-a), centering).map(|v| v / norm))
        .collect::<Result<Vec<_>>>()?;
    Ok(RmtPath {
        n: sample.n,
        alpha_grid: alpha_grid.to_vec(),
        values,
        centering,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitarity_residual() {
        let mut rng = task_rng(1, 0);
        for &n in &[1usize, 5, 64] {
            let u = haar_unitary_matrix(n, &mut rng);
            let p = u.adjoint() * &u;
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((p[(i, j)] - c64::new(want, 0.0)).norm());
                }
            }
            assert!(worst <= 1e-12, "n={n} {worst:e}");
        }
    }

    #[test]
    fn cayley_angles_match_general_eigensolver() {
        let mut rng = task_rng(2, 0);
        for &n in &[3usize, 16, 64] {
            let u = haar_unitary_matrix(n, &mut rng);
            let ours = unitary_eigenangles(&u).unwrap();
            let mut theirs: Vec<f64> = u.eigenvalues().unwrap().iter().map(|z| wrap(z.im.atan2(z.re))).collect();
            theirs.sort_by(f64::total_cmp);
            for (a, b) in ours.iter().zip(&theirs) {
                let d = (a - b).abs();
                assert!(d.min(TAU - d) < 1e-10, "n={n} {a} {b}");
            }
        }
    }

    #[test]
    fn eigenvalue_at_minus_one_is_handled() {
        let n = 4;
        let angles = [std::f64::consts::PI, 0.3, 1.0, 4.0];
        let u = Mat::<c64>::from_fn(n, n, |i, j| if i == j { c64::new(angles[i].cos(), angles[i].sin()) } else { c64::new(0.0, 0.0) });
        let got = unitary_eigenangles(&u).unwrap();
        let want = UnitarySample::from_angles(&angles).eigenangles;
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn angles_sorted_in_range() {
        let s = sample_haar_unitary(50, 3, 7).unwrap();
        assert_eq!(s.eigenangles.len(), 50);
        assert!(s.eigenangles.windows(2).all(|w| w[0] <= w[1]));
        assert!(s.eigenangles.iter().all(|&a| (0.0..TAU).contains(&a)));
        assert!(sample_haar_unitary(0, 3, 7).is_err());
        assert!(sample_haar_unitary(4097, 3, 7).is_err());
    }

    #[test]
    fn determinant_identity() {
        let mut rng = task_rng(4, 0);
        let u = haar_unitary_matrix(16, &mut rng);
        let s = UnitarySample::from_angles(&unitary_eigenangles(&u).unwrap());
        for &a in &[0.0, 0.5, 1.0, 2.0] {
            let r = 16f64.powf(-a);
            let m = Mat::<c64>::from_fn(16, 16, |i, j| {
                let d = if i == j { c64::new(r.exp(), 0.0) } else { c64::new(0.0, 0.0) };
                d - u[(i, j)]
            });
            let det = m.determinant();
            let via = log_det_unnormalized(&s, r, Centering::Literal).unwrap().exp();
            assert!((via - det).norm() <= 1e-8 * det.norm(), "alpha={a}");
        }
    }

    #[test]
    fn alpha_zero_real_part_bound_and_centering() {
        let s = sample_haar_unitary(32, 5, 0).unwrap();
        let v = log_det_unnormalized(&s, 1.0, Centering::Literal).unwrap();
        assert!(v.re >= 32.0 * (std::f64::consts::E - 1.0).ln());
        let g = [0.0, 0.3, 1.0];
        let lit = rmt_path(&s, &g, Centering::Literal).unwrap();
        let cen = rmt_path(&s, &g, Centering::Centred).unwrap();
        let norm = 32f64.ln().sqrt();
        for (k, &a) in g.iter().enumerate() {
            let drift = 32f64.powf(1.0 - a) / norm;
            assert!((lit.values[k] - cen.values[k] - drift).norm() < 1e-11);
        }
    }

    #[test]
    fn single_dimension() {
        let s = UnitarySample::from_angles(&[1.0]);
        assert!(rmt_path(&s, &[0.0, 1.0], Centering::Literal).is_err());
        let v = log_det_unnormalized(&s, 0.5, Centering::Literal).unwrap();
        let want = (Complex64::new(0.5f64.exp(), 0.0) - Complex64::new(1.0f64.cos(), 1.0f64.sin())).ln();
        assert!((v - want).norm() < 1e-15);
    }

    #[test]
    fn mean_spacing() {
        let n = 128;
        let mut total = 0.0;
        let draws = 20;
        for i in 0..draws {
            let s = sample_haar_unitary(n, 6, i).unwrap();
            total += (s.eigenangles[n - 1] - s.eigenangles[0]) / (n - 1) as f64;
        }
        let mean = total / draws as f64;
        assert!((mean - TAU / n as f64).abs() < 0.01 * TAU / n as f64, "{mean}");
    }
}
