//! Binned Taylor-moment evaluation of Dirichlet polynomials along horizontal
//! lines.
//!
//! A sum `F(sigma) = sum_n c_n exp(-sigma l_n)` with fixed phases `c_n` (for
//! example `c_n = a_n n^{-i tau}`, `l_n = log n`) is needed at hundreds of
//! abscissae per height. Frequencies are bucketed into bins of width `w`
//! centred at `l_b`, and each bin keeps the moments
//! `m_{b,k} = sum_{n in b} c_n (l_n - l_b)^k / k!`, so that
//!
//! `F(sigma) = sum_b exp(-sigma l_b) sum_k (-sigma)^k m_{b,k}`
//!
//! up to a remainder below `(sigma w / 2)^(K+1) / (K+1)!` relative to
//! `sum_n |c_n| exp(-sigma l_n)`. One pass over the terms then serves every
//! `sigma` with `|sigma| <= sigma_max` at a cost independent of the number of
//! terms.

use crate::phasor::unit_phasor;
use num_complex::Complex64;

/// Number of Taylor moments kept per bin (degree + 1).
pub const MOMENTS: usize = 7;
// (rho^7 / 7!) ~ 1e-16 for rho = sigma_max * w / 2.
const HALF_WIDTH_SIGMA: f64 = 0.0176;
const INV_FACT: [f64; MOMENTS] = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0, 1.0 / 720.0];

/// Bin layout over `[l_min, l_max]` sized for abscissae `|sigma| <= sigma_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinLayout {
    l_min: f64,
    width: f64,
    n_bins: usize,
    sigma_max: f64,
}

impl BinLayout {
    pub fn new(l_min: f64, l_max: f64, sigma_max: f64) -> Self {
        assert!(l_max >= l_min && sigma_max > 0.0);
        let width = 2.0 * HALF_WIDTH_SIGMA / sigma_max;
        let n_bins = ((l_max - l_min) / width).floor() as usize + 1;
        BinLayout {
            l_min,
            width,
            n_bins,
            sigma_max,
        }
    }

    pub fn n_bins(&self) -> usize {
        self.n_bins
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    #[inline(always)]
    fn locate(&self, l: f64) -> (usize, f64) {
        let b = (((l - self.l_min) / self.width) as usize).min(self.n_bins - 1);
        let centre = self.l_min + (b as f64 + 0.5) * self.width;
        (b, l - centre)
    }

    /// Moments for a block of heights: term `n` contributes
    /// `a_n exp(-i tau l_n)` to the spectrum of each `tau` in `taus`.
    ///
    /// Processing several heights per pass amortises the loads of `l_n`
    /// and `a_n`, which dominate for prime tables in the millions.
    pub fn accumulate<I>(&self, terms: I, taus: &[f64]) -> Vec<Spectrum>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut out: Vec<Spectrum> = taus
            .iter()
            .map(|_| Spectrum {
                layout: *self,
                moments: vec![[Complex64::new(0.0, 0.0); MOMENTS]; self.n_bins],
            })
            .collect();
        let mut powers = [0.0f64; MOMENTS];
        for (l, a) in terms {
            let (b, delta) = self.locate(l);
            let mut p = a;
            for (k, slot) in powers.iter_mut().enumerate() {
                *slot = p * INV_FACT[k];
                p *= delta;
            }
            for (spec, &tau) in out.iter_mut().zip(taus) {
                let z = unit_phasor(tau, l);
                let m = &mut spec.moments[b];
                for k in 0..MOMENTS {
                    m[k] += z * powers[k];
                }
            }
        }
        out
    }
}

/// Per-height binned moments; see the module docs.
#[derive(Clone, Debug)]
pub struct Spectrum {
    layout: BinLayout,
    moments: Vec<[Complex64; MOMENTS]>,
}

impl Spectrum {
    pub fn layout(&self) -> &BinLayout {
        &self.layout
    }

    /// `sum_n c_n exp(-sigma l_n)`.
    pub fn eval(&self, sigma: f64) -> Complex64 {
        debug_assert!(sigma.abs() <= self.layout.sigma_max * (1.0 + 1e-12));
        let w = self.layout.width;
        let first = self.layout.l_min + 0.5 * w;
        let mut scale = (-sigma * first).exp();
        let step = (-sigma * w).exp();
        let ms = -sigma;
        let mut acc = Complex64::new(0.0, 0.0);
        for m in &self.moments {
            // Horner in (-sigma) over the moments of this bin.
            let mut h = m[MOMENTS - 1];
            for k in (0..MOMENTS - 1).rev() {
                h = h * ms + m[k];
            }
            acc += h * scale;
            scale *= step;
        }
        acc
    }

    /// Add another spectrum on the same layout (used to merge partial sums).
    pub fn merge(&mut self, other: &Spectrum) {
        assert_eq!(self.layout, other.layout);
        for (a, b) in self.moments.iter_mut().zip(&other.moments) {
            for k in 0..MOMENTS {
                a[k] += b[k];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(terms: &[(f64, f64)], tau: f64, sigma: f64) -> Complex64 {
        terms
            .iter()
            .map(|&(l, a)| unit_phasor(tau, l) * (a * (-sigma * l).exp()))
            .sum()
    }

    #[test]
    fn agrees_with_direct_summation() {
        let terms: Vec<(f64, f64)> = (2..20_000u64)
            .map(|n| ((n as f64).ln(), 1.0 / (1.0 + (n % 7) as f64)))
            .collect();
        let l_max = terms.last().unwrap().0;
        let layout = BinLayout::new(2f64.ln(), l_max, 2.0);
        let taus = [0.0, 17.25, 1.0e6 + 0.3];
        let specs = layout.accumulate(terms.iter().copied(), &taus);
        for (spec, &tau) in specs.iter().zip(&taus) {
            for &sigma in &[0.5, 0.73, 1.0, 1.5, 2.0, -0.25] {
                let d = direct(&terms, tau, sigma);
                let s = spec.eval(sigma);
                let scale: f64 = terms.iter().map(|&(l, a)| a * (-sigma * l).exp()).sum();
                assert!(
                    (d - s).norm() <= 1e-13 * scale,
                    "tau={tau} sigma={sigma} diff={:e}",
                    (d - s).norm()
                );
            }
        }
    }

    #[test]
    fn merge_is_additive() {
        let a: Vec<(f64, f64)> = (2..500u64).map(|n| ((n as f64).ln(), 1.0)).collect();
        let b: Vec<(f64, f64)> = (500..900u64).map(|n| ((n as f64).ln(), 1.0)).collect();
        let layout = BinLayout::new(0.0, 900f64.ln(), 1.0);
        let mut sa = layout.accumulate(a.iter().copied(), &[3.0]).remove(0);
        let sb = layout.accumulate(b.iter().copied(), &[3.0]).remove(0);
        let all = layout
            .accumulate(a.iter().chain(&b).copied(), &[3.0])
            .remove(0);
        sa.merge(&sb);
        assert!((sa.eval(0.7) - all.eval(0.7)).norm() < 1e-13);
    }
}
