use crate::arith::{build_mollifier, von_mangoldt, MollifierNorm, MollifierTable, PrimeTable};
use crate::error::{Error, Result};
use crate::phasor::unit_phasor;
use crate::rng::task_rng;
use crate::zeta::{ex_residual, CompensatedSum, ResidualForm};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

fn loglog(t: f64) -> f64 {
    t.ln().ln()
}

/// `sum_{p <= x^3} (p^{-1-eta} - p^{-1-eta'}) / ((beta - alpha) log log T)`
/// with `eta = (log T)^{-alpha}`, `eta' = (log T)^{-beta}`; 0 when `alpha = beta`.
/// The numerator is never positive since `eta >= eta'`.
pub fn lemma33_check(alpha: f64, beta: f64, x: f64, t: f64, table: &PrimeTable) -> Result<f64> {
    if !(0.0 <= alpha && alpha <= beta && beta <= 1.0) {
        return Err(Error::domain(format!("need 0 <= alpha <= beta <= 1, got ({alpha}, {beta})")));
    }
    if !(t > 10.0 && x > 1.0) {
        return Err(Error::domain("need T > 10 and x > 1"));
    }
    let bound = x.powi(3);
    table.require(bound, "primes up to x^3")?;
    if alpha == beta {
        return Ok(0.0);
    }
    let eta = t.ln().powf(-alpha);
    let eta2 = t.ln().powf(-beta);
    let mut acc = 0.0;
    let mut comp = 0.0;
    for &p in table.up_to(bound) {
        let l = (p as f64).ln();
        // p^{-1-eta} - p^{-1-eta'} = p^{-1-eta'} (e^{-(eta - eta') l} - 1)
        let term = (-(1.0 + eta2) * l).exp() * (-(eta - eta2) * l).exp_m1();
        let y = term - comp;
        let s = acc + y;
        comp = (s - acc) - y;
        acc = s;
    }
    Ok(acc / ((beta - alpha) * loglog(t)))
}

/// Closed-form `int_0^T |sum_k a_k e^{i lambda_k t}|^2 dt` next to the
/// mean-value main term `T sum |a_k|^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MvReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub n_terms: usize,
    pub numeric_integral: f64,
    pub main_term: f64,
    /// Minimum gap between frequencies (`inf` for a single term).
    pub delta: f64,
    /// `|numeric - main| delta / sum |a_k|^2`, 0 when both vanish.
    pub normalized_error: f64,
}

/// `int_0^T e^{i d t} dt`.
fn oscillatory_integral(d: f64, t: f64) -> Complex64 {
    let x = d * t;
    if x.abs() < 1e-3 {
        // T * sum_m (i x)^m / (m + 1)!
        let ix = Complex64::new(0.0, x);
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for m in 1..8 {
            term = term * ix / (m + 1) as f64;
            sum += term;
        }
        return sum * t;
    }
    let h = (0.5 * x).sin();
    Complex64::new(x.sin(), 2.0 * h * h) / d
}

pub fn mv_mean_value_check(lambdas: &[f64], coefficients: &[Complex64], t: f64) -> Result<MvReport> {
    if lambdas.len() != coefficients.len() {
        return Err(Error::domain("one coefficient per frequency"));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain("T must be positive"));
    }
    let mut sorted = lambdas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut delta = f64::INFINITY;
    for w in sorted.windows(2) {
        let g = w[1] - w[0];
        if !(g > 0.0) {
            return Err(Error::domain(format!("repeated frequency {}", w[0])));
        }
        delta = delta.min(g);
    }
    let mass: f64 = coefficients.iter().map(|a| a.norm_sqr()).sum();
    let main = t * mass;
    let mut cross = 0.0;
    for j in 0..lambdas.len() {
        for k in j + 1..lambdas.len() {
            let i = oscillatory_integral(lambdas[k] - lambdas[j], t);
            cross += 2.0 * (coefficients[j].conj() * coefficients[k] * i).re;
        }
    }
    let numeric = main + cross;
    let normalized_error = if mass > 0.0 { cross.abs() * delta.min(f64::MAX) / mass } else { 0.0 };
    Ok(MvReport {
        t,
        n_terms: lambdas.len(),
        numeric_integral: numeric,
        main_term: main,
        delta,
        normalized_error: if delta.is_finite() { normalized_error } else { cross.abs() },
    })
}

/// Monte Carlo fourth moment of `sum phi(n) n^{-1/2 - i tau}`, `tau ~ U[0, T]`,
/// against `(sum_p phi(p)^2 / p)^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourthMomentReport {
    pub x: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub moment_estimate: f64,
    pub standard_error: f64,
    pub bound: f64,
    /// `moment / bound`, 0 when both vanish.
    pub ratio: f64,
}

fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let lam = von_mangoldt(n);
    if lam == 0.0 {
        return None;
    }
    Some(lam.exp().round() as u64)
}

pub fn fourth_moment_check(phi: &[(u64, f64)], x: f64, t: f64, n_samples: usize, seed: u64) -> Result<FourthMomentReport> {
    if !(x > 1.0 && t > 0.0) || n_samples == 0 {
        return Err(Error::domain("need x > 1, T > 0 and at least one sample"));
    }
    let bound_n = x.powi(3) * (1.0 + 1e-12);
    let mut at_prime = std::collections::BTreeMap::new();
    for &(n, v) in phi {
        let Some(p) = prime_power_base(n) else {
            return Err(Error::domain(format!("phi supported off prime powers at n = {n}")));
        };
        if n as f64 > bound_n {
            return Err(Error::domain(format!("phi supported beyond x^3 at n = {n}")));
        }
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::domain(format!("phi({n}) = {v} is not a nonnegative number")));
        }
        if n == p && at_prime.insert(p, v).is_some() {
            return Err(Error::domain(format!("phi({n}) given twice")));
        }
    }
    for &(n, v) in phi {
        let p = prime_power_base(n).expect("checked above");
        if n != p && v > at_prime.get(&p).copied().unwrap_or(0.0) {
            return Err(Error::domain(format!("phi({n}) exceeds phi({p})")));
        }
    }
    let bound: f64 = at_prime.iter().map(|(&p, &v)| v * v / p as f64).sum::<f64>().powi(2);
    let terms: Vec<(f64, f64)> = phi
        .iter()
        .filter(|&&(_, v)| v > 0.0)
        .map(|&(n, v)| {
            let l = (n as f64).ln();
            (l, v * (-0.5 * l).exp())
        })
        .collect();
    let draws: Vec<f64> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let tau = t * task_rng(seed, i).random::<f64>();
            let mut acc = CompensatedSum::default();
            for &(l, c) in &terms {
                acc.add(unit_phasor(tau, l) * c);
            }
            acc.value().norm_sqr().powi(2)
        })
        .collect();
    let nf = n_samples as f64;
    let mean = draws.iter().sum::<f64>() / nf;
    let var = if n_samples > 1 {
        draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (nf - 1.0)
    } else {
        0.0
    };
    let ratio = if bound > 0.0 { mean / bound } else if mean == 0.0 { 0.0 } else { f64::INFINITY };
    Ok(FourthMomentReport {
        x,
        t,
        n_samples,
        seed,
        moment_estimate: mean,
        standard_error: (var / nf).sqrt(),
        bound,
        ratio,
    })
}

/// Nonnegative weights `Lambda_x(n) / log n * (n^{-eta_b} - n^{-eta_a})`,
/// `eta_c = (log T)^{-c}`, for `a < b`; they satisfy `phi(p^i) <= phi(p)`.
pub fn increment_weights(a: f64, b: f64, t: f64, mollifier: &MollifierTable) -> Result<Vec<(u64, f64)>> {
    if !(0.0 <= a && a < b && b <= 1.0) {
        return Err(Error::domain(format!("need 0 <= a < b <= 1, got ({a}, {b})")));
    }
    let eta_a = t.ln().powf(-a);
    let eta_b = t.ln().powf(-b);
    Ok(mollifier
        .entries()
        .map(|(n, w)| {
            let l = (n as f64).ln();
            (n, w / l * ((-eta_b * l).exp() - (-eta_a * l).exp()))
        })
        .collect())
}

/// One `(alpha_i, alpha_j)` entry of the prime-sum covariance check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRatio {
    pub alpha_i: f64,
    pub alpha_j: f64,
    /// `sum_{p <= T} p^{-sigma_i - sigma_j}`.
    pub sum: f64,
    /// `sum / log log T`, the covariance of the prime-sum model.
    pub covariance: f64,
    /// `sum / (min(alpha_i, alpha_j) log log T)`; absent when the minimum is 0.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lemma22Report {
    pub alphas: Vec<f64>,
    #[serde(rename = "T")]
    pub t: f64,
    pub sup_a: f64,
    pub sup_attained_at: u64,
    /// `sum_l 2^{-sigma_l} / sqrt(log log T)`.
    pub sup_explicit: f64,
    pub sum_sq: f64,
    /// `T^{1 / log log T}`.
    pub m_t: f64,
    pub tail_sum: f64,
    /// Tail with the `(1 + p/T)` weight.
    pub tail_weighted: f64,
    pub tail_fraction: f64,
    pub pairs: Vec<PairRatio>,
}

pub fn lemma22_hypotheses_check(alphas: &[f64], t: f64, table: &PrimeTable) -> Result<Lemma22Report> {
    if alphas.is_empty() || alphas.iter().any(|a| !(0.0..=4.0).contains(a)) {
        return Err(Error::domain("alphas must be a nonempty list in [0, 4]"));
    }
    if !(t > 10.0) {
        return Err(Error::domain("T must exceed 10"));
    }
    table.require(t, "primes up to T")?;
    let ll = loglog(t);
    let norm = ll.sqrt();
    let sigmas: Vec<f64> = alphas.iter().map(|&a| crate::process::sigma_of(a, t)).collect();
    let m_t = t.powf(1.0 / ll);
    let d = alphas.len();
    let mut pair_sums = vec![0.0; d * d];
    let (mut sum_sq, mut tail, mut tail_w) = (0.0, 0.0, 0.0);
    let (mut sup, mut sup_at) = (0.0f64, 2u64);
    let mut pw = vec![0.0; d];
    for &p in table.up_to(t) {
        let l = (p as f64).ln();
        for (w, &s) in pw.iter_mut().zip(&sigmas) {
            *w = (-s * l).exp();
        }
        let a = pw.iter().sum::<f64>() / norm;
        if a > sup {
            sup = a;
            sup_at = p;
        }
        sum_sq += a * a;
        if p as f64 > m_t {
            tail += a * a;
            tail_w += a * a * (1.0 + p as f64 / t);
        }
        for i in 0..d {
            for j in i..d {
                pair_sums[i * d + j] += pw[i] * pw[j];
            }
        }
    }
    let sup_explicit = sigmas.iter().map(|s| 2f64.powf(-s)).sum::<f64>() / norm;
    let mut pairs = Vec::new();
    for i in 0..d {
        for j in i..d {
            let s = pair_sums[i * d + j];
            let m = alphas[i].min(alphas[j]);
            pairs.push(PairRatio {
                alpha_i: alphas[i],
                alpha_j: alphas[j],
                sum: s,
                covariance: s / ll,
                ratio: (m > 0.0).then(|| s / (m * ll)),
            });
        }
    }
    Ok(Lemma22Report {
        alphas: alphas.to_vec(),
        t,
        sup_a: sup,
        sup_attained_at: sup_at,
        sup_explicit,
        sum_sq,
        m_t,
        tail_sum: tail,
        tail_weighted: tail_w,
        tail_fraction: if sum_sq > 0.0 { tail / sum_sq } else { 0.0 },
        pairs,
    })
}

/// Decay of the Selberg residual `e_x(sigma + it)` in `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExDecayReport {
    pub sigma: f64,
    pub form: ResidualForm,
    pub xs: Vec<f64>,
    pub heights: Vec<f64>,
    /// Mean of `|e_x|` over the heights, per `x`.
    pub mean_abs: Vec<f64>,
    /// Least-squares slope of `log mean_abs` against `log x`.
    pub slope: f64,
    /// Heights skipped because `zeta` was too close to 0 there.
    pub skipped: usize,
}

/// Least-squares slope of `ys` against `xs`.
pub fn regression_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub fn ex_decay_check(sigma: f64, xs: &[f64], heights: &[f64], form: ResidualForm, norm: MollifierNorm) -> Result<ExDecayReport> {
    if xs.len() < 2 || heights.is_empty() {
        return Err(Error::domain("need at least two x values and one height"));
    }
    let mut per_height: Vec<Option<Vec<f64>>> = vec![Some(Vec::new()); heights.len()];
    for &x in xs {
        let m = build_mollifier(x, norm)?;
        let vals: Vec<Result<f64>> = heights
            .par_iter()
            .map(|&h| ex_residual(sigma, h, &m, form).map(|e| e.norm()))
            .collect();
        for (slot, v) in per_height.iter_mut().zip(vals) {
            match v {
                Ok(v) => {
                    if let Some(s) = slot {
                        s.push(v)
                    }
                }
                Err(e) if e.is_near_zero() => *slot = None,
                Err(e) => return Err(e),
            }
        }
    }
    let kept: Vec<&Vec<f64>> = per_height.iter().flatten().collect();
    if kept.is_empty() {
        return Err(Error::domain("every height was near a zero"));
    }
    let mean_abs: Vec<f64> = (0..xs.len())
        .map(|k| kept.iter().map(|v| v[k]).sum::<f64>() / kept.len() as f64)
        .collect();
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = mean_abs.iter().map(|y| y.ln()).collect();
    Ok(ExDecayReport {
        sigma,
        form,
        xs: xs.to_vec(),
        heights: heights.to_vec(),
        mean_abs,
        slope: regression_slope(&lx, &ly),
        skipped: heights.len() - kept.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve;

    #[test]
    fn lemma33_examples() {
        let table = sieve(1_000_000).unwrap();
        assert_eq!(lemma33_check(0.5, 0.5, 50.0, 1e8, &table).unwrap(), 0.0);
        let r = lemma33_check(0.0, 1.0, 1e8f64.powf(0.05), 1e8, &table).unwrap();
        assert!(r < 0.0 && r > -5.0, "{r}");
        assert!(lemma33_check(0.6, 0.5, 10.0, 1e8, &table).is_err());
        assert!(matches!(lemma33_check(0.0, 1.0, 200.0, 1e8, &table), Err(Error::Capacity { .. })));
    }

    #[test]
    fn lemma33_matches_naive_difference() {
        let table = sieve(10_000).unwrap();
        let (t, x) = (1e6f64, 20.0f64);
        let (e1, e2) = (t.ln().powf(-0.25), t.ln().powf(-0.75));
        let naive: f64 = table.up_to(8000.0).iter().map(|&p| (p as f64).powf(-1.0 - e1) - (p as f64).powf(-1.0 - e2)).sum();
        let r = lemma33_check(0.25, 0.75, x, t, &table).unwrap();
        assert!((r - naive / (0.5 * t.ln().ln())).abs() < 1e-12);
    }

    fn quad(lambdas: &[f64], a: &[Complex64], t: f64) -> f64 {
        // composite Simpson, fine enough for the smooth test integrands
        let m = 200_000;
        let h = t / m as f64;
        let f = |s: f64| -> f64 {
            lambdas
                .iter()
                .zip(a)
                .map(|(&l, &c)| c * Complex64::new((l * s).cos(), (l * s).sin()))
                .sum::<Complex64>()
                .norm_sqr()
        };
        let mut acc = f(0.0) + f(t);
        for k in 1..m {
            acc += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    }

    #[test]
    fn mv_examples() {
        let a = [Complex64::new(0.6, -0.8)];
        let r = mv_mean_value_check(&[3.0], &a, 50.0).unwrap();
        assert!((r.numeric_integral - 50.0).abs() < 1e-12 && r.delta.is_infinite());
        let z = [Complex64::new(0.0, 0.0); 3];
        assert_eq!(mv_mean_value_check(&[1.0, 2.0, 3.0], &z, 9.0).unwrap().numeric_integral, 0.0);
        assert!(mv_mean_value_check(&[1.0, 1.0], &[a[0], a[0]], 9.0).is_err());
        let l = [0.7, 2.1];
        let c = [Complex64::new(1.0, 0.5), Complex64::new(-0.3, 2.0)];
        let r = mv_mean_value_check(&l, &c, 40.0).unwrap();
        assert!((r.numeric_integral - quad(&l, &c, 40.0)).abs() < 1e-8);
        let l = [0.0, 1e-7, 3.0];
        let c = [Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.5), Complex64::new(0.0, 1.0)];
        let r = mv_mean_value_check(&l, &c, 10.0).unwrap();
        assert!((r.numeric_integral - quad(&l, &c, 10.0)).abs() < 1e-8);
    }

    #[test]
    fn fourth_moment_examples() {
        let r = fourth_moment_check(&[], 10.0, 1e6, 10, 1).unwrap();
        assert_eq!((r.moment_estimate, r.bound, r.ratio), (0.0, 0.0, 0.0));
        let r = fourth_moment_check(&[(2, 1.0)], 10.0, 1e6, 100, 1).unwrap();
        assert!((r.moment_estimate - 0.25).abs() < 0.005);
        assert!(fourth_moment_check(&[(6, 1.0)], 10.0, 1e6, 10, 1).is_err());
        assert!(fourth_moment_check(&[(2, 0.1), (4, 0.2)], 10.0, 1e6, 10, 1).is_err());
        assert!(fourth_moment_check(&[(2, -0.1)], 10.0, 1e6, 10, 1).is_err());
        assert!(fourth_moment_check(&[(2000, 0.1)], 10.0, 1e6, 10, 1).is_err());
    }

    #[test]
    fn increment_weights_satisfy_hypotheses() {
        let m = build_mollifier(12.0, MollifierNorm::Selberg).unwrap();
        let w = increment_weights(0.25, 0.75, 1e6, &m).unwrap();
        assert!(w.iter().all(|&(_, v)| v >= 0.0));
        assert!(fourth_moment_check(&w, 12.0, 1e6, 50, 3).is_ok());
    }

    #[test]
    fn lemma22_small() {
        let table = sieve(100_000).unwrap();
        let r = lemma22_hypotheses_check(&[0.0, 0.5, 1.0], 1e5, &table).unwrap();
        assert_eq!(r.sup_attained_at, 2);
        assert!((r.sup_a - r.sup_explicit).abs() < 1e-14);
        assert!(r.tail_sum <= r.tail_weighted && r.tail_weighted <= 2.0 * r.tail_sum);
        assert!(r.pairs[0].ratio.is_none());
        assert_eq!(r.pairs.len(), 6);
    }

    #[test]
    fn slope_of_exact_power_law() {
        let xs = [1.0f64, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 5.0 - 0.7 * x).collect();
        assert!((regression_slope(&xs, &ys) + 0.7).abs() < 1e-14);
    }
}
