use super::path::Trajectory;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// `zeta(3/2)`.
pub const ZETA_THREE_HALVES: f64 = 2.612_375_348_685_488;

/// Width of the occupation histogram bins, in normalised units.
pub const OCCUPATION_BIN_WIDTH: f64 = 0.05;

/// `log zeta(3/2) / sqrt(log log T)`, the bound on `Re Z` for `sigma >= 3/2`.
pub fn zeta_cap(t: f64) -> f64 {
    ZETA_THREE_HALVES.ln() / super::path::normalization(t)
}

fn grid_max_re<P: Trajectory + ?Sized>(path: &P) -> f64 {
    path.values().iter().map(|v| v.re).fold(f64::NEG_INFINITY, f64::max)
}

/// `sup Re Z` over the whole horizontal line right of the grid's end:
/// the grid maximum combined with the path's sampled tail supremum.
pub fn max_statistic<P: Trajectory + ?Sized>(path: &P) -> f64 {
    grid_max_re(path).max(path.tail_sup())
}

/// Grid maximum with a constant cap standing in for the `sigma >= 3/2` stretch.
pub fn max_statistic_capped<P: Trajectory + ?Sized>(path: &P, cap: f64) -> f64 {
    grid_max_re(path).max(cap)
}

/// Measure of `{alpha in [0, 1] : Re Z(alpha) >= 0}` under linear
/// interpolation, divided by the covered length (1 when the grid reaches 1).
pub fn arcsine_statistic<P: Trajectory + ?Sized>(path: &P) -> f64 {
    let (pos, total) = sign_measures(path, 1.0);
    if total > 0.0 {
        (pos / total).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

/// Measure of `{alpha in [0, 1] : Re Z < 0}`, normalised as in [`arcsine_statistic`].
pub fn negative_measure<P: Trajectory + ?Sized>(path: &P) -> f64 {
    let (pos, total) = sign_measures(path, 1.0);
    if total > 0.0 {
        ((total - pos) / total).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

fn sign_measures<P: Trajectory + ?Sized>(path: &P, end: f64) -> (f64, f64) {
    let grid = path.alpha_grid();
    let vals = path.values();
    let mut pos = 0.0;
    let mut total = 0.0;
    for k in 0..grid.len().saturating_sub(1) {
        let (a, b) = (grid[k], grid[k + 1]);
        if a >= end {
            break;
        }
        let (ya, mut yb) = (vals[k].re, vals[k + 1].re);
        let b_clip = b.min(end);
        if b_clip < b {
            yb = ya + (yb - ya) * (b_clip - a) / (b - a);
        }
        let len = b_clip - a;
        total += len;
        pos += match (ya >= 0.0, yb >= 0.0) {
            (true, true) => len,
            (false, false) => 0.0,
            (true, false) => len * ya / (ya - yb),
            (false, true) => len * yb / (yb - ya),
        };
    }
    (pos, total)
}

/// Number of strict sign changes of `Re Z` between consecutive grid points.
pub fn sign_change_count<P: Trajectory + ?Sized>(path: &P) -> usize {
    path.values().windows(2).filter(|w| w[0].re * w[1].re < 0.0).count()
}

/// Strict sign changes restricted to grid points with `alpha <= end`.
pub fn sign_change_count_until<P: Trajectory + ?Sized>(path: &P, end: f64) -> usize {
    let m = path.alpha_grid().iter().take_while(|&&a| a <= end).count();
    path.values()[..m].windows(2).filter(|w| w[0].re * w[1].re < 0.0).count()
}

/// `S(alpha_k) = max_{j <= k} |Re Z(alpha_j)|`.
pub fn running_sup<P: Trajectory + ?Sized>(path: &P) -> Vec<f64> {
    let mut m = 0.0f64;
    path.values()
        .iter()
        .map(|v| {
            m = m.max(v.re.abs());
            m
        })
        .collect()
}

/// Trapezoidal `int_0^t phi(Re Z(u)) du`, with `Re Z(t)` interpolated linearly.
pub fn occupation_functional<P, F>(path: &P, phi: F, t: f64) -> Result<f64>
where
    P: Trajectory + ?Sized,
    F: Fn(f64) -> f64,
{
    let grid = path.alpha_grid();
    let vals = path.values();
    let last = grid[grid.len() - 1];
    if !(t >= 0.0 && t <= last) {
        return Err(Error::domain(format!("occupation horizon {t} outside [0, {last}]")));
    }
    let mut acc = 0.0;
    for k in 0..grid.len() - 1 {
        let (a, b) = (grid[k], grid[k + 1]);
        if a >= t {
            break;
        }
        let ya = vals[k].re;
        let (end, yb) = if b > t {
            (t, ya + (vals[k + 1].re - ya) * (t - a) / (b - a))
        } else {
            (b, vals[k + 1].re)
        };
        acc += 0.5 * (end - a) * (phi(ya) + phi(yb));
    }
    Ok(acc)
}

/// `x^+ min 1`.
pub fn positive_part_capped(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Test functions for [`occupation_functional`] that can be named in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phi {
    One,
    PositivePartCapped,
}

impl Phi {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Phi::One => 1.0,
            Phi::PositivePartCapped => positive_part_capped(x),
        }
    }
}

/// Scalar statistics of a trajectory, shared by the zeta side and the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathStatistic {
    /// [`max_statistic`].
    Max,
    /// [`max_statistic_capped`] with the given cap.
    MaxWithCap(f64),
    Arcsine,
    Occupation { phi: Phi, t: f64 },
    /// [`running_sup`] at the last grid point with `alpha <= at`.
    RunningSup { at: f64 },
    /// Sign changes on `alpha <= 1`.
    SignChanges,
    /// `Re Z` at the last grid point with `alpha <= at`.
    RealPart { at: f64 },
}

fn index_at(grid: &[f64], at: f64) -> Result<usize> {
    let m = grid.iter().take_while(|&&a| a <= at + 1e-12).count();
    if m == 0 {
        return Err(Error::domain(format!("alpha {at} precedes the grid")));
    }
    Ok(m - 1)
}

impl PathStatistic {
    pub fn apply<P: Trajectory + ?Sized>(&self, path: &P) -> Result<f64> {
        Ok(match *self {
            PathStatistic::Max => max_statistic(path),
            PathStatistic::MaxWithCap(cap) => max_statistic_capped(path, cap),
            PathStatistic::Arcsine => arcsine_statistic(path),
            PathStatistic::Occupation { phi, t } => occupation_functional(path, |x| phi.eval(x), t)?,
            PathStatistic::RunningSup { at } => {
                let k = index_at(path.alpha_grid(), at)?;
                path.values()[..=k].iter().fold(0.0f64, |m, v| m.max(v.re.abs()))
            }
            PathStatistic::SignChanges => sign_change_count_until(path, 1.0) as f64,
            PathStatistic::RealPart { at } => path.values()[index_at(path.alpha_grid(), at)?].re,
        })
    }

    pub fn name(&self) -> String {
        match self {
            PathStatistic::Max => "max".into(),
            PathStatistic::MaxWithCap(_) => "max_with_cap".into(),
            PathStatistic::Arcsine => "arcsine".into(),
            PathStatistic::Occupation { phi, t } => format!("occupation_{phi:?}_{t}").to_lowercase(),
            PathStatistic::RunningSup { at } => format!("running_sup_{at}"),
            PathStatistic::SignChanges => "sign_changes".into(),
            PathStatistic::RealPart { at } => format!("re_z_{at}"),
        }
    }
}

/// Time spent by `Re Z` in bins of width [`OCCUPATION_BIN_WIDTH`] over `[0, t]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OccupationHistogram {
    pub bin_width: f64,
    /// Index of the first bin; bin `i` covers `[(first + i) w, (first + i + 1) w)`.
    pub first_bin: i64,
    pub mass: Vec<f64>,
}

impl OccupationHistogram {
    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    fn add(&mut self, bin: i64, m: f64) {
        if self.mass.is_empty() {
            self.first_bin = bin;
        }
        if bin < self.first_bin {
            let shift = (self.first_bin - bin) as usize;
            self.mass.splice(0..0, std::iter::repeat_n(0.0, shift));
            self.first_bin = bin;
        }
        let i = (bin - self.first_bin) as usize;
        if i >= self.mass.len() {
            self.mass.resize(i + 1, 0.0);
        }
        self.mass[i] += m;
    }
}

/// Occupation histogram of a piecewise-linear `Re Z` on `[0, t]`; each
/// segment's length is split across bins in proportion to the value range
/// it sweeps in each.
pub fn occupation_histogram<P: Trajectory + ?Sized>(path: &P, t: f64) -> Result<OccupationHistogram> {
    let grid = path.alpha_grid();
    let vals = path.values();
    let last = grid[grid.len() - 1];
    if !(t >= 0.0 && t <= last) {
        return Err(Error::domain(format!("occupation horizon {t} outside [0, {last}]")));
    }
    let w = OCCUPATION_BIN_WIDTH;
    let mut h = OccupationHistogram {
        bin_width: w,
        first_bin: 0,
        mass: Vec::new(),
    };
    for k in 0..grid.len() - 1 {
        let (a, b) = (grid[k], grid[k + 1]);
        if a >= t {
            break;
        }
        let ya = vals[k].re;
        let (end, yb) = if b > t {
            (t, ya + (vals[k + 1].re - ya) * (t - a) / (b - a))
        } else {
            (b, vals[k + 1].re)
        };
        let len = end - a;
        let (lo, hi) = if ya <= yb { (ya, yb) } else { (yb, ya) };
        let (blo, bhi) = ((lo / w).floor() as i64, (hi / w).floor() as i64);
        if blo == bhi || hi == lo {
            h.add(blo, len);
            continue;
        }
        for bin in blo..=bhi {
            let left = (bin as f64 * w).max(lo);
            let right = ((bin + 1) as f64 * w).min(hi);
            if right > left {
                h.add(bin, len * (right - left) / (hi - lo));
            }
        }
    }
    Ok(h)
}

/// The per-path summary used by reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathStatistics {
    pub max_real: f64,
    pub arcsine_measure: f64,
    pub sign_changes: usize,
    pub running_sup: Vec<f64>,
    pub occupation: OccupationHistogram,
}

impl PathStatistics {
    /// Summary with the occupation histogram taken over `[0, t]`.
    pub fn compute<P: Trajectory + ?Sized>(path: &P, t: f64) -> Result<PathStatistics> {
        Ok(PathStatistics {
            max_real: max_statistic(path),
            arcsine_measure: arcsine_statistic(path),
            sign_changes: sign_change_count(path),
            running_sup: running_sup(path),
            occupation: occupation_histogram(path, t)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::path::{alpha_grid, GridPath};

    fn line(re: &[f64]) -> GridPath {
        let g = alpha_grid(re.len(), 1.0).unwrap();
        GridPath::from_real(g, re)
    }

    #[test]
    fn max_uses_tail_and_cap() {
        let p = line(&[-1.0, -0.5, -0.2]);
        assert_eq!(max_statistic(&p), 0.0);
        assert_eq!(max_statistic_capped(&p, 0.3), 0.3);
        let p = line(&[0.0, 0.4, 0.9]);
        assert_eq!(max_statistic_capped(&p, 0.3), 0.9);
        assert_eq!(max_statistic_capped(&p, 1.3), 1.3);
    }

    #[test]
    fn arcsine_examples() {
        assert_eq!(arcsine_statistic(&line(&[1.0, 2.0, 0.5])), 1.0);
        assert_eq!(arcsine_statistic(&line(&[-1.0, -2.0, -0.5])), 0.0);
        let p = line(&[1.0, -1.0]);
        assert!((arcsine_statistic(&p) - 0.5).abs() < 1e-15);
        let p = line(&[2.0, 1.0, -1.0]);
        assert!((arcsine_statistic(&p) - 0.75).abs() < 1e-15);
        // zeros count as nonnegative
        assert_eq!(arcsine_statistic(&line(&[0.0, 0.0])), 1.0);
    }

    #[test]
    fn arcsine_clips_to_unit_interval() {
        let g = alpha_grid(5, 2.0).unwrap();
        let p = GridPath::from_real(g, &[1.0, -1.0, -1.0, 5.0, 5.0]);
        assert!((arcsine_statistic(&p) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sign_changes_examples() {
        assert_eq!(sign_change_count(&line(&[1.0, 2.0, 3.0])), 0);
        let alt: Vec<f64> = (0..9).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
        assert_eq!(sign_change_count(&line(&alt)), 8);
        assert_eq!(sign_change_count(&line(&[1.0, 0.0, -1.0])), 0);
    }

    #[test]
    fn running_sup_examples() {
        assert_eq!(running_sup(&line(&[1.0, -3.0, 2.0])), vec![1.0, 3.0, 3.0]);
        assert_eq!(running_sup(&line(&[0.0, 0.5, 0.7])), vec![0.0, 0.5, 0.7]);
    }

    #[test]
    fn occupation_examples() {
        let p = line(&[0.3, -2.0, 1.0, 0.2, 0.9]);
        assert!((occupation_functional(&p, |_| 1.0, 0.6).unwrap() - 0.6).abs() < 1e-15);
        let c = line(&[0.4; 7]);
        let v = occupation_functional(&c, positive_part_capped, 0.8).unwrap();
        assert!((v - 0.8 * 0.4).abs() < 1e-15);
        assert!(occupation_functional(&c, |_| 1.0, 1.5).is_err());
    }

    #[test]
    fn histogram_mass_matches_horizon() {
        let p = line(&[0.3, -0.2, 0.17, 0.171, 0.9, -0.04]);
        let h = occupation_histogram(&p, 0.9).unwrap();
        assert!((h.total() - 0.9).abs() < 1e-13);
        assert!(h.mass.iter().all(|&m| m >= 0.0));
        // linear segment from 0 to 0.1 over length 1 spends half its time in each bin
        let q = GridPath::from_real(vec![0.0, 1.0], &[0.0, 0.1]);
        let h = occupation_histogram(&q, 1.0).unwrap();
        assert_eq!(h.first_bin, 0);
        assert!((h.mass[0] - 0.5).abs() < 1e-12 && (h.mass[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn statistic_dispatch() {
        let p = line(&[1.0, -3.0, 2.0]);
        assert_eq!(PathStatistic::RunningSup { at: 0.5 }.apply(&p).unwrap(), 3.0);
        assert_eq!(PathStatistic::RunningSup { at: 0.4 }.apply(&p).unwrap(), 1.0);
        assert_eq!(PathStatistic::SignChanges.apply(&p).unwrap(), 2.0);
        assert_eq!(PathStatistic::RealPart { at: 1.0 }.apply(&p).unwrap(), 2.0);
    }
}
