use crate::error::{Error, Result};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which object a sampled trajectory is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// `log zeta` itself, continued horizontally.
    Direct,
    /// `sum_{p <= T} p^{-s}`.
    PrimeSum,
    /// `sum_{n <= x^3} Lambda_x(n) / (n^s log n)`.
    SelbergMollified,
}

impl Model {
    pub fn as_str(&self) -> &'static str {
        match self {
            Model::Direct => "direct",
            Model::PrimeSum => "prime_sum",
            Model::SelbergMollified => "selberg_mollified",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Model> {
        match s {
            "direct" => Ok(Model::Direct),
            "prime_sum" => Ok(Model::PrimeSum),
            "selberg_mollified" => Ok(Model::SelbergMollified),
            other => Err(Error::Config(format!("unknown model `{other}`"))),
        }
    }
}

/// Range the height `tau` is drawn from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum TauRange {
    /// `[2, T]`; heights below 2 sit too close to the pole.
    #[serde(rename = "zero_to_T")]
    ZeroToT,
    #[default]
    #[serde(rename = "T_to_2T")]
    TToTwoT,
}

impl TauRange {
    pub fn bounds(&self, t: f64) -> (f64, f64) {
        match self {
            TauRange::ZeroToT => (2.0, t),
            TauRange::TToTwoT => (t, 2.0 * t),
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, t: f64, rng: &mut R) -> f64 {
        let (lo, hi) = self.bounds(t);
        lo + (hi - lo) * rng.random::<f64>()
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TauRange::ZeroToT => "zero_to_T",
            TauRange::TToTwoT => "T_to_2T",
        }
    }
}

impl fmt::Display for TauRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TauRange {
    type Err = Error;
    fn from_str(s: &str) -> Result<TauRange> {
        match s {
            "zero_to_T" | "zero_to_t" => Ok(TauRange::ZeroToT),
            "T_to_2T" | "t_to_2t" => Ok(TauRange::TToTwoT),
            other => Err(Error::Config(format!("unknown tau range `{other}`"))),
        }
    }
}

/// Largest `alpha` the grid may reach.
pub const ALPHA_MAX_LIMIT: f64 = 4.0;
/// Default number of grid points on `[0, alpha_max]`.
pub const DEFAULT_GRID_POINTS: usize = 512;

/// `points` equispaced values on `[0, alpha_max]`.
pub fn alpha_grid(points: usize, alpha_max: f64) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::domain(format!("grid needs at least 2 points, got {points}")));
    }
    if !(alpha_max > 0.0 && alpha_max <= ALPHA_MAX_LIMIT) {
        return Err(Error::domain(format!("alpha_max must lie in (0, 4], got {alpha_max}")));
    }
    let m = (points - 1) as f64;
    Ok((0..points).map(|k| alpha_max * k as f64 / m).collect())
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 || grid[0] != 0.0 {
        return Err(Error::domain("alpha grid must start at 0 and have at least 2 points"));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("alpha grid must be strictly increasing"));
    }
    if grid[grid.len() - 1] > ALPHA_MAX_LIMIT {
        return Err(Error::domain("alpha grid exceeds alpha_max limit 4"));
    }
    Ok(())
}

/// Abscissa `1/2 + (log T)^{-alpha}`.
pub fn sigma_of(alpha: f64, t: f64) -> f64 {
    0.5 + t.ln().powf(-alpha)
}

/// `sqrt(log log T)`.
pub fn normalization(t: f64) -> f64 {
    t.ln().ln().sqrt()
}

/// A complex trajectory on an `alpha` grid.
///
/// Every path functional in [`crate::process`] takes a `Trajectory`, so the
/// zeta-side paths, the Brownian oracle and the random-matrix analogue are
/// all measured by the same code.
pub trait Trajectory {
    fn alpha_grid(&self) -> &[f64];
    fn values(&self) -> &[Complex64];

    /// Supremum of the real part over the stretch of the horizontal line
    /// to the left of `alpha = 0` (`sigma >= 3/2`). Zero for the Brownian
    /// limit, where that stretch collapses to the starting point.
    fn tail_sup(&self) -> f64 {
        0.0
    }
}

/// One sampled trajectory `alpha -> Z(alpha)` at height `tau`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProcessPath {
    #[serde(rename = "T")]
    pub t: f64,
    pub tau: f64,
    pub alpha_grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub model: Model,
    pub normalization: f64,
    /// Sampled `sup Re` over `sigma >= 3/2`, already normalised.
    pub tail_sup: f64,
}

impl Trajectory for ProcessPath {
    fn alpha_grid(&self) -> &[f64] {
        &self.alpha_grid
    }
    fn values(&self) -> &[Complex64] {
        &self.values
    }
    fn tail_sup(&self) -> f64 {
        self.tail_sup
    }
}

/// A bare trajectory, for tests and hand-built inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPath {
    pub alpha_grid: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl GridPath {
    pub fn from_real(alpha_grid: Vec<f64>, re: &[f64]) -> GridPath {
        assert_eq!(alpha_grid.len(), re.len());
        GridPath {
            alpha_grid,
            values: re.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        }
    }
}

impl Trajectory for GridPath {
    fn alpha_grid(&self) -> &[f64] {
        &self.alpha_grid
    }
    fn values(&self) -> &[Complex64] {
        &self.values
    }
}
