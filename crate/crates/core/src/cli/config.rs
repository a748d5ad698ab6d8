use crate::error::{Error, Result};
use crate::process::{Model, TauRange, ALPHA_MAX_LIMIT, DEFAULT_GRID_POINTS};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Everything a run depends on. Read from a flat TOML file, then
/// overridden field by field from the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    #[serde(rename = "T")]
    pub t: f64,
    pub n_samples: usize,
    pub model: Model,
    pub x_exponent: f64,
    pub alpha_max: f64,
    pub grid_points: usize,
    pub tau_range: TauRange,
    pub seed: u64,
    pub workers: usize,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            t: 1e6,
            n_samples: 200,
            model: Model::PrimeSum,
            x_exponent: 0.05,
            alpha_max: 1.0,
            grid_points: DEFAULT_GRID_POINTS,
            tau_range: TauRange::TToTwoT,
            seed: 1,
            workers: 1,
            output_dir: PathBuf::from("zb-out"),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t > 10.0 && self.t.is_finite()) {
            return Err(Error::Config(format!("T must exceed 10, got {}", self.t)));
        }
        if !(self.x_exponent > 0.0 && self.x_exponent <= 1.0 / 6.0) {
            return Err(Error::Config(format!("x_exponent must lie in (0, 1/6], got {}", self.x_exponent)));
        }
        if self.grid_points < 2 {
            return Err(Error::Config("grid_points must be at least 2".into()));
        }
        if !(self.alpha_max > 0.0 && self.alpha_max <= ALPHA_MAX_LIMIT) {
            return Err(Error::Config(format!("alpha_max must lie in (0, 4], got {}", self.alpha_max)));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be positive".into()));
        }
        Ok(())
    }

    pub fn from_toml_str(s: &str) -> Result<RunConfig> {
        toml::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&s)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    /// `x = T^{x_exponent}`.
    pub fn x(&self) -> f64 {
        self.t.powf(self.x_exponent)
    }
}

/// Command-line values that override the file; `None` keeps the file's value.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub t: Option<f64>,
    pub n_samples: Option<usize>,
    pub model: Option<Model>,
    pub x_exponent: Option<f64>,
    pub grid_points: Option<usize>,
    pub alpha_max: Option<f64>,
    pub tau_range: Option<TauRange>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub output_dir: Option<PathBuf>,
}

impl Overrides {
    pub fn apply(&self, mut c: RunConfig) -> RunConfig {
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = self.$f.clone() { c.$f = v; } )* };
        }
        set!(t, n_samples, model, x_exponent, grid_points, alpha_max, tau_range, seed, workers, output_dir);
        c
    }
}
