use super::em::{zeta_and_derivative, zeta_em, ZetaLine};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// `|zeta|` below this aborts a horizontal continuation.
pub const NEAR_ZERO: f64 = 1e-8;
/// Default initial continuation step in `sigma`.
pub const DEFAULT_STEP: f64 = 1e-2;
/// Branch origin for the continuation.
pub const BRANCH_ORIGIN: f64 = 10.0;
/// For `sigma >= 3/2`, `|Im log zeta| <= log zeta(3/2) < 0.97 < pi`, so the
/// principal logarithm already is the branch continued from `BRANCH_ORIGIN`.
pub const PRINCIPAL_SIGMA: f64 = 1.5;

const LINE_TOL: f64 = 1e-10;
const MIN_STEP: f64 = 1e-13;

/// [`ZetaLine`] at the default accuracy, relaxed to the double-precision
/// floor at large heights.
pub fn zeta_line(t: f64, sigma_lo: f64, sigma_max: f64) -> Result<ZetaLine> {
    match ZetaLine::new(t, sigma_lo, sigma_max, LINE_TOL) {
        Err(Error::Precision { floor, .. }) => ZetaLine::new(t, sigma_lo, sigma_max, 2.0 * floor),
        other => other,
    }
}

fn zeta_default(sigma: f64, t: f64) -> Result<(Complex64, Complex64)> {
    match zeta_and_derivative(sigma, t, 1e-13) {
        Err(Error::Precision { floor, .. }) => zeta_and_derivative(sigma, t, 2.0 * floor),
        other => other,
    }
}

/// Continuous-argument walk of `log zeta(sigma + i t)` downward in `sigma`.
///
/// Starts on the principal branch at `sigma = 3/2` and accumulates phase
/// increments between evaluation points, halving the step until each
/// increment is below `pi/2`.
pub struct HorizontalLog<'a> {
    line: &'a ZetaLine,
    step: f64,
    sigma: f64,
    z: Complex64,
    arg: f64,
}

impl<'a> HorizontalLog<'a> {
    pub fn new(line: &'a ZetaLine, step: f64) -> Result<Self> {
        let sigma = PRINCIPAL_SIGMA;
        let z = line.eval(sigma);
        Ok(HorizontalLog {
            line,
            step,
            sigma,
            z,
            arg: z.arg(),
        })
    }

    /// Current value `log zeta` at the walker's abscissa.
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.z.norm().ln(), self.arg)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Moves down to `target` (no-op if already at or below it).
    pub fn advance_to(&mut self, target: f64) -> Result<Complex64> {
        let mut h = self.step;
        while self.sigma > target {
            let next = (self.sigma - h).max(target);
            let z1 = self.line.eval(next);
            let modulus = z1.norm();
            if modulus < NEAR_ZERO {
                return Err(Error::NearZero {
                    sigma: next,
                    t: self.line.t(),
                    modulus,
                });
            }
            let d = (z1 / self.z).arg();
            if d.abs() < FRAC_PI_2 {
                self.sigma = next;
                self.z = z1;
                self.arg += d;
                h = self.step;
            } else {
                h *= 0.5;
                if h < MIN_STEP {
                    return Err(Error::NearZero {
                        sigma: next,
                        t: self.line.t(),
                        modulus,
                    });
                }
            }
        }
        Ok(self.value())
    }
}

/// `log zeta(sigma + i t)` continued horizontally from `sigma = 10`.
pub fn log_zeta_horizontal(t: f64, sigma: f64, step: f64) -> Result<Complex64> {
    if !(t >= 2.0) {
        return Err(Error::domain(format!("horizontal log needs t >= 2, got {t}")));
    }
    if !(sigma > 0.5 && sigma <= BRANCH_ORIGIN) {
        return Err(Error::domain(format!("horizontal log needs 1/2 < sigma <= 10, got {sigma}")));
    }
    if !(step > 0.0) {
        return Err(Error::domain("continuation step must be positive"));
    }
    if sigma >= PRINCIPAL_SIGMA {
        let z = match zeta_em(sigma, t, 1e-13) {
            Err(Error::Precision { floor, .. }) => zeta_em(sigma, t, 2.0 * floor)?,
            other => other?,
        };
        return Ok(z.ln());
    }
    let line = zeta_line(t, sigma, PRINCIPAL_SIGMA)?;
    let mut walk = HorizontalLog::new(&line, step)?;
    walk.advance_to(sigma)
}

/// `zeta'(s) / zeta(s)` via the differentiated Euler-Maclaurin sum.
pub fn zeta_log_deriv(sigma: f64, t: f64) -> Result<Complex64> {
    if !(sigma > 0.5) {
        return Err(Error::domain(format!("log-derivative needs sigma > 1/2, got {sigma}")));
    }
    let (z, dz) = zeta_default(sigma, t)?;
    let modulus = z.norm();
    if modulus < NEAR_ZERO {
        return Err(Error::NearZero { sigma, t, modulus });
    }
    Ok(dz / z)
}
