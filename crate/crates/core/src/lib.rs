//! Numerical laboratory for the horizontal log-zeta process
//! `alpha -> log zeta(1/2 + (log T)^-alpha + i tau) / sqrt(log log T)`.
//!
//! The crate samples the process at random heights, either by direct
//! evaluation of `zeta` or through Dirichlet-sum models (a prime sum and
//! Selberg's mollified sum), and compares path functionals against a
//! simulated complex Brownian motion and against closed-form limit laws.
//!
//! Module map:
//!
//! * [`arith`]: prime sieve, von Mangoldt function, mollified weights.
//! * [`zeta`]: Euler-Maclaurin evaluation of `zeta`, `zeta'/zeta`, the
//!   horizontally continued `log zeta`, and the Dirichlet-sum models.
//! * [`process`]: sampled trajectories and path functionals.
//! * [`oracle`]: Brownian reference paths and analytic distributions.
//! * [`rmt`]: Haar unitary sampling and the characteristic-polynomial process.
//! * [`stats`]: empirical distributions, KS distances, covariance estimates
//!   and numeric checks of the moment lemmas.
//! * [`cli`]: run configuration, reproducible orchestration and file output.
//!
//! Runnable walkthroughs live in `examples/`, one per capability.

pub mod arith;
pub mod cli;
mod error;
pub mod oracle;
pub mod phasor;
pub mod process;
pub mod rmt;
pub mod rng;
pub mod spectral;
pub mod stats;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;
