//! `zeta`, `zeta'/zeta` and `log zeta` on horizontal lines, plus the
//! Dirichlet-sum approximants and the residual of Selberg's decomposition.
//!
//! Branch convention: `log zeta(sigma + i t)` is the continuous continuation
//! along the horizontal segment from `sigma = 10`, where
//! `|arg zeta| < 2e-3`, down to `sigma`.

mod dirichlet;
mod em;
mod log;

pub use dirichlet::{
    dirichlet_prime_sum, ex_residual, selberg_log_sum, selberg_sum, CompensatedSum, DirichletModel,
    DirichletModelConfig, ResidualForm,
};
pub use em::{zeta_and_derivative, zeta_em, ZetaLine, CORRECTION_TERMS};
pub use log::{
    log_zeta_horizontal, zeta_line, zeta_log_deriv, HorizontalLog, BRANCH_ORIGIN, DEFAULT_STEP,
    NEAR_ZERO, PRINCIPAL_SIGMA,
};

/// `log zeta(s)` from its Dirichlet series `sum Lambda(n) / (n^s log n)`,
/// accurate to ~1e-17 for `sigma >= 6`.
pub fn log_zeta_far_right(sigma: f64, t: f64) -> num_complex::Complex64 {
    use crate::phasor::unit_phasor;
    debug_assert!(sigma >= 6.0);
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for n in 2..=2000u64 {
        let lam = crate::arith::von_mangoldt(n);
        if lam > 0.0 {
            let l = (n as f64).ln();
            acc += unit_phasor(t, l) * (lam / l * (-sigma * l).exp());
        }
    }
    acc
}
