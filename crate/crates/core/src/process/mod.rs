//! Sampled trajectories of the horizontal process
//! `Z(alpha) = log zeta(1/2 + (log T)^{-alpha} + i tau) / sqrt(log log T)`
//! and the path functionals measured on them.

mod functionals;
mod path;
mod sampler;

pub use functionals::{
    arcsine_statistic, max_statistic, max_statistic_capped, negative_measure, occupation_functional,
    occupation_histogram, positive_part_capped, running_sup, sign_change_count, sign_change_count_until,
    zeta_cap, OccupationHistogram, PathStatistic, PathStatistics, Phi, OCCUPATION_BIN_WIDTH,
    ZETA_THREE_HALVES,
};
pub use path::{
    alpha_grid, normalization, sigma_of, GridPath, Model, ProcessPath, TauRange, Trajectory,
    ALPHA_MAX_LIMIT, DEFAULT_GRID_POINTS,
};
pub use sampler::{PathSampler, SampledPath, BLOCK, MAX_REJECTIONS};
