//! Empirical distributions, KS distances, complex covariances and numeric
//! checks of the mean-value and moment inequalities behind the limit theorem.

mod covariance;
mod ks;
mod lemmas;
mod proximity;

pub use covariance::{complex_covariance, CovarianceEstimate};
pub use ks::{ks_one_sample, ks_two_sample, EmpiricalDistribution};
pub use lemmas::{
    ex_decay_check, fourth_moment_check, increment_weights, lemma22_hypotheses_check, lemma33_check,
    mv_mean_value_check, regression_slope, ExDecayReport, FourthMomentReport, Lemma22Report, MvReport, PairRatio,
};
pub use proximity::{model_proximity_check, ModelProximityReport};
