//! Exact counting, almost-uniform sampling and approximate counting of matchings.

mod exact;
mod ladder;
mod sampler;

pub use exact::{count_exact, enumerate_matchings};
pub use ladder::{estimate_count, EstimateConfig, EstimateResult};
pub use sampler::{calibrate_burn_in, sample_matching, scale_burn_in, steps_for, Sampler, SamplingMode};
