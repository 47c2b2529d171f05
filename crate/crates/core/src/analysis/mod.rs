//! Diffusion delay and sequence statistics.

mod correlation;
mod diffusion;
mod stats;

pub use correlation::{avalanche_correlation, correlation, cross_correlation, AvalancheProfile};
pub use diffusion::{diffusion_delay, distances_from, DiffusionReport};
pub use stats::{autocorrelation, detect_period, runs, sequence_stats, SequenceStats, AUTOCORRELATION_MAX_LAGS};
