//! Monte Carlo engine: seeded uniform random words, per-length
//! certificate-failure rates with Wilson intervals, exponential decay
//! fits, and a baseline walk directly in Sp(2k, Z).

mod experiment;
pub mod rng;
mod stats;

pub use experiment::{
    rivin_baseline, sample_word, sample_word_seeded, validate_symmetric, walk_experiment,
    LengthRange, WalkConfig,
};
pub use stats::{fit_exponential, wilson_interval, DecayFit, LengthStats, WalkStats, Z95};
