//! Timeline aggregation and corporation-vs-CEO comparison.

mod correlation;
mod timeline;

pub use correlation::{
    best_lag, correlate, divergence_buckets, divergence_for, lagged_correlation, pearson,
    superimpose, CorrelationError, CorrelationReport, CorrelationSettings, LagProfile, Series,
    DEFAULT_MAX_LAG, DEFAULT_Z_THRESHOLD,
};
pub use timeline::{
    bucketize, janis_fadner, mention_frequency, merge_points, merge_timelines, reputation_index,
    timeline, IndexError, TimelineError, Weighting,
};
