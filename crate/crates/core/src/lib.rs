//! Reputation measurement for a CEO and their corporation from social-media posts.
//!
//! The crate is `no_std` (it needs `alloc`) and performs no I/O. It covers:
//!
//! - [`domain`]: posts, tracked entities, study windows, dual-polarity scores and timelines.
//! - [`ingest`]: mention extraction, text cleanup and per-entity filtering.
//! - [`sentiment`]: a lexicon scorer yielding positive strength 1..5 and negative strength -1..-5.
//! - [`classify`]: cue-based reputation dimension labels and retweet-ranked subsamples.
//! - [`analytics`]: bucketed timelines, mention frequency, the Janis-Fadner index and
//!   corporation-vs-CEO correlation, lag and divergence measures.
//! - [`corpusgen`]: a seeded synthetic corpus generator with crisis shocks and ground truth.
//!
//! File formats and the command-line front end live in the companion `repute` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytics;
pub mod classify;
pub mod corpusgen;
pub mod domain;
pub mod ingest;
pub mod sentiment;
mod text;

pub use domain::{
    validate_profile, DualTimeline, EntityKind, EntityProfile, MisalignedTimelines, Polarity,
    Post, ProfileError, ReputationDimension, ScoreRangeError, SentimentScore, StudyWindow,
    TimelinePoint, Timestamp, WindowError, DEFAULT_BUCKETS, WEEK_SECONDS,
};
