//! Seeded synthetic corpora with optional crisis shocks and a ground-truth sidecar.
//!
//! Posts are drawn bucket by bucket, corporation before CEO, from a ChaCha8
//! stream; the same [`ScenarioConfig`] always yields the same posts. Texts
//! are rendered from templates whose sentiment under the shipped lexicon is
//! known in advance, so scorer agreement with the sidecar is measurable.

mod rng;
mod templates;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::domain::{validate_profile, EntityKind, EntityProfile, Polarity, Post, StudyWindow};
use crate::sentiment::ScoredPost;
use crate::text::contains_whole_word;

pub use rng::ScenarioRng;

/// Upper bound on the retweet cap, which sizes the sampling table.
pub const MAX_RETWEET_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("invalid scenario: {0}")]
    InvalidConfig(String),
}

fn invalid(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::InvalidConfig(msg.into())
}

/// Probabilities of drawing each polarity.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SentimentMix {
    pub positive: f64,
    pub negative: f64,
    pub neutral: f64,
}

impl SentimentMix {
    fn validate(&self, who: &str) -> Result<(), ScenarioError> {
        let parts = [self.positive, self.negative, self.neutral];
        if parts.iter().any(|p| !p.is_finite() || *p < 0.0 || *p > 1.0) {
            return Err(invalid(format!("{who}: mix probabilities must lie in [0, 1]")));
        }
        let sum: f64 = parts.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(invalid(format!("{who}: mix probabilities sum to {sum}, not 1")));
        }
        Ok(())
    }

    /// Raises the negative share by `shift` and renormalizes.
    pub fn shifted_negative(&self, shift: f64) -> SentimentMix {
        let total = 1.0 + shift;
        SentimentMix {
            positive: self.positive / total,
            negative: (self.negative + shift) / total,
            neutral: self.neutral / total,
        }
    }

    fn draw(&self, rng: &mut ScenarioRng) -> Polarity {
        let u = rng.unit();
        if u < self.positive {
            Polarity::Positive
        } else if u < self.positive + self.negative {
            Polarity::Negative
        } else {
            Polarity::Neutral
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EntityScenario {
    pub profile: EntityProfile,
    pub posts_per_bucket: u32,
    pub mix: SentimentMix,
    /// Probability that a post names the entity by `@handle` rather than keyword.
    #[cfg_attr(feature = "serde", serde(default))]
    pub mention_rate: f64,
}

/// Step shock on one entity's negative share.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CrisisShock {
    pub entity: EntityKind,
    pub start_bucket: usize,
    pub duration_buckets: usize,
    pub negative_shift: f64,
}

impl CrisisShock {
    pub fn covers(&self, entity: EntityKind, bucket: usize) -> bool {
        entity == self.entity && bucket >= self.start_bucket && bucket < self.start_bucket + self.duration_buckets
    }
}

/// Discrete power law `P(k) ∝ (k + 1)^-alpha` on `0..=cap`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RetweetLaw {
    pub alpha: f64,
    pub cap: u64,
}

impl Default for RetweetLaw {
    fn default() -> Self {
        RetweetLaw {
            alpha: 2.0,
            cap: 10_000,
        }
    }
}

impl RetweetLaw {
    fn cdf(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = (0..=self.cap)
            .map(|k| {
                acc += libm::pow(k as f64 + 1.0, -self.alpha);
                acc
            })
            .collect();
        let total = acc;
        cdf.iter_mut().for_each(|c| *c /= total);
        cdf
    }
}

fn sample_cdf(cdf: &[f64], rng: &mut ScenarioRng) -> u64 {
    let u = rng.unit();
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1) as u64
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScenarioConfig {
    pub seed: u64,
    pub window: StudyWindow,
    pub corporation: EntityScenario,
    pub ceo: EntityScenario,
    #[cfg_attr(feature = "serde", serde(default))]
    pub crisis: Option<CrisisShock>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub retweets: RetweetLaw,
}

fn is_generated_author(handle: &str) -> bool {
    handle.len() == 7 && handle.starts_with('u') && handle[1..].bytes().all(|b| b.is_ascii_digit())
}

impl ScenarioConfig {
    pub fn entities(&self) -> [(EntityKind, &EntityScenario); 2] {
        [
            (EntityKind::Corporation, &self.corporation),
            (EntityKind::Ceo, &self.ceo),
        ]
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        for (kind, spec) in self.entities() {
            let who = kind.as_str();
            validate_profile(&spec.profile).map_err(|e| invalid(format!("{who}: {e}")))?;
            if spec.profile.kind != kind {
                return Err(invalid(format!("{who} block declares kind {}", spec.profile.kind)));
            }
            spec.mix.validate(who)?;
            if !(0.0..=1.0).contains(&spec.mention_rate) {
                return Err(invalid(format!("{who}: mention_rate must lie in [0, 1]")));
            }
            if spec.mention_rate > 0.0 && spec.profile.handles.is_empty() {
                return Err(invalid(format!("{who}: mention_rate > 0 needs at least one handle")));
            }
            if spec.profile.handles.iter().any(|h| is_generated_author(h)) {
                return Err(invalid(format!("{who}: handles of the form u000000 are reserved")));
            }
        }
        let (corp, ceo) = (&self.corporation.profile, &self.ceo.profile);
        let overlapping = corp
            .keywords
            .iter()
            .any(|a| ceo.keywords.iter().any(|b| contains_whole_word(a, b) || contains_whole_word(b, a)));
        if overlapping || corp.handles.iter().any(|h| ceo.has_handle(h)) {
            return Err(invalid("corporation and CEO keywords or handles overlap"));
        }
        if let Some(c) = &self.crisis {
            if c.duration_buckets == 0 || c.start_bucket + c.duration_buckets > self.window.num_buckets() {
                return Err(invalid("crisis buckets must be nonempty and lie inside the window"));
            }
            if !(c.negative_shift > 0.0 && c.negative_shift <= 1.0) {
                return Err(invalid("crisis negative_shift must lie in (0, 1]"));
            }
        }
        if !(self.retweets.alpha.is_finite() && self.retweets.alpha > 1.0) {
            return Err(invalid("retweet power-law exponent must exceed 1"));
        }
        if self.retweets.cap > MAX_RETWEET_CAP {
            return Err(invalid(format!("retweet cap exceeds {MAX_RETWEET_CAP}")));
        }
        Ok(())
    }

    /// Polarity mix in effect for an entity in a bucket.
    pub fn mix_at(&self, entity: EntityKind, bucket: usize) -> SentimentMix {
        let base = match entity {
            EntityKind::Corporation => self.corporation.mix,
            EntityKind::Ceo => self.ceo.mix,
        };
        match &self.crisis {
            Some(c) if c.covers(entity, bucket) => base.shifted_negative(c.negative_shift),
            _ => base,
        }
    }
}

/// Ground truth for one generated post.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TruthRecord {
    pub id: String,
    pub entity: EntityKind,
    pub bucket: usize,
    pub intended_polarity: Polarity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedCorpus {
    pub posts: Vec<Post>,
    pub truth: Vec<TruthRecord>,
}

fn title_case(keyword: &str) -> String {
    keyword
        .split(' ')
        .map(|w| {
            let mut chars = w.chars();
            match chars.next() {
                Some(first) => first.to_uppercase().chain(chars).collect::<String>(),
                None => String::new(),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn entity_ref(spec: &EntityScenario, rng: &mut ScenarioRng) -> String {
    if rng.unit() < spec.mention_rate {
        let handles: Vec<&String> = spec.profile.handles.iter().collect();
        format!("@{}", rng.pick(&handles))
    } else {
        let keywords: Vec<&String> = spec.profile.keywords.iter().collect();
        title_case(rng.pick(&keywords))
    }
}

struct Draft {
    timestamp: i64,
    seq: usize,
    author: String,
    text: String,
    retweets: u64,
    entity: EntityKind,
    bucket: usize,
    polarity: Polarity,
}

/// Generates the corpus and its sidecar. Posts are ordered by timestamp,
/// ties by draw order, and numbered `p000000`, `p000001`, ...
pub fn generate(config: &ScenarioConfig) -> Result<GeneratedCorpus, ScenarioError> {
    config.validate()?;
    let mut rng = ScenarioRng::new(config.seed);
    let cdf = config.retweets.cdf();
    let window = &config.window;
    let mut drafts = Vec::new();
    for bucket in 0..window.num_buckets() {
        let lo = window.bucket_start(bucket);
        let hi = (lo + window.bucket_width()).min(window.end());
        for (entity, spec) in config.entities() {
            let mix = config.mix_at(entity, bucket);
            for _ in 0..spec.posts_per_bucket {
                let timestamp = lo + rng.below((hi - lo) as u64) as i64;
                let polarity = mix.draw(&mut rng);
                let reference = entity_ref(spec, &mut rng);
                let text = templates::render(polarity, &reference, &mut rng);
                let retweets = sample_cdf(&cdf, &mut rng);
                let author = format!("u{:06}", rng.below(1_000_000));
                drafts.push(Draft {
                    timestamp,
                    seq: drafts.len(),
                    author,
                    text,
                    retweets,
                    entity,
                    bucket,
                    polarity,
                });
            }
        }
    }
    drafts.sort_by_key(|d| (d.timestamp, d.seq));

    let mut posts = Vec::with_capacity(drafts.len());
    let mut truth = Vec::with_capacity(drafts.len());
    for (i, d) in drafts.into_iter().enumerate() {
        let id = format!("p{i:06}");
        posts.push(Post::new(id.clone(), d.timestamp, d.author, d.text).with_retweets(d.retweets));
        truth.push(TruthRecord {
            id,
            entity: d.entity,
            bucket: d.bucket,
            intended_polarity: d.polarity,
        });
    }
    Ok(GeneratedCorpus { posts, truth })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("scored posts and ground truth cover different ids (first difference: {id})")]
    IdMismatch { id: String },
}

/// Fraction of scored posts whose polarity matches the intended one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Agreement {
    /// 1.0 by convention when `n == 0`.
    pub rate: f64,
    pub n: usize,
}

pub fn verify_against_truth(scored: &[ScoredPost], truth: &[TruthRecord]) -> Result<Agreement, VerifyError> {
    let intended: BTreeMap<&str, Polarity> = truth
        .iter()
        .map(|t| (t.id.as_str(), t.intended_polarity))
        .collect();
    let mut matched = 0usize;
    let mut agree = 0usize;
    for sp in scored {
        let Some(&want) = intended.get(sp.post.id.as_str()) else {
            return Err(VerifyError::IdMismatch { id: sp.post.id.clone() });
        };
        matched += 1;
        if sp.score.polarity() == want {
            agree += 1;
        }
    }
    if matched != intended.len() || scored.len() != truth.len() {
        let seen: alloc::collections::BTreeSet<&str> = scored.iter().map(|s| s.post.id.as_str()).collect();
        let id = truth
            .iter()
            .find(|t| !seen.contains(t.id.as_str()))
            .map_or_else(|| "<duplicate>".to_string(), |t| t.id.clone());
        return Err(VerifyError::IdMismatch { id });
    }
    let rate = if matched == 0 { 1.0 } else { agree as f64 / matched as f64 };
    Ok(Agreement { rate, n: matched })
}
