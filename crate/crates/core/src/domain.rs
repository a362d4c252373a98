//! Shared domain types and their invariants.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::ingest::extract_mentions;

/// UTC epoch seconds.
pub type Timestamp = i64;

pub const WEEK_SECONDS: i64 = 7 * 24 * 60 * 60;

/// Number of weekly buckets in the default study window.
pub const DEFAULT_BUCKETS: i64 = 16;

/// One social-media message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Post {
    pub id: String,
    pub timestamp: Timestamp,
    pub author_handle: String,
    pub text: String,
    pub retweet_count: u64,
    pub is_repost: bool,
    pub repost_of: Option<String>,
    /// Bare handles found in `text`, in order of appearance.
    pub mentions: Vec<String>,
    /// Entity keywords that matched this post, filled by entity filtering.
    pub matched_keywords: Vec<String>,
}

impl Post {
    pub fn new(
        id: impl Into<String>,
        timestamp: Timestamp,
        author_handle: impl Into<String>,
        text: impl Into<String>,
    ) -> Self {
        let text = text.into();
        Post {
            id: id.into(),
            timestamp,
            author_handle: author_handle.into(),
            mentions: extract_mentions(&text),
            text,
            retweet_count: 0,
            is_repost: false,
            repost_of: None,
            matched_keywords: Vec::new(),
        }
    }

    pub fn with_retweets(mut self, retweet_count: u64) -> Self {
        self.retweet_count = retweet_count;
        self
    }

    /// Marks the post as a forward of `original`.
    pub fn repost_of(mut self, original: impl Into<String>) -> Self {
        self.is_repost = true;
        self.repost_of = Some(original.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum EntityKind {
    #[cfg_attr(feature = "serde", serde(rename = "CEO", alias = "ceo"))]
    Ceo,
    #[cfg_attr(feature = "serde", serde(rename = "CORPORATION", alias = "corporation"))]
    Corporation,
}

impl EntityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntityKind::Ceo => "CEO",
            EntityKind::Corporation => "CORPORATION",
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("entity profile has no keywords")]
    EmptyKeywordSet,
    #[error("entity profile contains a blank keyword")]
    BlankKeyword,
    #[error("malformed handle {0:?}: handles are stored bare, without '@' or whitespace")]
    MalformedHandle(String),
}

/// A tracked subject: the corporation or its CEO.
///
/// Keywords are case-insensitive and stored lowercase; handles are stored
/// without the leading `@`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "ProfileSpec")
)]
pub struct EntityProfile {
    pub name: String,
    pub kind: EntityKind,
    pub keywords: BTreeSet<String>,
    pub handles: BTreeSet<String>,
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
struct ProfileSpec {
    name: String,
    kind: EntityKind,
    keywords: Vec<String>,
    #[serde(default)]
    handles: Vec<String>,
}

#[cfg(feature = "serde")]
impl TryFrom<ProfileSpec> for EntityProfile {
    type Error = ProfileError;

    fn try_from(spec: ProfileSpec) -> Result<Self, Self::Error> {
        EntityProfile::new(spec.name, spec.kind, spec.keywords, spec.handles)
    }
}

impl EntityProfile {
    /// Builds a validated profile. Keywords are trimmed and lowercased.
    pub fn new<K, H>(
        name: impl Into<String>,
        kind: EntityKind,
        keywords: K,
        handles: H,
    ) -> Result<Self, ProfileError>
    where
        K: IntoIterator,
        K::Item: AsRef<str>,
        H: IntoIterator,
        H::Item: AsRef<str>,
    {
        let profile = EntityProfile {
            name: name.into(),
            kind,
            keywords: keywords
                .into_iter()
                .map(|k| k.as_ref().trim().to_lowercase())
                .collect(),
            handles: handles.into_iter().map(|h| h.as_ref().to_string()).collect(),
        };
        validate_profile(&profile)?;
        Ok(profile)
    }

    /// Case-insensitive handle membership.
    pub fn has_handle(&self, handle: &str) -> bool {
        self.handles.iter().any(|h| h.eq_ignore_ascii_case(handle))
    }
}

pub fn validate_profile(profile: &EntityProfile) -> Result<(), ProfileError> {
    if profile.keywords.is_empty() {
        return Err(ProfileError::EmptyKeywordSet);
    }
    if profile.keywords.iter().any(|k| k.trim().is_empty()) {
        return Err(ProfileError::BlankKeyword);
    }
    for handle in &profile.handles {
        if handle.is_empty() || handle.contains('@') || handle.chars().any(char::is_whitespace) {
            return Err(ProfileError::MalformedHandle(handle.clone()));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("study window start {start} is not before end {end}")]
    EmptyRange { start: Timestamp, end: Timestamp },
    #[error("bucket width must be positive, got {0}")]
    NonPositiveWidth(i64),
}

/// Half-open study period `[start, end)` tiled by fixed-width buckets.
///
/// The last bucket may extend past `end`; only timestamps inside the window
/// are ever assigned to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "WindowSpec", into = "WindowSpec")
)]
pub struct StudyWindow {
    start: Timestamp,
    end: Timestamp,
    bucket_width: i64,
}

#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize)]
struct WindowSpec {
    start: Timestamp,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end: Option<Timestamp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weeks: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bucket_width: Option<i64>,
}

#[cfg(feature = "serde")]
impl TryFrom<WindowSpec> for StudyWindow {
    type Error = WindowError;

    fn try_from(spec: WindowSpec) -> Result<Self, Self::Error> {
        let width = spec.bucket_width.unwrap_or(WEEK_SECONDS);
        let end = match (spec.end, spec.weeks) {
            (Some(end), _) => end,
            (None, Some(weeks)) => spec.start.saturating_add(weeks.saturating_mul(WEEK_SECONDS)),
            (None, None) => spec.start.saturating_add(DEFAULT_BUCKETS * WEEK_SECONDS),
        };
        StudyWindow::new(spec.start, end, width)
    }
}

#[cfg(feature = "serde")]
impl From<StudyWindow> for WindowSpec {
    fn from(w: StudyWindow) -> Self {
        WindowSpec {
            start: w.start,
            end: Some(w.end),
            weeks: None,
            bucket_width: Some(w.bucket_width),
        }
    }
}

impl StudyWindow {
    pub fn new(start: Timestamp, end: Timestamp, bucket_width: i64) -> Result<Self, WindowError> {
        if start >= end {
            return Err(WindowError::EmptyRange { start, end });
        }
        if bucket_width <= 0 {
            return Err(WindowError::NonPositiveWidth(bucket_width));
        }
        Ok(StudyWindow {
            start,
            end,
            bucket_width,
        })
    }

    /// Sixteen weekly buckets starting at `start`.
    pub fn sixteen_weeks(start: Timestamp) -> Self {
        StudyWindow::new(start, start + DEFAULT_BUCKETS * WEEK_SECONDS, WEEK_SECONDS)
            .expect("default window is valid")
    }

    pub fn start(&self) -> Timestamp {
        self.start
    }

    pub fn end(&self) -> Timestamp {
        self.end
    }

    pub fn bucket_width(&self) -> i64 {
        self.bucket_width
    }

    /// `ceil((end - start) / bucket_width)`.
    pub fn num_buckets(&self) -> usize {
        let span = self.end as i128 - self.start as i128;
        let width = self.bucket_width as i128;
        ((span + width - 1) / width) as usize
    }

    pub fn contains(&self, ts: Timestamp) -> bool {
        ts >= self.start && ts < self.end
    }

    pub fn bucket_of(&self, ts: Timestamp) -> Option<usize> {
        if !self.contains(ts) {
            return None;
        }
        Some(((ts as i128 - self.start as i128) / self.bucket_width as i128) as usize)
    }

    pub fn bucket_start(&self, bucket: usize) -> Timestamp {
        (self.start as i128 + bucket as i128 * self.bucket_width as i128) as Timestamp
    }

    pub fn bucket_starts(&self) -> impl Iterator<Item = Timestamp> + '_ {
        (0..self.num_buckets()).map(move |b| self.bucket_start(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
}

impl Polarity {
    pub const ALL: [Polarity; 3] = [Polarity::Positive, Polarity::Negative, Polarity::Neutral];

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "POSITIVE",
            Polarity::Negative => "NEGATIVE",
            Polarity::Neutral => "NEUTRAL",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("sentiment score ({positive}, {negative}) outside [1,5] x [-5,-1]")]
pub struct ScoreRangeError {
    pub positive: i8,
    pub negative: i8,
}

/// Dual-polarity sentiment: positive strength in `1..=5`, negative in `-5..=-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SentimentScore {
    positive: i8,
    negative: i8,
}

impl SentimentScore {
    pub const NEUTRAL: SentimentScore = SentimentScore {
        positive: 1,
        negative: -1,
    };

    pub fn new(positive: i8, negative: i8) -> Result<Self, ScoreRangeError> {
        if (1..=5).contains(&positive) && (-5..=-1).contains(&negative) {
            Ok(SentimentScore { positive, negative })
        } else {
            Err(ScoreRangeError { positive, negative })
        }
    }

    pub fn positive(&self) -> i8 {
        self.positive
    }

    pub fn negative(&self) -> i8 {
        self.negative
    }

    /// `positive + negative`, in `-4..=4`.
    pub fn net(&self) -> i8 {
        self.positive + self.negative
    }

    /// Ties between the two strengths are neutral.
    pub fn polarity(&self) -> Polarity {
        match self.positive.cmp(&-self.negative) {
            core::cmp::Ordering::Greater => Polarity::Positive,
            core::cmp::Ordering::Less => Polarity::Negative,
            core::cmp::Ordering::Equal => Polarity::Neutral,
        }
    }
}

impl Default for SentimentScore {
    fn default() -> Self {
        SentimentScore::NEUTRAL
    }
}

/// Reputation content categories.
///
/// The first six are the established corporate dimensions, the next three are
/// CEO-specific extensions, and `Unclassified` marks posts matching none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum ReputationDimension {
    EmotionalAppeal,
    ProductsServices,
    VisionLeadership,
    WorkplaceEnvironment,
    SocialEnvironmentalResponsibility,
    FinancialPerformance,
    Personality,
    Authority,
    Authenticity,
    Unclassified,
}

impl ReputationDimension {
    pub const ALL: [ReputationDimension; 10] = [
        ReputationDimension::EmotionalAppeal,
        ReputationDimension::ProductsServices,
        ReputationDimension::VisionLeadership,
        ReputationDimension::WorkplaceEnvironment,
        ReputationDimension::SocialEnvironmentalResponsibility,
        ReputationDimension::FinancialPerformance,
        ReputationDimension::Personality,
        ReputationDimension::Authority,
        ReputationDimension::Authenticity,
        ReputationDimension::Unclassified,
    ];

    pub const CORPORATE: [ReputationDimension; 6] = [
        ReputationDimension::EmotionalAppeal,
        ReputationDimension::ProductsServices,
        ReputationDimension::VisionLeadership,
        ReputationDimension::WorkplaceEnvironment,
        ReputationDimension::SocialEnvironmentalResponsibility,
        ReputationDimension::FinancialPerformance,
    ];

    pub const CEO_EXTENSIONS: [ReputationDimension; 3] = [
        ReputationDimension::Personality,
        ReputationDimension::Authority,
        ReputationDimension::Authenticity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReputationDimension::EmotionalAppeal => "EMOTIONAL_APPEAL",
            ReputationDimension::ProductsServices => "PRODUCTS_SERVICES",
            ReputationDimension::VisionLeadership => "VISION_LEADERSHIP",
            ReputationDimension::WorkplaceEnvironment => "WORKPLACE_ENVIRONMENT",
            ReputationDimension::SocialEnvironmentalResponsibility => {
                "SOCIAL_ENVIRONMENTAL_RESPONSIBILITY"
            }
            ReputationDimension::FinancialPerformance => "FINANCIAL_PERFORMANCE",
            ReputationDimension::Personality => "PERSONALITY",
            ReputationDimension::Authority => "AUTHORITY",
            ReputationDimension::Authenticity => "AUTHENTICITY",
            ReputationDimension::Unclassified => "UNCLASSIFIED",
        }
    }
}

impl fmt::Display for ReputationDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown reputation dimension {0:?}")]
pub struct UnknownDimension(pub String);

impl FromStr for ReputationDimension {
    type Err = UnknownDimension;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        ReputationDimension::ALL
            .iter()
            .copied()
            .find(|d| d.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| UnknownDimension(wanted.to_string()))
    }
}

/// Aggregates for one time bucket of one entity.
///
/// `None` marks undefined values (empty buckets).
#[derive(Debug, Clone, PartialEq)]
pub struct TimelinePoint {
    pub bucket_start: Timestamp,
    pub post_count: u64,
    pub mention_count: u64,
    pub mean_net_sentiment: Option<f64>,
    pub positive_count: u64,
    pub negative_count: u64,
    pub neutral_count: u64,
    pub reputation_index: Option<f64>,
    /// Total weight behind `mean_net_sentiment`; equals `post_count` when unweighted.
    pub weight_sum: f64,
}

impl TimelinePoint {
    pub fn empty(bucket_start: Timestamp) -> Self {
        TimelinePoint {
            bucket_start,
            post_count: 0,
            mention_count: 0,
            mean_net_sentiment: None,
            positive_count: 0,
            negative_count: 0,
            neutral_count: 0,
            reputation_index: None,
            weight_sum: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MisalignedTimelines {
    #[error("timeline has {found} buckets, window has {expected}")]
    BucketCount { expected: usize, found: usize },
    #[error("bucket {index} starts at {found}, expected {expected}")]
    BucketStart {
        index: usize,
        expected: Timestamp,
        found: Timestamp,
    },
}

/// Corporation and CEO timelines aligned on the same buckets.
#[derive(Debug, Clone, PartialEq)]
pub struct DualTimeline {
    window: StudyWindow,
    corporation: Vec<TimelinePoint>,
    ceo: Vec<TimelinePoint>,
}

impl DualTimeline {
    pub fn new(
        window: StudyWindow,
        corporation: Vec<TimelinePoint>,
        ceo: Vec<TimelinePoint>,
    ) -> Result<Self, MisalignedTimelines> {
        check_alignment(&window, &corporation)?;
        check_alignment(&window, &ceo)?;
        Ok(DualTimeline {
            window,
            corporation,
            ceo,
        })
    }

    pub fn window(&self) -> &StudyWindow {
        &self.window
    }

    pub fn corporation(&self) -> &[TimelinePoint] {
        &self.corporation
    }

    pub fn ceo(&self) -> &[TimelinePoint] {
        &self.ceo
    }
}

fn check_alignment(window: &StudyWindow, points: &[TimelinePoint]) -> Result<(), MisalignedTimelines> {
    let expected = window.num_buckets();
    if points.len() != expected {
        return Err(MisalignedTimelines::BucketCount {
            expected,
            found: points.len(),
        });
    }
    for (index, (point, start)) in points.iter().zip(window.bucket_starts()).enumerate() {
        if point.bucket_start != start {
            return Err(MisalignedTimelines::BucketStart {
                index,
                expected: start,
                found: point.bucket_start,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn valid_profile() {
        let p = EntityProfile::new("Acme", EntityKind::Corporation, ["acme"], ["acmecorp"]).unwrap();
        assert_eq!(validate_profile(&p), Ok(()));
    }

    #[test]
    fn empty_keywords_rejected() {
        let p = EntityProfile {
            name: "x".into(),
            kind: EntityKind::Ceo,
            keywords: BTreeSet::new(),
            handles: BTreeSet::new(),
        };
        assert_eq!(validate_profile(&p), Err(ProfileError::EmptyKeywordSet));
    }

    #[test]
    fn at_prefixed_handle_rejected() {
        let err = EntityProfile::new("x", EntityKind::Ceo, ["jane"], ["@ceo"]).unwrap_err();
        assert_eq!(err, ProfileError::MalformedHandle("@ceo".into()));
        let err = EntityProfile::new("x", EntityKind::Ceo, ["jane"], ["a b"]).unwrap_err();
        assert!(matches!(err, ProfileError::MalformedHandle(_)));
        let err = EntityProfile::new("x", EntityKind::Ceo, ["  "], ["ok"]).unwrap_err();
        assert_eq!(err, ProfileError::BlankKeyword);
    }

    #[test]
    fn keywords_are_lowercased() {
        let p = EntityProfile::new("x", EntityKind::Ceo, [" Jane Doe "], Vec::<&str>::new()).unwrap();
        assert!(p.keywords.contains("jane doe"));
    }

    #[test]
    fn default_window_has_sixteen_buckets() {
        let w = StudyWindow::sixteen_weeks(1_600_000_000);
        assert_eq!(w.num_buckets(), 16);
        assert_eq!(w.bucket_of(w.start() + WEEK_SECONDS), Some(1));
        assert_eq!(w.bucket_of(w.end()), None);
        assert_eq!(w.bucket_of(w.end() - 1), Some(15));
    }

    #[test]
    fn window_bucket_count_rounds_up() {
        let w = StudyWindow::new(0, 10, 3).unwrap();
        assert_eq!(w.num_buckets(), 4);
        assert_eq!(w.bucket_starts().collect::<Vec<_>>(), vec![0, 3, 6, 9]);
        assert!(StudyWindow::new(5, 5, 1).is_err());
        assert!(StudyWindow::new(0, 5, 0).is_err());
    }

    #[test]
    fn score_range_is_enforced() {
        assert!(SentimentScore::new(0, -1).is_err());
        assert!(SentimentScore::new(6, -1).is_err());
        assert!(SentimentScore::new(1, 0).is_err());
        assert!(SentimentScore::new(1, -6).is_err());
        for p in 1..=5 {
            for n in -5..=-1 {
                let s = SentimentScore::new(p, n).unwrap();
                assert_eq!(s.net(), p + n);
            }
        }
    }

    #[test]
    fn polarity_rule() {
        assert_eq!(SentimentScore::new(3, -1).unwrap().polarity(), Polarity::Positive);
        assert_eq!(SentimentScore::new(2, -4).unwrap().polarity(), Polarity::Negative);
        assert_eq!(SentimentScore::new(3, -3).unwrap().polarity(), Polarity::Neutral);
        assert_eq!(SentimentScore::NEUTRAL.polarity(), Polarity::Neutral);
    }

    #[test]
    fn dimension_names_round_trip() {
        for d in ReputationDimension::ALL {
            assert_eq!(d.name().parse::<ReputationDimension>().unwrap(), d);
        }
        assert!("LEADERSHIP".parse::<ReputationDimension>().is_err());
    }

    #[test]
    fn dual_timeline_rejects_misalignment() {
        let w = StudyWindow::new(0, 30, 10).unwrap();
        let good: Vec<_> = w.bucket_starts().map(TimelinePoint::empty).collect();
        assert!(DualTimeline::new(w, good.clone(), good.clone()).is_ok());
        let short = good[..2].to_vec();
        assert!(matches!(
            DualTimeline::new(w, good.clone(), short),
            Err(MisalignedTimelines::BucketCount { .. })
        ));
        let shifted: Vec<_> = (0..3).map(|b| TimelinePoint::empty(b * 10 + 1)).collect();
        assert!(matches!(
            DualTimeline::new(w, shifted, good),
            Err(MisalignedTimelines::BucketStart { index: 0, .. })
        ));
    }
}
