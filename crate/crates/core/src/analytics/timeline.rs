use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::domain::{EntityProfile, MisalignedTimelines, Polarity, Post, StudyWindow, TimelinePoint};
use crate::ingest::mention_occurrences;
use crate::sentiment::ScoredPost;

/// How posts weigh into a bucket's mean net sentiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weighting {
    /// Every post counts once.
    #[default]
    Unweighted,
    /// A post counts `1 + retweet_count` times: the original plus its forwards.
    Retweets,
}

impl Weighting {
    fn weight(self, post: &Post) -> f64 {
        match self {
            Weighting::Unweighted => 1.0,
            Weighting::Retweets => 1.0 + post.retweet_count as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TimelineError {
    #[error("post {id} at {timestamp} lies outside the study window")]
    PostOutsideWindow { id: String, timestamp: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("bucket has no posts")]
    EmptyBucket,
    #[error("favourable ({favourable}) plus unfavourable ({unfavourable}) exceeds total ({total})")]
    InconsistentCounts {
        favourable: u64,
        unfavourable: u64,
        total: u64,
    },
}

/// Janis-Fadner coefficient of imbalance for `favourable` and `unfavourable`
/// out of `total` items, in `[-1, 1]`.
pub fn janis_fadner(favourable: u64, unfavourable: u64, total: u64) -> Result<f64, IndexError> {
    if total == 0 {
        return Err(IndexError::EmptyBucket);
    }
    if favourable.saturating_add(unfavourable) > total {
        return Err(IndexError::InconsistentCounts {
            favourable,
            unfavourable,
            total,
        });
    }
    let (f, u, t) = (favourable as f64, unfavourable as f64, total as f64);
    let t2 = t * t;
    Ok(if favourable > unfavourable {
        (f * f - f * u) / t2
    } else if favourable < unfavourable {
        (f * u - u * u) / t2
    } else {
        0.0
    })
}

/// Reputation index of a bucket from its polarity counts.
pub fn reputation_index(point: &TimelinePoint) -> Result<f64, IndexError> {
    janis_fadner(point.positive_count, point.negative_count, point.post_count)
}

fn finish(point: &mut TimelinePoint, net_sum: f64) {
    if point.post_count > 0 && point.weight_sum > 0.0 {
        point.mean_net_sentiment = Some(net_sum / point.weight_sum);
    }
    point.reputation_index = reputation_index(point).ok();
}

/// One point per bucket of the window, empty buckets included.
///
/// `mention_count` is left at zero; [`timeline`] fills it.
pub fn bucketize(
    scored: &[ScoredPost],
    window: &StudyWindow,
    weighting: Weighting,
) -> Result<Vec<TimelinePoint>, TimelineError> {
    let mut points: Vec<TimelinePoint> = window.bucket_starts().map(TimelinePoint::empty).collect();
    let mut net_sums = vec![0.0f64; points.len()];
    for sp in scored {
        let bucket = window
            .bucket_of(sp.post.timestamp)
            .ok_or_else(|| TimelineError::PostOutsideWindow {
                id: sp.post.id.clone(),
                timestamp: sp.post.timestamp,
            })?;
        let point = &mut points[bucket];
        let w = weighting.weight(&sp.post);
        point.post_count += 1;
        point.weight_sum += w;
        net_sums[bucket] += w * f64::from(sp.score.net());
        match sp.score.polarity() {
            Polarity::Positive => point.positive_count += 1,
            Polarity::Negative => point.negative_count += 1,
            Polarity::Neutral => point.neutral_count += 1,
        }
    }
    for (point, sum) in points.iter_mut().zip(net_sums) {
        finish(point, sum);
    }
    Ok(points)
}

/// Keyword occurrences plus tracked mentions per bucket. Posts outside the
/// window are ignored.
pub fn mention_frequency(posts: &[Post], profile: &EntityProfile, window: &StudyWindow) -> Vec<u64> {
    let mut counts = vec![0u64; window.num_buckets()];
    for post in posts {
        if let Some(b) = window.bucket_of(post.timestamp) {
            counts[b] += mention_occurrences(post, profile);
        }
    }
    counts
}

/// Full timeline for one entity: [`bucketize`] with mention counts filled in.
pub fn timeline(
    scored: &[ScoredPost],
    profile: &EntityProfile,
    window: &StudyWindow,
    weighting: Weighting,
) -> Result<Vec<TimelinePoint>, TimelineError> {
    let mut points = bucketize(scored, window, weighting)?;
    let posts: Vec<Post> = scored.iter().map(|s| s.post.clone()).collect();
    for (point, count) in points.iter_mut().zip(mention_frequency(&posts, profile, window)) {
        point.mention_count = count;
    }
    Ok(points)
}

/// Combines two points for the same bucket computed on disjoint post sets.
pub fn merge_points(a: &TimelinePoint, b: &TimelinePoint) -> Result<TimelinePoint, MisalignedTimelines> {
    if a.bucket_start != b.bucket_start {
        return Err(MisalignedTimelines::BucketStart {
            index: 0,
            expected: a.bucket_start,
            found: b.bucket_start,
        });
    }
    let mut merged = TimelinePoint {
        bucket_start: a.bucket_start,
        post_count: a.post_count + b.post_count,
        mention_count: a.mention_count + b.mention_count,
        mean_net_sentiment: None,
        positive_count: a.positive_count + b.positive_count,
        negative_count: a.negative_count + b.negative_count,
        neutral_count: a.neutral_count + b.neutral_count,
        reputation_index: None,
        weight_sum: a.weight_sum + b.weight_sum,
    };
    let part = |p: &TimelinePoint| p.mean_net_sentiment.map_or(0.0, |m| m * p.weight_sum);
    finish(&mut merged, part(a) + part(b));
    Ok(merged)
}

/// Element-wise [`merge_points`] over two aligned timelines.
pub fn merge_timelines(
    a: &[TimelinePoint],
    b: &[TimelinePoint],
) -> Result<Vec<TimelinePoint>, MisalignedTimelines> {
    if a.len() != b.len() {
        return Err(MisalignedTimelines::BucketCount {
            expected: a.len(),
            found: b.len(),
        });
    }
    a.iter().zip(b).map(|(x, y)| merge_points(x, y)).collect()
}
