use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::domain::{DualTimeline, MisalignedTimelines, StudyWindow, TimelinePoint, Timestamp};

/// Lag (in buckets) to correlation coefficient. Positive lag: the second series trails the first.
pub type LagProfile = BTreeMap<i64, f64>;

pub const DEFAULT_MAX_LAG: usize = 4;
pub const DEFAULT_Z_THRESHOLD: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum CorrelationError {
    #[error("series lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("only {pairs} usable bucket pairs, need at least 3")]
    InsufficientData { pairs: usize },
    #[error("a series is constant over the usable buckets")]
    ZeroVariance,
    #[error("z threshold must be positive, got {0}")]
    InvalidThreshold(f64),
}

/// Which per-bucket value of a timeline is compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Series {
    #[default]
    MeanNet,
    ReputationIndex,
    MentionCount,
    PostCount,
}

impl Series {
    pub fn as_str(self) -> &'static str {
        match self {
            Series::MeanNet => "mean_net",
            Series::ReputationIndex => "rep_index",
            Series::MentionCount => "mention_count",
            Series::PostCount => "post_count",
        }
    }

    pub fn from_name(name: &str) -> Option<Series> {
        [Series::MeanNet, Series::ReputationIndex, Series::MentionCount, Series::PostCount]
            .into_iter()
            .find(|s| s.as_str() == name)
    }

    pub fn values(self, points: &[TimelinePoint]) -> Vec<Option<f64>> {
        points
            .iter()
            .map(|p| match self {
                Series::MeanNet => p.mean_net_sentiment,
                Series::ReputationIndex => p.reputation_index,
                Series::MentionCount => Some(p.mention_count as f64),
                Series::PostCount => Some(p.post_count as f64),
            })
            .collect()
    }
}

fn all_equal(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample Pearson correlation over the buckets defined in both series.
pub fn pearson(a: &[Option<f64>], b: &[Option<f64>]) -> Result<f64, CorrelationError> {
    if a.len() != b.len() {
        return Err(CorrelationError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = a
        .iter()
        .zip(b)
        .filter_map(|(x, y)| Some(((*x)?, (*y)?)))
        .unzip();
    pearson_pairs(&xs, &ys)
}

fn pearson_pairs(xs: &[f64], ys: &[f64]) -> Result<f64, CorrelationError> {
    if xs.len() < 3 {
        return Err(CorrelationError::InsufficientData { pairs: xs.len() });
    }
    if all_equal(xs) || all_equal(ys) {
        return Err(CorrelationError::ZeroVariance);
    }
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(CorrelationError::ZeroVariance);
    }
    Ok((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

/// Correlation of `a[t]` with `b[t + lag]` for every lag in `-max_lag..=max_lag`.
/// Lags without enough usable overlap are left out.
pub fn lagged_correlation(a: &[Option<f64>], b: &[Option<f64>], max_lag: usize) -> LagProfile {
    let max_lag = max_lag as i64;
    let mut profile = LagProfile::new();
    for lag in -max_lag..=max_lag {
        let (xs, ys): (Vec<f64>, Vec<f64>) = (0..a.len() as i64)
            .filter_map(|t| {
                let u = t + lag;
                if u < 0 || u >= b.len() as i64 {
                    return None;
                }
                Some((a[t as usize]?, b[u as usize]?))
            })
            .unzip();
        if let Ok(r) = pearson_pairs(&xs, &ys) {
            profile.insert(lag, r);
        }
    }
    profile
}

/// Lag with the largest `|r|`; ties go to the smaller `|lag|`, then the negative lag.
pub fn best_lag(profile: &LagProfile) -> Option<i64> {
    profile
        .iter()
        .max_by(|(la, ra), (lb, rb)| {
            ra.abs()
                .partial_cmp(&rb.abs())
                .unwrap_or(Ordering::Equal)
                .then(lb.abs().cmp(&la.abs()))
                .then(lb.cmp(la))
        })
        .map(|(&lag, _)| lag)
}

/// Population z-scores of the defined values; `None` stays `None`.
fn z_scores(values: &[Option<f64>]) -> Result<Vec<Option<f64>>, CorrelationError> {
    let defined: Vec<f64> = values.iter().flatten().copied().collect();
    if defined.len() < 3 {
        return Err(CorrelationError::InsufficientData {
            pairs: defined.len(),
        });
    }
    if all_equal(&defined) {
        return Err(CorrelationError::ZeroVariance);
    }
    let m = mean(&defined);
    let var = defined.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / defined.len() as f64;
    let sd = libm::sqrt(var);
    if sd == 0.0 {
        return Err(CorrelationError::ZeroVariance);
    }
    Ok(values.iter().map(|v| v.map(|v| (v - m) / sd)).collect())
}

fn divergence_in(
    corp: &[Option<f64>],
    ceo: &[Option<f64>],
    starts: &[Timestamp],
    z_threshold: f64,
) -> Result<Vec<Timestamp>, CorrelationError> {
    if z_threshold.is_nan() || z_threshold <= 0.0 {
        return Err(CorrelationError::InvalidThreshold(z_threshold));
    }
    let zc = z_scores(corp)?;
    let ze = z_scores(ceo)?;
    Ok(zc
        .iter()
        .zip(&ze)
        .zip(starts)
        .filter_map(|((a, b), &start)| Some(((*a)? - (*b)?, start)))
        .filter(|(diff, _)| diff.abs() > z_threshold)
        .map(|(_, start)| start)
        .collect())
}

/// Buckets where the independently z-scored mean net sentiment of the
/// corporation and the CEO differ by more than `z_threshold`.
pub fn divergence_buckets(dual: &DualTimeline, z_threshold: f64) -> Result<Vec<Timestamp>, CorrelationError> {
    divergence_for(dual, Series::MeanNet, z_threshold)
}

pub fn divergence_for(
    dual: &DualTimeline,
    series: Series,
    z_threshold: f64,
) -> Result<Vec<Timestamp>, CorrelationError> {
    let starts: Vec<Timestamp> = dual.corporation().iter().map(|p| p.bucket_start).collect();
    divergence_in(
        &series.values(dual.corporation()),
        &series.values(dual.ceo()),
        &starts,
        z_threshold,
    )
}

/// Aligns corporation and CEO timelines built over the same window.
pub fn superimpose(
    corporation: Vec<TimelinePoint>,
    ceo: Vec<TimelinePoint>,
    window: &StudyWindow,
) -> Result<DualTimeline, MisalignedTimelines> {
    DualTimeline::new(*window, corporation, ceo)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSettings {
    pub series: Series,
    pub max_lag: usize,
    pub z_threshold: f64,
}

impl Default for CorrelationSettings {
    fn default() -> Self {
        CorrelationSettings {
            series: Series::MeanNet,
            max_lag: DEFAULT_MAX_LAG,
            z_threshold: DEFAULT_Z_THRESHOLD,
        }
    }
}

/// How closely the corporation and CEO series move together.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub series: Series,
    pub pearson_r: f64,
    pub lag_profile: LagProfile,
    pub best_lag: i64,
    pub n_buckets_used: usize,
    pub divergence_buckets: Vec<Timestamp>,
}

pub fn correlate(dual: &DualTimeline, settings: &CorrelationSettings) -> Result<CorrelationReport, CorrelationError> {
    let corp = settings.series.values(dual.corporation());
    let ceo = settings.series.values(dual.ceo());
    let pearson_r = pearson(&corp, &ceo)?;
    let n_buckets_used = corp.iter().zip(&ceo).filter(|(a, b)| a.is_some() && b.is_some()).count();
    let lag_profile = lagged_correlation(&corp, &ceo, settings.max_lag);
    let best_lag = best_lag(&lag_profile).unwrap_or(0);
    let divergence_buckets = divergence_for(dual, settings.series, settings.z_threshold)?;
    Ok(CorrelationReport {
        series: settings.series,
        pearson_r,
        lag_profile,
        best_lag,
        n_buckets_used,
        divergence_buckets,
    })
}
