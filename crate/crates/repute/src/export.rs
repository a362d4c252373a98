//! Output file formats. Every writer returns the complete file contents so
//! callers can compare, stage or write them as they see fit.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read};

use repute_core::analytics::{CorrelationReport, LagProfile};
use repute_core::classify::{classify_post, DimensionLexicon, DimensionProfile};
use repute_core::corpusgen::TruthRecord;
use repute_core::sentiment::ScoredPost;
use repute_core::{DualTimeline, EntityKind, Polarity, Post, ReputationDimension, TimelinePoint};
use serde::Serialize;
use thiserror::Error;

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Vec<u8> {
    // Writing into a Vec cannot fail.
    w.into_inner().expect("in-memory csv writer")
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// `id,positive,negative,net,polarity`, one row per scored post in input order.
pub fn scores_csv(scored: &[ScoredPost]) -> Vec<u8> {
    let mut w = csv_writer();
    w.write_record(["id", "positive", "negative", "net", "polarity"]).unwrap();
    for sp in scored {
        let s = sp.score;
        w.write_record([
            sp.post.id.as_str(),
            &s.positive().to_string(),
            &s.negative().to_string(),
            &s.net().to_string(),
            s.polarity().as_str(),
        ])
        .unwrap();
    }
    finish_csv(w)
}

pub const TIMELINE_HEADER: [&str; 9] = [
    "bucket_start",
    "entity",
    "post_count",
    "mention_count",
    "mean_net",
    "pos",
    "neg",
    "neu",
    "rep_index",
];

/// One row per bucket. Undefined means and indices are empty fields.
pub fn timeline_csv(entity: &str, points: &[TimelinePoint]) -> Vec<u8> {
    let mut w = csv_writer();
    w.write_record(TIMELINE_HEADER).unwrap();
    for p in points {
        w.write_record([
            p.bucket_start.to_string(),
            entity.to_string(),
            p.post_count.to_string(),
            p.mention_count.to_string(),
            opt(p.mean_net_sentiment),
            p.positive_count.to_string(),
            p.negative_count.to_string(),
            p.neutral_count.to_string(),
            opt(p.reputation_index),
        ])
        .unwrap();
    }
    finish_csv(w)
}

/// Both entities side by side, one row per bucket, ready for plotting.
pub fn plot_data_csv(dual: &DualTimeline) -> Vec<u8> {
    let mut w = csv_writer();
    w.write_record([
        "bucket_start",
        "corp_post_count",
        "ceo_post_count",
        "corp_mention_count",
        "ceo_mention_count",
        "corp_mean_net",
        "ceo_mean_net",
        "corp_rep_index",
        "ceo_rep_index",
    ])
    .unwrap();
    for (c, e) in dual.corporation().iter().zip(dual.ceo()) {
        w.write_record([
            c.bucket_start.to_string(),
            c.post_count.to_string(),
            e.post_count.to_string(),
            c.mention_count.to_string(),
            e.mention_count.to_string(),
            opt(c.mean_net_sentiment),
            opt(e.mean_net_sentiment),
            opt(c.reputation_index),
            opt(e.reputation_index),
        ])
        .unwrap();
    }
    finish_csv(w)
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable report");
    out.push(b'\n');
    out
}

#[derive(Serialize)]
struct CorrelationDoc<'a> {
    series: &'a str,
    pearson_r: f64,
    lag_profile: &'a LagProfile,
    best_lag: i64,
    n_buckets_used: usize,
    divergence_buckets: &'a [i64],
}

pub fn correlation_json(report: &CorrelationReport) -> Vec<u8> {
    to_json(&CorrelationDoc {
        series: report.series.as_str(),
        pearson_r: report.pearson_r,
        lag_profile: &report.lag_profile,
        best_lag: report.best_lag,
        n_buckets_used: report.n_buckets_used,
        divergence_buckets: &report.divergence_buckets,
    })
}

#[derive(Serialize)]
struct DimensionRow {
    dimension: ReputationDimension,
    count: u64,
    coverage: Option<f64>,
}

#[derive(Serialize)]
struct ProfileDoc<'a> {
    entity: &'a str,
    kind: EntityKind,
    total_posts: u64,
    dimensions: Vec<DimensionRow>,
}

/// Counts and coverage ratios for every dimension of every profile.
pub fn dimensions_json(profiles: &[DimensionProfile]) -> Vec<u8> {
    let docs: Vec<ProfileDoc> = profiles
        .iter()
        .map(|p| ProfileDoc {
            entity: &p.entity.name,
            kind: p.entity.kind,
            total_posts: p.total_posts,
            dimensions: ReputationDimension::ALL
                .iter()
                .map(|&d| DimensionRow {
                    dimension: d,
                    count: p.counts.get(&d).copied().unwrap_or(0),
                    coverage: p.coverage(d),
                })
                .collect(),
        })
        .collect();
    to_json(&docs)
}

/// `rank,id,ts,author,retweets,labels,text` for an already ranked list.
/// Labels are dimension names joined by `;`.
pub fn subsample_csv(ranked: &[Post], lexicon: &DimensionLexicon) -> Vec<u8> {
    let mut w = csv_writer();
    w.write_record(["rank", "id", "ts", "author", "retweets", "labels", "text"]).unwrap();
    for (i, post) in ranked.iter().enumerate() {
        let labels: Vec<&str> = classify_post(post, lexicon).into_iter().map(|d| d.name()).collect();
        w.write_record([
            (i + 1).to_string(),
            post.id.clone(),
            post.timestamp.to_string(),
            post.author_handle.clone(),
            post.retweet_count.to_string(),
            labels.join(";"),
            post.text.clone(),
        ])
        .unwrap();
    }
    finish_csv(w)
}

#[derive(Serialize, Default)]
pub struct PolarityCounts {
    #[serde(rename = "POSITIVE")]
    pub positive: usize,
    #[serde(rename = "NEGATIVE")]
    pub negative: usize,
    #[serde(rename = "NEUTRAL")]
    pub neutral: usize,
}

impl PolarityCounts {
    pub fn of<'a>(scored: impl IntoIterator<Item = &'a ScoredPost>) -> Self {
        let mut c = PolarityCounts::default();
        for sp in scored {
            match sp.score.polarity() {
                Polarity::Positive => c.positive += 1,
                Polarity::Negative => c.negative += 1,
                Polarity::Neutral => c.neutral += 1,
            }
        }
        c
    }
}

#[derive(Serialize)]
struct PostLine<'a> {
    id: &'a str,
    ts: i64,
    author: &'a str,
    text: &'a str,
    retweets: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    repost_of: Option<&'a str>,
}

/// Posts in the NDJSON corpus schema that `read_posts` accepts.
pub fn corpus_ndjson(posts: &[Post]) -> Vec<u8> {
    let mut out = Vec::new();
    for p in posts {
        serde_json::to_writer(
            &mut out,
            &PostLine {
                id: &p.id,
                ts: p.timestamp,
                author: &p.author_handle,
                text: &p.text,
                retweets: p.retweet_count,
                repost_of: p.repost_of.as_deref(),
            },
        )
        .expect("serializable post");
        out.push(b'\n');
    }
    out
}

/// Sidecar lines `{"id", "entity", "bucket", "intended_polarity"}`.
pub fn truth_ndjson(truth: &[TruthRecord]) -> Vec<u8> {
    let mut out = Vec::new();
    for t in truth {
        serde_json::to_writer(&mut out, t).expect("serializable truth record");
        out.push(b'\n');
    }
    out
}

#[derive(Debug, Error)]
pub enum TruthReadError {
    #[error("sidecar line {line}: {source}")]
    Malformed { line: usize, source: serde_json::Error },
    #[error("cannot read sidecar: {0}")]
    Io(#[from] std::io::Error),
}

pub fn read_truth<R: Read>(source: R) -> Result<Vec<TruthRecord>, TruthReadError> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(source).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|source| TruthReadError::Malformed { line: i + 1, source })?);
    }
    Ok(out)
}

/// Per-entity record counts by bucket, handy for checking a sidecar against a corpus.
pub fn truth_bucket_counts(truth: &[TruthRecord], entity: EntityKind) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for t in truth.iter().filter(|t| t.entity == entity) {
        *counts.entry(t.bucket).or_default() += 1;
    }
    counts
}
