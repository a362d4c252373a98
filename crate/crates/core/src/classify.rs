//! Cue-based reputation dimension labelling and retweet-ranked subsampling.
//!
//! Labels approximate deductive content coding: a post gets every dimension
//! whose cue words or phrases it contains. The top retweeted posts form the
//! sample handed to human coders.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::domain::{EntityProfile, Post, ReputationDimension};
use crate::text::{contains_whole_word, normalize};

pub const SHIPPED_DIMENSION_CUES: &str = include_str!("../data/dimensions.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CueError {
    #[error("line {line}: expected `DIMENSION<TAB>cue`")]
    MalformedLine { line: usize },
    #[error("line {line}: unknown dimension {name:?}")]
    UnknownDimension { line: usize, name: String },
    #[error("line {line}: UNCLASSIFIED cannot carry cues")]
    UnclassifiedCue { line: usize },
    #[error("cue {cue:?} is assigned to both {first} and {second}")]
    DuplicateCue {
        cue: String,
        first: ReputationDimension,
        second: ReputationDimension,
    },
}

/// Cue phrases per dimension. Cues are lowercase with single spaces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DimensionLexicon {
    cues: BTreeMap<ReputationDimension, BTreeSet<String>>,
    owner: BTreeMap<String, ReputationDimension>,
}

impl DimensionLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, dimension: ReputationDimension, cue: &str) -> Result<(), CueError> {
        self.add_at(dimension, cue, 0)
    }

    fn add_at(&mut self, dimension: ReputationDimension, cue: &str, line: usize) -> Result<(), CueError> {
        if dimension == ReputationDimension::Unclassified {
            return Err(CueError::UnclassifiedCue { line });
        }
        let cue = normalize(cue);
        if cue.is_empty() {
            return Err(CueError::MalformedLine { line });
        }
        match self.owner.get(&cue) {
            Some(&first) if first != dimension => {
                return Err(CueError::DuplicateCue {
                    cue,
                    first,
                    second: dimension,
                })
            }
            Some(_) => return Ok(()),
            None => {}
        }
        self.owner.insert(cue.clone(), dimension);
        self.cues.entry(dimension).or_default().insert(cue);
        Ok(())
    }

    /// Parses `DIMENSION<TAB>cue phrase` lines; blank and `#` lines are skipped.
    pub fn parse(src: &str) -> Result<Self, CueError> {
        let mut lex = DimensionLexicon::new();
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let text = raw.trim_end_matches('\r');
            if text.trim().is_empty() || text.trim_start().starts_with('#') {
                continue;
            }
            let (name, cue) = text
                .split_once('\t')
                .ok_or(CueError::MalformedLine { line })?;
            let dimension = name
                .parse::<ReputationDimension>()
                .map_err(|_| CueError::UnknownDimension {
                    line,
                    name: name.trim().to_string(),
                })?;
            lex.add_at(dimension, cue, line)?;
        }
        Ok(lex)
    }

    /// Default cues for all nine dimensions.
    pub fn shipped() -> Self {
        DimensionLexicon::parse(SHIPPED_DIMENSION_CUES).expect("bundled cue list is valid")
    }

    pub fn cues(&self, dimension: ReputationDimension) -> impl Iterator<Item = &str> {
        self.cues
            .get(&dimension)
            .into_iter()
            .flat_map(|set| set.iter().map(String::as_str))
    }

    pub fn dimensions(&self) -> impl Iterator<Item = ReputationDimension> + '_ {
        self.cues.keys().copied()
    }
}

/// Every dimension with a cue in the post, or `{UNCLASSIFIED}` when none match.
pub fn classify_post(post: &Post, lexicon: &DimensionLexicon) -> BTreeSet<ReputationDimension> {
    classify_text(&post.text, lexicon)
}

pub fn classify_text(text: &str, lexicon: &DimensionLexicon) -> BTreeSet<ReputationDimension> {
    let text = normalize(text);
    let mut labels: BTreeSet<ReputationDimension> = lexicon
        .cues
        .iter()
        .filter(|(_, cues)| cues.iter().any(|c| contains_whole_word(&text, c)))
        .map(|(&d, _)| d)
        .collect();
    if labels.is_empty() {
        labels.insert(ReputationDimension::Unclassified);
    }
    labels
}

/// Per-dimension label counts for one entity's posts.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionProfile {
    pub entity: EntityProfile,
    /// Holds every dimension, including zero counts.
    pub counts: BTreeMap<ReputationDimension, u64>,
    pub total_posts: u64,
}

impl DimensionProfile {
    /// `counts[d] / total_posts`; `None` for an empty profile.
    pub fn coverage(&self, dimension: ReputationDimension) -> Option<f64> {
        (self.total_posts > 0)
            .then(|| self.counts.get(&dimension).copied().unwrap_or(0) as f64 / self.total_posts as f64)
    }
}

pub fn dimension_profile(
    posts: &[Post],
    lexicon: &DimensionLexicon,
    entity: &EntityProfile,
) -> DimensionProfile {
    let mut counts: BTreeMap<ReputationDimension, u64> =
        ReputationDimension::ALL.iter().map(|&d| (d, 0)).collect();
    for post in posts {
        for d in classify_post(post, lexicon) {
            *counts.entry(d).or_default() += 1;
        }
    }
    DimensionProfile {
        entity: entity.clone(),
        counts,
        total_posts: posts.len() as u64,
    }
}

/// Retweets descending, then timestamp ascending, then id ascending.
pub fn retweet_rank_order(a: &Post, b: &Post) -> Ordering {
    b.retweet_count
        .cmp(&a.retweet_count)
        .then(a.timestamp.cmp(&b.timestamp))
        .then_with(|| a.id.cmp(&b.id))
}

/// The `k` most retweeted posts in rank order.
pub fn top_retweeted(posts: &[Post], k: usize) -> Vec<Post> {
    let mut ranked: Vec<&Post> = posts.iter().collect();
    ranked.sort_by(|a, b| retweet_rank_order(a, b));
    ranked.into_iter().take(k).cloned().collect()
}
