//! The commands as library functions. Each one loads its inputs, runs the
//! core operations and returns the files it would write, so the binary is a
//! thin shell around these and its output can be reproduced in-process.

use std::fs;
use std::path::{Path, PathBuf};

use repute_core::analytics::{correlate, superimpose, timeline, CorrelationSettings, Weighting};
use repute_core::classify::{dimension_profile, top_retweeted, DimensionLexicon};
use repute_core::corpusgen::{generate, verify_against_truth, ScenarioConfig};
use repute_core::ingest::{filter_by_entity, preprocess};
use repute_core::sentiment::{score_posts, LexiconSources, SentimentLexicon};
use repute_core::{DualTimeline, EntityKind, EntityProfile, Post, StudyWindow, TimelinePoint};
use serde::Serialize;
use thiserror::Error;

use crate::config::{ConfigError, LexiconPaths, RunConfig};
use crate::export::{self, PolarityCounts};
use crate::ingest::{read_posts, IngestReport};

#[derive(Debug, Error)]
pub enum RunError {
    /// Bad configuration or a referenced file that cannot be read.
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// Input files that exist but whose content or numbers cannot be used.
    #[error("{0}")]
    Data(String),
}

impl RunError {
    /// Process exit status: 1 for usage and configuration problems, 2 for data problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 1,
            RunError::Data(_) => 2,
        }
    }
}

fn read_file(path: &Path) -> Result<String, RunError> {
    fs::read_to_string(path).map_err(|source| {
        RunError::Config(ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })
    })
}

fn data_err(path: &Path, e: impl std::fmt::Display) -> RunError {
    RunError::Data(format!("{}: {e}", path.display()))
}

/// One file a command produces, named relative to the output directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl OutputFile {
    fn new(name: &str, bytes: Vec<u8>) -> Self {
        OutputFile {
            name: name.to_string(),
            bytes,
        }
    }
}

/// Files plus a short human-readable note for the terminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub files: Vec<OutputFile>,
    pub message: String,
}

/// Loads the sentiment lexicon, taking each list from its file when one is given.
pub fn load_lexicon(paths: &LexiconPaths) -> Result<SentimentLexicon, RunError> {
    let shipped = LexiconSources::shipped();
    let read = |p: &Option<PathBuf>, fallback: &str| -> Result<String, RunError> {
        match p {
            Some(path) => read_file(path),
            None => Ok(fallback.to_string()),
        }
    };
    let terms = read(&paths.terms, shipped.terms)?;
    let boosters = read(&paths.boosters, shipped.boosters)?;
    let negators = read(&paths.negators, shipped.negators)?;
    let emoticons = read(&paths.emoticons, shipped.emoticons)?;
    SentimentLexicon::parse(LexiconSources {
        terms: &terms,
        boosters: &boosters,
        negators: &negators,
        emoticons: &emoticons,
    })
    .map_err(|e| RunError::Data(format!("lexicon: {e}")))
}

pub fn load_dimension_cues(path: Option<&Path>) -> Result<DimensionLexicon, RunError> {
    match path {
        Some(path) => DimensionLexicon::parse(&read_file(path)?).map_err(|e| data_err(path, e)),
        None => Ok(DimensionLexicon::shipped()),
    }
}

pub fn load_corpus(config: &RunConfig) -> Result<(Vec<Post>, IngestReport), RunError> {
    let file = fs::File::open(&config.corpus).map_err(|source| {
        RunError::Config(ConfigError::Read {
            path: config.corpus.clone(),
            source,
        })
    })?;
    read_posts(file, config.format, config.options.strict).map_err(|e| data_err(&config.corpus, e))
}

/// Cleaned posts about `profile` inside `window`, in corpus order.
pub fn entity_posts(posts: &[Post], profile: &EntityProfile, window: &StudyWindow) -> Vec<Post> {
    let cleaned: Vec<Post> = posts.iter().map(preprocess).collect();
    filter_by_entity(&cleaned, profile, window)
}

fn weighting(config: &RunConfig) -> Weighting {
    if config.options.weight_by_retweets {
        Weighting::Retweets
    } else {
        Weighting::Unweighted
    }
}

pub fn entity_timeline(
    posts: &[Post],
    profile: &EntityProfile,
    window: &StudyWindow,
    lexicon: &SentimentLexicon,
    weighting: Weighting,
) -> Vec<TimelinePoint> {
    let scored = score_posts(&entity_posts(posts, profile, window), lexicon);
    // Filtering keeps only posts inside the window, so bucketing cannot fail.
    timeline(&scored, profile, window, weighting).expect("filtered posts lie inside the window")
}

pub fn dual_timeline(
    posts: &[Post],
    config: &RunConfig,
    lexicon: &SentimentLexicon,
) -> DualTimeline {
    let w = weighting(config);
    let corp = entity_timeline(posts, &config.corporation, &config.window, lexicon, w);
    let ceo = entity_timeline(posts, &config.ceo, &config.window, lexicon, w);
    superimpose(corp, ceo, &config.window).expect("timelines built over one window align")
}

#[derive(Serialize)]
struct IngestDoc<'a> {
    records_read: usize,
    records_accepted: usize,
    records_skipped: usize,
    skip_reasons: &'a std::collections::BTreeMap<String, usize>,
}

#[derive(Serialize)]
struct EntitySummary<'a> {
    entity: &'a str,
    kind: EntityKind,
    posts: usize,
    polarity: PolarityCounts,
}

#[derive(Serialize)]
struct AgreementDoc {
    rate: f64,
    n: usize,
}

#[derive(Serialize)]
struct ScoreSummary<'a> {
    ingest: IngestDoc<'a>,
    posts: usize,
    polarity: PolarityCounts,
    entities: Vec<EntitySummary<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agreement: Option<AgreementDoc>,
}

/// `scores.csv` for every ingested post and `score_summary.json` with polarity
/// counts overall and per entity, plus agreement with the sidecar when configured.
pub fn run_score(config: &RunConfig) -> Result<CommandOutput, RunError> {
    let lexicon = load_lexicon(&config.lexicon)?;
    let truth = match &config.truth {
        Some(path) => Some(export::read_truth(read_file(path)?.as_bytes()).map_err(|e| data_err(path, e))?),
        None => None,
    };
    let (posts, report) = load_corpus(config)?;
    let scored = score_posts(&posts, &lexicon);
    let agreement = match &truth {
        Some(t) => {
            let a = verify_against_truth(&scored, t).map_err(|e| RunError::Data(e.to_string()))?;
            Some(AgreementDoc { rate: a.rate, n: a.n })
        }
        None => None,
    };
    let entities = [&config.corporation, &config.ceo]
        .into_iter()
        .map(|profile| {
            let mine = score_posts(&entity_posts(&posts, profile, &config.window), &lexicon);
            EntitySummary {
                entity: &profile.name,
                kind: profile.kind,
                posts: mine.len(),
                polarity: PolarityCounts::of(&mine),
            }
        })
        .collect();
    let summary = ScoreSummary {
        ingest: IngestDoc {
            records_read: report.records_read,
            records_accepted: report.records_accepted,
            records_skipped: report.records_skipped,
            skip_reasons: &report.skip_reasons,
        },
        posts: scored.len(),
        polarity: PolarityCounts::of(&scored),
        entities,
        agreement,
    };
    let mut message = format!("scored {} posts ({} skipped)", scored.len(), report.records_skipped);
    if let Some(a) = &summary.agreement {
        message.push_str(&format!("; agreement with sidecar {:.4} over {}", a.rate, a.n));
    }
    let mut summary_bytes = serde_json::to_vec_pretty(&summary).expect("serializable summary");
    summary_bytes.push(b'\n');
    Ok(CommandOutput {
        files: vec![
            OutputFile::new("scores.csv", export::scores_csv(&scored)),
            OutputFile::new("score_summary.json", summary_bytes),
        ],
        message,
    })
}

/// Per-entity timeline CSVs and the aligned plot-data CSV.
pub fn run_timeline(config: &RunConfig) -> Result<CommandOutput, RunError> {
    let lexicon = load_lexicon(&config.lexicon)?;
    let (posts, _) = load_corpus(config)?;
    let dual = dual_timeline(&posts, config, &lexicon);
    Ok(CommandOutput {
        files: vec![
            OutputFile::new(
                "timeline_corporation.csv",
                export::timeline_csv(&config.corporation.name, dual.corporation()),
            ),
            OutputFile::new("timeline_ceo.csv", export::timeline_csv(&config.ceo.name, dual.ceo())),
            OutputFile::new("plot_data.csv", export::plot_data_csv(&dual)),
        ],
        message: format!("{} buckets per entity", config.window.num_buckets()),
    })
}

pub fn settings(config: &RunConfig) -> CorrelationSettings {
    CorrelationSettings {
        series: config.series,
        max_lag: config.options.max_lag,
        z_threshold: config.options.z_threshold,
    }
}

/// `correlation.json` comparing the corporation and CEO series.
pub fn run_correlate(config: &RunConfig) -> Result<CommandOutput, RunError> {
    let lexicon = load_lexicon(&config.lexicon)?;
    let (posts, _) = load_corpus(config)?;
    let dual = dual_timeline(&posts, config, &lexicon);
    let report = correlate(&dual, &settings(config))
        .map_err(|e| RunError::Data(format!("cannot correlate the {} series: {e}", config.series.as_str())))?;
    Ok(CommandOutput {
        files: vec![OutputFile::new("correlation.json", export::correlation_json(&report))],
        message: format!(
            "r = {:.4} over {} buckets; best lag {}; {} divergent buckets",
            report.pearson_r,
            report.n_buckets_used,
            report.best_lag,
            report.divergence_buckets.len()
        ),
    })
}

/// `dimensions.json` for both entities and a top-k retweet subsample for each.
pub fn run_classify(config: &RunConfig) -> Result<CommandOutput, RunError> {
    let cues = load_dimension_cues(config.dimensions.as_deref())?;
    let (posts, _) = load_corpus(config)?;
    let mut profiles = Vec::new();
    let mut files = Vec::new();
    for (profile, file) in [
        (&config.corporation, "subsample_corporation.csv"),
        (&config.ceo, "subsample_ceo.csv"),
    ] {
        let mine = entity_posts(&posts, profile, &config.window);
        profiles.push(dimension_profile(&mine, &cues, profile));
        files.push(OutputFile::new(
            file,
            export::subsample_csv(&top_retweeted(&mine, config.options.k), &cues),
        ));
    }
    files.insert(0, OutputFile::new("dimensions.json", export::dimensions_json(&profiles)));
    Ok(CommandOutput {
        files,
        message: format!(
            "classified {} corporation and {} CEO posts",
            profiles[0].total_posts, profiles[1].total_posts
        ),
    })
}

pub fn load_scenario(path: &Path) -> Result<ScenarioConfig, RunError> {
    let text = read_file(path)?;
    let scenario: ScenarioConfig = toml::from_str(&text).map_err(|e| {
        RunError::Config(ConfigError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    })?;
    scenario
        .validate()
        .map_err(|e| RunError::Config(ConfigError::Invalid(e.to_string())))?;
    Ok(scenario)
}

/// `corpus.ndjson` and its `truth.ndjson` sidecar.
pub fn run_gen(scenario: &ScenarioConfig) -> Result<CommandOutput, RunError> {
    let corpus = generate(scenario).map_err(|e| RunError::Config(ConfigError::Invalid(e.to_string())))?;
    let count = |kind| corpus.truth.iter().filter(|t| t.entity == kind).count();
    Ok(CommandOutput {
        message: format!(
            "seed {}: {} posts ({} corporation, {} CEO)",
            scenario.seed,
            corpus.posts.len(),
            count(EntityKind::Corporation),
            count(EntityKind::Ceo)
        ),
        files: vec![
            OutputFile::new("corpus.ndjson", export::corpus_ndjson(&corpus.posts)),
            OutputFile::new("truth.ndjson", export::truth_ndjson(&corpus.truth)),
        ],
    })
}
