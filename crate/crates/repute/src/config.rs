//! Run configuration: a TOML file plus command-line overrides.
//!
//! ```toml
//! corpus = "posts.ndjson"      # paths are relative to this file
//! format = "ndjson"            # optional; guessed from the extension
//! truth = "truth.ndjson"       # optional ground-truth sidecar for `score`
//! dimensions = "cues.tsv"      # optional; shipped cues otherwise
//! series = "mean_net"          # mean_net | rep_index | mention_count | post_count
//!
//! [lexicon]                    # each entry optional; shipped list otherwise
//! terms = "terms.tsv"
//!
//! [window]
//! start = 1443657600
//! weeks = 16
//!
//! [corporation]
//! name = "Acme"
//! keywords = ["acme"]
//! handles = ["acmecorp"]
//!
//! [ceo]
//! name = "Jane Doe"
//! keywords = ["jane doe"]
//!
//! [options]
//! out = "out"
//! k = 100
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use repute_core::analytics::{Series, DEFAULT_MAX_LAG, DEFAULT_Z_THRESHOLD};
use repute_core::{EntityKind, EntityProfile, StudyWindow};
use serde::Deserialize;
use thiserror::Error;

use crate::ingest::Format;

pub const DEFAULT_K: usize = 100;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LexiconPaths {
    pub terms: Option<PathBuf>,
    pub boosters: Option<PathBuf>,
    pub negators: Option<PathBuf>,
    pub emoticons: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub strict: bool,
    pub weight_by_retweets: bool,
    pub k: usize,
    pub max_lag: usize,
    pub z_threshold: f64,
    pub out: PathBuf,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            strict: false,
            weight_by_retweets: false,
            k: DEFAULT_K,
            max_lag: DEFAULT_MAX_LAG,
            z_threshold: DEFAULT_Z_THRESHOLD,
            out: PathBuf::from("out"),
        }
    }
}

/// Values given on the command line; each one set replaces the file's value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub strict: bool,
    pub weight_by_retweets: bool,
    pub k: Option<usize>,
    pub max_lag: Option<usize>,
    pub z_threshold: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub corpus: PathBuf,
    pub format: Format,
    pub truth: Option<PathBuf>,
    pub lexicon: LexiconPaths,
    pub dimensions: Option<PathBuf>,
    pub corporation: EntityProfile,
    pub ceo: EntityProfile,
    pub window: StudyWindow,
    pub series: Series,
    pub options: RunOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    corpus: PathBuf,
    format: Option<String>,
    truth: Option<PathBuf>,
    #[serde(default)]
    lexicon: FileLexicon,
    dimensions: Option<PathBuf>,
    series: Option<String>,
    window: StudyWindow,
    corporation: FileEntity,
    ceo: FileEntity,
    #[serde(default)]
    options: FileOptions,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileLexicon {
    terms: Option<PathBuf>,
    boosters: Option<PathBuf>,
    negators: Option<PathBuf>,
    emoticons: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileEntity {
    name: String,
    keywords: Vec<String>,
    #[serde(default)]
    handles: Vec<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileOptions {
    strict: Option<bool>,
    weight_by_retweets: Option<bool>,
    k: Option<usize>,
    max_lag: Option<usize>,
    z_threshold: Option<f64>,
    out: Option<PathBuf>,
}

fn entity(block: FileEntity, kind: EntityKind) -> Result<EntityProfile, ConfigError> {
    EntityProfile::new(block.name, kind, block.keywords, block.handles)
        .map_err(|e| ConfigError::Invalid(format!("{} block: {e}", kind.as_str().to_ascii_lowercase())))
}

impl RunConfig {
    /// Parses `text` as a config file located in `base_dir`, against which relative paths resolve.
    pub fn from_toml(text: &str, base_dir: &Path, origin: &Path) -> Result<RunConfig, ConfigError> {
        let file: FileConfig = toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })?;
        let resolve = |p: PathBuf| if p.is_absolute() { p } else { base_dir.join(p) };
        let corpus = resolve(file.corpus);
        let format = match &file.format {
            Some(name) => {
                Format::from_name(name).ok_or_else(|| ConfigError::Invalid(format!("unknown corpus format {name:?}")))?
            }
            None => Format::from_path(&corpus).ok_or_else(|| {
                ConfigError::Invalid(format!(
                    "cannot tell the format of {}; set `format`",
                    corpus.display()
                ))
            })?,
        };
        let series = match &file.series {
            Some(name) => {
                Series::from_name(name).ok_or_else(|| ConfigError::Invalid(format!("unknown series {name:?}")))?
            }
            None => Series::default(),
        };
        let defaults = RunOptions::default();
        let o = file.options;
        let options = RunOptions {
            strict: o.strict.unwrap_or(defaults.strict),
            weight_by_retweets: o.weight_by_retweets.unwrap_or(defaults.weight_by_retweets),
            k: o.k.unwrap_or(defaults.k),
            max_lag: o.max_lag.unwrap_or(defaults.max_lag),
            z_threshold: o.z_threshold.unwrap_or(defaults.z_threshold),
            out: resolve(o.out.unwrap_or(defaults.out)),
        };
        let config = RunConfig {
            corpus,
            format,
            truth: file.truth.map(resolve),
            lexicon: LexiconPaths {
                terms: file.lexicon.terms.map(resolve),
                boosters: file.lexicon.boosters.map(resolve),
                negators: file.lexicon.negators.map(resolve),
                emoticons: file.lexicon.emoticons.map(resolve),
            },
            dimensions: file.dimensions.map(resolve),
            corporation: entity(file.corporation, EntityKind::Corporation)?,
            ceo: entity(file.ceo, EntityKind::Ceo)?,
            window: file.window,
            series,
            options,
        };
        config.check_options()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        RunConfig::from_toml(&text, base, path)
    }

    /// Applies command-line values. Paths given on the command line are taken as is.
    pub fn apply(&mut self, overrides: &Overrides) -> Result<(), ConfigError> {
        let o = &mut self.options;
        if let Some(out) = &overrides.out {
            o.out = out.clone();
        }
        o.strict |= overrides.strict;
        o.weight_by_retweets |= overrides.weight_by_retweets;
        if let Some(k) = overrides.k {
            o.k = k;
        }
        if let Some(l) = overrides.max_lag {
            o.max_lag = l;
        }
        if let Some(z) = overrides.z_threshold {
            o.z_threshold = z;
        }
        self.check_options()
    }

    fn check_options(&self) -> Result<(), ConfigError> {
        let z = self.options.z_threshold;
        if !(z.is_finite() && z > 0.0) {
            return Err(ConfigError::Invalid(format!("z_threshold must be positive, got {z}")));
        }
        Ok(())
    }
}
