//! File formats, run configuration and command pipelines for the `repute`
//! command-line tool. The analysis itself lives in `repute-core`.

pub mod config;
pub mod export;
pub mod ingest;
pub mod output;
pub mod pipeline;

pub use config::{ConfigError, Overrides, RunConfig};
pub use ingest::{read_posts, Format, IngestError, IngestReport};
pub use pipeline::{CommandOutput, OutputFile, RunError};
