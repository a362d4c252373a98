use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use repute::config::{ConfigError, Overrides, RunConfig};
use repute::output::write_outputs;
use repute::pipeline::{self, CommandOutput, RunError};

/// Measure and compare the social-media reputation of a corporation and its CEO.
#[derive(Parser)]
#[command(name = "repute", version)]
struct Cli {
    /// Run configuration (TOML).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory; overrides the config file.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Abort on the first malformed corpus record.
    #[arg(long, global = true)]
    strict: bool,
    /// Weight each post by 1 + its retweet count in bucket means.
    #[arg(long, global = true)]
    weight_by_retweets: bool,
    /// Posts per entity in the retweet-ranked subsample.
    #[arg(long, global = true, value_name = "INT")]
    k: Option<usize>,
    /// Largest lag, in buckets, of the lag profile.
    #[arg(long, global = true, value_name = "INT")]
    max_lag: Option<usize>,
    /// Divergence threshold on the difference of z-scores.
    #[arg(long, global = true, value_name = "REAL")]
    z_threshold: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score every post and summarize polarity per entity.
    Score,
    /// Bucketed sentiment, mention and reputation-index timelines.
    Timeline,
    /// Correlation, lag profile and divergent buckets of the two timelines.
    Correlate,
    /// Reputation dimension profiles and retweet-ranked subsamples.
    Classify,
    /// Generate a synthetic corpus and ground-truth sidecar from a scenario file.
    Gen {
        /// Scenario file (TOML); `--config` is used when omitted.
        scenario: Option<PathBuf>,
    },
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides {
            out: self.out.clone(),
            strict: self.strict,
            weight_by_retweets: self.weight_by_retweets,
            k: self.k,
            max_lag: self.max_lag,
            z_threshold: self.z_threshold,
        }
    }

    fn run_config(&self) -> Result<RunConfig, RunError> {
        let path = self
            .config
            .as_ref()
            .ok_or_else(|| ConfigError::Invalid("--config <PATH> is required".into()))?;
        let mut config = RunConfig::load(path)?;
        config.apply(&self.overrides())?;
        Ok(config)
    }
}

fn run(cli: &Cli) -> Result<(PathBuf, CommandOutput), RunError> {
    if let Command::Gen { scenario } = &cli.command {
        let path = scenario
            .as_ref()
            .or(cli.config.as_ref())
            .ok_or_else(|| ConfigError::Invalid("a scenario file is required".into()))?;
        let scenario = pipeline::load_scenario(path)?;
        let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("out"));
        return Ok((out, pipeline::run_gen(&scenario)?));
    }
    let config = cli.run_config()?;
    let output = match cli.command {
        Command::Score => pipeline::run_score(&config)?,
        Command::Timeline => pipeline::run_timeline(&config)?,
        Command::Correlate => pipeline::run_correlate(&config)?,
        Command::Classify => pipeline::run_classify(&config)?,
        Command::Gen { .. } => unreachable!("handled above"),
    };
    Ok((config.options.out, output))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok((dir, output)) => {
            if let Err(e) = write_outputs(&dir, &output.files) {
                eprintln!("error: cannot write outputs to {}: {e}", dir.display());
                return ExitCode::from(2);
            }
            println!("{}", output.message);
            for f in &output.files {
                println!("wrote {}", dir.join(&f.name).display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
