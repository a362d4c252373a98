#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const START: i64 = 1_444_003_200;

pub fn scenario_toml(seed: u64, corp_rate: u32, ceo_rate: u32) -> String {
    format!(
        r#"seed = {seed}

[window]
start = {START}
weeks = 16

[corporation]
posts_per_bucket = {corp_rate}
mention_rate = 0.3
mix = {{ positive = 0.5, negative = 0.2, neutral = 0.3 }}
profile = {{ name = "Acme", kind = "CORPORATION", keywords = ["acme"], handles = ["acmecorp"] }}

[ceo]
posts_per_bucket = {ceo_rate}
mention_rate = 0.4
mix = {{ positive = 0.4, negative = 0.2, neutral = 0.4 }}
profile = {{ name = "Jane Doe", kind = "CEO", keywords = ["jane doe"], handles = ["janedoe"] }}

[crisis]
entity = "CORPORATION"
start_bucket = 8
duration_buckets = 3
negative_shift = 0.5
"#
    )
}

pub fn run_toml(corpus: &str, extra_top: &str, extra_options: &str) -> String {
    format!(
        r#"corpus = "{corpus}"
{extra_top}

[window]
start = {START}
weeks = 16

[corporation]
name = "Acme"
keywords = ["acme"]
handles = ["acmecorp"]

[ceo]
name = "Jane Doe"
keywords = ["jane doe"]
handles = ["janedoe"]

[options]
out = "out"
{extra_options}
"#
    )
}

pub fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

pub fn repute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repute")).args(args).output().unwrap()
}

pub fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

pub fn read(p: impl AsRef<Path>) -> String {
    fs::read_to_string(p).unwrap()
}

/// Generates a corpus into `dir/out` and writes `dir/run.toml` pointing at it.
pub fn generated_project(dir: &Path, seed: u64, corp_rate: u32, ceo_rate: u32) -> PathBuf {
    let scenario = write(dir, "scenario.toml", &scenario_toml(seed, corp_rate, ceo_rate));
    let out = repute(&["gen", scenario.to_str().unwrap(), "--out", dir.join("gen").to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    write(
        dir,
        "run.toml",
        &run_toml("gen/corpus.ndjson", "truth = \"gen/truth.ndjson\"", "k = 10"),
    )
}

pub fn files_in(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = match fs::read_dir(dir) {
        Ok(rd) => rd.map(|e| e.unwrap().file_name().into_string().unwrap()).collect(),
        Err(_) => Vec::new(),
    };
    names.sort();
    names
}
