//! Exit codes, overrides and file outputs of the `repute` binary.

mod common;

use common::*;

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&repute(&["--help"])), 0);
    assert_eq!(code(&repute(&["--version"])), 0);
    assert_eq!(code(&repute(&["score", "--help"])), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&repute(&[])), 1);
    assert_eq!(code(&repute(&["frobnicate"])), 1);
    assert_eq!(code(&repute(&["score", "--k", "many"])), 1);
    let missing = repute(&["score"]);
    assert_eq!(code(&missing), 1);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("--config"));
    assert_eq!(code(&repute(&["score", "--config", "/nonexistent/run.toml"])), 1);
}

#[test]
fn invalid_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "run.toml", &run_toml("c.ndjson", "", "").replace("[ceo]", "[boss]"));
    assert_eq!(code(&repute(&["score", "--config", cfg.to_str().unwrap()])), 1);
    let cfg = write(dir.path(), "run2.toml", &run_toml("c.ndjson", "", ""));
    write(dir.path(), "c.ndjson", "");
    assert_eq!(
        code(&repute(&["correlate", "--config", cfg.to_str().unwrap(), "--z-threshold", "0"])),
        1
    );
}

#[test]
fn empty_corpus_gives_header_only_scores() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c.ndjson", "");
    let cfg = write(dir.path(), "run.toml", &run_toml("c.ndjson", "", ""));
    let out = repute(&["score", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(read(dir.path().join("out/scores.csv")), "id,positive,negative,net,polarity\n");

    let out = repute(&["timeline", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let timeline = read(dir.path().join("out/timeline_corporation.csv"));
    assert_eq!(timeline.lines().count(), 17);
    assert!(timeline.lines().nth(1).unwrap().ends_with(",Acme,0,0,,0,0,0,"));

    // Every bucket is undefined, so there is nothing to correlate.
    let out = repute(&["correlate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("usable bucket pairs"));
    assert!(!dir.path().join("out/correlation.json").exists());
}

#[test]
fn missing_lexicon_file_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c.ndjson", "{\"id\":\"1\",\"ts\":1444003300,\"author\":\"a\",\"text\":\"acme is great\"}\n");
    let body = run_toml("c.ndjson", "", "") + "\n[lexicon]\nterms = \"missing_terms.tsv\"\n";
    let cfg = write(dir.path(), "run.toml", &body);
    let out = repute(&["score", "--config", cfg.to_str().unwrap()]);
    assert_ne!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing_terms.tsv"));
    assert!(files_in(&dir.path().join("out")).is_empty());
}

#[test]
fn malformed_lexicon_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c.ndjson", "");
    write(dir.path(), "terms.tsv", "good\t3\nfine\t7\n");
    let body = run_toml("c.ndjson", "", "") + "\n[lexicon]\nterms = \"terms.tsv\"\n";
    let cfg = write(dir.path(), "run.toml", &body);
    let out = repute(&["score", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(files_in(&dir.path().join("out")).is_empty());
}

#[test]
fn strict_flag_turns_skips_into_errors() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "c.ndjson",
        "{\"id\":\"1\",\"ts\":1444003300,\"author\":\"a\",\"text\":\"acme\"}\n{\"id\":\"2\",\"ts\":5}\n",
    );
    let cfg = write(dir.path(), "run.toml", &run_toml("c.ndjson", "", ""));
    let lenient = repute(&["score", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&lenient), 0);
    let summary: serde_json::Value = serde_json::from_str(&read(dir.path().join("out/score_summary.json"))).unwrap();
    assert_eq!(summary["ingest"]["skip_reasons"]["malformed"], 1);

    let out_dir = dir.path().join("strict_out");
    let strict = repute(&["score", "--config", cfg.to_str().unwrap(), "--strict", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&strict), 2);
    assert!(String::from_utf8_lossy(&strict.stderr).contains("record 2"));
    assert!(files_in(&out_dir).is_empty());
}

#[test]
fn gen_is_deterministic_and_counts_match() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write(dir.path(), "s.toml", &scenario_toml(9, 7, 3));
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let out = repute(&["gen", scenario.to_str().unwrap(), "--out", a.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("seed 9: 160 posts (112 corporation, 48 CEO)"));
    assert_eq!(code(&repute(&["gen", "--config", scenario.to_str().unwrap(), "--out", b.to_str().unwrap()])), 0);
    for f in ["corpus.ndjson", "truth.ndjson"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap());
    }
    assert_eq!(read(a.join("corpus.ndjson")).lines().count(), 160);
    assert_eq!(read(a.join("truth.ndjson")).lines().filter(|l| l.contains("\"CEO\"")).count(), 48);
}

#[test]
fn gen_rejects_invalid_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let bad = scenario_toml(1, 5, 5).replace("negative = 0.2, neutral = 0.3", "negative = 0.3, neutral = 0.3");
    let scenario = write(dir.path(), "s.toml", &bad);
    let out_dir = dir.path().join("out");
    let out = repute(&["gen", scenario.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("sum"));
    assert!(files_in(&out_dir).is_empty());
}

#[test]
fn zero_rate_scenario_gives_empty_files() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write(dir.path(), "s.toml", &scenario_toml(1, 0, 0));
    let out_dir = dir.path().join("out");
    assert_eq!(code(&repute(&["gen", scenario.to_str().unwrap(), "--out", out_dir.to_str().unwrap()])), 0);
    assert_eq!(read(out_dir.join("corpus.ndjson")), "");
    assert_eq!(read(out_dir.join("truth.ndjson")), "");
}

#[test]
fn score_reports_sidecar_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = generated_project(dir.path(), 5, 20, 10);
    let out = repute(&["score", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let summary: serde_json::Value = serde_json::from_str(&read(dir.path().join("out/score_summary.json"))).unwrap();
    assert_eq!(summary["agreement"]["n"], 480);
    assert!(summary["agreement"]["rate"].as_f64().unwrap() >= 0.95);
    assert_eq!(summary["entities"][0]["posts"], 320);
    assert_eq!(summary["entities"][1]["posts"], 160);
}

#[test]
fn classify_k_flag_overrides_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = generated_project(dir.path(), 5, 20, 10);
    assert_eq!(code(&repute(&["classify", "--config", cfg.to_str().unwrap()])), 0);
    assert_eq!(read(dir.path().join("out/subsample_corporation.csv")).lines().count(), 11);
    assert_eq!(code(&repute(&["classify", "--config", cfg.to_str().unwrap(), "--k", "0"])), 0);
    assert_eq!(
        read(dir.path().join("out/subsample_ceo.csv")),
        "rank,id,ts,author,retweets,labels,text\n"
    );
    let dims: serde_json::Value = serde_json::from_str(&read(dir.path().join("out/dimensions.json"))).unwrap();
    assert_eq!(dims[0]["total_posts"], 320);
    let rows = dims[0]["dimensions"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().any(|r| r["dimension"] == "UNCLASSIFIED"));
}

#[test]
fn correlate_flags_reach_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = generated_project(dir.path(), 5, 20, 10);
    let out = repute(&["correlate", "--config", cfg.to_str().unwrap(), "--max-lag", "2", "--z-threshold", "9"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&read(dir.path().join("out/correlation.json"))).unwrap();
    let lags: Vec<&String> = report["lag_profile"].as_object().unwrap().keys().collect();
    assert_eq!(lags.len(), 5);
    assert!(report["divergence_buckets"].as_array().unwrap().is_empty());
    assert_eq!(report["n_buckets_used"], 16);
}

#[test]
fn constant_series_is_a_data_error() {
    // One neutral post per bucket for each entity: both mean series are constant zero.
    let dir = tempfile::tempdir().unwrap();
    let mut corpus = String::new();
    for b in 0..16 {
        let ts = START + b * 604_800 + 10;
        corpus += &format!("{{\"id\":\"c{b}\",\"ts\":{ts},\"author\":\"x\",\"text\":\"acme update\"}}\n");
        corpus += &format!("{{\"id\":\"e{b}\",\"ts\":{ts},\"author\":\"x\",\"text\":\"jane doe update\"}}\n");
    }
    write(dir.path(), "c.ndjson", &corpus);
    let cfg = write(dir.path(), "run.toml", &run_toml("c.ndjson", "", ""));
    let out = repute(&["correlate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("constant"));
}

#[test]
fn csv_corpus_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "c.csv",
        "id,ts,author,text,retweets,repost_of\n1,1444003300,a,\"Acme, great \"\"stuff\"\"\",2,\n",
    );
    let cfg = write(dir.path(), "run.toml", &run_toml("c.csv", "", ""));
    assert_eq!(code(&repute(&["score", "--config", cfg.to_str().unwrap()])), 0);
    assert_eq!(
        read(dir.path().join("out/scores.csv")),
        "id,positive,negative,net,polarity\n1,3,-1,2,POSITIVE\n"
    );
}
