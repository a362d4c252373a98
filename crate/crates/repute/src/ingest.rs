//! Reading post corpora from NDJSON and CSV.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use repute_core::Post;
use serde::Deserialize;
use thiserror::Error;

pub const SKIP_MALFORMED: &str = "malformed";
pub const SKIP_DUPLICATE_ID: &str = "duplicate_id";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ndjson,
    Csv,
}

impl Format {
    /// Guesses from the file extension: `.csv` is CSV, `.ndjson`, `.jsonl` and `.json` are NDJSON.
    pub fn from_path(path: &Path) -> Option<Format> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "csv" => Some(Format::Csv),
            "ndjson" | "jsonl" | "json" => Some(Format::Ndjson),
            _ => None,
        }
    }

    pub fn from_name(name: &str) -> Option<Format> {
        match name.to_ascii_lowercase().as_str() {
            "csv" => Some(Format::Csv),
            "ndjson" | "jsonl" => Some(Format::Ndjson),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IngestReport {
    pub records_read: usize,
    pub records_accepted: usize,
    pub records_skipped: usize,
    pub skip_reasons: BTreeMap<String, usize>,
}

impl IngestReport {
    fn skip(&mut self, reason: &str) {
        self.records_skipped += 1;
        *self.skip_reasons.entry(reason.to_string()).or_default() += 1;
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    /// Only raised in strict mode. `record` is 1-based and counts data records, not header lines.
    #[error("record {record} (line {line}) is malformed: {reason}")]
    Malformed { record: usize, line: u64, reason: String },
    #[error("cannot read corpus: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Deserialize)]
struct RawRecord {
    id: String,
    ts: i64,
    author: String,
    text: String,
    #[serde(default)]
    retweets: Option<u64>,
    #[serde(default)]
    repost_of: Option<String>,
}

impl RawRecord {
    fn into_post(self) -> Result<Post, String> {
        if self.id.is_empty() {
            return Err("empty id".into());
        }
        let mut post = Post::new(self.id, self.ts, self.author, self.text).with_retweets(self.retweets.unwrap_or(0));
        if let Some(original) = self.repost_of.filter(|r| !r.is_empty()) {
            post = post.repost_of(original);
        }
        Ok(post)
    }
}

struct Collector {
    strict: bool,
    seen: BTreeSet<String>,
    posts: Vec<Post>,
    report: IngestReport,
}

impl Collector {
    fn accept(&mut self, record: usize, line: u64, parsed: Result<RawRecord, String>) -> Result<(), IngestError> {
        self.report.records_read += 1;
        match parsed.and_then(RawRecord::into_post) {
            Ok(post) => {
                if self.seen.insert(post.id.clone()) {
                    self.report.records_accepted += 1;
                    self.posts.push(post);
                } else {
                    self.report.skip(SKIP_DUPLICATE_ID);
                }
                Ok(())
            }
            Err(reason) if self.strict => Err(IngestError::Malformed { record, line, reason }),
            Err(_) => {
                self.report.skip(SKIP_MALFORMED);
                Ok(())
            }
        }
    }
}

/// Reads every record of `source`. Duplicate ids keep their first occurrence.
///
/// With `strict`, the first malformed record aborts the read; otherwise it is
/// skipped and counted under `"malformed"`. Blank NDJSON lines are ignored
/// and are not records.
pub fn read_posts<R: Read>(source: R, format: Format, strict: bool) -> Result<(Vec<Post>, IngestReport), IngestError> {
    let mut c = Collector {
        strict,
        seen: BTreeSet::new(),
        posts: Vec::new(),
        report: IngestReport::default(),
    };
    match format {
        Format::Ndjson => {
            let mut record = 0;
            for (i, line) in BufReader::new(source).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                record += 1;
                let parsed = serde_json::from_str::<RawRecord>(&line).map_err(|e| e.to_string());
                c.accept(record, i as u64 + 1, parsed)?;
            }
        }
        Format::Csv => {
            let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
            let headers = match reader.byte_headers() {
                Ok(h) => h.clone(),
                Err(e) => match e.kind() {
                    csv::ErrorKind::Io(_) => return Err(IngestError::Io(std::io::Error::other(e.to_string()))),
                    _ => csv::ByteRecord::new(),
                },
            };
            let mut raw = csv::ByteRecord::new();
            let mut record = 0;
            loop {
                let line = reader.position().line();
                match reader.read_byte_record(&mut raw) {
                    Ok(false) => break,
                    Ok(true) => {
                        record += 1;
                        let line = raw.position().map_or(line, |p| p.line());
                        let parsed = raw.deserialize::<RawRecord>(Some(&headers)).map_err(|e| e.to_string());
                        c.accept(record, line, parsed)?;
                    }
                    Err(e) => {
                        if let csv::ErrorKind::Io(_) = e.kind() {
                            return Err(IngestError::Io(std::io::Error::other(e.to_string())));
                        }
                        record += 1;
                        c.accept(record, line + 1, Err(e.to_string()))?;
                    }
                }
            }
        }
    }
    Ok((c.posts, c.report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_stream() {
        for format in [Format::Ndjson, Format::Csv] {
            let (posts, report) = read_posts(&b""[..], format, true).unwrap();
            assert!(posts.is_empty());
            assert_eq!(report, IngestReport::default());
        }
    }

    #[test]
    fn duplicate_ids_first_wins() {
        let src = concat!(
            r#"{"id":"1","ts":10,"author":"a","text":"hello @bob"}"#,
            "\n",
            r#"{"id":"2","ts":11,"author":"b","text":"x","retweets":4}"#,
            "\n\n",
            r#"{"id":"1","ts":12,"author":"c","text":"again"}"#,
            "\n",
            r#"{"id":"3","ts":13,"author":"d","text":"y","repost_of":"2"}"#,
            "\n",
        );
        let (posts, report) = read_posts(src.as_bytes(), Format::Ndjson, false).unwrap();
        assert_eq!(posts.iter().map(|p| p.id.as_str()).collect::<Vec<_>>(), ["1", "2", "3"]);
        assert_eq!(posts[0].text, "hello @bob");
        assert_eq!(posts[0].mentions, ["bob"]);
        assert_eq!(posts[1].retweet_count, 4);
        assert_eq!(posts[2].repost_of.as_deref(), Some("2"));
        assert!(posts[2].is_repost);
        assert_eq!(report.records_read, 4);
        assert_eq!(report.records_accepted, 3);
        assert_eq!(report.records_skipped, 1);
        assert_eq!(report.skip_reasons.get(SKIP_DUPLICATE_ID), Some(&1));
    }

    #[test]
    fn strict_names_the_record() {
        let src = concat!(
            r#"{"id":"1","ts":10,"author":"a","text":"ok"}"#,
            "\n",
            r#"{"id":"2","ts":11,"author":"b"}"#,
            "\n",
        );
        match read_posts(src.as_bytes(), Format::Ndjson, true) {
            Err(IngestError::Malformed { record, line, reason }) => {
                assert_eq!((record, line), (2, 2));
                assert!(reason.contains("text"), "{reason}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let (posts, report) = read_posts(src.as_bytes(), Format::Ndjson, false).unwrap();
        assert_eq!(posts.len(), 1);
        assert_eq!(report.skip_reasons.get(SKIP_MALFORMED), Some(&1));
        assert_eq!(report.records_read, report.records_accepted + report.records_skipped);
    }

    #[test]
    fn csv_records() {
        let src = "id,ts,author,text,retweets,repost_of\n\
                   1,10,a,\"hi, \"\"you\"\"\",3,\n\
                   2,11,b,plain,,1\n\
                   3,notanumber,c,bad,0,\n";
        let (posts, report) = read_posts(src.as_bytes(), Format::Csv, false).unwrap();
        assert_eq!(posts.len(), 2);
        assert_eq!(posts[0].text, "hi, \"you\"");
        assert_eq!(posts[0].retweet_count, 3);
        assert_eq!(posts[0].repost_of, None);
        assert_eq!(posts[1].retweet_count, 0);
        assert_eq!(posts[1].repost_of.as_deref(), Some("1"));
        assert_eq!(report.skip_reasons.get(SKIP_MALFORMED), Some(&1));
        match read_posts(src.as_bytes(), Format::Csv, true) {
            Err(IngestError::Malformed { record, line, .. }) => assert_eq!((record, line), (3, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn csv_optional_columns() {
        let src = "id,ts,author,text\n1,5,a,hello\n";
        let (posts, _) = read_posts(src.as_bytes(), Format::Csv, true).unwrap();
        assert_eq!(posts[0].retweet_count, 0);
    }

    #[test]
    fn format_guess() {
        assert_eq!(Format::from_path(Path::new("a/b.CSV")), Some(Format::Csv));
        assert_eq!(Format::from_path(Path::new("b.ndjson")), Some(Format::Ndjson));
        assert_eq!(Format::from_path(Path::new("b")), None);
    }
}
