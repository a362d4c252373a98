use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub const SHIPPED_TERMS: &str = include_str!("../../data/terms.tsv");
pub const SHIPPED_BOOSTERS: &str = include_str!("../../data/boosters.tsv");
pub const SHIPPED_NEGATORS: &str = include_str!("../../data/negators.txt");
pub const SHIPPED_EMOTICONS: &str = include_str!("../../data/emoticons.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexiconList {
    Terms,
    Boosters,
    Negators,
    Emoticons,
}

impl fmt::Display for LexiconList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LexiconList::Terms => "terms",
            LexiconList::Boosters => "boosters",
            LexiconList::Negators => "negators",
            LexiconList::Emoticons => "emoticons",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("term {term:?} appears more than once across terms, boosters and negators")]
    DuplicateTerm { term: String },
    #[error("{list} line {line}: value {value} out of range")]
    StrengthOutOfRange {
        list: LexiconList,
        line: usize,
        value: i64,
    },
    #[error("{list} line {line}: malformed entry")]
    MalformedLine { list: LexiconList, line: usize },
}

/// Raw text of the four lexicon files.
#[derive(Debug, Clone, Copy)]
pub struct LexiconSources<'a> {
    pub terms: &'a str,
    pub boosters: &'a str,
    pub negators: &'a str,
    pub emoticons: &'a str,
}

impl LexiconSources<'static> {
    pub fn shipped() -> Self {
        LexiconSources {
            terms: SHIPPED_TERMS,
            boosters: SHIPPED_BOOSTERS,
            negators: SHIPPED_NEGATORS,
            emoticons: SHIPPED_EMOTICONS,
        }
    }
}

/// Immutable dual-polarity sentiment lexicon.
///
/// Term strengths are in `-5..=-2` or `2..=5`; `±1` is the neutral baseline
/// and is never stored. A term ending in `*` is a wildcard stem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentimentLexicon {
    terms: BTreeMap<String, i8>,
    /// Wildcard stems, longest first.
    stems: Vec<(String, i8)>,
    boosters: BTreeMap<String, i8>,
    negators: BTreeSet<String>,
    emoticons: BTreeMap<String, i8>,
    /// Emoticon literals, longest first, for greedy matching.
    emoticon_order: Vec<String>,
}

fn strength_ok(v: i64) -> bool {
    (2..=5).contains(&v) || (-5..=-2).contains(&v)
}

fn delta_ok(v: i64) -> bool {
    matches!(v, -2 | -1 | 1 | 2)
}

fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn split_entry(line: &str, list: LexiconList, n: usize) -> Result<(&str, i64), LexiconError> {
    let malformed = LexiconError::MalformedLine { list, line: n };
    let mut fields = line.split('\t');
    let (Some(key), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
        return Err(malformed);
    };
    let key = key.trim();
    if key.is_empty() || key.chars().any(char::is_whitespace) {
        return Err(malformed);
    }
    let value = value.trim().parse::<i64>().map_err(|_| malformed)?;
    Ok((key, value))
}

/// Accumulates entries and enforces the cross-list invariants.
#[derive(Debug, Default)]
pub struct LexiconBuilder {
    seen: BTreeSet<String>,
    terms: BTreeMap<String, i8>,
    boosters: BTreeMap<String, i8>,
    negators: BTreeSet<String>,
    emoticons: BTreeMap<String, i8>,
    error: Option<LexiconError>,
}

impl LexiconBuilder {
    fn claim(&mut self, key: &str) -> Result<(), LexiconError> {
        if !self.seen.insert(key.to_string()) {
            return Err(LexiconError::DuplicateTerm {
                term: key.to_string(),
            });
        }
        Ok(())
    }

    fn add_term(&mut self, term: &str, strength: i64, line: usize) -> Result<(), LexiconError> {
        let term = term.to_lowercase();
        let malformed = LexiconError::MalformedLine {
            list: LexiconList::Terms,
            line,
        };
        if let Some(pos) = term.find('*') {
            if pos == 0 || pos != term.len() - 1 {
                return Err(malformed);
            }
        }
        if term.is_empty() || term.chars().any(char::is_whitespace) {
            return Err(malformed);
        }
        if !strength_ok(strength) {
            return Err(LexiconError::StrengthOutOfRange {
                list: LexiconList::Terms,
                line,
                value: strength,
            });
        }
        self.claim(&term)?;
        self.terms.insert(term, strength as i8);
        Ok(())
    }

    fn add_booster(&mut self, term: &str, delta: i64, line: usize) -> Result<(), LexiconError> {
        let term = term.to_lowercase();
        if term.is_empty() || term.contains('*') || term.chars().any(char::is_whitespace) {
            return Err(LexiconError::MalformedLine {
                list: LexiconList::Boosters,
                line,
            });
        }
        if !delta_ok(delta) {
            return Err(LexiconError::StrengthOutOfRange {
                list: LexiconList::Boosters,
                line,
                value: delta,
            });
        }
        self.claim(&term)?;
        self.boosters.insert(term, delta as i8);
        Ok(())
    }

    fn add_negator(&mut self, term: &str, line: usize) -> Result<(), LexiconError> {
        let term = term.trim().to_lowercase();
        if term.is_empty() || term.contains('*') || term.chars().any(char::is_whitespace) {
            return Err(LexiconError::MalformedLine {
                list: LexiconList::Negators,
                line,
            });
        }
        self.claim(&term)?;
        self.negators.insert(term);
        Ok(())
    }

    fn add_emoticon(&mut self, literal: &str, strength: i64, line: usize) -> Result<(), LexiconError> {
        if literal.is_empty() || literal.chars().any(char::is_whitespace) {
            return Err(LexiconError::MalformedLine {
                list: LexiconList::Emoticons,
                line,
            });
        }
        if !strength_ok(strength) {
            return Err(LexiconError::StrengthOutOfRange {
                list: LexiconList::Emoticons,
                line,
                value: strength,
            });
        }
        if self.emoticons.insert(literal.to_string(), strength as i8).is_some() {
            return Err(LexiconError::DuplicateTerm {
                term: literal.to_string(),
            });
        }
        Ok(())
    }

    fn record(&mut self, result: Result<(), LexiconError>) {
        if self.error.is_none() {
            self.error = result.err();
        }
    }

    pub fn term(mut self, term: &str, strength: i64) -> Self {
        let r = self.add_term(term, strength, 0);
        self.record(r);
        self
    }

    pub fn booster(mut self, term: &str, delta: i64) -> Self {
        let r = self.add_booster(term, delta, 0);
        self.record(r);
        self
    }

    pub fn negator(mut self, term: &str) -> Self {
        let r = self.add_negator(term, 0);
        self.record(r);
        self
    }

    pub fn emoticon(mut self, literal: &str, strength: i64) -> Self {
        let r = self.add_emoticon(literal, strength, 0);
        self.record(r);
        self
    }

    pub fn build(self) -> Result<SentimentLexicon, LexiconError> {
        if let Some(err) = self.error {
            return Err(err);
        }
        Ok(SentimentLexicon::assemble(
            self.terms,
            self.boosters,
            self.negators,
            self.emoticons,
        ))
    }
}

impl SentimentLexicon {
    pub fn builder() -> LexiconBuilder {
        LexiconBuilder::default()
    }

    /// Parses the four lexicon files. Errors carry 1-based line numbers.
    pub fn parse(sources: LexiconSources<'_>) -> Result<Self, LexiconError> {
        let mut b = LexiconBuilder::default();
        for (n, line) in content_lines(sources.terms) {
            let (term, strength) = split_entry(line, LexiconList::Terms, n)?;
            b.add_term(term, strength, n)?;
        }
        for (n, line) in content_lines(sources.boosters) {
            let (term, delta) = split_entry(line, LexiconList::Boosters, n)?;
            b.add_booster(term, delta, n)?;
        }
        for (n, line) in content_lines(sources.negators) {
            b.add_negator(line, n)?;
        }
        for (n, line) in content_lines(sources.emoticons) {
            let (literal, strength) = split_entry(line, LexiconList::Emoticons, n)?;
            b.add_emoticon(literal, strength, n)?;
        }
        b.build()
    }

    /// The lexicon bundled with the crate.
    pub fn shipped() -> Self {
        SentimentLexicon::parse(LexiconSources::shipped()).expect("bundled lexicon is valid")
    }

    fn assemble(
        mut terms: BTreeMap<String, i8>,
        boosters: BTreeMap<String, i8>,
        negators: BTreeSet<String>,
        emoticons: BTreeMap<String, i8>,
    ) -> Self {
        let wildcard: Vec<String> = terms.keys().filter(|t| t.ends_with('*')).cloned().collect();
        let mut stems: Vec<(String, i8)> = wildcard
            .into_iter()
            .map(|t| {
                let s = terms.remove(&t).unwrap_or_default();
                (t.trim_end_matches('*').to_string(), s)
            })
            .collect();
        stems.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        let mut emoticon_order: Vec<String> = emoticons.keys().cloned().collect();
        emoticon_order.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        SentimentLexicon {
            terms,
            stems,
            boosters,
            negators,
            emoticons,
            emoticon_order,
        }
    }

    /// Same lexicon with every term and emoticon strength sign-flipped.
    pub fn inverted(&self) -> Self {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|s| *s = -*s);
        out.stems.iter_mut().for_each(|(_, s)| *s = -*s);
        out.emoticons.values_mut().for_each(|s| *s = -*s);
        out
    }

    /// Strength of a lowercase word: exact entry first, then the longest wildcard stem.
    pub fn term_strength(&self, word: &str) -> Option<i8> {
        if let Some(&s) = self.terms.get(word) {
            return Some(s);
        }
        self.stems
            .iter()
            .find(|(stem, _)| word.starts_with(stem.as_str()))
            .map(|&(_, s)| s)
    }

    pub fn booster(&self, word: &str) -> Option<i8> {
        self.boosters.get(word).copied()
    }

    pub fn is_negator(&self, word: &str) -> bool {
        self.negators.contains(word)
    }

    pub fn emoticon(&self, literal: &str) -> Option<i8> {
        self.emoticons.get(literal).copied()
    }

    pub(crate) fn emoticons_longest_first(&self) -> impl Iterator<Item = &str> {
        self.emoticon_order.iter().map(String::as_str)
    }

    /// Exact and wildcard terms (wildcards with their trailing `*`).
    pub fn terms(&self) -> impl Iterator<Item = (String, i8)> + '_ {
        self.terms.iter().map(|(t, &s)| (t.clone(), s)).chain(
            self.stems
                .iter()
                .map(|(stem, s)| (alloc::format!("{stem}*"), *s)),
        )
    }

    pub fn boosters(&self) -> impl Iterator<Item = (&str, i8)> {
        self.boosters.iter().map(|(t, &d)| (t.as_str(), d))
    }

    pub fn negators(&self) -> impl Iterator<Item = &str> {
        self.negators.iter().map(String::as_str)
    }
}
