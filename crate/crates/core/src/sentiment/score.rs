use alloc::string::String;
use alloc::vec::Vec;

use super::lexicon::SentimentLexicon;
use super::tokenize::{tokenize, Token, TokenKind};
use crate::domain::{Post, SentimentScore};
use crate::ingest::preprocess;

const MIN_MAGNITUDE: i8 = 1;
const MAX_MAGNITUDE: i8 = 5;

/// Toggles for the scoring pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoreOptions {
    /// Boost all-uppercase sentiment words by one.
    pub capitalization: bool,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        ScoreOptions {
            capitalization: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoredPost {
    pub post: Post,
    pub score: SentimentScore,
}

fn clamp(m: i8) -> i8 {
    m.clamp(MIN_MAGNITUDE, MAX_MAGNITUDE)
}

/// Collapses runs of three or more identical letters to two.
/// Returns the collapsed word and whether anything was collapsed.
fn collapse_elongation(word: &str) -> (String, bool) {
    let chars: Vec<char> = word.chars().collect();
    let mut out = String::with_capacity(word.len());
    let mut elongated = false;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let run = chars[i..].iter().take_while(|&&d| d == c).count();
        if c.is_alphabetic() && run >= 3 {
            elongated = true;
            out.push(c);
            out.push(c);
        } else {
            (0..run).for_each(|_| out.push(c));
        }
        i += run;
    }
    (out, elongated)
}

fn is_shouted(word: &str) -> bool {
    word.chars().count() >= 2
        && word.chars().any(char::is_uppercase)
        && !word.chars().any(char::is_lowercase)
}

fn lowered(token: &Token<'_>) -> String {
    token.text.to_lowercase()
}

/// Signed strength contributed by the token at `idx` of a sentence, if any.
fn token_strength(
    sentence: &[Token<'_>],
    idx: usize,
    lexicon: &SentimentLexicon,
    options: ScoreOptions,
) -> Option<i8> {
    let token = &sentence[idx];
    match token.kind {
        TokenKind::Emoticon => return lexicon.emoticon(token.text),
        TokenKind::Mention | TokenKind::Tag => return None,
        TokenKind::Word => {}
    }
    let (lookup, elongated) = collapse_elongation(&lowered(token));
    let base = lexicon.term_strength(&lookup)?;
    let mut sign = base.signum();
    let mut magnitude = base.abs();

    if elongated {
        magnitude = clamp(magnitude + 1);
    }
    if options.capitalization && is_shouted(token.text) {
        magnitude = clamp(magnitude + 1);
    }
    if let Some(delta) = idx
        .checked_sub(1)
        .and_then(|p| lexicon.booster(&lowered(&sentence[p])))
    {
        magnitude = clamp(magnitude + delta);
    }
    let negated = (1..=2)
        .filter_map(|back| idx.checked_sub(back))
        .any(|p| lexicon.is_negator(&lowered(&sentence[p])));
    if negated {
        sign = -sign;
        magnitude = clamp(magnitude - 1);
    }
    Some(sign * magnitude)
}

pub fn score_text(text: &str, lexicon: &SentimentLexicon) -> SentimentScore {
    score_text_with(text, lexicon, ScoreOptions::default())
}

/// Scores text on the dual scale.
///
/// Each sentiment word runs through elongation, capitalization, booster and
/// negation adjustments in that order, clamping the magnitude to `1..=5`
/// after every step. Emoticons keep their lexicon strength. A sentence's
/// positive score is the strongest positive token (at least 1) and its
/// negative score the strongest negative token (at most -1); the text takes
/// the extremes over its sentences.
pub fn score_text_with(text: &str, lexicon: &SentimentLexicon, options: ScoreOptions) -> SentimentScore {
    let mut positive = 1i8;
    let mut negative = -1i8;
    for sentence in tokenize(text, lexicon) {
        for idx in 0..sentence.len() {
            match token_strength(&sentence, idx, lexicon, options) {
                Some(s) if s > 0 => positive = positive.max(s),
                Some(s) if s < 0 => negative = negative.min(s),
                _ => {}
            }
        }
    }
    SentimentScore::new(positive, negative).expect("magnitudes are clamped to 1..=5")
}

/// Scores each post's preprocessed text, preserving order.
pub fn score_posts(posts: &[Post], lexicon: &SentimentLexicon) -> Vec<ScoredPost> {
    posts
        .iter()
        .map(|post| ScoredPost {
            score: score_text(&preprocess(post).text, lexicon),
            post: post.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Polarity;

    fn lex() -> SentimentLexicon {
        SentimentLexicon::builder()
            .term("good", 3)
            .term("terrible", -4)
            .booster("very", 1)
            .negator("not")
            .build()
            .unwrap()
    }

    fn pair(text: &str) -> (i8, i8) {
        let s = score_text(text, &lex());
        (s.positive(), s.negative())
    }

    #[test]
    fn empty_is_neutral() {
        assert_eq!(pair(""), (1, -1));
    }

    #[test]
    fn booster_then_negative_term() {
        assert_eq!(pair("very good but terrible"), (4, -4));
    }

    #[test]
    fn negation_flips_and_attenuates() {
        assert_eq!(pair("not good"), (1, -2));
        assert_eq!(pair("not really good"), (1, -2));
        assert_eq!(pair("not a b good"), (3, -1));
        assert_eq!(pair("not terrible"), (3, -1));
    }

    #[test]
    fn elongation_and_caps() {
        assert_eq!(pair("goooood"), (4, -1));
        assert_eq!(pair("GOOD"), (4, -1));
        assert_eq!(pair("VERY GOOOOD"), (5, -1));
        assert_eq!(pair("G"), (1, -1));
    }

    #[test]
    fn negation_does_not_cross_sentences() {
        assert_eq!(pair("not. good"), (3, -1));
    }

    #[test]
    fn capitalization_can_be_disabled() {
        let s = score_text_with("GOOD", &lex(), ScoreOptions { capitalization: false });
        assert_eq!((s.positive(), s.negative()), (3, -1));
    }

    #[test]
    fn collapse_only_letters() {
        assert_eq!(collapse_elongation("goooood"), ("good".into(), true));
        assert_eq!(collapse_elongation("1000"), ("1000".into(), false));
        assert_eq!(collapse_elongation("good"), ("good".into(), false));
    }

    #[test]
    fn score_posts_examples() {
        assert!(score_posts(&[], &lex()).is_empty());
        let out = score_posts(&[Post::new("1", 0, "u", "good")], &lex());
        assert_eq!((out[0].score.positive(), out[0].score.negative()), (3, -1));
        assert_eq!(out[0].score.polarity(), Polarity::Positive);
        let out = score_posts(&[Post::new("2", 0, "u", "nothing here")], &lex());
        assert_eq!(out[0].score, SentimentScore::NEUTRAL);
        assert_eq!(out[0].score.polarity(), Polarity::Neutral);
    }

    #[test]
    fn urls_are_not_scored() {
        let out = score_posts(&[Post::new("1", 0, "u", "https://good.example/terrible")], &lex());
        assert_eq!(out[0].score, SentimentScore::NEUTRAL);
    }
}
