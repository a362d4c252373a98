//! Dual-polarity lexicon sentiment scoring.
//!
//! Every text gets a positive strength in `1..=5` and a negative strength in
//! `-5..=-1`, driven by a term lexicon with booster, negator and emoticon lists.

mod lexicon;
mod score;
mod tokenize;

pub use lexicon::{
    LexiconBuilder, LexiconError, LexiconList, LexiconSources, SentimentLexicon, SHIPPED_BOOSTERS,
    SHIPPED_EMOTICONS, SHIPPED_NEGATORS, SHIPPED_TERMS,
};
pub use score::{score_posts, score_text, score_text_with, ScoreOptions, ScoredPost};
pub use tokenize::{tokenize, Sentence, Token, TokenKind};
