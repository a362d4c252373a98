use alloc::vec::Vec;

use super::lexicon::SentimentLexicon;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    Emoticon,
    Mention,
    Tag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub kind: TokenKind,
}

/// One sentence's tokens.
pub type Sentence<'a> = Vec<Token<'a>>;

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || is_apostrophe(c)
}

fn is_sentence_break(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '\n' | '\r')
}

/// Longest lexicon emoticon starting at `at`, if it is not glued to a word.
fn emoticon_at<'a>(text: &'a str, at: usize, lexicon: &SentimentLexicon) -> Option<&'a str> {
    let rest = &text[at..];
    let glued_before = text[..at].chars().next_back().is_some_and(char::is_alphanumeric);
    lexicon.emoticons_longest_first().find_map(|lit| {
        if !rest.starts_with(lit) {
            return None;
        }
        let first = lit.chars().next()?;
        let last = lit.chars().next_back()?;
        let glued_after = rest[lit.len()..].chars().next().is_some_and(char::is_alphanumeric);
        if (first.is_alphanumeric() && glued_before) || (last.is_alphanumeric() && glued_after) {
            return None;
        }
        Some(&rest[..lit.len()])
    })
}

/// Splits text into sentences of tokens.
///
/// Sentences end at runs of `.`, `!`, `?` and at line breaks. Emoticons from
/// the lexicon are matched greedily before anything else; words are runs of
/// letters, digits and apostrophes (edge apostrophes trimmed); `@handle` and
/// `#tag` stay whole. Empty sentences are dropped.
pub fn tokenize<'a>(text: &'a str, lexicon: &SentimentLexicon) -> Vec<Sentence<'a>> {
    let mut sentences = Vec::new();
    let mut current: Sentence<'a> = Vec::new();
    let mut at = 0;
    while at < text.len() {
        if let Some(lit) = emoticon_at(text, at, lexicon) {
            current.push(Token {
                text: lit,
                kind: TokenKind::Emoticon,
            });
            at += lit.len();
            continue;
        }
        let rest = &text[at..];
        let c = rest.chars().next().expect("in bounds");
        if is_sentence_break(c) {
            if !current.is_empty() {
                sentences.push(core::mem::take(&mut current));
            }
            at += c.len_utf8();
        } else if is_word_char(c) {
            let len = rest.find(|c: char| !is_word_char(c)).unwrap_or(rest.len());
            let word = rest[..len].trim_matches(is_apostrophe);
            if !word.is_empty() {
                current.push(Token {
                    text: word,
                    kind: TokenKind::Word,
                });
            }
            at += len;
        } else if c == '@' || c == '#' {
            let body = &rest[1..];
            let len = body
                .find(|c: char| !(c.is_alphanumeric() || c == '_'))
                .unwrap_or(body.len());
            if len > 0 {
                current.push(Token {
                    text: &rest[..len + 1],
                    kind: if c == '@' {
                        TokenKind::Mention
                    } else {
                        TokenKind::Tag
                    },
                });
            }
            at += len + 1;
        } else {
            at += c.len_utf8();
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    sentences
}
