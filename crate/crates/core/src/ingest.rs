//! Post-level text handling: mention extraction, cleanup and entity filtering.
//!
//! Reading corpora from files lives in the `repute` crate; everything here is
//! pure and operates on in-memory posts.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::domain::{EntityProfile, Post, StudyWindow};
use crate::text::{contains_whole_word, whole_word_matches};

/// Longest handle the platform accepts.
pub const MAX_HANDLE_LEN: usize = 15;

fn is_handle_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Returns the bare handles of every `@handle` in `text`, in order, with duplicates.
///
/// The `@` must start the text or follow a non-word character, and the run of
/// `[A-Za-z0-9_]` after it must be 1 to 15 characters long.
pub fn extract_mentions(text: &str) -> Vec<String> {
    let mut mentions = Vec::new();
    let mut prev: Option<char> = None;
    for (i, c) in text.char_indices() {
        if c == '@' && !prev.is_some_and(is_word_char) {
            let rest = &text[i + 1..];
            let len = rest.find(|c: char| !is_handle_char(c)).unwrap_or(rest.len());
            if (1..=MAX_HANDLE_LEN).contains(&len) {
                mentions.push(rest[..len].to_string());
            }
        }
        prev = Some(c);
    }
    mentions
}

fn is_url(token: &str) -> bool {
    let lower = |n: usize| token.get(..n).map(str::to_ascii_lowercase);
    lower(7).as_deref() == Some("http://") || lower(8).as_deref() == Some("https://")
}

/// Drops URL tokens, collapses whitespace runs and trims. Other fields are untouched.
pub fn preprocess(post: &Post) -> Post {
    let mut text = String::with_capacity(post.text.len());
    for token in post.text.split_whitespace().filter(|t| !is_url(t)) {
        if !text.is_empty() {
            text.push(' ');
        }
        text.push_str(token);
    }
    Post {
        text,
        ..post.clone()
    }
}

/// Profile keywords occurring as whole words in `text`, in keyword order.
pub fn matched_keywords(text: &str, profile: &EntityProfile) -> Vec<String> {
    let lower = text.to_lowercase();
    profile
        .keywords
        .iter()
        .filter(|k| contains_whole_word(&lower, k))
        .cloned()
        .collect()
}

/// Number of whole-word keyword occurrences plus tracked `@`-mentions in a post.
///
/// Occurrences are counted per instance. A tracked handle that is also a
/// keyword is counted once as a keyword and once as a mention.
pub fn mention_occurrences(post: &Post, profile: &EntityProfile) -> u64 {
    let lower = post.text.to_lowercase();
    let keywords: usize = profile
        .keywords
        .iter()
        .map(|k| whole_word_matches(&lower, k).len())
        .sum();
    let handles = post.mentions.iter().filter(|m| profile.has_handle(m)).count();
    (keywords + handles) as u64
}

/// Keeps posts inside the window that reference the entity by keyword,
/// mention or authorship. Input order is preserved and `matched_keywords`
/// is filled on the returned posts.
pub fn filter_by_entity(posts: &[Post], profile: &EntityProfile, window: &StudyWindow) -> Vec<Post> {
    posts
        .iter()
        .filter(|p| window.contains(p.timestamp))
        .filter_map(|p| {
            let keywords = matched_keywords(&p.text, profile);
            let relevant = !keywords.is_empty()
                || p.mentions.iter().any(|m| profile.has_handle(m))
                || profile.has_handle(&p.author_handle);
            relevant.then(|| Post {
                matched_keywords: keywords,
                ..p.clone()
            })
        })
        .collect()
}
