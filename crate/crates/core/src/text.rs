//! Whole-word phrase matching shared by entity filtering, mention counting
//! and dimension cues.

use alloc::string::String;
use alloc::vec::Vec;

fn is_boundary(c: Option<char>) -> bool {
    c.map_or(true, |c| !c.is_alphanumeric())
}

/// Byte offsets of every whole-word occurrence of `needle` in `haystack`.
///
/// Both arguments must already be lowercased. A match must be flanked by a
/// non-alphanumeric character or a text edge on each side.
pub(crate) fn whole_word_matches(haystack: &str, needle: &str) -> Vec<usize> {
    let mut hits = Vec::new();
    if needle.is_empty() {
        return hits;
    }
    let step = needle.chars().next().map_or(1, char::len_utf8);
    let mut from = 0;
    while let Some(rel) = haystack[from..].find(needle) {
        let at = from + rel;
        let end = at + needle.len();
        let before = haystack[..at].chars().next_back();
        let after = haystack[end..].chars().next();
        if is_boundary(before) && is_boundary(after) {
            hits.push(at);
        }
        from = at + step;
    }
    hits
}

pub(crate) fn contains_whole_word(haystack: &str, needle: &str) -> bool {
    !whole_word_matches(haystack, needle).is_empty()
}

/// Lowercases and collapses whitespace runs to single spaces.
pub(crate) fn normalize(text: &str) -> String {
    let lower = text.to_lowercase();
    let mut out = String::with_capacity(lower.len());
    for word in lower.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn respects_word_edges() {
        assert_eq!(whole_word_matches("acme beats acme", "acme"), vec![0, 11]);
        assert!(whole_word_matches("placement acmes", "acme").is_empty());
        assert_eq!(whole_word_matches("#acme, (acme)", "acme"), vec![1, 8]);
    }

    #[test]
    fn phrases_and_unicode() {
        assert_eq!(whole_word_matches("élan jane doe!", "jane doe"), vec![6]);
        assert!(whole_word_matches("éacme", "acme").is_empty());
        assert!(whole_word_matches("anything", "").is_empty());
    }

    #[test]
    fn normalize_collapses() {
        assert_eq!(normalize("  Stock \t PRICE\n"), "stock price");
    }
}
