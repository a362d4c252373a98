//! Mention extraction, cleanup and entity filtering against independent oracles.

use std::sync::OnceLock;

use proptest::prelude::*;
use regex::Regex;
use repute_core::analytics::mention_frequency;
use repute_core::ingest::{extract_mentions, filter_by_entity, mention_occurrences, preprocess, MAX_HANDLE_LEN};
use repute_core::{EntityKind, EntityProfile, Post, StudyWindow};

/// `@` at the start or after a non-word character, then a maximal handle run.
fn mention_oracle(text: &str) -> Vec<String> {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| Regex::new(r"(?:^|[^\p{Alphabetic}\p{N}_])@([A-Za-z0-9_]+)").unwrap());
    re.captures_iter(text)
        .map(|c| c[1].to_string())
        .filter(|h| h.len() <= MAX_HANDLE_LEN)
        .collect()
}

/// Counts whole-word occurrences by testing every character position.
fn brute_count(text: &str, needle: &str) -> usize {
    let hay: Vec<char> = text.to_lowercase().chars().collect();
    let pat: Vec<char> = needle.chars().collect();
    if pat.is_empty() || pat.len() > hay.len() {
        return 0;
    }
    (0..=hay.len() - pat.len())
        .filter(|&i| hay[i..i + pat.len()] == pat[..])
        .filter(|&i| i == 0 || !hay[i - 1].is_alphanumeric())
        .filter(|&i| i + pat.len() == hay.len() || !hay[i + pat.len()].is_alphanumeric())
        .count()
}

fn acme() -> EntityProfile {
    EntityProfile::new("Acme", EntityKind::Corporation, ["acme", "acme corp"], ["acmecorp", "acme"]).unwrap()
}

fn text_strategy() -> impl Strategy<Value = String> {
    let pieces = prop::sample::select(vec![
        "acme", "Acme", "ACME", "acme corp", "acmes", "placement", "@acmecorp", "@AcmeCorp", "@acme", "x@acme",
        "@", "@@acme", "_@acme", "é@acme", "@abcdefghijklmnop", "@abcdefghijklmno", "https://acme.com/@acme", " ", "  ",
        "\n", ".", ",", "!", "-", "_", "'", "ü", "€", "7", "the", "corp", "a@b.com", "(@bob_2)",
    ]);
    prop::collection::vec(pieces, 0..24).prop_map(|v| v.concat())
}

proptest! {
    #[test]
    fn mentions_match_pattern_oracle(text in text_strategy()) {
        prop_assert_eq!(extract_mentions(&text), mention_oracle(&text));
    }

    #[test]
    fn mentions_match_oracle_on_arbitrary_text(text in "\\PC{0,60}") {
        prop_assert_eq!(extract_mentions(&text), mention_oracle(&text));
    }

    #[test]
    fn mentions_are_well_formed(text in "[ a-zA-Z0-9_@.!é]{0,80}") {
        for m in extract_mentions(&text) {
            prop_assert!((1..=MAX_HANDLE_LEN).contains(&m.len()));
            prop_assert!(m.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_'));
        }
    }

    #[test]
    fn mention_occurrences_match_brute_force(text in text_strategy()) {
        let profile = acme();
        let post = Post::new("p", 0, "someone", text.clone());
        let keywords: usize = profile.keywords.iter().map(|k| brute_count(&text, k)).sum();
        let handles = mention_oracle(&text)
            .iter()
            .filter(|m| profile.handles.iter().any(|h| h.eq_ignore_ascii_case(m)))
            .count();
        prop_assert_eq!(mention_occurrences(&post, &profile), (keywords + handles) as u64);
    }

    #[test]
    fn preprocess_is_idempotent(text in "[ a-z\\t\\n]{0,10}(https?://[a-z./]{0,8})?[ a-zA-Z\\n]{0,10}") {
        let once = preprocess(&Post::new("p", 0, "a", text));
        let twice = preprocess(&once);
        prop_assert_eq!(&twice, &once);
        prop_assert!(!once.text.contains("  "));
        prop_assert_eq!(once.text.trim(), once.text.as_str());
        prop_assert!(once.text.split(' ').all(|t| !t.starts_with("http://") && !t.starts_with("https://")));
    }

    #[test]
    fn filter_is_idempotent_and_order_preserving(
        texts in prop::collection::vec(text_strategy(), 0..20),
        stamps in prop::collection::vec(-5i64..40, 20),
    ) {
        let window = StudyWindow::new(0, 30, 10).unwrap();
        let posts: Vec<Post> = texts
            .into_iter()
            .zip(stamps)
            .enumerate()
            .map(|(i, (t, ts))| Post::new(format!("p{i}"), ts, if i % 7 == 0 { "acmecorp" } else { "x" }, t))
            .collect();
        let once = filter_by_entity(&posts, &acme(), &window);
        let twice = filter_by_entity(&once, &acme(), &window);
        prop_assert_eq!(&twice, &once);
        let ids: Vec<usize> = once.iter().map(|p| p.id[1..].parse().unwrap()).collect();
        prop_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(once.iter().all(|p| window.contains(p.timestamp)));
    }

    #[test]
    fn frequency_matches_brute_force_per_bucket(
        texts in prop::collection::vec(text_strategy(), 0..30),
        stamps in prop::collection::vec(-5i64..45, 30),
    ) {
        let window = StudyWindow::new(0, 40, 10).unwrap();
        let profile = acme();
        let posts: Vec<Post> = texts
            .iter()
            .zip(&stamps)
            .enumerate()
            .map(|(i, (t, &ts))| Post::new(format!("p{i}"), ts, "x", t.clone()))
            .collect();
        let mut expected = vec![0u64; 4];
        for p in &posts {
            if (0..40).contains(&p.timestamp) {
                let kw: usize = profile.keywords.iter().map(|k| brute_count(&p.text, k)).sum();
                let mh = mention_oracle(&p.text)
                    .iter()
                    .filter(|m| profile.handles.iter().any(|h| h.eq_ignore_ascii_case(m)))
                    .count();
                expected[(p.timestamp / 10) as usize] += (kw + mh) as u64;
            }
        }
        prop_assert_eq!(mention_frequency(&posts, &profile, &window), expected);
    }
}

#[test]
fn mention_examples() {
    assert!(extract_mentions("no handles here").is_empty());
    assert_eq!(extract_mentions("hi @Alice and @bob_2!"), ["Alice", "bob_2"]);
    assert!(extract_mentions("mail a@b.com").is_empty());
    assert_eq!(mention_oracle("hi @Alice and @bob_2!"), ["Alice", "bob_2"]);
}

#[test]
fn keyword_filter_examples() {
    let window = StudyWindow::new(0, 100, 10).unwrap();
    let profile = EntityProfile::new("Acme", EntityKind::Corporation, ["acme"], Vec::<String>::new()).unwrap();
    let kept = filter_by_entity(&[Post::new("1", 5, "u", "ACME launches")], &profile, &window);
    assert_eq!(kept.len(), 1);
    assert_eq!(kept[0].matched_keywords, ["acme"]);
    assert!(filter_by_entity(&[Post::new("1", 100, "u", "acme")], &profile, &window).is_empty());
    assert!(filter_by_entity(&[Post::new("1", 5, "u", "placement")], &profile, &window).is_empty());
    assert!(filter_by_entity(&[], &profile, &window).is_empty());
}
