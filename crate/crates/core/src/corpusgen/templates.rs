//! Text fragments for synthetic posts.
//!
//! Positive templates use only positive lexicon words, negative templates
//! only negative ones, and neutral templates none at all, so the shipped
//! lexicon scores each rendering with its intended polarity. Topics are
//! dimension cue words that carry no sentiment.

use alloc::string::String;

use super::rng::ScenarioRng;
use crate::domain::Polarity;

pub(crate) const POSITIVE_TEMPLATES: &[&str] = &[
    "{e} delivers {p} {t}",
    "{p} {t} from {e} today",
    "{e} {t} looks {p}",
    "really {p} {t} by {e}!",
    "the {t} at {e} is {p}",
    "{e}: {p} {t} this week",
];

pub(crate) const NEGATIVE_TEMPLATES: &[&str] = &[
    "{e} {t} is {n}",
    "{n} {t} from {e} again",
    "{e} delivers {n} {t}",
    "so {n}: {e} {t}",
    "the {t} at {e} looks {n}",
    "{e}: {n} {t} this week",
];

pub(crate) const NEUTRAL_TEMPLATES: &[&str] = &[
    "{e} posted an update on {t}",
    "{e} {t} announcement at noon",
    "new statement from {e} about {t}",
    "{e} will discuss {t} on monday",
    "reading about {e} and the {t}",
    "{e} shares details on {t}",
];

pub(crate) const POSITIVE_WORDS: &[&str] = &[
    "great",
    "excellent",
    "amazing",
    "impressive",
    "brilliant",
    "fantastic",
    "solid",
    "strong",
    "outstanding",
    "wonderful",
];

pub(crate) const NEGATIVE_WORDS: &[&str] = &[
    "terrible",
    "awful",
    "disappointing",
    "weak",
    "horrible",
    "shameful",
    "poor",
    "bad",
    "pathetic",
    "misleading",
];

pub(crate) const TOPICS: &[&str] = &[
    "earnings",
    "dividend",
    "products",
    "service",
    "strategy",
    "vision",
    "employees",
    "workplace",
    "sustainability",
    "charity",
    "brand",
    "leadership",
    "transparency",
    "decisions",
    "personality",
];

pub(crate) fn templates_for(polarity: Polarity) -> &'static [&'static str] {
    match polarity {
        Polarity::Positive => POSITIVE_TEMPLATES,
        Polarity::Negative => NEGATIVE_TEMPLATES,
        Polarity::Neutral => NEUTRAL_TEMPLATES,
    }
}

const _: () = assert!(POSITIVE_WORDS.len() == NEGATIVE_WORDS.len());
const _: () = assert!(POSITIVE_TEMPLATES.len() == NEGATIVE_TEMPLATES.len());
const _: () = assert!(POSITIVE_TEMPLATES.len() == NEUTRAL_TEMPLATES.len());

/// Fills a random template of the given polarity around `entity_ref`.
///
/// Every polarity consumes the same draws, neutral posts included, so a
/// different polarity for one post leaves all later draws unchanged.
pub(crate) fn render(polarity: Polarity, entity_ref: &str, rng: &mut ScenarioRng) -> String {
    let template = *rng.pick(templates_for(polarity));
    let topic = *rng.pick(TOPICS);
    let slot = rng.below(POSITIVE_WORDS.len() as u64) as usize;
    let word = match polarity {
        Polarity::Positive => POSITIVE_WORDS[slot],
        Polarity::Negative => NEGATIVE_WORDS[slot],
        Polarity::Neutral => "",
    };
    template
        .replace("{e}", entity_ref)
        .replace("{t}", topic)
        .replace("{p}", word)
        .replace("{n}", word)
}
