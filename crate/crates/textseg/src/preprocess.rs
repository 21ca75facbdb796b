//! Sentence preprocessing: tokenization, stopword removal and stemming.
//!
//! Each input line is one sentence. A sentence becomes a [`SentenceVector`],
//! a frequency table of word stems, which is all later stages ever look at.
//! Sentences that end up empty (all punctuation or stopwords) are kept as
//! empty vectors so that boundary indices always line up with the input
//! line numbering.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io;
use std::path::Path;

use crate::fingerprint::fingerprint;
use crate::porter;
use crate::{Error, Result};

/// Splits a raw line into lowercase word tokens.
///
/// A token is a maximal run of Unicode letters; everything else (digits,
/// punctuation, whitespace) separates tokens and is dropped. This is the
/// whole tokenizer, stated here so results are reproducible: `"It's 1999"`
/// yields `["it", "s"]`.
pub fn tokenize_sentence(raw_line: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in raw_line.chars() {
        if ch.is_alphabetic() {
            for lower in ch.to_lowercase() {
                current.push(lower);
            }
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// A set of words to discard before stemming.
///
/// The file format is one lowercase word per line; blank lines and lines
/// starting with `#` are ignored. Reports should carry
/// [`Stoplist::fingerprint`] so runs with different lists are never
/// compared by accident.
#[derive(Clone, Debug)]
pub struct Stoplist {
    words: BTreeSet<String>,
    fingerprint: String,
}

impl Stoplist {
    /// Parses stoplist text (one word per line, `#` comments).
    pub fn from_text(text: &str) -> Stoplist {
        let words: BTreeSet<String> = text
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        let canonical = words.iter().cloned().collect::<Vec<_>>().join("\n");
        let fingerprint = fingerprint(canonical.as_bytes());
        Stoplist { words, fingerprint }
    }

    /// Reads a stoplist file.
    pub fn load(path: &Path) -> io::Result<Stoplist> {
        Ok(Stoplist::from_text(&fs::read_to_string(path)?))
    }

    /// The built-in list of common English function words.
    pub fn default_english() -> Stoplist {
        Stoplist::from_text(include_str!("english_stop.txt"))
    }

    /// An empty stoplist (nothing is removed).
    pub fn empty() -> Stoplist {
        Stoplist::from_text("")
    }

    /// Membership test; the word must already be lowercase.
    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Hash of the canonical (sorted, comment-free) word list. Stable
    /// across reorderings and comment edits of the source file.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }
}

/// Removes stopwords, preserving order and duplicates of the survivors.
pub fn filter_stopwords(tokens: Vec<String>, stop: &Stoplist) -> Vec<String> {
    tokens.into_iter().filter(|t| !stop.contains(t)).collect()
}

/// Stems a single lowercase word. See [`crate::porter`].
pub fn stem(token: &str) -> String {
    porter::stem(token)
}

/// A frequency table of word stems for one sentence.
///
/// Absent stems have count zero; present stems have count at least one. An
/// empty vector is a legitimate value meaning the sentence carried no
/// informative tokens.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SentenceVector {
    counts: BTreeMap<String, u32>,
}

impl SentenceVector {
    pub fn new() -> SentenceVector {
        SentenceVector::default()
    }

    /// Builds a vector directly from stems (mainly for tests and fixtures).
    pub fn from_stems<I, S>(stems: I) -> SentenceVector
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v = SentenceVector::new();
        for s in stems {
            v.add(s.into());
        }
        v
    }

    fn add(&mut self, stem: String) {
        *self.counts.entry(stem).or_insert(0) += 1;
    }

    /// Frequency of `stem`, zero if absent.
    pub fn count(&self, stem: &str) -> u32 {
        self.counts.get(stem).copied().unwrap_or(0)
    }

    /// Iterates `(stem, count)` pairs in lexicographic stem order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.counts.iter().map(|(s, &c)| (s.as_str(), c))
    }

    /// Number of distinct stems.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Total token count (sum of all frequencies).
    pub fn total(&self) -> u64 {
        self.counts.values().map(|&c| c as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sum of squared frequencies, as used by the cosine denominator.
    pub fn norm_sq(&self) -> f64 {
        self.counts.values().map(|&c| (c as f64) * (c as f64)).sum()
    }
}

/// Stems every token and tallies the stems into a [`SentenceVector`].
pub fn build_stem_vector(tokens: &[String]) -> SentenceVector {
    let mut v = SentenceVector::new();
    for token in tokens {
        v.add(porter::stem(token));
    }
    v
}

/// Runs the full preprocessing pipeline over a document, one sentence per
/// line. Returns one vector per line, in order. Fails on an empty document.
pub fn preprocess_document<I, S>(lines: I, stop: &Stoplist) -> Result<Vec<SentenceVector>>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let vectors: Vec<SentenceVector> = lines
        .into_iter()
        .map(|line| {
            let tokens = filter_stopwords(tokenize_sentence(line.as_ref()), stop);
            build_stem_vector(&tokens)
        })
        .collect();
    if vectors.is_empty() {
        return Err(Error::EmptyDocument);
    }
    Ok(vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_simple() {
        assert_eq!(tokenize_sentence("The cat sat."), ["the", "cat", "sat"]);
    }

    #[test]
    fn tokenize_empty() {
        assert!(tokenize_sentence("").is_empty());
    }

    #[test]
    fn tokenize_strips_digits_and_punctuation() {
        assert_eq!(tokenize_sentence("It's 1999 -- wow!"), ["it", "s", "wow"]);
    }

    #[test]
    fn tokenize_keeps_unicode_letters() {
        assert_eq!(tokenize_sentence("Café déjà-vu"), ["café", "déjà", "vu"]);
    }

    #[test]
    fn stopword_filtering_preserves_order_and_duplicates() {
        let stop = Stoplist::from_text("the");
        let tokens = vec!["the".into(), "cat".into(), "sat".into()];
        assert_eq!(filter_stopwords(tokens, &stop), ["cat", "sat"]);

        let stop = Stoplist::from_text("a");
        let tokens = vec!["a".into(), "cat".into(), "a".into(), "cat".into()];
        assert_eq!(filter_stopwords(tokens, &stop), ["cat", "cat"]);

        assert!(filter_stopwords(vec![], &stop).is_empty());
    }

    #[test]
    fn stoplist_parsing_ignores_comments_and_case() {
        let stop = Stoplist::from_text("# comment\nThe\n\n  and  \n");
        assert_eq!(stop.len(), 2);
        assert!(stop.contains("the"));
        assert!(stop.contains("and"));
        assert!(!stop.contains("cat"));
    }

    #[test]
    fn stoplist_fingerprint_is_order_insensitive() {
        let a = Stoplist::from_text("alpha\nbeta");
        let b = Stoplist::from_text("# list\nbeta\nalpha\n");
        assert_eq!(a.fingerprint(), b.fingerprint());
        let c = Stoplist::from_text("alpha");
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn stem_vector_merges_inflections() {
        let v = build_stem_vector(&["cat".into(), "cats".into()]);
        assert_eq!(v.count("cat"), 2);
        assert_eq!(v.distinct(), 1);
    }

    #[test]
    fn stem_vector_counts_conserve_tokens() {
        let tokens: Vec<String> =
            ["run", "jump", "running", "jumps", "cat"].iter().map(|s| s.to_string()).collect();
        let v = build_stem_vector(&tokens);
        assert_eq!(v.total(), tokens.len() as u64);
        assert_eq!(v.count("run"), 2);
        assert_eq!(v.count("jump"), 2);
    }

    #[test]
    fn empty_tokens_give_empty_vector() {
        let v = build_stem_vector(&[]);
        assert!(v.is_empty());
        assert_eq!(v.norm_sq(), 0.0);
    }

    #[test]
    fn preprocess_keeps_positions() {
        let stop = Stoplist::default_english();
        let vectors =
            preprocess_document(["The cat sat.", "The the the.", "Dogs bark."], &stop).unwrap();
        assert_eq!(vectors.len(), 3);
        assert!(!vectors[0].is_empty());
        assert!(vectors[1].is_empty(), "all-stopword sentence keeps its slot");
        assert_eq!(vectors[2].count("dog"), 1);
        assert_eq!(vectors[2].count("bark"), 1);
    }

    #[test]
    fn preprocess_rejects_empty_document() {
        let stop = Stoplist::empty();
        let lines: Vec<&str> = vec![];
        assert!(matches!(preprocess_document(lines, &stop), Err(Error::EmptyDocument)));
    }

    #[test]
    fn preprocess_golden_fixture() {
        // Five sentences, hand-worked: tokenize, drop stopwords, stem.
        let stop = Stoplist::default_english();
        let lines = [
            "The quick brown fox jumps over the lazy dog.",
            "Foxes are quick animals.",
            "It's 1999!",
            "Dogs and foxes played happily.",
            "",
        ];
        let vectors = preprocess_document(lines, &stop).unwrap();
        assert_eq!(vectors.len(), 5);

        let v0 = &vectors[0];
        for stem in ["quick", "brown", "fox", "jump", "lazi", "dog"] {
            assert_eq!(v0.count(stem), 1, "sentence 0, stem {stem}");
        }
        assert_eq!(v0.total(), 6);

        let v1 = &vectors[1];
        assert_eq!(v1.count("fox"), 1); // foxes -> foxe (1a) -> fox (5a, x blocks *o)
        assert_eq!(v1.count("quick"), 1);
        assert_eq!(v1.count("anim"), 1);
        assert_eq!(v1.total(), 3);

        assert!(vectors[2].is_empty(), "it, s are stopwords; 1999 is dropped");

        let v3 = &vectors[3];
        assert_eq!(v3.count("dog"), 1);
        assert_eq!(v3.count("fox"), 1);
        assert_eq!(v3.count("plai"), 1);
        assert_eq!(v3.count("happili"), 1);

        assert!(vectors[4].is_empty());
    }

    #[test]
    fn pipeline_is_deterministic() {
        let stop = Stoplist::default_english();
        let lines = ["Stemming algorithms reduce words.", "Another sentence here."];
        let a = preprocess_document(lines, &stop).unwrap();
        let b = preprocess_document(lines, &stop).unwrap();
        assert_eq!(a, b);
    }
}
