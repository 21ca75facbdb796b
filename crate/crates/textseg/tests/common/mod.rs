//! Shared helpers for the integration and acceptance suites.

use textseg::eval::SourceDocument;
use textseg::rng::SplitMix64;

/// Function words woven into synthetic sentences; the default stoplist
/// removes all of them.
const GLUE: [&str; 8] = ["the", "of", "and", "a", "to", "in", "is", "that"];

/// Builds a deterministic collection of topically distinct documents.
///
/// Every document gets its own vocabulary of ten pseudo-words (disjoint
/// across documents), plus sentences mix in words from a shared pool that
/// all documents draw from, so cross-topic similarity is small but not
/// zero. Documents are 12 to 19 sentences long.
pub fn synthetic_collection(num_docs: usize, seed: u64) -> Vec<SourceDocument> {
    let mut rng = SplitMix64::new(seed);
    let pool = word_pool();
    let shared_pool_size = 30;
    assert!(shared_pool_size + num_docs * 10 <= pool.len(), "word pool exhausted");
    let shared: Vec<&str> =
        pool[..shared_pool_size].iter().map(String::as_str).collect();

    (0..num_docs)
        .map(|d| {
            let topic: Vec<&str> = pool[shared_pool_size + d * 10..shared_pool_size + (d + 1) * 10]
                .iter()
                .map(String::as_str)
                .collect();
            let num_sentences = 12 + rng.below(8) as usize;
            let sentences = (0..num_sentences)
                .map(|_| synthetic_sentence(&topic, &shared, &mut rng))
                .collect();
            SourceDocument { id: format!("doc-{d:03}"), sentences }
        })
        .collect()
}

fn synthetic_sentence(topic: &[&str], shared: &[&str], rng: &mut SplitMix64) -> String {
    let mut content: Vec<&str> = Vec::new();
    for _ in 0..4 {
        // Two draws, keep the smaller index: a mildly skewed frequency
        // profile so some topic words repeat across sentences much more
        // often than others.
        let a = rng.below(topic.len() as u64);
        let b = rng.below(topic.len() as u64);
        content.push(topic[a.min(b) as usize]);
    }
    for _ in 0..2 {
        content.push(shared[rng.below(shared.len() as u64) as usize]);
    }
    // Interleave glue words for realistic texture; they are stripped by
    // preprocessing.
    let mut words: Vec<&str> = Vec::new();
    for (i, w) in content.iter().enumerate() {
        if i % 2 == 0 {
            words.push(GLUE[rng.below(GLUE.len() as u64) as usize]);
        }
        words.push(w);
    }
    let mut sentence = words.join(" ");
    sentence.push('.');
    // Capitalise the first letter.
    let mut chars = sentence.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
        None => sentence,
    }
}

/// Pronounceable two-syllable pseudo-words, all alphabetic, deduplicated
/// and in a fixed order.
fn word_pool() -> Vec<String> {
    const CONSONANTS: [&str; 15] =
        ["b", "c", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"];
    const VOWELS: [&str; 5] = ["a", "e", "i", "o", "u"];
    let syllables: Vec<String> = CONSONANTS
        .iter()
        .flat_map(|c| VOWELS.iter().map(move |v| format!("{c}{v}")))
        .collect();
    let mut words = Vec::with_capacity(syllables.len() * syllables.len());
    for a in &syllables {
        for b in &syllables {
            words.push(format!("{a}{b}"));
        }
    }
    words
}
