//! Sentence similarity matrices.
//!
//! The default measure is the cosine of two stem-frequency vectors. An
//! optional semantic backend first derives a word-similarity matrix from
//! sentence-level co-occurrence by spread activation, then scores sentence
//! pairs with a generalised cosine through that matrix.
//!
//! Similarity of (or with) an empty sentence vector is defined as 0,
//! including an empty sentence's self-similarity: a sentence with no
//! informative tokens carries no evidence of cohesion.

use std::collections::HashMap;

use crate::matrix::SquareMatrix;
use crate::preprocess::SentenceVector;
use crate::{Error, Result};

/// Cosine similarity of two stem-frequency vectors, in `[0, 1]`.
///
/// Returns 0 when either vector is empty (zero denominator).
pub fn cosine_sim(x: &SentenceVector, y: &SentenceVector) -> f64 {
    if x.is_empty() || y.is_empty() {
        return 0.0;
    }
    let mut dot = 0.0;
    for (stem, cx) in x.iter() {
        let cy = y.count(stem);
        if cy > 0 {
            dot += cx as f64 * cy as f64;
        }
    }
    dot / (x.norm_sq() * y.norm_sq()).sqrt()
}

/// A symmetric matrix of pairwise sentence similarities in `[0, 1]`.
#[derive(Clone, Debug)]
pub struct SimilarityMatrix {
    values: SquareMatrix,
}

impl SimilarityMatrix {
    /// Number of sentences.
    pub fn n(&self) -> usize {
        self.values.n()
    }

    /// Similarity of sentences `x` and `y`.
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[(x, y)]
    }

    /// The underlying matrix (for rank filtering and dumps).
    pub fn as_matrix(&self) -> &SquareMatrix {
        &self.values
    }

    /// Wraps a precomputed matrix. Intended for tests and for callers that
    /// bring their own similarity measure; the matrix should be symmetric
    /// with entries in `[0, 1]`.
    pub fn from_matrix(values: SquareMatrix) -> SimilarityMatrix {
        SimilarityMatrix { values }
    }

    fn build<F: FnMut(usize, usize) -> f64>(n: usize, mut pair: F) -> Result<SimilarityMatrix> {
        if n < 2 {
            return Err(Error::DocumentTooShort { num_sentences: n });
        }
        let mut values = SquareMatrix::zeros(n);
        // Compute the upper triangle and mirror it, so symmetry is exact.
        for x in 0..n {
            for y in x..n {
                let s = pair(x, y);
                values[(x, y)] = s;
                values[(y, x)] = s;
            }
        }
        Ok(SimilarityMatrix { values })
    }
}

/// Builds the cosine similarity matrix over all sentence pairs.
pub fn build_similarity_matrix(vectors: &[SentenceVector]) -> Result<SimilarityMatrix> {
    SimilarityMatrix::build(vectors.len(), |x, y| cosine_sim(&vectors[x], &vectors[y]))
}

/// Word-to-word transition probabilities from sentence co-occurrence.
///
/// `f(w_i, w_j)` counts co-occurrence of two stems within a sentence,
/// weighted by the product of their in-sentence frequencies (a stem
/// co-occurs with itself). Each row is then normalised to sum to one;
/// a row with no co-occurrences at all stays zero.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    vocab: Vec<String>,
    index: HashMap<String, usize>,
    t: SquareMatrix,
}

impl TransitionMatrix {
    /// The document vocabulary, in lexicographic order.
    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn as_matrix(&self) -> &SquareMatrix {
        &self.t
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.t[(i, j)]
    }
}

/// Builds the co-occurrence transition matrix for a document.
pub fn cooccurrence_transition(vectors: &[SentenceVector]) -> TransitionMatrix {
    let mut vocab: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for v in vectors {
        for (stem, _) in v.iter() {
            if !index.contains_key(stem) {
                index.insert(stem.to_string(), vocab.len());
                vocab.push(stem.to_string());
            }
        }
    }
    // SentenceVector iterates stems in sorted order and vectors are scanned
    // in document order, so the vocabulary is deterministic; sort it fully
    // for a canonical layout.
    let mut sorted = vocab.clone();
    sorted.sort();
    let index: HashMap<String, usize> =
        sorted.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let vocab = sorted;

    let mut counts = SquareMatrix::zeros(vocab.len());
    for v in vectors {
        let stems: Vec<(usize, f64)> =
            v.iter().map(|(stem, c)| (index[stem], c as f64)).collect();
        for &(i, ci) in &stems {
            for &(j, cj) in &stems {
                counts[(i, j)] += ci * cj;
            }
        }
    }
    TransitionMatrix { t: row_normalize(&counts), index, vocab }
}

/// Row-normalises a nonnegative matrix; all-zero rows are left alone.
fn row_normalize(m: &SquareMatrix) -> SquareMatrix {
    let n = m.n();
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        let row_sum: f64 = (0..n).map(|j| m[(i, j)]).sum();
        if row_sum > 0.0 {
            for j in 0..n {
                out[(i, j)] = m[(i, j)] / row_sum;
            }
        }
    }
    out
}

/// A row-stochastic word similarity matrix produced by spread activation.
#[derive(Clone, Debug)]
pub struct WordSimilarityMatrix {
    vocab: Vec<String>,
    index: HashMap<String, usize>,
    s: SquareMatrix,
}

impl WordSimilarityMatrix {
    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn as_matrix(&self) -> &SquareMatrix {
        &self.s
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.s[(i, j)]
    }

    /// The identity word-similarity over a vocabulary: every word similar
    /// only to itself. With it, [`semantic_sim`] reduces to [`cosine_sim`].
    pub fn identity(vocab: Vec<String>) -> WordSimilarityMatrix {
        let n = vocab.len();
        let index = vocab.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut s = SquareMatrix::zeros(n);
        for i in 0..n {
            s[(i, i)] = 1.0;
        }
        WordSimilarityMatrix { vocab, index, s }
    }
}

/// Accumulates transition-matrix powers and renormalises:
/// `s = norm(t + t^2 + ... + t^steps)`.
pub fn spread_activation(t: &TransitionMatrix, steps: usize) -> WordSimilarityMatrix {
    assert!(steps >= 1, "spread activation needs at least one step");
    let n = t.t.n();
    let mut power = t.t.clone();
    let mut sum = t.t.clone();
    for _ in 1..steps {
        power = mat_mul(&power, &t.t);
        for i in 0..n {
            for j in 0..n {
                sum[(i, j)] += power[(i, j)];
            }
        }
    }
    WordSimilarityMatrix { s: row_normalize(&sum), index: t.index.clone(), vocab: t.vocab.clone() }
}

fn mat_mul(a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
    let n = a.n();
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[(i, k)];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[(i, j)] += aik * b[(k, j)];
            }
        }
    }
    out
}

/// Generalised cosine of two sentence vectors through a word similarity
/// matrix: `(x' s y) / sqrt((x' s x) (y' s y))`. Returns 0 when either
/// vector is empty; fails if a stem is missing from the vocabulary.
pub fn semantic_sim(
    x: &SentenceVector,
    y: &SentenceVector,
    s: &WordSimilarityMatrix,
) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Ok(0.0);
    }
    let qxy = quadratic_form(x, y, s)?;
    let qxx = quadratic_form(x, x, s)?;
    let qyy = quadratic_form(y, y, s)?;
    if qxx <= 0.0 || qyy <= 0.0 {
        return Ok(0.0);
    }
    Ok(qxy / (qxx * qyy).sqrt())
}

fn quadratic_form(x: &SentenceVector, y: &SentenceVector, s: &WordSimilarityMatrix) -> Result<f64> {
    let lookup = |stem: &str| -> Result<usize> {
        s.index.get(stem).copied().ok_or_else(|| Error::UnknownStem { stem: stem.to_string() })
    };
    let mut total = 0.0;
    for (sx, cx) in x.iter() {
        let i = lookup(sx)?;
        for (sy, cy) in y.iter() {
            let j = lookup(sy)?;
            total += cx as f64 * s.s[(i, j)] * cy as f64;
        }
    }
    Ok(total)
}

/// Builds a similarity matrix with the spread-activation backend: the
/// transition matrix and word similarities are derived from the document
/// itself, then every sentence pair is scored with [`semantic_sim`].
///
/// Values are clipped to `[0, 1]`; the generalised cosine can slightly
/// exceed 1 because the word similarity matrix is not symmetric.
pub fn build_similarity_matrix_semantic(
    vectors: &[SentenceVector],
    activation_steps: usize,
) -> Result<SimilarityMatrix> {
    let t = cooccurrence_transition(vectors);
    let s = spread_activation(&t, activation_steps);
    let m = SimilarityMatrix::build(vectors.len(), |x, y| {
        semantic_sim(&vectors[x], &vectors[y], &s)
            .expect("vocabulary covers every stem by construction")
            .clamp(0.0, 1.0)
    })?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::SentenceVector;
    use proptest::prelude::*;

    fn vector(pairs: &[(&str, u32)]) -> SentenceVector {
        let mut stems = Vec::new();
        for &(stem, count) in pairs {
            for _ in 0..count {
                stems.push(stem.to_string());
            }
        }
        SentenceVector::from_stems(stems)
    }

    #[test]
    fn cosine_self_similarity_is_one() {
        let x = vector(&[("cat", 3)]);
        assert_eq!(cosine_sim(&x, &x), 1.0);
    }

    #[test]
    fn cosine_disjoint_is_zero() {
        let x = vector(&[("cat", 1)]);
        let y = vector(&[("dog", 1)]);
        assert_eq!(cosine_sim(&x, &y), 0.0);
    }

    #[test]
    fn cosine_half_overlap() {
        // {a,b} vs {a,c}: dot = 1, norms = sqrt(2) each, so 1/2 exactly.
        let x = vector(&[("a", 1), ("b", 1)]);
        let y = vector(&[("a", 1), ("c", 1)]);
        assert_eq!(cosine_sim(&x, &y), 0.5);
    }

    #[test]
    fn cosine_empty_is_zero() {
        let e = SentenceVector::new();
        let x = vector(&[("cat", 1)]);
        assert_eq!(cosine_sim(&e, &x), 0.0);
        assert_eq!(cosine_sim(&e, &e), 0.0);
    }

    #[test]
    fn matrix_for_identical_and_disjoint_pairs() {
        let a = vector(&[("cat", 2)]);
        let m = build_similarity_matrix(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(m.get(0, 0), 1.0);
        assert_eq!(m.get(0, 1), 1.0);
        assert_eq!(m.get(1, 0), 1.0);

        let b = vector(&[("dog", 1)]);
        let m = build_similarity_matrix(&[a, b]).unwrap();
        assert_eq!(m.get(0, 1), 0.0);
        assert_eq!(m.get(0, 0), 1.0);
        assert_eq!(m.get(1, 1), 1.0);
    }

    #[test]
    fn matrix_golden_three_sentences() {
        // s0 = {cat:1, dog:1}, s1 = {cat:2}, s2 = {dog:1, bird:1}
        // sim(0,1) = 2 / sqrt(2*4)        = 1/sqrt(2)
        // sim(0,2) = 1 / sqrt(2*2)        = 1/2
        // sim(1,2) = 0
        let s0 = vector(&[("cat", 1), ("dog", 1)]);
        let s1 = vector(&[("cat", 2)]);
        let s2 = vector(&[("dog", 1), ("bird", 1)]);
        let m = build_similarity_matrix(&[s0, s1, s2]).unwrap();
        assert!((m.get(0, 1) - 1.0 / 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(m.get(0, 2), 0.5);
        assert_eq!(m.get(1, 2), 0.0);
        assert!(m.as_matrix().is_symmetric());
    }

    #[test]
    fn matrix_rejects_short_documents() {
        let a = vector(&[("cat", 1)]);
        assert!(matches!(
            build_similarity_matrix(&[a]),
            Err(Error::DocumentTooShort { num_sentences: 1 })
        ));
    }

    #[test]
    fn empty_sentence_rows_are_zero() {
        let a = vector(&[("cat", 1)]);
        let e = SentenceVector::new();
        let m = build_similarity_matrix(&[a, e]).unwrap();
        assert_eq!(m.get(1, 1), 0.0, "empty self-similarity is 0 by convention");
        assert_eq!(m.get(0, 1), 0.0);
    }

    #[test]
    fn transition_single_sentence_uniform() {
        // One sentence {a:1, b:1}: f(a,a)=f(a,b)=f(b,a)=f(b,b)=1,
        // so each row normalises to [0.5, 0.5].
        let t = cooccurrence_transition(&[vector(&[("a", 1), ("b", 1)])]);
        assert_eq!(t.vocab(), ["a", "b"]);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(t.get(i, j), 0.5);
            }
        }
    }

    #[test]
    fn transition_never_cooccurring_is_zero() {
        let t = cooccurrence_transition(&[vector(&[("a", 1)]), vector(&[("b", 1)])]);
        assert_eq!(t.get(0, 1), 0.0);
        assert_eq!(t.get(1, 0), 0.0);
        assert_eq!(t.get(0, 0), 1.0);
        assert_eq!(t.get(1, 1), 1.0);
    }

    #[test]
    fn transition_single_stem() {
        let t = cooccurrence_transition(&[vector(&[("a", 3)])]);
        assert_eq!(t.vocab(), ["a"]);
        assert_eq!(t.get(0, 0), 1.0);
    }

    #[test]
    fn transition_count_weighting() {
        // One sentence {a:2, b:1}: f(a,a)=4, f(a,b)=2, f(b,b)=1, f(b,a)=2.
        // Row a: [4/6, 2/6]; row b: [2/3, 1/3].
        let t = cooccurrence_transition(&[vector(&[("a", 2), ("b", 1)])]);
        assert!((t.get(0, 0) - 4.0 / 6.0).abs() < 1e-15);
        assert!((t.get(0, 1) - 2.0 / 6.0).abs() < 1e-15);
        assert!((t.get(1, 0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((t.get(1, 1) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn spread_one_step_is_transition() {
        let t = cooccurrence_transition(&[vector(&[("a", 2), ("b", 1)])]);
        let s = spread_activation(&t, 1);
        for i in 0..2 {
            for j in 0..2 {
                assert!((s.get(i, j) - t.get(i, j)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn spread_identity_stays_identity() {
        // Two sentences with one stem each and no co-occurrence: t = I.
        let t = cooccurrence_transition(&[vector(&[("a", 1)]), vector(&[("b", 1)])]);
        let s = spread_activation(&t, 4);
        assert_eq!(s.get(0, 0), 1.0);
        assert_eq!(s.get(0, 1), 0.0);
        assert_eq!(s.get(1, 0), 0.0);
        assert_eq!(s.get(1, 1), 1.0);
    }

    #[test]
    fn spread_three_word_chain_two_steps() {
        // Document: sentences {a,b} and {b,c}. Co-occurrence counts:
        //   f(a,a)=1 f(a,b)=1 f(b,b)=2 f(b,c)=1 f(c,c)=1
        // t rows: a: [1/2, 1/2, 0]; b: [1/4, 2/4, 1/4]; c: [0, 1/2, 1/2].
        // t^2 row a: [3/8, 4/8, 1/8]
        //      row b: [1/4, 1/2, 1/4] (stationary-looking by symmetry)
        //      row c: [1/8, 4/8, 3/8]
        // sum = t + t^2, rows then renormalised (each row of the sum adds
        // to 2): a: [7/16, 8/16, 1/16], b: [2/8, 4/8, 2/8],
        //        c: [1/16, 8/16, 7/16].
        let t = cooccurrence_transition(&[vector(&[("a", 1), ("b", 1)]), vector(&[("b", 1), ("c", 1)])]);
        assert_eq!(t.vocab(), ["a", "b", "c"]);
        assert!((t.get(1, 0) - 0.25).abs() < 1e-15);

        let s = spread_activation(&t, 2);
        let expected = [
            [7.0 / 16.0, 8.0 / 16.0, 1.0 / 16.0],
            [0.25, 0.5, 0.25],
            [1.0 / 16.0, 8.0 / 16.0, 7.0 / 16.0],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert!(
                    (s.get(i, j) - want).abs() < 1e-12,
                    "s[{i}][{j}] = {} expected {want}",
                    s.get(i, j),
                );
            }
        }
    }

    #[test]
    fn semantic_with_identity_reduces_to_cosine() {
        let x = vector(&[("a", 2), ("b", 1)]);
        let y = vector(&[("b", 3), ("c", 1)]);
        let s = WordSimilarityMatrix::identity(vec!["a".into(), "b".into(), "c".into()]);
        let sem = semantic_sim(&x, &y, &s).unwrap();
        assert!((sem - cosine_sim(&x, &y)).abs() < 1e-12);
    }

    #[test]
    fn semantic_self_similarity_is_one() {
        let docs = [vector(&[("a", 1), ("b", 2)]), vector(&[("b", 1), ("c", 1)])];
        let t = cooccurrence_transition(&docs);
        let s = spread_activation(&t, 3);
        let sim = semantic_sim(&docs[0], &docs[0], &s).unwrap();
        assert!((sim - 1.0).abs() < 1e-12);
    }

    #[test]
    fn semantic_rank_one_similarity_saturates() {
        // With s = [[.5,.5],[.5,.5]] every quadratic form is proportional
        // to (sum of counts)^2, so the ratio is exactly 1.
        let mut s = WordSimilarityMatrix::identity(vec!["a".into(), "b".into()]);
        for i in 0..2 {
            for j in 0..2 {
                s.s[(i, j)] = 0.5;
            }
        }
        let x = vector(&[("a", 3)]);
        let y = vector(&[("a", 1), ("b", 5)]);
        assert!((semantic_sim(&x, &y, &s).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn semantic_unknown_stem_errors() {
        let s = WordSimilarityMatrix::identity(vec!["a".into()]);
        let x = vector(&[("a", 1)]);
        let y = vector(&[("zzz", 1)]);
        assert!(matches!(semantic_sim(&x, &y, &s), Err(Error::UnknownStem { .. })));
    }

    #[test]
    fn semantic_empty_vector_is_zero() {
        let s = WordSimilarityMatrix::identity(vec!["a".into()]);
        let x = vector(&[("a", 1)]);
        assert_eq!(semantic_sim(&x, &SentenceVector::new(), &s).unwrap(), 0.0);
    }

    prop_compose! {
        fn arb_vector()(pairs in prop::collection::btree_map("[a-e]", 1u32..5, 0..4)) -> SentenceVector {
            let mut stems: Vec<String> = Vec::new();
            for (stem, count) in pairs {
                for _ in 0..count {
                    stems.push(stem.clone());
                }
            }
            SentenceVector::from_stems(stems)
        }
    }

    proptest! {
        #[test]
        fn cosine_is_symmetric_and_bounded(x in arb_vector(), y in arb_vector()) {
            let a = cosine_sim(&x, &y);
            let b = cosine_sim(&y, &x);
            prop_assert_eq!(a, b);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&a));
        }

        #[test]
        fn cosine_is_scale_invariant(x in arb_vector(), y in arb_vector(), c in 2u32..5) {
            // Multiply every count of x by c.
            let scaled = SentenceVector::from_stems(
                x.iter().flat_map(|(s, n)| {
                    std::iter::repeat_n(s.to_string(), (n * c) as usize)
                }).collect::<Vec<_>>()
            );
            let a = cosine_sim(&x, &y);
            let b = cosine_sim(&scaled, &y);
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn similarity_matrix_invariants(vs in prop::collection::vec(arb_vector(), 2..8)) {
            let m = build_similarity_matrix(&vs).unwrap();
            prop_assert!(m.as_matrix().is_symmetric());
            for x in 0..vs.len() {
                for y in 0..vs.len() {
                    prop_assert!((0.0..=1.0 + 1e-12).contains(&m.get(x, y)));
                }
                if !vs[x].is_empty() {
                    prop_assert_eq!(m.get(x, x), 1.0);
                }
            }
        }

        #[test]
        fn transition_and_spread_rows_are_stochastic(
            vs in prop::collection::vec(arb_vector(), 1..6),
            steps in 1usize..5,
        ) {
            let t = cooccurrence_transition(&vs);
            let s = spread_activation(&t, steps);
            let n = t.vocab().len();
            for i in 0..n {
                let t_row: f64 = (0..n).map(|j| t.get(i, j)).sum();
                let s_row: f64 = (0..n).map(|j| s.get(i, j)).sum();
                prop_assert!(t_row.abs() < 1e-9 || (t_row - 1.0).abs() < 1e-9);
                prop_assert!(s_row.abs() < 1e-9 || (s_row - 1.0).abs() < 1e-9);
            }
        }

        #[test]
        fn semantic_identity_matches_cosine(x in arb_vector(), y in arb_vector()) {
            let vocab: Vec<String> = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
            let s = WordSimilarityMatrix::identity(vocab);
            let sem = semantic_sim(&x, &y, &s).unwrap();
            prop_assert!((sem - cosine_sim(&x, &y)).abs() < 1e-12);
        }
    }
}
