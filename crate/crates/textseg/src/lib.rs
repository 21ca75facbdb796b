//! Domain-independent linear text segmentation.
//!
//! This crate finds topic boundaries in a document by lexical cohesion:
//! sentences are reduced to stem-frequency vectors, pairwise cosine
//! similarities form a matrix, each similarity is replaced by its rank in a
//! local mask (absolute values of short-text similarities are noise; their
//! order is signal), and divisive clustering then maximises the density of
//! rank mass inside the diagonal segment squares. The number of segments is
//! read off the smoothed density gradient.
//!
//! The crate also ships the matching evaluation harness: a generator for
//! synthetic test corpora made of concatenated document prefixes, the
//! windowed probabilistic error metric, degenerate baseline segmenters and
//! their closed-form expected accuracy, and a benchmark runner.
//!
//! # Quick start
//!
//! ```
//! use textseg::{preprocess_document, segment_document, SegmentOptions, Stoplist};
//!
//! let lines = [
//!     "The engine mounts to the rear subframe.",
//!     "Torque from the engine flows through the gearbox.",
//!     "Gearbox and engine share a cooling loop.",
//!     "The sonnet has fourteen lines of verse.",
//!     "A rhyme scheme binds the verse into stanzas.",
//!     "Each stanza turns the poem's argument.",
//! ];
//! let stop = Stoplist::default_english();
//! let vectors = preprocess_document(lines, &stop)?;
//! let (segmentation, _trace) = segment_document(&vectors, &SegmentOptions::default())?;
//! assert_eq!(segmentation.num_sentences(), 6);
//! # Ok::<(), textseg::Error>(())
//! ```
//!
//! The mdbook under `book/` walks through each stage; its code blocks are
//! compiled as doctests via the hidden module at the bottom of this file,
//! so the book cannot drift from the library.

use thiserror::Error;

pub mod cluster;
pub mod eval;
pub mod fingerprint;
pub mod matrix;
pub mod porter;
pub mod preprocess;
pub mod rank;
pub mod rng;
pub mod segmentation;
pub mod similarity;

pub use cluster::{
    auto_terminate, auto_terminate_with, best_split, divisive_cluster, divisive_cluster_naive,
    inside_density, segment_document, segment_similarity, smooth_gradient, sum_of_rank,
    ClusterTrace, SegmentOptions, SplitChoice, SumOfRankMatrix, TerminationRule,
};
pub use eval::{
    baseline_segment, default_window, generate_corpus, p_same_random_any, p_same_random_fixed,
    pk_error, run_benchmark, Algorithm, BaselineKind, BenchmarkOptions, CorpusSample, CorpusSpec,
    EvalReport, SourceDocument,
};
pub use porter::stem;
pub use preprocess::{
    build_stem_vector, filter_stopwords, preprocess_document, tokenize_sentence, SentenceVector,
    Stoplist,
};
pub use rank::{
    rank_filter, rank_filter_matrix, rank_filter_signal, wave_signal, RankMask, RankMatrix,
};
pub use segmentation::{Segment, Segmentation};
pub use similarity::{
    build_similarity_matrix, build_similarity_matrix_semantic, cooccurrence_transition,
    cosine_sim, semantic_sim, spread_activation, SimilarityMatrix, TransitionMatrix,
    WordSimilarityMatrix,
};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the segmentation and evaluation paths.
#[derive(Debug, Error)]
pub enum Error {
    #[error("document is empty")]
    EmptyDocument,

    #[error("document too short: need at least 2 sentences, got {num_sentences}")]
    DocumentTooShort { num_sentences: usize },

    #[error("rank mask dimensions must be odd and nonzero, got {width}x{height}")]
    InvalidMask { width: usize, height: usize },

    #[error("invalid boundaries {boundaries:?} for {num_sentences} sentences")]
    InvalidBoundaries { num_sentences: usize, boundaries: Vec<usize> },

    #[error("requested {requested} segments for {num_sentences} sentences")]
    InvalidSegmentCount { requested: usize, num_sentences: usize },

    #[error("fully segmented: no segment of length >= 2 remains")]
    FullySegmented,

    #[error("stem {stem:?} is not in the word similarity vocabulary")]
    UnknownStem { stem: String },

    #[error("window width {window} must be smaller than the document length {num_sentences}")]
    WindowTooWide { window: usize, num_sentences: usize },

    #[error("segmentations cover different documents: {reference} vs {hypothesis} sentences")]
    SentenceCountMismatch { reference: usize, hypothesis: usize },

    #[error("baseline {kind} needs an explicit boundary count")]
    BoundaryCountRequired { kind: &'static str },

    #[error("cannot place {requested} boundaries among {available} potential positions")]
    TooManyBoundaries { requested: usize, available: usize },

    #[error("invalid probability arguments: k={k}, m={m}, b={b}")]
    InvalidProbabilityArgs { k: u64, m: u64, b: u64 },

    #[error("no eligible source documents: every document needs at least {min_sentences} sentences")]
    EmptyCollection { min_sentences: usize },

    #[error("invalid corpus spec: {reason}")]
    InvalidCorpusSpec { reason: String },

    #[error("malformed corpus sample: {reason}")]
    MalformedSample { reason: String },

    #[error("unknown algorithm {name:?}")]
    UnknownAlgorithm { name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Compile the book's code blocks as doctests so the narrative chapters
/// and the library stay in lockstep.
#[cfg(doctest)]
mod booktest {
    macro_rules! booktest {
        ($name:ident, $path:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $path))]
            mod $name {}
        };
    }
    booktest!(introduction, "introduction.md");
    booktest!(preprocessing, "preprocessing.md");
    booktest!(similarity, "similarity.md");
    booktest!(ranking, "ranking.md");
    booktest!(clustering, "clustering.md");
    booktest!(evaluation, "evaluation.md");
    booktest!(cli, "cli.md");
}
