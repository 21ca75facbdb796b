//! Evaluation of segmentation accuracy.
//!
//! Accuracy is the probability that a randomly placed pair of sentences a
//! fixed distance apart is classified inconsistently by the hypothesis
//! relative to the reference: the reference puts them in different
//! segments but the hypothesis does not (a miss), or the reference puts
//! them together and the hypothesis separates them (a false alarm).
//!
//! Degenerate baseline segmenters bound what an error figure means; for
//! the two random baselines the expected behaviour also has a closed form,
//! which doubles as a cross-check of the random implementations.

mod corpus;
mod report;

pub use corpus::{
    generate_corpus, load_collection_dir, load_corpus_dir, sample_from_str, sample_to_string,
    write_corpus_dir, CorpusManifest, CorpusSample, CorpusSpec, GeneratedCorpus, SourceDocument,
    SEGMENT_DELIMITER,
};
pub use report::{
    run_benchmark, sum_of_rank_speedup, Algorithm, AlgorithmReport, BenchmarkOptions, EvalReport,
    SampleResult, SpeedupReport,
};

use crate::rng::SplitMix64;
use crate::segmentation::Segmentation;
use crate::{Error, Result};

/// The customary window width for [`pk_error`]: half the mean reference
/// segment length, `round(n / (2 m))`, never below 1.
pub fn default_window(reference: &Segmentation) -> usize {
    let n = reference.num_sentences() as f64;
    let m = reference.num_segments() as f64;
    ((n / (2.0 * m)).round() as usize).max(1)
}

/// Windowed error probability of a hypothesis against a reference.
///
/// Slides a window of width `k` (default: [`default_window`]) over all
/// sentence pairs `(i, i + k)` and reports the fraction classified
/// inconsistently, counting both misses and false alarms. Identical
/// segmentations score 0; lower is better.
pub fn pk_error(
    reference: &Segmentation,
    hypothesis: &Segmentation,
    window: Option<usize>,
) -> Result<f64> {
    let n = reference.num_sentences();
    if hypothesis.num_sentences() != n {
        return Err(Error::SentenceCountMismatch {
            reference: n,
            hypothesis: hypothesis.num_sentences(),
        });
    }
    let k = window.unwrap_or_else(|| default_window(reference));
    if k >= n {
        return Err(Error::WindowTooWide { window: k, num_sentences: n });
    }
    let ref_ids = reference.segment_ids();
    let hyp_ids = hypothesis.segment_ids();
    let mut inconsistent = 0u64;
    for i in 0..(n - k) {
        let ref_same = ref_ids[i] == ref_ids[i + k];
        let hyp_same = hyp_ids[i] == hyp_ids[i + k];
        if ref_same != hyp_same {
            inconsistent += 1;
        }
    }
    Ok(inconsistent as f64 / (n - k) as f64)
}

/// The degenerate baseline segmenters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaselineKind {
    /// Proposes no boundaries at all.
    NoBoundaries,
    /// Reports every potential boundary as real.
    AllBoundaries,
    /// Partitions the document into `b + 1` near-equal segments.
    EvenPartition,
    /// Switches each potential boundary on independently with
    /// probability one half.
    RandomAny,
    /// Places exactly `b` boundaries, uniformly over all placements.
    RandomFixed,
}

impl BaselineKind {
    /// The name used in reports and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            BaselineKind::NoBoundaries => "b_none",
            BaselineKind::AllBoundaries => "b_all",
            BaselineKind::EvenPartition => "b_even",
            BaselineKind::RandomAny => "b_rand_any",
            BaselineKind::RandomFixed => "b_rand_b",
        }
    }

    /// All five baselines, in reporting order.
    pub fn all() -> [BaselineKind; 5] {
        [
            BaselineKind::NoBoundaries,
            BaselineKind::AllBoundaries,
            BaselineKind::EvenPartition,
            BaselineKind::RandomAny,
            BaselineKind::RandomFixed,
        ]
    }
}

/// Produces a baseline segmentation of `n` sentences.
///
/// `b` is the boundary count for [`BaselineKind::EvenPartition`] and
/// [`BaselineKind::RandomFixed`]; the other kinds ignore it. Random draws
/// come from `rng` in ascending position order (one coin per position for
/// `RandomAny`; a partial Fisher-Yates subset for `RandomFixed`).
pub fn baseline_segment(
    kind: BaselineKind,
    n: usize,
    b: Option<usize>,
    rng: &mut SplitMix64,
) -> Result<Segmentation> {
    if n == 0 {
        return Err(Error::EmptyDocument);
    }
    let require_b = || -> Result<usize> {
        let b = b.ok_or(Error::BoundaryCountRequired { kind: kind.name() })?;
        if b > n - 1 {
            return Err(Error::TooManyBoundaries { requested: b, available: n - 1 });
        }
        Ok(b)
    };
    match kind {
        BaselineKind::NoBoundaries => Ok(Segmentation::single(n)),
        BaselineKind::AllBoundaries => Ok(Segmentation::singletons(n)),
        BaselineKind::EvenPartition => {
            let b = require_b()?;
            let parts = b + 1;
            let base = n / parts;
            let remainder = n % parts;
            let mut cuts = Vec::with_capacity(b);
            let mut position = 0;
            for part in 0..b {
                position += base + usize::from(part < remainder);
                cuts.push(position);
            }
            Segmentation::new(n, cuts)
        }
        BaselineKind::RandomAny => {
            let cuts: Vec<usize> = (1..n).filter(|_| rng.coin()).collect();
            Segmentation::new(n, cuts)
        }
        BaselineKind::RandomFixed => {
            let b = require_b()?;
            let cuts: Vec<usize> =
                rng.sample_distinct((n - 1) as u64, b).into_iter().map(|v| v as usize + 1).collect();
            Segmentation::new(n, cuts)
        }
    }
}

/// Closed form of `p(same | k)` for the any-number random baseline: a
/// window spanning `k` potential boundaries sees none of them active with
/// probability `2^-k`.
pub fn p_same_random_any(k: u32) -> f64 {
    assert!(k >= 1, "window must span at least one potential boundary");
    0.5f64.powi(k as i32)
}

/// Binomial coefficient `C(x, y)` as an exact integer (x up to 64).
pub fn binomial(x: u64, y: u64) -> u128 {
    assert!(x <= 64, "binomial supports x <= 64");
    if y > x {
        return 0;
    }
    let y = y.min(x - y);
    let mut result: u128 = 1;
    for i in 1..=y {
        result = result * (x - y + i) as u128 / i as u128;
    }
    result
}

/// Closed form of `p(same | k)` for the fixed-count random baseline with
/// `b` of `m` potential boundaries active: `C(m - k, b) / C(m, b)`, which
/// is 0 whenever `b > m - k`.
pub fn p_same_random_fixed(k: u64, m: u64, b: u64) -> Result<f64> {
    if k < 1 || k > m || b > m || m > 64 {
        return Err(Error::InvalidProbabilityArgs { k, m, b });
    }
    if b > m - k {
        return Ok(0.0);
    }
    Ok(binomial(m - k, b) as f64 / binomial(m, b) as f64)
}
