//! Divisive clustering of the rank matrix.
//!
//! A segment is a square region on the diagonal of the rank matrix. The
//! inside density of a segmentation is the rank mass inside those squares
//! divided by their total area; boundaries are found by repeatedly
//! splitting whichever segment, at whichever cut, maximises that density.
//! The number of segments is then chosen from the density gradient.
//!
//! Segment sums are precomputed once into a [`SumOfRankMatrix`] by a
//! three-pass diagonal recurrence, which is what makes each split step
//! cheap. [`divisive_cluster_naive`] is the same clustering loop without
//! the precomputation, kept as a reference point for benchmarks.

use std::io::{self, Write};

use crate::matrix::SquareMatrix;
use crate::preprocess::SentenceVector;
use crate::rank::{rank_filter, RankMask, RankMatrix};
use crate::segmentation::{Segment, Segmentation};
use crate::similarity::{build_similarity_matrix, build_similarity_matrix_semantic, SimilarityMatrix};
use crate::{Error, Result};

/// Precomputed sums of rank values over diagonal square regions:
/// entry `(i, j)` holds the sum of the rank matrix over
/// `[min(i,j)..max(i,j)]^2`.
#[derive(Clone, Debug)]
pub struct SumOfRankMatrix {
    s: SquareMatrix,
    additions: u64,
}

impl SumOfRankMatrix {
    /// Runs the three-step diagonal recurrence:
    ///
    /// 1. `s[i][i] = r[i][i]`
    /// 2. `s[i+1][i] = 2 r[i+1][i] + s[i][i] + s[i+1][i+1]`
    /// 3. `s[i+j][i] = 2 r[i+j][i] + s[i+j-1][i] + s[i+j][i+1] - s[i+j-1][i+1]`
    ///
    /// mirroring each entry across the diagonal. Only additive operations
    /// are counted (see [`SumOfRankMatrix::addition_count`]); there are
    /// `1.5 n^2 - 2.5 n + 1` of them, the promised ~1.5 n^2.
    pub fn from_rank(rank: &RankMatrix) -> SumOfRankMatrix {
        SumOfRankMatrix::from_matrix(rank.as_matrix())
    }

    /// As [`SumOfRankMatrix::from_rank`], for a raw symmetric matrix.
    pub fn from_matrix(r: &SquareMatrix) -> SumOfRankMatrix {
        let n = r.n();
        let mut s = SquareMatrix::zeros(n);
        let mut additions: u64 = 0;

        for i in 0..n {
            s[(i, i)] = r[(i, i)];
        }
        for i in 0..n.saturating_sub(1) {
            let v = 2.0 * r[(i + 1, i)] + s[(i, i)] + s[(i + 1, i + 1)];
            additions += 2;
            s[(i + 1, i)] = v;
            s[(i, i + 1)] = v;
        }
        for j in 2..n {
            for i in 0..(n - j) {
                let v = 2.0 * r[(i + j, i)] + s[(i + j - 1, i)] + s[(i + j, i + 1)]
                    - s[(i + j - 1, i + 1)];
                additions += 3;
                s[(i + j, i)] = v;
                s[(i, i + j)] = v;
            }
        }
        SumOfRankMatrix { s, additions }
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    /// Sum of rank values over the square region spanned by sentences
    /// `first..=last` (arguments may be given in either order).
    pub fn sum(&self, first: usize, last: usize) -> f64 {
        self.s[(first.max(last), first.min(last))]
    }

    pub fn as_matrix(&self) -> &SquareMatrix {
        &self.s
    }

    /// Number of additive operations the recurrence performed; the
    /// doubling of corner elements is not a sum.
    pub fn addition_count(&self) -> u64 {
        self.additions
    }
}

/// Precomputes the sum-of-rank table for a rank matrix.
pub fn sum_of_rank(rank: &RankMatrix) -> SumOfRankMatrix {
    SumOfRankMatrix::from_rank(rank)
}

/// Where candidate-split evaluation gets its segment sums from.
trait SegmentSums {
    fn segment_sum(&self, first: usize, last: usize) -> f64;
    fn len(&self) -> usize;
}

impl SegmentSums for SumOfRankMatrix {
    fn segment_sum(&self, first: usize, last: usize) -> f64 {
        self.sum(first, last)
    }

    fn len(&self) -> usize {
        self.n()
    }
}

/// Reference provider that recomputes every segment sum by scanning the
/// rank submatrix. Quadratic per lookup; exists to be measured against.
struct NaiveSums<'a> {
    rank: &'a SquareMatrix,
}

impl SegmentSums for NaiveSums<'_> {
    fn segment_sum(&self, first: usize, last: usize) -> f64 {
        let mut total = 0.0;
        for i in first..=last {
            for j in first..=last {
                total += self.rank[(i, j)];
            }
        }
        total
    }

    fn len(&self) -> usize {
        self.rank.n()
    }
}

/// Inside density of a segmentation: total rank mass inside the segments'
/// diagonal squares over their total area.
pub fn inside_density(segmentation: &Segmentation, s: &SumOfRankMatrix) -> f64 {
    density_of(&segmentation.segments(), s)
}

fn density_of<S: SegmentSums>(segments: &[Segment], sums: &S) -> f64 {
    let mut mass = 0.0;
    let mut area = 0.0;
    for seg in segments {
        mass += sums.segment_sum(seg.first, seg.last);
        area += seg.area();
    }
    mass / area
}

/// The split chosen by one clustering step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitChoice {
    /// Index of the segment that was split.
    pub segment_index: usize,
    /// The new cut position (first sentence of the right half).
    pub cut: usize,
    /// Inside density of the segmentation after this split.
    pub density: f64,
}

/// Evaluates every admissible (segment, cut) pair and returns the one
/// maximising the resulting density. Ties go to the smallest cut position,
/// then the smallest segment index. Fails when every segment is a
/// singleton.
pub fn best_split(current: &Segmentation, s: &SumOfRankMatrix) -> Result<SplitChoice> {
    best_split_of(&current.segments(), s).ok_or(Error::FullySegmented)
}

fn best_split_of<S: SegmentSums>(segments: &[Segment], sums: &S) -> Option<SplitChoice> {
    // Totals are refreshed once per step, in segment order; each candidate
    // then costs two sum lookups instead of a walk over every segment.
    let seg_sums: Vec<f64> =
        segments.iter().map(|seg| sums.segment_sum(seg.first, seg.last)).collect();
    let total_mass: f64 = seg_sums.iter().sum();
    let total_area: f64 = segments.iter().map(Segment::area).sum();
    let mut best: Option<SplitChoice> = None;
    for (k, seg) in segments.iter().enumerate() {
        let other_mass = total_mass - seg_sums[k];
        let other_area = total_area - seg.area();
        for cut in (seg.first + 1)..=seg.last {
            let left = (cut - seg.first) as f64;
            let right = (seg.last + 1 - cut) as f64;
            let mass = other_mass
                + sums.segment_sum(seg.first, cut - 1)
                + sums.segment_sum(cut, seg.last);
            let area = other_area + left * left + right * right;
            let density = mass / area;
            // Candidates arrive in ascending (segment, cut) order, so a
            // strict comparison implements the declared tie-break.
            if best.is_none_or(|b| density > b.density) {
                best = Some(SplitChoice { segment_index: k, cut, density });
            }
        }
    }
    best
}

/// The record of a clustering run: one inside density per segmentation
/// level, plus the cut each step introduced.
#[derive(Clone, Debug)]
pub struct ClusterTrace {
    num_sentences: usize,
    densities: Vec<f64>,
    cuts_added: Vec<usize>,
}

impl ClusterTrace {
    pub(crate) fn new(
        num_sentences: usize,
        densities: Vec<f64>,
        cuts_added: Vec<usize>,
    ) -> ClusterTrace {
        debug_assert_eq!(densities.len(), cuts_added.len() + 1);
        ClusterTrace { num_sentences, densities, cuts_added }
    }

    pub fn num_sentences(&self) -> usize {
        self.num_sentences
    }

    /// Number of segmentation levels recorded; level `n` (1-based) has `n`
    /// segments. A run to completion records `b + 1` levels for `b`
    /// potential boundaries.
    pub fn num_levels(&self) -> usize {
        self.densities.len()
    }

    /// `D` per level, starting from the single-segment document.
    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    /// The cut introduced by each step, in the order taken.
    pub fn cuts_added(&self) -> &[usize] {
        &self.cuts_added
    }

    /// Density gradient: `delta D` at levels `2..=num_levels`.
    pub fn deltas(&self) -> Vec<f64> {
        self.densities.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// The gradient after convolution smoothing.
    pub fn smoothed_deltas(&self) -> Vec<f64> {
        smooth_gradient(&self.deltas())
    }

    /// The segmentation after `num_segments - 1` steps.
    ///
    /// Splitting never moves earlier cuts, so level `m` is exactly the
    /// first `m - 1` recorded cuts. Panics if the trace has fewer levels.
    pub fn segmentation_at(&self, num_segments: usize) -> Segmentation {
        assert!(
            (1..=self.num_levels()).contains(&num_segments),
            "level {num_segments} not in trace (1..={})",
            self.num_levels()
        );
        let mut cuts: Vec<usize> = self.cuts_added[..num_segments - 1].to_vec();
        cuts.sort_unstable();
        Segmentation::new(self.num_sentences, cuts).expect("trace cuts are valid")
    }

    /// Writes the trace as tab-separated lines: level, density, gradient,
    /// smoothed gradient and the cut the step added. Fields that do not
    /// exist at level 1 are left empty.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "segments\tdensity\tdelta\tsmoothed_delta\tcut_added")?;
        let deltas = self.deltas();
        let smoothed = self.smoothed_deltas();
        for (i, d) in self.densities.iter().enumerate() {
            if i == 0 {
                writeln!(out, "1\t{d:.12}\t\t\t")?;
            } else {
                writeln!(
                    out,
                    "{}\t{d:.12}\t{:.12}\t{:.12}\t{}",
                    i + 1,
                    deltas[i - 1],
                    smoothed[i - 1],
                    self.cuts_added[i - 1]
                )?;
            }
        }
        Ok(())
    }
}

/// Runs divisive clustering over a rank matrix using the sum-of-rank
/// precomputation. With `fixed_segments = Some(m)` the run stops at `m`
/// segments; otherwise it runs through every potential boundary so the
/// full gradient is available for automatic termination.
pub fn divisive_cluster(rank: &RankMatrix, fixed_segments: Option<usize>) -> Result<ClusterTrace> {
    let sums = SumOfRankMatrix::from_rank(rank);
    cluster_core(&sums, fixed_segments)
}

/// As [`divisive_cluster`], but recomputing segment sums from the rank
/// matrix at every lookup instead of precomputing them. This is the
/// benchmark reference for the speed gain of the precomputation.
pub fn divisive_cluster_naive(
    rank: &RankMatrix,
    fixed_segments: Option<usize>,
) -> Result<ClusterTrace> {
    cluster_core(&NaiveSums { rank: rank.as_matrix() }, fixed_segments)
}

fn cluster_core<S: SegmentSums>(sums: &S, fixed_segments: Option<usize>) -> Result<ClusterTrace> {
    let n = sums.len();
    if n < 2 {
        return Err(Error::DocumentTooShort { num_sentences: n });
    }
    let target = match fixed_segments {
        Some(0) => {
            return Err(Error::InvalidSegmentCount { requested: 0, num_sentences: n });
        }
        Some(m) if m > n => {
            return Err(Error::InvalidSegmentCount { requested: m, num_sentences: n });
        }
        Some(m) => m,
        None => n,
    };

    let mut segments = vec![Segment { first: 0, last: n - 1 }];
    let mut densities = vec![density_of(&segments, sums)];
    let mut cuts_added = Vec::with_capacity(target - 1);
    while segments.len() < target {
        let choice = best_split_of(&segments, sums)
            .expect("a splittable segment exists while below the target");
        let seg = segments[choice.segment_index];
        segments[choice.segment_index] = Segment { first: seg.first, last: choice.cut - 1 };
        segments.insert(choice.segment_index + 1, Segment { first: choice.cut, last: seg.last });
        densities.push(choice.density);
        cuts_added.push(choice.cut);
    }
    Ok(ClusterTrace::new(n, densities, cuts_added))
}

/// Smooths a gradient by convolution with the mask `{1,2,4,8,4,2,1}`,
/// normalised over the in-bounds weights at the sequence edges.
pub fn smooth_gradient(deltas: &[f64]) -> Vec<f64> {
    const KERNEL: [f64; 7] = [1.0, 2.0, 4.0, 8.0, 4.0, 2.0, 1.0];
    let len = deltas.len() as isize;
    (0..len)
        .map(|i| {
            let mut acc = 0.0;
            let mut weight = 0.0;
            for (k, &w) in KERNEL.iter().enumerate() {
                let j = i + k as isize - 3;
                if (0..len).contains(&j) {
                    acc += w * deltas[j as usize];
                    weight += w;
                }
            }
            acc / weight
        })
        .collect()
}

/// How the thresholded gradient is turned into a segment count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TerminationRule {
    /// The chosen level is the largest `n` whose smoothed gradient exceeds
    /// the threshold: every unusually profitable split is accepted.
    #[default]
    LastAboveThreshold,
    /// Alternative reading kept for experimentation: stop just before the
    /// first level whose smoothed gradient falls below the threshold.
    FirstBelowThreshold,
}

/// Chooses the number of segments from a completed trace by thresholding
/// the smoothed gradient at `mean + coeff * sqrt(variance)`. Returns 1
/// when nothing exceeds the threshold (for instance, a flat gradient).
pub fn auto_terminate(trace: &ClusterTrace, coeff: f64) -> usize {
    auto_terminate_with(trace, coeff, TerminationRule::default())
}

/// As [`auto_terminate`] with an explicit [`TerminationRule`].
pub fn auto_terminate_with(trace: &ClusterTrace, coeff: f64, rule: TerminationRule) -> usize {
    let smoothed = trace.smoothed_deltas();
    if smoothed.is_empty() {
        return 1;
    }
    let count = smoothed.len() as f64;
    let mean = smoothed.iter().sum::<f64>() / count;
    let variance = smoothed.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count;
    let threshold = mean + coeff * variance.sqrt();
    match rule {
        TerminationRule::LastAboveThreshold => smoothed
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &v)| v > threshold)
            .map_or(1, |(i, _)| i + 2),
        TerminationRule::FirstBelowThreshold => smoothed
            .iter()
            .enumerate()
            .find(|(_, &v)| v < threshold)
            .map_or(smoothed.len() + 1, |(i, _)| (i + 2) - 1),
    }
}

/// Options for the end-to-end segmentation pipeline.
#[derive(Clone, Debug)]
pub struct SegmentOptions {
    /// Rank mask (11 x 11 unless overridden).
    pub mask: RankMask,
    /// Termination coefficient `c` in the `mean + c * sqrt(variance)`
    /// threshold.
    pub coeff: f64,
    /// Stop at exactly this many segments instead of terminating
    /// automatically.
    pub fixed_segments: Option<usize>,
    /// How the thresholded gradient picks the segment count.
    pub termination: TerminationRule,
    /// `Some(steps)` switches the similarity measure to the
    /// spread-activation semantic backend.
    pub activation_steps: Option<usize>,
}

impl Default for SegmentOptions {
    fn default() -> SegmentOptions {
        SegmentOptions {
            mask: RankMask::default(),
            coeff: 1.2,
            fixed_segments: None,
            termination: TerminationRule::default(),
            activation_steps: None,
        }
    }
}

/// Segments a preprocessed document: similarity, rank filtering, divisive
/// clustering and (unless a fixed count is given) automatic termination.
pub fn segment_document(
    vectors: &[SentenceVector],
    options: &SegmentOptions,
) -> Result<(Segmentation, ClusterTrace)> {
    let sim = match options.activation_steps {
        Some(steps) => build_similarity_matrix_semantic(vectors, steps)?,
        None => build_similarity_matrix(vectors)?,
    };
    segment_similarity(&sim, options)
}

/// As [`segment_document`], starting from an already-built similarity
/// matrix.
pub fn segment_similarity(
    sim: &SimilarityMatrix,
    options: &SegmentOptions,
) -> Result<(Segmentation, ClusterTrace)> {
    let rank = rank_filter(sim, options.mask);
    let trace = divisive_cluster(&rank, options.fixed_segments)?;
    let m = match options.fixed_segments {
        Some(m) => m,
        None => auto_terminate_with(&trace, options.coeff, options.termination),
    };
    Ok((trace.segmentation_at(m), trace))
}
