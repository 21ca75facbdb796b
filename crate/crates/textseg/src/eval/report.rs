//! The benchmark runner: algorithms, timing and report formats.

use std::io::{self, Write};
use std::time::Instant;

use serde::Serialize;

use crate::cluster::{divisive_cluster, divisive_cluster_naive, segment_document, SegmentOptions};
use crate::eval::{baseline_segment, pk_error, BaselineKind, CorpusSample};
use crate::fingerprint::fingerprint;
use crate::matrix::SquareMatrix;
use crate::preprocess::{preprocess_document, Stoplist};
use crate::rank::RankMatrix;
use crate::rng::SplitMix64;
use crate::segmentation::Segmentation;
use crate::{Error, Result};

/// A segmenter under evaluation.
#[derive(Clone, Debug)]
pub enum Algorithm {
    /// The full pipeline with automatic termination.
    C99 { options: SegmentOptions },
    /// The full pipeline given each sample's true segment count.
    C99Fixed { options: SegmentOptions },
    /// A degenerate baseline.
    Baseline { kind: BaselineKind },
}

impl Algorithm {
    /// The report and command-line name.
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::C99 { .. } => "c99",
            Algorithm::C99Fixed { .. } => "c99-fixed",
            Algorithm::Baseline { kind } => kind.name(),
        }
    }

    /// Resolves a command-line name, attaching `options` to the pipeline
    /// variants.
    pub fn parse(name: &str, options: &SegmentOptions) -> Result<Algorithm> {
        match name {
            "c99" => Ok(Algorithm::C99 { options: options.clone() }),
            "c99-fixed" => Ok(Algorithm::C99Fixed { options: options.clone() }),
            other => BaselineKind::all()
                .into_iter()
                .find(|kind| kind.name() == other)
                .map(|kind| Algorithm::Baseline { kind })
                .ok_or_else(|| Error::UnknownAlgorithm { name: other.to_string() }),
        }
    }

    /// The default evaluation suite: both pipeline modes, then every
    /// baseline.
    pub fn standard_suite(options: &SegmentOptions) -> Vec<Algorithm> {
        let mut suite = vec![
            Algorithm::C99 { options: options.clone() },
            Algorithm::C99Fixed { options: options.clone() },
        ];
        suite.extend(BaselineKind::all().into_iter().map(|kind| Algorithm::Baseline { kind }));
        suite
    }
}

/// Options shared by a benchmark run.
#[derive(Clone, Debug)]
pub struct BenchmarkOptions {
    /// Stoplist used by the pipeline algorithms.
    pub stoplist: Stoplist,
    /// Window width override for the error metric; per-sample default
    /// otherwise.
    pub window: Option<usize>,
    /// Seed for the random baselines.
    pub seed: u64,
    /// Boundary count for `b_even` and `b_rand_b`; each sample's true
    /// count minus one when absent.
    pub baseline_boundaries: Option<usize>,
    /// Label for the range column of the report (for instance `3:11`).
    pub range_label: String,
}

impl Default for BenchmarkOptions {
    fn default() -> BenchmarkOptions {
        BenchmarkOptions {
            stoplist: Stoplist::default_english(),
            window: None,
            seed: 0,
            baseline_boundaries: None,
            range_label: "-".into(),
        }
    }
}

/// Per-sample evaluation outcome.
#[derive(Clone, Debug, Serialize)]
pub struct SampleResult {
    pub index: usize,
    pub error: f64,
    pub seconds: f64,
    pub hypothesized_segments: usize,
}

/// One algorithm's results over the corpus.
#[derive(Clone, Debug, Serialize)]
pub struct AlgorithmReport {
    pub algorithm: String,
    pub mean_error: f64,
    pub mean_seconds: f64,
    pub samples: Vec<SampleResult>,
}

impl AlgorithmReport {
    /// Median of the per-sample wall times.
    pub fn median_seconds(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        let mut times: Vec<f64> = self.samples.iter().map(|s| s.seconds).collect();
        times.sort_by(|a, b| a.total_cmp(b));
        let mid = times.len() / 2;
        if times.len() % 2 == 1 {
            times[mid]
        } else {
            0.5 * (times[mid - 1] + times[mid])
        }
    }
}

/// A full benchmark report.
#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    /// Fingerprint of everything that shapes the numbers: stoplist,
    /// algorithm roster and options, seed and window. Two runs with equal
    /// fingerprints and corpora produce identical non-timing output.
    pub config: String,
    pub range: String,
    pub rows: Vec<AlgorithmReport>,
}

impl EvalReport {
    /// Writes the summary table: algorithm, range, mean error, mean
    /// seconds, tab-separated with a header line and a trailing config
    /// comment so the numbers stay tied to their settings.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "algorithm\trange\tmean_error\tmean_seconds")?;
        for row in &self.rows {
            writeln!(
                out,
                "{}\t{}\t{:.4}\t{:.6}",
                row.algorithm, self.range, row.mean_error, row.mean_seconds
            )?;
        }
        writeln!(out, "# config={}", self.config)?;
        Ok(())
    }

    /// The report with per-sample detail as pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn config_fingerprint(algorithms: &[Algorithm], options: &BenchmarkOptions) -> String {
    let mut canonical = format!(
        "stoplist={};seed={};window={:?};baseline_b={:?};range={}",
        options.stoplist.fingerprint(),
        options.seed,
        options.window,
        options.baseline_boundaries,
        options.range_label,
    );
    for algorithm in algorithms {
        match algorithm {
            Algorithm::C99 { options: o } | Algorithm::C99Fixed { options: o } => {
                canonical.push_str(&format!(
                    ";{}:mask={}x{},coeff={},termination={:?},activation={:?}",
                    algorithm.name(),
                    o.mask.width(),
                    o.mask.height(),
                    o.coeff,
                    o.termination,
                    o.activation_steps,
                ));
            }
            Algorithm::Baseline { .. } => {
                canonical.push_str(&format!(";{}", algorithm.name()));
            }
        }
    }
    fingerprint(canonical.as_bytes())
}

/// Runs each algorithm over the corpus, scoring with [`pk_error`] and
/// timing each sample. Algorithms run in the order given; each gets a
/// fresh random stream seeded with `options.seed`, so reports do not
/// depend on which other algorithms were requested.
pub fn run_benchmark(
    corpus: &[CorpusSample],
    algorithms: &[Algorithm],
    options: &BenchmarkOptions,
) -> Result<EvalReport> {
    let mut rows = Vec::with_capacity(algorithms.len());
    for algorithm in algorithms {
        let mut samples = Vec::with_capacity(corpus.len());
        let mut rng = SplitMix64::new(options.seed);
        for (index, sample) in corpus.iter().enumerate() {
            let start = Instant::now();
            let hypothesis = run_algorithm(algorithm, sample, options, &mut rng)?;
            let seconds = start.elapsed().as_secs_f64();
            let error = pk_error(&sample.reference, &hypothesis, options.window)?;
            samples.push(SampleResult {
                index,
                error,
                seconds,
                hypothesized_segments: hypothesis.num_segments(),
            });
        }
        let count = samples.len().max(1) as f64;
        rows.push(AlgorithmReport {
            algorithm: algorithm.name().to_string(),
            mean_error: samples.iter().map(|s| s.error).sum::<f64>() / count,
            mean_seconds: samples.iter().map(|s| s.seconds).sum::<f64>() / count,
            samples,
        });
    }
    Ok(EvalReport {
        config: config_fingerprint(algorithms, options),
        range: options.range_label.clone(),
        rows,
    })
}

fn run_algorithm(
    algorithm: &Algorithm,
    sample: &CorpusSample,
    options: &BenchmarkOptions,
    rng: &mut SplitMix64,
) -> Result<Segmentation> {
    match algorithm {
        Algorithm::C99 { options: seg_options } => {
            let vectors = preprocess_document(&sample.sentences, &options.stoplist)?;
            let run = SegmentOptions { fixed_segments: None, ..seg_options.clone() };
            Ok(segment_document(&vectors, &run)?.0)
        }
        Algorithm::C99Fixed { options: seg_options } => {
            let vectors = preprocess_document(&sample.sentences, &options.stoplist)?;
            let run = SegmentOptions {
                fixed_segments: Some(sample.reference.num_segments()),
                ..seg_options.clone()
            };
            Ok(segment_document(&vectors, &run)?.0)
        }
        Algorithm::Baseline { kind } => {
            let n = sample.reference.num_sentences();
            let b = options
                .baseline_boundaries
                .unwrap_or_else(|| sample.reference.num_segments() - 1);
            baseline_segment(*kind, n, Some(b), rng)
        }
    }
}

/// Timing comparison of clustering with the precomputed sum-of-rank table
/// against the naive variant that rescans rank submatrices.
#[derive(Clone, Debug, Serialize)]
pub struct SpeedupReport {
    pub num_sentences: usize,
    pub precomputed_seconds: f64,
    pub naive_seconds: f64,
    pub ratio: f64,
}

/// Measures [`SpeedupReport`] on a random symmetric matrix of the given
/// size, clustering to completion with both implementations.
pub fn sum_of_rank_speedup(num_sentences: usize, seed: u64) -> Result<SpeedupReport> {
    let mut rng = SplitMix64::new(seed);
    let mut matrix = SquareMatrix::zeros(num_sentences);
    for i in 0..num_sentences {
        for j in i..num_sentences {
            let v = rng.unit_f64();
            matrix[(i, j)] = v;
            matrix[(j, i)] = v;
        }
    }
    let rank = RankMatrix::from_matrix(matrix);

    let start = Instant::now();
    let fast = divisive_cluster(&rank, None)?;
    let precomputed_seconds = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let slow = divisive_cluster_naive(&rank, None)?;
    let naive_seconds = start.elapsed().as_secs_f64();

    debug_assert_eq!(fast.cuts_added(), slow.cuts_added());
    Ok(SpeedupReport {
        num_sentences,
        precomputed_seconds,
        naive_seconds,
        ratio: naive_seconds / precomputed_seconds,
    })
}
