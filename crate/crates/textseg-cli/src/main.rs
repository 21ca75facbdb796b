//! Command-line interface for the textseg toolkit.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use textseg::eval::{
    load_collection_dir, load_corpus_dir, write_corpus_dir, Algorithm, BenchmarkOptions,
    CorpusManifest, CorpusSpec,
};
use textseg::{
    generate_corpus, preprocess_document, rank_filter, run_benchmark, segment_similarity,
    ClusterTrace, RankMask, SegmentOptions, Segmentation, SimilarityMatrix, Stoplist,
    TerminationRule,
};

#[derive(Parser)]
#[command(name = "textseg", version, about = "Linear text segmentation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Segment a document (one sentence per line) and emit boundary JSON.
    Segment(SegmentArgs),
    /// Generate a synthetic corpus of concatenated document prefixes.
    GenCorpus(GenCorpusArgs),
    /// Score segmentation algorithms over a corpus.
    Evaluate(EvaluateArgs),
    /// Report per-sample timing and the sum-of-rank speedup.
    Bench(BenchArgs),
}

#[derive(Args)]
struct PipelineFlags {
    /// Square rank mask width (odd).
    #[arg(long, default_value_t = 11)]
    mask: usize,

    /// Termination threshold coefficient c.
    #[arg(long, default_value_t = 1.2)]
    coeff: f64,

    /// Stopword file (one word per line, # comments); built-in English
    /// list when omitted.
    #[arg(long)]
    stopwords: Option<PathBuf>,

    /// Use the spread-activation semantic similarity backend.
    #[arg(long)]
    semantic: bool,

    /// Activation steps for the semantic backend.
    #[arg(long, default_value_t = 5)]
    activation_steps: usize,

    /// How the thresholded gradient picks the segment count.
    #[arg(long, value_enum, default_value_t = TerminationFlag::LastAbove)]
    termination: TerminationFlag,
}

#[derive(Clone, Copy, ValueEnum)]
enum TerminationFlag {
    /// Largest level whose smoothed gradient exceeds the threshold.
    LastAbove,
    /// Stop just before the first level that falls below the threshold.
    FirstBelow,
}

impl From<TerminationFlag> for TerminationRule {
    fn from(flag: TerminationFlag) -> TerminationRule {
        match flag {
            TerminationFlag::LastAbove => TerminationRule::LastAboveThreshold,
            TerminationFlag::FirstBelow => TerminationRule::FirstBelowThreshold,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    Sim,
    Rank,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args)]
struct SegmentArgs {
    /// Input document, one sentence per line.
    #[arg(long)]
    input: PathBuf,

    /// Write the boundary JSON here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Produce exactly this many segments instead of terminating
    /// automatically.
    #[arg(long)]
    segments: Option<usize>,

    #[command(flatten)]
    pipeline: PipelineFlags,

    /// Dump a matrix as an ASCII PGM image (to <kind>.pgm unless
    /// --dump-matrix-out is given).
    #[arg(long, value_enum)]
    dump_matrix: Option<MatrixKind>,

    /// Target file for --dump-matrix.
    #[arg(long)]
    dump_matrix_out: Option<PathBuf>,

    /// Write the clustering trace as TSV to this file.
    #[arg(long)]
    dump_trace: Option<PathBuf>,
}

#[derive(Args)]
struct GenCorpusArgs {
    /// Directory of source documents, one sentence per line per file.
    #[arg(long)]
    collection: PathBuf,

    /// Output corpus directory.
    #[arg(long)]
    out: PathBuf,

    /// Segment length range in sentences, as MIN:MAX.
    #[arg(long, default_value = "3:11")]
    range: String,

    /// Number of samples to generate.
    #[arg(long, default_value_t = 100)]
    samples: usize,

    /// Segments concatenated per sample.
    #[arg(long, default_value_t = 10)]
    segments_per_sample: usize,

    /// Generation seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Corpus directory produced by gen-corpus.
    #[arg(long)]
    corpus: PathBuf,

    /// Algorithm to run (repeatable): c99, c99-fixed, b_none, b_all,
    /// b_even, b_rand_any, b_rand_b. All of them when omitted.
    #[arg(long = "algo")]
    algorithms: Vec<String>,

    /// Window width for the error metric; half the mean true segment
    /// length per sample when omitted.
    #[arg(long)]
    window: Option<usize>,

    /// Boundary count for b_even and b_rand_b as segments - 1; each
    /// sample's true count when omitted.
    #[arg(long)]
    segments: Option<usize>,

    /// Seed for the random baselines.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    #[command(flatten)]
    pipeline: PipelineFlags,
}

#[derive(Args)]
struct BenchArgs {
    /// Corpus directory produced by gen-corpus.
    #[arg(long)]
    corpus: PathBuf,

    /// Algorithm to time (repeatable); c99 and c99-fixed when omitted.
    #[arg(long = "algo")]
    algorithms: Vec<String>,

    /// Seed for the random baselines and the speedup measurement.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Matrix size for the naive-vs-precomputed speedup measurement.
    #[arg(long, default_value_t = 200)]
    ratio_sentences: usize,

    #[command(flatten)]
    pipeline: PipelineFlags,
}

enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(msg) | CliError::Data(msg) => msg,
        }
    }
}

impl From<textseg::Error> for CliError {
    fn from(err: textseg::Error) -> CliError {
        use textseg::Error::*;
        match err {
            InvalidMask { .. }
            | UnknownAlgorithm { .. }
            | InvalidCorpusSpec { .. }
            | InvalidSegmentCount { .. }
            | TooManyBoundaries { .. }
            | BoundaryCountRequired { .. }
            | InvalidProbabilityArgs { .. } => CliError::Usage(err.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> CliError {
        CliError::Data(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Segment(args) => cmd_segment(args),
        Command::GenCorpus(args) => cmd_gen_corpus(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn load_stoplist(path: &Option<PathBuf>) -> Result<Stoplist, CliError> {
    match path {
        Some(path) => Ok(Stoplist::load(path)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?),
        None => Ok(Stoplist::default_english()),
    }
}

fn segment_options(flags: &PipelineFlags, fixed: Option<usize>) -> Result<SegmentOptions, CliError> {
    if flags.coeff.is_nan() || flags.coeff <= 0.0 {
        return Err(CliError::Usage(format!(
            "--coeff must be positive, got {}",
            flags.coeff
        )));
    }
    if flags.activation_steps == 0 {
        return Err(CliError::Usage("--activation-steps must be at least 1".into()));
    }
    Ok(SegmentOptions {
        mask: RankMask::square(flags.mask)?,
        coeff: flags.coeff,
        fixed_segments: fixed,
        termination: flags.termination.into(),
        activation_steps: flags.semantic.then_some(flags.activation_steps),
    })
}

/// Fingerprint covering everything that shapes a segment run's output.
fn segment_config_fingerprint(
    flags: &PipelineFlags,
    stoplist: &Stoplist,
    fixed: Option<usize>,
) -> String {
    let termination = match flags.termination {
        TerminationFlag::LastAbove => "last-above",
        TerminationFlag::FirstBelow => "first-below",
    };
    let canonical = format!(
        "stoplist={};mask={}x{};coeff={};segments={:?};semantic={};steps={};termination={}",
        stoplist.fingerprint(),
        flags.mask,
        flags.mask,
        flags.coeff,
        fixed,
        flags.semantic,
        flags.activation_steps,
        termination,
    );
    textseg::fingerprint::fingerprint(canonical.as_bytes())
}

fn cmd_segment(args: SegmentArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.input.display())))?;
    let lines: Vec<&str> = text.lines().collect();
    let stoplist = load_stoplist(&args.pipeline.stopwords)?;
    let options = segment_options(&args.pipeline, args.segments)?;

    let vectors = preprocess_document(&lines, &stoplist)?;
    let sim = match options.activation_steps {
        Some(steps) => textseg::build_similarity_matrix_semantic(&vectors, steps)?,
        None => textseg::build_similarity_matrix(&vectors)?,
    };

    if let Some(kind) = args.dump_matrix {
        dump_matrix(kind, &sim, &options, &args.dump_matrix_out)?;
    }

    let (segmentation, trace) = segment_similarity(&sim, &options)?;

    if let Some(path) = &args.dump_trace {
        write_trace(path, &trace)?;
    }

    let config = segment_config_fingerprint(&args.pipeline, &stoplist, args.segments);
    let json = boundary_json(&segmentation, &config);
    match &args.output {
        Some(path) => fs::write(path, json + "\n")?,
        None => println!("{json}"),
    }
    Ok(())
}

fn boundary_json(segmentation: &Segmentation, config: &str) -> String {
    let boundaries: Vec<String> =
        segmentation.boundaries().iter().map(|b| b.to_string()).collect();
    format!(
        "{{\"boundaries\":[{}],\"num_sentences\":{},\"config\":\"{}\"}}",
        boundaries.join(","),
        segmentation.num_sentences(),
        config
    )
}

fn dump_matrix(
    kind: MatrixKind,
    sim: &SimilarityMatrix,
    options: &SegmentOptions,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let (matrix, default_name) = match kind {
        MatrixKind::Sim => (sim.as_matrix().clone(), "sim.pgm"),
        MatrixKind::Rank => (rank_filter(sim, options.mask).as_matrix().clone(), "rank.pgm"),
    };
    let path = out.clone().unwrap_or_else(|| PathBuf::from(default_name));
    let mut file = fs::File::create(&path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    matrix.write_pgm(&mut file)?;
    Ok(())
}

fn write_trace(path: &Path, trace: &ClusterTrace) -> Result<(), CliError> {
    let mut file = fs::File::create(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    trace.write_tsv(&mut file)?;
    file.flush()?;
    Ok(())
}

fn parse_range(range: &str) -> Result<(usize, usize), CliError> {
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| CliError::Usage(format!("invalid range {range:?}: expected MIN:MAX")))
    };
    match range.split_once(':') {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => Err(CliError::Usage(format!("invalid range {range:?}: expected MIN:MAX"))),
    }
}

fn cmd_gen_corpus(args: GenCorpusArgs) -> Result<(), CliError> {
    let (min, max) = parse_range(&args.range)?;
    let spec = CorpusSpec::new(min, max, args.segments_per_sample, args.samples, args.seed)?;
    let collection = load_collection_dir(&args.collection)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.collection.display())))?;
    let corpus = generate_corpus(&collection, &spec)?;
    for id in &corpus.skipped {
        eprintln!(
            "warning: skipping {id:?}: fewer than {} sentences",
            spec.max_segment_sentences
        );
    }
    write_corpus_dir(&args.out, &corpus, &spec, &collection)?;
    eprintln!(
        "wrote {} samples and manifest.json to {}",
        corpus.samples.len(),
        args.out.display()
    );
    Ok(())
}

fn range_label(manifest: &Option<CorpusManifest>) -> String {
    manifest
        .as_ref()
        .map(|m| format!("{}:{}", m.spec.min_segment_sentences, m.spec.max_segment_sentences))
        .unwrap_or_else(|| "-".into())
}

fn resolve_algorithms(
    names: &[String],
    default: &[&str],
    options: &SegmentOptions,
) -> Result<Vec<Algorithm>, CliError> {
    if names.is_empty() {
        return default
            .iter()
            .map(|name| Algorithm::parse(name, options).map_err(CliError::from))
            .collect();
    }
    names.iter().map(|name| Algorithm::parse(name, options).map_err(CliError::from)).collect()
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let options = segment_options(&args.pipeline, None)?;
    let algorithms = resolve_algorithms(
        &args.algorithms,
        &["c99", "c99-fixed", "b_even", "b_none", "b_rand_b", "b_all", "b_rand_any"],
        &options,
    )?;
    let (samples, manifest) = load_corpus_dir(&args.corpus)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.corpus.display())))?;
    let bench_options = BenchmarkOptions {
        stoplist: load_stoplist(&args.pipeline.stopwords)?,
        window: args.window,
        seed: args.seed,
        baseline_boundaries: args.segments.map(|m| m.saturating_sub(1)),
        range_label: range_label(&manifest),
    };
    let report = run_benchmark(&samples, &algorithms, &bench_options)?;
    match args.format {
        Format::Tsv => {
            let mut out = std::io::stdout().lock();
            report.write_tsv(&mut out)?;
        }
        Format::Json => println!("{}", report.to_json()),
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let options = segment_options(&args.pipeline, None)?;
    let algorithms = resolve_algorithms(&args.algorithms, &["c99", "c99-fixed"], &options)?;
    let (samples, manifest) = load_corpus_dir(&args.corpus)
        .map_err(|e| CliError::Data(format!("{}: {e}", args.corpus.display())))?;
    let bench_options = BenchmarkOptions {
        stoplist: load_stoplist(&args.pipeline.stopwords)?,
        window: None,
        seed: args.seed,
        baseline_boundaries: None,
        range_label: range_label(&manifest),
    };
    let report = run_benchmark(&samples, &algorithms, &bench_options)?;

    println!("algorithm\trange\tmean_seconds\tmedian_seconds");
    for row in &report.rows {
        println!(
            "{}\t{}\t{:.6}\t{:.6}",
            row.algorithm,
            report.range,
            row.mean_seconds,
            row.median_seconds()
        );
    }
    println!("# config={}", report.config);
    let speedup = textseg::eval::sum_of_rank_speedup(args.ratio_sentences, args.seed)?;
    println!(
        "# sum_of_rank speedup: n={} naive={:.6}s precomputed={:.6}s ratio={:.2}",
        speedup.num_sentences, speedup.naive_seconds, speedup.precomputed_seconds, speedup.ratio
    );
    Ok(())
}
