//! Synthetic test corpora of concatenated document prefixes.
//!
//! A sample is a concatenation of segments; each segment is the first `n`
//! sentences of a randomly chosen source document, with `n` drawn uniformly
//! from the configured range. True boundaries are therefore known exactly.
//!
//! On disk a sample is one sentence per line, with segments separated by a
//! delimiter line of exactly ten `=` characters; a corpus directory holds
//! numbered sample files plus a JSON manifest recording the generation
//! parameters and source fingerprints.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::fingerprint::fingerprint;
use crate::rng::SplitMix64;
use crate::segmentation::Segmentation;
use crate::{Error, Result};

/// The line separating segments in a sample file.
pub const SEGMENT_DELIMITER: &str = "==========";

/// Parameters of corpus generation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    /// Smallest segment length in sentences.
    pub min_segment_sentences: usize,
    /// Largest segment length in sentences.
    pub max_segment_sentences: usize,
    /// Segments concatenated per sample.
    pub segments_per_sample: usize,
    /// Number of samples to generate.
    pub num_samples: usize,
    /// Seed for the generation stream.
    pub seed: u64,
}

impl CorpusSpec {
    pub fn new(
        min_segment_sentences: usize,
        max_segment_sentences: usize,
        segments_per_sample: usize,
        num_samples: usize,
        seed: u64,
    ) -> Result<CorpusSpec> {
        let spec = CorpusSpec {
            min_segment_sentences,
            max_segment_sentences,
            segments_per_sample,
            num_samples,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.min_segment_sentences == 0 {
            return Err(Error::InvalidCorpusSpec {
                reason: "segment length range must start at 1 or more".into(),
            });
        }
        if self.min_segment_sentences > self.max_segment_sentences {
            return Err(Error::InvalidCorpusSpec {
                reason: format!(
                    "empty segment length range {}:{}",
                    self.min_segment_sentences, self.max_segment_sentences
                ),
            });
        }
        if self.segments_per_sample == 0 {
            return Err(Error::InvalidCorpusSpec {
                reason: "samples need at least one segment".into(),
            });
        }
        Ok(())
    }
}

/// A source document: an identifier and its sentences, one per line.
#[derive(Clone, Debug)]
pub struct SourceDocument {
    pub id: String,
    pub sentences: Vec<String>,
}

/// One generated sample with its ground truth.
#[derive(Clone, Debug)]
pub struct CorpusSample {
    /// The concatenated sentences.
    pub sentences: Vec<String>,
    /// The true segmentation.
    pub reference: Segmentation,
    /// `(source document id, sentences taken)` per segment, in order.
    pub provenance: Vec<(String, usize)>,
}

/// The output of [`generate_corpus`].
#[derive(Clone, Debug)]
pub struct GeneratedCorpus {
    pub samples: Vec<CorpusSample>,
    /// Ids of source documents skipped for being shorter than the maximum
    /// segment length. Callers should surface these as warnings.
    pub skipped: Vec<String>,
}

/// Generates a corpus from a source collection.
///
/// Documents shorter than `max_segment_sentences` are skipped (reported in
/// [`GeneratedCorpus::skipped`]) so every draw of a segment length can be
/// satisfied. Generation is fully determined by the parameters: for each
/// segment of each sample, in order, the length is drawn first and the
/// source document second, both from one SplitMix64 stream seeded with
/// `spec.seed`.
pub fn generate_corpus(
    collection: &[SourceDocument],
    spec: &CorpusSpec,
) -> Result<GeneratedCorpus> {
    spec.validate()?;
    let mut eligible = Vec::new();
    let mut skipped = Vec::new();
    for doc in collection {
        if doc.sentences.len() >= spec.max_segment_sentences {
            eligible.push(doc);
        } else {
            skipped.push(doc.id.clone());
        }
    }
    if eligible.is_empty() && spec.num_samples > 0 {
        return Err(Error::EmptyCollection { min_sentences: spec.max_segment_sentences });
    }

    let mut rng = SplitMix64::new(spec.seed);
    let mut samples = Vec::with_capacity(spec.num_samples);
    for _ in 0..spec.num_samples {
        let mut sentences = Vec::new();
        let mut provenance = Vec::new();
        let mut cuts = Vec::new();
        for segment in 0..spec.segments_per_sample {
            let length = rng.range_inclusive(
                spec.min_segment_sentences as u64,
                spec.max_segment_sentences as u64,
            ) as usize;
            let doc = eligible[rng.below(eligible.len() as u64) as usize];
            sentences.extend(doc.sentences[..length].iter().cloned());
            provenance.push((doc.id.clone(), length));
            if segment + 1 < spec.segments_per_sample {
                cuts.push(sentences.len());
            }
        }
        let reference = Segmentation::new(sentences.len(), cuts)?;
        samples.push(CorpusSample { sentences, reference, provenance });
    }
    Ok(GeneratedCorpus { samples, skipped })
}

/// Renders a sample in the delimiter format.
pub fn sample_to_string(sample: &CorpusSample) -> String {
    let mut out = String::new();
    for (index, segment) in sample.reference.segments().iter().enumerate() {
        if index > 0 {
            out.push_str(SEGMENT_DELIMITER);
            out.push('\n');
        }
        for sentence in &sample.sentences[segment.first..=segment.last] {
            out.push_str(sentence);
            out.push('\n');
        }
    }
    out
}

/// Parses a sample from the delimiter format. Provenance is not stored in
/// the format and comes back empty.
pub fn sample_from_str(text: &str) -> Result<CorpusSample> {
    let mut sentences = Vec::new();
    let mut cuts = Vec::new();
    let mut segment_len = 0usize;
    for line in text.lines() {
        if line == SEGMENT_DELIMITER {
            if segment_len == 0 {
                return Err(Error::MalformedSample {
                    reason: "delimiter with no sentences before it".into(),
                });
            }
            cuts.push(sentences.len());
            segment_len = 0;
        } else {
            sentences.push(line.to_string());
            segment_len += 1;
        }
    }
    if segment_len == 0 {
        return Err(Error::MalformedSample {
            reason: if sentences.is_empty() {
                "sample has no sentences".into()
            } else {
                "trailing delimiter".into()
            },
        });
    }
    let reference = Segmentation::new(sentences.len(), cuts)?;
    Ok(CorpusSample { sentences, reference, provenance: Vec::new() })
}

/// The manifest written next to generated sample files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub spec: CorpusSpec,
    /// `(id, fingerprint)` of every eligible source document.
    pub sources: Vec<SourceFingerprint>,
    /// Documents skipped for being too short.
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SourceFingerprint {
    pub id: String,
    pub fingerprint: String,
}

/// Loads a collection directory: every regular file becomes a document,
/// identified by its file name, holding one sentence per non-empty line.
/// Files are ordered by name so document indices are reproducible.
pub fn load_collection_dir(dir: &Path) -> Result<Vec<SourceDocument>> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .collect::<std::io::Result<Vec<_>>>()?
        .into_iter()
        .map(|entry| entry.path())
        .filter(|path| path.is_file())
        .collect();
    paths.sort();
    let mut docs = Vec::with_capacity(paths.len());
    for path in paths {
        let text = fs::read_to_string(&path)?;
        let id = path
            .file_name()
            .map(|name| name.to_string_lossy().into_owned())
            .unwrap_or_default();
        let sentences: Vec<String> =
            text.lines().map(str::trim_end).filter(|l| !l.is_empty()).map(String::from).collect();
        docs.push(SourceDocument { id, sentences });
    }
    Ok(docs)
}

/// Writes `sample-NNNN.txt` files plus `manifest.json` into `dir`,
/// creating it if needed.
pub fn write_corpus_dir(
    dir: &Path,
    corpus: &GeneratedCorpus,
    spec: &CorpusSpec,
    collection: &[SourceDocument],
) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (index, sample) in corpus.samples.iter().enumerate() {
        let path = dir.join(format!("sample-{index:04}.txt"));
        fs::write(path, sample_to_string(sample))?;
    }
    let sources = collection
        .iter()
        .filter(|doc| doc.sentences.len() >= spec.max_segment_sentences)
        .map(|doc| SourceFingerprint {
            id: doc.id.clone(),
            fingerprint: fingerprint(doc.sentences.join("\n").as_bytes()),
        })
        .collect();
    let manifest =
        CorpusManifest { spec: spec.clone(), sources, skipped: corpus.skipped.clone() };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
    fs::write(dir.join("manifest.json"), json)?;
    Ok(())
}

/// Loads every `sample-*.txt` in a corpus directory, in file-name order,
/// along with the manifest when present.
pub fn load_corpus_dir(dir: &Path) -> Result<(Vec<CorpusSample>, Option<CorpusManifest>)> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .collect::<std::io::Result<Vec<_>>>()?
        .into_iter()
        .map(|entry| entry.path())
        .filter(|path| {
            path.is_file()
                && path.file_name().is_some_and(|name| {
                    let name = name.to_string_lossy();
                    name.starts_with("sample-") && name.ends_with(".txt")
                })
        })
        .collect();
    paths.sort();
    let mut samples = Vec::with_capacity(paths.len());
    for path in &paths {
        let text = fs::read_to_string(path)?;
        samples.push(sample_from_str(&text).map_err(|e| Error::MalformedSample {
            reason: format!("{}: {e}", path.display()),
        })?);
    }
    let manifest_path = dir.join("manifest.json");
    let manifest = if manifest_path.is_file() {
        serde_json::from_str(&fs::read_to_string(&manifest_path)?).ok()
    } else {
        None
    };
    Ok((samples, manifest))
}
