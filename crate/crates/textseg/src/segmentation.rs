//! Segments and segmentations of a sentence sequence.
//!
//! Sentences are indexed from zero. A boundary is expressed as a cut
//! position `p`: the number of sentences before the cut, so `p` sentences
//! lie to its left. Valid cuts are `1..n`. A segmentation of `n` sentences
//! is its ascending list of cuts; segments tile `0..n` exactly.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A contiguous run of sentences, inclusive on both ends (zero-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub first: usize,
    pub last: usize,
}

impl Segment {
    /// Number of sentences in the segment.
    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false // first <= last by construction
    }

    /// The area of the segment's square region along the matrix diagonal.
    pub fn area(&self) -> f64 {
        let len = self.len() as f64;
        len * len
    }
}

/// A partition of `n` sentences into contiguous segments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segmentation {
    num_sentences: usize,
    boundaries: Vec<usize>,
}

impl Segmentation {
    /// Builds a segmentation from ascending cut positions in `1..n`.
    pub fn new(num_sentences: usize, boundaries: Vec<usize>) -> Result<Segmentation> {
        if num_sentences == 0 {
            return Err(Error::EmptyDocument);
        }
        let ascending = boundaries.windows(2).all(|w| w[0] < w[1]);
        let in_range = boundaries.iter().all(|&b| b >= 1 && b < num_sentences);
        if !ascending || !in_range {
            return Err(Error::InvalidBoundaries { num_sentences, boundaries });
        }
        Ok(Segmentation { num_sentences, boundaries })
    }

    /// The one-segment segmentation.
    pub fn single(num_sentences: usize) -> Segmentation {
        Segmentation { num_sentences, boundaries: Vec::new() }
    }

    /// Every sentence in its own segment.
    pub fn singletons(num_sentences: usize) -> Segmentation {
        Segmentation { num_sentences, boundaries: (1..num_sentences).collect() }
    }

    pub fn num_sentences(&self) -> usize {
        self.num_sentences
    }

    pub fn num_segments(&self) -> usize {
        self.boundaries.len() + 1
    }

    /// Cut positions, ascending. A cut at `p` means sentences `p-1` and `p`
    /// are in different segments.
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// The segments, left to right.
    pub fn segments(&self) -> Vec<Segment> {
        let mut segments = Vec::with_capacity(self.num_segments());
        let mut first = 0;
        for &cut in &self.boundaries {
            segments.push(Segment { first, last: cut - 1 });
            first = cut;
        }
        segments.push(Segment { first, last: self.num_sentences - 1 });
        segments
    }

    /// Maps each sentence to the index of its segment.
    pub fn segment_ids(&self) -> Vec<usize> {
        let mut ids = vec![0; self.num_sentences];
        let mut id = 0;
        let mut next_cut = self.boundaries.first().copied();
        for (sentence, slot) in ids.iter_mut().enumerate() {
            if Some(sentence) == next_cut {
                id += 1;
                next_cut = self.boundaries.get(id).copied();
            }
            *slot = id;
        }
        ids
    }

    /// True if sentences `a` and `b` fall in the same segment.
    pub fn same_segment(&self, a: usize, b: usize) -> bool {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        // Same segment iff no cut lies in (lo, hi].
        !self.boundaries.iter().any(|&c| c > lo && c <= hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segments_tile_the_document() {
        let seg = Segmentation::new(10, vec![3, 7]).unwrap();
        let parts = seg.segments();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], Segment { first: 0, last: 2 });
        assert_eq!(parts[1], Segment { first: 3, last: 6 });
        assert_eq!(parts[2], Segment { first: 7, last: 9 });
        assert_eq!(parts.iter().map(Segment::len).sum::<usize>(), 10);
    }

    #[test]
    fn rejects_bad_boundaries() {
        assert!(Segmentation::new(5, vec![0]).is_err());
        assert!(Segmentation::new(5, vec![5]).is_err());
        assert!(Segmentation::new(5, vec![3, 2]).is_err());
        assert!(Segmentation::new(5, vec![2, 2]).is_err());
        assert!(Segmentation::new(0, vec![]).is_err());
    }

    #[test]
    fn singletons_and_single() {
        let one = Segmentation::single(4);
        assert_eq!(one.num_segments(), 1);
        assert!(one.same_segment(0, 3));

        let all = Segmentation::singletons(4);
        assert_eq!(all.num_segments(), 4);
        assert_eq!(all.boundaries(), &[1, 2, 3]);
        assert!(!all.same_segment(1, 2));
        assert!(all.same_segment(2, 2));
    }

    #[test]
    fn same_segment_matches_segment_ids() {
        let seg = Segmentation::new(8, vec![2, 5]).unwrap();
        let ids = seg.segment_ids();
        assert_eq!(ids, [0, 0, 1, 1, 1, 2, 2, 2]);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(seg.same_segment(a, b), ids[a] == ids[b], "pair ({a},{b})");
            }
        }
    }

    #[test]
    fn segment_area() {
        assert_eq!(Segment { first: 2, last: 4 }.area(), 9.0);
        assert_eq!(Segment { first: 3, last: 3 }.area(), 1.0);
    }
}
