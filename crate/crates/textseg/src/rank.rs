//! Local rank filtering.
//!
//! Absolute similarity values of short text spans are statistically
//! unreliable, but their local ordering is not, so each matrix element is
//! replaced by the fraction of its mask neighbourhood that is strictly
//! smaller. The output is a ratio rather than a raw count so that elements
//! near the border, where the mask is clipped, remain comparable with
//! interior ones. Any strictly increasing transform of the input leaves
//! the output unchanged.

use crate::matrix::SquareMatrix;
use crate::similarity::SimilarityMatrix;
use crate::{Error, Result};

/// A rectangular rank mask; both dimensions must be odd so the mask is
/// centred on the element under examination. `width` runs along columns,
/// `height` along rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankMask {
    width: usize,
    height: usize,
}

impl RankMask {
    /// Creates a rectangular mask. Both dimensions must be odd and >= 1.
    pub fn new(width: usize, height: usize) -> Result<RankMask> {
        if width == 0 || height == 0 || width.is_multiple_of(2) || height.is_multiple_of(2) {
            return Err(Error::InvalidMask { width, height });
        }
        Ok(RankMask { width, height })
    }

    /// A `size x size` square mask.
    pub fn square(size: usize) -> Result<RankMask> {
        RankMask::new(size, size)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }
}

impl Default for RankMask {
    /// The 11 x 11 mask used for segmentation.
    fn default() -> RankMask {
        RankMask { width: 11, height: 11 }
    }
}

/// A matrix of local rank ratios in `[0, 1]`.
#[derive(Clone, Debug)]
pub struct RankMatrix {
    values: SquareMatrix,
}

impl RankMatrix {
    pub fn n(&self) -> usize {
        self.values.n()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }

    pub fn as_matrix(&self) -> &SquareMatrix {
        &self.values
    }

    /// Wraps a precomputed matrix (for tests and synthetic inputs).
    pub fn from_matrix(values: SquareMatrix) -> RankMatrix {
        RankMatrix { values }
    }
}

/// Rank-filters a similarity matrix.
pub fn rank_filter(m: &SimilarityMatrix, mask: RankMask) -> RankMatrix {
    RankMatrix { values: rank_filter_matrix(m.as_matrix(), mask) }
}

/// Rank-filters an arbitrary square matrix with a rectangular mask.
pub fn rank_filter_matrix(m: &SquareMatrix, mask: RankMask) -> SquareMatrix {
    let n = m.n();
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = rank_ratio(
                |r, c| m[(r, c)],
                n,
                n,
                i,
                j,
                mask.height / 2,
                mask.width / 2,
            );
        }
    }
    out
}

/// Rank-filters a 1-dimensional signal with a `1 x width` mask.
pub fn rank_filter_signal(signal: &[f64], mask_width: usize) -> Result<Vec<f64>> {
    let mask = RankMask::new(mask_width, 1)?;
    let n = signal.len();
    let half = mask.width / 2;
    Ok((0..n).map(|i| rank_ratio(|_, c| signal[c], 1, n, 0, i, 0, half)).collect())
}

/// The rank ratio of element `(i, j)`: among the in-bounds neighbours
/// within the mask, excluding the element itself, the fraction holding a
/// strictly lower value. Ties are not lower. When the clipped mask leaves
/// no neighbours at all (a 1 x 1 mask), the ratio is defined as 0.
fn rank_ratio<F: Fn(usize, usize) -> f64>(
    value: F,
    rows: usize,
    cols: usize,
    i: usize,
    j: usize,
    half_height: usize,
    half_width: usize,
) -> f64 {
    let center = value(i, j);
    let r0 = i.saturating_sub(half_height);
    let r1 = (i + half_height).min(rows - 1);
    let c0 = j.saturating_sub(half_width);
    let c1 = (j + half_width).min(cols - 1);
    let mut lower = 0u32;
    let mut examined = 0u32;
    for r in r0..=r1 {
        for c in c0..=c1 {
            if r == i && c == j {
                continue;
            }
            examined += 1;
            if value(r, c) < center {
                lower += 1;
            }
        }
    }
    if examined == 0 {
        0.0
    } else {
        lower as f64 / examined as f64
    }
}

/// A sine wave with decaying mean, amplitude and frequency, sampled at
/// `x = 0, 1, ..., num_points - 1`:
///
/// ```text
/// f(x) = g(x * 2 pi / 200)
/// g(z) = (exp(-z/2) + exp(-z/2) * (1 + sin(10 * z^0.7)) / 2) / 2
/// ```
///
/// This signal exercises the 1-dimensional rank filter: the raw wave
/// drifts and shrinks, while its rank trace keeps a steady oscillation.
pub fn wave_signal(num_points: usize) -> Vec<f64> {
    (0..num_points)
        .map(|x| {
            let z = x as f64 * (2.0 * std::f64::consts::PI / 200.0);
            let decay = (-z / 2.0).exp();
            0.5 * (decay + 0.5 * decay * (1.0 + (10.0 * z.powf(0.7)).sin()))
        })
        .collect()
}
