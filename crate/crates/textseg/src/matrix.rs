//! Dense square matrices of `f64` values.
//!
//! Every matrix in the segmentation pipeline (similarity, rank, sum of rank)
//! is a small dense `n x n` matrix indexed by sentence position, so a single
//! row-major storage type covers all of them.

use std::io::{self, Write};
use std::ops::{Index, IndexMut};

/// A dense, row-major `n x n` matrix of `f64` values.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    /// Creates an `n x n` matrix filled with zeros.
    pub fn zeros(n: usize) -> SquareMatrix {
        SquareMatrix { n, data: vec![0.0; n * n] }
    }

    /// Builds a matrix from a row-major value function.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> SquareMatrix {
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows of values. Panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<f64>]) -> SquareMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        SquareMatrix::from_fn(n, |i, j| rows[i][j])
    }

    /// The number of rows (and columns).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Raw row-major storage.
    pub fn values(&self) -> &[f64] {
        &self.data
    }

    /// True if `self[(i, j)] == self[(j, i)]` for every pair.
    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    /// Applies `f` to every element, returning a new matrix.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> SquareMatrix {
        SquareMatrix { n: self.n, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    /// Writes the matrix as an ASCII portable greymap (PGM, magic `P2`).
    ///
    /// Values are clamped to `[0, 1]` and scaled to the 0-255 grey range.
    /// Rows are emitted bottom-up so that element (0, 0) lands in the
    /// bottom-left corner of the image, matching the usual orientation of
    /// dotplot renderings where the first sentence sits at the origin.
    pub fn write_pgm<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "P2")?;
        writeln!(out, "{} {}", self.n, self.n)?;
        writeln!(out, "255")?;
        for i in (0..self.n).rev() {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    let v = self[(i, j)].clamp(0.0, 1.0);
                    format!("{}", (v * 255.0).round() as u8)
                })
                .collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}
