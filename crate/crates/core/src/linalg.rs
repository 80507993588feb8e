//! Exact Gaussian elimination over the fields in [`crate::field`].
//!
//! [`Matrix`] is the dense general-field path. [`BitMatrix`] packs GF(2) rows
//! 64 columns per word and eliminates with word-level XOR; it backs every
//! GF(2) flattening rank.

use crate::field::FieldDescriptor;

/// Dense row-major matrix of canonical field representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, entries: vec![0; rows * cols] }
    }

    /// Panics if `entries.len() != rows * cols`; entries are reduced into the field.
    pub fn from_entries(field: FieldDescriptor, rows: usize, cols: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix shape mismatch");
        let entries = entries.into_iter().map(|e| field.reduce(e)).collect();
        Self { field, rows, cols, entries }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u64) {
        debug_assert!(self.field.contains(value));
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[u64] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        if self.field.is_gf2() {
            return BitMatrix::from(self).rank();
        }
        let mut work = self.entries.clone();
        row_reduce(self.field, self.rows, self.cols, &mut work)
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> u64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        determinant(self.field, self.rows, self.entries.clone())
    }
}

fn swap_rows(entries: &mut [u64], cols: usize, a: usize, b: usize) {
    if a == b {
        return;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let (head, tail) = entries.split_at_mut(hi * cols);
    head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
}

/// Forward elimination in place; returns the rank.
///
/// For each column the first row at or below the current rank with a nonzero
/// entry becomes the pivot, and every later row is cleared in that column.
pub fn row_reduce(field: FieldDescriptor, rows: usize, cols: usize, entries: &mut [u64]) -> usize {
    debug_assert_eq!(entries.len(), rows * cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| entries[r * cols + col] != 0) else {
            continue;
        };
        swap_rows(entries, cols, rank, pivot);
        let inv = field.inv(entries[rank * cols + col]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let lead = entries[r * cols + col];
            if lead == 0 {
                continue;
            }
            let factor = field.neg(field.mul(lead, inv));
            for c in col..cols {
                let p = entries[rank * cols + c];
                if p != 0 {
                    let idx = r * cols + c;
                    entries[idx] = field.add(entries[idx], field.mul(factor, p));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of an `n x n` row-major matrix by elimination.
pub fn determinant(field: FieldDescriptor, n: usize, mut entries: Vec<u64>) -> u64 {
    assert_eq!(entries.len(), n * n);
    let mut det = 1;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| entries[r * n + col] != 0) else {
            return 0;
        };
        if pivot != col {
            swap_rows(&mut entries, n, col, pivot);
            det = field.neg(det);
        }
        let lead = entries[col * n + col];
        det = field.mul(det, lead);
        let inv = field.inv(lead).expect("pivot is nonzero");
        for r in col + 1..n {
            let below = entries[r * n + col];
            if below == 0 {
                continue;
            }
            let factor = field.neg(field.mul(below, inv));
            for c in col..n {
                let p = entries[col * n + c];
                if p != 0 {
                    let idx = r * n + c;
                    entries[idx] = field.add(entries[idx], field.mul(factor, p));
                }
            }
        }
    }
    det
}

/// GF(2) matrix with rows packed into `u64` words, bit `c % 64` of word
/// `c / 64` holding column `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self { rows, cols, stride, words: vec![0; rows * stride] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.rows && col < self.cols);
        self.words[row * self.stride + col / 64] >> (col % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, bit: bool) {
        debug_assert!(row < self.rows && col < self.cols);
        let word = &mut self.words[row * self.stride + col / 64];
        let mask = 1u64 << (col % 64);
        if bit {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, row: usize, col: usize) {
        debug_assert!(row < self.rows && col < self.cols);
        self.words[row * self.stride + col / 64] ^= 1u64 << (col % 64);
    }

    /// Consumes the matrix; returns its rank over GF(2).
    pub fn rank(mut self) -> usize {
        let stride = self.stride;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let w = col / 64;
            let bit = 1u64 << (col % 64);
            let Some(pivot) = (rank..self.rows).find(|&r| self.words[r * stride + w] & bit != 0) else {
                continue;
            };
            swap_rows(&mut self.words, stride, rank, pivot);
            let (done, rest) = self.words.split_at_mut((rank + 1) * stride);
            let pivot_row = &done[rank * stride..];
            for row in rest.chunks_exact_mut(stride) {
                if row[w] & bit != 0 {
                    for (dst, src) in row[w..].iter_mut().zip(&pivot_row[w..]) {
                        *dst ^= src;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl From<&Matrix> for BitMatrix {
    fn from(m: &Matrix) -> Self {
        debug_assert!(m.field().is_gf2());
        let mut out = BitMatrix::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.get(r, c) != 0 {
                    out.set(r, c, true);
                }
            }
        }
        out
    }
}
