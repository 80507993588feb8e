//! Dense d-dimensional tensors over a finite field and their flattening ranks.
//!
//! Entries are stored row-major: the last axis varies fastest. The
//! `i`-flattening puts axis `i` on the rows; columns enumerate the remaining
//! axes in their original order, mixed-radix with the last remaining axis
//! least significant. Axes are numbered from 0.

use thiserror::Error;

use crate::field::FieldDescriptor;
use crate::linalg::{BitMatrix, Matrix};

/// Dense tensors larger than this are refused.
pub const MAX_ENTRIES: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("a tensor needs at least 2 axes, got {0}")]
    TooFewAxes(usize),
    #[error("axis {axis} has size 0")]
    EmptyAxis { axis: usize },
    #[error("tensor with dims {dims:?} exceeds the {MAX_ENTRIES}-entry limit")]
    TooLarge { dims: Vec<usize> },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("entry {value} at position {position} is not canonical in {field}")]
    NotCanonical { position: usize, value: u64, field: FieldDescriptor },
    #[error("axis {axis} out of range for a {order}-dimensional tensor")]
    AxisOutOfRange { axis: usize, order: usize },
    #[error("tensor with dims {0:?} is not cubical")]
    NotCubical(Vec<usize>),
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldDescriptor, FieldDescriptor),
    #[error("index subset for axis {axis} is empty")]
    EmptySubset { axis: usize },
    #[error("index {index} out of range on axis {axis} of size {size}")]
    IndexOutOfRange { axis: usize, index: usize, size: usize },
    #[error("expected {expected} index subsets, got {got}")]
    SubsetCount { expected: usize, got: usize },
    #[error("invalid construction parameters: {0}")]
    InvalidParameters(String),
}

/// Number of entries for `dims`, or `None` when it overflows or exceeds
/// [`MAX_ENTRIES`].
pub fn checked_volume(dims: &[usize]) -> Option<usize> {
    dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).filter(|&v| v <= MAX_ENTRIES)
}

fn validate_dims(dims: &[usize]) -> Result<usize, TensorError> {
    if dims.len() < 2 {
        return Err(TensorError::TooFewAxes(dims.len()));
    }
    if let Some(axis) = dims.iter().position(|&d| d == 0) {
        return Err(TensorError::EmptyAxis { axis });
    }
    checked_volume(dims).ok_or_else(|| TensorError::TooLarge { dims: dims.to_vec() })
}

/// Advances a row-major odometer; returns false after the last index.
fn advance(index: &mut [usize], dims: &[usize]) -> bool {
    for axis in (0..dims.len()).rev() {
        index[axis] += 1;
        if index[axis] < dims[axis] {
            return true;
        }
        index[axis] = 0;
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    dims: Vec<usize>,
    field: FieldDescriptor,
    entries: Vec<u64>,
}

impl Tensor {
    pub fn new(dims: Vec<usize>, field: FieldDescriptor, entries: Vec<u64>) -> Result<Self, TensorError> {
        let volume = validate_dims(&dims)?;
        if entries.len() != volume {
            return Err(TensorError::EntryCount { expected: volume, got: entries.len() });
        }
        if let Some(position) = entries.iter().position(|&e| !field.contains(e)) {
            return Err(TensorError::NotCanonical { position, value: entries[position], field });
        }
        Ok(Self { dims, field, entries })
    }

    pub fn zeros(dims: Vec<usize>, field: FieldDescriptor) -> Result<Self, TensorError> {
        let volume = validate_dims(&dims)?;
        Ok(Self { dims, field, entries: vec![0; volume] })
    }

    /// Builds a tensor entry by entry; `f` receives each multi-index in
    /// row-major order and its result is reduced into the field.
    pub fn from_fn(
        dims: Vec<usize>,
        field: FieldDescriptor,
        mut f: impl FnMut(&[usize]) -> u64,
    ) -> Result<Self, TensorError> {
        let volume = validate_dims(&dims)?;
        let mut entries = Vec::with_capacity(volume);
        let mut index = vec![0; dims.len()];
        loop {
            entries.push(field.reduce(f(&index)));
            if !advance(&mut index, &dims) {
                break;
            }
        }
        Ok(Self { dims, field, entries })
    }

    /// `T(a, ..., a) = 1`, zero elsewhere.
    pub fn diagonal(size: usize, order: usize, field: FieldDescriptor) -> Result<Self, TensorError> {
        Self::from_fn(vec![size; order], field, |idx| idx.iter().all(|&x| x == idx[0]) as u64)
    }

    /// Outer product `f_1(a_1) * ... * f_d(a_d)` of the given factor vectors.
    pub fn outer(factors: &[Vec<u64>], field: FieldDescriptor) -> Result<Self, TensorError> {
        let dims = factors.iter().map(Vec::len).collect();
        Self::from_fn(dims, field, |idx| {
            idx.iter().zip(factors).fold(1, |acc, (&i, f)| field.mul(acc, field.reduce(f[i])))
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of axes `d`.
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn linear_index(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.dims.len());
        index.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| {
            debug_assert!(i < d);
            acc * d + i
        })
    }

    pub fn multi_index(&self, mut linear: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = linear % d;
            linear /= d;
        }
        out
    }

    pub fn get(&self, index: &[usize]) -> u64 {
        self.entries[self.linear_index(index)]
    }

    pub fn set(&mut self, index: &[usize], value: u64) {
        assert!(self.field.contains(value), "non-canonical entry {value}");
        let at = self.linear_index(index);
        self.entries[at] = value;
    }

    fn check_axis(&self, axis: usize) -> Result<(), TensorError> {
        if axis >= self.dims.len() {
            return Err(TensorError::AxisOutOfRange { axis, order: self.dims.len() });
        }
        Ok(())
    }

    /// `(row, column)` of the flattening along `axis` holding entry `linear`.
    #[inline]
    fn flat_position(&self, axis: usize, linear: usize) -> (usize, usize) {
        let inner: usize = self.dims[axis + 1..].iter().product();
        let size = self.dims[axis];
        let outer = linear / (inner * size);
        let row = (linear / inner) % size;
        (row, outer * inner + linear % inner)
    }

    pub fn flatten(&self, axis: usize) -> Result<FlatteningMatrix, TensorError> {
        self.check_axis(axis)?;
        let rows = self.dims[axis];
        let cols = self.len() / rows;
        let mut matrix = Matrix::zeros(self.field, rows, cols);
        for (linear, &value) in self.entries.iter().enumerate() {
            let (r, c) = self.flat_position(axis, linear);
            matrix.set(r, c, value);
        }
        Ok(FlatteningMatrix { axis, dims: self.dims.clone(), matrix })
    }

    /// Exact rank of the `axis`-flattening.
    pub fn flattening_rank(&self, axis: usize) -> Result<usize, TensorError> {
        self.check_axis(axis)?;
        if self.field.is_gf2() {
            let rows = self.dims[axis];
            let mut bits = BitMatrix::zeros(rows, self.len() / rows);
            for (linear, &value) in self.entries.iter().enumerate() {
                if value != 0 {
                    let (r, c) = self.flat_position(axis, linear);
                    bits.set(r, c, true);
                }
            }
            return Ok(bits.rank());
        }
        Ok(self.flatten(axis)?.rank())
    }

    /// Flattening ranks along every axis, in axis order.
    pub fn flattening_ranks(&self) -> Vec<usize> {
        (0..self.order()).map(|axis| self.flattening_rank(axis).expect("axis in range")).collect()
    }

    pub fn max_flattening_rank(&self) -> usize {
        self.flattening_ranks().into_iter().max().unwrap_or(0)
    }

    pub fn sum_flattening_ranks(&self) -> usize {
        self.flattening_ranks().into_iter().sum()
    }

    /// Vanishes on every all-distinct multi-index and is nonzero on every
    /// constant one. Mixed multi-indices are unconstrained.
    pub fn is_semi_diagonal(&self) -> Result<bool, TensorError> {
        let size = self.dims[0];
        if self.dims.iter().any(|&d| d != size) {
            return Err(TensorError::NotCubical(self.dims.clone()));
        }
        let order = self.order();
        let mut scratch = Vec::with_capacity(order);
        for (linear, &value) in self.entries.iter().enumerate() {
            let index = self.multi_index(linear);
            if index.iter().all(|&x| x == index[0]) {
                if value == 0 {
                    return Ok(false);
                }
                continue;
            }
            if value != 0 && order <= size {
                scratch.clear();
                scratch.extend_from_slice(&index);
                scratch.sort_unstable();
                if scratch.windows(2).all(|w| w[0] != w[1]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Restriction to the given index subsets, one per axis. Subsets are
    /// taken in the order given.
    pub fn subtensor(&self, subsets: &[Vec<usize>]) -> Result<Tensor, TensorError> {
        if subsets.len() != self.order() {
            return Err(TensorError::SubsetCount { expected: self.order(), got: subsets.len() });
        }
        for (axis, (subset, &size)) in subsets.iter().zip(&self.dims).enumerate() {
            if subset.is_empty() {
                return Err(TensorError::EmptySubset { axis });
            }
            if let Some(&index) = subset.iter().find(|&&i| i >= size) {
                return Err(TensorError::IndexOutOfRange { axis, index, size });
            }
        }
        let dims = subsets.iter().map(Vec::len).collect();
        let mut source = vec![0; self.order()];
        Tensor::from_fn(dims, self.field, |idx| {
            for ((slot, &i), subset) in source.iter_mut().zip(idx).zip(subsets) {
                *slot = subset[i];
            }
            self.get(&source)
        })
    }

    fn check_compatible(&self, other: &Tensor) -> Result<(), TensorError> {
        if self.field != other.field {
            return Err(TensorError::FieldMismatch(self.field, other.field));
        }
        if self.dims != other.dims {
            return Err(TensorError::ShapeMismatch(self.dims.clone(), other.dims.clone()));
        }
        Ok(())
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.check_compatible(other)?;
        let field = self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| field.add(a, b)).collect();
        Ok(Tensor { dims: self.dims.clone(), field, entries })
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            dims: self.dims.clone(),
            field: self.field,
            entries: self.entries.iter().map(|&e| self.field.neg(e)).collect(),
        }
    }

    /// The tight semi-diagonal tensor on `A^d`, `|A| = size`: split `A` into
    /// consecutive blocks of `d - 1` indices and set `T = 1` exactly on the
    /// multi-indices lying inside a single block. Every flattening rank equals
    /// the number of blocks, `ceil(size / (d - 1))`.
    pub fn partition_construction(size: usize, order: usize, field: FieldDescriptor) -> Result<Tensor, TensorError> {
        if size == 0 || order < 2 {
            return Err(TensorError::InvalidParameters(format!(
                "partition construction needs a >= 1 and d >= 2 (got a = {size}, d = {order})"
            )));
        }
        let block = order - 1;
        Tensor::from_fn(vec![size; order], field, |idx| {
            let part = idx[0] / block;
            idx.iter().all(|&x| x / block == part) as u64
        })
    }

    /// `T = 1` where all coordinates other than `axis` agree, zero elsewhere.
    /// Its `axis`-flattening has rank 1. Semi-diagonal only when `d >= 3`, so
    /// `d = 2` is refused unless `size == 1`.
    pub fn axis_constant_construction(
        size: usize,
        order: usize,
        axis: usize,
        field: FieldDescriptor,
    ) -> Result<Tensor, TensorError> {
        if size == 0 || order < 2 {
            return Err(TensorError::InvalidParameters(format!(
                "axis-constant construction needs a >= 1 and d >= 2 (got a = {size}, d = {order})"
            )));
        }
        if axis >= order {
            return Err(TensorError::AxisOutOfRange { axis, order });
        }
        if order == 2 && size > 1 {
            return Err(TensorError::InvalidParameters(
                "axis-constant construction with d = 2 is the all-ones matrix, which is not semi-diagonal for a > 1"
                    .into(),
            ));
        }
        let anchor = if axis == 0 { 1 } else { 0 };
        Tensor::from_fn(vec![size; order], field, |idx| {
            idx.iter().enumerate().all(|(j, &x)| j == axis || x == idx[anchor]) as u64
        })
    }
}

/// The `axis`-flattening of a tensor together with the index map back to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatteningMatrix {
    axis: usize,
    dims: Vec<usize>,
    matrix: Matrix,
}

impl FlatteningMatrix {
    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.matrix.get(row, col)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Tensor multi-index of matrix position `(row, col)`: decode `col`
    /// mixed-radix over the non-row axes and insert `row` at `axis`.
    pub fn tensor_index(&self, row: usize, mut col: usize) -> Vec<usize> {
        let mut index = vec![0; self.dims.len()];
        for axis in (0..self.dims.len()).rev() {
            if axis == self.axis {
                index[axis] = row;
            } else {
                index[axis] = col % self.dims[axis];
                col /= self.dims[axis];
            }
        }
        index
    }

    /// Rebuilds the tensor through the inverse index map.
    pub fn fold(&self) -> Tensor {
        let mut out = Tensor::zeros(self.dims.clone(), self.matrix.field()).expect("dims came from a tensor");
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.set(&self.tensor_index(r, c), self.get(r, c));
            }
        }
        out
    }
}
