//! Exterior algebra over fields of characteristic 2.
//!
//! A grade-`r` element of the exterior algebra of an `n`-dimensional space is
//! stored by its coordinates on the basis `e_I`, `I` an `r`-subset of
//! `{0, .., n-1}` encoded as a bit mask. In characteristic 2 the wedge product
//! is commutative and sign-free: `(u ^ v)(K) = sum over disjoint I | J = K of
//! u(I) v(J)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::combin::binomial;
use crate::field::FieldDescriptor;

/// Largest supported ambient dimension (subset keys are `u64` masks).
pub const MAX_AMBIENT: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("{0} does not have characteristic 2")]
    NotCharacteristicTwo(FieldDescriptor),
    #[error("ambient dimension {0} exceeds {MAX_AMBIENT}")]
    AmbientTooLarge(usize),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldDescriptor, FieldDescriptor),
    #[error("grade mismatch: {0} vs {1}")]
    GradeMismatch(usize, usize),
    #[error("expected grade {expected}, got {got}")]
    WrongGrade { expected: usize, got: usize },
    #[error("coordinate key {mask:#b} is not a {grade}-subset of a {n}-element set")]
    BadKey { mask: u64, grade: usize, n: usize },
    #[error("value {0} is not a canonical field element")]
    NotCanonical(u64),
    #[error("cannot wedge {k} vectors in dimension {n}")]
    TooManyVectors { k: usize, n: usize },
    #[error("empty vector list")]
    NoVectors,
    #[error("{field} has fewer than {needed} nonzero elements")]
    FieldTooSmall { needed: usize, field: FieldDescriptor },
}

fn require_char2(field: FieldDescriptor) -> Result<(), ExtError> {
    if field.characteristic() != 2 {
        return Err(ExtError::NotCharacteristicTwo(field));
    }
    Ok(())
}

/// A plain vector of `V = F^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    field: FieldDescriptor,
    coords: Vec<u64>,
}

impl Vector {
    pub fn new(field: FieldDescriptor, coords: Vec<u64>) -> Result<Self, ExtError> {
        if let Some(&bad) = coords.iter().find(|&&c| !field.contains(c)) {
            return Err(ExtError::NotCanonical(bad));
        }
        Ok(Self { field, coords })
    }

    /// `e_i` in `F^n`.
    pub fn unit(field: FieldDescriptor, n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        Self { field, coords }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// A homogeneous element of the exterior algebra. Only nonzero coordinates
/// are stored; iteration is in ascending mask order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtVector {
    n: usize,
    grade: usize,
    field: FieldDescriptor,
    coords: BTreeMap<u64, u64>,
}

impl ExtVector {
    pub fn zero(n: usize, grade: usize, field: FieldDescriptor) -> Result<Self, ExtError> {
        require_char2(field)?;
        if n > MAX_AMBIENT {
            return Err(ExtError::AmbientTooLarge(n));
        }
        Ok(Self { n, grade, field, coords: BTreeMap::new() })
    }

    /// The grade-0 element `value * 1`.
    pub fn scalar(n: usize, field: FieldDescriptor, value: u64) -> Result<Self, ExtError> {
        Self::from_coords(n, 0, field, [(0, value)])
    }

    /// Basis element `e_I`.
    pub fn basis(n: usize, subset: u64, field: FieldDescriptor) -> Result<Self, ExtError> {
        Self::from_coords(n, subset.count_ones() as usize, field, [(subset, 1)])
    }

    /// Builds from `(subset mask, value)` pairs; repeated keys are summed.
    pub fn from_coords(
        n: usize,
        grade: usize,
        field: FieldDescriptor,
        coords: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self, ExtError> {
        let mut out = Self::zero(n, grade, field)?;
        for (mask, value) in coords {
            if mask.count_ones() as usize != grade || (n < 64 && mask >> n != 0) {
                return Err(ExtError::BadKey { mask, grade, n });
            }
            if !field.contains(value) {
                return Err(ExtError::NotCanonical(value));
            }
            out.accumulate(mask, value);
        }
        Ok(out)
    }

    /// The grade-1 element with the coordinates of `v`.
    pub fn from_vector(v: &Vector) -> Result<Self, ExtError> {
        Self::from_coords(v.dim(), 1, v.field, v.coords.iter().enumerate().map(|(i, &c)| (1u64 << i, c)))
    }

    fn accumulate(&mut self, mask: u64, value: u64) {
        if value == 0 {
            return;
        }
        let field = self.field;
        let slot = self.coords.entry(mask).or_insert(0);
        *slot = field.add(*slot, value);
        if *slot == 0 {
            self.coords.remove(&mask);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    /// Dimension of the grade-`r` component, `C(n, r)`.
    pub fn dimension(&self) -> u64 {
        binomial(self.n as u64, self.grade as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, subset: u64) -> u64 {
        self.coords.get(&subset).copied().unwrap_or(0)
    }

    /// Nonzero coordinates in ascending mask order.
    pub fn coords(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.coords.iter().map(|(&m, &v)| (m, v))
    }

    fn check_compatible(&self, other: &Self) -> Result<(), ExtError> {
        if self.n != other.n {
            return Err(ExtError::DimensionMismatch(self.n, other.n));
        }
        if self.field != other.field {
            return Err(ExtError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExtError> {
        self.check_compatible(other)?;
        if self.grade != other.grade {
            return Err(ExtError::GradeMismatch(self.grade, other.grade));
        }
        let mut out = self.clone();
        for (m, v) in other.coords() {
            out.accumulate(m, v);
        }
        Ok(out)
    }

    pub fn scale(&self, lambda: u64) -> Self {
        let mut out = Self { coords: BTreeMap::new(), ..self.clone() };
        for (m, v) in self.coords() {
            out.accumulate(m, self.field.mul(lambda, v));
        }
        out
    }

    /// Wedge product. A result grade above `n` is the zero element of that grade.
    pub fn wedge(&self, other: &Self) -> Result<Self, ExtError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n, self.grade + other.grade, self.field)?;
        for (i, u) in self.coords() {
            for (j, v) in other.coords() {
                if i & j == 0 {
                    out.accumulate(i | j, self.field.mul(u, v));
                }
            }
        }
        Ok(out)
    }

    /// `v_1 ^ ... ^ v_k` by iterated wedge products. Its coordinate at `I` is
    /// the `k x k` minor of the stacked vectors on columns `I`.
    pub fn wedge_of_vectors(vectors: &[Vector]) -> Result<Self, ExtError> {
        let first = vectors.first().ok_or(ExtError::NoVectors)?;
        let n = first.dim();
        if vectors.len() > n {
            return Err(ExtError::TooManyVectors { k: vectors.len(), n });
        }
        let mut acc = Self::from_vector(first)?;
        for v in &vectors[1..] {
            if v.dim() != n {
                return Err(ExtError::DimensionMismatch(n, v.dim()));
            }
            acc = acc.wedge(&Self::from_vector(v)?)?;
        }
        Ok(acc)
    }

    /// The scalar `lambda` with `self = lambda * (e_1 ^ ... ^ e_n)`.
    pub fn top_coefficient(&self) -> Result<u64, ExtError> {
        if self.grade != self.n {
            return Err(ExtError::WrongGrade { expected: self.n, got: self.grade });
        }
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        Ok(self.coord(full))
    }
}

/// `m` points on the moment curve in `F^n`: `v_j = (1, t_j, t_j^2, .., t_j^(n-1))`
/// with `t_j` the `j`-th nonzero field element in increasing representative
/// order. Distinct parameters make every `n` of them linearly independent.
pub fn moment_curve_vectors(m: usize, n: usize, field: FieldDescriptor) -> Result<Vec<Vector>, ExtError> {
    require_char2(field)?;
    if (field.order() - 1) < m as u64 {
        return Err(ExtError::FieldTooSmall { needed: m, field });
    }
    Ok((1..=m as u64)
        .map(|t| {
            let mut coords = Vec::with_capacity(n);
            let mut power = 1;
            for _ in 0..n {
                coords.push(power);
                power = field.mul(power, t);
            }
            Vector { field, coords }
        })
        .collect())
}
