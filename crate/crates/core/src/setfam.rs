//! Families of subsets of `[n] = {0, .., n-1}` stored as bit masks, and the
//! cross-d-wise Oddtown machinery built on them.
//!
//! A cross-d-wise Oddtown is a list of ordered `d`-tuples of sets such that
//! `|A(1) & .. & A(d)|` is odd for every member and
//! `|A_1(1) & .. & A_d(d)|` is even whenever `A_1, .., A_d` sit at distinct
//! positions of the list. Repeated tuples count as distinct members.

use serde::Serialize;
use thiserror::Error;

use crate::field::FieldDescriptor;
use crate::tensor::{Tensor, TensorError};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetFamilyError {
    #[error("ground set of size {0} exceeds {MAX_GROUND}")]
    GroundSetTooLarge(usize),
    #[error("member {member} has mask {mask:#x} outside a ground set of size {n}")]
    MaskOutOfRange { member: usize, mask: u64, n: usize },
    #[error("member {member} has {got} slots, expected {expected}")]
    TupleWidth { member: usize, expected: usize, got: usize },
    #[error("tuple width must be at least 1")]
    ZeroWidth,
}

fn ground_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_ground(n: usize) -> Result<(), SetFamilyError> {
    if n > MAX_GROUND {
        return Err(SetFamilyError::GroundSetTooLarge(n));
    }
    Ok(())
}

/// `|A_1 & .. & A_k|`. Panics on an empty list.
pub fn intersection_size(masks: &[u64]) -> u32 {
    assert!(!masks.is_empty(), "intersection of no sets");
    masks.iter().fold(u64::MAX, |acc, &m| acc & m).count_ones()
}

/// An ordered list of subsets of `[n]`; duplicates allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    members: Vec<u64>,
}

impl SetFamily {
    pub fn new(n: usize, members: Vec<u64>) -> Result<Self, SetFamilyError> {
        check_ground(n)?;
        let ground = ground_mask(n);
        if let Some(member) = members.iter().position(|&m| m & !ground != 0) {
            return Err(SetFamilyError::MaskOutOfRange { member, mask: members[member], n });
        }
        Ok(Self { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The `d`-wise Oddtown question as a cross instance: `A -> (A, .., A)`.
    pub fn diagonal_embedding(&self, d: usize) -> Result<TupleFamily, SetFamilyError> {
        TupleFamily::new(self.n, d, self.members.iter().map(|&m| vec![m; d]).collect())
    }
}

/// An ordered list of `d`-tuples of subsets of `[n]`; duplicates allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleFamily {
    n: usize,
    d: usize,
    members: Vec<Vec<u64>>,
}

/// Why a tuple family fails to be a cross-d-wise Oddtown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OddtownViolation {
    /// `|A(1) & .. & A(d)|` is even for the member at this position.
    EvenMember { member: usize, size: u32 },
    /// `|A_1(1) & .. & A_d(d)|` is odd for these distinct positions.
    OddCross { positions: Vec<usize>, size: u32 },
}

impl TupleFamily {
    pub fn new(n: usize, d: usize, members: Vec<Vec<u64>>) -> Result<Self, SetFamilyError> {
        check_ground(n)?;
        if d == 0 {
            return Err(SetFamilyError::ZeroWidth);
        }
        let ground = ground_mask(n);
        for (member, tuple) in members.iter().enumerate() {
            if tuple.len() != d {
                return Err(SetFamilyError::TupleWidth { member, expected: d, got: tuple.len() });
            }
            if let Some(&mask) = tuple.iter().find(|&&m| m & !ground != 0) {
                return Err(SetFamilyError::MaskOutOfRange { member, mask, n });
            }
        }
        Ok(Self { n, d, members })
    }

    /// Each singleton tuple `({i}, .., {i})` repeated `copies` times, grouped
    /// by `i`. With `copies = d - 1` this is a cross-d-wise Oddtown of size
    /// `(d - 1) n`, matching the upper bound.
    pub fn repeated_singletons(n: usize, d: usize, copies: usize) -> Result<Self, SetFamilyError> {
        let members = (0..n).flat_map(|i| std::iter::repeat_n(vec![1u64 << i; d], copies)).collect();
        Self::new(n, d, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn members(&self) -> &[Vec<u64>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn push(&mut self, tuple: Vec<u64>) -> Result<(), SetFamilyError> {
        let member = self.members.len();
        if tuple.len() != self.d {
            return Err(SetFamilyError::TupleWidth { member, expected: self.d, got: tuple.len() });
        }
        let ground = ground_mask(self.n);
        if let Some(&mask) = tuple.iter().find(|&&m| m & !ground != 0) {
            return Err(SetFamilyError::MaskOutOfRange { member, mask, n: self.n });
        }
        self.members.push(tuple);
        Ok(())
    }

    pub fn pop(&mut self) -> Option<Vec<u64>> {
        self.members.pop()
    }

    /// First violation of the cross-d-wise Oddtown conditions, if any.
    /// Members are scanned in order, cross tuples lexicographically.
    pub fn oddtown_violation(&self) -> Option<OddtownViolation> {
        self.violation_involving(None)
    }

    pub fn is_cross_oddtown(&self) -> bool {
        self.oddtown_violation().is_none()
    }

    /// Like [`Self::oddtown_violation`] but only considers conditions that
    /// involve the last member. For incremental growth of a family that was
    /// valid before the last push.
    pub fn violation_involving_last(&self) -> Option<OddtownViolation> {
        let last = self.members.len().checked_sub(1)?;
        self.violation_involving(Some(last))
    }

    fn violation_involving(&self, required: Option<usize>) -> Option<OddtownViolation> {
        let members = &self.members;
        let candidates: Box<dyn Iterator<Item = usize>> = match required {
            Some(r) => Box::new(std::iter::once(r)),
            None => Box::new(0..members.len()),
        };
        for member in candidates {
            let size = intersection_size(&members[member]);
            if size.is_multiple_of(2) {
                return Some(OddtownViolation::EvenMember { member, size });
            }
        }
        if members.len() < self.d {
            return None;
        }
        let mut positions = Vec::with_capacity(self.d);
        self.odd_cross(&mut positions, u64::MAX, required).then(|| {
            let size =
                positions.iter().enumerate().fold(u64::MAX, |acc, (slot, &p)| acc & members[p][slot]).count_ones();
            OddtownViolation::OddCross { positions, size }
        })
    }

    fn odd_cross(&self, positions: &mut Vec<usize>, acc: u64, required: Option<usize>) -> bool {
        let slot = positions.len();
        if slot == self.d {
            let has_required = required.is_none_or(|r| positions.contains(&r));
            return has_required && acc.count_ones() % 2 == 1;
        }
        for p in 0..self.members.len() {
            if positions.contains(&p) {
                continue;
            }
            positions.push(p);
            if self.odd_cross(positions, acc & self.members[p][slot], required) {
                return true;
            }
            positions.pop();
        }
        false
    }
}

/// The GF(2) tensor `T(A_1, .., A_d) = |A_1(1) & .. & A_d(d)| mod 2` on
/// `F^d`. Semi-diagonal exactly when the family is a cross-d-wise Oddtown.
pub fn oddtown_tensor(family: &TupleFamily) -> Result<Tensor, TensorError> {
    let m = family.len();
    let members = family.members();
    Tensor::from_fn(vec![m; family.d()], FieldDescriptor::gf2(), |idx| {
        let acc = idx.iter().enumerate().fold(u64::MAX, |acc, (slot, &p)| acc & members[p][slot]);
        u64::from(acc.count_ones() % 2)
    })
}

/// One rank-1 term `f_1(A_1) .. f_d(A_d)` of a tensor decomposition; each
/// factor is a GF(2) vector indexed by member position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank1Term {
    pub factors: Vec<Vec<u64>>,
}

/// `n` rank-1 terms summing to [`oddtown_tensor`]: term `k` has
/// `f_{j,k}(A) = [k in A(j)]`. This certifies tensor rank at most `n`, and so
/// every flattening rank is at most `n`.
pub fn oddtown_rank1_certificate(family: &TupleFamily) -> Vec<Rank1Term> {
    (0..family.n())
        .map(|k| Rank1Term {
            factors: (0..family.d())
                .map(|slot| family.members().iter().map(|tuple| tuple[slot] >> k & 1).collect())
                .collect(),
        })
        .collect()
}

/// Sum of the outer products of `terms`, each factor of length `m`.
pub fn reconstruct(terms: &[Rank1Term], m: usize, d: usize, field: FieldDescriptor) -> Result<Tensor, TensorError> {
    let mut acc = Tensor::zeros(vec![m; d], field)?;
    for term in terms {
        acc = acc.add(&Tensor::outer(&term.factors, field)?)?;
    }
    Ok(acc)
}

/// `(d - 1) n`, the maximum size of a cross-d-wise Oddtown on `n` points.
pub fn cross_oddtown_bound(n: usize, d: usize) -> usize {
    d.saturating_sub(1) * n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singleton_pairs(n: usize) -> TupleFamily {
        TupleFamily::repeated_singletons(n, 2, 1).unwrap()
    }

    #[test]
    fn intersection_counts() {
        assert_eq!(intersection_size(&[0b1110]), 3);
        assert_eq!(intersection_size(&[0b0110, 0b1100]), 1);
        let masks = [0b11_0110_1011u64, 0b10_1111_0011, 0b11_1110_1001, 0b01_0111_1011];
        let naive = (0..10).filter(|&e| masks.iter().all(|m| m >> e & 1 == 1)).count() as u32;
        assert_eq!(intersection_size(&masks), naive);
    }

    #[test]
    fn validation() {
        assert!(matches!(SetFamily::new(3, vec![0b1000]), Err(SetFamilyError::MaskOutOfRange { .. })));
        assert!(matches!(SetFamily::new(65, vec![]), Err(SetFamilyError::GroundSetTooLarge(65))));
        assert!(SetFamily::new(64, vec![u64::MAX]).is_ok());
        assert!(matches!(
            TupleFamily::new(3, 2, vec![vec![1]]),
            Err(SetFamilyError::TupleWidth { member: 0, expected: 2, got: 1 })
        ));
        assert_eq!(TupleFamily::new(3, 0, vec![]), Err(SetFamilyError::ZeroWidth));
    }

    #[test]
    fn classic_oddtown_as_diagonal() {
        let f = singleton_pairs(4);
        assert!(f.is_cross_oddtown());
        let sets = SetFamily::new(4, vec![1, 2, 4, 8]).unwrap();
        assert_eq!(sets.diagonal_embedding(2).unwrap(), f);
    }

    #[test]
    fn repeated_singletons_attain_the_bound() {
        for n in 1..5 {
            let f = TupleFamily::repeated_singletons(n, 3, 2).unwrap();
            assert!(f.is_cross_oddtown());
            assert_eq!(f.len(), 2 * n);
            assert_eq!(f.len(), cross_oddtown_bound(n, 3));
            // one more copy of any member breaks it
            let over = TupleFamily::repeated_singletons(n, 3, 3).unwrap();
            assert!(!over.is_cross_oddtown());
        }
    }

    #[test]
    fn odd_cross_detected() {
        // A = ({0}, {0,1}), B = ({1}, {1}): A(1) & B(2) = {} but B(1) & A(2) = {1}
        let f = TupleFamily::new(2, 2, vec![vec![0b01, 0b11], vec![0b10, 0b10]]).unwrap();
        assert_eq!(f.oddtown_violation(), Some(OddtownViolation::OddCross { positions: vec![1, 0], size: 1 }));
        let even = TupleFamily::new(2, 2, vec![vec![0b11, 0b11]]).unwrap();
        assert_eq!(even.oddtown_violation(), Some(OddtownViolation::EvenMember { member: 0, size: 2 }));
    }

    #[test]
    fn incremental_check() {
        let mut f = singleton_pairs(3);
        assert_eq!(f.violation_involving_last(), None);
        f.push(vec![0b001, 0b011]).unwrap();
        assert!(f.violation_involving_last().is_some());
        assert!(f.pop().is_some());
        assert!(f.is_cross_oddtown());
    }

    #[test]
    fn tensor_of_singleton_pairs_is_identity() {
        let t = oddtown_tensor(&singleton_pairs(3)).unwrap();
        assert_eq!(t, Tensor::diagonal(3, 2, FieldDescriptor::gf2()).unwrap());
    }

    #[test]
    fn tensor_entries_match_parity() {
        let members = vec![vec![0b0111, 0b1010, 0b1111], vec![0b0001, 0b0011, 0b0101], vec![0b1100, 0b1110, 0b0100]];
        let f = TupleFamily::new(4, 3, members.clone()).unwrap();
        let t = oddtown_tensor(&f).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let mut count = 0;
                    for e in 0..4 {
                        if members[a][0] >> e & 1 == 1 && members[b][1] >> e & 1 == 1 && members[c][2] >> e & 1 == 1 {
                            count += 1;
                        }
                    }
                    assert_eq!(t.get(&[a, b, c]), count % 2);
                }
            }
        }
    }

    #[test]
    fn certificate_reconstructs() {
        let f = singleton_pairs(3);
        let cert = oddtown_rank1_certificate(&f);
        assert_eq!(cert.len(), 3);
        for (k, term) in cert.iter().enumerate() {
            let indicator: Vec<u64> = (0..3).map(|m| (m == k) as u64).collect();
            assert_eq!(term.factors, vec![indicator.clone(), indicator]);
        }
        let f = TupleFamily::repeated_singletons(3, 3, 2).unwrap();
        let t = oddtown_tensor(&f).unwrap();
        let back = reconstruct(&oddtown_rank1_certificate(&f), f.len(), 3, FieldDescriptor::gf2()).unwrap();
        assert_eq!(back, t);
        assert!(t.is_semi_diagonal().unwrap());
        assert!(t.max_flattening_rank() <= 3);
        assert!(t.max_flattening_rank() * 2 >= f.len());
    }

    #[test]
    fn bounds() {
        assert_eq!(cross_oddtown_bound(5, 2), 5);
        assert_eq!(cross_oddtown_bound(5, 3), 10);
        assert_eq!(cross_oddtown_bound(1, 2), 1);
    }
}
