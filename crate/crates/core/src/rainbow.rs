//! Rainbow matchings in colored multi-hypergraphs and the set-pair
//! extension, via wedge products of moment-curve vectors.
//!
//! A `(z, t)`-colored `r`-uniform hypergraph on `[N]` has `z` colors, each a
//! matching of `t` edges `A_{i,0}, .., A_{i,t-1}`. A rainbow matching is a
//! set of pairwise disjoint edges with pairwise different colors. With
//! `w(A)` the wedge of the moment-curve vectors of the vertices of `A` in a
//! space of dimension `rt`, the tensor
//! `T(i_0, .., i_{t-1}) = w(A_{i_0,0}) ^ .. ^ w(A_{i_{t-1},t-1})` is nonzero
//! exactly when those edges are pairwise disjoint.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::combin::{binomial, mask_elements};
use crate::extalg::{moment_curve_vectors, ExtError, Vector};
use crate::field::{FieldDescriptor, FieldError, FieldKind};
use crate::linalg::determinant;
use crate::tensor::{checked_volume, Tensor, TensorError};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RainbowError {
    #[error("vertex count must be in 1..={MAX_VERTICES}, got {0}")]
    VertexCount(usize),
    #[error("uniformity r and matching size t must be positive")]
    ZeroParameter,
    #[error("hypergraph has no colors")]
    NoColors,
    #[error("color {color} has {got} edges, expected {expected}")]
    EdgeCount { color: usize, expected: usize, got: usize },
    #[error("edge {edge} of color {color} has {got} vertices, expected {expected}")]
    EdgeSize { color: usize, edge: usize, expected: usize, got: usize },
    #[error("edge {edge} of color {color} uses a vertex outside [{n}]")]
    VertexOutOfRange { color: usize, edge: usize, n: usize },
    #[error("edges {first} and {second} of color {color} intersect")]
    NotMatching { color: usize, first: usize, second: usize },
    #[error("rainbow matching of size {} exists: {matching:?}", matching.len())]
    RainbowMatchingExists { matching: Vec<(usize, usize)> },
    #[error("tensor needs a field of characteristic 2 with more than {needed} elements, got {field}")]
    FieldTooSmall { needed: usize, field: FieldDescriptor },
    #[error("set-pair system needs t >= 1 and every r_i >= 1")]
    BadSlotSizes,
    #[error("member {member} has {got} slots, expected {expected}")]
    SlotCount { member: usize, expected: usize, got: usize },
    #[error("slot {slot} of member {member} has {got} elements, expected {expected}")]
    SlotSize { member: usize, slot: usize, expected: usize, got: usize },
    #[error("member {member} uses an element outside [{n}]")]
    ElementOutOfRange { member: usize, n: usize },
    #[error("sum of slot sizes {0} exceeds {MAX_VERTICES}")]
    AmbientTooLarge(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Ext(#[from] ExtError),
}

fn ground_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A `(z, t)`-colored `r`-uniform multi-hypergraph on `[N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredHypergraph {
    vertices: usize,
    r: usize,
    t: usize,
    colors: Vec<Vec<u64>>,
}

impl ColoredHypergraph {
    /// `colors[i][j]` is the edge `A_{i,j}` as a vertex mask.
    pub fn new(vertices: usize, r: usize, t: usize, colors: Vec<Vec<u64>>) -> Result<Self, RainbowError> {
        if vertices == 0 || vertices > MAX_VERTICES {
            return Err(RainbowError::VertexCount(vertices));
        }
        if r == 0 || t == 0 {
            return Err(RainbowError::ZeroParameter);
        }
        if colors.is_empty() {
            return Err(RainbowError::NoColors);
        }
        let ground = ground_mask(vertices);
        for (color, edges) in colors.iter().enumerate() {
            if edges.len() != t {
                return Err(RainbowError::EdgeCount { color, expected: t, got: edges.len() });
            }
            for (edge, &mask) in edges.iter().enumerate() {
                if mask & !ground != 0 {
                    return Err(RainbowError::VertexOutOfRange { color, edge, n: vertices });
                }
                if mask.count_ones() as usize != r {
                    return Err(RainbowError::EdgeSize { color, edge, expected: r, got: mask.count_ones() as usize });
                }
                if let Some(first) = edges[..edge].iter().position(|&e| e & mask != 0) {
                    return Err(RainbowError::NotMatching { color, first, second: edge });
                }
            }
        }
        Ok(Self { vertices, r, t, colors })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of colors `z`.
    pub fn z(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[Vec<u64>] {
        &self.colors
    }

    pub fn edge(&self, color: usize, index: usize) -> u64 {
        self.colors[color][index]
    }
}

/// A rainbow matching of `size` edges as `(color, edge index)` pairs with
/// increasing colors, or `None` if none exists. Exhaustive.
pub fn find_rainbow_matching(h: &ColoredHypergraph, size: usize) -> Option<Vec<(usize, usize)>> {
    let mut chosen = Vec::with_capacity(size);
    extend_matching(h, size, 0, 0, &mut chosen).then_some(chosen)
}

fn extend_matching(
    h: &ColoredHypergraph,
    size: usize,
    from: usize,
    used: u64,
    chosen: &mut Vec<(usize, usize)>,
) -> bool {
    if chosen.len() == size {
        return true;
    }
    let z = h.z();
    for color in from..z {
        if chosen.len() + (z - color) < size {
            return false;
        }
        for (index, &edge) in h.colors[color].iter().enumerate() {
            if edge & used != 0 {
                continue;
            }
            chosen.push((color, index));
            if extend_matching(h, size, color + 1, used | edge, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// `GF(2^k)` with `k` the least integer such that `2^k > vertices`, and at
/// least 8.
pub fn rainbow_field(vertices: usize) -> Result<FieldDescriptor, FieldError> {
    let mut k = 8u32;
    while (1u64 << k) <= vertices as u64 {
        k += 1;
    }
    FieldDescriptor::binary(k)
}

fn require_field(field: FieldDescriptor, points: usize) -> Result<(), RainbowError> {
    if field.kind() != FieldKind::Binary || field.order() <= points as u64 {
        return Err(RainbowError::FieldTooSmall { needed: points, field });
    }
    Ok(())
}

/// Top coefficient of the wedge of the point vectors selected by `slots`,
/// as the determinant of the stacked `n x n` matrix. In characteristic 2 the
/// row order does not matter.
fn stacked_determinant(points: &[Vector], slots: impl Iterator<Item = u64>, n: usize, field: FieldDescriptor) -> u64 {
    let mut rows = Vec::with_capacity(n * n);
    let mut used = 0u64;
    for mask in slots {
        if used & mask != 0 {
            return 0;
        }
        used |= mask;
        for v in mask_elements(mask) {
            rows.extend_from_slice(points[v].coords());
        }
    }
    debug_assert_eq!(rows.len(), n * n);
    determinant(field, n, rows)
}

/// Entries of `T(i_0, .., i_{t-1}) = w(A_{i_0,0}) ^ .. ^ w(A_{i_{t-1},t-1})`
/// over `field` in dimension `rt`, row-major over `[z]^t` with the last
/// index fastest. Vertex `v` gets moment-curve parameter `v + 1`. Valid for
/// every `t`, including `t = 1`.
pub fn rainbow_entries(h: &ColoredHypergraph, field: FieldDescriptor) -> Result<Vec<u64>, RainbowError> {
    require_field(field, h.vertices)?;
    let n = h.r * h.t;
    if n > MAX_VERTICES {
        return Err(RainbowError::AmbientTooLarge(n));
    }
    let dims = vec![h.z(); h.t];
    let volume = checked_volume(&dims).ok_or(TensorError::TooLarge { dims })?;
    let points = moment_curve_vectors(h.vertices, n, field)?;
    let (t, z) = (h.t, h.z());
    Ok((0..volume)
        .into_par_iter()
        .map(|linear| {
            let mut index = vec![0; t];
            let mut rest = linear;
            for slot in (0..t).rev() {
                index[slot] = rest % z;
                rest /= z;
            }
            stacked_determinant(&points, index.iter().enumerate().map(|(slot, &c)| h.colors[c][slot]), n, field)
        })
        .collect())
}

/// [`rainbow_entries`] as a `z^t` tensor; needs `t >= 2`.
pub fn rainbow_tensor(h: &ColoredHypergraph, field: FieldDescriptor) -> Result<Tensor, RainbowError> {
    let entries = rainbow_entries(h, field)?;
    Ok(Tensor::new(vec![h.z(); h.t], field, entries)?)
}

/// `(t - 1) C(rt, r)`, saturating.
pub fn rainbow_bound(r: usize, t: usize) -> u64 {
    let n = (r as u64).saturating_mul(t as u64);
    (t as u64).saturating_sub(1).saturating_mul(binomial(n, r as u64))
}

/// The chain `z <= (t - 1) mfrank(T) <= (t - 1) C(rt, r)` evaluated on a
/// hypergraph without a rainbow matching of size `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RainbowCertificate {
    pub z: usize,
    pub r: usize,
    pub t: usize,
    pub n: usize,
    pub field: FieldDescriptor,
    pub semi_diagonal: bool,
    pub flattening_ranks: Vec<usize>,
    pub mfrank: usize,
    /// `C(rt, r)`, the cap on every flattening rank.
    pub flattening_cap: u64,
    /// `(t - 1) C(rt, r)`.
    pub bound: u64,
    /// Every link of the chain holds.
    pub holds: bool,
}

/// Builds [`rainbow_tensor`] for `h` and checks the bound chain. Fails with
/// the matching if `h` has a rainbow matching of size `t`.
pub fn certify_no_rainbow_bound(
    h: &ColoredHypergraph,
    field: FieldDescriptor,
) -> Result<RainbowCertificate, RainbowError> {
    if let Some(matching) = find_rainbow_matching(h, h.t) {
        return Err(RainbowError::RainbowMatchingExists { matching });
    }
    let tensor = rainbow_tensor(h, field)?;
    let semi_diagonal = tensor.is_semi_diagonal()?;
    let flattening_ranks = tensor.flattening_ranks();
    let mfrank = flattening_ranks.iter().copied().max().unwrap_or(0);
    let n = h.r * h.t;
    let flattening_cap = binomial(n as u64, h.r as u64);
    let bound = rainbow_bound(h.r, h.t);
    let t1 = h.t as u64 - 1;
    let z = h.z() as u64;
    let holds = semi_diagonal
        && z <= t1 * mfrank as u64
        && flattening_ranks.iter().all(|&f| f as u64 <= flattening_cap)
        && z <= bound;
    Ok(RainbowCertificate {
        z: h.z(),
        r: h.r,
        t: h.t,
        n,
        field,
        semi_diagonal,
        flattening_ranks,
        mfrank,
        flattening_cap,
        bound,
        holds,
    })
}

/// A list of `t`-tuples of subsets of `[n]` with `|A(i)| = r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPairSystem {
    n: usize,
    sizes: Vec<usize>,
    members: Vec<Vec<u64>>,
}

impl SetPairSystem {
    pub fn new(n: usize, sizes: Vec<usize>, members: Vec<Vec<u64>>) -> Result<Self, RainbowError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(RainbowError::VertexCount(n));
        }
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(RainbowError::BadSlotSizes);
        }
        let total: usize = sizes.iter().sum();
        if total > MAX_VERTICES {
            return Err(RainbowError::AmbientTooLarge(total));
        }
        let ground = ground_mask(n);
        for (member, tuple) in members.iter().enumerate() {
            if tuple.len() != sizes.len() {
                return Err(RainbowError::SlotCount { member, expected: sizes.len(), got: tuple.len() });
            }
            for (slot, (&mask, &size)) in tuple.iter().zip(&sizes).enumerate() {
                if mask & !ground != 0 {
                    return Err(RainbowError::ElementOutOfRange { member, n });
                }
                if mask.count_ones() as usize != size {
                    return Err(RainbowError::SlotSize {
                        member,
                        slot,
                        expected: size,
                        got: mask.count_ones() as usize,
                    });
                }
            }
        }
        Ok(Self { n, sizes, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn members(&self) -> &[Vec<u64>] {
        &self.members
    }

    /// `(t - 1) max_i C(r_0 + .. + r_{t-1}, r_i)`, saturating.
    pub fn bound(&self) -> u64 {
        let total: u64 = self.sizes.iter().map(|&r| r as u64).sum();
        let widest = self.sizes.iter().map(|&r| binomial(total, r as u64)).max().unwrap_or(0);
        (self.t() as u64 - 1).saturating_mul(widest)
    }
}

/// Why a set-pair system fails the hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetPairViolation {
    /// Two slots of one member intersect.
    SlotsOverlap { member: usize, slots: (usize, usize) },
    /// Distinct members whose cross slots `A_0(0), .., A_{t-1}(t-1)` are
    /// pairwise disjoint.
    DisjointCross { positions: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BollobasReport {
    pub size: usize,
    pub t: usize,
    pub sizes: Vec<usize>,
    pub bound: u64,
    pub violation: Option<SetPairViolation>,
    pub hypotheses_hold: bool,
    pub within_bound: bool,
    pub field: Option<FieldDescriptor>,
    pub semi_diagonal: Option<bool>,
    pub flattening_ranks: Option<Vec<usize>>,
    pub mfrank: Option<usize>,
}

fn set_pair_violation(s: &SetPairSystem) -> Option<SetPairViolation> {
    for (member, tuple) in s.members.iter().enumerate() {
        for b in 0..tuple.len() {
            if let Some(a) = tuple[..b].iter().position(|&x| x & tuple[b] != 0) {
                return Some(SetPairViolation::SlotsOverlap { member, slots: (a, b) });
            }
        }
    }
    let mut positions = Vec::with_capacity(s.t());
    disjoint_cross(s, 0, &mut positions).then_some(SetPairViolation::DisjointCross { positions })
}

fn disjoint_cross(s: &SetPairSystem, used: u64, positions: &mut Vec<usize>) -> bool {
    let slot = positions.len();
    if slot == s.t() {
        return true;
    }
    for p in 0..s.members.len() {
        let mask = s.members[p][slot];
        if positions.contains(&p) || mask & used != 0 {
            continue;
        }
        positions.push(p);
        if disjoint_cross(s, used | mask, positions) {
            return true;
        }
        positions.pop();
    }
    false
}

/// The `m^t` tensor `T(A_0, .., A_{t-1}) = w(A_0(0)) ^ .. ^ w(A_{t-1}(t-1))`
/// over `field`, in dimension `r_0 + .. + r_{t-1}`.
pub fn set_pair_tensor(s: &SetPairSystem, field: FieldDescriptor) -> Result<Tensor, RainbowError> {
    require_field(field, s.n)?;
    let n: usize = s.sizes.iter().sum();
    let points = moment_curve_vectors(s.n, n, field)?;
    Ok(Tensor::from_fn(vec![s.members.len(); s.t()], field, |index| {
        stacked_determinant(&points, index.iter().enumerate().map(|(slot, &p)| s.members[p][slot]), n, field)
    })?)
}

/// Checks the set-pair hypotheses and the size bound, and reports the wedge
/// tensor's semi-diagonality and flattening ranks when the system is
/// nonempty.
pub fn bollobas_verify(s: &SetPairSystem) -> Result<BollobasReport, RainbowError> {
    let violation = set_pair_violation(s);
    let bound = s.bound();
    let mut report = BollobasReport {
        size: s.members.len(),
        t: s.t(),
        sizes: s.sizes.clone(),
        bound,
        hypotheses_hold: violation.is_none(),
        violation,
        within_bound: s.members.len() as u64 <= bound,
        field: None,
        semi_diagonal: None,
        flattening_ranks: None,
        mfrank: None,
    };
    if !s.members.is_empty() {
        let field = rainbow_field(s.n)?;
        let tensor = set_pair_tensor(s, field)?;
        let ranks = tensor.flattening_ranks();
        report.field = Some(field);
        report.semi_diagonal = Some(tensor.is_semi_diagonal()?);
        report.mfrank = ranks.iter().copied().max();
        report.flattening_ranks = Some(ranks);
    }
    Ok(report)
}
