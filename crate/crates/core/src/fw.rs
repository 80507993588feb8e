//! Forbidden-intersection configurations modulo a prime.
//!
//! A configuration of order `k` modulo `p` is a family `C` of nonempty
//! subsets of `[k]` together with a residue set `L`. A set family `F` is
//! `(C, L)`-satisfying when `|A| mod p` is outside `L` for every member and
//! no `k` distinct members `A_0, .., A_{k-1}` have
//! `|&_{i in X} A_i| mod p` outside `L` for every `X` in `C`.
//!
//! Indices into `[k]` are 0-based. Constraint sets are `u64` masks.

use serde::Serialize;
use thiserror::Error;

use crate::combin::{binomial, binomial_prefix_sum, masks_of_weight};
use crate::field::{FieldDescriptor, FieldError};
use crate::rng::Rng;
use crate::setfam::{SetFamily, SetFamilyError};
use crate::tensor::{Tensor, TensorError};

/// Largest supported configuration order.
pub const MAX_ORDER: usize = 64;
/// Attempts made by [`sample_badbox_family`] before giving up.
pub const BADBOX_ATTEMPTS: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FwError {
    #[error("configuration order must be in 1..={MAX_ORDER}, got {0}")]
    OrderOutOfRange(usize),
    #[error("constraint {index} is empty")]
    EmptyConstraint { index: usize },
    #[error("constraint {index} ({mask:#x}) is not a subset of [{k}]")]
    ConstraintOutOfRange { index: usize, mask: u64, k: usize },
    #[error("constraint {index} repeats an earlier constraint")]
    DuplicateConstraint { index: usize },
    #[error("residue {value} is not below the modulus {p}")]
    ResidueOutOfRange { value: u64, p: u64 },
    #[error("element {a} is outside [{k}]")]
    ElementOutOfRange { a: usize, k: usize },
    #[error("the family is empty")]
    EmptyFamily,
    #[error("bad-box parameters: {0}")]
    BadboxParameters(String),
    #[error("product set {member} has {got} factors, expected {expected}")]
    FactorCount { member: usize, expected: usize, got: usize },
    #[error("product set {member} has factor {mask:#x} outside [{t}]")]
    FactorOutOfRange { member: usize, mask: u64, t: usize },
    #[error("no bad-box-free family of size {size} with k = {k} in {attempts} attempts")]
    BudgetExhausted { attempts: u64, size: usize, k: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    SetFamily(#[from] SetFamilyError),
}

/// A configuration `(C, L)` of order `k` modulo the prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    k: usize,
    constraints: Vec<u64>,
    field: FieldDescriptor,
    residues: Vec<u64>,
}

impl Configuration {
    /// `residues` is deduplicated and sorted; `constraints` keep their order.
    pub fn new(k: usize, constraints: Vec<u64>, p: u64, residues: Vec<u64>) -> Result<Self, FwError> {
        if k == 0 || k > MAX_ORDER {
            return Err(FwError::OrderOutOfRange(k));
        }
        let field = FieldDescriptor::prime(p)?;
        let ground = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        for (index, &mask) in constraints.iter().enumerate() {
            if mask == 0 {
                return Err(FwError::EmptyConstraint { index });
            }
            if mask & !ground != 0 {
                return Err(FwError::ConstraintOutOfRange { index, mask, k });
            }
            if constraints[..index].contains(&mask) {
                return Err(FwError::DuplicateConstraint { index });
            }
        }
        let mut residues = residues;
        if let Some(&value) = residues.iter().find(|&&v| v >= p) {
            return Err(FwError::ResidueOutOfRange { value, p });
        }
        residues.sort_unstable();
        residues.dedup();
        Ok(Self { k, constraints, field, residues })
    }

    /// All pairs of `[k]`.
    pub fn complete_graph(k: usize, p: u64, residues: Vec<u64>) -> Result<Self, FwError> {
        if k > MAX_ORDER {
            return Err(FwError::OrderOutOfRange(k));
        }
        let pairs = if k >= 2 { masks_of_weight(k.min(63) as u32, 2).collect() } else { Vec::new() };
        Self::new(k, pairs, p, residues)
    }

    /// `k = 2`, `C = {{0, 1}}`.
    pub fn frankl_wilson(p: u64, residues: Vec<u64>) -> Result<Self, FwError> {
        Self::new(2, vec![0b11], p, residues)
    }

    /// `C = {[k]}`: restricted `k`-wise intersections.
    pub fn k_wise(k: usize, p: u64, residues: Vec<u64>) -> Result<Self, FwError> {
        let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        Self::new(k, vec![all], p, residues)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn constraints(&self) -> &[u64] {
        &self.constraints
    }

    pub fn p(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn polynomial(&self) -> IntersectionPolynomial {
        IntersectionPolynomial { field: self.field, roots: self.residues.clone() }
    }

    /// Number of constraints containing `a`.
    pub fn degree(&self, a: usize) -> Result<usize, FwError> {
        if a >= self.k {
            return Err(FwError::ElementOutOfRange { a, k: self.k });
        }
        Ok(self.constraints.iter().filter(|&&x| x >> a & 1 == 1).count())
    }

    pub fn max_degree(&self) -> usize {
        (0..self.k).map(|a| self.constraints.iter().filter(|&&x| x >> a & 1 == 1).count()).max().unwrap_or(0)
    }

    /// Whether `C` is invariant under every permutation of `[k]`, i.e. a
    /// union of complete layers.
    pub fn is_symmetric(&self) -> bool {
        let mut weights: Vec<u32> = self.constraints.iter().map(|x| x.count_ones()).collect();
        weights.sort_unstable();
        weights.dedup();
        weights.iter().all(|&w| {
            let layer = binomial(self.k as u64, w as u64);
            let present = self.constraints.iter().filter(|x| x.count_ones() == w).count() as u64;
            present == layer
        })
    }

    fn in_residues(&self, size: u32) -> bool {
        self.residues.contains(&(size as u64 % self.p()))
    }
}

/// `h(x) = prod_{l in L} (x - l)` over `GF(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPolynomial {
    field: FieldDescriptor,
    roots: Vec<u64>,
}

impl IntersectionPolynomial {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// `h(x mod p)`.
    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        let x = f.reduce(x);
        self.roots.iter().fold(1u64, |acc, &l| f.mul(acc, f.sub(x, l)))
    }
}

/// Whether a witness may use two positions holding equal sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Distinctness {
    /// Witness members must be pairwise different sets.
    #[default]
    Sets,
    /// Witness members must sit at pairwise different positions.
    Positions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FwViolation {
    /// `|A| mod p` lies in `L`.
    SizeInL { member: usize, size: u32 },
    /// Member positions `A_0, .., A_{k-1}` avoiding `L` on every constraint.
    Witness { positions: Vec<usize> },
}

/// First violation of `(C, L)`-satisfaction, if any. Witnesses are ordered
/// tuples of positions; when `C` is symmetric only increasing tuples are
/// tried.
pub fn config_violation(family: &SetFamily, cfg: &Configuration, distinct: Distinctness) -> Option<FwViolation> {
    let members = family.members();
    if let Some(member) = members.iter().position(|m| cfg.in_residues(m.count_ones())) {
        return Some(FwViolation::SizeInL { member, size: members[member].count_ones() });
    }
    WitnessSearch::new(members, cfg, distinct, None).run()
}

/// Like [`config_violation`] but only reports violations that involve the
/// member at `member`. For growing a family one set at a time.
pub fn config_violation_involving(
    family: &SetFamily,
    cfg: &Configuration,
    distinct: Distinctness,
    member: usize,
) -> Option<FwViolation> {
    let members = family.members();
    let size = members[member].count_ones();
    if cfg.in_residues(size) {
        return Some(FwViolation::SizeInL { member, size });
    }
    // a symmetric C lets the pinned member sit in slot 0
    let slots = if cfg.is_symmetric() { 1 } else { cfg.k };
    (0..slots).find_map(|slot| WitnessSearch::new(members, cfg, distinct, Some((slot, member))).run())
}

pub fn is_config_satisfying(family: &SetFamily, cfg: &Configuration) -> bool {
    config_violation(family, cfg, Distinctness::Sets).is_none()
}

struct WitnessSearch<'a> {
    members: &'a [u64],
    cfg: &'a Configuration,
    /// constraints grouped by their highest slot, checked once it is filled
    by_last: Vec<Vec<u64>>,
    increasing: bool,
    distinct: Distinctness,
    pinned: Option<(usize, usize)>,
}

impl<'a> WitnessSearch<'a> {
    fn new(members: &'a [u64], cfg: &'a Configuration, distinct: Distinctness, pinned: Option<(usize, usize)>) -> Self {
        let mut by_last = vec![Vec::new(); cfg.k];
        for &x in cfg.constraints() {
            by_last[63 - x.leading_zeros() as usize].push(x);
        }
        Self { members, cfg, by_last, increasing: cfg.is_symmetric(), distinct, pinned }
    }

    fn run(&self) -> Option<FwViolation> {
        let mut positions = Vec::with_capacity(self.cfg.k);
        self.extend(&mut positions).then_some(FwViolation::Witness { positions })
    }

    fn extend(&self, positions: &mut Vec<usize>) -> bool {
        let slot = positions.len();
        if slot == self.cfg.k {
            return true;
        }
        let range = match self.pinned {
            Some((s, p)) if s == slot => p..p + 1,
            _ => {
                let free_last = (0..slot).rev().find(|&i| self.pinned.is_none_or(|(s, _)| s != i));
                let start = match (self.increasing, free_last) {
                    (true, Some(i)) => positions[i] + 1,
                    _ => 0,
                };
                start..self.members.len()
            }
        };
        for p in range {
            let clash = positions
                .iter()
                .any(|&q| q == p || (self.distinct == Distinctness::Sets && self.members[q] == self.members[p]));
            let pinned_elsewhere = self.pinned.is_some_and(|(s, q)| s != slot && q == p);
            if clash || pinned_elsewhere {
                continue;
            }
            positions.push(p);
            let avoids = self.by_last[slot].iter().all(|&x| {
                let inter = crate::combin::mask_elements(x).fold(u64::MAX, |acc, i| acc & self.members[positions[i]]);
                !self.cfg.in_residues(inter.count_ones())
            });
            if avoids && self.extend(positions) {
                return true;
            }
            positions.pop();
        }
        false
    }
}

/// `T(A_0, .., A_{k-1}) = prod_{X in C} h(|&_{i in X} A_i|)` over `GF(p)`.
pub fn fw_tensor(family: &SetFamily, cfg: &Configuration) -> Result<Tensor, FwError> {
    if family.is_empty() {
        return Err(FwError::EmptyFamily);
    }
    let members = family.members();
    let h = cfg.polynomial();
    let f = cfg.field();
    Ok(Tensor::from_fn(vec![members.len(); cfg.k], f, |idx| {
        cfg.constraints().iter().fold(1u64, |acc, &x| {
            let inter = crate::combin::mask_elements(x).fold(u64::MAX, |a, i| a & members[idx[i]]);
            f.mul(acc, h.eval(inter.count_ones() as u64))
        })
    })?)
}

/// `sum_{s <= deg(j) |L|} C(n, s)`, a bound on the `j`-flattening rank of
/// [`fw_tensor`] for any family on `[n]`.
pub fn fw_flattening_bound(cfg: &Configuration, n: usize, j: usize) -> Result<u64, FwError> {
    let top = cfg.degree(j)? as u64 * cfg.residues.len() as u64;
    Ok(binomial_prefix_sum(n as u64, top))
}

/// `(k - 1) sum_{s <= Delta |L|} C(n, s)`, saturating.
pub fn fw_size_bound(cfg: &Configuration, n: usize) -> u64 {
    let top = cfg.max_degree() as u64 * cfg.residues.len() as u64;
    (cfg.k as u64 - 1).saturating_mul(binomial_prefix_sum(n as u64, top))
}

/// Odd-sized subsets of `[t]`, ascending.
pub fn odd_subsets(t: usize) -> Vec<u64> {
    assert!(t <= 63, "ground set too large");
    (0..1u64 << t).filter(|m| m.count_ones() % 2 == 1).collect()
}

/// `floor(2^(t+1) / (t - 1))` for `t >= 2`.
pub fn badbox_k(t: usize) -> Result<usize, FwError> {
    if !(2..=60).contains(&t) {
        return Err(FwError::BadboxParameters(format!("t must be in 2..=60, got {t}")));
    }
    Ok(((1u64 << (t + 1)) / (t as u64 - 1)) as usize)
}

/// `ceil(2^((t-1)s/4))`, computed exactly as the least `m` with
/// `m^4 >= 2^((t-1)s)`.
pub fn badbox_target_size(t: usize, s: usize) -> Result<usize, FwError> {
    let e = (t.saturating_sub(1))
        .checked_mul(s)
        .filter(|&e| e <= 120)
        .ok_or_else(|| FwError::BadboxParameters(format!("2^((t-1)s) out of range for t={t}, s={s}")))?;
    let target = 1u128 << e;
    let mut m = 1u128 << (e / 4);
    while m.pow(4) < target {
        m += 1;
    }
    Ok(m as usize)
}

/// A product set `A_0 x .. x A_{s-1}` with every factor a subset of `[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSet {
    pub factors: Vec<u64>,
}

impl ProductSet {
    pub fn size(&self) -> u64 {
        self.factors.iter().map(|f| f.count_ones() as u64).product()
    }

    /// `|self & other|`, the product of the factor intersections.
    pub fn intersection_size(&self, other: &ProductSet) -> u64 {
        self.factors.iter().zip(&other.factors).map(|(a, b)| (a & b).count_ones() as u64).product()
    }

    /// The set as a mask over `[t]^s`, where `(x_0, .., x_{s-1})` has index
    /// `sum x_i t^(s-1-i)`. Requires `t^s <= 64`.
    pub fn flatten(&self, t: usize) -> u64 {
        self.factors.iter().fold(1u64, |acc, &factor| {
            let mut next = 0u64;
            for prefix in crate::combin::mask_elements(acc) {
                for x in crate::combin::mask_elements(factor) {
                    next |= 1u64 << (prefix * t + x);
                }
            }
            next
        })
    }
}

/// A list of product sets over `[t]^s`; duplicates allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadboxFamily {
    t: usize,
    s: usize,
    members: Vec<ProductSet>,
}

impl BadboxFamily {
    pub fn new(t: usize, s: usize, members: Vec<ProductSet>) -> Result<Self, FwError> {
        if t == 0 || t > 63 || s == 0 {
            return Err(FwError::BadboxParameters(format!("need 1 <= t <= 63 and s >= 1, got t={t}, s={s}")));
        }
        let ground = (1u64 << t) - 1;
        for (member, set) in members.iter().enumerate() {
            if set.factors.len() != s {
                return Err(FwError::FactorCount { member, expected: s, got: set.factors.len() });
            }
            if let Some(&mask) = set.factors.iter().find(|&&f| f & !ground != 0) {
                return Err(FwError::FactorOutOfRange { member, mask, t });
            }
        }
        Ok(Self { t, s, members })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn members(&self) -> &[ProductSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Ground-set size `t^s`, if it fits in a mask.
    pub fn ground_size(&self) -> Option<usize> {
        (self.t as u64).checked_pow(self.s as u32).filter(|&n| n <= 64).map(|n| n as usize)
    }

    /// The members as flat subsets of `[t^s]`.
    pub fn to_set_family(&self) -> Result<SetFamily, FwError> {
        let n = self
            .ground_size()
            .ok_or_else(|| FwError::BadboxParameters(format!("t^s exceeds 64 for t={}, s={}", self.t, self.s)))?;
        Ok(SetFamily::new(n, self.members.iter().map(|m| m.flatten(self.t)).collect())?)
    }
}

/// Positions of `k` members with pairwise odd intersections, if any.
pub fn find_odd_clique(family: &BadboxFamily, k: usize) -> Option<Vec<usize>> {
    let m = family.len();
    let adjacent: Vec<Vec<bool>> = (0..m)
        .map(|p| (0..m).map(|q| family.members[p].intersection_size(&family.members[q]) % 2 == 1).collect())
        .collect();
    // a clique member must itself be odd
    let candidates: Vec<usize> = (0..m).filter(|&p| adjacent[p][p]).collect();
    let mut clique = Vec::with_capacity(k);
    extend_clique(&adjacent, &candidates, k, &mut clique).then_some(clique)
}

fn extend_clique(adjacent: &[Vec<bool>], candidates: &[usize], k: usize, clique: &mut Vec<usize>) -> bool {
    if clique.len() == k {
        return true;
    }
    for (i, &p) in candidates.iter().enumerate() {
        if clique.len() + candidates.len() - i < k {
            return false;
        }
        let rest: Vec<usize> = candidates[i + 1..].iter().copied().filter(|&q| adjacent[p][q]).collect();
        clique.push(p);
        if extend_clique(adjacent, &rest, k, clique) {
            return true;
        }
        clique.pop();
    }
    false
}

/// True iff no `k` members have pairwise odd intersections, i.e. no bad box
/// holds `k` members.
pub fn verify_badbox_free(family: &BadboxFamily, k: usize) -> bool {
    find_odd_clique(family, k).is_none()
}

/// A verified bad-box-free family and how it was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadboxSample {
    pub family: BadboxFamily,
    pub k: usize,
    pub attempts: u64,
    pub seed: u64,
}

/// Draws `badbox_target_size(t, s)` product sets of odd subsets of `[t]`
/// uniformly with repetition until the result is bad-box free for
/// `k = badbox_k(t)`. Attempt `i` uses `Rng::derived(seed, i)`.
pub fn sample_badbox_family(t: usize, s: usize, seed: u64) -> Result<BadboxSample, FwError> {
    let k = badbox_k(t)?;
    let size = badbox_target_size(t, s)?;
    let odd = odd_subsets(t);
    for attempt in 0..BADBOX_ATTEMPTS {
        let mut rng = Rng::derived(seed, attempt);
        let members = (0..size)
            .map(|_| ProductSet { factors: (0..s).map(|_| odd[rng.below_usize(odd.len())]).collect() })
            .collect();
        let family = BadboxFamily::new(t, s, members)?;
        if verify_badbox_free(&family, k) {
            return Ok(BadboxSample { family, k, attempts: attempt + 1, seed });
        }
    }
    Err(FwError::BudgetExhausted { attempts: BADBOX_ATTEMPTS, size, k })
}

/// A largest family of odd subsets of `[t]` with pairwise odd
/// intersections, by exhaustive clique search.
pub fn largest_odd_intersecting_family(t: usize) -> Vec<u64> {
    let odd = odd_subsets(t);
    let family = BadboxFamily::new(t, 1, odd.iter().map(|&a| ProductSet { factors: vec![a] }).collect())
        .expect("odd subsets lie in [t]");
    let mut best = Vec::new();
    for k in 1..=odd.len() {
        match find_odd_clique(&family, k) {
            Some(clique) => best = clique.iter().map(|&p| odd[p]).collect(),
            None => break,
        }
    }
    best
}
