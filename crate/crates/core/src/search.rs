//! Exhaustive and randomized populations for checking the flattening-rank
//! bounds, plus random instance generators for the application modules.
//!
//! For a semi-diagonal tensor on `[a]^d` the checked bounds are
//! `mfrank >= ceil(a / (d - 1))` and `sum_i frank_i >= ceil(d a / (d - 1))`.
//! Randomized runs take an explicit seed; sample `i` of a sweep draws from
//! `Rng::derived(seed, i)`, so reports do not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldDescriptor;
use crate::formats::{TensorDocument, TupleFamilyDocument};
use crate::fw::{config_violation_involving, Configuration, Distinctness, FwError};
use crate::linalg::BitMatrix;
use crate::rainbow::{ColoredHypergraph, RainbowError};
use crate::rng::Rng;
use crate::setfam::{cross_oddtown_bound, SetFamily, TupleFamily};
use crate::tensor::{checked_volume, Tensor, TensorError};

/// Largest number of free entries [`exhaustive_min_mfrank`] will enumerate.
pub const MAX_FREE_ENTRIES: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("{free} free entries exceed the cap of {MAX_FREE_ENTRIES}")]
    PopulationTooLarge { free: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Fw(#[from] FwError),
    #[error(transparent)]
    Rainbow(#[from] RainbowError),
}

/// `ceil(a / (d - 1))`.
pub fn mfrank_lower_bound(a: usize, d: usize) -> usize {
    a.div_ceil(d - 1)
}

/// `ceil(d a / (d - 1))`.
pub fn sum_frank_lower_bound(a: usize, d: usize) -> usize {
    (d * a).div_ceil(d - 1)
}

/// A population member attaining a reported minimum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    /// Which minimum this member attains: `"mfrank"` or `"sum_frank"`.
    pub attains: String,
    /// Enumeration mask or sample index identifying the member.
    pub index: u64,
    pub flattening_ranks: Vec<usize>,
    pub tensor: TensorDocument,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchReport {
    pub population: String,
    pub a: usize,
    pub d: usize,
    pub field: FieldDescriptor,
    pub examined: u64,
    pub min_mfrank: Option<usize>,
    pub min_sum_frank: Option<usize>,
    pub mfrank_lower_bound: usize,
    pub sum_frank_lower_bound: usize,
    /// Members below either lower bound.
    pub violations: u64,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cell {
    Diagonal,
    Distinct,
    Mixed,
}

fn classify(index: &[usize]) -> Cell {
    if index.iter().all(|&x| x == index[0]) {
        return Cell::Diagonal;
    }
    let mut sorted = index.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).all(|w| w[0] != w[1]) {
        Cell::Distinct
    } else {
        Cell::Mixed
    }
}

fn check_shape(a: usize, d: usize) -> Result<usize, SearchError> {
    if a == 0 || d < 2 {
        return Err(SearchError::InvalidParameters(format!("need a >= 1 and d >= 2, got a={a}, d={d}")));
    }
    checked_volume(&vec![a; d]).ok_or_else(|| TensorError::TooLarge { dims: vec![a; d] }.into())
}

fn cells(a: usize, d: usize) -> Vec<Cell> {
    let volume = a.pow(d as u32);
    let mut index = vec![0; d];
    (0..volume)
        .map(|mut linear| {
            for slot in (0..d).rev() {
                index[slot] = linear % a;
                linear /= a;
            }
            classify(&index)
        })
        .collect()
}

/// Running minima keyed by `(value, member index)`, so merges are
/// independent of evaluation order.
#[derive(Clone, Debug, Default)]
struct Minima {
    examined: u64,
    violations: u64,
    mfrank: Option<(usize, u64, Vec<usize>)>,
    sum: Option<(usize, u64, Vec<usize>)>,
}

impl Minima {
    fn observe(&mut self, index: u64, ranks: Vec<usize>, lower: usize, sum_lower: usize) {
        let m = ranks.iter().copied().max().unwrap_or(0);
        let s: usize = ranks.iter().sum();
        self.examined += 1;
        if m < lower || s < sum_lower {
            self.violations += 1;
        }
        if self.mfrank.as_ref().is_none_or(|(v, i, _)| (m, index) < (*v, *i)) {
            self.mfrank = Some((m, index, ranks.clone()));
        }
        if self.sum.as_ref().is_none_or(|(v, i, _)| (s, index) < (*v, *i)) {
            self.sum = Some((s, index, ranks));
        }
    }

    fn merge(mut self, other: Minima) -> Minima {
        self.examined += other.examined;
        self.violations += other.violations;
        let pick = |x: Option<(usize, u64, Vec<usize>)>, y: Option<(usize, u64, Vec<usize>)>| match (x, y) {
            (Some(x), Some(y)) => Some(if (y.0, y.1) < (x.0, x.1) { y } else { x }),
            (x, y) => x.or(y),
        };
        self.mfrank = pick(self.mfrank, other.mfrank);
        self.sum = pick(self.sum, other.sum);
        self
    }

    fn into_report(
        self,
        population: String,
        a: usize,
        d: usize,
        field: FieldDescriptor,
        seed: Option<u64>,
        rebuild: impl Fn(u64) -> Tensor,
    ) -> SearchReport {
        let mut witnesses = Vec::new();
        for (attains, best) in [("mfrank", &self.mfrank), ("sum_frank", &self.sum)] {
            if let Some((_, index, ranks)) = best {
                witnesses.push(Witness {
                    attains: attains.into(),
                    index: *index,
                    flattening_ranks: ranks.clone(),
                    tensor: TensorDocument::dense(&rebuild(*index), None),
                });
            }
        }
        SearchReport {
            population,
            a,
            d,
            field,
            examined: self.examined,
            min_mfrank: self.mfrank.map(|m| m.0),
            min_sum_frank: self.sum.map(|s| s.0),
            mfrank_lower_bound: mfrank_lower_bound(a, d),
            sum_frank_lower_bound: sum_frank_lower_bound(a, d),
            violations: self.violations,
            witnesses,
            seed,
            wall_clock_ms: None,
        }
    }
}

/// Linear indices of the entries of `[a]^d` that are neither constant nor
/// all-distinct, ascending.
pub fn free_positions(a: usize, d: usize) -> Result<Vec<usize>, SearchError> {
    check_shape(a, d)?;
    Ok(cells(a, d).iter().enumerate().filter(|(_, &c)| c == Cell::Mixed).map(|(i, _)| i).collect())
}

/// The semi-diagonal GF(2) tensor with diagonal 1, all-distinct entries 0
/// and free entry `j` (in [`free_positions`] order) equal to bit `j` of
/// `mask`.
pub fn semidiagonal_from_mask(a: usize, d: usize, mask: u64) -> Result<Tensor, SearchError> {
    check_shape(a, d)?;
    let cells = cells(a, d);
    let mut free = 0;
    let entries = cells
        .iter()
        .map(|cell| match cell {
            Cell::Diagonal => 1,
            Cell::Distinct => 0,
            Cell::Mixed => {
                free += 1;
                mask >> (free - 1) & 1
            }
        })
        .collect();
    Ok(Tensor::new(vec![a; d], FieldDescriptor::gf2(), entries)?)
}

/// Every semi-diagonal GF(2) tensor on `[a]^d` with diagonal fixed to 1.
/// Witnesses are the smallest masks attaining each minimum.
pub fn exhaustive_min_mfrank(a: usize, d: usize) -> Result<SearchReport, SearchError> {
    let free = free_positions(a, d)?;
    if free.len() > MAX_FREE_ENTRIES {
        return Err(SearchError::PopulationTooLarge { free: free.len() });
    }
    let base = semidiagonal_from_mask(a, d, 0)?;
    // (row, col) of each free entry in each flattening
    let coords: Vec<Vec<(usize, usize)>> = free
        .iter()
        .map(|&linear| {
            let index = base.multi_index(linear);
            (0..d).map(|axis| flattening_coords(&index, axis, a)).collect()
        })
        .collect();
    let base_mats: Vec<BitMatrix> = (0..d).map(|axis| bit_flattening(&base, axis)).collect();
    let total = 1u64 << free.len();
    let (lower, sum_lower) = (mfrank_lower_bound(a, d), sum_frank_lower_bound(a, d));
    let chunk = 1u64 << 12;
    let minima = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            // Gray-code walk over [c * chunk, (c + 1) * chunk)
            let start = c * chunk;
            let end = total.min(start + chunk);
            let mut mats = base_mats.clone();
            let mut current = start ^ (start >> 1);
            for (j, per_axis) in coords.iter().enumerate() {
                if current >> j & 1 == 1 {
                    for (axis, &(r, col)) in per_axis.iter().enumerate() {
                        mats[axis].toggle(r, col);
                    }
                }
            }
            let mut minima = Minima::default();
            for i in start..end {
                if i > start {
                    let j = i.trailing_zeros() as usize;
                    current ^= 1 << j;
                    for (axis, &(r, col)) in coords[j].iter().enumerate() {
                        mats[axis].toggle(r, col);
                    }
                }
                let ranks = mats.iter().map(|m| m.clone().rank()).collect();
                minima.observe(current, ranks, lower, sum_lower);
            }
            minima
        })
        .reduce(Minima::default, Minima::merge);
    let population = format!("all semi-diagonal tensors on [{a}]^{d} over GF(2) with unit diagonal");
    Ok(minima.into_report(population, a, d, FieldDescriptor::gf2(), None, |mask| {
        semidiagonal_from_mask(a, d, mask).expect("shape checked")
    }))
}

fn flattening_coords(index: &[usize], axis: usize, a: usize) -> (usize, usize) {
    let col = index.iter().enumerate().filter(|&(i, _)| i != axis).fold(0, |acc, (_, &x)| acc * a + x);
    (index[axis], col)
}

fn bit_flattening(t: &Tensor, axis: usize) -> BitMatrix {
    let a = t.dims()[0];
    let d = t.order();
    let mut m = BitMatrix::zeros(a, a.pow(d as u32 - 1));
    for (linear, &v) in t.entries().iter().enumerate() {
        if v != 0 {
            let (r, c) = flattening_coords(&t.multi_index(linear), axis, a);
            m.set(r, c, true);
        }
    }
    m
}

/// A random semi-diagonal tensor on `[a]^d`. Entries are visited in
/// row-major order: a constant index draws `1 + below(q - 1)`, a mixed index
/// draws `below(q)`, an all-distinct index is 0 and draws nothing.
pub fn random_semidiagonal(a: usize, d: usize, field: FieldDescriptor, rng: &mut Rng) -> Result<Tensor, SearchError> {
    check_shape(a, d)?;
    let q = field.order();
    let entries = cells(a, d)
        .iter()
        .map(|cell| match cell {
            Cell::Diagonal => 1 + rng.below(q - 1),
            Cell::Distinct => 0,
            Cell::Mixed => rng.below(q),
        })
        .collect();
    Ok(Tensor::new(vec![a; d], field, entries)?)
}

/// `samples` random semi-diagonal tensors, sample `i` drawn from
/// `Rng::derived(seed, i)`.
pub fn random_semidiagonal_sweep(
    a: usize,
    d: usize,
    field: FieldDescriptor,
    samples: u64,
    seed: u64,
) -> Result<SearchReport, SearchError> {
    check_shape(a, d)?;
    let (lower, sum_lower) = (mfrank_lower_bound(a, d), sum_frank_lower_bound(a, d));
    let sample = |i: u64| random_semidiagonal(a, d, field, &mut Rng::derived(seed, i)).expect("shape checked");
    let minima = (0..samples)
        .into_par_iter()
        .fold(Minima::default, |mut minima, i| {
            minima.observe(i, sample(i).flattening_ranks(), lower, sum_lower);
            minima
        })
        .reduce(Minima::default, Minima::merge);
    let population = format!("{samples} random semi-diagonal tensors on [{a}]^{d} over {field}");
    Ok(minima.into_report(population, a, d, field, Some(seed), sample))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OddtownSearchReport {
    pub n: usize,
    pub d: usize,
    pub budget: u64,
    pub largest: usize,
    /// `(d - 1) n`.
    pub bound: usize,
    pub exceeded: bool,
    pub witness: TupleFamilyDocument,
    pub seed: u64,
}

/// `budget` rounds of random greedy growth. Each round starts empty and
/// proposes, with probability 1/4, a copy of an existing member and
/// otherwise a tuple of uniform random subsets; proposals that break the
/// cross-Oddtown conditions are dropped, and a round ends after
/// `8 (n d + 1)` consecutive drops. The first largest family wins.
pub fn random_cross_oddtown_search(
    n: usize,
    d: usize,
    budget: u64,
    rng: &mut Rng,
) -> Result<OddtownSearchReport, SearchError> {
    if n == 0 || n > 63 || d < 2 {
        return Err(SearchError::InvalidParameters(format!("need 1 <= n <= 63 and d >= 2, got n={n}, d={d}")));
    }
    let seed = rng.seed();
    let patience = 8 * (n * d + 1);
    let mut best = TupleFamily::new(n, d, Vec::new()).expect("valid shape");
    for _ in 0..budget {
        let mut family = TupleFamily::new(n, d, Vec::new()).expect("valid shape");
        let mut drops = 0;
        while drops < patience {
            let proposal = if !family.is_empty() && rng.below(4) == 0 {
                family.members()[rng.below_usize(family.len())].clone()
            } else {
                (0..d).map(|_| rng.below(1 << n)).collect()
            };
            family.push(proposal).expect("valid shape");
            if family.violation_involving_last().is_some() {
                family.pop();
                drops += 1;
            } else {
                drops = 0;
            }
        }
        if family.len() > best.len() {
            best = family;
        }
    }
    let bound = cross_oddtown_bound(n, d);
    Ok(OddtownSearchReport {
        n,
        d,
        budget,
        largest: best.len(),
        bound,
        exceeded: best.len() > bound,
        witness: TupleFamilyDocument::from_family(&best),
        seed,
    })
}

/// How [`enumerate_cross_oddtowns`] treats isomorphic families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Visit every family.
    None,
    /// Visit one family per class under relabeling the ground set and
    /// permuting the `d` slots of all members simultaneously. Every
    /// property checked here is invariant under both.
    Isomorphism,
}

/// Per-size counts from [`enumerate_cross_oddtowns`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddtownCensus {
    pub n: usize,
    pub d: usize,
    pub max_size: usize,
    /// `visited[m]`: families of size `m` passed to the visitor.
    pub visited: Vec<u64>,
    /// `families[m]`: all cross-Oddtown multisets of size `m`.
    pub families: Vec<u64>,
    pub largest: usize,
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for slot in 0..d {
            let mut q = p.clone();
            q.insert(slot, d - 1);
            out.push(q);
        }
    }
    out
}

fn permute_mask(mask: u64, perm: &[usize]) -> u64 {
    crate::combin::mask_elements(mask).fold(0, |acc, e| acc | 1 << perm[e])
}

/// Calls `visit(family, class_size)` on cross-Oddtown families on `[n]`
/// with `d`-tuples and at most `max_size` members, counted as multisets.
/// Members appear in candidate order: tuples with an odd `d`-fold
/// intersection, sorted by `sum_j A(j) 2^(n (d-1-j))`. Under
/// [`Reduction::Isomorphism`] the visited family is the lexicographically
/// least member of its class and `class_size` is the class size.
pub fn enumerate_cross_oddtowns(
    n: usize,
    d: usize,
    max_size: usize,
    reduction: Reduction,
    mut visit: impl FnMut(&TupleFamily, u64),
) -> Result<OddtownCensus, SearchError> {
    let n_cap = if reduction == Reduction::Isomorphism { 5 } else { 6 };
    if n == 0 || n > n_cap || !(2..=3).contains(&d) {
        return Err(SearchError::InvalidParameters(format!(
            "need 1 <= n <= {n_cap} and 2 <= d <= 3, got n={n}, d={d}"
        )));
    }
    let per_slot = 1u64 << n;
    let code_of = |tuple: &[u64]| tuple.iter().fold(0u64, |acc, &m| acc * per_slot + m);
    let mut index_of = vec![u32::MAX; per_slot.pow(d as u32) as usize];
    let mut candidates = Vec::new();
    for code in 0..per_slot.pow(d as u32) {
        let mut rest = code;
        let mut tuple = vec![0u64; d];
        for slot in (0..d).rev() {
            tuple[slot] = rest % per_slot;
            rest /= per_slot;
        }
        if tuple.iter().fold(u64::MAX, |acc, &m| acc & m).count_ones() % 2 == 1 {
            index_of[code as usize] = candidates.len() as u32;
            candidates.push(tuple);
        }
    }
    // each group element as a map on candidate indices
    let actions: Vec<Vec<u32>> = match reduction {
        Reduction::None => Vec::new(),
        Reduction::Isomorphism => {
            let mut actions = Vec::new();
            for ground in permutations(n) {
                for slots in permutations(d) {
                    actions.push(
                        candidates
                            .iter()
                            .map(|tuple| {
                                let image: Vec<u64> = slots.iter().map(|&j| permute_mask(tuple[j], &ground)).collect();
                                index_of[code_of(&image) as usize]
                            })
                            .collect(),
                    );
                }
            }
            actions
        }
    };
    let mut walk = CensusWalk {
        candidates,
        perms: permutations(d),
        actions,
        max_size,
        chosen: Vec::new(),
        family: TupleFamily::new(n, d, Vec::new()).expect("valid shape"),
        visited: vec![0; max_size + 1],
        families: vec![0; max_size + 1],
        scratch: Vec::new(),
    };
    let all: Vec<usize> = (0..walk.candidates.len()).collect();
    walk.descend(&all, &mut visit);
    let largest = walk.families.iter().rposition(|&c| c > 0).unwrap_or(0);
    Ok(OddtownCensus { n, d, max_size, visited: walk.visited, families: walk.families, largest })
}

struct CensusWalk {
    candidates: Vec<Vec<u64>>,
    perms: Vec<Vec<usize>>,
    actions: Vec<Vec<u32>>,
    max_size: usize,
    chosen: Vec<usize>,
    family: TupleFamily,
    visited: Vec<u64>,
    families: Vec<u64>,
    scratch: Vec<u32>,
}

impl CensusWalk {
    /// `open` holds the candidates, at or after the last chosen one, that
    /// keep the family valid.
    fn descend(&mut self, open: &[usize], visit: &mut impl FnMut(&TupleFamily, u64)) {
        let class = self.class_size();
        let size = self.chosen.len();
        self.visited[size] += 1;
        self.families[size] += class;
        visit(&self.family, class);
        if size == self.max_size {
            return;
        }
        let d = self.perms[0].len();
        for (i, &c) in open.iter().enumerate() {
            self.chosen.push(c);
            if !self.is_canonical() {
                self.chosen.pop();
                continue;
            }
            self.chosen.pop();
            // d-sets made of c, a later candidate and d - 2 earlier members
            let next: Vec<usize> = if size + 2 >= d {
                open[i..].iter().copied().filter(|&e| self.compatible(c, e, d - 2)).collect()
            } else {
                open[i..].to_vec()
            };
            self.chosen.push(c);
            self.family.push(self.candidates[c].clone()).expect("candidate fits");
            self.descend(&next, visit);
            self.family.pop();
            self.chosen.pop();
        }
    }

    /// Whether the sorted chosen list is least among its images.
    fn is_canonical(&mut self) -> bool {
        let chosen = &self.chosen;
        for action in &self.actions {
            self.scratch.clear();
            self.scratch.extend(chosen.iter().map(|&c| action[c]));
            self.scratch.sort_unstable();
            for (image, &original) in self.scratch.iter().zip(chosen) {
                match (*image as usize).cmp(&original) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    /// Number of distinct images of the chosen multiset.
    fn class_size(&self) -> u64 {
        if self.actions.is_empty() {
            return 1;
        }
        let mut images: Vec<Vec<u32>> = self
            .actions
            .iter()
            .map(|action| {
                let mut image: Vec<u32> = self.chosen.iter().map(|&c| action[c]).collect();
                image.sort_unstable();
                image
            })
            .collect();
        images.sort_unstable();
        images.dedup();
        images.len() as u64
    }

    fn compatible(&self, c: usize, e: usize, others: usize) -> bool {
        let mut group = Vec::with_capacity(others + 2);
        self.subsets_even(0, others, &mut group, c, e)
    }

    fn subsets_even(&self, from: usize, left: usize, group: &mut Vec<usize>, c: usize, e: usize) -> bool {
        if left == 0 {
            group.push(c);
            group.push(e);
            let even = self.perms.iter().all(|perm| {
                perm.iter()
                    .enumerate()
                    .fold(u64::MAX, |acc, (slot, &g)| acc & self.candidates[group[g]][slot])
                    .count_ones()
                    % 2
                    == 0
            });
            group.truncate(group.len() - 2);
            return even;
        }
        for p in from..self.chosen.len() {
            group.push(self.chosen[p]);
            let ok = self.subsets_even(p + 1, left - 1, group, c, e);
            group.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// A random configuration of order `k` modulo `p`: each nonempty subset of
/// `[k]` joins `C` with probability 1/2 (redrawn until `C` is nonempty), and
/// `L` is a uniform random subset of the residues of size at most
/// `max_residues`, drawn by shuffling.
pub fn random_configuration(
    k: usize,
    p: u64,
    max_residues: usize,
    rng: &mut Rng,
) -> Result<Configuration, SearchError> {
    if !(1..=8).contains(&k) {
        return Err(SearchError::InvalidParameters(format!("need 1 <= k <= 8, got {k}")));
    }
    let constraints = loop {
        let chosen: Vec<u64> = (1..1u64 << k).filter(|_| rng.coin()).collect();
        if !chosen.is_empty() {
            break chosen;
        }
    };
    let mut residues: Vec<u64> = (0..p).collect();
    shuffle(&mut residues, rng);
    let size = rng.below_usize(max_residues.min(p as usize) + 1);
    residues.truncate(size);
    Ok(Configuration::new(k, constraints, p, residues)?)
}

/// Fisher-Yates from the back.
pub fn shuffle<T>(items: &mut [T], rng: &mut Rng) {
    for i in (1..items.len()).rev() {
        items.swap(i, rng.below_usize(i + 1));
    }
}

/// A maximal `(C, L)`-satisfying family on `[n]` (set semantics): subsets
/// of `[n]` are tried in shuffled order and kept when the family stays
/// satisfying.
pub fn random_satisfying_family(n: usize, cfg: &Configuration, rng: &mut Rng) -> Result<SetFamily, SearchError> {
    if n > 12 {
        return Err(SearchError::InvalidParameters(format!("ground set {n} too large for greedy growth")));
    }
    let mut order: Vec<u64> = (0..1u64 << n).collect();
    shuffle(&mut order, rng);
    let mut members: Vec<u64> = Vec::new();
    for mask in order {
        members.push(mask);
        let family = SetFamily::new(n, members.clone()).expect("masks lie in [n]");
        if config_violation_involving(&family, cfg, Distinctness::Sets, members.len() - 1).is_some() {
            members.pop();
        }
    }
    Ok(SetFamily::new(n, members).expect("masks lie in [n]"))
}

/// A `(z, t)`-colored `r`-uniform hypergraph on `[vertices]`: each color is
/// the first `rt` entries of a shuffled vertex list, cut into `t` edges.
pub fn random_hypergraph(
    vertices: usize,
    r: usize,
    t: usize,
    z: usize,
    rng: &mut Rng,
) -> Result<ColoredHypergraph, SearchError> {
    if r * t > vertices {
        return Err(SearchError::InvalidParameters(format!("rt = {} exceeds N = {vertices}", r * t)));
    }
    let colors = (0..z)
        .map(|_| {
            let mut order: Vec<usize> = (0..vertices).collect();
            shuffle(&mut order, rng);
            order[..r * t].chunks(r).map(|edge| edge.iter().fold(0u64, |acc, &v| acc | 1 << v)).collect()
        })
        .collect();
    Ok(ColoredHypergraph::new(vertices, r, t, colors)?)
}
