//! JSON file formats for tensors, families, configurations and hypergraphs.
//!
//! Every parser takes untrusted text: input size is capped, unknown fields
//! are rejected, and the decoded value goes through the same validation as
//! the library constructors. Field elements are plain integers (a residue
//! for prime fields, a polynomial bit mask for binary fields). Sets are given
//! either as a bit mask or as a list of 0-based element indices; writers
//! always emit index lists.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::combin::{mask_elements, mask_from_elements};
use crate::field::FieldDescriptor;
use crate::fw::{BadboxFamily, BadboxSample, Configuration, FwError, ProductSet};
use crate::rainbow::{ColoredHypergraph, RainbowError, SetPairSystem};
use crate::setfam::{SetFamily, SetFamilyError, TupleFamily};
use crate::tensor::{checked_volume, Tensor, TensorError};

/// Largest accepted document, in bytes.
pub const MAX_DOCUMENT_BYTES: usize = 64 << 20;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("document of {0} bytes exceeds the {MAX_DOCUMENT_BYTES}-byte limit")]
    TooLarge(usize),
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    SetFamily(#[from] SetFamilyError),
    #[error(transparent)]
    Fw(#[from] FwError),
    #[error(transparent)]
    Rainbow(#[from] RainbowError),
}

fn invalid(message: impl Into<String>) -> FormatError {
    FormatError::Invalid(message.into())
}

fn decode<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, FormatError> {
    if text.len() > MAX_DOCUMENT_BYTES {
        return Err(FormatError::TooLarge(text.len()));
    }
    Ok(serde_json::from_str(text)?)
}

/// Compact JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string(value).expect("documents serialize");
    out.push('\n');
    out
}

/// Indented JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents serialize");
    out.push('\n');
    out
}

/// A set written as a bit mask or as an index list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetSpec {
    Mask(u64),
    Indices(Vec<usize>),
}

impl SetSpec {
    pub fn from_mask(mask: u64) -> Self {
        SetSpec::Indices(mask_elements(mask).collect())
    }

    /// The mask over `[n]`; rejects repeated or out-of-range indices.
    pub fn to_mask(&self, n: usize) -> Result<u64, FormatError> {
        match self {
            SetSpec::Mask(mask) => {
                if n < 64 && mask >> n != 0 {
                    return Err(invalid(format!("mask {mask:#x} is not a subset of [{n}]")));
                }
                Ok(*mask)
            }
            SetSpec::Indices(indices) => {
                let mask = mask_from_elements(indices, n)
                    .ok_or_else(|| invalid(format!("index list {indices:?} is not a subset of [{n}]")))?;
                if mask.count_ones() as usize != indices.len() {
                    return Err(invalid(format!("index list {indices:?} repeats an element")));
                }
                Ok(mask)
            }
        }
    }
}

/// Provenance attached to a tensor document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorMeta {
    pub construction: String,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub params: Map<String, Value>,
}

/// `{"dims":[..],"field":{..},"entries":[..]}` or the same with
/// `"sparse":[[[i_0,..],value],..]` in place of `"entries"`; optional
/// `"meta"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDocument {
    pub dims: Vec<usize>,
    pub field: FieldDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sparse: Option<Vec<(Vec<usize>, u64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<TensorMeta>,
}

impl TensorDocument {
    pub fn dense(tensor: &Tensor, meta: Option<TensorMeta>) -> Self {
        Self {
            dims: tensor.dims().to_vec(),
            field: tensor.field(),
            entries: Some(tensor.entries().to_vec()),
            sparse: None,
            meta,
        }
    }

    /// Nonzero entries only, in row-major order.
    pub fn sparse(tensor: &Tensor, meta: Option<TensorMeta>) -> Self {
        let pairs = tensor
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(linear, &v)| (tensor.multi_index(linear), v))
            .collect();
        Self { dims: tensor.dims().to_vec(), field: tensor.field(), entries: None, sparse: Some(pairs), meta }
    }

    pub fn to_tensor(&self) -> Result<Tensor, FormatError> {
        match (&self.entries, &self.sparse) {
            (Some(entries), None) => Ok(Tensor::new(self.dims.clone(), self.field, entries.clone())?),
            (None, Some(pairs)) => {
                let volume =
                    checked_volume(&self.dims).ok_or_else(|| TensorError::TooLarge { dims: self.dims.clone() })?;
                if pairs.len() > volume {
                    return Err(invalid(format!("{} sparse entries for {volume} positions", pairs.len())));
                }
                let mut tensor = Tensor::zeros(self.dims.clone(), self.field)?;
                let mut seen = vec![false; volume];
                for (index, value) in pairs {
                    if index.len() != self.dims.len() {
                        return Err(invalid(format!("sparse index {index:?} has the wrong number of axes")));
                    }
                    if let Some(axis) = index.iter().zip(&self.dims).position(|(&i, &d)| i >= d) {
                        return Err(
                            TensorError::IndexOutOfRange { axis, index: index[axis], size: self.dims[axis] }.into()
                        );
                    }
                    if !self.field.contains(*value) {
                        return Err(invalid(format!("entry {value} at {index:?} is not an element of {}", self.field)));
                    }
                    let linear = tensor.linear_index(index);
                    if std::mem::replace(&mut seen[linear], true) {
                        return Err(invalid(format!("sparse index {index:?} given twice")));
                    }
                    tensor.set(index, *value);
                }
                Ok(tensor)
            }
            _ => Err(invalid("exactly one of \"entries\" and \"sparse\" is required")),
        }
    }
}

pub fn parse_tensor_document(text: &str) -> Result<TensorDocument, FormatError> {
    let doc: TensorDocument = decode(text)?;
    doc.to_tensor()?;
    Ok(doc)
}

pub fn parse_tensor(text: &str) -> Result<Tensor, FormatError> {
    decode::<TensorDocument>(text)?.to_tensor()
}

/// `{"n":N,"d":D,"members":[[slot,..],..]}`; `"d"` may be omitted when
/// `members` is nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleFamilyDocument {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub members: Vec<Vec<SetSpec>>,
}

impl TupleFamilyDocument {
    pub fn from_family(family: &TupleFamily) -> Self {
        Self {
            n: family.n(),
            d: Some(family.d()),
            members: family
                .members()
                .iter()
                .map(|tuple| tuple.iter().map(|&m| SetSpec::from_mask(m)).collect())
                .collect(),
        }
    }

    pub fn to_family(&self) -> Result<TupleFamily, FormatError> {
        let d = match (self.d, self.members.first()) {
            (Some(d), _) => d,
            (None, Some(first)) => first.len(),
            (None, None) => return Err(invalid("\"d\" is required for an empty family")),
        };
        check_ground(self.n)?;
        let members = self
            .members
            .iter()
            .map(|tuple| tuple.iter().map(|s| s.to_mask(self.n)).collect())
            .collect::<Result<_, _>>()?;
        Ok(TupleFamily::new(self.n, d, members)?)
    }
}

fn check_ground(n: usize) -> Result<(), FormatError> {
    if n > 64 {
        return Err(SetFamilyError::GroundSetTooLarge(n).into());
    }
    Ok(())
}

pub fn parse_tuple_family(text: &str) -> Result<TupleFamily, FormatError> {
    decode::<TupleFamilyDocument>(text)?.to_family()
}

/// `{"n":N,"members":[set,..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFamilyDocument {
    pub n: usize,
    pub members: Vec<SetSpec>,
}

impl SetFamilyDocument {
    pub fn from_family(family: &SetFamily) -> Self {
        Self { n: family.n(), members: family.members().iter().map(|&m| SetSpec::from_mask(m)).collect() }
    }

    pub fn to_family(&self) -> Result<SetFamily, FormatError> {
        check_ground(self.n)?;
        let members = self.members.iter().map(|s| s.to_mask(self.n)).collect::<Result<_, _>>()?;
        Ok(SetFamily::new(self.n, members)?)
    }
}

pub fn parse_set_family(text: &str) -> Result<SetFamily, FormatError> {
    decode::<SetFamilyDocument>(text)?.to_family()
}

/// `{"k":K,"p":P,"L":[..],"C":[set,..]}` with constraint sets over `[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationDocument {
    pub k: usize,
    pub p: u64,
    #[serde(rename = "L")]
    pub residues: Vec<u64>,
    #[serde(rename = "C")]
    pub constraints: Vec<SetSpec>,
}

impl ConfigurationDocument {
    pub fn from_configuration(cfg: &Configuration) -> Self {
        Self {
            k: cfg.k(),
            p: cfg.p(),
            residues: cfg.residues().to_vec(),
            constraints: cfg.constraints().iter().map(|&m| SetSpec::from_mask(m)).collect(),
        }
    }

    pub fn to_configuration(&self) -> Result<Configuration, FormatError> {
        if self.k == 0 || self.k > crate::fw::MAX_ORDER {
            return Err(FwError::OrderOutOfRange(self.k).into());
        }
        let constraints = self.constraints.iter().map(|s| s.to_mask(self.k)).collect::<Result<_, _>>()?;
        Ok(Configuration::new(self.k, constraints, self.p, self.residues.clone())?)
    }
}

pub fn parse_configuration(text: &str) -> Result<Configuration, FormatError> {
    decode::<ConfigurationDocument>(text)?.to_configuration()
}

/// `{"N":N,"r":R,"t":T,"colors":[[edge,..],..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphDocument {
    #[serde(rename = "N")]
    pub vertices: usize,
    pub r: usize,
    pub t: usize,
    pub colors: Vec<Vec<SetSpec>>,
}

impl HypergraphDocument {
    pub fn from_hypergraph(h: &ColoredHypergraph) -> Self {
        Self {
            vertices: h.vertices(),
            r: h.r(),
            t: h.t(),
            colors: h.colors().iter().map(|edges| edges.iter().map(|&m| SetSpec::from_mask(m)).collect()).collect(),
        }
    }

    pub fn to_hypergraph(&self) -> Result<ColoredHypergraph, FormatError> {
        if self.vertices == 0 || self.vertices > crate::rainbow::MAX_VERTICES {
            return Err(RainbowError::VertexCount(self.vertices).into());
        }
        let colors = self
            .colors
            .iter()
            .map(|edges| edges.iter().map(|s| s.to_mask(self.vertices)).collect())
            .collect::<Result<_, _>>()?;
        Ok(ColoredHypergraph::new(self.vertices, self.r, self.t, colors)?)
    }
}

pub fn parse_hypergraph(text: &str) -> Result<ColoredHypergraph, FormatError> {
    decode::<HypergraphDocument>(text)?.to_hypergraph()
}

/// `{"n":N,"sizes":[r_0,..],"members":[[slot,..],..]}`; `"sizes"` may be
/// omitted when `members` is nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetPairDocument {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    pub members: Vec<Vec<SetSpec>>,
}

impl SetPairDocument {
    pub fn from_system(s: &SetPairSystem) -> Self {
        Self {
            n: s.n(),
            sizes: Some(s.sizes().to_vec()),
            members: s.members().iter().map(|tuple| tuple.iter().map(|&m| SetSpec::from_mask(m)).collect()).collect(),
        }
    }

    pub fn to_system(&self) -> Result<SetPairSystem, FormatError> {
        if self.n == 0 || self.n > crate::rainbow::MAX_VERTICES {
            return Err(RainbowError::VertexCount(self.n).into());
        }
        let members: Vec<Vec<u64>> = self
            .members
            .iter()
            .map(|tuple| tuple.iter().map(|s| s.to_mask(self.n)).collect())
            .collect::<Result<_, _>>()?;
        let sizes = match (&self.sizes, members.first()) {
            (Some(sizes), _) => sizes.clone(),
            (None, Some(first)) => first.iter().map(|m| m.count_ones() as usize).collect(),
            (None, None) => return Err(invalid("\"sizes\" is required for an empty system")),
        };
        Ok(SetPairSystem::new(self.n, sizes, members)?)
    }
}

pub fn parse_set_pair_system(text: &str) -> Result<SetPairSystem, FormatError> {
    decode::<SetPairDocument>(text)?.to_system()
}

/// `{"t":T,"s":S,"members":[[factor,..],..]}` plus, for sampler output, the
/// certificate fields `"k"`, `"attempts"` and `"seed"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BadboxDocument {
    pub t: usize,
    pub s: usize,
    pub members: Vec<Vec<SetSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attempts: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl BadboxDocument {
    pub fn from_family(family: &BadboxFamily) -> Self {
        Self {
            t: family.t(),
            s: family.s(),
            members: family
                .members()
                .iter()
                .map(|p| p.factors.iter().map(|&m| SetSpec::from_mask(m)).collect())
                .collect(),
            k: None,
            attempts: None,
            seed: None,
        }
    }

    pub fn from_sample(sample: &BadboxSample) -> Self {
        Self {
            k: Some(sample.k),
            attempts: Some(sample.attempts),
            seed: Some(sample.seed),
            ..Self::from_family(&sample.family)
        }
    }

    pub fn to_family(&self) -> Result<BadboxFamily, FormatError> {
        if self.t == 0 || self.t > 63 {
            return Err(FwError::BadboxParameters(format!("t must be in 1..=63, got {}", self.t)).into());
        }
        let members = self
            .members
            .iter()
            .map(|factors| {
                let factors = factors.iter().map(|f| f.to_mask(self.t)).collect::<Result<_, _>>()?;
                Ok(ProductSet { factors })
            })
            .collect::<Result<_, FormatError>>()?;
        Ok(BadboxFamily::new(self.t, self.s, members)?)
    }
}

pub fn parse_badbox(text: &str) -> Result<(BadboxFamily, Option<usize>), FormatError> {
    let doc: BadboxDocument = decode(text)?;
    Ok((doc.to_family()?, doc.k))
}
