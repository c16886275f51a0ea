//! Serializable views of core results. Big integers are decimal strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sigperm_core::gamma::{CheckStatus, GammaReport};
use sigperm_core::{BlockSet, ClassSignature, SignedShape, SummandDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeDto {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
}

impl From<&SignedShape> for ShapeDto {
    fn from(s: &SignedShape) -> Self {
        ShapeDto { lambda: s.lambda().to_vec(), mu: s.mu().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureDto {
    pub a0: usize,
    /// exponent j -> number of orbits of size p^j
    pub counts: BTreeMap<u32, usize>,
}

impl From<&ClassSignature> for SignatureDto {
    fn from(s: &ClassSignature) -> Self {
        SignatureDto { a0: s.a0(), counts: s.counts().clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassValueDto {
    pub signature: SignatureDto,
    pub value: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatusDto {
    Pass,
    Fail,
    Skipped,
}

impl From<CheckStatus> for StatusDto {
    fn from(s: CheckStatus) -> Self {
        match s {
            CheckStatus::Pass => StatusDto::Pass,
            CheckStatus::Fail => StatusDto::Fail,
            CheckStatus::Skipped => StatusDto::Skipped,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaReportDto {
    pub shape: ShapeDto,
    pub p: u64,
    pub gamma: String,
    pub per_class: Vec<ClassValueDto>,
    pub witness: SignatureDto,
    pub checks: BTreeMap<String, StatusDto>,
}

impl From<&GammaReport> for GammaReportDto {
    fn from(r: &GammaReport) -> Self {
        GammaReportDto {
            shape: (&r.shape).into(),
            p: r.p,
            gamma: r.gamma.to_string(),
            per_class: r
                .per_class
                .iter()
                .map(|(sig, v)| ClassValueDto { signature: sig.into(), value: v.to_string() })
                .collect(),
            witness: (&r.witness).into(),
            checks: r.checks.iter().map(|(k, c)| (k.clone(), c.status.into())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRowDto {
    pub subset: String,
    /// bitmask of the subset, bit i-1 for block i
    pub bits: String,
    pub size: usize,
    pub dimension: String,
    pub multiplicity: String,
    pub projective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDto {
    pub shape: ShapeDto,
    pub p: u64,
    pub k: usize,
    pub method: String,
    pub total_dim: String,
    pub non_faithful_dim: String,
    pub core_dim: String,
    pub classes: Vec<ClassRowDto>,
}

/// Subsets listed in full, zero multiplicities included, up to this many blocks.
pub const LIST_ALL_SUBSETS_UP_TO: usize = 10;

/// Rows of the decomposition table in block-set order.
pub fn class_rows(d: &SummandDecomposition) -> Vec<ClassRowDto> {
    let full = BlockSet::full(d.k());
    let sets: Vec<BlockSet> = if d.k() <= LIST_ALL_SUBSETS_UP_TO {
        let mut all: Vec<BlockSet> = full.subsets().collect();
        all.sort();
        all
    } else {
        d.classes().map(|(s, _)| s).collect()
    };
    sets.into_iter()
        .map(|s| ClassRowDto {
            subset: s.to_string(),
            bits: s.bits().to_string(),
            size: s.len(),
            dimension: d.summand_dim(s).to_string(),
            multiplicity: d.multiplicity(s).to_string(),
            projective: s == full,
        })
        .collect()
}

impl DecompositionDto {
    pub fn new(shape: &SignedShape, method: &str, d: &SummandDecomposition) -> Self {
        DecompositionDto {
            shape: shape.into(),
            p: d.p(),
            k: d.k(),
            method: method.to_string(),
            total_dim: d.total_dim().to_string(),
            non_faithful_dim: d.non_faithful_dim().to_string(),
            core_dim: d.core_dim().to_string(),
            classes: class_rows(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRowDto {
    pub n: usize,
    pub core_dim: String,
    /// `c_n / c_{n-1}` rounded, absent for n = 1 or a zero core
    pub ratio: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDto {
    pub shape: ShapeDto,
    pub p: u64,
    pub gamma: String,
    pub rows: Vec<SeriesRowDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfoDto {
    pub signature: SignatureDto,
    pub orbit_sizes: Vec<usize>,
    pub rank: usize,
    pub value: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesDto {
    pub n: usize,
    pub p: u64,
    pub shape: Option<ShapeDto>,
    pub classes: Vec<ClassInfoDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDto {
    pub passed: bool,
    pub reports: Vec<GammaReportDto>,
}
