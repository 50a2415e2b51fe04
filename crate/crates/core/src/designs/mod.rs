//! Membership matrices for local groups and the block designs that supply them.
//!
//! A membership matrix has one row per systematic symbol and one column per
//! local group; columns are stored as sorted supports and grouped into
//! parallel classes. Indices are 0-based in memory and 1-based in JSON.

mod affine;
mod assumption;
mod kirkman;
mod zigzag;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use affine::{build_affine_design, build_affine_design_over};
pub use assumption::{check_assumption1, lemma1_counts, Assumption1Report, LemmaCounts, Violation};
pub use kirkman::build_kirkman15;
pub use zigzag::{build_zigzag_membership, ZigzagSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("membership matrix has {found} rows, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("design has {available} parallel classes, {requested} requested")]
    TooFewClasses { requested: usize, available: usize },
    #[error("point {point} outside 1..={k}")]
    PointOutOfRange { point: usize, k: usize },
    #[error("empty block in class {class}")]
    EmptyBlock { class: usize },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("zigzag parameters r={r}, t={t} overflow the supported size")]
    SizeOverflow { r: usize, t: usize },
    #[error("parameters must be positive")]
    NonPositive,
    #[error(transparent)]
    Field(#[from] crate::gf::GfError),
}

/// The k x m 0/1 matrix of local-group memberships, stored by column support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipMatrix {
    k: usize,
    classes: Vec<Vec<Vec<usize>>>,
}

impl MembershipMatrix {
    /// Build from 0-based supports grouped into classes.
    pub fn new(k: usize, classes: Vec<Vec<Vec<usize>>>) -> Result<Self, DesignError> {
        let mut classes = classes;
        for (ci, class) in classes.iter_mut().enumerate() {
            for block in class.iter_mut() {
                if block.is_empty() {
                    return Err(DesignError::EmptyBlock { class: ci + 1 });
                }
                if let Some(&bad) = block.iter().find(|&&p| p >= k) {
                    return Err(DesignError::PointOutOfRange { point: bad + 1, k });
                }
                block.sort_unstable();
            }
        }
        Ok(MembershipMatrix { k, classes })
    }

    /// All columns as a single (not necessarily partitioning) class.
    pub fn from_columns(k: usize, columns: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        Self::new(k, vec![columns])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn classes(&self) -> &[Vec<Vec<usize>>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn columns(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.classes.iter().flatten()
    }

    pub fn column_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Largest column weight.
    pub fn max_column_weight(&self) -> usize {
        self.columns().map(Vec::len).max().unwrap_or(0)
    }

    /// The first `t` classes.
    pub fn restrict(&self, t: usize) -> Result<Self, DesignError> {
        if t > self.classes.len() {
            return Err(DesignError::TooFewClasses {
                requested: t,
                available: self.classes.len(),
            });
        }
        Ok(MembershipMatrix {
            k: self.k,
            classes: self.classes[..t].to_vec(),
        })
    }

    /// Column indices (flat, class-major) containing each row.
    pub fn row_supports(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.k];
        for (c, col) in self.columns().enumerate() {
            for &p in col {
                rows[p].push(c);
            }
        }
        rows
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut out = vec![vec![0u8; self.column_count()]; self.k];
        for (c, col) in self.columns().enumerate() {
            for &p in col {
                out[p][c] = 1;
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct MembershipJson {
    k: usize,
    r: usize,
    t: usize,
    classes: Vec<Vec<Vec<usize>>>,
}

fn to_one_based(classes: &[Vec<Vec<usize>>]) -> Vec<Vec<Vec<usize>>> {
    classes
        .iter()
        .map(|c| c.iter().map(|b| b.iter().map(|p| p + 1).collect()).collect())
        .collect()
}

fn from_one_based(k: usize, classes: Vec<Vec<Vec<usize>>>) -> Result<Vec<Vec<Vec<usize>>>, DesignError> {
    classes
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|b| {
                    b.into_iter()
                        .map(|p| {
                            if p == 0 || p > k {
                                Err(DesignError::PointOutOfRange { point: p, k })
                            } else {
                                Ok(p - 1)
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

impl Serialize for MembershipMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MembershipJson {
            k: self.k,
            r: self.max_column_weight(),
            t: self.class_count(),
            classes: to_one_based(&self.classes),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MembershipMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = MembershipJson::deserialize(d)?;
        let classes = from_one_based(raw.k, raw.classes).map_err(serde::de::Error::custom)?;
        MembershipMatrix::new(raw.k, classes).map_err(serde::de::Error::custom)
    }
}

/// A resolvable 2-(k, b, c, r, lambda) design: blocks of size r over k points,
/// split into c parallel classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvableDesign {
    k: usize,
    r: usize,
    lambda: usize,
    classes: Vec<Vec<Vec<usize>>>,
}

/// Structural verification of a [`ResolvableDesign`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub block_size_ok: bool,
    pub resolvable: bool,
    /// Smallest and largest number of blocks any point pair shares.
    pub pair_min: usize,
    pub pair_max: usize,
    pub lambda_ok: bool,
}

impl DesignReport {
    pub fn is_valid(&self) -> bool {
        self.block_size_ok && self.resolvable && self.lambda_ok
    }
}

impl ResolvableDesign {
    pub fn new(k: usize, r: usize, lambda: usize, classes: Vec<Vec<Vec<usize>>>) -> Result<Self, DesignError> {
        // Reuse the membership validation for range and ordering.
        let m = MembershipMatrix::new(k, classes)?;
        Ok(ResolvableDesign {
            k,
            r,
            lambda,
            classes: m.classes,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Number of blocks.
    pub fn b(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Number of parallel classes.
    pub fn c(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<Vec<usize>>] {
        &self.classes
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.classes.iter().flatten()
    }

    /// Number of blocks containing each unordered point pair, row-major upper triangle.
    pub fn pair_counts(&self) -> Vec<usize> {
        pair_counts(self.k, self.blocks())
    }

    pub fn verify(&self) -> DesignReport {
        let block_size_ok = self.blocks().all(|b| b.len() == self.r);
        let resolvable = self.classes.iter().all(|c| is_partition(self.k, c));
        let counts = self.pair_counts();
        let pair_min = counts.iter().copied().min().unwrap_or(0);
        let pair_max = counts.iter().copied().max().unwrap_or(0);
        DesignReport {
            block_size_ok,
            resolvable,
            pair_min,
            pair_max,
            lambda_ok: pair_min == self.lambda && pair_max == self.lambda,
        }
    }

    pub fn as_membership(&self) -> MembershipMatrix {
        MembershipMatrix {
            k: self.k,
            classes: self.classes.clone(),
        }
    }
}

/// Membership matrix of the first `t` parallel classes of a design.
pub fn design_to_membership(design: &ResolvableDesign, t: usize) -> Result<MembershipMatrix, DesignError> {
    design.as_membership().restrict(t)
}

pub(crate) fn pair_index(k: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    a * k - a * (a + 1) / 2 + (b - a - 1)
}

pub(crate) fn pair_counts<'a>(k: usize, blocks: impl Iterator<Item = &'a Vec<usize>>) -> Vec<usize> {
    let mut counts = vec![0usize; k * k.saturating_sub(1) / 2];
    for b in blocks {
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                counts[pair_index(k, x, y)] += 1;
            }
        }
    }
    counts
}

pub(crate) fn is_partition(k: usize, class: &[Vec<usize>]) -> bool {
    let mut seen = BTreeSet::new();
    for b in class {
        for &p in b {
            if !seen.insert(p) {
                return false;
            }
        }
    }
    seen.len() == k
}

#[derive(Serialize, Deserialize)]
struct DesignJson {
    k: usize,
    r: usize,
    t: usize,
    classes: Vec<Vec<Vec<usize>>>,
    lambda: usize,
    b: usize,
}

impl Serialize for ResolvableDesign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DesignJson {
            k: self.k,
            r: self.r,
            t: self.c(),
            classes: to_one_based(&self.classes),
            lambda: self.lambda,
            b: self.b(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ResolvableDesign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = DesignJson::deserialize(d)?;
        let classes = from_one_based(raw.k, raw.classes).map_err(serde::de::Error::custom)?;
        let design =
            ResolvableDesign::new(raw.k, raw.r, raw.lambda, classes).map_err(serde::de::Error::custom)?;
        if design.b() != raw.b {
            return Err(serde::de::Error::custom(format!(
                "declared b = {} but {} blocks listed",
                raw.b,
                design.b()
            )));
        }
        Ok(design)
    }
}
