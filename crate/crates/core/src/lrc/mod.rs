//! Locally repairable codes with (r, t)-availability.
//!
//! Two constructions are provided. [`construction1`] splits the last t
//! parity columns of a systematic MDS code along the parallel classes of a
//! membership matrix, giving information-symbol availability.
//! [`construction2`] does the same on a systematic Gabidulin code for t - 1
//! classes and then adds one local parity per r-group of systematic and
//! global symbols, giving all-symbol locality. Both come with structured
//! erasure decoders that follow the two-case recovery arguments for their
//! distance guarantees.
//!
//! Symbol indices are 0-based in this API and 1-based in every
//! user-facing format.

mod bundle;
mod codeword;
mod construct;
mod decode;
mod example;
mod repair;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::designs::{DesignError, MembershipMatrix, Violation};
use crate::gf::{GaloisField, GfError};
use crate::linalg::Matrix;
use crate::mds::MdsError;

pub use bundle::CodeBundle;
pub use codeword::{Codeword, CodewordParseError};
pub use construct::{construction1, construction2};
pub use decode::{decode_generic, decode_thm3, decode_thm4, DecodeOutcome, DecodePath};
pub use example::example1_code;
pub use repair::{
    repair_symbol, verify_availability, AvailabilityFailure, AvailabilityReport, GroupCheck, SymbolAvailability,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LrcError {
    #[error("{requirement} (r = {r}, value = {value})")]
    Divisibility { requirement: &'static str, r: usize, value: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("source generator matrix is not systematic")]
    NotSystematic,
    #[error("membership matrix has {found} rows but the code has k = {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("membership matrix is not conformant ({} violations)", violations.len())]
    NonConformant { violations: Vec<Violation> },
    #[error("zero parity entry at row {row}, column {column} of the source generator")]
    ZeroParityEntry { row: usize, column: usize },
    #[error("decoder expects a {expected} code, got {found}")]
    WrongKind { expected: ConstructionKind, found: ConstructionKind },
    #[error("expected {expected} symbols, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("symbol {symbol} has no repair group {group}")]
    NoSuchGroup { symbol: usize, group: usize },
    #[error("group unavailable: member {erased} of the repair group for symbol {symbol} is erased")]
    GroupUnavailable { symbol: usize, erased: usize },
    #[error("repair group {group} does not determine symbol {symbol}")]
    GroupInvalid { symbol: usize, group: usize },
    #[error("unrecoverable: surviving symbols have rank {rank} < {k}")]
    Unrecoverable { rank: usize, k: usize },
    #[error("received word is not consistent with any codeword")]
    Inconsistent,
    #[error("malformed code bundle: {0}")]
    Bundle(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Mds(#[from] MdsError),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Construction1,
    Construction2,
    /// Hand-specified generator and groups.
    Explicit,
}

impl std::fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConstructionKind::Construction1 => "construction1",
            ConstructionKind::Construction2 => "construction2",
            ConstructionKind::Explicit => "explicit",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrcParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub t: usize,
}

/// Partition of the coordinates by role.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexSets {
    pub systematic: Vec<usize>,
    pub global: Vec<usize>,
    /// Split local parities, one list per parallel class.
    pub local1: Vec<Vec<usize>>,
    /// Local parities added for all-symbol locality.
    pub local2: Vec<usize>,
}

/// What the structured decoder of a Gabidulin-based code needs to know.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GabidulinSource {
    pub base_q: u64,
    /// Evaluation points y_1..y_{N+t-1}.
    pub points: Vec<u64>,
    /// Leading K x K block of the Gabidulin generator.
    pub g1: Matrix,
}

/// A linear (n, k, r, t) locally repairable code.
#[derive(Debug, Clone)]
pub struct LrcCode {
    pub(crate) kind: ConstructionKind,
    pub(crate) params: LrcParams,
    pub(crate) field: Arc<GaloisField>,
    pub(crate) generator: Matrix,
    pub(crate) index_sets: IndexSets,
    /// Repair groups per symbol; empty when the symbol has none.
    pub(crate) groups: Vec<Vec<Vec<usize>>>,
    pub(crate) membership: Option<MembershipMatrix>,
    pub(crate) gabidulin: Option<GabidulinSource>,
}

impl LrcCode {
    /// A code from an explicit systematic generator and repair groups.
    pub fn explicit(
        field: Arc<GaloisField>,
        generator: Matrix,
        r: usize,
        t: usize,
        groups: Vec<Vec<Vec<usize>>>,
        membership: Option<MembershipMatrix>,
    ) -> Result<Self, LrcError> {
        let (k, n) = (generator.rows(), generator.cols());
        if k > n {
            return Err(LrcError::InvalidParameter(format!("k = {k} exceeds n = {n}")));
        }
        if !(0..k).all(|i| (0..k).all(|j| generator.get(i, j) == u64::from(i == j))) {
            return Err(LrcError::NotSystematic);
        }
        if groups.len() != n {
            return Err(LrcError::LengthMismatch {
                expected: n,
                found: groups.len(),
            });
        }
        for gs in &groups {
            for g in gs {
                if let Some(&bad) = g.iter().find(|&&s| s >= n) {
                    return Err(LrcError::InvalidParameter(format!("group member {} outside 1..={n}", bad + 1)));
                }
            }
        }
        Ok(LrcCode {
            kind: ConstructionKind::Explicit,
            params: LrcParams { n, k, r, t },
            field,
            generator,
            index_sets: IndexSets {
                systematic: (0..k).collect(),
                global: (k..n).collect(),
                local1: Vec::new(),
                local2: Vec::new(),
            },
            groups,
            membership,
            gabidulin: None,
        })
    }

    pub fn kind(&self) -> ConstructionKind {
        self.kind
    }

    pub fn params(&self) -> LrcParams {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn index_sets(&self) -> &IndexSets {
        &self.index_sets
    }

    /// Repair groups of `symbol`.
    pub fn groups(&self, symbol: usize) -> &[Vec<usize>] {
        &self.groups[symbol]
    }

    pub fn all_groups(&self) -> &[Vec<Vec<usize>>] {
        &self.groups
    }

    pub fn membership(&self) -> Option<&MembershipMatrix> {
        self.membership.as_ref()
    }

    pub fn gabidulin(&self) -> Option<&GabidulinSource> {
        self.gabidulin.as_ref()
    }

    /// Number of systematic plus global symbols (N in both constructions).
    pub fn mds_length(&self) -> usize {
        self.index_sets.systematic.len() + self.index_sets.global.len()
    }

    /// Largest erasure count the structured decoder is guaranteed to handle.
    pub fn erasure_guarantee(&self) -> Option<usize> {
        let LrcParams { k, r, t, .. } = self.params;
        let big_n = self.mds_length();
        match self.kind {
            ConstructionKind::Construction1 => Some(big_n - k + t),
            ConstructionKind::Construction2 => Some(big_n + big_n / r - k - k / r + t),
            ConstructionKind::Explicit => None,
        }
    }

    /// `c = m G`.
    pub fn encode(&self, message: &[u64]) -> Result<Codeword, LrcError> {
        if message.len() != self.k() {
            return Err(LrcError::LengthMismatch {
                expected: self.k(),
                found: message.len(),
            });
        }
        for &m in message {
            self.field.check(m)?;
        }
        Ok(Codeword::from_values(self.generator.left_mul(message, &self.field)))
    }

    /// Every recorded group of a systematic symbol holds exactly one
    /// non-systematic symbol.
    pub fn one_parity_per_group(&self) -> bool {
        let k = self.k();
        self.groups[..k]
            .iter()
            .flatten()
            .all(|g| g.iter().filter(|&&s| s >= k).count() == 1)
    }
}
