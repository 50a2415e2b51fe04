//! Distance bounds for codes with availability, exact minimum distance,
//! the subcode argument behind the general bound, and asymptotic tables.

mod asymptotic;
mod distance;
mod subcode;

use thiserror::Error;

pub use asymptotic::{asymptotic_report, AsymptoticRow, Family, Fraction};
pub use distance::{
    dmin_exact, dmin_generator, DistanceReport, DminMode, DminOptions, Method, Witness, DEFAULT_BUDGET,
};
pub use subcode::{subcode_bound, Codebook, Fallback, SubcodeStep, SubcodeTrace, Termination};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} is too large for exhaustive enumeration")]
    TooLarge { what: String },
    #[error("generator has rank {rank} < {k}")]
    RankDeficient { rank: usize, k: usize },
    #[error("codebook inconsistent with metadata: {0}")]
    Codebook(String),
}

/// ceil(k t / r): fewest local groups that give t groups to each of k symbols.
pub fn bound_lemma1(k: usize, r: usize, t: usize) -> i64 {
    assert!(r > 0, "r must be positive");
    (k * t).div_ceil(r) as i64
}

/// n - k - ceil(k t / r) + t + 1, for codes whose groups each hold one parity.
pub fn bound_thm1(n: usize, k: usize, r: usize, t: usize) -> i64 {
    n as i64 - k as i64 - bound_lemma1(k, r, t) + t as i64 + 1
}

/// n - k - ceil((t(k-1)+1) / (t(r-1)+1)) + 2, for any code with availability.
pub fn bound_thm2(n: usize, k: usize, r: usize, t: usize) -> i64 {
    assert!(r > 0 && k > 0, "r and k must be positive");
    let num = t * (k - 1) + 1;
    let den = t * (r - 1) + 1;
    n as i64 - k as i64 - num.div_ceil(den) as i64 + 2
}

pub fn singleton(n: usize, k: usize) -> i64 {
    n as i64 - k as i64 + 1
}
