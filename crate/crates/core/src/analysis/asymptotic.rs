use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::{bound_thm1, singleton, AnalysisError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Affine-plane membership: k = q^2, r = q.
    Affine,
    /// Zigzag membership: k = r t^r.
    Zigzag,
}

/// Unreduced `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Compares values by cross-multiplication.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}


impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AsymptoticRow {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub t: usize,
    pub rate: Fraction,
    pub bound_thm1: i64,
    pub mds_distance: i64,
    /// bound_thm1 / (n - k + 1).
    pub ratio: Fraction,
}

/// Rate-1/2 instances of a family over `params` (q for affine, r for
/// zigzag) at fixed t, plus whether the ratio strictly increases.
pub fn asymptotic_report(family: Family, t: usize, params: &[usize]) -> Result<(Vec<AsymptoticRow>, bool), AnalysisError> {
    if t == 0 {
        return Err(AnalysisError::InvalidParameter("t must be positive".into()));
    }
    let mut rows = Vec::with_capacity(params.len());
    for &p in params {
        let (k, r) = match family {
            Family::Affine => {
                if p < 2 || t > p + 1 {
                    return Err(AnalysisError::InvalidParameter(format!("affine needs q >= 2 and t <= q + 1 (q = {p})")));
                }
                (p * p, p)
            }
            Family::Zigzag => {
                if p < 1 || t > p {
                    return Err(AnalysisError::InvalidParameter(format!(
                        "rate 1/2 zigzag needs 1 <= t <= r (r = {p}, t = {t})"
                    )));
                }
                let k = (t as u32)
                    .checked_pow(p as u32)
                    .and_then(|v| (v as usize).checked_mul(p))
                    .filter(|&k| k <= 1 << 30)
                    .ok_or_else(|| AnalysisError::TooLarge {
                        what: format!("zigzag k for r = {p}, t = {t}"),
                    })?;
                (k, p)
            }
        };
        let n = 2 * k;
        let thm1 = bound_thm1(n, k, r, t);
        let mds = singleton(n, k);
        rows.push(AsymptoticRow {
            family,
            n,
            k,
            r,
            t,
            rate: Fraction {
                num: k as i64,
                den: n as i64,
            },
            bound_thm1: thm1,
            mds_distance: mds,
            ratio: Fraction { num: thm1, den: mds },
        });
    }
    let increasing = rows.windows(2).all(|w| w[0].ratio.cmp_value(&w[1].ratio) == Ordering::Less);
    Ok((rows, increasing))
}
