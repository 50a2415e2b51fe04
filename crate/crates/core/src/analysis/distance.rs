use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{bound_thm1, bound_thm2, singleton, AnalysisError};
use crate::combinations::{binomial, for_each_combination, par_find_combination};
use crate::designs::lemma1_counts;
use crate::gf::GaloisField;
use crate::linalg::{ColumnRankOracle, Matrix};
use crate::lrc::LrcCode;
use crate::mds::GeneratorMatrix;

/// Default cap on rank checks for the erasure sweep.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// Largest message space enumerated in weight mode.
const MAX_MESSAGES: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DminMode {
    WeightEnum,
    ErasureRank,
    /// Weight enumeration for small message spaces, erasure sweep otherwise.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    WeightEnumeration,
    ErasureRank,
    SampledLowerBound,
}

#[derive(Debug, Clone, Copy)]
pub struct DminOptions {
    pub mode: DminMode,
    pub budget: u64,
    pub parallel: bool,
    pub seed: u64,
}

impl Default for DminOptions {
    fn default() -> Self {
        DminOptions {
            mode: DminMode::Auto,
            budget: DEFAULT_BUDGET,
            parallel: true,
            seed: 0,
        }
    }
}

/// A lightest codeword found, and the erasure set it leaves unresolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub message: Vec<u64>,
    /// 1-based support of `message * G`.
    pub support: Vec<usize>,
    pub weight: usize,
    /// Complement of the support: its columns have rank below k.
    pub non_reconstructing: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub n: usize,
    pub k: usize,
    pub r: Option<usize>,
    pub t: Option<usize>,
    pub d_min: Option<usize>,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub method: Method,
    pub exhaustive: bool,
    /// Rank checks (erasure mode) or messages (weight mode) examined.
    pub checks: u64,
    pub bound_thm1: Option<i64>,
    pub bound_thm2: Option<i64>,
    pub singleton: i64,
    /// Every group of a systematic symbol holds exactly one parity symbol.
    pub thm1_applicable: bool,
    /// Smallest row weight of the membership matrix, when known.
    pub t_prime: Option<usize>,
    pub witness: Option<Witness>,
    pub optimal_thm1: Option<bool>,
    pub optimal_thm2: Option<bool>,
}

impl DistanceReport {
    /// The witness codeword has its claimed weight and its complement is
    /// rank deficient.
    pub fn witness_verifies(&self, g: &Matrix, f: &GaloisField) -> bool {
        let Some(w) = &self.witness else {
            return self.d_min.is_none();
        };
        let c = g.left_mul(&w.message, f);
        let support: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).map(|i| i + 1).collect();
        let rest: Vec<usize> = w.non_reconstructing.iter().map(|i| i - 1).collect();
        support == w.support && support.len() == w.weight && g.select_columns(&rest).rank(f) < g.rows()
    }
}

struct Core {
    d_min: Option<usize>,
    lower: usize,
    upper: usize,
    method: Method,
    exhaustive: bool,
    checks: u64,
    witness: Option<Witness>,
}

fn witness_for(g: &Matrix, f: &GaloisField, message: Vec<u64>) -> Witness {
    let c = g.left_mul(&message, f);
    let support: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).map(|i| i + 1).collect();
    let non_reconstructing = (1..=c.len()).filter(|i| !support.contains(i)).collect();
    Witness {
        weight: support.len(),
        message,
        support,
        non_reconstructing,
    }
}

fn weight(g: &Matrix, f: &GaloisField, m: &[u64]) -> usize {
    g.left_mul(m, f).iter().filter(|&&v| v != 0).count()
}

/// Digits of `idx` in base q, least significant first.
fn message_from_index(mut idx: u64, q: u64, k: usize) -> Vec<u64> {
    let mut m = vec![0u64; k];
    for d in m.iter_mut() {
        *d = idx % q;
        idx /= q;
    }
    m
}

fn weight_enum(g: &Matrix, f: &GaloisField, parallel: bool) -> Result<Core, AnalysisError> {
    let (k, q) = (g.rows(), f.order());
    let total = (q as u128).checked_pow(k as u32).filter(|&v| v <= MAX_MESSAGES as u128);
    let Some(total) = total else {
        return Err(AnalysisError::TooLarge {
            what: format!("message space {q}^{k}"),
        });
    };
    let total = total as u64;
    // Scalar multiples share a weight, so only messages whose last nonzero
    // digit is 1 are needed.
    let eval = |idx: u64| -> Option<(usize, u64)> {
        let m = message_from_index(idx, q, k);
        match m.iter().rev().find(|&&d| d != 0) {
            Some(1) => Some((weight(g, f, &m), idx)),
            _ => None,
        }
    };
    let best = if parallel {
        (1..total).into_par_iter().filter_map(eval).min()
    } else {
        (1..total).filter_map(eval).min()
    };
    let (w, idx) = best.ok_or(AnalysisError::InvalidParameter("code has dimension 0".into()))?;
    Ok(Core {
        d_min: Some(w),
        lower: w,
        upper: w,
        method: Method::WeightEnumeration,
        exhaustive: true,
        checks: total - 1,
        witness: Some(witness_for(g, f, message_from_index(idx, q, k))),
    })
}

/// A light codeword among rows of G, rows of its reduced form, and
/// combinations a * row_i + row_j of the latter.
fn light_codeword(g: &Matrix, f: &GaloisField) -> Vec<u64> {
    let k = g.rows();
    let mut best = (usize::MAX, Vec::new());
    let mut consider = |m: Vec<u64>| {
        let w = weight(g, f, &m);
        if w > 0 && w < best.0 {
            best = (w, m);
        }
    };
    for i in 0..k {
        let mut m = vec![0; k];
        m[i] = 1;
        consider(m);
    }
    // Reduced rows as messages: R = E G for invertible E, so solve for E's rows.
    let mut red = g.clone();
    let pivots = red.rref(f);
    let cols: Vec<usize> = (0..g.cols()).collect();
    let reduced: Vec<Vec<u64>> = (0..pivots.len())
        .filter_map(|i| g.solve_left(&cols, red.row(i), f).ok())
        .collect();
    for m in &reduced {
        consider(m.clone());
    }
    let q = f.order();
    if (q as u128) * (reduced.len() as u128).pow(2) <= 2_000_000 {
        for i in 0..reduced.len() {
            for j in 0..reduced.len() {
                if i == j {
                    continue;
                }
                for a in 1..q {
                    let m: Vec<u64> = reduced[i]
                        .iter()
                        .zip(&reduced[j])
                        .map(|(&x, &y)| f.add(f.mul(a, x), y))
                        .collect();
                    consider(m);
                }
            }
        }
    }
    best.1
}

/// Searches for an e-subset of erasures leaving rank below k.
fn find_failing(oracle: &ColumnRankOracle, f: &GaloisField, n: usize, e: usize, parallel: bool) -> (Option<Vec<usize>>, u64) {
    let k = oracle.full_rank();
    let pred = |c: &[usize]| {
        let mut erased = vec![false; n];
        for &i in c {
            erased[i] = true;
        }
        oracle.rank_without(&erased, f) < k
    };
    if parallel {
        par_find_combination(n, e, pred)
    } else {
        let mut hit = None;
        let mut checked = 0u64;
        for_each_combination(n, e, |c| {
            checked += 1;
            if pred(c) {
                hit = Some(c.to_vec());
                false
            } else {
                true
            }
        });
        (hit, checked)
    }
}

fn kernel_message(g: &Matrix, f: &GaloisField, erased: &[usize]) -> Vec<u64> {
    let kept: Vec<usize> = (0..g.cols()).filter(|i| !erased.contains(i)).collect();
    g.left_kernel_vector(&kept, f).expect("failing erasure set has a kernel vector")
}

fn erasure_rank(g: &Matrix, f: &GaloisField, start_hint: Option<usize>, opts: &DminOptions) -> Result<Core, AnalysisError> {
    let (k, n) = (g.rows(), g.cols());
    let oracle = ColumnRankOracle::new(g, f);
    if oracle.full_rank() < k {
        return Err(AnalysisError::RankDeficient {
            rank: oracle.full_rank(),
            k,
        });
    }
    let mut witness_msg = light_codeword(g, f);
    let mut upper = weight(g, f, &witness_msg);
    let mut lower = 1usize;
    let mut checks = 0u64;
    let mut e = start_hint.map_or(upper, |h| h.min(upper)).saturating_sub(1);

    // Invariants: lower <= d <= upper; the witness has weight `upper`.
    while lower < upper {
        let cost = binomial(n, e);
        if e < lower {
            e = lower;
            continue;
        }
        if (checks as u128) + cost > opts.budget as u128 {
            return Ok(sampled(g, f, &oracle, lower, witness_msg, checks, opts));
        }
        let (hit, used) = find_failing(&oracle, f, n, e, opts.parallel);
        checks += used;
        match hit {
            Some(erased) => {
                witness_msg = kernel_message(g, f, &erased);
                upper = weight(g, f, &witness_msg);
                e = upper - 1;
            }
            None => {
                lower = lower.max(e + 1);
                e += 1;
            }
        }
    }
    Ok(Core {
        d_min: Some(upper),
        lower,
        upper,
        method: Method::ErasureRank,
        exhaustive: true,
        checks,
        witness: Some(witness_for(g, f, witness_msg)),
    })
}

/// Random erasure patterns of size upper - 1 within what is left of the budget.
fn sampled(
    g: &Matrix,
    f: &GaloisField,
    oracle: &ColumnRankOracle,
    lower: usize,
    mut witness_msg: Vec<u64>,
    spent: u64,
    opts: &DminOptions,
) -> Core {
    let (k, n) = (g.rows(), g.cols());
    let mut upper = weight(g, f, &witness_msg);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let samples = opts.budget.saturating_sub(spent).max(1);
    let mut checks = spent;
    for _ in 0..samples {
        if upper <= lower {
            break;
        }
        let pattern: Vec<usize> = sample(&mut rng, n, upper - 1).into_vec();
        checks += 1;
        let mut erased = vec![false; n];
        for &i in &pattern {
            erased[i] = true;
        }
        if oracle.rank_without(&erased, f) < k {
            witness_msg = kernel_message(g, f, &pattern);
            upper = weight(g, f, &witness_msg);
        }
    }
    let exact = lower == upper;
    Core {
        d_min: exact.then_some(upper),
        lower,
        upper,
        method: Method::SampledLowerBound,
        exhaustive: false,
        checks,
        witness: Some(witness_for(g, f, witness_msg)),
    }
}

fn run(g: &Matrix, f: &GaloisField, hint: Option<usize>, opts: &DminOptions) -> Result<Core, AnalysisError> {
    let small = (f.order() as u128)
        .checked_pow(g.rows() as u32)
        .is_some_and(|v| v <= 1 << 16);
    match opts.mode {
        DminMode::WeightEnum => weight_enum(g, f, opts.parallel),
        DminMode::ErasureRank => erasure_rank(g, f, hint, opts),
        DminMode::Auto if small => weight_enum(g, f, opts.parallel),
        DminMode::Auto => erasure_rank(g, f, hint, opts),
    }
}

/// Minimum distance of a locally repairable code with its bound comparison.
pub fn dmin_exact(code: &LrcCode, opts: &DminOptions) -> Result<DistanceReport, AnalysisError> {
    let p = code.params();
    let thm1 = bound_thm1(p.n, p.k, p.r, p.t);
    let thm2 = bound_thm2(p.n, p.k, p.r, p.t);
    let hint = usize::try_from(thm1).ok().filter(|&v| v > 0);
    let core = run(code.generator(), code.field(), hint, opts)?;
    let t_prime = code.membership().map(|m| lemma1_counts(m).min_row_weight);
    Ok(DistanceReport {
        n: p.n,
        k: p.k,
        r: Some(p.r),
        t: Some(p.t),
        optimal_thm1: core.d_min.map(|d| d as i64 == thm1),
        optimal_thm2: core.d_min.map(|d| d as i64 == thm2),
        d_min: core.d_min,
        lower_bound: core.lower,
        upper_bound: core.upper,
        method: core.method,
        exhaustive: core.exhaustive,
        checks: core.checks,
        bound_thm1: Some(thm1),
        bound_thm2: Some(thm2),
        singleton: singleton(p.n, p.k),
        thm1_applicable: code.one_parity_per_group(),
        t_prime,
        witness: core.witness,
    })
}

/// Minimum distance of a plain linear code.
pub fn dmin_generator(g: &GeneratorMatrix, opts: &DminOptions) -> Result<DistanceReport, AnalysisError> {
    let (n, k) = (g.n(), g.k());
    let core = run(g.matrix(), g.field(), Some(n - k + 1), opts)?;
    Ok(DistanceReport {
        n,
        k,
        r: None,
        t: None,
        d_min: core.d_min,
        lower_bound: core.lower,
        upper_bound: core.upper,
        method: core.method,
        exhaustive: core.exhaustive,
        checks: core.checks,
        bound_thm1: None,
        bound_thm2: None,
        singleton: singleton(n, k),
        thm1_applicable: false,
        t_prime: None,
        witness: core.witness,
        optimal_thm1: None,
        optimal_thm2: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrc::example1_code;
    use crate::mds::systematic_rs;

    fn opts(mode: DminMode) -> DminOptions {
        DminOptions {
            mode,
            ..DminOptions::default()
        }
    }

    #[test]
    fn example_distance_both_modes() {
        let code = example1_code();
        for mode in [DminMode::WeightEnum, DminMode::ErasureRank] {
            let rep = dmin_exact(&code, &opts(mode)).unwrap();
            assert_eq!(rep.d_min, Some(3), "{mode:?}");
            assert_eq!(rep.bound_thm1, Some(4));
            assert_eq!(rep.optimal_thm1, Some(false));
            assert!(rep.witness_verifies(code.generator(), code.field()));
            assert_eq!(rep.witness.as_ref().unwrap().non_reconstructing.len(), 4);
        }
    }

    #[test]
    fn rs_is_mds() {
        let f = GaloisField::with_default(5, 1).unwrap().shared();
        let g = systematic_rs(f, 4, 2).unwrap();
        assert_eq!(dmin_generator(&g, &opts(DminMode::ErasureRank)).unwrap().d_min, Some(3));
        assert_eq!(dmin_generator(&g, &opts(DminMode::WeightEnum)).unwrap().d_min, Some(3));
    }

    #[test]
    fn sequential_matches_parallel() {
        let f = GaloisField::with_default(2, 4).unwrap().shared();
        let g = systematic_rs(f, 12, 6).unwrap();
        let seq = DminOptions {
            parallel: false,
            ..opts(DminMode::ErasureRank)
        };
        let a = dmin_generator(&g, &seq).unwrap();
        let b = dmin_generator(&g, &opts(DminMode::ErasureRank)).unwrap();
        assert_eq!((a.d_min, b.d_min), (Some(7), Some(7)));
    }

    #[test]
    fn tiny_budget_falls_back_to_sampling() {
        let f = GaloisField::with_default(2, 5).unwrap().shared();
        let g = systematic_rs(f, 20, 8).unwrap();
        let o = DminOptions {
            budget: 10,
            ..opts(DminMode::ErasureRank)
        };
        let rep = dmin_generator(&g, &o).unwrap();
        assert!(!rep.exhaustive);
        assert_eq!(rep.method, Method::SampledLowerBound);
        assert!(rep.lower_bound <= 13 && rep.upper_bound >= 13);
    }

    #[test]
    fn weight_enum_refuses_huge_space() {
        let f = GaloisField::with_default(2, 8).unwrap().shared();
        let g = systematic_rs(f, 10, 5).unwrap();
        assert!(matches!(
            dmin_generator(&g, &opts(DminMode::WeightEnum)),
            Err(AnalysisError::TooLarge { .. })
        ));
    }
}
