use serde::Serialize;

use super::{Codeword, ConstructionKind, LrcCode, LrcError};
use crate::gf::GaloisField;
use crate::linalg::{Matrix, SolveFailure};
use crate::mds::{decode_erasures, MdsError};

/// Which recovery route produced the message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "path", rename_all = "snake_case")]
pub enum DecodePath {
    /// All systematic symbols survived.
    Systematic,
    /// The systematic and global symbols (plus, for all-symbol codes, the
    /// added local parities) were enough on their own.
    Case1,
    /// Parity columns of the underlying MDS code were rebuilt from intact
    /// split classes (1-based).
    Case2 { resynthesized: Vec<usize> },
    /// Linear solve over every surviving column.
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeOutcome {
    pub message: Vec<u64>,
    #[serde(flatten)]
    pub path: DecodePath,
    pub erasures: usize,
    /// Erasure count is within the construction's distance guarantee.
    pub within_guarantee: bool,
}

fn prepare(code: &LrcCode, word: &Codeword, expected: ConstructionKind) -> Result<(), LrcError> {
    if code.kind != expected {
        return Err(LrcError::WrongKind {
            expected,
            found: code.kind,
        });
    }
    if word.len() != code.n() {
        return Err(LrcError::LengthMismatch {
            expected: code.n(),
            found: word.len(),
        });
    }
    for v in word.symbols().iter().flatten() {
        code.field.check(*v)?;
    }
    Ok(())
}

fn systematic_message(code: &LrcCode, word: &Codeword) -> Option<Vec<u64>> {
    (0..code.k()).map(|i| word.get(i)).collect()
}

fn map_mds(e: MdsError) -> LrcError {
    match e {
        MdsError::Unrecoverable { rank, k } => LrcError::Unrecoverable { rank, k },
        MdsError::Inconsistent => LrcError::Inconsistent,
        other => LrcError::Mds(other),
    }
}

/// Solve `m G = word` on the surviving coordinates of any code.
pub fn decode_generic(code: &LrcCode, word: &Codeword) -> Result<Vec<u64>, LrcError> {
    decode_erasures(&code.generator, &code.field, word.symbols()).map_err(map_mds)
}

fn outcome(code: &LrcCode, word: &Codeword, message: Vec<u64>, path: DecodePath) -> DecodeOutcome {
    let erasures = word.erasure_count();
    DecodeOutcome {
        message,
        path,
        erasures,
        within_guarantee: code.erasure_guarantee().is_some_and(|g| erasures <= g),
    }
}

fn generic_outcome(code: &LrcCode, word: &Codeword) -> Result<DecodeOutcome, LrcError> {
    let message = decode_generic(code, word)?;
    Ok(outcome(code, word, message, DecodePath::Generic))
}

fn sum_symbols(f: &GaloisField, word: &Codeword, ids: &[usize]) -> Option<u64> {
    ids.iter().try_fold(0, |acc, &i| word.get(i).map(|v| f.add(acc, v)))
}

/// Structured decoder for codes from [`construction1`](super::construction1).
///
/// If at most N - k of the systematic and global symbols are lost they
/// determine the message directly. Otherwise each split class with no
/// erasures is summed back into the parity column it came from, and the
/// punctured MDS code is solved with those extra columns. Up to
/// N - k + t erasures are always handled; beyond that, or if the
/// structured route fails, a generic solve is attempted.
pub fn decode_thm3(code: &LrcCode, word: &Codeword) -> Result<DecodeOutcome, LrcError> {
    prepare(code, word, ConstructionKind::Construction1)?;
    if let Some(m) = systematic_message(code, word) {
        return Ok(outcome(code, word, m, DecodePath::Systematic));
    }
    let f = &code.field;
    let (k, big_n) = (code.k(), code.mds_length());
    let g = &code.generator;

    let mut cols: Vec<Vec<u64>> = Vec::new();
    let mut vals = Vec::new();
    for j in (0..big_n).filter(|&j| word.get(j).is_some()) {
        cols.push(g.column(j));
        vals.push(word.get(j).unwrap());
    }
    let path = if big_n - cols.len() <= big_n - k {
        DecodePath::Case1
    } else {
        let mut resynthesized = Vec::new();
        for (i, ids) in code.index_sets.local1.iter().enumerate() {
            if let Some(v) = sum_symbols(f, word, ids) {
                let col = ids.iter().fold(vec![0u64; k], |mut acc, &c| {
                    for (row, a) in acc.iter_mut().enumerate() {
                        *a = f.add(*a, g.get(row, c));
                    }
                    acc
                });
                cols.push(col);
                vals.push(v);
                resynthesized.push(i + 1);
            }
        }
        DecodePath::Case2 { resynthesized }
    };
    let sys = Matrix::from_columns(k, &cols);
    let all: Vec<usize> = (0..cols.len()).collect();
    match sys.solve_left(&all, &vals, f) {
        Ok(m) => Ok(outcome(code, word, m, path)),
        Err(SolveFailure::Inconsistent) => Err(LrcError::Inconsistent),
        Err(SolveFailure::RankDeficient { .. }) => generic_outcome(code, word),
    }
}

/// Row-echelon accumulator that accepts a vector only if it is independent
/// of those already accepted.
struct IncrementalBasis<'a> {
    f: &'a GaloisField,
    rows: Vec<(usize, Vec<u64>)>,
}

impl<'a> IncrementalBasis<'a> {
    fn new(f: &'a GaloisField) -> Self {
        IncrementalBasis { f, rows: Vec::new() }
    }

    fn insert(&mut self, v: &[u64]) -> bool {
        let f = self.f;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p] != 0 {
                let c = v[*p];
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]).expect("nonzero");
        for a in v.iter_mut() {
            *a = f.mul(*a, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p] != 0 {
                let c = row[p];
                for (a, &b) in row.iter_mut().zip(&v) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    fn len(&self) -> usize {
        self.rows.len()
    }
}

/// A known evaluation f(sum_j coef_j y_j) = value.
struct Evaluation {
    coef: Vec<u64>,
    value: u64,
}

/// Structured decoder for codes from [`construction2`](super::construction2).
///
/// Each surviving symbol, each surviving added parity, and each intact split
/// class gives the value of the message's linearized polynomial at a known
/// combination of the evaluation points. Any k of these with independent
/// points determine the polynomial through a Moore system. Up to
/// N + N/r - k - k/r + t erasures are always handled.
pub fn decode_thm4(code: &LrcCode, word: &Codeword) -> Result<DecodeOutcome, LrcError> {
    prepare(code, word, ConstructionKind::Construction2)?;
    if let Some(m) = systematic_message(code, word) {
        return Ok(outcome(code, word, m, DecodePath::Systematic));
    }
    let gab = code
        .gabidulin
        .as_ref()
        .ok_or_else(|| LrcError::Bundle("all-symbol code without Gabidulin data".into()))?;
    let f = &code.field;
    let g = &code.generator;
    let (k, big_n) = (code.k(), code.mds_length());
    let width = gab.points.len();
    let unit = |j: usize| {
        let mut e = vec![0u64; width];
        e[j] = 1;
        e
    };

    let mut first = Vec::new();
    for j in (0..big_n).filter(|&j| word.get(j).is_some()) {
        first.push(Evaluation {
            coef: unit(j),
            value: word.get(j).unwrap(),
        });
    }
    for &p in &code.index_sets.local2 {
        let Some(value) = word.get(p) else { continue };
        let members = &code.groups[p][0];
        let lambda = g
            .express_in_columns(members, &g.column(p), f)
            .ok_or(LrcError::GroupInvalid { symbol: p, group: 0 })?;
        let mut coef = vec![0u64; width];
        for (&m, &l) in members.iter().zip(&lambda) {
            coef[m] = f.add(coef[m], l);
        }
        first.push(Evaluation { coef, value });
    }

    let mut basis = IncrementalBasis::new(f);
    let mut chosen: Vec<&Evaluation> = Vec::new();
    for e in &first {
        if chosen.len() == k {
            break;
        }
        if basis.insert(&e.coef) {
            chosen.push(e);
        }
    }
    let mut extra = Vec::new();
    let mut resynthesized = Vec::new();
    if basis.len() < k {
        for (i, ids) in code.index_sets.local1.iter().enumerate() {
            if let Some(value) = sum_symbols(f, word, ids) {
                extra.push((i + 1, Evaluation { coef: unit(big_n + i), value }));
            }
        }
    }
    let path = if extra.is_empty() {
        DecodePath::Case1
    } else {
        for (class, e) in &extra {
            if chosen.len() == k {
                break;
            }
            if basis.insert(&e.coef) {
                chosen.push(e);
                resynthesized.push(*class);
            }
        }
        DecodePath::Case2 { resynthesized }
    };
    if chosen.len() < k {
        return generic_outcome(code, word);
    }

    // Moore system: sum_i mt_i z_a^(q^i) = value_a.
    let mut moore = Matrix::zeros(k, k);
    let mut values = Vec::with_capacity(k);
    for (a, e) in chosen.iter().enumerate() {
        let z = e
            .coef
            .iter()
            .zip(&gab.points)
            .fold(0, |acc, (&c, &y)| f.add(acc, f.mul(c, y)));
        let mut v = z;
        for i in 0..k {
            moore.set(i, a, v);
            v = f.pow(v, gab.base_q);
        }
        values.push(e.value);
    }
    let all: Vec<usize> = (0..k).collect();
    let mt = match moore.solve_left(&all, &values, f) {
        Ok(mt) => mt,
        Err(_) => return generic_outcome(code, word),
    };
    let message = gab.g1.left_mul(&mt, f);
    Ok(outcome(code, word, message, path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{build_affine_design, build_kirkman15, design_to_membership};
    use crate::gf::GaloisField;
    use crate::lrc::{construction1, construction2};
    use crate::mds::{gabidulin, systematic_rs};

    fn kirkman_code() -> LrcCode {
        let rm = design_to_membership(&build_kirkman15(), 2).unwrap();
        let f = GaloisField::with_default(2, 5).unwrap().shared();
        construction1(&systematic_rs(f, 22, 15).unwrap(), &rm, 3, 2).unwrap()
    }

    fn allsym_code() -> LrcCode {
        let rm = design_to_membership(&build_affine_design(2).unwrap(), 2).unwrap();
        let f = GaloisField::with_default(2, 7).unwrap().shared();
        construction2(&gabidulin(f, 2, 7, 4).unwrap(), &rm, 2, 2).unwrap()
    }

    #[test]
    fn thm3_case2_uses_intact_classes() {
        let code = kirkman_code();
        let msg: Vec<u64> = (1..=15).collect();
        let cw = code.encode(&msg).unwrap();
        // 7 losses among systematic/global symbols: more than N - k = 5
        let lost = cw.with_erasures(&[0, 1, 2, 3, 4, 5, 15]);
        let out = decode_thm3(&code, &lost).unwrap();
        assert_eq!(out.message, msg);
        assert_eq!(out.path, DecodePath::Case2 { resynthesized: vec![1, 2] });
        assert!(out.within_guarantee);
    }

    #[test]
    fn thm3_case1() {
        let code = kirkman_code();
        let msg: Vec<u64> = (0..15).map(|i| (i * 7) % 32).collect();
        let cw = code.encode(&msg).unwrap();
        let out = decode_thm3(&code, &cw.with_erasures(&[3, 20, 21, 22])).unwrap();
        assert_eq!((out.message, out.path), (msg, DecodePath::Case1));
    }

    #[test]
    fn thm4_recovers_from_five_losses() {
        let code = allsym_code();
        let msg = vec![5, 77, 0, 127];
        let cw = code.encode(&msg).unwrap();
        let out = decode_thm4(&code, &cw.with_erasures(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(out.message, msg);
        assert!(out.within_guarantee);
        let out = decode_thm4(&code, &cw.with_erasures(&[0, 1, 4, 5, 9])).unwrap();
        assert_eq!(out.message, msg);
    }

    #[test]
    fn wrong_kind_rejected() {
        let code = allsym_code();
        let cw = code.encode(&[1, 2, 3, 4]).unwrap();
        assert!(matches!(decode_thm3(&code, &cw), Err(LrcError::WrongKind { .. })));
    }

    #[test]
    fn inconsistent_word_detected() {
        let code = kirkman_code();
        let mut s: Vec<Option<u64>> = code.encode(&[1; 15]).unwrap().symbols().to_vec();
        s[0] = None;
        s[17] = Some(s[17].unwrap() ^ 1);
        assert_eq!(
            decode_thm3(&code, &Codeword::from_symbols(s)),
            Err(LrcError::Inconsistent)
        );
    }
}
