use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::AnalysisError;
use crate::lrc::LrcCode;

const MAX_CODEWORDS: u128 = 1 << 20;

/// An explicit code: every codeword listed, symbols in `0..q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    q: u64,
    k: usize,
    n: usize,
    words: Vec<Vec<u64>>,
}

impl Codebook {
    pub fn new(q: u64, k: usize, words: Vec<Vec<u64>>) -> Result<Self, AnalysisError> {
        if q < 2 {
            return Err(AnalysisError::InvalidParameter("alphabet needs at least 2 symbols".into()));
        }
        let n = words.first().map_or(0, Vec::len);
        if words.iter().any(|w| w.len() != n) {
            return Err(AnalysisError::Codebook("codewords have different lengths".into()));
        }
        if words.iter().flatten().any(|&s| s >= q) {
            return Err(AnalysisError::Codebook(format!("symbol outside 0..{q}")));
        }
        if k > n {
            return Err(AnalysisError::Codebook(format!("k = {k} exceeds length {n}")));
        }
        Ok(Codebook { q, k, n, words })
    }

    /// Every codeword of a linear code, messages in base-q counting order.
    pub fn from_code(code: &LrcCode) -> Result<Self, AnalysisError> {
        let (q, k) = (code.field().order(), code.k());
        let total = (q as u128).checked_pow(k as u32).filter(|&v| v <= MAX_CODEWORDS);
        let Some(total) = total else {
            return Err(AnalysisError::TooLarge {
                what: format!("codebook of {q}^{k} words"),
            });
        };
        let words = (0..total as u64)
            .map(|mut idx| {
                let m: Vec<u64> = (0..k)
                    .map(|_| {
                        let d = idx % q;
                        idx /= q;
                        d
                    })
                    .collect();
                code.encode(&m).expect("valid message").values().expect("no erasures")
            })
            .collect();
        Codebook::new(q, k, words)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vec<u64>] {
        &self.words
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// The starting code already had at most q words.
    Initial,
    /// 1 < |C_j| <= q after fixing a full union of groups.
    Threshold,
    /// Fixing the full union left one word; a maximal subset was fixed instead.
    Fallback,
}

/// One pass of the loop. Coordinates are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubcodeStep {
    pub j: usize,
    pub i: usize,
    pub s: Vec<usize>,
    pub a: Vec<usize>,
    pub a_size: usize,
    pub sigma: Vec<u64>,
    pub size_before: usize,
    pub size_after: usize,
    /// |C_j| >= |C_{j-1}| / q^(a_j - (t-1)).
    pub shrink_ok: bool,
    /// a_j <= t r.
    pub a_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fallback {
    pub s_tilde: Vec<usize>,
    pub gamma: Vec<u64>,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubcodeTrace {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub t: usize,
    pub q: u64,
    pub steps: Vec<SubcodeStep>,
    pub ell: usize,
    pub termination: Termination,
    pub fallback: Option<Fallback>,
    /// Coordinates fixed in the final subcode (1-based).
    pub fixed: Vec<usize>,
    pub subcode_size: usize,
    pub punctured_length: usize,
    /// n - |R_ell| + 1 - ceil(log_q |C'|).
    pub implied_bound: i64,
    /// ceil((k-1) / (t r - t + 1)).
    pub ell_lower: usize,
    pub ell_ok: bool,
    /// R_ell is the disjoint union of the A_j and i_j.
    pub disjoint_union_ok: bool,
}

impl SubcodeTrace {
    pub fn invariants_hold(&self) -> bool {
        self.ell_ok && self.disjoint_union_ok && self.steps.iter().all(|s| s.shrink_ok && s.a_ok)
    }
}

fn ceil_log(q: u64, x: usize) -> u32 {
    let mut e = 0;
    let mut p: u128 = 1;
    while p < x as u128 {
        p *= q as u128;
        e += 1;
    }
    e
}

fn project(w: &[u64], coords: &[usize]) -> Vec<u64> {
    coords.iter().map(|&c| w[c]).collect()
}

/// The most frequent projection onto `coords`; ties go to the smallest.
fn most_frequent(words: &[&Vec<u64>], coords: &[usize]) -> (Vec<u64>, usize) {
    let mut counts: HashMap<Vec<u64>, usize> = HashMap::new();
    for w in words {
        *counts.entry(project(w, coords)).or_default() += 1;
    }
    counts
        .into_iter()
        .max_by(|(pa, ca), (pb, cb)| ca.cmp(cb).then(pb.cmp(pa)))
        .unwrap_or_default()
}

fn validate(cb: &Codebook, groups: &[Vec<Vec<usize>>], r: usize, t: usize) -> Result<(), AnalysisError> {
    let (q, k, n) = (cb.q, cb.k, cb.n);
    if (q as u128).checked_pow(k as u32) != Some(cb.len() as u128) {
        return Err(AnalysisError::Codebook(format!("{} words, expected {q}^{k}", cb.len())));
    }
    let prefixes: HashSet<&[u64]> = cb.words.iter().map(|w| &w[..k]).collect();
    if prefixes.len() != cb.len() {
        return Err(AnalysisError::Codebook("not systematic in the first k coordinates".into()));
    }
    if groups.len() < k {
        return Err(AnalysisError::Codebook(format!("groups given for {} of {k} symbols", groups.len())));
    }
    for (i, gs) in groups[..k].iter().enumerate() {
        if gs.len() < t {
            return Err(AnalysisError::Codebook(format!("symbol {} has {} groups, need {t}", i + 1, gs.len())));
        }
        let mut seen = BTreeSet::new();
        for g in &gs[..t] {
            if g.len() > r || g.contains(&i) || g.iter().any(|&c| c >= n) {
                return Err(AnalysisError::Codebook(format!("bad group {:?} for symbol {}", g, i + 1)));
            }
            if !g.iter().all(|&c| seen.insert(c)) {
                return Err(AnalysisError::Codebook(format!("groups of symbol {} overlap", i + 1)));
            }
            let mut map: HashMap<Vec<u64>, u64> = HashMap::new();
            for w in &cb.words {
                if *map.entry(project(w, g)).or_insert(w[i]) != w[i] {
                    return Err(AnalysisError::Codebook(format!(
                        "group {:?} does not determine symbol {}",
                        g.iter().map(|c| c + 1).collect::<Vec<_>>(),
                        i + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Runs the fixing loop that underlies the general distance bound: pick an
/// unfixed systematic coordinate, restrict to the most frequent pattern on
/// the union of its t groups, and stop once at most q words remain.
///
/// `groups[i]` lists the repair groups of coordinate i (0-based); the first
/// t of each systematic coordinate are used.
pub fn subcode_bound(cb: &Codebook, groups: &[Vec<Vec<usize>>], r: usize, t: usize) -> Result<SubcodeTrace, AnalysisError> {
    if r == 0 || t == 0 {
        return Err(AnalysisError::InvalidParameter("r and t must be positive".into()));
    }
    validate(cb, groups, r, t)?;
    let (q, k, n) = (cb.q, cb.k, cb.n);
    let mut cur: Vec<&Vec<u64>> = cb.words.iter().collect();
    let mut fixed: BTreeSet<usize> = BTreeSet::new();
    let mut steps = Vec::new();
    let mut termination = Termination::Initial;
    let mut fallback = None;
    let mut union_ok = true;

    while cur.len() as u64 > q {
        let j = steps.len() + 1;
        // An unfixed coordinate on which the current words still differ.
        let i = (0..k)
            .find(|&i| !fixed.contains(&i) && cur.iter().any(|w| w[i] != cur[0][i]))
            .expect("two distinct systematic words differ somewhere");
        let s: Vec<usize> = groups[i][..t].iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let a: Vec<usize> = s.iter().copied().filter(|c| !fixed.contains(c)).collect();
        let (sigma, _) = most_frequent(&cur, &s);
        let next: Vec<&Vec<u64>> = cur.iter().copied().filter(|w| project(w, &s) == sigma).collect();

        let before = cur.len() as u128;
        let after = next.len() as u128;
        let shrink_ok = match (a.len() as i64 - (t as i64 - 1)).cmp(&0) {
            std::cmp::Ordering::Less => after >= before * (q as u128).pow((t - 1 - a.len()) as u32),
            _ => after * (q as u128).pow((a.len() + 1 - t) as u32) >= before,
        };
        steps.push(SubcodeStep {
            j,
            i: i + 1,
            s: s.iter().map(|c| c + 1).collect(),
            a: a.iter().map(|c| c + 1).collect(),
            a_size: a.len(),
            sigma,
            size_before: cur.len(),
            size_after: next.len(),
            shrink_ok,
            a_ok: a.len() <= t * r,
        });

        if next.len() == 1 {
            // Largest subset of S_j, grown greedily, that keeps two words.
            let mut s_tilde: Vec<usize> = s.iter().copied().filter(|c| fixed.contains(c)).collect();
            for &c in &a {
                let mut trial = s_tilde.clone();
                trial.push(c);
                if most_frequent(&cur, &trial).1 > 1 {
                    s_tilde = trial;
                }
            }
            let (gamma, _) = most_frequent(&cur, &s_tilde);
            cur.retain(|w| project(w, &s_tilde) == gamma);
            let size_before = fixed.len();
            let fresh = s_tilde.iter().filter(|c| !fixed.contains(c)).count();
            fixed.extend(s_tilde.iter().copied());
            union_ok &= fixed.len() == size_before + fresh;
            s_tilde.sort_unstable();
            fallback = Some(Fallback {
                s_tilde: s_tilde.iter().map(|c| c + 1).collect(),
                gamma,
                size: cur.len(),
            });
            termination = Termination::Fallback;
            break;
        }
        let size_before = fixed.len();
        fixed.extend(a.iter().copied());
        union_ok &= !fixed.contains(&i);
        fixed.insert(i);
        union_ok &= fixed.len() == size_before + a.len() + 1;
        cur = next;
        if cur.len() as u64 <= q {
            termination = Termination::Threshold;
        }
    }

    let ell = steps.len();
    let ell_lower = (k.saturating_sub(1)).div_ceil(t * r - t + 1);
    let punctured_length = n - fixed.len();
    Ok(SubcodeTrace {
        n,
        k,
        r,
        t,
        q,
        ell,
        termination,
        fallback,
        fixed: fixed.iter().map(|c| c + 1).collect(),
        subcode_size: cur.len(),
        punctured_length,
        implied_bound: punctured_length as i64 + 1 - ceil_log(q, cur.len()) as i64,
        ell_lower,
        ell_ok: ell >= ell_lower,
        disjoint_union_ok: union_ok,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lrc::example1_code;

    #[test]
    fn example_trace_by_hand() {
        let code = example1_code();
        let cb = Codebook::from_code(&code).unwrap();
        assert_eq!(cb.len(), 8);
        let tr = subcode_bound(&cb, code.all_groups(), 2, 2).unwrap();
        assert_eq!(tr.ell, 1);
        let s = &tr.steps[0];
        assert_eq!((s.i, s.s.clone(), s.a_size, s.size_after), (1, vec![2, 4, 5], 3, 2));
        assert_eq!(tr.termination, Termination::Threshold);
        assert_eq!(tr.fixed, vec![1, 2, 4, 5]);
        assert_eq!(tr.implied_bound, 3);
        assert!(tr.invariants_hold());
    }

    #[test]
    fn replication_needs_no_iteration() {
        // k = 1, each symbol copied three times over GF(3)
        let words = (0..3).map(|v| vec![v; 4]).collect();
        let cb = Codebook::new(3, 1, words).unwrap();
        let groups = vec![vec![vec![1], vec![2], vec![3]]];
        let tr = subcode_bound(&cb, &groups, 1, 3).unwrap();
        assert_eq!((tr.ell, tr.termination), (0, Termination::Initial));
        assert_eq!(tr.implied_bound, 4);
        assert!(tr.invariants_hold());
    }

    #[test]
    fn bad_group_rejected() {
        let code = example1_code();
        let cb = Codebook::from_code(&code).unwrap();
        let mut groups = code.all_groups().to_vec();
        groups[0][0] = vec![5];
        assert!(matches!(
            subcode_bound(&cb, &groups, 2, 2),
            Err(AnalysisError::Codebook(_))
        ));
        let short = Codebook::new(2, 3, cb.words()[..4].to_vec()).unwrap();
        assert!(subcode_bound(&short, code.all_groups(), 2, 2).is_err());
    }

    #[test]
    fn ceil_log_values() {
        assert_eq!(ceil_log(2, 1), 0);
        assert_eq!(ceil_log(2, 2), 1);
        assert_eq!(ceil_log(2, 3), 2);
        assert_eq!(ceil_log(3, 9), 2);
    }
}
