use serde::Serialize;

use super::{Codeword, LrcCode, LrcError};

/// Rebuild symbol `symbol` from repair group `group` (both 0-based).
pub fn repair_symbol(code: &LrcCode, word: &Codeword, symbol: usize, group: usize) -> Result<u64, LrcError> {
    if word.len() != code.n() {
        return Err(LrcError::LengthMismatch {
            expected: code.n(),
            found: word.len(),
        });
    }
    if symbol >= code.n() {
        return Err(LrcError::InvalidParameter(format!("symbol {} outside 1..={}", symbol + 1, code.n())));
    }
    let members = code
        .groups(symbol)
        .get(group)
        .ok_or(LrcError::NoSuchGroup { symbol, group })?;
    let values: Vec<u64> = members
        .iter()
        .map(|&m| word.get(m).ok_or(LrcError::GroupUnavailable { symbol, erased: m }))
        .collect::<Result<_, _>>()?;
    let f = code.field();
    let g = code.generator();
    let lambda = g
        .express_in_columns(members, &g.column(symbol), f)
        .ok_or(LrcError::GroupInvalid { symbol, group })?;
    Ok(lambda
        .iter()
        .zip(&values)
        .fold(0, |acc, (&l, &v)| f.add(acc, f.mul(l, v))))
}

/// One recorded group, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupCheck {
    pub members: Vec<usize>,
    pub size: usize,
    /// The symbol's column lies in the span of the members' columns.
    pub recovers: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolAvailability {
    pub symbol: usize,
    pub groups: Vec<GroupCheck>,
    pub pairwise_disjoint: bool,
    /// Largest set of valid, mutually disjoint groups found greedily.
    pub disjoint_valid: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AvailabilityFailure {
    GroupDoesNotRecover { symbol: usize, group: usize },
    GroupTooLarge { symbol: usize, group: usize, size: usize, r: usize },
    GroupContainsSymbol { symbol: usize, group: usize },
    GroupsOverlap { symbol: usize, groups: (usize, usize) },
    TooFewGroups { symbol: usize, found: usize, required: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AvailabilityReport {
    pub r: usize,
    pub t: usize,
    /// Minimum over systematic symbols of `disjoint_valid`.
    pub t_achieved: usize,
    pub max_group_size: usize,
    /// Every symbol has at least one valid group.
    pub all_symbol: bool,
    pub symbols: Vec<SymbolAvailability>,
    pub failures: Vec<AvailabilityFailure>,
}

impl AvailabilityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check every recorded group by a span test and the size and disjointness
/// requirements on the systematic symbols.
pub fn verify_availability(code: &LrcCode) -> AvailabilityReport {
    let f = code.field();
    let g = code.generator();
    let (k, r, t) = (code.k(), code.params.r, code.params.t);
    let mut failures = Vec::new();
    let mut symbols = Vec::with_capacity(code.n());
    let mut max_group_size = 0;
    let mut all_symbol = true;
    let mut t_achieved = usize::MAX;

    for s in 0..code.n() {
        let mut checks = Vec::new();
        let mut valid: Vec<&Vec<usize>> = Vec::new();
        for (gi, members) in code.groups(s).iter().enumerate() {
            let recovers = if members.contains(&s) {
                failures.push(AvailabilityFailure::GroupContainsSymbol {
                    symbol: s + 1,
                    group: gi + 1,
                });
                false
            } else {
                g.express_in_columns(members, &g.column(s), f).is_some()
            };
            if !recovers {
                failures.push(AvailabilityFailure::GroupDoesNotRecover {
                    symbol: s + 1,
                    group: gi + 1,
                });
            }
            if members.len() > r {
                failures.push(AvailabilityFailure::GroupTooLarge {
                    symbol: s + 1,
                    group: gi + 1,
                    size: members.len(),
                    r,
                });
            }
            max_group_size = max_group_size.max(members.len());
            if recovers && members.len() <= r {
                valid.push(members);
            }
            checks.push(GroupCheck {
                members: members.iter().map(|m| m + 1).collect(),
                size: members.len(),
                recovers,
            });
        }
        let groups = code.groups(s);
        let mut pairwise_disjoint = true;
        for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                if groups[a].iter().any(|x| groups[b].contains(x)) {
                    pairwise_disjoint = false;
                    if s < k {
                        failures.push(AvailabilityFailure::GroupsOverlap {
                            symbol: s + 1,
                            groups: (a + 1, b + 1),
                        });
                    }
                }
            }
        }
        let mut used: Vec<usize> = Vec::new();
        let mut disjoint_valid = 0;
        for v in &valid {
            if v.iter().all(|x| !used.contains(x)) {
                used.extend(v.iter().copied());
                disjoint_valid += 1;
            }
        }
        all_symbol &= disjoint_valid > 0;
        if s < k {
            t_achieved = t_achieved.min(disjoint_valid);
            if disjoint_valid < t {
                failures.push(AvailabilityFailure::TooFewGroups {
                    symbol: s + 1,
                    found: disjoint_valid,
                    required: t,
                });
            }
        }
        symbols.push(SymbolAvailability {
            symbol: s + 1,
            groups: checks,
            pairwise_disjoint,
            disjoint_valid,
        });
    }

    AvailabilityReport {
        r,
        t,
        t_achieved: if k == 0 { 0 } else { t_achieved },
        max_group_size,
        all_symbol,
        symbols,
        failures,
    }
}
