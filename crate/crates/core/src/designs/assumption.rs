use std::collections::BTreeSet;

use serde::Serialize;

use super::{DesignError, MembershipMatrix};

/// One reason a membership matrix fails the structural requirements of the
/// constructions. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Divisibility { k: usize, r: usize },
    TooFewClasses { found: usize, required: usize },
    ColumnCount { found: usize, expected: usize },
    ColumnWeight { class: usize, column: usize, weight: usize, expected: usize },
    NotPartition { class: usize, missing: Vec<usize>, repeated: Vec<usize> },
    RowIntersection { rows: (usize, usize), shared_columns: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assumption1Report {
    pub k: usize,
    pub r: usize,
    pub t: usize,
    pub conformant: bool,
    pub violations: Vec<Violation>,
}

/// Check that the first `t` classes of `rm` have columns of weight exactly
/// `r`, that each class partitions [k], that there are t*k/r such columns,
/// and that any two rows share at most one column.
pub fn check_assumption1(
    rm: &MembershipMatrix,
    k: usize,
    r: usize,
    t: usize,
) -> Result<Assumption1Report, DesignError> {
    if rm.k() != k {
        return Err(DesignError::DimensionMismatch {
            expected: k,
            found: rm.k(),
        });
    }
    if r == 0 || t == 0 {
        return Err(DesignError::NonPositive);
    }
    let mut violations = Vec::new();
    if !k.is_multiple_of(r) {
        violations.push(Violation::Divisibility { k, r });
    }
    if rm.class_count() < t {
        violations.push(Violation::TooFewClasses {
            found: rm.class_count(),
            required: t,
        });
    }
    let used = &rm.classes()[..t.min(rm.class_count())];
    let found = used.iter().map(Vec::len).sum::<usize>();
    let expected = t * k / r;
    if !k.is_multiple_of(r) || found != expected {
        violations.push(Violation::ColumnCount { found, expected });
    }

    let mut flat = 0;
    for (ci, class) in used.iter().enumerate() {
        let mut seen = vec![0usize; k];
        for col in class {
            flat += 1;
            if col.len() != r {
                violations.push(Violation::ColumnWeight {
                    class: ci + 1,
                    column: flat,
                    weight: col.len(),
                    expected: r,
                });
            }
            for &p in col {
                seen[p] += 1;
            }
        }
        let missing: Vec<usize> = (0..k).filter(|&p| seen[p] == 0).map(|p| p + 1).collect();
        let repeated: Vec<usize> = (0..k).filter(|&p| seen[p] > 1).map(|p| p + 1).collect();
        if !missing.is_empty() || !repeated.is_empty() {
            violations.push(Violation::NotPartition {
                class: ci + 1,
                missing,
                repeated,
            });
        }
    }

    // Row supports over the used columns only.
    let mut rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    for (c, col) in used.iter().flatten().enumerate() {
        for &p in col {
            rows[p].insert(c + 1);
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            let shared: Vec<usize> = rows[a].intersection(&rows[b]).copied().collect();
            if shared.len() > 1 {
                violations.push(Violation::RowIntersection {
                    rows: (a + 1, b + 1),
                    shared_columns: shared,
                });
            }
        }
    }

    Ok(Assumption1Report {
        k,
        r,
        t,
        conformant: violations.is_empty(),
        violations,
    })
}

/// Counts of ones in a membership matrix, for the column-count lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaCounts {
    pub columns: usize,
    pub ones: usize,
    /// Largest column weight (r).
    pub max_column_weight: usize,
    /// Smallest row weight (t).
    pub min_row_weight: usize,
    /// ceil(k t / r) with the values above.
    pub lower_bound: usize,
}

impl LemmaCounts {
    pub fn holds(&self) -> bool {
        self.columns >= self.lower_bound
    }
}

pub fn lemma1_counts(rm: &MembershipMatrix) -> LemmaCounts {
    let rows = rm.row_supports();
    let ones = rows.iter().map(Vec::len).sum();
    let min_row_weight = rows.iter().map(Vec::len).min().unwrap_or(0);
    let max_column_weight = rm.max_column_weight();
    let lower_bound = if max_column_weight == 0 {
        0
    } else {
        (rm.k() * min_row_weight).div_ceil(max_column_weight)
    };
    LemmaCounts {
        columns: rm.column_count(),
        ones,
        max_column_weight,
        min_row_weight,
        lower_bound,
    }
}
