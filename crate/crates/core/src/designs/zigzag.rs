use super::{DesignError, MembershipMatrix};

/// Largest k the zigzag builder accepts.
const MAX_POINTS: usize = 1 << 22;

/// Parameters of the zigzag membership matrix, k = r * t^r.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZigzagSpec {
    pub r: usize,
    pub t: usize,
}

impl ZigzagSpec {
    pub fn new(r: usize, t: usize) -> Result<Self, DesignError> {
        if r == 0 || t == 0 {
            return Err(DesignError::NonPositive);
        }
        let spec = ZigzagSpec { r, t };
        spec.checked_k().ok_or(DesignError::SizeOverflow { r, t })?;
        Ok(spec)
    }

    /// t^r, the number of points in each group X_j and blocks per class.
    pub fn blocks_per_class(&self) -> usize {
        self.t.pow(self.r as u32)
    }

    pub fn k(&self) -> usize {
        self.r * self.blocks_per_class()
    }

    fn checked_k(&self) -> Option<usize> {
        let per = self.t.checked_pow(u32::try_from(self.r).ok()?)?;
        let k = per.checked_mul(self.r)?;
        (k <= MAX_POINTS).then_some(k)
    }
}

/// Blocks `Z^l_s = { x_{i,j} : i + (l-1) e_j = s }` with `i, s` read as vectors
/// in Z_t^r (componentwise mod t), one parallel class per `l`.
///
/// `x_{i,j}` is point `(j-1) t^r + i` (0-based), `i` written base t with the
/// least significant digit as coordinate 1. Blocks in a class are ordered by
/// `s`, members by point index.
pub fn build_zigzag_membership(spec: ZigzagSpec) -> Result<MembershipMatrix, DesignError> {
    let ZigzagSpec { r, t } = ZigzagSpec::new(spec.r, spec.t)?;
    let per = spec.blocks_per_class();
    let k = spec.k();
    let digit_weight: Vec<usize> = (0..r).map(|d| t.pow(d as u32)).collect();
    let mut classes = Vec::with_capacity(t);
    for l in 0..t {
        let mut class = Vec::with_capacity(per);
        for s in 0..per {
            let block: Vec<usize> = (0..r)
                .map(|j| {
                    // i = s - l*e_j: only digit j changes.
                    let dj = (s / digit_weight[j]) % t;
                    let shifted = (dj + t - l % t) % t;
                    let i = s - dj * digit_weight[j] + shifted * digit_weight[j];
                    j * per + i
                })
                .collect();
            class.push(block);
        }
        classes.push(class);
    }
    MembershipMatrix::new(k, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{is_partition, pair_counts};

    #[test]
    fn r1_t2_singletons() {
        let m = build_zigzag_membership(ZigzagSpec::new(1, 2).unwrap()).unwrap();
        assert_eq!(m.k(), 2);
        assert_eq!(m.column_count(), 4);
        assert!(m.columns().all(|c| c.len() == 1));
        assert!(m.classes().iter().all(|c| is_partition(2, c)));
    }

    #[test]
    fn r2_t2_pairs() {
        let m = build_zigzag_membership(ZigzagSpec::new(2, 2).unwrap()).unwrap();
        assert_eq!(m.k(), 8);
        assert_eq!(m.column_count(), 8);
        let rows = m.row_supports();
        assert!(rows.iter().all(|r| r.len() == 2));
        let mut pairs = 0;
        for a in 0..8 {
            for b in a + 1..8 {
                let shared = rows[a].iter().filter(|c| rows[b].contains(c)).count();
                assert!(shared <= 1);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 28);
    }

    #[test]
    fn block_sizes_and_counts() {
        for (r, t) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)] {
            let spec = ZigzagSpec::new(r, t).unwrap();
            let m = build_zigzag_membership(spec).unwrap();
            assert_eq!(m.k(), r * t.pow(r as u32));
            assert_eq!(m.column_count(), t.pow(r as u32 + 1));
            assert!(m.columns().all(|c| c.len() == r));
            // one point from each X_j per block
            for c in m.columns() {
                let groups: Vec<usize> = c.iter().map(|p| p / spec.blocks_per_class()).collect();
                assert_eq!(groups, (0..r).collect::<Vec<_>>());
            }
            assert!(pair_counts(m.k(), m.columns()).iter().all(|&c| c <= 1));
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(ZigzagSpec::new(0, 2), Err(DesignError::NonPositive));
        assert!(matches!(ZigzagSpec::new(30, 3), Err(DesignError::SizeOverflow { .. })));
    }
}
