use std::sync::Arc;

use super::{ConstructionKind, GabidulinSource, IndexSets, LrcCode, LrcError, LrcParams};
use crate::designs::{check_assumption1, MembershipMatrix};
use crate::gf::GaloisField;
use crate::linalg::Matrix;
use crate::mds::{GabidulinCode, GeneratorMatrix};

fn check_membership(rm: &MembershipMatrix, k: usize, r: usize, t: usize) -> Result<(), LrcError> {
    if rm.k() != k {
        return Err(LrcError::DimensionMismatch {
            expected: k,
            found: rm.k(),
        });
    }
    let report = check_assumption1(rm, k, r, t)?;
    if !report.conformant {
        return Err(LrcError::NonConformant {
            violations: report.violations,
        });
    }
    Ok(())
}

/// Output of splitting parity columns along parallel classes.
struct Split {
    generator: Matrix,
    local1: Vec<Vec<usize>>,
}

/// Keeps columns `0..big_n` of `ghat` and replaces column `big_n + i` by one
/// column per block of class i, supported on that block.
fn split_columns(
    ghat: &Matrix,
    big_n: usize,
    classes: &[Vec<Vec<usize>>],
    f: &GaloisField,
) -> Result<Split, LrcError> {
    let k = ghat.rows();
    let mut columns: Vec<Vec<u64>> = (0..big_n).map(|j| ghat.column(j)).collect();
    let mut local1 = Vec::with_capacity(classes.len());
    for (i, class) in classes.iter().enumerate() {
        let src = big_n + i;
        let mut ids = Vec::with_capacity(class.len());
        for block in class {
            let mut col = vec![0u64; k];
            for &row in block {
                let v = ghat.get(row, src);
                if v == 0 {
                    return Err(LrcError::ZeroParityEntry { row, column: src });
                }
                col[row] = v;
            }
            ids.push(columns.len());
            columns.push(col);
        }
        local1.push(ids);
    }
    debug_assert!(columns.iter().flatten().all(|&v| f.contains(v)));
    Ok(Split {
        generator: Matrix::from_columns(k, &columns),
        local1,
    })
}

/// Groups of each systematic symbol: for each class, its block without the
/// symbol plus that block's local parity. Every local parity is repaired by
/// the symbols it covers.
fn class_groups(n: usize, k: usize, classes: &[Vec<Vec<usize>>], local1: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut groups = vec![Vec::new(); n];
    for (class, ids) in classes.iter().zip(local1) {
        for (block, &parity) in class.iter().zip(ids) {
            for &s in block {
                let mut g: Vec<usize> = block.iter().copied().filter(|&x| x != s).collect();
                g.push(parity);
                groups[s].push(g);
            }
            groups[parity].push(block.clone());
        }
    }
    debug_assert!(groups[..k].iter().all(|g| g.len() == classes.len()));
    groups
}

/// Information-symbol availability from a systematic [N + t, k] MDS code.
///
/// The last t columns of `ghat` are split along the first t classes of `rm`,
/// giving a code of length N + t k / r.
pub fn construction1(ghat: &GeneratorMatrix, rm: &MembershipMatrix, r: usize, t: usize) -> Result<LrcCode, LrcError> {
    if t == 0 || r == 0 {
        return Err(LrcError::InvalidParameter("r and t must be at least 1".into()));
    }
    let k = ghat.k();
    if !k.is_multiple_of(r) {
        return Err(LrcError::Divisibility {
            requirement: "r must divide k",
            r,
            value: k,
        });
    }
    if !ghat.is_systematic() {
        return Err(LrcError::NotSystematic);
    }
    if ghat.n() < k + t {
        return Err(LrcError::InvalidParameter(format!(
            "source length {} is shorter than k + t = {}",
            ghat.n(),
            k + t
        )));
    }
    check_membership(rm, k, r, t)?;
    let big_n = ghat.n() - t;
    let classes = &rm.classes()[..t];
    let f = ghat.field();
    let split = split_columns(ghat.matrix(), big_n, classes, f)?;
    let n = split.generator.cols();
    let groups = class_groups(n, k, classes, &split.local1);
    Ok(LrcCode {
        kind: ConstructionKind::Construction1,
        params: LrcParams { n, k, r, t },
        field: Arc::clone(f),
        generator: split.generator,
        index_sets: IndexSets {
            systematic: (0..k).collect(),
            global: (k..big_n).collect(),
            local1: split.local1,
            local2: Vec::new(),
        },
        groups,
        membership: Some(rm.restrict(t)?),
        gabidulin: None,
    })
}

/// All-symbol locality from a systematic [N + t - 1, k] Gabidulin code.
///
/// The last t - 1 columns are split along classes 1..t-1 of `rm`. Then one
/// unit-coefficient parity is added per block of class t over the
/// systematic symbols, and per r consecutive global symbols.
pub fn construction2(gab: &GabidulinCode, rm: &MembershipMatrix, r: usize, t: usize) -> Result<LrcCode, LrcError> {
    if t == 0 || r == 0 {
        return Err(LrcError::InvalidParameter("r and t must be at least 1".into()));
    }
    let k = gab.k();
    if gab.n() + 1 < k + t {
        return Err(LrcError::InvalidParameter(format!(
            "Gabidulin length {} is shorter than k + t - 1 = {}",
            gab.n(),
            k + t - 1
        )));
    }
    let big_n = gab.n() + 1 - t;
    if !k.is_multiple_of(r) {
        return Err(LrcError::Divisibility {
            requirement: "r must divide k",
            r,
            value: k,
        });
    }
    if !big_n.is_multiple_of(r) {
        return Err(LrcError::Divisibility {
            requirement: "r must divide N",
            r,
            value: big_n,
        });
    }
    check_membership(rm, k, r, t)?;
    let f = gab.field();
    let ghat = gab.systematic().matrix();
    let split_classes = &rm.classes()[..t - 1];
    let split = split_columns(ghat, big_n, split_classes, f)?;

    let mut columns: Vec<Vec<u64>> = (0..split.generator.cols()).map(|j| split.generator.column(j)).collect();
    let mut members: Vec<Vec<usize>> = rm.classes()[t - 1].clone();
    members.extend((k..big_n).step_by(r).map(|s| (s..s + r).collect()));
    let mut local2 = Vec::with_capacity(members.len());
    for m in &members {
        let mut col = vec![0u64; k];
        for &j in m {
            for (row, c) in col.iter_mut().enumerate() {
                *c = f.add(*c, ghat.get(row, j));
            }
        }
        local2.push(columns.len());
        columns.push(col);
    }
    let generator = Matrix::from_columns(k, &columns);
    let n = generator.cols();

    let mut groups = class_groups(n, k, split_classes, &split.local1);
    for (m, &parity) in members.iter().zip(&local2) {
        for &s in m {
            let mut g: Vec<usize> = m.iter().copied().filter(|&x| x != s).collect();
            g.push(parity);
            groups[s].push(g);
        }
        groups[parity].push(m.clone());
    }

    Ok(LrcCode {
        kind: ConstructionKind::Construction2,
        params: LrcParams { n, k, r, t },
        field: Arc::clone(f),
        generator,
        index_sets: IndexSets {
            systematic: (0..k).collect(),
            global: (k..big_n).collect(),
            local1: split.local1,
            local2,
        },
        groups,
        membership: Some(rm.restrict(t)?),
        gabidulin: Some(GabidulinSource {
            base_q: gab.base_q(),
            points: gab.points().to_vec(),
            g1: gab.g1().clone(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{build_affine_design, build_kirkman15, design_to_membership};
    use crate::gf::FieldSpec;
    use crate::mds::{gabidulin, systematic_rs};

    fn field(p: u64, m: u32) -> Arc<GaloisField> {
        GaloisField::with_default(p, m).unwrap().shared()
    }

    #[test]
    fn c1_kirkman_shape() {
        let rm = design_to_membership(&build_kirkman15(), 2).unwrap();
        let ghat = systematic_rs(field(2, 5), 22, 15).unwrap();
        let code = construction1(&ghat, &rm, 3, 2).unwrap();
        assert_eq!((code.n(), code.k()), (30, 15));
        assert_eq!(code.index_sets().local1.iter().map(Vec::len).collect::<Vec<_>>(), vec![5, 5]);
        assert!(code.one_parity_per_group());
        // the split columns sum back to the original parity columns
        let f = code.field().clone();
        for (i, ids) in code.index_sets().local1.iter().enumerate() {
            for row in 0..15 {
                let s = ids.iter().fold(0, |acc, &c| f.add(acc, code.generator().get(row, c)));
                assert_eq!(s, ghat.matrix().get(row, 20 + i));
            }
        }
    }

    #[test]
    fn c1_rejects_indivisible() {
        let rm = design_to_membership(&build_kirkman15(), 2).unwrap();
        let ghat = systematic_rs(field(2, 5), 22, 15).unwrap();
        let err = construction1(&ghat, &rm, 2, 2).unwrap_err();
        assert!(matches!(err, LrcError::Divisibility { r: 2, value: 15, .. }));
        assert!(err.to_string().contains("r must divide k"));
        assert!(construction1(&ghat, &rm, 3, 0).is_err());
    }

    #[test]
    fn c1_rejects_nonconformant() {
        let rm = MembershipMatrix::new(3, vec![vec![vec![0, 1, 2]], vec![vec![0, 1, 2]]]).unwrap();
        let ghat = systematic_rs(field(2, 3), 6, 3).unwrap();
        assert!(matches!(
            construction1(&ghat, &rm, 3, 2),
            Err(LrcError::NonConformant { .. })
        ));
    }

    #[test]
    fn c2_affine_q2_shape() {
        let rm = design_to_membership(&build_affine_design(2).unwrap(), 2).unwrap();
        let f = GaloisField::new(FieldSpec::with_default(2, 7).unwrap()).unwrap().shared();
        let gab = gabidulin(f, 2, 7, 4).unwrap();
        let code = construction2(&gab, &rm, 2, 2).unwrap();
        assert_eq!((code.n(), code.k()), (11, 4));
        assert_eq!(code.mds_length(), 6);
        assert_eq!(code.index_sets().local1, vec![vec![6, 7]]);
        assert_eq!(code.index_sets().local2, vec![8, 9, 10]);
        assert!(code.all_groups().iter().all(|g| !g.is_empty()));
        assert_eq!(code.groups(0).len(), 2);
        assert_eq!(code.erasure_guarantee(), Some(5));
    }

    #[test]
    fn c2_needs_r_dividing_n() {
        let rm = design_to_membership(&build_affine_design(2).unwrap(), 2).unwrap();
        let f = field(2, 8);
        let gab = gabidulin(f, 2, 8, 4).unwrap();
        let err = construction2(&gab, &rm, 2, 2).unwrap_err();
        assert!(matches!(err, LrcError::Divisibility { value: 7, .. }));
    }

    #[test]
    fn c2_with_t1_adds_only_local_parities() {
        let rm = design_to_membership(&build_affine_design(2).unwrap(), 1).unwrap();
        let gab = gabidulin(field(2, 6), 2, 6, 4).unwrap();
        let code = construction2(&gab, &rm, 2, 1).unwrap();
        assert!(code.index_sets().local1.is_empty());
        assert_eq!(code.n(), 9);
    }
}
