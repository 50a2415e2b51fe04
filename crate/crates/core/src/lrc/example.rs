use super::LrcCode;
use crate::designs::MembershipMatrix;
use crate::gf::GaloisField;
use crate::linalg::Matrix;

/// The binary (7, 3, 2, 2) code with parities m1, m1+m2, m2+m3, m1+m3.
///
/// Each systematic symbol has two disjoint groups of size at most 2:
/// c1 from {c4} or {c2, c5}, c2 from {c1, c5} or {c3, c6}, c3 from
/// {c2, c6} or {c1, c7}. Its distance is 3.
pub fn example1_code() -> LrcCode {
    let f = GaloisField::with_default(2, 1).expect("GF(2)").shared();
    let generator = Matrix::from_rows(vec![
        vec![1, 0, 0, 1, 1, 0, 1],
        vec![0, 1, 0, 0, 1, 1, 0],
        vec![0, 0, 1, 0, 0, 1, 1],
    ]);
    let mut groups = vec![Vec::new(); 7];
    groups[0] = vec![vec![3], vec![1, 4]];
    groups[1] = vec![vec![0, 4], vec![2, 5]];
    groups[2] = vec![vec![1, 5], vec![0, 6]];
    let rm = MembershipMatrix::from_columns(3, vec![vec![0], vec![0, 1], vec![1, 2], vec![0, 2]]).expect("valid columns");
    LrcCode::explicit(f, generator, 2, 2, groups, Some(rm)).expect("systematic")
}
