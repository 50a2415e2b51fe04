//! Benchmark fixtures shared by the criterion targets.

use lrc_core::designs::{build_affine_design, design_to_membership};
use lrc_core::mds::{gabidulin, systematic_rs};
use lrc_core::{GaloisField, LrcCode};

/// Construction-1 code from the affine plane of order 3, two classes, over
/// GF(16): (n, k, r, t) = (17, 9, 3, 2).
pub fn affine3_c1() -> LrcCode {
    let rm = design_to_membership(&build_affine_design(3).unwrap(), 2).unwrap();
    let field = GaloisField::with_default(2, 4).unwrap().shared();
    let g = systematic_rs(field, 13, 9).unwrap();
    lrc_core::lrc::construction1(&g, &rm, 3, 2).unwrap()
}

/// Construction-2 code from the affine plane of order 2 over GF(2^7):
/// (n, k, r, t) = (11, 4, 2, 2).
pub fn affine2_c2() -> LrcCode {
    let rm = design_to_membership(&build_affine_design(2).unwrap(), 2).unwrap();
    let field = GaloisField::with_default(2, 7).unwrap().shared();
    let g = gabidulin(field, 2, 7, 4).unwrap();
    lrc_core::lrc::construction2(&g, &rm, 2, 2).unwrap()
}
