use super::{DesignError, ResolvableDesign};
use crate::gf::{poly, GaloisField};

/// The affine plane AG(2, q) as a resolvable 2-(q^2, q(q+1), q+1, q, 1) design.
///
/// Point `(x, y)` is `x + q*y` with coordinates as encoded field elements.
/// Classes are the lines `y = s*x + b` for slopes `s = 0, 1, ..` followed by
/// the vertical lines; lines within a class are ordered by intercept.
pub fn build_affine_design(q: u64) -> Result<ResolvableDesign, DesignError> {
    let (p, m) = prime_power(q).ok_or(DesignError::NotPrimePower(q))?;
    let field = GaloisField::with_default(p, m)?;
    Ok(build_affine_design_over(&field))
}

pub fn build_affine_design_over(field: &GaloisField) -> ResolvableDesign {
    let q = field.order();
    let point = |x: u64, y: u64| (x + q * y) as usize;
    let mut classes = Vec::with_capacity(q as usize + 1);
    for slope in 0..q {
        let class = (0..q)
            .map(|b| (0..q).map(|x| point(x, field.add(field.mul(slope, x), b))).collect())
            .collect();
        classes.push(class);
    }
    classes.push((0..q).map(|x| (0..q).map(|y| point(x, y)).collect()).collect());
    let k = (q * q) as usize;
    ResolvableDesign::new(k, q as usize, 1, classes).expect("points are in range")
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = poly::prime_factors(q).into_iter().next()?;
    let mut m = 0;
    let mut v = q;
    while v.is_multiple_of(p) {
        v /= p;
        m += 1;
    }
    (v == 1).then_some((p, m))
}
