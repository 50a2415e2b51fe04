use super::{GaloisField, GfError};

/// `f(y) = sum_i m_i y^(q^(i-1))` over GF(q^M), with coefficients as encoded
/// field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizedPolynomial {
    pub coeffs: Vec<u64>,
    pub base_q: u64,
}

impl LinearizedPolynomial {
    pub fn new(coeffs: Vec<u64>, base_q: u64) -> Self {
        LinearizedPolynomial { coeffs, base_q }
    }

    pub fn eval(&self, field: &GaloisField, y: u64) -> Result<u64, GfError> {
        field.check(y)?;
        field.subfield_degree(self.base_q)?;
        let mut acc = 0;
        let mut power = y;
        for &c in &self.coeffs {
            field.check(c)?;
            acc = field.add(acc, field.mul(c, power));
            power = field.pow(power, self.base_q);
        }
        Ok(acc)
    }
}

/// The first `count` polynomial-basis monomials `1, x, .., x^(count-1)`.
///
/// They are linearly independent over every subfield GF(q): `x` generates the
/// whole field over GF(p), so its minimal polynomial over GF(q) has degree
/// m/s.
pub fn lin_independent_points(
    field: &GaloisField,
    base_q: u64,
    count: usize,
) -> Result<Vec<u64>, GfError> {
    let s = field.subfield_degree(base_q)?;
    let available = (field.degree() / s) as usize;
    if count > available {
        return Err(GfError::TooManyPoints {
            requested: count,
            available,
        });
    }
    let p = field.characteristic();
    Ok((0..count as u32).map(|j| p.pow(j)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rank over GF(p) of coordinate vectors, by plain elimination mod p.
    fn prime_rank(vectors: &[Vec<u64>], p: u64) -> usize {
        let mut rows: Vec<Vec<u64>> = vectors.to_vec();
        let cols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = crate::gf::poly::pow_mod_p(rows[rank][c], p - 2, p);
            for i in 0..rows.len() {
                if i != rank && rows[i][c] != 0 {
                    let f = rows[i][c] * inv % p;
                    for j in 0..cols {
                        rows[i][j] = (rows[i][j] + p * p - f * rows[rank][j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn single_coefficient_is_scaling() {
        let f = GaloisField::with_default(2, 5).unwrap();
        let lp = LinearizedPolynomial::new(vec![7], 2);
        for y in 0..32 {
            assert_eq!(lp.eval(&f, y).unwrap(), f.mul(7, y));
        }
    }

    #[test]
    fn vanishes_at_zero() {
        let f = GaloisField::with_default(2, 7).unwrap();
        let lp = LinearizedPolynomial::new(vec![3, 99, 17, 1], 2);
        assert_eq!(lp.eval(&f, 0).unwrap(), 0);
    }

    #[test]
    fn polynomial_basis_points() {
        let f = GaloisField::with_default(2, 3).unwrap();
        assert_eq!(lin_independent_points(&f, 2, 1).unwrap(), vec![1]);
        assert_eq!(lin_independent_points(&f, 2, 3).unwrap(), vec![1, 2, 4]);
        assert!(matches!(
            lin_independent_points(&f, 2, 4),
            Err(GfError::TooManyPoints { .. })
        ));
        let f9 = GaloisField::with_default(3, 4).unwrap();
        let pts = lin_independent_points(&f9, 3, 4).unwrap();
        let coords: Vec<_> = pts.iter().map(|&y| f9.coordinates(y)).collect();
        assert_eq!(prime_rank(&coords, 3), 4);
    }

    #[test]
    fn points_independent_over_proper_subfield() {
        // GF(64) over GF(4): brute force every GF(4) combination of 3 points.
        let f = GaloisField::with_default(2, 6).unwrap();
        let sub: Vec<u64> = (0..64).filter(|&a| f.pow(a, 4) == a).collect();
        let pts = lin_independent_points(&f, 4, 3).unwrap();
        for a in &sub {
            for b in &sub {
                for c in &sub {
                    let v = f.add(f.add(f.mul(*a, pts[0]), f.mul(*b, pts[1])), f.mul(*c, pts[2]));
                    if (*a, *b, *c) != (0, 0, 0) {
                        assert_ne!(v, 0);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn linear_over_base_field(
            coeffs in proptest::collection::vec(0u64..128, 1..6),
            y1 in 0u64..128, y2 in 0u64..128, a in 0u64..2, b in 0u64..2,
        ) {
            let f = GaloisField::with_default(2, 7).unwrap();
            let lp = LinearizedPolynomial::new(coeffs, 2);
            let lhs = lp.eval(&f, f.add(f.mul(a, y1), f.mul(b, y2))).unwrap();
            let rhs = f.add(f.mul(a, lp.eval(&f, y1).unwrap()), f.mul(b, lp.eval(&f, y2).unwrap()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn linear_over_gf4(
            coeffs in proptest::collection::vec(0u64..64, 1..4),
            y1 in 0u64..64, y2 in 0u64..64, ia in 0usize..4, ib in 0usize..4,
        ) {
            let f = GaloisField::with_default(2, 6).unwrap();
            let sub: Vec<u64> = (0..64).filter(|&a| f.pow(a, 4) == a).collect();
            let (a, b) = (sub[ia], sub[ib]);
            let lp = LinearizedPolynomial::new(coeffs, 4);
            let lhs = lp.eval(&f, f.add(f.mul(a, y1), f.mul(b, y2))).unwrap();
            let rhs = f.add(f.mul(a, lp.eval(&f, y1).unwrap()), f.mul(b, lp.eval(&f, y2).unwrap()));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
