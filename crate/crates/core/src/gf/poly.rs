//! Dense polynomials over a prime field GF(p), ascending coefficient order.
//!
//! Only what the field constructor needs: reduction, multiplication modulo a
//! monic polynomial, gcd, and an irreducibility test.

pub(crate) fn mul_mod_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod_p(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_p(acc, base, p);
        }
        base = mul_mod_p(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    pow_mod_p(a, p - 2, p)
}

fn trim(poly: &mut Vec<u64>) {
    while poly.last() == Some(&0) {
        poly.pop();
    }
}

/// Remainder of `a` modulo `m` over GF(p). `m` must be nonzero.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut m = m.to_vec();
    trim(&mut m);
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = mul_mod_p(*r.last().unwrap(), lead_inv, p);
        for (i, &c) in m.iter().enumerate() {
            let sub = mul_mod_p(factor, c, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_p(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out: Vec<u64> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or test: a monic `f` of degree m is irreducible over GF(p) iff
/// gcd(f, x^(p^i) - x) = 1 for every 1 <= i <= m/2.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=deg / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), f, p);
            }
            base = rem(&mul(&base, &base, p), f, p);
            e >>= 1;
        }
        h = acc;
        let g = gcd(f, &sub(&h, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= v {
        if v.is_multiple_of(d) {
            out.push(d);
            while v.is_multiple_of(d) {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_binary_polys() {
        assert!(is_irreducible(&[1, 1, 0, 1], 2)); // x^3 + x + 1
        assert!(!is_irreducible(&[1, 0, 0, 1], 2)); // x^3 + 1 = (x+1)(x^2+x+1)
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2)); // (x^2+x+1)^2
        assert!(is_irreducible(&[1, 0, 1], 3)); // x^2 + 1 over GF(3)
        assert!(!is_irreducible(&[1, 0, 1], 5)); // 2^2 = -1 mod 5
    }

    #[test]
    fn rem_matches_hand_division() {
        // x^3 mod (x^3 + x + 1) = x + 1 over GF(2)
        assert_eq!(rem(&[0, 0, 0, 1], &[1, 1, 0, 1], 2), vec![1, 1]);
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(31), vec![31]);
        assert_eq!(prime_factors(255), vec![3, 5, 17]);
        assert!(is_prime(65537));
        assert!(!is_prime(1));
    }
}
