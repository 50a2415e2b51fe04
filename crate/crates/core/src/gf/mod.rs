//! Arithmetic in prime fields GF(p) and extension fields GF(p^m).
//!
//! Elements are encoded as integers in `[0, p^m)`: the polynomial-basis
//! coordinate vector `(c_0, .., c_{m-1})` maps to `sum c_i p^i`. Under this
//! encoding the prime subfield occupies `0..p` and the basis monomial `x^j`
//! is `p^j`.
//!
//! Hot paths (matrices, decoders) work on raw `u64` values through a shared
//! [`GaloisField`]. [`FieldElement`] is the checked, self-describing wrapper
//! for callers that mix fields.

mod linearized;
pub(crate) mod poly;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use linearized::{lin_independent_points, LinearizedPolynomial};

/// Largest field order for which log/antilog tables are built.
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field order {p}^{m} does not fit in 64 bits")]
    OrderOverflow { p: u64, m: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients in GF({p})")]
    BadModulus { expected: u32, p: u64 },
    #[error("modulus is reducible over GF({0})")]
    Reducible(u64),
    #[error("no default irreducible polynomial for GF({p}^{m})")]
    NoDefault { p: u64, m: u32 },
    #[error("elements belong to different fields")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {value} is not an element of a field of order {order}")]
    OutOfRange { value: u64, order: u64 },
    #[error("{base_q} is not the order of a subfield of GF({p}^{m})")]
    InvalidBaseField { base_q: u64, p: u64, m: u32 },
    #[error("requested {requested} independent points but the extension degree is {available}")]
    TooManyPoints { requested: usize, available: usize },
}

/// Parameters of GF(p^m): characteristic, extension degree and the monic
/// irreducible modulus (ascending coefficients, length m + 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u32,
    pub poly: Vec<u64>,
}

impl FieldSpec {
    /// Spec with the shipped default modulus for (p, m).
    pub fn with_default(p: u64, m: u32) -> Result<Self, GfError> {
        Ok(FieldSpec {
            p,
            m,
            poly: default_modulus(p, m)?,
        })
    }
}

// Moduli for binary fields, ascending coefficients truncated to the set bits.
const BINARY_MODULI: [&[u32]; 16] = [
    &[1],              // x
    &[0, 1, 2],        // x^2 + x + 1
    &[0, 1, 3],        // x^3 + x + 1
    &[0, 1, 4],        // x^4 + x + 1
    &[0, 2, 5],        // x^5 + x^2 + 1
    &[0, 1, 6],        // x^6 + x + 1
    &[0, 1, 7],        // x^7 + x + 1
    &[0, 2, 3, 4, 8],  // x^8 + x^4 + x^3 + x^2 + 1
    &[0, 4, 9],        // x^9 + x^4 + 1
    &[0, 3, 10],       // x^10 + x^3 + 1
    &[0, 2, 11],       // x^11 + x^2 + 1
    &[0, 1, 4, 6, 12], // x^12 + x^6 + x^4 + x + 1
    &[0, 1, 3, 4, 13], // x^13 + x^4 + x^3 + x + 1
    &[0, 1, 6, 10, 14],
    &[0, 1, 15],
    &[0, 1, 3, 12, 16],
];

/// Default modulus for GF(p^m).
///
/// Binary fields up to degree 16 use the shipped table; everything else
/// takes the first monic irreducible polynomial in encoding order.
pub fn default_modulus(p: u64, m: u32) -> Result<Vec<u64>, GfError> {
    if !poly::is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if m == 0 {
        return Err(GfError::ZeroDegree);
    }
    if m == 1 {
        return Ok(vec![0, 1]);
    }
    if p == 2 && (m as usize) <= BINARY_MODULI.len() {
        let mut coeffs = vec![0u64; m as usize + 1];
        for &e in BINARY_MODULI[m as usize - 1] {
            coeffs[e as usize] = 1;
        }
        return Ok(coeffs);
    }
    let lower = p.checked_pow(m).ok_or(GfError::OrderOverflow { p, m })?;
    // Search is only sensible for small fields; larger ones must pass a modulus.
    if lower > (1 << 24) {
        return Err(GfError::NoDefault { p, m });
    }
    for tail in 0..lower {
        let mut coeffs = digits(tail, p, m as usize);
        coeffs.push(1);
        if coeffs[0] != 0 && poly::is_irreducible(&coeffs, p) {
            return Ok(coeffs);
        }
    }
    Err(GfError::NoDefault { p, m })
}

fn digits(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

#[derive(Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^m) with its arithmetic.
#[derive(Debug)]
pub struct GaloisField {
    spec: FieldSpec,
    order: u64,
    /// Modulus as a bitmask, binary fields only.
    modulus_bits: u64,
    tables: Option<LogTables>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    pub fn new(spec: FieldSpec) -> Result<Self, GfError> {
        let FieldSpec { p, m, ref poly } = spec;
        if !poly::is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let order = p.checked_pow(m).ok_or(GfError::OrderOverflow { p, m })?;
        if p > u32::MAX as u64 && m > 1 {
            return Err(GfError::OrderOverflow { p, m });
        }
        if poly.len() != m as usize + 1 || poly[m as usize] != 1 || poly.iter().any(|&c| c >= p)
        {
            return Err(GfError::BadModulus { expected: m, p });
        }
        if !poly::is_irreducible(poly, p) {
            return Err(GfError::Reducible(p));
        }
        let modulus_bits = if p == 2 {
            poly.iter()
                .take(m as usize)
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        let mut field = GaloisField {
            spec,
            order,
            modulus_bits,
            tables: None,
        };
        if order <= TABLE_LIMIT && order > 2 {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// GF(p^m) with the default modulus.
    pub fn with_default(p: u64, m: u32) -> Result<Self, GfError> {
        Self::new(FieldSpec::with_default(p, m)?)
    }

    /// Shared handle, the form used by matrices and codes.
    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.m
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.order
    }

    pub fn check(&self, a: u64) -> Result<u64, GfError> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(GfError::OutOfRange {
                value: a,
                order: self.order,
            })
        }
    }

    /// Checked element constructor.
    pub fn element(self: &Arc<Self>, value: u64) -> Result<FieldElement, GfError> {
        self.check(value)?;
        Ok(FieldElement {
            field: Arc::clone(self),
            value,
        })
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.spec.p;
        if p == 2 {
            return a ^ b;
        }
        if self.spec.m == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.spec.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let p = self.spec.p;
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.spec.m {
            out += ((p - a % p) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if self.spec.p == 2 {
            a ^ b
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a as usize] + t.log[b as usize];
                t.exp[s as usize] as u64
            }
            None => self.mul_slow(a, b),
        }
    }

    /// Polynomial multiplication followed by reduction; the reference path the
    /// tables are built from.
    pub(crate) fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let FieldSpec { p, m, ref poly } = self.spec;
        if m == 1 {
            return poly::mul_mod_p(a, b, p);
        }
        if p == 2 {
            return self.clmul_reduce(a, b);
        }
        let da = digits(a, p, m as usize);
        let db = digits(b, p, m as usize);
        let prod = poly::mul(&da, &db, p);
        let r = poly::rem(&prod, poly, p);
        r.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    fn clmul_reduce(&self, a: u64, b: u64) -> u64 {
        let m = self.spec.m;
        let mut acc: u128 = 0;
        let a = a as u128;
        for i in 0..m {
            if (b >> i) & 1 == 1 {
                acc ^= a << i;
            }
        }
        let modulus = (self.modulus_bits as u128) | (1u128 << m);
        for bit in (m..(2 * m)).rev() {
            if (acc >> bit) & 1 == 1 {
                acc ^= modulus << (bit - m);
            }
        }
        acc as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let n = (self.order - 1) as u32;
                t.exp[((n - t.log[a as usize]) % n) as usize] as u64
            }
            None => self.pow(a, self.order - 2),
        })
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64, GfError> {
        let inv = self.inv(b).ok_or(GfError::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    /// The subfield exponent s with base_q = p^s, provided s divides m.
    pub fn subfield_degree(&self, base_q: u64) -> Result<u32, GfError> {
        let FieldSpec { p, m, .. } = self.spec;
        let bad = GfError::InvalidBaseField { base_q, p, m };
        let mut s = 0u32;
        let mut v = base_q;
        while v > 1 && v.is_multiple_of(p) {
            v /= p;
            s += 1;
        }
        if v != 1 || s == 0 || m % s != 0 {
            return Err(bad);
        }
        Ok(s)
    }

    /// `a^(base_q^iterations)`.
    pub fn frobenius(&self, a: u64, base_q: u64, iterations: u64) -> Result<u64, GfError> {
        let s = self.subfield_degree(base_q)? as u64;
        let m = self.spec.m as u64;
        let steps = (s * (iterations % m)) % m;
        let p = self.spec.p;
        let mut out = a;
        for _ in 0..steps {
            out = self.pow(out, p);
        }
        Ok(out)
    }

    /// Polynomial-basis coordinates over GF(p), least significant first.
    pub fn coordinates(&self, a: u64) -> Vec<u64> {
        digits(a, self.spec.p, self.spec.m as usize)
    }

    fn build_tables(&self) -> LogTables {
        let n = self.order - 1;
        let factors = poly::prime_factors(n);
        let generator = (2..self.order)
            .find(|&g| factors.iter().all(|&f| self.pow_slow(g, n / f) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut x = 1u64;
        for i in 0..n as usize {
            exp[i] = x as u32;
            exp[i + n as usize] = x as u32;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, generator);
        }
        LogTables { exp, log }
    }
}

impl TryFrom<FieldSpec> for GaloisField {
    type Error = GfError;

    fn try_from(spec: FieldSpec) -> Result<Self, Self::Error> {
        GaloisField::new(spec)
    }
}

impl Serialize for GaloisField {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.spec.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaloisField {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let spec = FieldSpec::deserialize(deserializer)?;
        GaloisField::new(spec).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spec.m == 1 {
            write!(f, "GF({})", self.spec.p)
        } else {
            write!(f, "GF({}^{})", self.spec.p, self.spec.m)
        }
    }
}

/// Binary operation selector for [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A field element bound to its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<GaloisField>,
    value: u64,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    fn same_field(&self, other: &Self) -> Result<(), GfError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.spec == other.field.spec {
            Ok(())
        } else {
            Err(GfError::SpecMismatch)
        }
    }

    pub fn frobenius(&self, base_q: u64, iterations: u64) -> Result<FieldElement, GfError> {
        let value = self.field.frobenius(self.value, base_q, iterations)?;
        Ok(FieldElement {
            field: Arc::clone(&self.field),
            value,
        })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Checked arithmetic on two elements of the same field.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, GfError> {
    a.same_field(b)?;
    let f = &a.field;
    let value = match op {
        ArithOp::Add => f.add(a.value, b.value),
        ArithOp::Sub => f.sub(a.value, b.value),
        ArithOp::Mul => f.mul(a.value, b.value),
        ArithOp::Div => f.div(a.value, b.value)?,
    };
    Ok(FieldElement {
        field: Arc::clone(f),
        value,
    })
}
