//! Systematic MDS generator matrices: Cauchy-parity Reed-Solomon over GF(q)
//! and Gabidulin codes over GF(q^M), plus generic erasure decoding.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinations::{binomial, for_each_combination};
use crate::gf::{lin_independent_points, GaloisField, GfError, LinearizedPolynomial};
use crate::linalg::{ColumnRankOracle, Matrix, SolveFailure};

/// Exhaustive MDS certification up to this many k-subsets, sampling beyond.
pub const EXHAUSTIVE_MDS_LIMIT: u128 = 1_000_000;
pub const MDS_SAMPLES: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MdsError {
    #[error("field of order {order} has fewer than {needed} distinct evaluation points")]
    FieldTooSmall { order: u64, needed: u64 },
    #[error("dimension {k} exceeds length {n}")]
    DimensionTooLarge { n: usize, k: usize },
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("unrecoverable: surviving symbols have rank {rank} < {k}")]
    Unrecoverable { rank: usize, k: usize },
    #[error("received word is not consistent with any codeword")]
    Inconsistent,
    #[error("received word has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("generator rows have inconsistent shape")]
    Shape,
    #[error(transparent)]
    Field(#[from] GfError),
}

/// A k x n generator matrix together with its field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    field: Arc<GaloisField>,
    matrix: Matrix,
    systematic: bool,
}

impl GeneratorMatrix {
    /// Wraps a matrix; the systematic flag is derived from its first k columns.
    pub fn new(field: Arc<GaloisField>, matrix: Matrix) -> Result<Self, MdsError> {
        if matrix.rows() > matrix.cols() {
            return Err(MdsError::DimensionTooLarge {
                n: matrix.cols(),
                k: matrix.rows(),
            });
        }
        for r in 0..matrix.rows() {
            for &v in matrix.row(r) {
                field.check(v)?;
            }
        }
        let k = matrix.rows();
        let systematic = (0..k).all(|i| (0..k).all(|j| matrix.get(i, j) == u64::from(i == j)));
        Ok(GeneratorMatrix {
            field,
            matrix,
            systematic,
        })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_systematic(&self) -> bool {
        self.systematic
    }

    pub fn encode(&self, message: &[u64]) -> Result<Vec<u64>, MdsError> {
        if message.len() != self.k() {
            return Err(MdsError::LengthMismatch {
                expected: self.k(),
                found: message.len(),
            });
        }
        for &m in message {
            self.field.check(m)?;
        }
        Ok(self.matrix.left_mul(message, &self.field))
    }
}

#[derive(Serialize, Deserialize)]
struct GeneratorJson {
    field: GaloisField,
    k: usize,
    n: usize,
    systematic: bool,
    rows: Vec<Vec<u64>>,
}

impl Serialize for GeneratorMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GeneratorMatrix", 5)?;
        st.serialize_field("field", self.field.spec())?;
        st.serialize_field("k", &self.k())?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("systematic", &self.systematic)?;
        st.serialize_field("rows", &self.matrix.to_rows())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GeneratorMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = GeneratorJson::deserialize(d)?;
        if raw.rows.len() != raw.k || raw.rows.iter().any(|r| r.len() != raw.n) {
            return Err(D::Error::custom(MdsError::Shape));
        }
        let g = GeneratorMatrix::new(raw.field.shared(), Matrix::from_rows(raw.rows)).map_err(D::Error::custom)?;
        if raw.systematic && !g.systematic {
            return Err(D::Error::custom("declared systematic but first k columns are not the identity"));
        }
        Ok(g)
    }
}

/// Systematic `[I | C]` generator with a k x (n-k) Cauchy parity block
/// `C[i][j] = 1 / (x_i - y_j)`, `x_i = i`, `y_j = k + j` as encoded elements.
///
/// Every square submatrix of a Cauchy matrix is nonsingular, so the code is
/// MDS and every parity entry is nonzero.
pub fn systematic_rs(field: Arc<GaloisField>, n: usize, k: usize) -> Result<GeneratorMatrix, MdsError> {
    if k == 0 {
        return Err(MdsError::ZeroDimension);
    }
    if k > n {
        return Err(MdsError::DimensionTooLarge { n, k });
    }
    if (n as u64) > field.order() && n > k {
        return Err(MdsError::FieldTooSmall {
            order: field.order(),
            needed: n as u64,
        });
    }
    let mut g = Matrix::zeros(k, n);
    for i in 0..k {
        g.set(i, i, 1);
        for j in 0..n - k {
            let diff = field.sub(i as u64, (k + j) as u64);
            g.set(i, k + j, field.inv(diff).expect("distinct points"));
        }
    }
    GeneratorMatrix::new(field, g)
}

/// Result of checking that every k-column subset of a generator is invertible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MdsCertificate {
    pub exhaustive: bool,
    pub subsets_checked: u64,
    /// 1-based columns of a singular k-subset, if one was found.
    pub singular_subset: Option<Vec<usize>>,
}

impl MdsCertificate {
    pub fn is_mds(&self) -> bool {
        self.singular_subset.is_none()
    }
}

pub fn certify_mds(g: &GeneratorMatrix, seed: u64) -> MdsCertificate {
    let (n, k) = (g.n(), g.k());
    let f = g.field();
    let oracle = ColumnRankOracle::new(g.matrix(), f);
    let check = |cols: &[usize]| {
        let mut erased = vec![true; n];
        for &c in cols {
            erased[c] = false;
        }
        oracle.rank_without(&erased, f) == k
    };
    let mut checked = 0u64;
    let mut singular = None;
    let exhaustive = binomial(n, k) <= EXHAUSTIVE_MDS_LIMIT;
    if exhaustive {
        for_each_combination(n, k, |c| {
            checked += 1;
            if !check(c) {
                singular = Some(c.iter().map(|x| x + 1).collect());
                return false;
            }
            true
        });
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MDS_SAMPLES {
            let mut c = sample(&mut rng, n, k).into_vec();
            c.sort_unstable();
            checked += 1;
            if !check(&c) {
                singular = Some(c.iter().map(|x| x + 1).collect());
                break;
            }
        }
    }
    MdsCertificate {
        exhaustive,
        subsets_checked: checked,
        singular_subset: singular,
    }
}

/// Recover the message from a received word with erasures (`None`).
pub fn mds_erasure_decode(g: &GeneratorMatrix, received: &[Option<u64>]) -> Result<Vec<u64>, MdsError> {
    decode_erasures(g.matrix(), g.field(), received)
}

pub(crate) fn decode_erasures(g: &Matrix, f: &GaloisField, received: &[Option<u64>]) -> Result<Vec<u64>, MdsError> {
    if received.len() != g.cols() {
        return Err(MdsError::LengthMismatch {
            expected: g.cols(),
            found: received.len(),
        });
    }
    let (cols, vals): (Vec<usize>, Vec<u64>) = received
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .unzip();
    for &v in &vals {
        f.check(v)?;
    }
    g.solve_left(&cols, &vals, f).map_err(|e| match e {
        SolveFailure::RankDeficient { rank } => MdsError::Unrecoverable { rank, k: g.rows() },
        SolveFailure::Inconsistent => MdsError::Inconsistent,
    })
}

/// An [N, K] Gabidulin code over GF(q^M) evaluated at polynomial-basis points.
#[derive(Debug, Clone)]
pub struct GabidulinCode {
    field: Arc<GaloisField>,
    base_q: u64,
    points: Vec<u64>,
    generator: Matrix,
    g1: Matrix,
    g1_inverse: Matrix,
    systematic: GeneratorMatrix,
}

/// Builds `G_Gab[i][j] = y_j^(q^i)` and its systematic form `(G1)^-1 G_Gab`,
/// where G1 is the leading K x K block.
pub fn gabidulin(field: Arc<GaloisField>, base_q: u64, n: usize, k: usize) -> Result<GabidulinCode, MdsError> {
    if k == 0 {
        return Err(MdsError::ZeroDimension);
    }
    if k > n {
        return Err(MdsError::DimensionTooLarge { n, k });
    }
    let points = lin_independent_points(&field, base_q, n).map_err(|e| match e {
        GfError::TooManyPoints { .. } => MdsError::FieldTooSmall {
            order: field.order(),
            needed: n as u64,
        },
        other => MdsError::Field(other),
    })?;
    let mut generator = Matrix::zeros(k, n);
    for (j, &y) in points.iter().enumerate() {
        let mut v = y;
        for i in 0..k {
            generator.set(i, j, v);
            v = field.pow(v, base_q);
        }
    }
    let g1 = generator.select_columns(&(0..k).collect::<Vec<_>>());
    let g1_inverse = g1.inverse(&field).expect("Moore matrix of independent points is invertible");
    let systematic = GeneratorMatrix::new(Arc::clone(&field), g1_inverse.mul(&generator, &field))?;
    Ok(GabidulinCode {
        field,
        base_q,
        points,
        generator,
        g1,
        g1_inverse,
        systematic,
    })
}

impl GabidulinCode {
    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn base_q(&self) -> u64 {
        self.base_q
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.g1.rows()
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    /// `G_Gab`.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// Leading K x K block of `G_Gab`.
    pub fn g1(&self) -> &Matrix {
        &self.g1
    }

    pub fn g1_inverse(&self) -> &Matrix {
        &self.g1_inverse
    }

    /// `(G1)^-1 G_Gab`.
    pub fn systematic(&self) -> &GeneratorMatrix {
        &self.systematic
    }

    /// Coefficients of the linearized polynomial whose evaluations form the
    /// systematic codeword of `message`: `m (G1)^-1`.
    pub fn polynomial_for(&self, message: &[u64]) -> LinearizedPolynomial {
        LinearizedPolynomial::new(self.g1_inverse.left_mul(message, &self.field), self.base_q)
    }
}
