//! JSON form of a code. All indices in it are 1-based.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ConstructionKind, GabidulinSource, IndexSets, LrcCode, LrcError, LrcParams};
use crate::designs::MembershipMatrix;
use crate::gf::{FieldSpec, GaloisField};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSetsJson {
    pub systematic: Vec<usize>,
    pub global: Vec<usize>,
    pub local1: Vec<Vec<usize>>,
    pub local2: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub symbol: usize,
    pub repair: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GabidulinJson {
    pub base_q: u64,
    pub points: Vec<u64>,
    pub g1: Vec<Vec<u64>>,
}

/// Serializable snapshot of an [`LrcCode`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeBundle {
    pub kind: ConstructionKind,
    pub params: LrcParams,
    pub field: FieldSpec,
    pub generator: Vec<Vec<u64>>,
    pub index_sets: IndexSetsJson,
    pub groups: Vec<GroupJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membership: Option<MembershipMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gabidulin: Option<GabidulinJson>,
}

fn plus1(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn minus1(v: &[usize], n: usize) -> Result<Vec<usize>, LrcError> {
    v.iter()
        .map(|&x| {
            if x == 0 || x > n {
                Err(LrcError::Bundle(format!("index {x} outside 1..={n}")))
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

impl CodeBundle {
    pub fn from_code(code: &LrcCode) -> Self {
        let ix = &code.index_sets;
        CodeBundle {
            kind: code.kind,
            params: code.params,
            field: code.field.spec().clone(),
            generator: code.generator.to_rows(),
            index_sets: IndexSetsJson {
                systematic: plus1(&ix.systematic),
                global: plus1(&ix.global),
                local1: ix.local1.iter().map(|c| plus1(c)).collect(),
                local2: plus1(&ix.local2),
            },
            groups: code
                .groups
                .iter()
                .enumerate()
                .filter(|(_, g)| !g.is_empty())
                .map(|(s, g)| GroupJson {
                    symbol: s + 1,
                    repair: g.iter().map(|m| plus1(m)).collect(),
                })
                .collect(),
            membership: code.membership.clone(),
            gabidulin: code.gabidulin.as_ref().map(|g| GabidulinJson {
                base_q: g.base_q,
                points: g.points.clone(),
                g1: g.g1.to_rows(),
            }),
        }
    }

    /// Validates shapes and index ranges and rebuilds the code.
    pub fn into_code(self) -> Result<LrcCode, LrcError> {
        let LrcParams { n, k, .. } = self.params;
        if self.generator.len() != k || self.generator.iter().any(|row| row.len() != n) {
            return Err(LrcError::Bundle(format!("generator is not {k} x {n}")));
        }
        let field = Arc::new(GaloisField::new(self.field)?);
        for &v in self.generator.iter().flatten() {
            field.check(v)?;
        }
        let generator = Matrix::from_rows(self.generator);
        let ix = IndexSets {
            systematic: minus1(&self.index_sets.systematic, n)?,
            global: minus1(&self.index_sets.global, n)?,
            local1: self
                .index_sets
                .local1
                .iter()
                .map(|c| minus1(c, n))
                .collect::<Result<_, _>>()?,
            local2: minus1(&self.index_sets.local2, n)?,
        };
        let mut seen = vec![false; n];
        for &i in ix.systematic.iter().chain(&ix.global).chain(ix.local1.iter().flatten()).chain(&ix.local2) {
            if std::mem::replace(&mut seen[i], true) {
                return Err(LrcError::Bundle(format!("index {} listed twice", i + 1)));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(LrcError::Bundle("index sets do not cover every symbol".into()));
        }
        if ix.systematic != (0..k).collect::<Vec<_>>() {
            return Err(LrcError::Bundle(format!("systematic symbols must be 1..={k}")));
        }
        let mut groups = vec![Vec::new(); n];
        for g in self.groups {
            let s = minus1(&[g.symbol], n)?[0];
            groups[s] = g.repair.iter().map(|m| minus1(m, n)).collect::<Result<_, _>>()?;
        }
        let gabidulin = match self.gabidulin {
            Some(g) => {
                let kk = g.g1.len();
                if kk != k || g.g1.iter().any(|row| row.len() != k) {
                    return Err(LrcError::Bundle(format!("g1 is not {k} x {k}")));
                }
                Some(GabidulinSource {
                    base_q: g.base_q,
                    points: g.points,
                    g1: Matrix::from_rows(g.g1),
                })
            }
            None if self.kind == ConstructionKind::Construction2 => {
                return Err(LrcError::Bundle("missing gabidulin section".into()))
            }
            None => None,
        };
        let mut code = LrcCode::explicit(field, generator, self.params.r, self.params.t, groups, self.membership)?;
        code.kind = self.kind;
        code.index_sets = ix;
        code.gabidulin = gabidulin;
        Ok(code)
    }
}

impl LrcCode {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CodeBundle::from_code(self)).expect("bundle serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, LrcError> {
        let bundle: CodeBundle = serde_json::from_str(text).map_err(|e| LrcError::Bundle(e.to_string()))?;
        bundle.into_code()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{build_affine_design, design_to_membership};
    use crate::lrc::{construction2, decode_thm4, example1_code};
    use crate::mds::gabidulin;

    #[test]
    fn round_trip_preserves_decoding() {
        let rm = design_to_membership(&build_affine_design(2).unwrap(), 2).unwrap();
        let f = GaloisField::with_default(2, 7).unwrap().shared();
        let code = construction2(&gabidulin(f, 2, 7, 4).unwrap(), &rm, 2, 2).unwrap();
        let back = LrcCode::from_json(&code.to_json()).unwrap();
        assert_eq!(back.generator(), code.generator());
        assert_eq!(back.index_sets(), code.index_sets());
        assert_eq!(back.all_groups(), code.all_groups());
        let cw = back.encode(&[1, 2, 3, 4]).unwrap().with_erasures(&[0, 1, 2, 6, 7]);
        assert_eq!(decode_thm4(&back, &cw).unwrap().message, vec![1, 2, 3, 4]);
    }

    #[test]
    fn example_json_is_one_based() {
        let text = example1_code().to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["groups"][0]["symbol"], 1);
        assert_eq!(v["groups"][0]["repair"][0][0], 4);
        assert_eq!(v["kind"], "explicit");
    }

    #[test]
    fn malformed_rejected() {
        let mut v: serde_json::Value = serde_json::from_str(&example1_code().to_json()).unwrap();
        v["index_sets"]["global"] = serde_json::json!([4, 5, 6]);
        assert!(LrcCode::from_json(&v.to_string()).is_err());
        assert!(LrcCode::from_json("{").is_err());
    }
}
