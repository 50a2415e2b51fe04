use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use lrc_core::designs::{MembershipMatrix, ResolvableDesign};
use lrc_core::gf::FieldSpec;
use lrc_core::lrc::{Codeword, LrcCode};

use crate::error::{failed, usage, CliError};

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// File contents, or all of stdin.
pub fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => read_file(p),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| failed(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

/// Writes `text` (plus a trailing newline) to `path` or stdout.
pub fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match path {
        Some(p) => fs::write(p, body).map_err(|e| failed(format!("cannot write {}: {e}", p.display()))),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| failed(format!("cannot write stdout: {e}"))),
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = 0;
    let mut v = q;
    while v.is_multiple_of(p) {
        v /= p;
        m += 1;
    }
    (v == 1).then_some((p, m))
}

/// `p^m`, `GF(p^m)`, `GF(q)`, a bare order `q`, or a path to a JSON spec.
pub fn parse_field(s: &str) -> Result<FieldSpec, CliError> {
    let path = Path::new(s);
    if path.is_file() {
        return serde_json::from_str(&read_file(path)?).map_err(|e| usage(format!("bad field spec {s}: {e}")));
    }
    let inner = s
        .trim()
        .strip_prefix("GF(")
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(s.trim());
    let bad = || usage(format!("cannot parse field {s:?}; expected p^m, GF(p^m), an order, or a spec file"));
    let (p, m) = match inner.split_once('^') {
        Some((p, m)) => (p.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?),
        None => prime_power(inner.parse().map_err(|_| bad())?).ok_or_else(|| usage(format!("{inner} is not a prime power")))?,
    };
    Ok(FieldSpec::with_default(p, m)?)
}

/// `a..b` or `a..=b` (both inclusive), `a,b,c`, or a single value.
pub fn parse_range(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || usage(format!("cannot parse range {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

pub fn parse_message(text: &str) -> Result<Vec<u64>, CliError> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| usage(format!("bad message symbol {t:?}"))))
        .collect()
}

pub fn parse_codeword(text: &str) -> Result<Codeword, CliError> {
    text.parse().map_err(|e| usage(format!("{e}")))
}

pub fn load_code(path: &Path) -> Result<LrcCode, CliError> {
    Ok(LrcCode::from_json(&read_file(path)?)?)
}

/// A membership matrix file, or a design file (all of its classes).
pub fn load_membership(path: &Path) -> Result<MembershipMatrix, CliError> {
    let text = read_file(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if value.get("lambda").is_some() {
        let d: ResolvableDesign =
            serde_json::from_value(value).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        Ok(d.as_membership())
    } else {
        serde_json::from_value(value).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Deserialize)]
pub struct GroupEntry {
    pub symbol: usize,
    pub repair: Vec<Vec<usize>>,
}

/// An explicit codebook with 1-based repair groups.
#[derive(Debug, Deserialize)]
pub struct CodebookFile {
    pub q: u64,
    pub k: usize,
    pub r: usize,
    pub t: usize,
    pub words: Vec<Vec<u64>>,
    pub groups: Vec<GroupEntry>,
}

impl CodebookFile {
    /// 0-based groups indexed by symbol.
    pub fn groups(&self) -> Result<Vec<Vec<Vec<usize>>>, CliError> {
        let n = self.words.first().map_or(0, Vec::len);
        let mut out = vec![Vec::new(); n];
        for g in &self.groups {
            let check = |i: usize| {
                if i == 0 || i > n {
                    Err(usage(format!("codebook index {i} outside 1..={n}")))
                } else {
                    Ok(i - 1)
                }
            };
            let s = check(g.symbol)?;
            out[s] = g
                .repair
                .iter()
                .map(|m| m.iter().map(|&i| check(i)).collect())
                .collect::<Result<_, _>>()?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_forms() {
        assert_eq!(parse_field("2^5").unwrap().m, 5);
        assert_eq!(parse_field("GF(3^2)").unwrap().p, 3);
        assert_eq!(parse_field("GF(16)").unwrap().m, 4);
        assert_eq!(parse_field("7").unwrap().m, 1);
        assert!(parse_field("6").is_err());
        assert!(parse_field("x").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_range("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_range("2,5").unwrap(), vec![2, 5]);
        assert_eq!(parse_range("3").unwrap(), vec![3]);
        assert!(parse_range("4..2").is_err());
    }
}
