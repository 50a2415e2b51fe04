use lrc_core::analysis::bound_thm1;
use lrc_core::gf::{FieldSpec, GaloisField};
use lrc_core::lrc::{construction1, construction2, example1_code, LrcCode};
use lrc_core::mds::{gabidulin, systematic_rs};

use super::Status;
use crate::args::{ConstructArgs, ConstructKind, Format, Global};
use crate::error::{usage, CliError};
use crate::io::{load_membership, parse_field, write_output};

/// Smallest binary field with at least `points` elements.
fn smallest_binary(points: usize) -> Result<FieldSpec, CliError> {
    let m = (1..=63u32)
        .find(|&m| (1u64 << m) >= points as u64)
        .ok_or_else(|| usage("code too long for a binary field"))?;
    Ok(FieldSpec::with_default(2, m)?)
}

fn build(g: &Global, a: &ConstructArgs) -> Result<LrcCode, CliError> {
    if a.kind == ConstructKind::Example1 {
        return Ok(example1_code());
    }
    let path = a.membership.as_ref().ok_or_else(|| usage("--R is required"))?;
    let big_n = a.big_n.ok_or_else(|| usage("--N is required"))?;
    let rm = load_membership(path)?;
    let k = a.k.unwrap_or(rm.k());
    let r = a.r.unwrap_or(rm.max_column_weight());
    let t = a.t.unwrap_or(rm.class_count());
    if t == 0 || k == 0 || r == 0 {
        return Err(usage("k, r and t must be positive"));
    }
    if big_n < k {
        return Err(usage(format!("N = {big_n} is smaller than k = {k}")));
    }
    let code = match a.kind {
        ConstructKind::C1 => {
            let spec = match &g.field {
                Some(s) => parse_field(s)?,
                None => smallest_binary(big_n + t)?,
            };
            let field = GaloisField::new(spec)?.shared();
            construction1(&systematic_rs(field, big_n + t, k)?, &rm, r, t)?
        }
        ConstructKind::C2 => {
            let len = big_n + t - 1;
            let spec = match &g.field {
                Some(s) => parse_field(s)?,
                None => FieldSpec::with_default(2, len as u32)?,
            };
            let base_q = a.base_q.unwrap_or(spec.p);
            let field = GaloisField::new(spec)?.shared();
            construction2(&gabidulin(field, base_q, len, k)?, &rm, r, t)?
        }
        ConstructKind::Example1 => unreachable!(),
    };
    Ok(code)
}

pub fn run(g: &Global, a: &ConstructArgs) -> Result<Status, CliError> {
    let code = build(g, a)?;
    let p = code.params();
    let bound = bound_thm1(p.n, p.k, p.r, p.t);
    let summary = match g.format {
        Format::Json => serde_json::json!({
            "n": p.n, "k": p.k, "r": p.r, "t": p.t,
            "rate": p.k as f64 / p.n as f64,
            "bound_thm1": bound,
            "field": code.field().to_string(),
        })
        .to_string(),
        Format::Csv => format!("n,k,r,t,rate,bound_thm1\n{},{},{},{},{:.6},{bound}", p.n, p.k, p.r, p.t, p.k as f64 / p.n as f64),
        Format::Text => format!(
            "(n, k, r, t) = ({}, {}, {}, {}) over {}, rate {}/{} = {:.4}, bound_thm1 = {bound}",
            p.n,
            p.k,
            p.r,
            p.t,
            code.field(),
            p.k,
            p.n,
            p.k as f64 / p.n as f64
        ),
    };
    write_output(g.output.as_ref(), &code.to_json())?;
    if g.output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(Status::Ok)
}
