use lrc_core::designs::{
    build_affine_design, build_affine_design_over, build_kirkman15, build_zigzag_membership, check_assumption1,
    design_to_membership, Assumption1Report, MembershipMatrix, ZigzagSpec,
};
use lrc_core::gf::GaloisField;

use super::{emit_json, Status};
use crate::args::{DesignArgs, DesignKind, Format, Global};
use crate::error::{failed, usage, CliError};
use crate::io::parse_field;

fn report_text(rep: &Assumption1Report, m: &MembershipMatrix) -> String {
    let mut out = format!(
        "k = {}, r = {}, t = {}, {} columns in {} classes: {}",
        rep.k,
        rep.r,
        rep.t,
        m.column_count(),
        m.class_count(),
        if rep.conformant { "conformant" } else { "NOT conformant" }
    );
    for v in &rep.violations {
        out.push_str(&format!("\n  {}", serde_json::to_string(v).expect("violation serializes")));
    }
    out
}

pub fn run(g: &Global, a: &DesignArgs) -> Result<Status, CliError> {
    let (json, membership, r) = match a.kind {
        DesignKind::Kirkman15 | DesignKind::Affine => {
            let design = if a.kind == DesignKind::Kirkman15 {
                build_kirkman15()
            } else if let Some(spec) = &g.field {
                let field = GaloisField::new(parse_field(spec)?)?;
                if a.q.is_some_and(|q| q != field.order()) {
                    return Err(usage(format!("--q {} does not match field order {}", a.q.unwrap(), field.order())));
                }
                build_affine_design_over(&field)
            } else {
                build_affine_design(a.q.ok_or_else(|| usage("affine design needs --q"))?)?
            };
            match a.t {
                Some(t) => {
                    let m = design_to_membership(&design, t)?;
                    (serde_json::to_value(&m), m, design.r())
                }
                None => (serde_json::to_value(&design), design.as_membership(), design.r()),
            }
        }
        DesignKind::Zigzag => {
            let r = a.r.ok_or_else(|| usage("zigzag needs --r"))?;
            let t = a.t.ok_or_else(|| usage("zigzag needs --t"))?;
            let m = build_zigzag_membership(ZigzagSpec::new(r, t)?)?;
            (serde_json::to_value(&m), m, r)
        }
    };
    let json = json.map_err(|e| failed(e.to_string()))?;
    emit_json(g, &json)?;
    if a.check {
        let r = a.r.unwrap_or(r);
        let rep = check_assumption1(&membership, membership.k(), r, membership.class_count())?;
        match g.format {
            Format::Json => eprintln!("{}", serde_json::to_string_pretty(&rep).expect("report serializes")),
            _ => eprintln!("{}", report_text(&rep, &membership)),
        }
        if !rep.conformant {
            return Err(failed("membership matrix fails the construction requirements"));
        }
    }
    Ok(Status::Ok)
}
