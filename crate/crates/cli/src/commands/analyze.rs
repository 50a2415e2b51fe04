use serde_json::{json, Map, Value};

use lrc_core::analysis::{
    asymptotic_report, bound_lemma1, bound_thm1, bound_thm2, dmin_exact, singleton, subcode_bound, AsymptoticRow,
    Codebook, DistanceReport, DminMode, DminOptions, Family, SubcodeTrace,
};
use lrc_core::lrc::LrcCode;

use super::{emit_json, join, to_json, Status};
use crate::args::{AnalyzeArgs, FamilyArg, Format, Global, ModeArg};
use crate::error::{usage, CliError};
use crate::io::{load_code, parse_range, read_file, write_output, CodebookFile};

/// One section of the report in every output format.
struct Section {
    name: &'static str,
    json: Value,
    text: String,
    csv: String,
}

fn single(s: &Option<String>, what: &str) -> Result<Option<usize>, CliError> {
    match s {
        None => Ok(None),
        Some(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| usage(format!("--{what} must be a single value here, got {s:?}"))),
    }
}

fn bounds(a: &AnalyzeArgs, code: Option<&LrcCode>) -> Result<Section, CliError> {
    let (n, k, r, t) = match code {
        Some(c) => {
            let p = c.params();
            (p.n, p.k, p.r, p.t)
        }
        None => {
            let need = |v: Option<usize>, f: &str| v.ok_or_else(|| usage(format!("--bounds needs --code or --{f}")));
            (
                need(a.n, "n")?,
                need(a.k, "k")?,
                need(single(&a.r, "r")?, "r")?,
                need(a.t, "t")?,
            )
        }
    };
    if n < k || k == 0 || r == 0 || t == 0 {
        return Err(usage("bounds need n >= k >= 1 and r, t >= 1"));
    }
    let vals = [
        ("lemma1", bound_lemma1(k, r, t)),
        ("thm1", bound_thm1(n, k, r, t)),
        ("thm2", bound_thm2(n, k, r, t)),
        ("singleton", singleton(n, k)),
    ];
    let mut text = format!("(n, k, r, t) = ({n}, {k}, {r}, {t})");
    let mut csv = "n,k,r,t,lemma1,thm1,thm2,singleton".to_string();
    csv.push_str(&format!("\n{n},{k},{r},{t}"));
    let mut obj = Map::new();
    for key in ["n", "k", "r", "t"] {
        let v = match key {
            "n" => n,
            "k" => k,
            "r" => r,
            _ => t,
        };
        obj.insert(key.into(), json!(v));
    }
    for (name, v) in vals {
        text.push_str(&format!("\n{name:<10} {v}"));
        csv.push_str(&format!(",{v}"));
        obj.insert(name.into(), json!(v));
    }
    Ok(Section {
        name: "bounds",
        json: Value::Object(obj),
        text,
        csv,
    })
}

fn dmin_text(d: &DistanceReport) -> String {
    let method = to_json(&d.method);
    let method = method.as_str().unwrap_or_default();
    let head = match d.d_min {
        Some(v) => format!("d_min = {v}"),
        None => format!("{} <= d_min <= {}", d.lower_bound, d.upper_bound),
    };
    let mut out = format!(
        "{head} ({method}, {}, {} checks)",
        if d.exhaustive { "exhaustive" } else { "NOT exhaustive" },
        d.checks
    );
    let opt = |b: Option<i64>| b.map_or("n/a".to_string(), |v| v.to_string());
    out.push_str(&format!(
        "\nbounds: thm1 {}, thm2 {}, singleton {}; thm1 applies: {}",
        opt(d.bound_thm1),
        opt(d.bound_thm2),
        d.singleton,
        if d.thm1_applicable { "yes" } else { "no" }
    ));
    let yn = |b: Option<bool>| b.map_or("n/a", |v| if v { "yes" } else { "no" });
    out.push_str(&format!("\noptimal: thm1 {}, thm2 {}", yn(d.optimal_thm1), yn(d.optimal_thm2)));
    if let Some(w) = &d.witness {
        out.push_str(&format!(
            "\nwitness: weight {} on {}; unresolved erasure set of size {}",
            w.weight,
            join(&w.support),
            w.non_reconstructing.len()
        ));
    }
    out
}

fn dmin(g: &Global, a: &AnalyzeArgs, code: &LrcCode) -> Result<(Section, bool), CliError> {
    let opts = DminOptions {
        mode: match a.mode {
            ModeArg::Auto => DminMode::Auto,
            ModeArg::WeightEnum => DminMode::WeightEnum,
            ModeArg::ErasureRank => DminMode::ErasureRank,
        },
        budget: g.budget,
        parallel: g.parallel != Some(1),
        seed: g.seed,
    };
    let d = dmin_exact(code, &opts)?;
    let csv = format!(
        "n,k,d_min,lower,upper,method,exhaustive,checks\n{},{},{},{},{},{},{},{}",
        d.n,
        d.k,
        d.d_min.map_or(String::new(), |v| v.to_string()),
        d.lower_bound,
        d.upper_bound,
        to_json(&d.method).as_str().unwrap_or_default(),
        d.exhaustive,
        d.checks
    );
    Ok((
        Section {
            name: "dmin",
            json: to_json(&d),
            text: dmin_text(&d),
            csv,
        },
        d.exhaustive,
    ))
}

fn subcode_text(tr: &SubcodeTrace) -> String {
    let mut out = format!("(n, k, r, t) = ({}, {}, {}, {}) over q = {}", tr.n, tr.k, tr.r, tr.t, tr.q);
    for s in &tr.steps {
        out.push_str(&format!(
            "\nstep {}: i = {}, |A| = {}, |C| {} -> {}",
            s.j, s.i, s.a_size, s.size_before, s.size_after
        ));
    }
    out.push_str(&format!(
        "\nell = {} (lower {}), termination {}, |C'| = {}, punctured length {}, implied bound {}",
        tr.ell,
        tr.ell_lower,
        to_json(&tr.termination).as_str().unwrap_or_default(),
        tr.subcode_size,
        tr.punctured_length,
        tr.implied_bound
    ));
    out.push_str(&format!("\ninvariants: {}", if tr.invariants_hold() { "hold" } else { "VIOLATED" }));
    out
}

fn subcode(a: &AnalyzeArgs, code: Option<&LrcCode>) -> Result<Section, CliError> {
    let tr = match (code, &a.codebook) {
        (_, Some(path)) => {
            let file: CodebookFile =
                serde_json::from_str(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let groups = file.groups()?;
            let cb = Codebook::new(file.q, file.k, file.words)?;
            subcode_bound(&cb, &groups, file.r, file.t)?
        }
        (Some(c), None) => {
            let p = c.params();
            subcode_bound(&Codebook::from_code(c)?, c.all_groups(), p.r, p.t)?
        }
        (None, None) => return Err(usage("--subcode needs --code or --codebook")),
    };
    let csv = format!(
        "ell,ell_lower,subcode_size,punctured_length,implied_bound,invariants\n{},{},{},{},{},{}",
        tr.ell,
        tr.ell_lower,
        tr.subcode_size,
        tr.punctured_length,
        tr.implied_bound,
        tr.invariants_hold()
    );
    Ok(Section {
        name: "subcode",
        json: to_json(&tr),
        text: subcode_text(&tr),
        csv,
    })
}

fn asymptotics(a: &AnalyzeArgs) -> Result<Section, CliError> {
    let family = a.family.ok_or_else(|| usage("--asymptotics needs --family"))?;
    let t = a.t.unwrap_or(2);
    let (family, params) = match family {
        FamilyArg::Zigzag => (Family::Zigzag, parse_range(a.r.as_deref().unwrap_or("2..4"))?),
        FamilyArg::Affine => (Family::Affine, parse_range(a.q.as_deref().unwrap_or("3,4,5,7"))?),
    };
    let (rows, increasing) = asymptotic_report(family, t, &params)?;
    let line = |r: &AsymptoticRow, sep: &str| {
        [
            r.n.to_string(),
            r.k.to_string(),
            r.r.to_string(),
            r.t.to_string(),
            r.rate.to_string(),
            r.bound_thm1.to_string(),
            r.mds_distance.to_string(),
            r.ratio.to_string(),
            format!("{:.6}", r.ratio.value()),
        ]
        .join(sep)
    };
    let header = ["n", "k", "r", "t", "rate", "bound_thm1", "mds_distance", "ratio", "ratio_value"];
    let mut csv = header.join(",");
    let mut text = header.map(|h| format!("{h:>14}")).concat();
    for r in &rows {
        csv.push('\n');
        csv.push_str(&line(r, ","));
        text.push('\n');
        text.push_str(&line(r, "\t").split('\t').map(|c| format!("{c:>14}")).collect::<String>());
    }
    text.push_str(&format!("\nratio strictly increasing: {}", if increasing { "yes" } else { "no" }));
    Ok(Section {
        name: "asymptotics",
        json: json!({ "rows": rows, "increasing": increasing }),
        text,
        csv,
    })
}

pub fn run(g: &Global, a: &AnalyzeArgs) -> Result<Status, CliError> {
    let code = a.code.as_ref().map(|p| load_code(p)).transpose()?;
    let mut sections = Vec::new();
    let mut status = Status::Ok;
    if a.bounds {
        sections.push(bounds(a, code.as_ref())?);
    }
    if a.dmin {
        let c = code.as_ref().ok_or_else(|| usage("--dmin needs --code"))?;
        let (s, exhaustive) = dmin(g, a, c)?;
        if !exhaustive {
            status = Status::NonExhaustive;
        }
        sections.push(s);
    }
    if a.subcode {
        sections.push(subcode(a, code.as_ref())?);
    }
    if a.asymptotics {
        sections.push(asymptotics(a)?);
    }
    match g.format {
        Format::Json if sections.len() == 1 => emit_json(g, &sections[0].json)?,
        Format::Json => {
            let obj: Map<String, Value> = sections.iter().map(|s| (s.name.to_string(), s.json.clone())).collect();
            emit_json(g, &Value::Object(obj))?
        }
        Format::Csv => {
            let body: Vec<&str> = sections.iter().map(|s| s.csv.as_str()).collect();
            write_output(g.output.as_ref(), &body.join("\n\n"))?
        }
        Format::Text if sections.len() == 1 => write_output(g.output.as_ref(), &sections[0].text)?,
        Format::Text => {
            let body: Vec<String> = sections.iter().map(|s| format!("[{}]\n{}", s.name, s.text)).collect();
            write_output(g.output.as_ref(), &body.join("\n\n"))?
        }
    }
    Ok(status)
}
