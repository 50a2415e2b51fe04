use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use lrc_core::lrc::{
    decode_generic, decode_thm3, decode_thm4, repair_symbol, verify_availability, AvailabilityReport, Codeword,
    ConstructionKind, DecodeOutcome, DecodePath, LrcCode,
};

use super::{emit_json, join, to_json, Status};
use crate::args::{CorruptArgs, DecodeArgs, DecodeMethod, EncodeArgs, Format, Global, RepairArgs, VerifyArgs};
use crate::error::{failed, usage, CliError};
use crate::io::{load_code, parse_codeword, parse_message, read_input, write_output};

fn read_word(code: Option<&LrcCode>, input: Option<&std::path::PathBuf>) -> Result<Codeword, CliError> {
    let word = parse_codeword(&read_input(input)?)?;
    if let Some(code) = code {
        if word.len() != code.n() {
            return Err(usage(format!("word has {} symbols, code length is {}", word.len(), code.n())));
        }
    }
    Ok(word)
}

/// Converts 1-based positions to 0-based, rejecting anything outside 1..=n.
fn positions(list: &[usize], n: usize) -> Result<Vec<usize>, CliError> {
    list.iter()
        .map(|&i| {
            if i == 0 || i > n {
                Err(usage(format!("position {i} outside 1..={n}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

pub fn encode(g: &Global, a: &EncodeArgs) -> Result<Status, CliError> {
    let code = load_code(&a.code)?;
    let msg = parse_message(&read_input(a.input.as_ref())?)?;
    if msg.len() != code.k() {
        return Err(usage(format!("message has {} symbols, code dimension is {}", msg.len(), code.k())));
    }
    let word = code.encode(&msg)?;
    match g.format {
        Format::Json => emit_json(g, &json!({ "codeword": word.values() })),
        Format::Csv => write_output(g.output.as_ref(), &word.to_string().replace(' ', ",")),
        Format::Text => write_output(g.output.as_ref(), &word.to_string()),
    }?;
    Ok(Status::Ok)
}

fn describe(o: &DecodeOutcome) -> String {
    let path = match &o.path {
        DecodePath::Systematic => "systematic".to_string(),
        DecodePath::Case1 => "case 1".to_string(),
        DecodePath::Case2 { resynthesized } => format!("case 2, resynthesized classes {}", join(resynthesized)),
        DecodePath::Generic => "generic".to_string(),
    };
    let within = if o.within_guarantee { "within" } else { "beyond" };
    format!("path: {path}; {} erasures, {within} the guarantee", o.erasures)
}

pub fn decode(g: &Global, a: &DecodeArgs) -> Result<Status, CliError> {
    let code = load_code(&a.code)?;
    let mut word = read_word(Some(&code), a.input.as_ref())?;
    for i in positions(&a.erase, code.n())? {
        word.erase(i);
    }
    let structured = match (a.method, code.kind()) {
        (DecodeMethod::Generic, _) | (DecodeMethod::Auto, ConstructionKind::Explicit) => None,
        (_, ConstructionKind::Construction1) => Some(decode_thm3 as fn(&LrcCode, &Codeword) -> _),
        (_, ConstructionKind::Construction2) => Some(decode_thm4 as fn(&LrcCode, &Codeword) -> _),
        (DecodeMethod::Structured, ConstructionKind::Explicit) => {
            return Err(usage("explicit codes have no structured decoder; use --method generic"))
        }
    };
    let outcome = match structured {
        Some(f) => f(&code, &word)?,
        None => {
            let message = decode_generic(&code, &word)?;
            let erasures = word.erasure_count();
            DecodeOutcome {
                message,
                path: DecodePath::Generic,
                erasures,
                within_guarantee: code.erasure_guarantee().is_some_and(|b| erasures <= b),
            }
        }
    };
    match g.format {
        Format::Json => emit_json(g, &to_json(&outcome))?,
        Format::Csv => write_output(g.output.as_ref(), &join_u64(&outcome.message, ","))?,
        Format::Text => {
            write_output(g.output.as_ref(), &join_u64(&outcome.message, " "))?;
            eprintln!("{}", describe(&outcome));
        }
    }
    Ok(Status::Ok)
}

fn join_u64(xs: &[u64], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn corrupt(g: &Global, a: &CorruptArgs) -> Result<Status, CliError> {
    let mut word = read_word(None, a.input.as_ref())?;
    let n = word.len();
    for i in positions(&a.erase, n)? {
        word.erase(i);
    }
    if let Some(count) = a.random {
        if count > n {
            return Err(usage(format!("cannot erase {count} of {n} positions")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        for i in sample(&mut rng, n, count) {
            word.erase(i);
        }
    }
    match g.format {
        Format::Json => {
            let erased: Vec<usize> = word.erased().iter().map(|i| i + 1).collect();
            emit_json(g, &json!({ "codeword": word.to_string(), "erased": erased }))?
        }
        Format::Csv => write_output(g.output.as_ref(), &word.to_string().replace(' ', ","))?,
        Format::Text => write_output(g.output.as_ref(), &word.to_string())?,
    }
    Ok(Status::Ok)
}

pub fn repair(g: &Global, a: &RepairArgs) -> Result<Status, CliError> {
    let code = load_code(&a.code)?;
    let word = read_word(Some(&code), a.input.as_ref())?;
    let symbol = positions(&[a.symbol], code.n())?[0];
    let groups = code.groups(symbol);
    if groups.is_empty() {
        return Err(usage(format!("symbol {} has no repair groups", a.symbol)));
    }
    let group = match a.group {
        Some(j) if j == 0 || j > groups.len() => {
            return Err(usage(format!("symbol {} has groups 1..={}", a.symbol, groups.len())))
        }
        Some(j) => j - 1,
        None => groups
            .iter()
            .position(|m| m.iter().all(|&i| word.get(i).is_some()))
            .ok_or_else(|| failed(format!("group unavailable: every repair group of symbol {} has an erased member", a.symbol)))?,
    };
    let value = repair_symbol(&code, &word, symbol, group)?;
    let members: Vec<usize> = groups[group].iter().map(|i| i + 1).collect();
    match g.format {
        Format::Json => emit_json(
            g,
            &json!({ "symbol": a.symbol, "value": value, "group": group + 1, "members": members }),
        )?,
        Format::Csv => write_output(g.output.as_ref(), &format!("symbol,value,group\n{},{value},{}", a.symbol, group + 1))?,
        Format::Text => write_output(
            g.output.as_ref(),
            &format!("symbol {} = {value} (group {}: {})", a.symbol, group + 1, join(&members)),
        )?,
    }
    Ok(Status::Ok)
}

fn verify_text(rep: &AvailabilityReport, code: &LrcCode) -> String {
    let p = code.params();
    let mut out = format!(
        "(n, k, r, t) = ({}, {}, {}, {}): t achieved {}, largest group {}, all-symbol locality: {}",
        p.n,
        p.k,
        p.r,
        p.t,
        rep.t_achieved,
        rep.max_group_size,
        if rep.all_symbol { "yes" } else { "no" }
    );
    if rep.ok() {
        out.push_str("\nall groups verified");
    }
    for f in &rep.failures {
        out.push_str(&format!("\n  {}", serde_json::to_string(f).expect("failure serializes")));
    }
    out
}

pub fn verify(g: &Global, a: &VerifyArgs) -> Result<Status, CliError> {
    let code = load_code(&a.code)?;
    let rep = verify_availability(&code);
    match g.format {
        Format::Json => emit_json(g, &to_json(&rep))?,
        _ => write_output(g.output.as_ref(), &verify_text(&rep, &code))?,
    }
    if !rep.ok() {
        return Err(failed(format!("{} availability failures", rep.failures.len())));
    }
    Ok(Status::Ok)
}
