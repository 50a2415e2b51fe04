mod analyze;
mod codec;
mod construct;
mod design;

use crate::args::{Command, Global};
use crate::error::{failed, CliError};
use crate::io::write_output;

/// Successful outcomes that still need a distinct exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A distance result is a bound rather than an exhaustive certificate.
    NonExhaustive,
}

pub fn dispatch(g: &Global, cmd: &Command) -> Result<Status, CliError> {
    match cmd {
        Command::Design(a) => design::run(g, a),
        Command::Construct(a) => construct::run(g, a),
        Command::Encode(a) => codec::encode(g, a),
        Command::Decode(a) => codec::decode(g, a),
        Command::Corrupt(a) => codec::corrupt(g, a),
        Command::Repair(a) => codec::repair(g, a),
        Command::Analyze(a) => analyze::run(g, a),
        Command::Verify(a) => codec::verify(g, a),
    }
}

pub(crate) fn emit_json(g: &Global, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| failed(e.to_string()))?;
    write_output(g.output.as_ref(), &text)
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report serializes")
}

pub(crate) fn join(xs: &[usize]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
