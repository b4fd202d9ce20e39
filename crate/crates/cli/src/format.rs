//! Instance file parsing and emission.
//!
//! Two input formats are accepted:
//!
//! * structured JSON: `{"machines": 3, "processing_times": [9, 8, 7]}`
//! * plain text: first line the machine count, second line the
//!   whitespace-separated processing times
//!
//! Emission always uses the text form, and `parse(emit(inst))` returns the
//! identical instance.

use std::fmt;
use std::path::Path;

use flowspan_core::Instance;
use serde::Deserialize;

#[derive(Debug)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    machines: usize,
    processing_times: Vec<u64>,
}

pub fn parse_instance_file(path: &Path) -> Result<Instance, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError(format!("{}: {e}", path.display())))?;
    parse_instance_str(&text).map_err(|e| ParseError(format!("{}: {e}", path.display())))
}

pub fn parse_instance_str(text: &str) -> Result<Instance, ParseError> {
    let inst = if text.trim_start().starts_with('{') {
        let file: InstanceFile = serde_json::from_str(text)
            .map_err(|e| ParseError(format!("invalid JSON instance: {e}")))?;
        Instance::normalize(file.machines, &file.processing_times)
            .map_err(|e| ParseError(e.to_string()))?
    } else {
        parse_text(text)?
    };
    Ok(inst)
}

fn parse_text(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text.lines().enumerate();
    let (line_no, machines_line) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| ParseError("empty instance file".into()))?;
    let machines: usize = machines_line.trim().parse().map_err(|_| {
        ParseError(format!(
            "line {}: invalid machine count {:?}",
            line_no + 1,
            machines_line.trim()
        ))
    })?;
    let mut times = Vec::new();
    for (line_no, line) in lines {
        for token in line.split_whitespace() {
            let t: u64 = token.parse().map_err(|_| {
                ParseError(format!(
                    "line {}: invalid processing time {token:?} (nonnegative integer required)",
                    line_no + 1
                ))
            })?;
            times.push(t);
        }
    }
    Instance::normalize(machines, &times).map_err(|e| ParseError(e.to_string()))
}

/// Text form: machine count, then one line of processing times.
pub fn emit_instance(inst: &Instance) -> String {
    let times: Vec<String> = inst.times().iter().map(u64::to_string).collect();
    format!("{}\n{}\n", inst.machines(), times.join(" "))
}
