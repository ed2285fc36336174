//! Implementation of the `matpatch` command line: input loading, dispatch
//! and self-checked JSON output.

pub mod args;
mod commands;

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use matpatch_core::wire::SpecJson;
use matpatch_core::{Base, RingElem, RingSpec};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

pub use args::{Cli, Format};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input documents; exit code 2.
    Usage(String),
    /// The computation rejected its input; exit code 1.
    Domain(matpatch_core::Error),
}

impl From<matpatch_core::Error> for CliError {
    fn from(e: matpatch_core::Error) -> Self {
        CliError::Domain(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Named identities recomputed from the output.
#[derive(Default, Debug)]
pub struct Checks(BTreeMap<String, bool>);

impl Checks {
    pub fn add(&mut self, name: &str, ok: bool) -> &mut Self {
        self.0.insert(name.to_string(), ok);
        self
    }

    pub fn all_pass(&self) -> bool {
        self.0.values().all(|&v| v)
    }

    fn to_value(&self) -> Value {
        Value::Object(self.0.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect())
    }
}

/// A result document; `checks` is inserted when rendering.
pub struct Report {
    pub fields: serde_json::Map<String, Value>,
    pub checks: Checks,
}

impl Report {
    pub fn new() -> Report {
        Report {
            fields: serde_json::Map::new(),
            checks: Checks::default(),
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), v.into());
        self
    }

    pub fn json(&self) -> Value {
        let mut m = self.fields.clone();
        m.insert("checks".into(), self.checks.to_value());
        Value::Object(m)
    }
}

impl Default for Report {
    fn default() -> Self {
        Report::new()
    }
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    commands::dispatch(&cli.command)
}

/// Renders the outcome and returns the exit code.
pub fn render(format: Format, outcome: &CliResult<Report>) -> (String, i32) {
    match outcome {
        Ok(report) => {
            let code = if report.checks.all_pass() { 0 } else { 1 };
            (format_value(format, &report.json()), code)
        }
        Err(CliError::Domain(e)) => {
            let v = serde_json::json!({"error": {"code": e.code(), "message": e.to_string()}});
            (format_value(format, &v), 1)
        }
        Err(CliError::Usage(msg)) => (format!("error: {msg}"), 2),
    }
}

fn format_value(format: Format, v: &Value) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("serializable"),
        Format::Text => {
            let mut out = Vec::new();
            text_lines(v, "", &mut out);
            out.join("\n")
        }
    }
}

fn text_lines(v: &Value, prefix: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(x, &key, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        other => out.push(format!("{prefix}: {other}")),
    }
}

/// Inline JSON, or the contents of a file.
pub fn load(arg: &str) -> CliResult<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') {
        return Ok(arg.to_string());
    }
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")));
    }
    Err(CliError::Usage(format!("`{arg}` is neither inline JSON nor a readable file")))
}

pub fn doc<T: DeserializeOwned>(arg: &str) -> CliResult<T> {
    let src = load(arg)?;
    serde_json::from_str(&src).map_err(|e| CliError::Usage(format!("invalid document: {e}")))
}

#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum RingDoc {
    Short(String),
    Full(SpecJson),
}

impl RingDoc {
    pub(crate) fn build(&self) -> CliResult<Arc<RingSpec>> {
        match self {
            RingDoc::Short(s) => parse_ring_shorthand(s),
            RingDoc::Full(j) => Ok(j.build()?),
        }
    }
}

/// `BASE` or `BASE[v1,...]`.
pub fn parse_ring_shorthand(s: &str) -> CliResult<Arc<RingSpec>> {
    let s = s.trim();
    let (base, vars) = match s.find('[') {
        Some(i) => {
            let inner = s[i + 1..]
                .strip_suffix(']')
                .ok_or_else(|| CliError::Usage(format!("unterminated variable list in `{s}`")))?;
            let vars: Vec<&str> = inner.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
            (&s[..i], vars)
        }
        None => (s, Vec::new()),
    };
    Ok(RingSpec::builder(Base::parse(base.trim())?, &vars).build()?)
}

/// A ring argument: JSON spec (inline or file) or shorthand.
pub fn ring(arg: &str) -> CliResult<Arc<RingSpec>> {
    let t = arg.trim_start();
    if t.starts_with('{') || Path::new(arg).is_file() {
        let j: SpecJson = doc(arg)?;
        return Ok(j.build()?);
    }
    parse_ring_shorthand(arg)
}

/// Parses an expression to its normal form.
pub fn parse_poly(src: &str, spec: &Arc<RingSpec>) -> matpatch_core::Result<RingElem> {
    RingElem::parse(spec, src)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_rings() {
        let r = parse_ring_shorthand("Z/6[a, x]").unwrap();
        assert_eq!(r.vars(), ["a", "x"]);
        assert_eq!(*r.base(), Base::ModN(6));
        assert_eq!(parse_ring_shorthand("Q").unwrap().nvars(), 0);
        assert!(parse_ring_shorthand("Z[a").is_err());
    }

    #[test]
    fn parse_print_fixed_point() {
        let spec = parse_ring_shorthand("Z[a,x,y]").unwrap();
        assert!(parse_poly("0", &spec).unwrap().is_zero());
        let e = parse_poly("x*y - a^2", &spec).unwrap();
        assert_eq!(e.to_string(), "-a^2 + x*y");
        assert_eq!(parse_poly("-a^2 + x*y", &spec).unwrap(), e);
        let e = parse_poly("1 + a*x^2", &spec).unwrap();
        assert_eq!(parse_poly(&e.to_string(), &spec).unwrap(), e);
    }
}
