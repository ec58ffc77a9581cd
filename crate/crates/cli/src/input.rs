use std::io::Read;
use std::path::Path;

use serde_json::Value;

use filliform_core::algebra::{Laurent, LaurentMatrix};
use filliform_core::doc::{FormDoc, KnotDoc, LinkDoc};
use filliform_core::lattice::{standard, Form, StandardName};
use filliform_core::ledger::{builtin, ManifoldClass};
use filliform_core::surgery::{FramedLink, KnotInPresentation};
use filliform_core::Error;

pub enum CliError {
    Domain(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

fn parse_err(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Domain(Error::Parse(format!("{what}: {e}")))
}

/// Reads JSON from a path, or from stdin when `src` is `-`.
pub fn read_json(src: &str) -> Result<Value, CliError> {
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(src).map_err(|e| CliError::Io(format!("{src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| parse_err(src, e))
}

fn is_file_arg(s: &str) -> bool {
    s == "-" || Path::new(s).is_file()
}

/// A form from `--standard NAME`, or from INPUT which is a path, `-`, or a
/// standard name.
pub fn read_form(input: Option<&str>, name: Option<&str>, sign: i8) -> Result<Form, CliError> {
    match (input, name) {
        (Some(_), Some(_)) => Err(Error::Parse("give either INPUT or --standard, not both".into()).into()),
        (None, Some(n)) => Ok(standard::standard_by_name(&n.parse::<StandardName>()?, sign)?),
        (Some(src), None) if is_file_arg(src) => {
            let doc: FormDoc = serde_json::from_value(read_json(src)?).map_err(|e| parse_err(src, e))?;
            Ok(doc.to_form()?)
        }
        (Some(src), None) => match src.parse::<StandardName>() {
            Ok(n) => Ok(standard::standard_by_name(&n, sign)?),
            Err(_) => Err(CliError::Io(format!("{src}: no such file or standard form"))),
        },
        (None, None) => Err(Error::Parse("a form is required: INPUT or --standard".into()).into()),
    }
}

pub fn read_link(src: &str) -> Result<FramedLink, CliError> {
    let v = read_json(src)?;
    let doc: LinkDoc = serde_json::from_value(v).map_err(|e| parse_err(src, e))?;
    Ok(doc.to_link()?)
}

pub fn read_knot(src: &str) -> Result<KnotInPresentation, CliError> {
    let v = read_json(src)?;
    let doc: KnotDoc = serde_json::from_value(v).map_err(|e| parse_err(src, e))?;
    Ok(doc.to_knot(None)?)
}

/// A ledger entry: a built-in name (`Sigma3xS1`, `poincare`, ...) or a
/// manifold document.
pub fn read_manifold(src: &str) -> Result<ManifoldClass, CliError> {
    if is_file_arg(src) {
        return Ok(ManifoldClass::from_json(&read_json(src)?)?);
    }
    Ok(builtin(src, &[])?)
}

fn matrix_from_value(v: &Value) -> Result<LaurentMatrix, CliError> {
    let v = v.get("matrix").unwrap_or(v);
    let rows = v.as_array().ok_or_else(|| parse_err("matrix", "expected an array of rows"))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("matrix", "rows must be arrays"))?
                .iter()
                .map(|e| match e {
                    Value::String(s) => Ok(Laurent::parse(s)?),
                    Value::Number(n) => Ok(Laurent::parse(&n.to_string())?),
                    other => Err(parse_err("matrix", format!("unexpected entry {other}"))),
                })
                .collect::<Result<Vec<_>, CliError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LaurentMatrix::from_rows(parsed)?)
}

pub fn read_laurent_matrix(input: Option<&str>, inline: Option<&str>) -> Result<LaurentMatrix, CliError> {
    match (input, inline) {
        (Some(src), None) => matrix_from_value(&read_json(src)?),
        (None, Some(text)) => matrix_from_value(&serde_json::from_str(text).map_err(|e| parse_err("--matrix", e))?),
        _ => Err(Error::Parse("give exactly one of INPUT or --matrix".into()).into()),
    }
}
