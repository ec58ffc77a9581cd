use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Compact JSON, or a two-column `key value` listing of the same data.
pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => v.to_string(),
        Format::Table => match v {
            Value::Object(map) => {
                let width = map.keys().map(String::len).max().unwrap_or(0);
                map.iter().map(|(k, x)| format!("{k:<width$}  {}", cell(x))).collect::<Vec<_>>().join("\n")
            }
            Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join("\n"),
            other => cell(other),
        },
    }
}
