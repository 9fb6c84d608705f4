//! Writers and readers for the CLI's file formats.
//!
//! CSV files carry a `# key = value` metadata block, one header row, then
//! data rows; JSON files carry the same metadata as a string map next to
//! the payload. Floats are printed with shortest-round-trip formatting, so
//! reading a file back recovers every value bit for bit.

use std::fmt::Write as _;

/// Parsed (or about-to-be-written) tabular artifact.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Document {
    /// First metadata value under `key`.
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// All metadata values under `key` (repeated keys are allowed, e.g.
    /// one line per failed sweep row).
    pub fn meta_all<'a>(&'a self, key: &str) -> Vec<&'a str> {
        self.metadata
            .iter()
            .filter(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .collect()
    }

    /// Column index for a header name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Parse one column as floats.
    pub fn f64_column(&self, name: &str) -> Result<Vec<f64>, String> {
        let idx = self
            .column(name)
            .ok_or_else(|| format!("no column named {name:?}"))?;
        self.rows
            .iter()
            .map(|row| {
                row.get(idx)
                    .ok_or_else(|| format!("short row, wanted column {name:?}"))
                    .and_then(|cell| {
                        cell.parse::<f64>()
                            .map_err(|_| format!("bad float {cell:?} in column {name:?}"))
                    })
            })
            .collect()
    }
}

/// Shortest representation that parses back to the identical f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

pub fn render_csv(doc: &Document) -> String {
    let mut out = String::new();
    for (key, value) in &doc.metadata {
        let _ = writeln!(out, "# {key} = {value}");
    }
    let _ = writeln!(out, "{}", doc.header.join(","));
    for row in &doc.rows {
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Document, String> {
    let mut metadata = Vec::new();
    let mut header: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for line in text.lines() {
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# ") {
            let (key, value) = rest
                .split_once(" = ")
                .ok_or_else(|| format!("malformed metadata line {line:?}"))?;
            metadata.push((key.to_string(), value.to_string()));
            continue;
        }
        let cells: Vec<String> = line.split(',').map(str::to_string).collect();
        match &header {
            None => header = Some(cells),
            Some(h) => {
                if cells.len() != h.len() {
                    return Err(format!(
                        "row has {} cells, header has {}",
                        cells.len(),
                        h.len()
                    ));
                }
                rows.push(cells);
            }
        }
    }
    Ok(Document {
        metadata,
        header: header.ok_or("missing header row")?,
        rows,
    })
}

/// Metadata pairs as a JSON string map (BTreeMap ordering, deterministic).
pub fn metadata_json(metadata: &[(String, String)]) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (key, value) in metadata {
        // Repeated keys collapse into an array, preserving order.
        match map.get_mut(key.as_str()) {
            None => {
                map.insert(key.clone(), serde_json::Value::String(value.clone()));
            }
            Some(serde_json::Value::Array(items)) => {
                items.push(serde_json::Value::String(value.clone()));
            }
            Some(existing) => {
                let first = existing.take();
                *existing = serde_json::Value::Array(vec![
                    first,
                    serde_json::Value::String(value.clone()),
                ]);
            }
        }
    }
    serde_json::Value::Object(map)
}

pub fn json_f64(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

pub fn render_json(value: &serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("value has no non-string keys");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Document {
        Document {
            metadata: vec![
                ("command".into(), "demo".into()),
                ("failure".into(), "mu 1: solver".into()),
                ("failure".into(), "mu 2: solver".into()),
            ],
            header: vec!["mu".into(), "value".into()],
            rows: vec![
                vec![fmt_f64(0.1), fmt_f64(-1.0)],
                vec![fmt_f64(0.30000000000000004), fmt_f64(2e-300)],
            ],
        }
    }

    #[test]
    fn csv_round_trips_exactly() {
        let doc = sample();
        let parsed = parse_csv(&render_csv(&doc)).unwrap();
        assert_eq!(parsed, doc);
        // Floats survive bit for bit, including the awkward ones.
        let col = parsed.f64_column("mu").unwrap();
        assert_eq!(col[1].to_bits(), 0.30000000000000004f64.to_bits());
    }

    #[test]
    fn repeated_metadata_keys_are_kept() {
        let parsed = parse_csv(&render_csv(&sample())).unwrap();
        assert_eq!(parsed.meta_all("failure").len(), 2);
        assert_eq!(parsed.meta("command"), Some("demo"));
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        assert!(parse_csv("a,b\n1,2,3\n").is_err());
        assert!(parse_csv("# bad metadata\na\n").is_err());
    }

    #[test]
    fn metadata_json_collapses_duplicates_into_arrays() {
        let value = metadata_json(&sample().metadata);
        assert_eq!(value["command"], "demo");
        assert_eq!(value["failure"].as_array().unwrap().len(), 2);
    }
}
