//! Tabular output shared by every subcommand, rendered as CSV or JSON.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

/// Bumped whenever a column or its encoding changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "t", content = "v")]
pub enum Cell {
    Int(i128),
    Float(f64),
    Bool(bool),
    Text(String),
    /// An arrangement; JSON arrays, space-separated in CSV.
    Ints(Vec<u8>),
    Null,
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => quote_csv(s),
            Cell::Ints(v) => v
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            Cell::Null => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            // i128 has no JSON number mapping in serde_json; every integer we
            // emit fits in i64 except exact intermediate bounds, sent as text.
            Cell::Int(i) => match i64::try_from(*i) {
                Ok(v) => json!(v),
                Err(_) => json!(i.to_string()),
            },
            Cell::Float(x) => json!(x),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Ints(v) => json!(v),
            Cell::Null => Value::Null,
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn quote_csv(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub kind: String,
    pub n: usize,
    pub mode: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra top-level JSON fields (not part of the CSV).
    #[serde(default)]
    pub meta: Vec<(String, Cell)>,
}

impl Table {
    pub fn new(
        kind: impl Into<String>,
        n: usize,
        mode: impl Into<String>,
        columns: &[&str],
    ) -> Self {
        Self {
            kind: kind.into(),
            n,
            mode: mode.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::to_csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::to_json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("schema_version".into(), json!(SCHEMA_VERSION));
        top.insert("n".into(), json!(self.n));
        top.insert("mode".into(), json!(self.mode));
        top.insert("kind".into(), json!(self.kind));
        top.insert(
            "port_labels".into(),
            json!("arrangements list occupancies of output ports 1..n in order"),
        );
        for (key, cell) in &self.meta {
            top.insert(key.clone(), cell.to_json());
        }
        top.insert("rows".into(), Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON encoding");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_encoding() {
        let mut t = Table::new("x", 2, "float", &["a", "b", "c", "d"]);
        t.push(vec![
            Cell::Ints(vec![0, 2]),
            Cell::Float(0.5),
            Cell::Null,
            Cell::Text("p,q".into()),
        ]);
        assert_eq!(t.to_csv(), "a,b,c,d\n0 2,5.0000000000000000e-1,,\"p,q\"\n");
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2.0f64.sqrt() * 1e-300, 6.02e23] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_envelope() {
        let mut t = Table::new("classes", 2, "exact", &["representative", "q"]);
        t.push(vec![Cell::Ints(vec![1, 1]), Cell::Int(1)]);
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["kind"], "classes");
        assert_eq!(v["rows"][0]["representative"], json!([1, 1]));
    }
}
