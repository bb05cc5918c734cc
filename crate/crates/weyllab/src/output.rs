//! Reports and their JSON, CSV and table renderings.

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::config::Format;

/// A command result. `rows` is the record list used for CSV output and
/// must agree with the JSON document's row array.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub rows: Vec<Value>,
    pub table: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values always serialize");
                s.push('\n');
                s
            }
            Format::Csv => to_csv(&self.rows),
            Format::Table => self.table.clone(),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Flat records with nested values written as compact JSON. Columns are
/// the union of keys in sorted order.
pub fn to_csv(rows: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
    }
    columns.sort();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&columns).expect("writing to memory");
    for r in rows {
        let record: Vec<String> = columns.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect();
        w.write_record(&record).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV of UTF-8 cells")
}

/// Inverse of [`to_csv`] for records whose string fields do not parse as
/// JSON scalars.
pub fn csv_to_rows(text: &str) -> Result<Vec<Value>, csv::Error> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let mut m = Map::new();
        for (h, c) in headers.iter().zip(rec.iter()) {
            let v = if c.is_empty() {
                Value::Null
            } else {
                serde_json::from_str::<Value>(c)
                    .ok()
                    .filter(|v| !v.is_string())
                    .unwrap_or_else(|| Value::String(c.into()))
            };
            m.insert(h.to_string(), v);
        }
        out.push(Value::Object(m));
    }
    Ok(out)
}

pub fn big_to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(x.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_round_trip() {
        let rows = vec![
            json!({ "level": 148, "weight": "(74,74)", "status": "quasi-simple", "witnesses": [{ "t": 1 }], "eta": null }),
            json!({ "level": 3, "weight": "(1,2)", "status": "not-in-Y+", "witnesses": [], "eta": 0 }),
        ];
        let text = to_csv(&rows);
        assert!(text.starts_with("eta,level,status,weight,witnesses\n"));
        assert_eq!(csv_to_rows(&text).unwrap(), rows);
    }
}
