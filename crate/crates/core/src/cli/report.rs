use std::io::Write;

use serde_json::{Map, Value};

/// Tabular command output plus the resolved configuration that produced it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub summary: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn summary(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.summary.push((key.to_string(), value.into()));
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut out = out;
        writeln!(out, "# command: {}", self.command)?;
        for (k, v) in &self.config {
            writeln!(out, "# config.{k}: {v}")?;
        }
        for (k, v) in &self.summary {
            writeln!(out, "# {k}: {v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let pairs = |p: &[(String, String)]| {
            Value::Object(p.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect::<Map<_, _>>())
        };
        let mut o = Map::new();
        o.insert("command".into(), Value::String(self.command.clone()));
        o.insert("config".into(), pairs(&self.config));
        o.insert("summary".into(), pairs(&self.summary));
        o.insert("columns".into(), self.columns.iter().cloned().map(Value::String).collect());
        o.insert(
            "rows".into(),
            self.rows
                .iter()
                .map(|r| r.iter().cloned().map(Value::String).collect::<Value>())
                .collect(),
        );
        Value::Object(o)
    }

    pub fn render(&self, format: super::Format) -> Vec<u8> {
        let mut buf = Vec::new();
        match format {
            super::Format::Csv => self.write_csv(&mut buf).expect("writing to memory"),
            super::Format::Json => {
                serde_json::to_writer_pretty(&mut buf, &self.to_json()).expect("writing to memory");
                buf.push(b'\n');
            }
        }
        buf
    }
}

/// Shortest round-trip form, switching to exponent notation for very
/// small or very large magnitudes.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x != 0.0 && x.is_finite() && !(1e-6..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}
