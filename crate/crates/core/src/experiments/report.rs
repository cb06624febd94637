use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;

/// Reals in CSV output: 17 significant digits, `.` decimal separator.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    UInt(u64),
    Real(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::UInt(v) => v.to_string(),
            Cell::Real(v) => fmt_real(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::UInt(v)
    }
}
impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}
impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

/// One checked statement, `lhs relation rhs`, with both sides kept.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
    pub pass: bool,
}

impl Assertion {
    pub fn new(name: impl Into<String>, lhs: f64, relation: Relation, rhs: f64) -> Self {
        let pass = match relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
        };
        Self {
            name: name.into(),
            lhs,
            relation,
            rhs,
            pass,
        }
    }
}

/// Output of a study: per-point rows for CSV, checked assertions, and the
/// parameters needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyReport {
    pub study: String,
    pub grid: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub assertions: Vec<Assertion>,
    pub metadata: BTreeMap<String, Value>,
}

impl StudyReport {
    pub fn new(study: &str, grid: Value, columns: &[&str]) -> Self {
        Self {
            study: study.to_string(),
            grid,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            assertions: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn check(&mut self, assertion: Assertion) -> bool {
        let pass = assertion.pass;
        self.assertions.push(assertion);
        pass
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.metadata.insert(key.to_string(), value.into());
    }

    pub fn pass(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv))?;
        }
        w.flush()?;
        Ok(())
    }

    /// `{study, grid, pass, failures[], metadata}`.
    pub fn summary(&self) -> Value {
        json!({
            "study": self.study,
            "grid": self.grid,
            "pass": self.pass(),
            "failures": self.failures().collect::<Vec<_>>(),
            "metadata": self.metadata,
        })
    }

    pub fn write_summary<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.summary())?;
        out.write_all(b"\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI, 6.02e23, -1e-300, 0.0] {
            let s = fmt_real(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(fmt_real(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_real(f64::NAN), "NaN");
    }

    #[test]
    fn report_outputs() {
        let mut r = StudyReport::new("demo", json!({"n": [1, 2]}), &["n", "value", "note"]);
        r.push_row(vec![1u64.into(), 0.25.into(), "a".into()]);
        r.push_row(vec![2u64.into(), (-1i64).into(), Cell::Empty]);
        assert!(r.check(Assertion::new("ok", 1.0, Relation::Le, 2.0)));
        assert!(!r.check(Assertion::new("bad", 3.0, Relation::Lt, 2.0)));
        r.meta("seed", 7);

        let mut csv = Vec::new();
        r.write_csv(&mut csv).unwrap();
        assert_eq!(
            String::from_utf8(csv).unwrap(),
            "n,value,note\n1,2.5000000000000000e-1,a\n2,-1,\n"
        );

        let s = r.summary();
        assert_eq!(s["pass"], json!(false));
        assert_eq!(s["failures"].as_array().unwrap().len(), 1);
        assert_eq!(s["failures"][0]["lhs"], json!(3.0));
        assert_eq!(s["failures"][0]["relation"], json!("<"));
        assert_eq!(s["metadata"]["seed"], json!(7));
    }
}
