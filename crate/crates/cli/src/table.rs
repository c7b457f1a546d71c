use std::fmt::Write as _;

use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    /// A value that does not exist, e.g. an overflowing linear count.
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => x.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// `# comment`, the header line, then one line per row.
    pub fn to_csv(&self, comment: &str) -> String {
        let mut s = String::new();
        writeln!(s, "# {comment}").unwrap();
        writeln!(s, "{}", self.columns.join(",")).unwrap();
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(Cell::csv).collect();
            writeln!(s, "{}", cells.join(",")).unwrap();
        }
        s
    }

    /// `{"comment": …, "columns": […], "rows": [[…], …]}`.
    pub fn to_json(&self, comment: &str) -> String {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        let v = json!({ "comment": comment, "columns": self.columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&v).expect("table serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["x", "v", "label"]);
        t.push(vec![0.5.into(), Cell::Empty, "a".into()]);
        t.push(vec![1.0.into(), Some(2.25).into(), "b".into()]);
        assert_eq!(t.to_csv("hdr"), "# hdr\nx,v,label\n0.5,,a\n1,2.25,b\n");
        let v: Value = serde_json::from_str(&t.to_json("hdr")).unwrap();
        assert_eq!(v["comment"], "hdr");
        assert_eq!(v["rows"][0][1], Value::Null);
        assert_eq!(v["rows"][1][1], 2.25);
    }
}
