//! Command output: an ordered list of entries rendered as aligned text,
//! TSV, or JSON. Entry order is fixed by the command, so every rendering is
//! deterministic.

use std::fmt::Write as _;

use serde::Serialize;
use serde::ser::{SerializeMap, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i128),
    Bool(bool),
    Text(String),
    List(Vec<Value>),
    Null,
}

impl Value {
    fn plain(&self) -> String {
        match self {
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
            Value::Text(s) => s.clone(),
            Value::List(items) => {
                let inner: Vec<String> = items.iter().map(Value::plain).collect();
                format!("({})", inner.join(", "))
            }
            Value::Null => "-".into(),
        }
    }
}

macro_rules! int_value {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(n: $t) -> Self {
                Value::Int(n as i128)
            }
        }
    )*};
}
int_value!(i32, u32, u64, i64, i128, usize);

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.into())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(o: Option<T>) -> Self {
        o.map_or(Value::Null, Into::into)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

/// A grid indexed by `r` (rows) and `s` (columns).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub title: String,
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    pub values: Vec<Vec<Value>>,
}

impl Grid {
    pub fn new(
        title: impl Into<String>,
        rows: Vec<u32>,
        cols: Vec<u32>,
        values: Vec<Vec<Value>>,
    ) -> Self {
        Grid {
            title: title.into(),
            rows,
            cols,
            values,
        }
    }

    fn cells(&self) -> Vec<Vec<String>> {
        let mut out = vec![
            std::iter::once("r\\s".to_string())
                .chain(self.cols.iter().map(u32::to_string))
                .collect::<Vec<_>>(),
        ];
        for (r, row) in self.rows.iter().zip(&self.values) {
            out.push(
                std::iter::once(r.to_string())
                    .chain(row.iter().map(Value::plain))
                    .collect(),
            );
        }
        out
    }

    pub fn tsv(&self) -> String {
        self.cells()
            .iter()
            .map(|row| row.join("\t") + "\n")
            .collect()
    }

    fn aligned(&self) -> String {
        let cells = self.cells();
        let widths: Vec<usize> = (0..cells[0].len())
            .map(|c| {
                cells
                    .iter()
                    .map(|row| row[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Field(String, Value),
    Grid(String, Grid),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Tsv,
    Json,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            entries: Vec::new(),
        }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.entries.push(Entry::Field(key.into(), value.into()));
        self
    }

    pub fn grid(&mut self, key: impl Into<String>, grid: Grid) -> &mut Self {
        self.entries.push(Entry::Grid(key.into(), grid));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find_map(|e| match e {
            Entry::Field(k, v) if k == key => Some(v),
            _ => None,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Tsv => self.tsv(),
            Format::Json => serde_json::to_string_pretty(self).expect("reports serialize") + "\n",
        }
    }

    fn text(&self) -> String {
        let width = self
            .entries
            .iter()
            .filter_map(|e| match e {
                Entry::Field(k, _) => Some(k.chars().count()),
                Entry::Grid(..) => None,
            })
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for e in &self.entries {
            match e {
                Entry::Field(k, v) => {
                    let _ = writeln!(out, "{k:<width$}  {}", v.plain());
                }
                Entry::Grid(_, g) => {
                    let _ = writeln!(out, "{}", g.title);
                    out.push_str(&g.aligned());
                }
            }
        }
        out
    }

    /// Fields as `key<TAB>value`; each grid as a TSV block after a blank
    /// line. A report that is a single grid renders as just that grid.
    fn tsv(&self) -> String {
        if let [Entry::Grid(_, g)] = &self.entries[..] {
            return g.tsv();
        }
        let mut out = String::new();
        for e in &self.entries {
            match e {
                Entry::Field(k, v) => {
                    let _ = writeln!(out, "{k}\t{}", v.plain());
                }
                Entry::Grid(k, g) => {
                    let _ = writeln!(out, "\n{k}");
                    out.push_str(&g.tsv());
                }
            }
        }
        out
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len() + 1))?;
        map.serialize_entry("command", &self.command)?;
        for e in &self.entries {
            match e {
                Entry::Field(k, v) => map.serialize_entry(k, v)?,
                Entry::Grid(k, g) => map.serialize_entry(k, g)?,
            }
        }
        map.end()
    }
}
