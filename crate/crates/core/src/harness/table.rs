use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::Result;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    /// Floats use 17 significant digits, enough to round-trip any `f64`.
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) if v.is_nan() => "NaN".to_string(),
            Cell::Float(v) if v.is_infinite() => if *v > 0.0 { "inf" } else { "-inf" }.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// A named CSV table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self { name: name.to_string(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn write_to<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row.iter().map(Cell::render))?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("cells are valid UTF-8")
    }

    /// Write `<dir>/<name>.csv`.
    pub fn write_file(&self, dir: &Path) -> Result<std::path::PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.csv", self.name));
        self.write_to(File::create(&path)?)?;
        Ok(path)
    }
}
