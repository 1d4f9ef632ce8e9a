//! Plain-text series input.

use std::io::BufRead;
use std::path::Path;

use crate::error::{GarchError, Result};
use crate::garch::SamplePath;

/// Parse one observation per line; blank lines and lines starting with `#` are skipped.
pub fn parse_series<R: BufRead>(reader: R) -> Result<SamplePath> {
    let mut values = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let v: f64 =
            t.parse().map_err(|_| GarchError::Parse { line: i + 1, message: format!("not a number: '{t}'") })?;
        if !v.is_finite() {
            return Err(GarchError::Parse { line: i + 1, message: format!("non-finite value '{t}'") });
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(GarchError::DegenerateData("input contains no observations".into()));
    }
    SamplePath::new(values)
}

pub fn read_series(path: &Path) -> Result<SamplePath> {
    let file = std::fs::File::open(path)?;
    parse_series(std::io::BufReader::new(file))
}
