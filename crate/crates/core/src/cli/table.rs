//! Rectangular numeric tables written as CSV.

use std::fmt::Write as _;
use std::io::Write;

use super::CliError;

/// Significant digits written per value.
pub const CSV_DIGITS: usize = 12;
/// Marker for a missing value.
pub const NA: &str = "NA";

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    /// `None` cells are written as `NA`.
    pub rows: Vec<Vec<Option<f64>>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; non-finite values become `NA`.
    pub fn push(&mut self, row: Vec<Option<f64>>) -> Result<(), CliError> {
        if row.len() != self.header.len() {
            return Err(CliError::Internal(format!(
                "row has {} cells, header has {}",
                row.len(),
                self.header.len()
            )));
        }
        self.rows
            .push(row.into_iter().map(|v| v.filter(|x| x.is_finite())).collect());
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                match cell {
                    Some(v) => s.push_str(&format_value(*v)),
                    None => s.push_str(NA),
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn write_to(&self, mut w: impl Write) -> std::io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }

    /// Parses text produced by [`CsvTable::to_csv`].
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| CliError::Internal("empty CSV".into()))?;
        let mut table = CsvTable::new(header.split(','));
        for line in lines.filter(|l| !l.is_empty()) {
            let row = line
                .split(',')
                .map(|c| match c {
                    NA => Ok(None),
                    v => v
                        .parse::<f64>()
                        .map(Some)
                        .map_err(|e| CliError::Internal(format!("bad CSV cell {v:?}: {e}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            table.push(row)?;
        }
        Ok(table)
    }
}

/// Shortest exponent form with `CSV_DIGITS` significant digits.
fn format_value(v: f64) -> String {
    let mut s = String::new();
    let _ = write!(s, "{:.*e}", CSV_DIGITS - 1, v);
    // Trim trailing zeros of the mantissa: 1.50000000000e0 -> 1.5e0.
    if let Some(epos) = s.find('e') {
        let (mant, exp) = s.split_at(epos);
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        s = format!("{mant}{exp}");
    }
    s
}
