//! Fixed-format CSV tables.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

/// Rounding slack tolerated on probability columns before they are clamped
/// into `[0, 1]`.
const PROB_SLACK: f64 = 1e-9;
/// Probabilities below this are rounding residue of a unit-norm state and
/// are written as zero.
const PROB_FLOOR: f64 = 1e-15;

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error("column `{column}` at row {row}: {value} is not finite")]
    NotFinite {
        column: String,
        row: usize,
        value: f64,
    },
    #[error("column `{column}` at row {row}: {value} is not a probability")]
    NotProbability {
        column: String,
        row: usize,
        value: f64,
    },
    #[error("row {row} has {found} values, header has {expected}")]
    Width {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

/// `x` rounded to 12 significant digits, positional notation for moderate
/// exponents and scientific otherwise, trailing zeros dropped.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let digits = digits.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if !(-5..12).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        return if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        };
    }
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{digits}", "0".repeat((-point) as usize))
    } else if point as usize >= digits.len() {
        format!("{digits}{}", "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    format!("{sign}{body}")
}

/// One named column; probability columns are checked and clamped.
#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    pub probability: bool,
}

impl Column {
    pub fn value(name: impl Into<String>) -> Self {
        Column {
            name: name.into(),
            probability: false,
        }
    }

    pub fn probability(name: impl Into<String>) -> Self {
        Column {
            name: name.into(),
            probability: true,
        }
    }
}

/// A header plus rows of numbers.
#[derive(Debug, Clone, Default)]
pub struct Table {
    columns: Vec<Column>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<f64>> {
        self.rows
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<(), CsvError> {
        if row.len() != self.columns.len() {
            return Err(CsvError::Width {
                row: self.rows.len() + 1,
                expected: self.columns.len(),
                found: row.len(),
            });
        }
        let n = self.rows.len() + 1;
        let mut row = row;
        for (v, c) in row.iter_mut().zip(&self.columns) {
            if !v.is_finite() {
                return Err(CsvError::NotFinite {
                    column: c.name.clone(),
                    row: n,
                    value: *v,
                });
            }
            if c.probability {
                if *v < -PROB_SLACK || *v > 1.0 + PROB_SLACK {
                    return Err(CsvError::NotProbability {
                        column: c.name.clone(),
                        row: n,
                        value: *v,
                    });
                }
                *v = if v.abs() < PROB_FLOOR { 0.0 } else { v.clamp(0.0, 1.0) };
            }
        }
        self.rows.push(row);
        Ok(())
    }

    /// Index of a column by name.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn column_values(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{}", format_sig12(*v)).expect("writing to a String");
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), CsvError> {
        std::fs::write(path, self.to_csv()).map_err(|source| CsvError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}
