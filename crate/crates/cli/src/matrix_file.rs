//! Plain-text matrix files: one row per line, integers separated by
//! whitespace, `#` comment lines.

use std::fs;
use std::path::Path;

use nnirank2_core::{Int, IntMatrix};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: '{token}' is not an integer")]
    BadEntry { line: usize, token: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    Ragged { line: usize, expected: usize, found: usize },
    #[error("no matrix rows found")]
    Empty,
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix, ParseError> {
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| tok.parse::<Int>().map_err(|_| ParseError::BadEntry { line: k + 1, token: tok.to_string() }))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(ParseError::Ragged { line: k + 1, expected: first.len(), found: row.len() });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(IntMatrix::from_rows(&rows).expect("rectangular by construction"))
}

pub fn read_matrix(path: &Path) -> Result<IntMatrix, ParseError> {
    let text = fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.display().to_string(), source })?;
    parse_matrix(&text)
}

/// Rows joined by newlines, with a trailing newline.
pub fn format_matrix(m: &IntMatrix) -> String {
    format!("{m}\n")
}
