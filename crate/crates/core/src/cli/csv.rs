//! Plain-text matrix format.
//!
//! One row per line, cells separated by commas, `.` as the decimal point.
//! An optional first line `labels: a,b,c` names the generators; otherwise
//! they default to `e1`..`en`. Blank lines and lines starting with `#` are
//! ignored.

use crate::error::{Error, Result};
use crate::matrix::{Label, StructureMatrix};

const LABELS_PREFIX: &str = "labels:";

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a matrix file. Line and column numbers in errors are 1-based.
pub fn parse_matrix_csv(bytes: &[u8]) -> Result<StructureMatrix> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let before = &bytes[..e.valid_up_to()];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        parse_error(line, column, "input is not valid UTF-8")
    })?;

    let mut labels: Option<Vec<Label>> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix(LABELS_PREFIX) {
            if labels.is_some() || !rows.is_empty() {
                return Err(parse_error(
                    line_no,
                    1,
                    "labels line must come before the first row",
                ));
            }
            let names = rest
                .split(',')
                .map(|s| Label::new(s.trim()))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| parse_error(line_no, LABELS_PREFIX.len() + 1, e.to_string()))?;
            labels = Some(names);
            continue;
        }
        let mut row = Vec::new();
        let mut column = raw.len() - raw.trim_start().len() + 1;
        for cell in line.split(',') {
            let value = cell.trim();
            let at = column + (cell.len() - cell.trim_start().len());
            let x: f64 = value
                .parse()
                .map_err(|_| parse_error(line_no, at, format!("`{value}` is not a number")))?;
            if !x.is_finite() {
                return Err(parse_error(line_no, at, format!("`{value}` is not finite")));
            }
            row.push(x);
            column += cell.len() + 1;
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    StructureMatrix::new(&rows, labels)
}

/// Inverse of [`parse_matrix_csv`]; values print in shortest round-trip form.
pub fn render_matrix_csv(m: &StructureMatrix) -> String {
    let mut out = String::new();
    out.push_str(LABELS_PREFIX);
    out.push(' ');
    out.push_str(
        &m.labels()
            .iter()
            .map(Label::as_str)
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
