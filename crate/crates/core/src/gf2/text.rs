//! Plain-text matrix format.
//!
//! ```text
//! 2 3
//! 101
//! 011
//! ```
//!
//! The header holds the row and column counts. Each of the following rows
//! has exactly `C` characters from `{0, 1}`. Trailing whitespace on a line
//! is ignored, as are blank lines after the last row.

use super::Gf2Matrix;
use crate::error::{Error, Result};

fn parse_error(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

impl Gf2Matrix {
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.rows * (self.cols + 1));
        out.push_str(&format!("{} {}\n", self.rows, self.cols));
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(if self.get(r, c) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Gf2Matrix> {
        let mut lines = text.lines().map(str::trim_end);
        let header = lines.next().ok_or_else(|| parse_error(1, "missing header"))?;
        let dims: Vec<&str> = header.split(' ').collect();
        let [r, c] = dims.as_slice() else {
            return Err(parse_error(1, "header must be `ROWS COLS`"));
        };
        let parse_dim = |s: &str| {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_error(1, format!("`{s}` is not a decimal count")));
            }
            s.parse::<usize>()
                .map_err(|e| parse_error(1, format!("`{s}`: {e}")))
        };
        let (rows, cols) = (parse_dim(r)?, parse_dim(c)?);

        let mut m = Gf2Matrix::zeros(rows, cols);
        for r in 0..rows {
            let line_no = r + 2;
            let line = lines
                .next()
                .ok_or_else(|| parse_error(line_no, format!("expected {rows} rows, found {r}")))?;
            if line.len() != cols {
                return Err(parse_error(
                    line_no,
                    format!("expected {cols} characters, found {}", line.len()),
                ));
            }
            for (c, ch) in line.bytes().enumerate() {
                match ch {
                    b'0' => {}
                    b'1' => m.set(r, c, true),
                    other => {
                        return Err(parse_error(
                            line_no,
                            format!("unexpected character {:?}", other as char),
                        ))
                    }
                }
            }
        }
        if let Some((i, _)) = lines.enumerate().find(|(_, l)| !l.is_empty()) {
            return Err(parse_error(rows + 2 + i, "trailing content after last row"));
        }
        Ok(m)
    }
}
