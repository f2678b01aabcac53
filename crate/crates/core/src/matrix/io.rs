//! Matrix file formats.
//!
//! JSON: `{"rows": m, "cols": n, "data": [[re, im], ...]}`, row-major.
//! Text: one row per line, whitespace-separated entries like `1`, `-2.5i`,
//! `3+4i` or `1e-3-2i`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

pub(super) fn to_json(m: &ComplexMatrix) -> String {
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m.as_mat()[(i, j)];
            data.push([z.re, z.im]);
        }
    }
    serde_json::to_string(&MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        data,
    })
    .expect("finite floats serialize")
}

pub(super) fn from_json(text: &str) -> Result<ComplexMatrix> {
    let raw: MatrixJson = serde_json::from_str(text)?;
    check_shape(raw.rows, raw.cols)?;
    let data: Vec<Complex64> = raw
        .data
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    ComplexMatrix::from_row_major(raw.rows, raw.cols, &data)
}

fn check_shape(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::validation(
            "rows/cols",
            format!("must be positive, got {rows}x{cols}"),
        ));
    }
    Ok(())
}

pub(super) fn from_text(text: &str) -> Result<ComplexMatrix> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let mut row = Vec::new();
        let mut pos = 0;
        for token in line.split_whitespace() {
            let at = pos + line[pos..].find(token).expect("token comes from line");
            row.push(
                parse_entry(token).map_err(|(p, msg)| Error::parse(text, offset + at + p, msg))?,
            );
            pos = at + token.len();
        }
        if !row.is_empty() {
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(Error::parse(
                        text,
                        offset,
                        format!(
                            "row {} has {} entries, expected {}",
                            rows.len() + 1,
                            row.len(),
                            first.len()
                        ),
                    ));
                }
            }
            rows.push(row);
        }
        offset += line.len();
    }
    let (m, n) = (rows.len(), rows.first().map_or(0, Vec::len));
    check_shape(m, n)?;
    let data: Vec<Complex64> = rows.into_iter().flatten().collect();
    ComplexMatrix::from_row_major(m, n, &data)
}

/// Parses one entry; errors carry an offset into the token.
fn parse_entry(token: &str) -> std::result::Result<Complex64, (usize, String)> {
    let real = |s: &str, at: usize| {
        s.parse::<f64>()
            .map_err(|_| (at, format!("invalid number {s:?}")))
    };
    let Some(body) = token.strip_suffix('i') else {
        return Ok(Complex64::new(real(token, 0)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re, im, im_at) = match split {
        Some(p) => (real(&body[..p], 0)?, &body[p..], p),
        None => (0.0, body, 0),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => real(s, im_at)?,
    };
    Ok(Complex64::new(re, im))
}

pub(super) fn write_text(m: &ComplexMatrix, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if j > 0 {
                f.write_str(" ")?;
            }
            let z = m.as_mat()[(i, j)];
            if z.im == 0.0 {
                write!(f, "{}", z.re)?;
            } else if z.im < 0.0 {
                write!(f, "{}-{}i", z.re, -z.im)?;
            } else {
                write!(f, "{}+{}i", z.re, z.im)?;
            }
        }
        writeln!(f)?;
    }
    Ok(())
}
