//! The `cmatrix v1` text format.
//!
//! ```text
//! # cmatrix v1
//! 2 2
//! 1.0000000000000000e0,0.0000000000000000e0 0.0000000000000000e0,0.0000000000000000e0
//! 0.0000000000000000e0,0.0000000000000000e0 1.0000000000000000e0,0.0000000000000000e0
//! ```

use std::fmt::Write as _;

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

pub const CMATRIX_HEADER: &str = "# cmatrix v1";

/// Formats a real with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_cmatrix(m: &ComplexMatrix) -> String {
    let n = m.dim();
    let mut out = String::new();
    out.push_str(CMATRIX_HEADER);
    out.push('\n');
    let _ = writeln!(out, "{n} {n}");
    for i in 0..n {
        let row: Vec<String> = m
            .row(i)
            .iter()
            .map(|z| format!("{},{}", fmt_f64(z.re), fmt_f64(z.im)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub(crate) fn parse_real(token: &str, line: usize) -> Result<f64> {
    let x: f64 = token
        .parse()
        .map_err(|_| Error::parse(line, format!("not a real number: {token:?}")))?;
    if !x.is_finite() {
        return Err(Error::parse(line, format!("non-finite value: {token:?}")));
    }
    Ok(x)
}

fn parse_entry(token: &str, line: usize) -> Result<Complex64> {
    let (re, im) = token
        .split_once(',')
        .ok_or_else(|| Error::parse(line, format!("expected re,im pair, found {token:?}")))?;
    Ok(Complex64::new(parse_real(re, line)?, parse_real(im, line)?))
}

pub fn parse_cmatrix(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l == CMATRIX_HEADER => {}
        Some((n, l)) => {
            return Err(Error::parse(
                n,
                format!("expected {CMATRIX_HEADER:?}, found {l:?}"),
            ))
        }
        None => return Err(Error::parse(1, "empty input")),
    }

    let (dim_line, dims) = lines
        .next()
        .ok_or_else(|| Error::parse(2, "missing dimension line"))?;
    let dims: Vec<&str> = dims.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(Error::parse(
            dim_line,
            "dimension line must be `<rows> <cols>`",
        ));
    }
    let parse_dim = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(dim_line, format!("bad dimension {s:?}")))
    };
    let (rows, cols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
    if rows == 0 || rows != cols {
        return Err(Error::parse(
            dim_line,
            format!("only non-empty square matrices are supported, got {rows}x{cols}"),
        ));
    }

    let mut entries = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for (n, l) in lines {
        if l.starts_with('#') {
            continue;
        }
        seen_rows += 1;
        if seen_rows > rows {
            return Err(Error::parse(n, format!("more than {rows} rows")));
        }
        let tokens: Vec<&str> = l.split(' ').collect();
        if tokens.len() != cols {
            return Err(Error::parse(
                n,
                format!("expected {cols} entries, found {}", tokens.len()),
            ));
        }
        for t in tokens {
            entries.push(parse_entry(t, n)?);
        }
    }
    if seen_rows != rows {
        return Err(Error::parse(
            text.lines().count(),
            format!("expected {rows} rows, found {seen_rows}"),
        ));
    }
    ComplexMatrix::from_row_major(entries)
}
