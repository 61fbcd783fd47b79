//! Plain-text formats for matrices, grids and vectors.
//!
//! ```text
//! # comment
//! M 2 3          (BD 2 3 for a grid)
//! 1 2 3
//! 4 5 6
//! ```
//!
//! Vectors are `V <len>` followed by one value per line. Values are written
//! with 17 significant digits, which round-trips every binary64 number, or
//! as exact hexadecimal floats (`0x1.8p+1`). Both forms are accepted on input.

use std::fmt::Write as _;

use crate::bd::BdMatrix;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FloatFormat {
    #[default]
    Decimal,
    Hex,
}

pub fn format_f64(v: f64, fmt: FloatFormat) -> String {
    match fmt {
        FloatFormat::Decimal => format!("{v:.16e}"),
        FloatFormat::Hex => format_hex(v),
    }
}

fn format_hex(v: f64) -> String {
    let sign = if v.is_sign_negative() { "-" } else { "" };
    let bits = v.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mant = bits & ((1u64 << 52) - 1);
    if exp == 0 && mant == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, e) = if exp == 0 { (0, -1022) } else { (1, exp - 1023) };
    let digits = format!("{mant:013x}");
    let digits = digits.trim_end_matches('0');
    let frac = if digits.is_empty() {
        String::new()
    } else {
        format!(".{digits}")
    };
    let esign = if e >= 0 { "+" } else { "" };
    format!("{sign}0x{lead}{frac}p{esign}{e}")
}

/// Parses a decimal or hexadecimal float; rejects non-finite values.
pub fn parse_f64(tok: &str) -> Option<f64> {
    let (neg, body) = match tok.as_bytes().first()? {
        b'-' => (true, &tok[1..]),
        b'+' => (false, &tok[1..]),
        _ => (false, tok),
    };
    let v = if let Some(hex) = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) {
        parse_hex(hex)?
    } else {
        if !body.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
            return None;
        }
        body.parse::<f64>().ok()?
    };
    let v = if neg { -v } else { v };
    v.is_finite().then_some(v)
}

fn parse_hex(s: &str) -> Option<f64> {
    let (mant, exp) = s.split_once(['p', 'P'])?;
    let exp: i64 = exp.parse().ok()?;
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let mut m: u64 = 0;
    let mut shift = exp;
    for c in int.chars() {
        m = m.checked_mul(16)?.checked_add(c.to_digit(16)? as u64)?;
    }
    for c in frac.chars() {
        m = m.checked_mul(16)?.checked_add(c.to_digit(16)? as u64)?;
        shift -= 4;
    }
    if m >= 1 << 53 {
        return None;
    }
    Some(ldexp(m as f64, shift))
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        // Stop early if the next step would round a subnormal.
        if e >= -1074 - 52 && x * 2f64.powi(-1000) < f64::MIN_POSITIVE {
            break;
        }
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    if e < -1022 {
        x * 2f64.powi(-1022) * 2f64.powi((e + 1022) as i32)
    } else {
        x * 2f64.powi(e as i32)
    }
}

pub fn write_matrix(a: &DenseMatrix, fmt: FloatFormat) -> String {
    write_grid("M", a.rows(), a.cols(), a.as_slice(), fmt)
}

pub fn write_bd(b: &BdMatrix, fmt: FloatFormat) -> String {
    write_grid("BD", b.rows(), b.cols(), b.as_slice(), fmt)
}

fn write_grid(tag: &str, rows: usize, cols: usize, data: &[f64], fmt: FloatFormat) -> String {
    let mut out = format!("{tag} {rows} {cols}\n");
    for r in 0..rows {
        let line: Vec<String> = data[r * cols..(r + 1) * cols]
            .iter()
            .map(|&v| format_f64(v, fmt))
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_vector(v: &[f64], fmt: FloatFormat) -> String {
    let mut out = format!("V {}\n", v.len());
    for &x in v {
        let _ = writeln!(out, "{}", format_f64(x, fmt));
    }
    out
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Non-empty lines with comments stripped, as token lists.
fn lines(src: &str) -> Vec<Vec<Token<'_>>> {
    let mut out = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (i, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    toks.push(Token {
                        text: &body[s..i],
                        line: ln + 1,
                        column: body[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !toks.is_empty() {
            out.push(toks);
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn count(t: &Token<'_>) -> Result<usize> {
    t.text
        .parse()
        .map_err(|_| err(t.line, t.column, format!("expected a count, found `{}`", t.text)))
}

fn value(t: &Token<'_>) -> Result<f64> {
    parse_f64(t.text)
        .ok_or_else(|| err(t.line, t.column, format!("expected a finite number, found `{}`", t.text)))
}

fn parse_grid(src: &str, tag: &str) -> Result<(usize, usize, Vec<f64>)> {
    let lines = lines(src);
    let Some(header) = lines.first() else {
        return Err(err(1, 1, format!("empty input, expected `{tag} <rows> <cols>`")));
    };
    if header[0].text != tag {
        return Err(err(
            header[0].line,
            header[0].column,
            format!("expected `{tag}` header, found `{}`", header[0].text),
        ));
    }
    if header.len() != 3 {
        let t = header.last().expect("nonempty");
        return Err(err(t.line, t.column, format!("expected `{tag} <rows> <cols>`")));
    }
    let (rows, cols) = (count(&header[1])?, count(&header[2])?);
    let body = &lines[1..];
    if body.len() != rows {
        let (line, column) = body
            .get(rows)
            .map_or((header[0].line, 1), |l| (l[0].line, l[0].column));
        return Err(err(
            line,
            column,
            format!("expected {rows} rows, found {}", body.len()),
        ));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in body {
        if row.len() != cols {
            let t = row.get(cols).unwrap_or(row.last().expect("nonempty"));
            return Err(err(
                t.line,
                t.column,
                format!("expected {cols} entries in row, found {}", row.len()),
            ));
        }
        for t in row {
            data.push(value(t)?);
        }
    }
    Ok((rows, cols, data))
}

pub fn parse_matrix(src: &str) -> Result<DenseMatrix> {
    let (r, c, data) = parse_grid(src, "M")?;
    DenseMatrix::from_row_major(r, c, data)
}

pub fn parse_bd(src: &str) -> Result<BdMatrix> {
    let (r, c, data) = parse_grid(src, "BD")?;
    BdMatrix::new(r, c, data)
}

pub fn parse_vector(src: &str) -> Result<Vec<f64>> {
    let lines = lines(src);
    let Some(header) = lines.first() else {
        return Err(err(1, 1, "empty input, expected `V <len>`"));
    };
    if header[0].text != "V" || header.len() != 2 {
        return Err(err(header[0].line, header[0].column, "expected `V <len>` header"));
    }
    let n = count(&header[1])?;
    let body = &lines[1..];
    if body.len() != n {
        let line = body.get(n).map_or(header[0].line, |l| l[0].line);
        return Err(err(line, 1, format!("expected {n} values, found {}", body.len())));
    }
    body.iter()
        .map(|l| {
            if l.len() != 1 {
                Err(err(l[1].line, l[1].column, "expected one value per line"))
            } else {
                value(&l[0])
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_and_hex_round_trip() {
        let vals = [
            0.0,
            -0.0,
            1.0,
            0.1,
            -2.5e-300,
            f64::MAX,
            f64::MIN_POSITIVE,
            5e-324,
            1.0 / 3.0,
            123456789.123456789,
        ];
        for v in vals {
            for fmt in [FloatFormat::Decimal, FloatFormat::Hex] {
                let s = format_f64(v, fmt);
                let back = parse_f64(&s).unwrap();
                assert_eq!(back.to_bits(), v.to_bits(), "{s}");
            }
        }
        assert_eq!(format_f64(3.0, FloatFormat::Hex), "0x1.8p+1");
        assert_eq!(format_f64(0.5, FloatFormat::Hex), "0x1p-1");
        assert_eq!(parse_f64("inf"), None);
        assert_eq!(parse_f64("nan"), None);
        assert_eq!(parse_f64("1e999"), None);
    }

    #[test]
    fn grid_round_trip() {
        let b = BdMatrix::from_rows(&[vec![1.0, 0.1], vec![2.0 / 3.0, 1e-200]]).unwrap();
        for fmt in [FloatFormat::Decimal, FloatFormat::Hex] {
            assert_eq!(parse_bd(&write_bd(&b, fmt)).unwrap(), b);
        }
        let v = vec![1.5, -1.0 / 7.0];
        assert_eq!(parse_vector(&write_vector(&v, FloatFormat::Decimal)).unwrap(), v);
    }

    #[test]
    fn comments_and_blank_lines() {
        let src = "# pascal\nM 2 2  # header\n\n1 1\n1 2 # last\n";
        assert_eq!(parse_matrix(src).unwrap().to_rows(), vec![vec![1.0, 1.0], vec![1.0, 2.0]]);
    }

    #[test]
    fn reports_positions() {
        match parse_matrix("M 2 2\n1 1\n1 x2\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("{other:?}"),
        }
        match parse_matrix("M 2 2\n1 1 1\n1 2\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_bd("M 1 1\n1\n"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(matches!(parse_vector("V 2\n1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_bd("BD 1 1\n-1\n"), Err(Error::InvalidBd(_))));
    }
}
