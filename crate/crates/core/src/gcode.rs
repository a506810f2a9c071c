//! The `.gcode` text format.
//!
//! ```text
//! GCODE 1
//! field p=2 f=2 mod=1,1,1
//! code k=2 n=3
//! 1 0 1
//! 0 1 1
//! ```
//!
//! Every line must be exactly in this canonical form (single spaces, no
//! leading zeros); a final newline is optional.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::field::{make_field, Elem, FieldError};
use crate::matrix::FqMatrix;

#[derive(Debug, Error)]
pub enum GcodeError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line 2: {0}")]
    Field(FieldError),
    #[error("invalid code: {0}")]
    Code(CodeError),
    #[error("cannot access {path}")]
    Io { path: String, source: std::io::Error },
}

fn format_err(line: usize, message: impl Into<String>) -> GcodeError {
    GcodeError::Format {
        line,
        message: message.into(),
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Serialises a code, ending with a newline.
pub fn write_gcode(code: &LinearCode) -> String {
    let field = code.field();
    let mut out = String::new();
    out.push_str("GCODE 1\n");
    let _ = writeln!(
        out,
        "field p={} f={} mod={}",
        field.p(),
        field.f(),
        join(field.modulus(), ",")
    );
    let _ = writeln!(out, "code k={} n={}", code.k(), code.n());
    for row in code.gen().row_iter() {
        out.push_str(&join(row, " "));
        out.push('\n');
    }
    out
}

fn parse_u64(tok: &str, line: usize, what: &str) -> Result<u64, GcodeError> {
    let ok = !tok.is_empty() && tok.bytes().all(|b| b.is_ascii_digit()) && (tok == "0" || !tok.starts_with('0'));
    if !ok {
        return Err(format_err(line, format!("{what}: expected an integer, got {tok:?}")));
    }
    tok.parse()
        .map_err(|_| format_err(line, format!("{what}: {tok} is too large")))
}

fn keyed<'a>(tok: Option<&'a str>, key: &str, line: usize) -> Result<&'a str, GcodeError> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| format_err(line, format!("expected {key}=<value>")))
}

/// Parses the canonical text form.
pub fn parse_gcode(text: &str) -> Result<LinearCode, GcodeError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let lines: Vec<&str> = body.split('\n').collect();

    if lines.first() != Some(&"GCODE 1") {
        return Err(format_err(1, "expected header \"GCODE 1\""));
    }

    let field_line = lines.get(1).ok_or_else(|| format_err(2, "missing field line"))?;
    let mut toks = field_line.split(' ');
    if toks.next() != Some("field") {
        return Err(format_err(2, "expected \"field p=<p> f=<f> mod=<c0,...,cf>\""));
    }
    let p = parse_u64(keyed(toks.next(), "p", 2)?, 2, "p")?;
    let f = parse_u64(keyed(toks.next(), "f", 2)?, 2, "f")?;
    let modulus = keyed(toks.next(), "mod", 2)?
        .split(',')
        .map(|c| parse_u64(c, 2, "modulus coefficient"))
        .collect::<Result<Vec<_>, _>>()?;
    if toks.next().is_some() {
        return Err(format_err(2, "trailing tokens"));
    }
    let p = u32::try_from(p).map_err(|_| format_err(2, "p too large"))?;
    let f = u32::try_from(f).map_err(|_| format_err(2, "f too large"))?;
    let modulus: Vec<u32> = modulus
        .into_iter()
        .map(|c| u32::try_from(c).map_err(|_| format_err(2, "modulus coefficient too large")))
        .collect::<Result<_, _>>()?;
    let field = make_field(p, f, Some(&modulus)).map_err(GcodeError::Field)?;

    let code_line = lines.get(2).ok_or_else(|| format_err(3, "missing code line"))?;
    let mut toks = code_line.split(' ');
    if toks.next() != Some("code") {
        return Err(format_err(3, "expected \"code k=<k> n=<n>\""));
    }
    let k = parse_u64(keyed(toks.next(), "k", 3)?, 3, "k")? as usize;
    let n = parse_u64(keyed(toks.next(), "n", 3)?, 3, "n")? as usize;
    if toks.next().is_some() {
        return Err(format_err(3, "trailing tokens"));
    }
    if k == 0 || n == 0 {
        return Err(format_err(3, "k and n must be positive"));
    }
    if lines.len() != 3 + k {
        let line = (lines.len() + 1).min(4 + k);
        return Err(format_err(
            line,
            format!("expected {k} rows, found {}", lines.len().saturating_sub(3)),
        ));
    }
    let mut gen = FqMatrix::zeros(k, n);
    for i in 0..k {
        let line = 4 + i;
        let toks: Vec<&str> = lines[3 + i].split(' ').collect();
        if toks.len() != n {
            return Err(format_err(line, format!("expected {n} entries, found {}", toks.len())));
        }
        for (j, t) in toks.iter().enumerate() {
            let v = parse_u64(t, line, "entry")?;
            if v >= field.q() as u64 {
                return Err(format_err(line, format!("entry {v} is outside GF({})", field.q())));
            }
            gen.set(i, j, v as Elem);
        }
    }
    LinearCode::new(field, gen).map_err(GcodeError::Code)
}

pub fn read_gcode(path: impl AsRef<Path>) -> Result<LinearCode, GcodeError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| GcodeError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_gcode(&text)
}

pub fn save_gcode(code: &LinearCode, path: impl AsRef<Path>) -> Result<(), GcodeError> {
    let path = path.as_ref();
    std::fs::write(path, write_gcode(code)).map_err(|source| GcodeError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "GCODE 1\nfield p=2 f=2 mod=1,1,1\ncode k=2 n=3\n1 0 1\n0 1 1\n";

    fn line_of(err: GcodeError) -> usize {
        match err {
            GcodeError::Format { line, .. } => line,
            other => panic!("expected a format error, got {other}"),
        }
    }

    #[test]
    fn round_trip() {
        let c = parse_gcode(SAMPLE).unwrap();
        assert_eq!((c.k(), c.n(), c.q()), (2, 3, 4));
        assert_eq!(write_gcode(&c), SAMPLE);
        assert!(parse_gcode(SAMPLE.trim_end()).is_ok());
    }

    #[test]
    fn strictness() {
        assert_eq!(line_of(parse_gcode("GCODE 2\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_gcode(&SAMPLE.replace("p=2 f", "p=2  f")).unwrap_err()), 2);
        assert_eq!(line_of(parse_gcode(&SAMPLE.replace("k=2", "k=02")).unwrap_err()), 3);
        assert_eq!(line_of(parse_gcode(&SAMPLE.replace("0 1 1", "0 1 4")).unwrap_err()), 5);
        assert_eq!(
            line_of(parse_gcode(&SAMPLE.replace("1 0 1\n", "1 0\n")).unwrap_err()),
            4
        );
        assert_eq!(line_of(parse_gcode(&format!("{SAMPLE}\n")).unwrap_err()), 6);
        assert_eq!(line_of(parse_gcode(&SAMPLE.replace("\n0 1 1\n", "\n")).unwrap_err()), 5);
        assert_eq!(line_of(parse_gcode(&SAMPLE.replace('\n', "\r\n")).unwrap_err()), 1);
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(
            parse_gcode(&SAMPLE.replace("mod=1,1,1", "mod=0,0,1")),
            Err(GcodeError::Field(FieldError::Reducible(2)))
        ));
        assert!(matches!(
            parse_gcode(&SAMPLE.replace("0 1 1", "1 0 1")),
            Err(GcodeError::Code(CodeError::RankDeficient { .. }))
        ));
    }
}
