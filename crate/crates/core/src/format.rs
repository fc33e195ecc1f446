//! Text forms of sets and vectors.
//!
//! One-dimensional sets are written `0,3,5` (braces optional), vectors
//! `(x1,...,xn)`, and sets of vectors as vectors separated by `;` or `,`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::linalg::IVec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetLiteral {
    OneD(Vec<i64>),
    ND(Vec<IVec>),
}

impl SetLiteral {
    pub fn dim(&self) -> usize {
        match self {
            SetLiteral::OneD(_) => 1,
            SetLiteral::ND(v) => v.first().map_or(0, Vec::len),
        }
    }
}

fn parse_int(tok: &str) -> Result<i64> {
    let t = tok.trim();
    t.parse()
        .map_err(|_| Error::InvalidInput(format!("not an integer: {t:?}")))
}

pub fn parse_set_1d(s: &str) -> Result<Vec<i64>> {
    let t = s.trim().trim_start_matches('{').trim_end_matches('}');
    if t.trim().is_empty() {
        return Err(Error::EmptySet);
    }
    t.split(',').map(parse_int).collect()
}

pub fn parse_vector(s: &str) -> Result<IVec> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidInput(format!("vector must look like (x,y,...): {t:?}")))?;
    if inner.trim().is_empty() {
        return Err(Error::InvalidInput("empty vector".into()));
    }
    inner.split(',').map(parse_int).collect()
}

pub fn parse_set_nd(s: &str) -> Result<Vec<IVec>> {
    let t = s.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = Vec::new();
    let mut rest = t;
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ';' || c == ',');
        if rest.is_empty() {
            break;
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::InvalidInput(format!("unclosed vector in {t:?}")))?;
        out.push(parse_vector(&rest[..=close])?);
        rest = &rest[close + 1..];
    }
    if out.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = out[0].len();
    if let Some(v) = out.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    Ok(out)
}

/// Parses either form, choosing by the presence of `(`.
pub fn parse_set(s: &str) -> Result<SetLiteral> {
    if s.contains('(') {
        parse_set_nd(s).map(SetLiteral::ND)
    } else {
        parse_set_1d(s).map(SetLiteral::OneD)
    }
}

/// One set per line; `#` starts a comment, blank lines are skipped.
/// Returns `(line number, set)` pairs in file order.
pub fn parse_corpus(text: &str) -> Result<Vec<(usize, SetLiteral)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let set =
            parse_set(body).map_err(|e| Error::InvalidInput(format!("line {}: {e}", i + 1)))?;
        out.push((i + 1, set));
    }
    Ok(out)
}

pub fn format_list(xs: impl IntoIterator<Item = impl std::fmt::Display>) -> String {
    let mut s = String::new();
    for (i, x) in xs.into_iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "{x}").unwrap();
    }
    s
}

pub fn format_vector(v: &[i64]) -> String {
    format!("({})", format_list(v))
}

pub fn format_vectors<'a>(vs: impl IntoIterator<Item = &'a IVec>) -> String {
    vs.into_iter()
        .map(|v| format_vector(v))
        .collect::<Vec<_>>()
        .join(";")
}
