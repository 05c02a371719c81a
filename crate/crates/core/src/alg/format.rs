//! Plain-text algebra files.
//!
//! ```text
//! carrier 2
//! op and 2
//! 0 0
//! 0 1
//! ```
//!
//! Entries are listed row-major with the first argument varying slowest.
//! `#` starts a comment that runs to the end of the line.

use std::fmt;

use super::algebra::FiniteAlgebra;
use super::table::{table_len, FinOpTable};
use crate::error::{Error, Result};
use crate::term::validate_symbol;

struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn tokens(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut col = 0;
        let mut rest = line;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            col += rest[..start].chars().count();
            rest = &rest[start..];
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            out.push(Token {
                text: &rest[..end],
                line: ln + 1,
                col: col + 1,
            });
            col += rest[..end].chars().count();
            rest = &rest[end..];
        }
    }
    out
}

fn syntax<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Syntax {
        line,
        col,
        msg: msg.into(),
    })
}

/// Parses the algebra file format.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let toks = tokens(text);
    let end = (text.lines().count().max(1), 1);
    let mut it = toks.iter().peekable();

    let head = match it.next() {
        Some(t) => t,
        None => return syntax(end.0, end.1, "expected `carrier <m>`"),
    };
    if head.text != "carrier" {
        return syntax(head.line, head.col, format!("expected `carrier`, found `{}`", head.text));
    }
    let m = match it.next() {
        Some(t) => t
            .text
            .parse::<usize>()
            .or_else(|_| syntax(t.line, t.col, format!("expected carrier size, found `{}`", t.text)))?,
        None => return syntax(head.line, head.col, "missing carrier size"),
    };
    if m == 0 {
        return Err(Error::EmptyCarrier);
    }
    if m > u32::MAX as usize {
        return Err(Error::exhausted("carrier size", u32::MAX));
    }

    let mut ops: Vec<(String, FinOpTable)> = Vec::new();
    while let Some(kw) = it.next() {
        if kw.text != "op" {
            return syntax(kw.line, kw.col, format!("expected `op`, found `{}`", kw.text));
        }
        let name = match it.next() {
            Some(t) => t,
            None => return syntax(kw.line, kw.col, "missing operation name"),
        };
        validate_symbol(name.text)?;
        if ops.iter().any(|(n, _)| n == name.text) {
            return syntax(name.line, name.col, format!("operation `{}` declared twice", name.text));
        }
        let arity = match it.next() {
            Some(t) => t
                .text
                .parse::<usize>()
                .or_else(|_| syntax(t.line, t.col, format!("expected arity, found `{}`", t.text)))?,
            None => return syntax(name.line, name.col, "missing arity"),
        };
        let expected = table_len(m, arity)?;
        let mut values = Vec::with_capacity(expected);
        while let Some(t) = it.peek() {
            if t.text == "op" {
                break;
            }
            let t = it.next().unwrap();
            let v: u64 = t
                .text
                .parse()
                .or_else(|_| syntax(t.line, t.col, format!("expected a table entry, found `{}`", t.text)))?;
            if v >= m as u64 {
                return Err(Error::EntryOutOfRange {
                    line: t.line,
                    col: t.col,
                    value: v,
                    carrier: m,
                });
            }
            values.push(v as u32);
        }
        if values.len() != expected {
            return Err(Error::ArityMismatch {
                symbol: name.text.to_string(),
                expected,
                found: values.len(),
            });
        }
        ops.push((name.text.to_string(), FinOpTable::from_values(arity, m, values)?));
    }
    FiniteAlgebra::new(m, ops)
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "carrier {}", self.carrier())?;
        for (name, table) in self.ops() {
            writeln!(f, "op {name} {}", table.arity())?;
            let row = if table.arity() == 0 { 1 } else { self.carrier() };
            for chunk in table.values().chunks(row) {
                let line: Vec<String> = chunk.iter().map(u32::to_string).collect();
                writeln!(f, "{}", line.join(" "))?;
            }
        }
        Ok(())
    }
}
