//! Plain-text quandle files: a size line, then one row of `a ∗ b` per element.

use thiserror::Error;

use crate::quandle::{FiniteQuandle, QuandleError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("quandle axioms fail: {0}")]
    Axiom(#[from] QuandleError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

/// Tokens of the non-comment lines, with 1-based positions.
fn tokens(text: &str) -> Vec<(usize, Vec<(usize, &str)>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            let mut out = Vec::new();
            let mut start = None;
            for (j, ch) in l.char_indices().chain(std::iter::once((l.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        out.push((s + 1, &l[s..j]));
                        start = None;
                    }
                    _ => {}
                }
            }
            (i + 1, out)
        })
        .collect()
}

pub fn parse_quandle(text: &str) -> Result<FiniteQuandle, ParseError> {
    let lines = tokens(text);
    let Some((hline, header)) = lines.first() else {
        return Err(syntax(1, 1, "missing size line"));
    };
    if header.len() != 1 {
        return Err(syntax(*hline, header.get(1).map_or(1, |t| t.0), "size line must hold a single integer"));
    }
    let n: usize =
        header[0].1.parse().map_err(|_| syntax(*hline, header[0].0, "size is not a non-negative integer"))?;
    if n == 0 {
        return Err(syntax(*hline, header[0].0, "size must be positive"));
    }
    let rows = &lines[1..];
    if rows.len() != n {
        let (line, col) = rows.get(n).map_or((text.lines().count() + 1, 1), |r| (r.0, 1));
        return Err(syntax(line, col, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut table = Vec::with_capacity(n * n);
    for (line, toks) in rows {
        if toks.len() != n {
            let col = toks.get(n).map_or(toks.last().map_or(1, |t| t.0), |t| t.0);
            return Err(syntax(*line, col, format!("expected {n} entries, found {}", toks.len())));
        }
        for &(col, t) in toks {
            let v: u32 = t.parse().map_err(|_| syntax(*line, col, format!("'{t}' is not a non-negative integer")))?;
            if v as usize >= n {
                return Err(syntax(*line, col, format!("entry {v} out of range 0..{n}")));
            }
            table.push(v);
        }
    }
    Ok(FiniteQuandle::from_table(n, table)?)
}

pub fn format_quandle(q: &FiniteQuandle) -> String {
    let n = q.size();
    let mut s = format!("{n}\n");
    for row in q.table().chunks(n) {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        s.push_str(&r.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::affine_cyclic;

    #[test]
    fn round_trip() {
        let q = affine_cyclic(5, 2).unwrap();
        let text = format_quandle(&q);
        assert_eq!(parse_quandle(&text).unwrap(), q);
        assert_eq!(format_quandle(&parse_quandle(&text).unwrap()), text);
    }

    #[test]
    fn positioned_errors() {
        match parse_quandle("3\n0 2 1\n2 1 x\n1 0 2\n") {
            Err(ParseError::Syntax { line: 3, column: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_quandle("2\n0 1\n# comment\n") {
            Err(ParseError::Syntax { line: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_quandle("2\n0 0\n1 1\n"), Err(ParseError::Axiom(_))));
        assert!(parse_quandle("2\n0 1\n0 1\n# trailing\n").is_ok());
    }
}
