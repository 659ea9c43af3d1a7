//! Text formats.
//!
//! * `.trn`: the order `n` on the first line, then `n` rows of `n`
//!   characters `0`/`1`; row `i`, column `j` is set iff `i -> j`. Every line
//!   ends with `\n`.
//! * `.vlab`: one line of `n` characters `W`/`B`.
//! * `.alab`: the black arcs, one `u v` pair per line, ascending.

use std::fmt::Write as _;

use thiserror::Error;

use crate::labeling::{ArcLabeling, Color, VertexLabeling};
use crate::tournament::Tournament;

/// Parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        column,
        message: message.into(),
    }
}

/// Splits into lines, requiring the final newline.
fn lines_with_newline(text: &str) -> Result<Vec<&str>, FormatError> {
    if text.is_empty() {
        return Err(err(1, 1, "empty input"));
    }
    let Some(body) = text.strip_suffix('\n') else {
        let line = text.matches('\n').count() + 1;
        let column = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        return Err(err(line, column, "missing trailing newline"));
    };
    Ok(body.split('\n').collect())
}

pub fn render_trn(t: &Tournament) -> String {
    let n = t.order();
    let mut out = String::with_capacity((n + 1) * (n + 1) + 8);
    writeln!(out, "{n}").unwrap();
    for u in 0..n {
        for v in 0..n {
            out.push(if t.has_arc(u, v) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_trn(text: &str) -> Result<Tournament, FormatError> {
    let lines = lines_with_newline(text)?;
    let header = lines[0];
    if let Some((col, c)) = header
        .chars()
        .enumerate()
        .find(|(_, c)| !c.is_ascii_digit())
    {
        return Err(err(
            1,
            col + 1,
            format!("unexpected character {c:?} in vertex count"),
        ));
    }
    let n: usize = header
        .parse()
        .map_err(|_| err(1, 1, "expected the vertex count"))?;
    if n == 0 {
        return Err(err(1, 1, "vertex count must be at least 1"));
    }
    if lines.len() != n + 1 {
        let line = lines.len().min(n + 1) + 1;
        return Err(err(
            line,
            1,
            format!("expected {n} matrix rows, found {}", lines.len() - 1),
        ));
    }
    let mut rows = vec![vec![false; n]; n];
    for (i, row) in lines[1..].iter().enumerate() {
        let line = i + 2;
        let mut width = 0;
        for (j, c) in row.chars().enumerate() {
            if j >= n {
                return Err(err(line, j + 1, format!("row longer than {n} characters")));
            }
            rows[i][j] = match c {
                '0' => false,
                '1' => true,
                other => return Err(err(line, j + 1, format!("unexpected character {other:?}"))),
            };
            width += 1;
        }
        if width != n {
            return Err(err(
                line,
                width + 1,
                format!("row has {width} characters, expected {n}"),
            ));
        }
    }
    for (i, row) in rows.iter().enumerate() {
        if row[i] {
            return Err(err(i + 2, i + 1, "self-loop on the diagonal"));
        }
        for j in i + 1..n {
            if row[j] == rows[j][i] {
                let what = if row[j] { "both" } else { "neither" };
                return Err(err(
                    i + 2,
                    j + 1,
                    format!("pair {{{i}, {j}}} oriented {what} way"),
                ));
            }
        }
    }
    Ok(Tournament::from_fn(n, |i, j| rows[i][j]))
}

pub fn render_vlab(l: &VertexLabeling) -> String {
    let mut s: String = l
        .colors()
        .iter()
        .map(|c| match c {
            Color::White => 'W',
            Color::Black => 'B',
        })
        .collect();
    s.push('\n');
    s
}

/// Accepts the labeling line with or without its trailing newline.
pub fn parse_vlab(text: &str) -> Result<VertexLabeling, FormatError> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    if let Some(pos) = line.find('\n') {
        return Err(err(
            2,
            1,
            format!("unexpected data after column {}", pos + 1),
        ));
    }
    let colors = line
        .chars()
        .enumerate()
        .map(|(j, c)| match c {
            'W' => Ok(Color::White),
            'B' => Ok(Color::Black),
            other => Err(err(1, j + 1, format!("unexpected character {other:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VertexLabeling::new(colors))
}

pub fn render_alab(l: &ArcLabeling) -> String {
    let mut out = String::new();
    for (u, v) in l.black_arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// An empty file is the all-white labeling. Lines must be strictly
/// ascending.
pub fn parse_alab(text: &str) -> Result<ArcLabeling, FormatError> {
    if text.is_empty() {
        return Ok(ArcLabeling::new());
    }
    let lines = lines_with_newline(text)?;
    let mut out = ArcLabeling::new();
    let mut prev: Option<(usize, usize)> = None;
    for (i, line) in lines.iter().enumerate() {
        let ln = i + 1;
        let mut fields = line.split(' ');
        let mut next = |col: usize| -> Result<usize, FormatError> {
            let f = fields
                .next()
                .ok_or_else(|| err(ln, col, "expected two vertex ids"))?;
            f.parse::<usize>()
                .map_err(|_| err(ln, col, format!("bad vertex id {f:?}")))
        };
        let u = next(1)?;
        let v = next(line.find(' ').map_or(1, |p| p + 2))?;
        if fields.next().is_some() {
            return Err(err(ln, 1, "expected exactly two vertex ids"));
        }
        if prev.is_some_and(|p| p >= (u, v)) {
            return Err(err(
                ln,
                1,
                "arcs must be listed in strictly ascending order",
            ));
        }
        prev = Some((u, v));
        out.insert((u, v));
    }
    Ok(out)
}
