//! Text encodings: the `pentagon-solution v1` table format and σ-files.
//!
//! ```text
//! pentagon-solution v1
//! size 2
//! 0 0 0 0
//! 0 1 0 1
//! 1 0 1 0
//! 1 1 1 1
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::constructors::SigmaMap;
use crate::solution::{Bijection, SolutionTable};

pub const HEADER: &str = "pentagon-solution v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing row for ({0}, {1})")]
    MissingRow(usize, usize),
    #[error("line {line}: duplicate row for ({i}, {j}), first given on line {first}")]
    DuplicateRow { line: usize, i: usize, j: usize, first: usize },
    #[error("line {line}: index {value} out of range for size {size}")]
    OutOfRange { line: usize, value: usize, size: usize },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("invalid content: {0}")]
    Invalid(String),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Non-blank lines, trimmed, with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn parse_numbers(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| syntax(line, format!("`{t}` is not a non-negative integer"))))
        .collect()
}

/// Reads a table; rows may come in any order but every `(i, j)` must appear exactly once.
pub fn parse_solution(text: &str) -> Result<SolutionTable, ParseError> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((n, other)) => return Err(syntax(n, format!("expected `{HEADER}`, found `{other}`"))),
        None => return Err(syntax(1, "empty input")),
    }
    let (size_line, size) = match lines.next() {
        Some((n, l)) => match l.split_whitespace().collect::<Vec<_>>()[..] {
            ["size", v] => (n, v.parse::<usize>().map_err(|_| syntax(n, format!("bad size `{v}`")))?),
            _ => return Err(syntax(n, format!("expected `size <n>`, found `{l}`"))),
        },
        None => return Err(syntax(2, "missing size line")),
    };
    if size == 0 {
        return Err(syntax(size_line, "size must be positive"));
    }
    let cells = size
        .checked_mul(size)
        .filter(|&c| c <= 1 << 24)
        .ok_or_else(|| syntax(size_line, format!("size {size} is too large")))?;
    let mut seen: Vec<usize> = vec![0; cells];
    let mut entries = vec![(0, 0); cells];
    let mut rows = 0;
    for (n, l) in lines {
        let v = parse_numbers(n, l)?;
        if v.len() != 4 {
            return Err(syntax(n, format!("expected 4 fields, found {}", v.len())));
        }
        if let Some(&bad) = v.iter().find(|&&x| x >= size) {
            return Err(ParseError::OutOfRange { line: n, value: bad, size });
        }
        let cell = v[0] * size + v[1];
        if seen[cell] != 0 {
            return Err(ParseError::DuplicateRow { line: n, i: v[0], j: v[1], first: seen[cell] });
        }
        seen[cell] = n;
        entries[cell] = (v[2], v[3]);
        rows += 1;
    }
    if let Some(cell) = seen.iter().position(|&l| l == 0) {
        if rows < cells {
            return Err(ParseError::MissingRow(cell / size, cell % size));
        }
    }
    if rows != cells {
        return Err(ParseError::RowCount { expected: cells, found: rows });
    }
    SolutionTable::new(size, entries).map_err(|e| ParseError::Invalid(e.to_string()))
}

/// Canonical text: header, size, then `n²` rows in lexicographic `(i, j)` order.
pub fn emit_solution(s: &SolutionTable) -> String {
    let n = s.size();
    let mut out = String::with_capacity(16 + n * n * 12);
    out.push_str(HEADER);
    out.push('\n');
    writeln!(out, "size {n}").expect("writing to a string");
    for i in 0..n {
        for j in 0..n {
            let (k, l) = s.apply(i, j);
            writeln!(out, "{i} {j} {k} {l}").expect("writing to a string");
        }
    }
    out
}

/// One line per `a ∈ 0..2^a_dim`, listing the images of `0..x_size` under `σ_a`.
pub fn parse_sigma(text: &str, x_size: usize, a_dim: u32) -> Result<SigmaMap, ParseError> {
    let expected = 1usize << a_dim;
    let mut perms = Vec::with_capacity(expected);
    for (n, l) in content_lines(text) {
        let images = parse_numbers(n, l)?;
        if images.len() != x_size {
            return Err(syntax(n, format!("expected {x_size} images, found {}", images.len())));
        }
        if let Some(&bad) = images.iter().find(|&&v| v >= x_size) {
            return Err(ParseError::OutOfRange { line: n, value: bad, size: x_size });
        }
        perms.push(Bijection::new(images).map_err(|_| syntax(n, "not a permutation"))?);
    }
    if perms.len() != expected {
        return Err(ParseError::RowCount { expected, found: perms.len() });
    }
    SigmaMap::new(x_size, a_dim, perms).map_err(|e| ParseError::Invalid(e.to_string()))
}

pub fn emit_sigma(sigma: &SigmaMap) -> String {
    let mut out = String::new();
    for p in sigma.perms() {
        let row: Vec<String> = p.images().iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
