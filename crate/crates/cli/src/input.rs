//! Polytope and nef-partition files.
//!
//! ```text
//! # polytope: "d n" then n rows of d integers
//! 2 4
//! 1 1
//! -1 1
//! 1 -1
//! -1 -1
//! ```
//!
//! A nef file has header "d r" followed by r blocks, each a row count `n_i`
//! and `n_i` rows. `#` starts a comment; blank lines are ignored.

use std::fmt;
use std::path::Path;

use gorkit_core::lattice::{Int, Point};
use gorkit_core::polytope::LatticePolytope;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// Non-empty content lines with their 1-based line numbers.
struct Lines<'a> {
    rows: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut rows = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.split('\n').enumerate() {
            last_line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = content.split_whitespace().collect();
            if !toks.is_empty() {
                rows.push((i + 1, toks));
            }
        }
        Self { rows, pos: 0, last_line }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        match self.rows.get(self.pos) {
            Some(r) => {
                self.pos += 1;
                Ok(r.clone())
            }
            None => err(self.last_line, format!("unexpected end of input, expected {what}")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.rows.get(self.pos) {
            Some((line, _)) => err(*line, "unexpected trailing content"),
            None => Ok(()),
        }
    }
}

fn integer(line: usize, tok: &str) -> Result<Int, ParseError> {
    tok.parse::<Int>()
        .or_else(|_| err(line, format!("non-integer token '{tok}'")))
}

fn count(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    match tok.parse::<usize>() {
        Ok(n) => Ok(n),
        Err(_) => err(line, format!("invalid {what} '{tok}'")),
    }
}

fn header(lines: &mut Lines<'_>, second: &str) -> Result<(usize, usize), ParseError> {
    let (line, toks) = lines.next("a header")?;
    if toks.len() != 2 {
        return err(line, format!("malformed header: expected \"d {second}\""));
    }
    let d = count(line, toks[0], "dimension")?;
    let n = count(line, toks[1], second)?;
    if d == 0 {
        return err(line, "dimension must be positive");
    }
    if n == 0 {
        return err(line, format!("{second} must be positive"));
    }
    Ok((d, n))
}

fn rows(lines: &mut Lines<'_>, d: usize, n: usize) -> Result<Vec<Point>, ParseError> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, toks) = lines.next("a vertex row")?;
        if toks.len() != d {
            return err(line, format!("expected {d} coordinates, found {}", toks.len()));
        }
        out.push(toks.iter().map(|t| integer(line, t)).collect::<Result<_, _>>()?);
    }
    Ok(out)
}

pub fn parse_polytope(text: &str) -> Result<LatticePolytope, ParseError> {
    let mut lines = Lines::new(text);
    let (d, n) = header(&mut lines, "n")?;
    let pts = rows(&mut lines, d, n)?;
    lines.finish()?;
    Ok(LatticePolytope::new(&pts))
}

pub fn parse_nef(text: &str) -> Result<Vec<LatticePolytope>, ParseError> {
    let mut lines = Lines::new(text);
    let (d, r) = header(&mut lines, "r")?;
    let mut parts = Vec::with_capacity(r);
    for _ in 0..r {
        let (line, toks) = lines.next("a block size")?;
        if toks.len() != 1 {
            return err(line, "expected a single block size");
        }
        let n = count(line, toks[0], "block size")?;
        if n == 0 {
            return err(line, "block must be nonempty");
        }
        parts.push(LatticePolytope::new(&rows(&mut lines, d, n)?));
    }
    lines.finish()?;
    Ok(parts)
}

/// Reads a file, or standard input for `-`.
pub fn read(path: &Path) -> Result<String, ParseError> {
    let res = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    res.or_else(|e| err(0, format!("cannot read {}: {e}", path.display())))
}

/// The polytope file of a vertex set.
pub fn format_polytope(p: &LatticePolytope) -> String {
    let mut s = format!("{} {}\n", p.ambient_dim(), p.num_vertices());
    write_rows(&mut s, p.vertices());
    s
}

pub fn format_nef(parts: &[LatticePolytope]) -> String {
    let mut s = format!("{} {}\n", parts[0].ambient_dim(), parts.len());
    for p in parts {
        s.push_str(&format!("{}\n", p.num_vertices()));
        write_rows(&mut s, p.vertices());
    }
    s
}

fn write_rows(s: &mut String, pts: &[Point]) {
    for v in pts {
        let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
}
