//! Grid text files and complex dumps.
//!
//! Grid format, one grid per file, zero-indexed rows, `#` starting a
//! comment line:
//!
//! ```text
//! 5
//! O: 1 2 3 4 0
//! X: 4 0 1 2 3
//! ```
//!
//! Complex dump format `UGC v1`: a header line, one `g <id> <2delta>
//! <A>` line per generator and one `e <src> <dst> <upow>` line per
//! differential entry.

use crate::complex::UComplex;
use crate::error::Error;
use crate::grid::GridDiagram;

/// Serializes a grid in the text format; parsing the result returns
/// the same grid byte for byte.
pub fn grid_to_string(grid: &GridDiagram) -> String {
    let join = |rows: &[u8]| {
        rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
    };
    format!("{}\nO: {}\nX: {}\n", grid.index(), join(grid.o_rows()), join(grid.x_rows()))
}

/// Parses the grid text format.
pub fn grid_from_str(text: &str) -> Result<GridDiagram, Error> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("missing grid index line".into()))?
        .parse()
        .map_err(|_| Error::Parse("grid index is not a number".into()))?;
    let mut read_rows = |label: &str| -> Result<Vec<usize>, Error> {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing `{label}:` line")))?;
        let rest = line
            .strip_prefix(label)
            .and_then(|l| l.strip_prefix(':'))
            .ok_or_else(|| Error::Parse(format!("expected `{label}:` line, found `{line}`")))?;
        let rows: Vec<usize> = rest
            .split_whitespace()
            .map(|tok| tok.parse().map_err(|_| Error::Parse(format!("bad row `{tok}`"))))
            .collect::<Result<_, _>>()?;
        if rows.len() != n {
            return Err(Error::Parse(format!(
                "`{label}:` line has {} rows, grid index is {n}",
                rows.len()
            )));
        }
        Ok(rows)
    };
    let o = read_rows("O")?;
    let x = read_rows("X")?;
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after the X line".into()));
    }
    GridDiagram::new(&o, &x)
}

/// Serializes a complex in the `UGC v1` dump format.
pub fn complex_to_string(complex: &UComplex) -> String {
    let mut out = String::from("UGC v1\n");
    for id in 0..complex.generators() as u32 {
        out.push_str(&format!("g {id} {} {}\n", complex.delta2(id), complex.alexander(id)));
    }
    for src in 0..complex.generators() as u32 {
        for &(dst, pow) in complex.entries_from(src) {
            out.push_str(&format!("e {src} {dst} {pow}\n"));
        }
    }
    out
}

/// Parses a `UGC v1` dump. The grid index and component count are not
/// part of the format; the loaded complex reports zero for both.
pub fn complex_from_str(text: &str) -> Result<UComplex, Error> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    match lines.next() {
        Some("UGC v1") => {}
        other => return Err(Error::Parse(format!("bad dump header {other:?}"))),
    }
    let mut delta2: Vec<i32> = Vec::new();
    let mut alexander: Vec<i32> = Vec::new();
    let mut entries: Vec<(u32, u32, u8)> = Vec::new();
    for line in lines {
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("g") => {
                let id: usize = parse_tok(tok.next(), "generator id")?;
                let d2: i32 = parse_tok(tok.next(), "doubled delta")?;
                let a: i32 = parse_tok(tok.next(), "alexander")?;
                if id != delta2.len() {
                    return Err(Error::Parse("generator ids must be consecutive".into()));
                }
                delta2.push(d2);
                alexander.push(a);
            }
            Some("e") => {
                let src: u32 = parse_tok(tok.next(), "entry source")?;
                let dst: u32 = parse_tok(tok.next(), "entry target")?;
                let pow: u8 = parse_tok(tok.next(), "entry power")?;
                entries.push((src, dst, pow));
            }
            Some(other) => return Err(Error::Parse(format!("unknown dump line `{other}`"))),
            None => {}
        }
    }
    UComplex::from_parts(0, 0, delta2, alexander, entries)
}

fn parse_tok<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T, Error> {
    tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}")))
}
