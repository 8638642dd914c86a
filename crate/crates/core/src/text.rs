//! Decoders for the textual wire formats: eigenvalues `(p+q*sqrt(d))/r`,
//! matrices `[[a,b],[c,d]]` and sampled lift grids in CSV.
//!
//! All decoders are total on arbitrary input: malformed text yields
//! [`Error::Parse`] (or a domain error for well-formed but invalid values),
//! never a panic.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::QuadraticIrrational;
use crate::torusmaps::UnimodularMatrix;

/// Longest accepted eigenvalue literal, in bytes after whitespace removal.
pub const MAX_EIGENVALUE_LEN: usize = 4096;

/// Largest grid accepted from CSV (cells per axis).
pub const MAX_GRID: usize = 2048;

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a [u8]) -> Self {
        Cursor { s, pos: 0 }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("expected {what} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(self.err(&format!("{lit:?}")))
        }
    }

    fn sign(&mut self) -> bool {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("digits"));
        }
        // ASCII digits only, so this cannot fail.
        std::str::from_utf8(&self.s[start..self.pos]).map_err(|_| self.err("digits"))
    }

    fn big(&mut self) -> Result<BigInt> {
        let neg = self.sign();
        let v: BigInt = self.digits()?.parse().map_err(|_| self.err("integer"))?;
        Ok(if neg { -v } else { v })
    }

    fn int64(&mut self) -> Result<i64> {
        let neg = self.sign();
        let digits = self.digits()?;
        let text = if neg { format!("-{digits}") } else { digits.to_string() };
        text.parse().map_err(|_| Error::Parse(format!("integer {text} out of range")))
    }

    fn done(&self) -> Result<()> {
        if self.pos == self.s.len() {
            Ok(())
        } else {
            Err(self.err("end of input"))
        }
    }
}

fn strip_ws(s: &str) -> Vec<u8> {
    s.bytes().filter(|b| !b.is_ascii_whitespace()).collect()
}

/// Parses `(p+q*sqrt(d))/r` (or `(p-q*sqrt(d))/r`); whitespace is ignored.
pub fn parse_eigenvalue(s: &str) -> Result<QuadraticIrrational> {
    let bytes = strip_ws(s);
    if bytes.len() > MAX_EIGENVALUE_LEN {
        return Err(Error::Parse(format!("eigenvalue literal longer than {MAX_EIGENVALUE_LEN} bytes")));
    }
    let mut cur = Cursor::new(&bytes);
    cur.expect("(")?;
    let p = cur.big()?;
    let neg_q = match cur.peek() {
        Some(b'+') => false,
        Some(b'-') => true,
        _ => return Err(cur.err("'+' or '-'")),
    };
    cur.pos += 1;
    let q: BigInt = cur.digits()?.parse().map_err(|_| cur.err("integer"))?;
    cur.expect("*sqrt(")?;
    let d: u64 = cur
        .digits()?
        .parse()
        .map_err(|_| Error::Parse("radicand does not fit in 64 bits".into()))?;
    cur.expect("))/")?;
    let r = cur.big()?;
    cur.done()?;
    QuadraticIrrational::new(p, if neg_q { -q } else { q }, d, r)
}

/// Parses `[[a,b],[c,d]]`; whitespace is ignored and the determinant must be 1.
pub fn parse_matrix(s: &str) -> Result<UnimodularMatrix> {
    let bytes = strip_ws(s);
    let mut cur = Cursor::new(&bytes);
    cur.expect("[[")?;
    let a = cur.int64()?;
    cur.expect(",")?;
    let b = cur.int64()?;
    cur.expect("],[")?;
    let c = cur.int64()?;
    cur.expect(",")?;
    let d = cur.int64()?;
    cur.expect("]]")?;
    cur.done()?;
    UnimodularMatrix::new(a, b, c, d)
}

/// A lift sampled on the closed grid `{(i/n, j/n) : 0 <= i, j <= n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftGrid {
    /// Cells per axis.
    pub n: usize,
    /// Row-major by `u` then `v`: entry `i*(n+1) + j` is `H(i/n, j/n)`.
    pub values: Vec<(f64, f64)>,
}

/// Parses a lift grid from CSV with header `u,v,h1,h2`.
///
/// Rows must list the `(n+1)^2` grid points in row-major order (`u` outer,
/// `v` inner) with coordinates equal to `i/n`, `j/n` within `1e-9`. Blank
/// lines and lines starting with `#` are skipped.
pub fn parse_lift_csv(text: &str) -> Result<LiftGrid> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty lift CSV".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols != ["u", "v", "h1", "h2"] {
        return Err(Error::Parse(format!("lift CSV header must be u,v,h1,h2, got {header:?}")));
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!("row {}: expected 4 fields, got {}", k + 1, fields.len())));
        }
        let mut vals = [0.0f64; 4];
        for (slot, f) in vals.iter_mut().zip(&fields) {
            let v: f64 = f.parse().map_err(|_| Error::Parse(format!("row {}: bad number {f:?}", k + 1)))?;
            if !v.is_finite() {
                return Err(Error::Parse(format!("row {}: non-finite value", k + 1)));
            }
            *slot = v;
        }
        rows.push(vals);
        if rows.len() > (MAX_GRID + 1) * (MAX_GRID + 1) {
            return Err(Error::Parse(format!("grid larger than {MAX_GRID} cells per axis")));
        }
    }
    let side = (rows.len() as f64).sqrt().round() as usize;
    if side < 2 || side * side != rows.len() {
        return Err(Error::Parse(format!("{} rows is not a square grid of at least 2x2", rows.len())));
    }
    let n = side - 1;
    let mut values = Vec::with_capacity(rows.len());
    for (k, row) in rows.iter().enumerate() {
        let (i, j) = (k / side, k % side);
        let (u, v) = (i as f64 / n as f64, j as f64 / n as f64);
        if (row[0] - u).abs() > 1e-9 || (row[1] - v).abs() > 1e-9 {
            return Err(Error::Parse(format!(
                "row {}: coordinates ({}, {}) do not match grid point ({u}, {v})",
                k + 1,
                row[0],
                row[1]
            )));
        }
        values.push((row[2], row[3]));
    }
    Ok(LiftGrid { n, values })
}

/// Writes a grid in the format read by [`parse_lift_csv`].
pub fn write_lift_csv(grid: &LiftGrid) -> String {
    let side = grid.n + 1;
    let mut out = String::from("u,v,h1,h2\n");
    for (k, (h1, h2)) in grid.values.iter().enumerate() {
        let (i, j) = (k / side, k % side);
        let u = i as f64 / grid.n as f64;
        let v = j as f64 / grid.n as f64;
        out.push_str(&format!("{u:?},{v:?},{h1:?},{h2:?}\n"));
    }
    out
}
