//! Dense square matrices of exact rationals.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, parse_scalar, Scalar, Sign};

/// Dense `n x n` matrix of exact rationals stored row-major. Order is at least 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<Scalar>,
}

/// Text encodings accepted by [`parse_matrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Json,
    Plain,
}

impl MatrixFormat {
    /// Picks JSON when the first non-blank byte opens an object.
    pub fn sniff(text: &[u8]) -> MatrixFormat {
        match text.iter().find(|b| !b.is_ascii_whitespace()) {
            Some(b'{') => MatrixFormat::Json,
            _ => MatrixFormat::Plain,
        }
    }
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NonSquare("no rows".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::NonSquare(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                r.len(),
                n
            )));
        }
        Ok(RationalMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers; panics if not square.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| crate::scalar::int(v)).collect())
            .collect();
        Self::from_rows(rows).expect("square integer matrix")
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(n >= 1, "matrix order must be positive");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        RationalMatrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| Scalar::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i].clone() } else { Scalar::zero() })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.n)
    }

    pub fn diag(&self) -> Vec<Scalar> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.n, |i, j| -self.get(i, j))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_fn(self.n, |i, j| self.get(i, j) * c)
    }

    pub fn mul(&self, other: &RationalMatrix) -> Self {
        assert_eq!(self.n, other.n);
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(Scalar::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.n);
        self.rows()
            .map(|r| r.iter().zip(x).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// Submatrix with rows `rows` and columns `cols` (0-based), as a row-major vector.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Principal submatrix on the (0-based) index set `idx`; `idx` must be nonempty.
    pub fn principal(&self, idx: &[usize]) -> RationalMatrix {
        RationalMatrix::from_rows(self.block(idx, idx)).expect("nonempty principal index set")
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    /// Exact determinant by Gaussian elimination with a nonzero pivot search.
    pub fn determinant(&self) -> Scalar {
        determinant_rows(self.block(&(0..self.n).collect::<Vec<_>>(), &(0..self.n).collect::<Vec<_>>()))
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        let n = self.n;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                r
            })
            .collect();
        gauss_jordan(&mut aug, n).ok_or(Error::Singular)?;
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        RationalMatrix::from_rows(rows)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = self.rows().map(|r| r.iter().map(format_scalar).collect()).collect();
        json!({ "n": self.n, "rows": rows })
    }

    /// Plain text form: whitespace separated entries, one row per line.
    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for r in self.rows() {
            let line: Vec<String> = r.iter().map(format_scalar).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn sign(&self, i: usize, j: usize) -> Sign {
        Sign::of(self.get(i, j))
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.rows().map(|r| r.iter().map(format_scalar).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|r| r.iter().map(format_scalar).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[[{}]]", rows.join("], ["))
    }
}

/// Determinant of a small dense rational block given as rows. The empty block has determinant 1.
pub fn determinant_rows(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// In-place Gauss-Jordan on the first `n` columns of `aug`; returns `None` if singular.
pub(crate) fn gauss_jordan(aug: &mut [Vec<Scalar>], n: usize) -> Option<()> {
    let width = aug.first().map_or(0, |r| r.len());
    for col in 0..n {
        let p = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(p, col);
        let inv = aug[col][col].recip();
        for c in col..width {
            aug[col][c] *= &inv;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..width {
                let t = &factor * &aug[col][c];
                aug[r][c] -= t;
            }
        }
    }
    Some(())
}

/// Parses a matrix from one of the two documented text formats.
pub fn parse_matrix(text: &[u8], format: MatrixFormat) -> Result<RationalMatrix> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Malformed(e.to_string()))?;
    match format {
        MatrixFormat::Plain => parse_plain(text),
        MatrixFormat::Json => parse_json(text),
    }
}

fn parse_plain(text: &str) -> Result<RationalMatrix> {
    let rows = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(parse_scalar).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(rows)
}

fn parse_json(text: &str) -> Result<RationalMatrix> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    matrix_from_json(&doc)
}

/// Builds a matrix from an already parsed `{"n": .., "rows": [[..]]}` document.
pub fn matrix_from_json(doc: &Value) -> Result<RationalMatrix> {
    let rows = doc
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing `rows` array".into()))?;
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Malformed("row is not an array".into()))?
                .iter()
                .map(json_entry)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(n) = doc.get("n") {
        let n = n
            .as_u64()
            .ok_or_else(|| Error::Malformed("`n` is not a non-negative integer".into()))?;
        if n as usize != parsed.len() {
            return Err(Error::NonSquare(format!("n = {n} but {} rows given", parsed.len())));
        }
    }
    RationalMatrix::from_rows(parsed)
}

fn json_entry(v: &Value) -> Result<Scalar> {
    match v {
        // `arbitrary_precision` keeps the literal text, so decimals stay exact.
        Value::Number(n) => parse_scalar(&n.to_string()),
        Value::String(s) => parse_scalar(s),
        other => Err(Error::MalformedRational(other.to_string())),
    }
}

pub fn vector_from_json(v: &Value) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| Error::Malformed("expected an array".into()))?
        .iter()
        .map(json_entry)
        .collect()
}

/// Parses a comma or whitespace separated list of rationals, e.g. `"-1,1/2,0"`.
pub fn parse_vector(text: &str) -> Result<Vec<Scalar>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_scalar)
        .collect()
}
