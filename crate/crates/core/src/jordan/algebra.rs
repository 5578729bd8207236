use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::frame::JordanFrame;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// One of the two concrete algebras: `R^n` with the componentwise product,
/// or real symmetric `m x m` matrices with `X o Y = (XY + YX)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraSpec {
    Rn(usize),
    Sym(usize),
}

impl AlgebraSpec {
    pub fn rank(self) -> usize {
        match self {
            AlgebraSpec::Rn(n) => n,
            AlgebraSpec::Sym(m) => m,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            AlgebraSpec::Rn(n) => n,
            AlgebraSpec::Sym(m) => m * (m + 1) / 2,
        }
    }

    pub fn validate(self) -> Result<Self> {
        if self.rank() == 0 {
            return Err(Error::Domain("algebra rank must be at least 1".into()));
        }
        Ok(self)
    }

    /// Off-diagonal index pairs `(i, j)`, `i < j`, in coordinate order.
    pub fn off_pairs(self) -> Vec<(usize, usize)> {
        let m = self.rank();
        match self {
            AlgebraSpec::Rn(_) => Vec::new(),
            AlgebraSpec::Sym(_) => (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect(),
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            AlgebraSpec::Rn(n) => json!({ "kind": "rn", "n": n }),
            AlgebraSpec::Sym(m) => json!({ "kind": "sym", "m": m }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let size = |key: &str| {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|n| n as usize)
                .ok_or_else(|| Error::Malformed(format!("algebra needs integer `{key}`")))
        };
        let spec = match v.get("kind").and_then(Value::as_str) {
            Some("rn") => AlgebraSpec::Rn(size("n")?),
            Some("sym") => AlgebraSpec::Sym(size("m")?),
            _ => return Err(Error::Malformed("algebra kind must be `rn` or `sym`".into())),
        };
        spec.validate()
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Rn(n) => write!(f, "rn:{n}"),
            AlgebraSpec::Sym(m) => write!(f, "sym:{m}"),
        }
    }
}

/// Parses `rn:4` or `sym:3`.
impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("algebra `{s}`, expected rn:N or sym:M"));
        let (kind, size) = s.split_once(':').ok_or_else(bad)?;
        let size: usize = size.trim().parse().map_err(|_| bad())?;
        let spec = match kind.trim() {
            "rn" => AlgebraSpec::Rn(size),
            "sym" => AlgebraSpec::Sym(size),
            _ => return Err(bad()),
        };
        spec.validate()
    }
}

/// An element stored by its coordinates in an orthonormal basis.
///
/// For symmetric matrices the basis is `E_ii` for each `i`, then
/// `(E_ij + E_ji)/sqrt(2)` for `i < j` in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanElement {
    algebra: AlgebraSpec,
    coords: DVector<f64>,
}

impl JordanElement {
    pub fn new(algebra: AlgebraSpec, coords: Vec<f64>) -> Result<Self> {
        algebra.validate()?;
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), got: coords.len() });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("coordinates must be finite".into()));
        }
        Ok(JordanElement { algebra, coords: DVector::from_vec(coords) })
    }

    pub(crate) fn from_coords(algebra: AlgebraSpec, coords: DVector<f64>) -> Self {
        debug_assert_eq!(coords.len(), algebra.dim());
        JordanElement { algebra, coords }
    }

    pub fn zero(algebra: AlgebraSpec) -> Self {
        Self::from_coords(algebra, DVector::zeros(algebra.dim()))
    }

    pub fn unit(algebra: AlgebraSpec) -> Self {
        let mut c = DVector::zeros(algebra.dim());
        for i in 0..algebra.rank() {
            c[i] = 1.0;
        }
        Self::from_coords(algebra, c)
    }

    /// Diagonal element `sum d_i E_ii` (the standard frame combination).
    pub fn diagonal(algebra: AlgebraSpec, d: &[f64]) -> Result<Self> {
        if d.len() != algebra.rank() {
            return Err(Error::DimensionMismatch { expected: algebra.rank(), got: d.len() });
        }
        let mut c = DVector::zeros(algebra.dim());
        c.rows_mut(0, d.len()).copy_from_slice(d);
        Ok(Self::from_coords(algebra, c))
    }

    /// Symmetric matrix element; the input is symmetrized as `(M + M^T)/2`
    /// after checking symmetry to `1e-12` relative precision.
    pub fn from_matrix(m: &DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NonSquare(format!("{}x{}", m.nrows(), m.ncols())));
        }
        let scale = m.amax().max(1.0);
        if (m - m.transpose()).amax() > 1e-12 * scale {
            return Err(Error::NotSymmetric);
        }
        let algebra = AlgebraSpec::Sym(m.nrows()).validate()?;
        Ok(Self::from_sym_unchecked(algebra, m))
    }

    fn from_sym_unchecked(algebra: AlgebraSpec, m: &DMatrix<f64>) -> Self {
        let r = algebra.rank();
        let mut c = DVector::zeros(algebra.dim());
        for i in 0..r {
            c[i] = m[(i, i)];
        }
        for (k, (i, j)) in algebra.off_pairs().into_iter().enumerate() {
            c[r + k] = (m[(i, j)] + m[(j, i)]) / SQRT_2;
        }
        Self::from_coords(algebra, c)
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    /// The element as a matrix: the symmetric matrix itself, or `diag(x)` on `R^n`.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let r = self.algebra.rank();
        let mut m = DMatrix::zeros(r, r);
        for i in 0..r {
            m[(i, i)] = self.coords[i];
        }
        for (k, (i, j)) in self.algebra.off_pairs().into_iter().enumerate() {
            let v = self.coords[r + k] / SQRT_2;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(algebra: AlgebraSpec, rng: &mut R) -> Self {
        let c = DVector::from_fn(algebra.dim(), |_, _| rng.sample::<f64, _>(StandardNormal));
        Self::from_coords(algebra, c)
    }

    /// `y o y` for a random `y`, scaled to unit norm.
    pub fn random_cone<R: Rng + ?Sized>(algebra: AlgebraSpec, rng: &mut R) -> Self {
        let y = Self::random(algebra, rng);
        let s = y.square();
        let n = s.norm();
        s.scale(1.0 / n)
    }

    fn check_same(&self, other: &JordanElement) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch(self.algebra.to_string(), other.algebra.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &JordanElement) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_coords(self.algebra, &self.coords + &other.coords))
    }

    pub fn sub(&self, other: &JordanElement) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_coords(self.algebra, &self.coords - &other.coords))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_coords(self.algebra, &self.coords * s)
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    /// Largest coordinate difference.
    pub fn distance(&self, other: &JordanElement) -> f64 {
        (&self.coords - &other.coords).amax()
    }

    pub fn product(&self, other: &JordanElement) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.product_unchecked(other))
    }

    pub(crate) fn product_unchecked(&self, other: &JordanElement) -> Self {
        match self.algebra {
            AlgebraSpec::Rn(_) => Self::from_coords(self.algebra, self.coords.component_mul(&other.coords)),
            AlgebraSpec::Sym(_) => {
                let x = self.to_matrix();
                let y = other.to_matrix();
                let p = (&x * &y + &y * &x) * 0.5;
                Self::from_sym_unchecked(self.algebra, &p)
            }
        }
    }

    pub fn square(&self) -> Self {
        self.product_unchecked(self)
    }

    /// `<x, y> = trace(x o y)`; the coordinate dot product in the orthonormal basis.
    pub fn inner(&self, other: &JordanElement) -> Result<f64> {
        self.check_same(other)?;
        Ok(self.coords.dot(&other.coords))
    }

    pub fn trace(&self) -> f64 {
        self.coords.rows(0, self.algebra.rank()).sum()
    }

    /// Eigenvalues and a Jordan frame with `x = sum x_i e_i`. On `R^n` the
    /// eigenvalues are the components in order; on symmetric matrices they
    /// are sorted in decreasing order.
    pub fn spectral(&self) -> Result<(Vec<f64>, JordanFrame)> {
        match self.algebra {
            AlgebraSpec::Rn(_) => Ok((self.coords.iter().copied().collect(), JordanFrame::standard(self.algebra))),
            AlgebraSpec::Sym(m) => {
                let eig = SymmetricEigen::try_new(self.to_matrix(), f64::EPSILON, 0).ok_or(Error::EigenFailure)?;
                let mut order: Vec<usize> = (0..m).collect();
                order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
                let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
                let q = DMatrix::from_fn(m, m, |r, c| eig.eigenvectors[(r, order[c])]);
                Ok((values, JordanFrame::from_orthogonal(&q)))
            }
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        match self.algebra {
            AlgebraSpec::Rn(_) => Ok(self.coords.iter().copied().collect()),
            AlgebraSpec::Sym(_) => {
                let eig = SymmetricEigen::try_new(self.to_matrix(), f64::EPSILON, 0).ok_or(Error::EigenFailure)?;
                let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
                v.sort_by(|a, b| b.total_cmp(a));
                Ok(v)
            }
        }
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.into_iter().fold(f64::INFINITY, f64::min))
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.into_iter().fold(f64::NEG_INFINITY, f64::max))
    }

    /// All eigenvalues `>= -tol`.
    pub fn in_cone(&self, tol: f64) -> Result<bool> {
        Ok(self.min_eigenvalue()? >= -tol)
    }

    /// All eigenvalues `> tol`.
    pub fn in_interior(&self, tol: f64) -> Result<bool> {
        Ok(self.min_eigenvalue()? > tol)
    }

    /// Applies `f` to the eigenvalues.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let (values, frame) = self.spectral()?;
        let mapped: Vec<f64> = values.into_iter().map(f).collect();
        frame.hat(&mapped)
    }

    /// `sqrt(x)` for `x` in the cone; eigenvalues in `[-tol, 0)` are clamped.
    pub fn sqrt(&self, tol: f64) -> Result<Self> {
        let lo = self.min_eigenvalue()?;
        if lo < -tol {
            return Err(Error::Domain(format!("sqrt needs x >= 0, min eigenvalue {lo:e}")));
        }
        self.spectral_map(|v| v.max(0.0).sqrt())
    }

    /// `x^{-1}` for `x` in the interior of the cone.
    pub fn inverse(&self, tol: f64) -> Result<Self> {
        let lo = self.min_eigenvalue()?;
        if lo <= tol {
            return Err(Error::Domain(format!("inverse needs x > 0, min eigenvalue {lo:e}")));
        }
        self.spectral_map(f64::recip)
    }

    /// `{"algebra": {...}, "coords": [...]}`.
    pub fn to_json(&self) -> Value {
        json!({ "algebra": self.algebra.to_json(), "coords": self.coords.as_slice() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let algebra = AlgebraSpec::from_json(v.get("algebra").unwrap_or(&Value::Null))?;
        let coords = v
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("element needs a `coords` array".into()))?
            .iter()
            .map(|c| c.as_f64().ok_or_else(|| Error::Malformed(format!("coordinate `{c}` is not a number"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, coords)
    }
}

pub fn jordan_product(x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
    x.product(y)
}

pub fn trace_inner_product(x: &JordanElement, y: &JordanElement) -> Result<f64> {
    x.inner(y)
}

pub fn spectral_decomposition(x: &JordanElement) -> Result<(Vec<f64>, JordanFrame)> {
    x.spectral()
}

pub fn in_cone(x: &JordanElement, tol: f64) -> Result<bool> {
    x.in_cone(tol)
}

pub fn in_interior(x: &JordanElement, tol: f64) -> Result<bool> {
    x.in_interior(tol)
}
