use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::scalar::to_f64;

use super::algebra::{AlgebraSpec, JordanElement};
use super::frame::{JordanFrame, FRAME_TOL};

/// Linear map on an algebra, stored as a dense matrix on the orthonormal
/// coordinates. The adjoint is the transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearTransform {
    algebra: AlgebraSpec,
    matrix: DMatrix<f64>,
}

impl LinearTransform {
    pub fn new(algebra: AlgebraSpec, matrix: DMatrix<f64>) -> Result<Self> {
        let d = algebra.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, got: matrix.nrows().max(matrix.ncols()) });
        }
        Ok(LinearTransform { algebra, matrix })
    }

    /// Matrix of `f` obtained by applying it to each basis element.
    pub fn from_fn(algebra: AlgebraSpec, f: impl Fn(&JordanElement) -> JordanElement) -> Self {
        let d = algebra.dim();
        let mut matrix = DMatrix::zeros(d, d);
        for k in 0..d {
            let mut c = DVector::zeros(d);
            c[k] = 1.0;
            let image = f(&JordanElement::from_coords(algebra, c));
            matrix.set_column(k, image.coords());
        }
        LinearTransform { algebra, matrix }
    }

    pub fn identity(algebra: AlgebraSpec) -> Self {
        LinearTransform { algebra, matrix: DMatrix::identity(algebra.dim(), algebra.dim()) }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    fn check(&self, other: AlgebraSpec) -> Result<()> {
        if self.algebra != other {
            return Err(Error::AlgebraMismatch(self.algebra.to_string(), other.to_string()));
        }
        Ok(())
    }

    pub fn apply(&self, x: &JordanElement) -> Result<JordanElement> {
        self.check(x.algebra())?;
        Ok(JordanElement::from_coords(self.algebra, &self.matrix * x.coords()))
    }

    /// `self o other`: apply `other` first.
    pub fn compose(&self, other: &LinearTransform) -> Result<Self> {
        self.check(other.algebra)?;
        Ok(LinearTransform { algebra: self.algebra, matrix: &self.matrix * &other.matrix })
    }

    pub fn adjoint(&self) -> Self {
        LinearTransform { algebra: self.algebra, matrix: self.matrix.transpose() }
    }

    /// Spectral norm of `self - other`.
    pub fn operator_distance(&self, other: &LinearTransform) -> Result<f64> {
        self.check(other.algebra)?;
        let diff = &self.matrix - &other.matrix;
        Ok(diff.singular_values().max())
    }

    /// Spectral norm of `L - L^T`.
    pub fn asymmetry(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).singular_values().max()
    }

    pub fn try_inverse(&self) -> Result<Self> {
        let inv = self.matrix.clone().try_inverse().ok_or(Error::Singular)?;
        Ok(LinearTransform { algebra: self.algebra, matrix: inv })
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.matrix.rank(tol)
    }
}

/// Float copy of an exact matrix.
pub fn to_real(a: &RationalMatrix) -> DMatrix<f64> {
    let n = a.order();
    DMatrix::from_fn(n, n, |i, j| to_f64(a.get(i, j)))
}

fn check_frame_order(a: &DMatrix<f64>, frame: &JordanFrame) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NonSquare(format!("{}x{}", a.nrows(), a.ncols())));
    }
    if a.nrows() != frame.len() {
        return Err(Error::DimensionMismatch { expected: frame.len(), got: a.nrows() });
    }
    Ok(())
}

/// `A^ = sum a_ij e_i (x) e_j`, i.e. `A^ x = (A [x])^`.
pub fn hat_transform(a: &DMatrix<f64>, frame: &JordanFrame) -> Result<LinearTransform> {
    check_frame_order(a, frame)?;
    let d = frame.algebra().dim();
    let e = DMatrix::from_fn(d, frame.len(), |r, i| frame.idempotents()[i].coords()[r]);
    Ok(LinearTransform { algebra: frame.algebra(), matrix: &e * a * e.transpose() })
}

/// `R_(A,B)(x) = sum_i (A [x])_i e_i + sum_{i<j} b_ij x_ij`.
pub fn r_ab_transform(a: &DMatrix<f64>, b: &DMatrix<f64>, frame: &JordanFrame) -> Result<LinearTransform> {
    check_frame_order(a, frame)?;
    check_frame_order(b, frame)?;
    if (b - b.transpose()).amax() > 0.0 {
        return Err(Error::NotSymmetric);
    }
    frame.validate(FRAME_TOL)?;
    let diag = hat_transform(a, frame)?;
    let off = LinearTransform::from_fn(frame.algebra(), |x| {
        let p = frame.peirce(x).expect("same algebra");
        let mut y = JordanElement::zero(frame.algebra());
        for ((i, j), part) in &p.off {
            y = y.add(&part.scale(b[(*i, *j)])).expect("same algebra");
        }
        y
    });
    Ok(LinearTransform { algebra: frame.algebra(), matrix: diag.matrix + off.matrix })
}

/// `(a (x) b)(x) = <b, x> a`.
pub fn rank_one(a: &JordanElement, b: &JordanElement) -> Result<LinearTransform> {
    a.inner(b)?;
    Ok(LinearTransform { algebra: a.algebra(), matrix: a.coords() * b.coords().transpose() })
}

/// `P_c(x) = 2 c o (c o x) - c^2 o x`.
pub fn quadratic_representation(c: &JordanElement) -> LinearTransform {
    let c2 = c.square();
    LinearTransform::from_fn(c.algebra(), |x| {
        let a = c.product_unchecked(&c.product_unchecked(x)).scale(2.0);
        a.sub(&c2.product_unchecked(x)).expect("same algebra")
    })
}

/// `L_phi = phi^T L phi`.
pub fn conjugate_transform(l: &LinearTransform, phi: &LinearTransform) -> Result<LinearTransform> {
    phi.adjoint().compose(&l.compose(phi)?)
}
