use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

use super::algebra::{AlgebraSpec, JordanElement};

/// Tolerance used when a frame is validated on construction.
pub const FRAME_TOL: f64 = 1e-9;

/// Ordered complete system of orthogonal primitive idempotents.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanFrame {
    algebra: AlgebraSpec,
    idempotents: Vec<JordanElement>,
}

/// `x = sum x_i e_i + sum_{i<j} x_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeirceDecomposition {
    pub diagonal: Vec<f64>,
    pub off: Vec<((usize, usize), JordanElement)>,
}

impl PeirceDecomposition {
    pub fn reconstruct(&self, frame: &JordanFrame) -> Result<JordanElement> {
        let mut x = frame.hat(&self.diagonal)?;
        for (_, part) in &self.off {
            x = x.add(part)?;
        }
        Ok(x)
    }
}

impl JordanFrame {
    pub fn new(algebra: AlgebraSpec, idempotents: Vec<JordanElement>) -> Result<Self> {
        let frame = JordanFrame { algebra, idempotents };
        frame.validate(FRAME_TOL)?;
        Ok(frame)
    }

    /// `{e_1, ..., e_n}` on `R^n`, `{E_11, ..., E_mm}` on symmetric matrices.
    pub fn standard(algebra: AlgebraSpec) -> Self {
        let idempotents = (0..algebra.rank())
            .map(|i| {
                let mut c = DVector::zeros(algebra.dim());
                c[i] = 1.0;
                JordanElement::from_coords(algebra, c)
            })
            .collect();
        JordanFrame { algebra, idempotents }
    }

    /// `e_i = u_i u_i^T` for the columns `u_i` of an orthogonal matrix.
    pub fn from_orthogonal(q: &DMatrix<f64>) -> Self {
        let m = q.nrows();
        let algebra = AlgebraSpec::Sym(m);
        let idempotents = (0..m)
            .map(|i| {
                let u = q.column(i);
                let p = u * u.transpose();
                let p = (&p + p.transpose()) * 0.5;
                JordanElement::from_matrix(&p).expect("outer square is symmetric")
            })
            .collect();
        JordanFrame { algebra, idempotents }
    }

    /// Standard frame moved by a random orthogonal matrix (symmetric
    /// matrices) or a random permutation (`R^n`, whose frames are exactly
    /// the permuted standard ones).
    pub fn random<R: Rng + ?Sized>(algebra: AlgebraSpec, rng: &mut R) -> Self {
        match algebra {
            AlgebraSpec::Rn(n) => {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(rng);
                let std = Self::standard(algebra);
                let idempotents = order.into_iter().map(|i| std.idempotents[i].clone()).collect();
                JordanFrame { algebra, idempotents }
            }
            AlgebraSpec::Sym(m) => Self::from_orthogonal(&random_orthogonal(m, rng)),
        }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    pub fn idempotents(&self) -> &[JordanElement] {
        &self.idempotents
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// Largest violation of idempotency, orthogonality, trace one, and
    /// `sum e_i = e`.
    pub fn residual(&self) -> f64 {
        let e = &self.idempotents;
        let mut worst: f64 = 0.0;
        let mut sum = JordanElement::zero(self.algebra);
        for (i, ei) in e.iter().enumerate() {
            worst = worst.max(ei.square().distance(ei));
            worst = worst.max((ei.trace() - 1.0).abs());
            for ej in &e[i + 1..] {
                worst = worst.max(ei.product_unchecked(ej).norm());
            }
            sum = sum.add(ei).expect("same algebra");
        }
        worst.max(sum.distance(&JordanElement::unit(self.algebra)))
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.idempotents.len() != self.algebra.rank() {
            return Err(Error::InvalidFrame(format!(
                "{} idempotents for rank {}",
                self.idempotents.len(),
                self.algebra.rank()
            )));
        }
        if let Some(e) = self.idempotents.iter().find(|e| e.algebra() != self.algebra) {
            return Err(Error::AlgebraMismatch(self.algebra.to_string(), e.algebra().to_string()));
        }
        let r = self.residual();
        if r > tol {
            return Err(Error::InvalidFrame(format!("residual {r:e} exceeds {tol:e}")));
        }
        Ok(())
    }

    /// `r^ = sum r_i e_i`.
    pub fn hat(&self, r: &[f64]) -> Result<JordanElement> {
        if r.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: r.len() });
        }
        let mut c = DVector::zeros(self.algebra.dim());
        for (ri, ei) in r.iter().zip(&self.idempotents) {
            c.axpy(*ri, ei.coords(), 1.0);
        }
        Ok(JordanElement::from_coords(self.algebra, c))
    }

    /// `[x] = (<x, e_1>, ..., <x, e_n>)`.
    pub fn bracket(&self, x: &JordanElement) -> Result<Vec<f64>> {
        self.idempotents.iter().map(|e| e.inner(x)).collect()
    }

    /// Peirce components relative to the frame; `x_ij = 4 e_i o (e_j o x)`.
    pub fn peirce(&self, x: &JordanElement) -> Result<PeirceDecomposition> {
        let diagonal = self.bracket(x)?;
        let e = &self.idempotents;
        let mut off = Vec::new();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                let part = e[i].product_unchecked(&e[j].product_unchecked(x)).scale(4.0);
                off.push(((i, j), part));
            }
        }
        Ok(PeirceDecomposition { diagonal, off })
    }
}

/// Haar-distributed orthogonal matrix from the QR factorization of a
/// Gaussian matrix, with the signs of `R`'s diagonal folded into `Q`.
pub fn random_orthogonal<R: Rng + ?Sized>(m: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(m, m, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..m {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

pub fn hat_vector(r: &[f64], frame: &JordanFrame) -> Result<JordanElement> {
    frame.hat(r)
}

pub fn bracket(x: &JordanElement, frame: &JordanFrame) -> Result<Vec<f64>> {
    frame.bracket(x)
}

pub fn peirce_decompose(x: &JordanElement, frame: &JordanFrame) -> Result<PeirceDecomposition> {
    frame.validate(FRAME_TOL)?;
    frame.peirce(x)
}
