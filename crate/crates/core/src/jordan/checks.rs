use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Result;

use super::algebra::{AlgebraSpec, JordanElement};
use super::frame::JordanFrame;
use super::transform::hat_transform;

/// Largest residual of each identity over a sampled run.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub algebra: AlgebraSpec,
    pub samples: usize,
    pub residuals: Vec<(&'static str, f64)>,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    pub fn failures(&self, tol: f64) -> Vec<(&'static str, f64)> {
        self.residuals.iter().copied().filter(|(_, r)| r.partial_cmp(&tol) != Some(std::cmp::Ordering::Less)).collect()
    }

    pub fn to_json(&self) -> Value {
        let residuals: serde_json::Map<String, Value> =
            self.residuals.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        json!({ "algebra": self.algebra.to_string(), "samples": self.samples, "residuals": residuals })
    }
}

const NAMES: [&str; 9] = [
    "commutativity",
    "jordan-identity",
    "trace-compatibility",
    "spectral-reconstruction",
    "frame-validity",
    "bracket-of-hat",
    "hat-inner-product",
    "hat-transform",
    "hat-quadratic-form",
];

fn mat_vec(a: &DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (a * DVector::from_column_slice(v)).iter().copied().collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Samples the algebra axioms, frame validity and the hat/bracket identities
/// `[r^] = r`, `<r, s> = <r^, s^>`, `A^ r^ = (Ar)^`, `<A^ x, x> = <A[x], [x]>`
/// on random inputs and random rotated frames.
pub fn identity_residuals(algebra: AlgebraSpec, samples: usize, seed: u64) -> Result<IdentityReport> {
    let algebra = algebra.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = algebra.rank();
    let mut worst = [0.0f64; 9];
    for _ in 0..samples {
        let x = JordanElement::random(algebra, &mut rng);
        let y = JordanElement::random(algebra, &mut rng);
        let z = JordanElement::random(algebra, &mut rng);
        let xy = x.product(&y)?;
        let x2 = x.square();
        let (eigs, frame) = x.spectral()?;
        let rotated = JordanFrame::random(algebra, &mut rng);
        let r: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let s: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-3.0..3.0));
        let rh = rotated.hat(&r)?;
        let sh = rotated.hat(&s)?;
        let ahat = hat_transform(&a, &rotated)?;
        let bx = rotated.bracket(&x)?;

        let values = [
            xy.distance(&y.product(&x)?),
            x.product(&x2.product(&y)?)?.distance(&x2.product(&xy)?),
            (xy.inner(&z)? - x.inner(&y.product(&z)?)?).abs(),
            frame.hat(&eigs)?.distance(&x),
            frame.residual().max(rotated.residual()),
            rotated.bracket(&rh)?.iter().zip(&r).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max),
            (dot(&r, &s) - rh.inner(&sh)?).abs(),
            ahat.apply(&rh)?.distance(&rotated.hat(&mat_vec(&a, &r))?),
            (ahat.apply(&x)?.inner(&x)? - dot(&mat_vec(&a, &bx), &bx)).abs(),
        ];
        for (w, v) in worst.iter_mut().zip(values) {
            *w = w.max(v);
        }
    }
    Ok(IdentityReport { algebra, samples, residuals: NAMES.iter().copied().zip(worst).collect() })
}
