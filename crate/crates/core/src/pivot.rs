//! Principal pivot transforms and Schur complements.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::scalar::Scalar;

/// Partition of `{0..n}` into a pivot set `J` and its complement.
///
/// With `Jc` listed first, `A = [B C; D E]` where `B = A[Jc,Jc]`,
/// `C = A[Jc,J]`, `D = A[J,Jc]` and `E = A[J,J]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSplit {
    pub pivot: Vec<usize>,
    pub rest: Vec<usize>,
}

impl BlockSplit {
    pub fn new(n: usize, pivot: &[usize]) -> Result<Self> {
        let mut p = pivot.to_vec();
        p.sort_unstable();
        p.dedup();
        if p.len() != pivot.len() {
            return Err(Error::InvalidPivotSet(format!("repeated index in {pivot:?}")));
        }
        if p.is_empty() || p.len() >= n {
            return Err(Error::InvalidPivotSet(format!(
                "pivot set must be a nonempty proper subset, got {} of {n} indices",
                p.len()
            )));
        }
        if let Some(&i) = p.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: i, order: n });
        }
        let rest = (0..n).filter(|i| p.binary_search(i).is_err()).collect();
        Ok(BlockSplit { pivot: p, rest })
    }

    pub fn b(&self, a: &RationalMatrix) -> Vec<Vec<Scalar>> {
        a.block(&self.rest, &self.rest)
    }

    pub fn c(&self, a: &RationalMatrix) -> Vec<Vec<Scalar>> {
        a.block(&self.rest, &self.pivot)
    }

    pub fn d(&self, a: &RationalMatrix) -> Vec<Vec<Scalar>> {
        a.block(&self.pivot, &self.rest)
    }

    pub fn e(&self, a: &RationalMatrix) -> RationalMatrix {
        a.principal(&self.pivot)
    }
}

fn pivot_inverse(e: &RationalMatrix) -> Result<RationalMatrix> {
    if e.order() == 1 {
        let v = e.get(0, 0);
        if v.is_zero() {
            return Err(Error::SingularPivot);
        }
        return Ok(RationalMatrix::from_fn(1, |_, _| v.recip()));
    }
    e.inverse().map_err(|_| Error::SingularPivot)
}

fn product(x: &[Vec<Scalar>], y: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let inner = y.len();
    let cols = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Scalar::zero(), |acc, k| acc + &row[k] * &y[k][j]))
                .collect()
        })
        .collect()
}

fn rows_of(m: &RationalMatrix) -> Vec<Vec<Scalar>> {
    m.rows().map(<[Scalar]>::to_vec).collect()
}

/// `A/E = B - C E⁻¹ D`, indexed by the complement of `pivot` in increasing order.
pub fn schur_complement(a: &RationalMatrix, pivot: &[usize]) -> Result<RationalMatrix> {
    let split = BlockSplit::new(a.order(), pivot)?;
    let einv = rows_of(&pivot_inverse(&split.e(a))?);
    let ced = product(&product(&split.c(a), &einv), &split.d(a));
    let b = split.b(a);
    let m = split.rest.len();
    Ok(RationalMatrix::from_fn(m, |i, j| &b[i][j] - &ced[i][j]))
}

/// Principal pivot transform on `pivot`, keeping the labeling of `A`:
/// `Ã = [A/E, C E⁻¹; -E⁻¹ D, E⁻¹]` in block form.
pub fn ppt(a: &RationalMatrix, pivot: &[usize]) -> Result<RationalMatrix> {
    let n = a.order();
    let split = BlockSplit::new(n, pivot)?;
    let einv = rows_of(&pivot_inverse(&split.e(a))?);
    let c = split.c(a);
    let d = split.d(a);
    let ce = product(&c, &einv);
    let ed = product(&einv, &d);
    let ced = product(&ce, &d);
    let b = split.b(a);

    // Position of each original index inside its block.
    let mut slot = vec![(false, 0usize); n];
    for (p, &i) in split.rest.iter().enumerate() {
        slot[i] = (false, p);
    }
    for (p, &i) in split.pivot.iter().enumerate() {
        slot[i] = (true, p);
    }
    Ok(RationalMatrix::from_fn(n, |i, j| match (slot[i], slot[j]) {
        ((false, r), (false, s)) => &b[r][s] - &ced[r][s],
        ((false, r), (true, s)) => ce[r][s].clone(),
        ((true, r), (false, s)) => -ed[r][s].clone(),
        ((true, r), (true, s)) => einv[r][s].clone(),
    }))
}
