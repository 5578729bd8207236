//! LCP degree of an R0-matrix at a generic right-hand side.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::classes::is_r0_capped;
use super::solve::{EnumCap, SupportKind, SupportTable};
use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::scalar::Scalar;

/// Draws allowed before giving up on finding a nondegenerate `q`.
pub const DEFAULT_RESAMPLE_BUDGET: usize = 64;

/// `deg A = Σ sgn det A_II` over the solutions of `LCP(A, q)` at a generic `q`.
pub fn degree(a: &RationalMatrix, seed: u64) -> Result<i64> {
    degree_capped(a, seed, EnumCap::default())
}

pub fn degree_capped(a: &RationalMatrix, seed: u64, cap: EnumCap) -> Result<i64> {
    cap.check(a.order())?;
    if is_r0_capped(a, cap)?.is_no() {
        return Err(Error::NotR0);
    }
    let table = SupportTable::new(a, cap)?;
    degree_with_table(&table, seed, DEFAULT_RESAMPLE_BUDGET)
}

/// Degree for a matrix already known to be R0.
pub(crate) fn degree_with_table(table: &SupportTable<'_>, seed: u64, budget: usize) -> Result<i64> {
    let n = table.matrix().order();
    let bound = 1_000_000i64 * (1 + n as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let q: Vec<Scalar> = (0..n)
            .map(|_| Scalar::from_integer(BigInt::from(rng.random_range(-bound..=bound))))
            .collect();
        if let Some(d) = signed_count(table, &q) {
            return Ok(d);
        }
    }
    Err(Error::ResamplingExhausted(budget))
}

/// Signed solution count at `q`, or `None` when `q` is degenerate for `A`.
pub fn degree_at(a: &RationalMatrix, q: &[Scalar], cap: EnumCap) -> Result<Option<i64>> {
    Ok(signed_count(&SupportTable::new(a, cap)?, q))
}

fn signed_count(table: &SupportTable<'_>, q: &[Scalar]) -> Option<i64> {
    let a = table.matrix();
    let mut total = 0;
    for s in &table.supports {
        match &s.kind {
            SupportKind::Nonsingular { inverse, det_sign, .. } => {
                let x = table.candidate(s, inverse, q);
                if s.idx.iter().any(|&i| x[i].is_zero()) {
                    return None;
                }
                let slacks: Vec<Scalar> = s.comp.iter().map(|&j| table.slack(s, &x, q, j)).collect();
                if slacks.iter().any(Zero::is_zero) {
                    return None;
                }
                if s.idx.iter().all(|&i| x[i].is_positive()) && slacks.iter().all(Signed::is_positive) {
                    total += det_sign.as_i32() as i64;
                }
            }
            SupportKind::Singular => {
                // q in the range of a singular supporting block is nongeneric.
                let aug = s
                    .idx
                    .iter()
                    .map(|&i| {
                        let mut r: Vec<Scalar> = s.idx.iter().map(|&j| a.get(i, j).clone()).collect();
                        r.push(q[i].clone());
                        r
                    })
                    .collect();
                if is_consistent(aug) {
                    return None;
                }
            }
        }
    }
    Some(total)
}

/// Whether the augmented system `[M | b]` has a solution.
fn is_consistent(mut aug: Vec<Vec<Scalar>>) -> bool {
    let rows = aug.len();
    let cols = aug.first().map_or(0, |r| r.len() - 1);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        for i in r + 1..rows {
            if aug[i][c].is_zero() {
                continue;
            }
            let f = &aug[i][c] / &aug[r][c];
            for j in c..=cols {
                let t = &f * &aug[r][j];
                aug[i][j] -= t;
            }
        }
        r += 1;
    }
    aug[r..].iter().all(|row| row[cols].is_zero())
}
