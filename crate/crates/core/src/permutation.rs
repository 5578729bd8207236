//! Simultaneous row/column permutations that keep the classes of interest invariant.

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;

/// Bijection on `0..n`; `images[i]` is where index `i` is sent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::IndexOutOfRange { index: i, order: n });
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The cyclic shift `P = [e_{n-k+1}, .., e_n, e_1, .., e_{n-k}]`, which sends
    /// row `k` to row `n` (1-based) and keeps bdsw matrices bdsw.
    pub fn rotation(n: usize, k: usize) -> Self {
        Permutation {
            images: (0..n).map(|j| (j + n - k % n) % n).collect(),
        }
    }

    /// The antidiagonal permutation `J`.
    pub fn reversal(n: usize) -> Self {
        Permutation { images: (0..n).rev().collect() }
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &s) in self.images.iter().enumerate() {
            inv[s] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// `P A Pᵀ`, i.e. `b[σ(i)][σ(j)] = a[i][j]`.
    pub fn conjugate(&self, a: &RationalMatrix) -> RationalMatrix {
        assert_eq!(a.order(), self.order());
        let inv = self.inverse();
        RationalMatrix::from_fn(a.order(), |i, j| a.get(inv.images[i], inv.images[j]).clone())
    }
}

/// `B = P A Pᵀ` for the cyclic shift with parameter `k`, `1 <= k < n`.
pub fn rotate_conjugate(a: &RationalMatrix, k: usize) -> Result<RationalMatrix> {
    let n = a.order();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, order: n });
    }
    Ok(Permutation::rotation(n, k).conjugate(a))
}

/// `J A J` with `J` the antidiagonal permutation matrix.
pub fn antidiagonal_conjugate(a: &RationalMatrix) -> RationalMatrix {
    Permutation::reversal(a.order()).conjugate(a)
}
