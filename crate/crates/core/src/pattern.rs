//! Sign patterns of exact matrices.

use std::fmt;

use crate::matrix::RationalMatrix;
use crate::scalar::Sign;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignPattern {
    n: usize,
    cells: Vec<Sign>,
}

impl SignPattern {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Sign {
        self.cells[i * self.n + j]
    }

    pub fn from_signs(rows: &[&[Sign]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "sign pattern must be square");
        SignPattern {
            n,
            cells: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }
}

/// Exact entrywise sign readout.
pub fn sign_pattern(a: &RationalMatrix) -> SignPattern {
    let n = a.order();
    SignPattern {
        n,
        cells: (0..n * n).map(|k| a.sign(k / n, k % n)).collect(),
    }
}

impl fmt::Debug for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .cells
            .chunks(self.n)
            .map(|r| r.iter().map(|s| s.symbol().to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use Sign::*;

    #[test]
    fn reads_signs() {
        let a = RationalMatrix::from_i64(&[&[-1, 0], &[0, -1]]);
        assert_eq!(sign_pattern(&a), SignPattern::from_signs(&[&[Neg, Zero], &[Zero, Neg]]));
        let b = RationalMatrix::from_i64(&[&[1, -1], &[1, 0]]);
        assert_eq!(sign_pattern(&b), SignPattern::from_signs(&[&[Pos, Neg], &[Pos, Zero]]));
        let c = RationalMatrix::from_rows(vec![vec![frac(1, 3), frac(-2, 5)], vec![int(0), int(7)]]).unwrap();
        assert_eq!(sign_pattern(&c), SignPattern::from_signs(&[&[Pos, Neg], &[Zero, Pos]]));
        assert_eq!(sign_pattern(&c).to_string(), "+ - / 0 +");
    }
}
