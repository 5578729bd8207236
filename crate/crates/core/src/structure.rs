//! Structure detection for triangular and bidiagonal southwest (bdsw) matrices.
//!
//! A bdsw matrix of order `n >= 2` is zero everywhere except on the diagonal,
//! the superdiagonal and the southwest corner `(n, 1)`. In row `i` the
//! "relevant off-diagonal" entry is `a[i][i+1]`, or `a[n][1]` for the last row.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::scalar::Scalar;

/// The bdsw type of a matrix with no nonpositive row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BdswType {
    /// Some row is nonnegative. `k` (1-based, `k < n`) locates a nonnegative row;
    /// when only row `n` is nonnegative, `k = 1` refers to the matrix rotated by
    /// `n - 1`, which moves row `n` to the top.
    I { k: usize },
    /// Positive diagonal, negative relevant off-diagonals.
    II,
    /// Negative diagonal, positive relevant off-diagonals.
    III,
    /// Mixed diagonal signs, each row with one positive and one negative entry;
    /// `k` counts the negative diagonal entries.
    IV { k: usize },
}

impl BdswType {
    /// Same type, ignoring the carried index of Type I.
    pub fn same_kind(&self, other: &BdswType) -> bool {
        match (self, other) {
            (BdswType::I { .. }, BdswType::I { .. }) => true,
            (a, b) => a == b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StructureTag {
    UpperTriangular,
    LowerTriangular,
    /// Upper bidiagonal (diagonal and superdiagonal only), `n >= 2`.
    Bidiagonal,
    /// Upper triangular leading block of order `n - 1` with an arbitrary last row and column.
    TriangularPlusRow,
    Bdsw(BdswType),
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StructureNote {
    /// 1-based index of the first row with no positive entry.
    NonpositiveRow(usize),
    TwoByTwo,
    Scalar,
    /// The matrix is also bdsw-shaped, of the given type.
    AlsoBdsw(BdswType),
    /// Only the last row is nonnegative; the Type-I index refers to the rotated matrix.
    LastRowNonnegative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureClass {
    pub tag: StructureTag,
    pub notes: Vec<StructureNote>,
}

impl StructureClass {
    pub fn nonpositive_row(&self) -> Option<usize> {
        self.notes.iter().find_map(|n| match n {
            StructureNote::NonpositiveRow(i) => Some(*i),
            _ => None,
        })
    }
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureTag::UpperTriangular => write!(f, "upper-triangular"),
            StructureTag::LowerTriangular => write!(f, "lower-triangular"),
            StructureTag::Bidiagonal => write!(f, "bidiagonal"),
            StructureTag::TriangularPlusRow => write!(f, "triangular-plus-row"),
            StructureTag::Bdsw(BdswType::I { k }) => write!(f, "bdsw-I(k={k})"),
            StructureTag::Bdsw(BdswType::II) => write!(f, "bdsw-II"),
            StructureTag::Bdsw(BdswType::III) => write!(f, "bdsw-III"),
            StructureTag::Bdsw(BdswType::IV { k }) => write!(f, "bdsw-IV(k={k})"),
            StructureTag::General => write!(f, "general"),
        }
    }
}

/// Relevant off-diagonal entry of row `i` (0-based) in a bdsw matrix.
pub fn relevant_off_diagonal(a: &RationalMatrix, i: usize) -> &Scalar {
    let n = a.order();
    if i + 1 < n {
        a.get(i, i + 1)
    } else {
        a.get(n - 1, 0)
    }
}

pub fn is_bdsw_shape(a: &RationalMatrix) -> bool {
    let n = a.order();
    if n < 2 {
        return false;
    }
    (0..n).all(|i| {
        (0..n).all(|j| {
            let allowed = j == i || j == i + 1 || (i == n - 1 && j == 0);
            allowed || a.get(i, j).is_zero()
        })
    })
}

pub fn is_upper_bidiagonal(a: &RationalMatrix) -> bool {
    let n = a.order();
    n >= 2 && (0..n).all(|i| (0..n).all(|j| j == i || j == i + 1 || a.get(i, j).is_zero()))
}

/// First (0-based) row with no positive entry.
pub fn first_nonpositive_row(a: &RationalMatrix) -> Option<usize> {
    a.rows().position(|r| r.iter().all(|v| !v.is_positive()))
}

fn row_nonnegative(a: &RationalMatrix, i: usize) -> bool {
    a.row(i).iter().all(|v| !v.is_negative())
}

/// Bdsw type of `a`, or `None` if `a` is not bdsw-shaped or has a nonpositive row.
pub fn bdsw_type(a: &RationalMatrix) -> Option<BdswType> {
    if !is_bdsw_shape(a) || first_nonpositive_row(a).is_some() {
        return None;
    }
    let n = a.order();
    let nonneg: Vec<usize> = (0..n).filter(|&i| row_nonnegative(a, i)).collect();
    if let Some(&first) = nonneg.first() {
        let k = if first < n - 1 { first + 1 } else { 1 };
        return Some(BdswType::I { k });
    }
    // Every row now has exactly one positive and one negative entry.
    let negative_diag = (0..n).filter(|&i| a.get(i, i).is_negative()).count();
    Some(match negative_diag {
        0 => BdswType::II,
        k if k == n => BdswType::III,
        k => BdswType::IV { k },
    })
}

/// Most specific structural tag. Precedence: nonpositive row, triangular
/// (bidiagonal before upper, then lower), bdsw Types I-IV, triangular plus row, general.
pub fn detect_structure(a: &RationalMatrix) -> StructureClass {
    let n = a.order();
    let mut notes = Vec::new();
    if n == 2 {
        notes.push(StructureNote::TwoByTwo);
    }
    if let Some(i) = first_nonpositive_row(a) {
        notes.push(StructureNote::NonpositiveRow(i + 1));
        return StructureClass {
            tag: StructureTag::General,
            notes,
        };
    }
    if n == 1 {
        notes.push(StructureNote::Scalar);
        return StructureClass {
            tag: StructureTag::UpperTriangular,
            notes,
        };
    }
    let bdsw = bdsw_type(a);
    if let Some(BdswType::I { .. }) = bdsw {
        let last_only = (0..n - 1).all(|i| !row_nonnegative(a, i));
        if last_only {
            notes.push(StructureNote::LastRowNonnegative);
        }
    }
    let triangular = if is_upper_bidiagonal(a) {
        Some(StructureTag::Bidiagonal)
    } else if a.is_upper_triangular() {
        Some(StructureTag::UpperTriangular)
    } else if a.is_lower_triangular() {
        Some(StructureTag::LowerTriangular)
    } else {
        None
    };
    if let Some(tag) = triangular {
        if let Some(t) = bdsw {
            notes.push(StructureNote::AlsoBdsw(t));
        }
        return StructureClass { tag, notes };
    }
    if let Some(t) = bdsw {
        return StructureClass {
            tag: StructureTag::Bdsw(t),
            notes,
        };
    }
    let leading_upper = (0..n - 1).all(|i| (0..i).all(|j| a.get(i, j).is_zero()));
    let tag = if leading_upper {
        StructureTag::TriangularPlusRow
    } else {
        StructureTag::General
    };
    StructureClass { tag, notes }
}

/// Closed-form bdsw determinant
/// `a11 a22 .. ann + (-1)^(n+1) a12 a23 .. a(n-1)n an1`.
pub fn bdsw_determinant(a: &RationalMatrix) -> Result<Scalar> {
    if !is_bdsw_shape(a) {
        return Err(Error::NotBdswShape);
    }
    let n = a.order();
    let diag = (0..n).fold(Scalar::one(), |acc, i| acc * a.get(i, i));
    let cycle = (0..n).fold(Scalar::one(), |acc, i| acc * relevant_off_diagonal(a, i));
    Ok(if n % 2 == 0 { diag - cycle } else { diag + cycle })
}
