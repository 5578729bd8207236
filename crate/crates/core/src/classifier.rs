//! Theorem-level Q-property decisions for structured matrices.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lcp::{q_oracle_capped, EnumCap};
use crate::matrix::RationalMatrix;
use crate::pattern::sign_pattern;
use crate::scalar::{Scalar, Sign};
use crate::structure::{bdsw_determinant, bdsw_type, first_nonpositive_row, relevant_off_diagonal, BdswType};
use crate::verdict::{Answer, Certificate, ClassVerdict, Rule, Witness};

/// Settings for the oracle used when no theorem applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub budget: usize,
    pub seed: u64,
    pub cap: EnumCap,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget: 256,
            seed: 0,
            cap: EnumCap::default(),
        }
    }
}

fn decide(yes: bool, cert: Certificate) -> ClassVerdict {
    ClassVerdict::new(Answer::from_bool(yes), cert)
}

fn first_nonpositive_diagonal(a: &RationalMatrix, upto: usize) -> Option<usize> {
    (0..upto).find(|&i| !a.get(i, i).is_positive())
}

fn diagonal_condition(a: &RationalMatrix) -> (bool, String) {
    match first_nonpositive_diagonal(a, a.order()) {
        None => (true, "positive diagonal".into()),
        Some(i) => (false, format!("diagonal entry a_{0}{0} <= 0", i + 1)),
    }
}

/// Exact determinant of a bdsw matrix, computed by elimination and by the
/// closed form; the two must agree.
fn bdsw_det(a: &RationalMatrix) -> Scalar {
    let det = a.determinant();
    let closed = bdsw_determinant(a).expect("bdsw shape checked by caller");
    assert_eq!(det, closed, "bdsw determinant formula disagrees with elimination");
    det
}

fn odd(k: usize) -> bool {
    k % 2 == 1
}

/// `(-1)^e * det > 0`.
fn signed_det_positive(e: usize, det: &Scalar) -> bool {
    if odd(e) {
        det.is_negative()
    } else {
        det.is_positive()
    }
}

/// Triangular matrices: Q iff the diagonal is positive (then also P, E and R*).
pub fn classify_triangular(a: &RationalMatrix) -> Result<ClassVerdict> {
    if !(a.is_upper_triangular() || a.is_lower_triangular()) {
        return Err(Error::WrongStructure("not triangular"));
    }
    let (yes, cond) = diagonal_condition(a);
    let cond = if yes { format!("{cond}; A in P, E, R*") } else { cond };
    Ok(decide(yes, Certificate::new(Rule::T3_1, cond)))
}

/// Upper triangular block `B` of order `n-1` bordered by a last row
/// `(dᵀ, a_nn)` with `d >= 0` and `a_nn > 0`: Q iff the diagonal is positive.
pub fn classify_triangular_plus_row(a: &RationalMatrix) -> Result<ClassVerdict> {
    let n = a.order();
    if n < 2 {
        return Err(Error::WrongStructure("order below 2"));
    }
    let leading_upper = (0..n - 1).all(|i| (0..i).all(|j| a.get(i, j).is_zero()));
    if !leading_upper {
        return Err(Error::WrongStructure("leading block not upper triangular"));
    }
    if (0..n - 1).any(|j| a.get(n - 1, j).is_negative()) {
        return Err(Error::WrongStructure("last row has a negative off-diagonal entry"));
    }
    if !a.get(n - 1, n - 1).is_positive() {
        return Err(Error::WrongStructure("last diagonal entry not positive"));
    }
    let (yes, cond) = diagonal_condition(a);
    Ok(decide(yes, Certificate::new(Rule::T3_2, cond)))
}

fn require_bdsw(a: &RationalMatrix, want: fn(&BdswType) -> bool) -> Result<BdswType> {
    match bdsw_type(a) {
        Some(t) if want(&t) => Ok(t),
        _ => Err(Error::WrongStructure("bdsw type mismatch")),
    }
}

/// Type I (some nonnegative row), split by the signs of `a_n1` and `a_nn`.
pub fn classify_bdsw_type1(a: &RationalMatrix) -> Result<ClassVerdict> {
    let BdswType::I { k } = require_bdsw(a, |t| matches!(t, BdswType::I { .. }))? else {
        unreachable!()
    };
    let n = a.order();
    let det = bdsw_det(a);
    let (yes, cert) = match (Sign::of(a.get(n - 1, 0)), Sign::of(a.get(n - 1, n - 1))) {
        (Sign::Pos | Sign::Zero, Sign::Pos) => {
            let (yes, cond) = diagonal_condition(a);
            (yes, Certificate::new(Rule::T5_1, cond).with_k(k))
        }
        (Sign::Pos, Sign::Zero) => {
            let diag = first_nonpositive_diagonal(a, n - 1);
            let sup = (0..n - 1).find(|&i| !a.get(i, i + 1).is_negative());
            let (yes, cond) = match (diag, sup) {
                (None, None) => (true, "a_ii > 0 for i < n and negative superdiagonal".to_string()),
                (Some(i), _) => (false, format!("diagonal entry a_{0}{0} <= 0", i + 1)),
                (None, Some(i)) => (false, format!("superdiagonal entry a_{}{} >= 0", i + 1, i + 2)),
            };
            (yes, Certificate::new(Rule::T5_2, cond).with_k(k))
        }
        (Sign::Neg, Sign::Pos) => type1_case3(a, k),
        (Sign::Pos, Sign::Neg) => (false, Certificate::new(Rule::T5_4, "a_n1 > 0, a_nn < 0").with_k(k)),
        _ => unreachable!("Type I excludes a nonpositive last row"),
    };
    Ok(decide(yes, cert.with_determinant(det)))
}

/// `a_n1 < 0 < a_nn`: Q iff (a) the diagonal is positive, or (b) some
/// nonnegative row `r` has `a_rr = 0 < a_r(r+1)` while every other row has
/// positive diagonal and negative off-diagonal entry.
fn type1_case3(a: &RationalMatrix, k: usize) -> (bool, Certificate) {
    let n = a.order();
    if diagonal_condition(a).0 {
        return (true, Certificate::new(Rule::T5_3, "(a) positive diagonal").with_k(k));
    }
    let zero_pivot = (0..n - 1).find(|&r| {
        a.get(r, r).is_zero()
            && a.get(r, r + 1).is_positive()
            && (0..n)
                .filter(|&i| i != r)
                .all(|i| a.get(i, i).is_positive() && relevant_off_diagonal(a, i).is_negative())
    });
    match zero_pivot {
        Some(r) => (
            true,
            Certificate::new(Rule::T5_3, format!("(b) zero diagonal at nonnegative row {}", r + 1)).with_k(r + 1),
        ),
        None => (false, Certificate::new(Rule::T5_3, "neither (a) nor (b) holds").with_k(k)),
    }
}

/// Type II (Z-matrix shape): Q iff `det A > 0` (equivalently P, R*).
pub fn classify_bdsw_type2(a: &RationalMatrix) -> Result<ClassVerdict> {
    require_bdsw(a, |t| *t == BdswType::II)?;
    let det = bdsw_det(a);
    let yes = det.is_positive();
    let cond = if yes { "det A > 0; A in P, R*" } else { "det A <= 0" };
    Ok(decide(yes, Certificate::new(Rule::T6_1, cond).with_determinant(det)))
}

/// Type III: Q iff `(-1)^(n+1) det A > 0`.
pub fn classify_bdsw_type3(a: &RationalMatrix) -> Result<ClassVerdict> {
    require_bdsw(a, |t| *t == BdswType::III)?;
    let det = bdsw_det(a);
    let yes = signed_det_positive(a.order() + 1, &det);
    let cond = if yes { "(-1)^(n+1) det A > 0" } else { "(-1)^(n+1) det A <= 0" };
    Ok(decide(yes, Certificate::new(Rule::T7_1, cond).with_determinant(det)))
}

/// Type IV with `k` negative diagonal entries: Q iff `(-1)^(k+1) det A > 0`.
pub fn classify_bdsw_type4(a: &RationalMatrix) -> Result<ClassVerdict> {
    let t = require_bdsw(a, |t| matches!(t, BdswType::IV { .. }))?;
    let BdswType::IV { k } = t else { unreachable!() };
    let det = bdsw_det(a);
    let yes = signed_det_positive(k + 1, &det);
    let cond = if yes { "(-1)^(k+1) det A > 0" } else { "(-1)^(k+1) det A <= 0" };
    Ok(decide(yes, Certificate::new(Rule::T8_1, cond).with_determinant(det).with_k(k)))
}

#[derive(Clone, Copy)]
enum Cell {
    Pos,
    Neg,
    Zero,
    NonNeg,
    Any,
}

impl Cell {
    fn admits(self, s: Sign) -> bool {
        match self {
            Cell::Pos => s == Sign::Pos,
            Cell::Neg => s == Sign::Neg,
            Cell::Zero => s == Sign::Zero,
            Cell::NonNeg => s != Sign::Neg,
            Cell::Any => true,
        }
    }
}

enum DetRule {
    Free,
    Positive,
    Negative,
}

const PATTERNS_2X2: [(&str, [Cell; 4], DetRule); 8] = {
    use Cell::*;
    [
        ("pattern i.1", [Pos, Any, NonNeg, Pos], DetRule::Free),
        ("pattern i.2", [Pos, NonNeg, Any, Pos], DetRule::Free),
        ("pattern i.3", [Zero, Pos, Neg, Pos], DetRule::Free),
        ("pattern i.4", [Pos, Neg, Pos, Zero], DetRule::Free),
        ("pattern ii.1", [Pos, Neg, Neg, Pos], DetRule::Positive),
        ("pattern ii.2", [Neg, Pos, Neg, Pos], DetRule::Positive),
        ("pattern ii.3", [Pos, Neg, Pos, Neg], DetRule::Positive),
        ("pattern iii", [Neg, Pos, Pos, Neg], DetRule::Negative),
    ]
};

/// Complete 2x2 characterization by sign pattern and determinant sign.
pub fn classify_2x2(a: &RationalMatrix) -> Result<ClassVerdict> {
    if a.order() != 2 {
        return Err(Error::WrongStructure("order is not 2"));
    }
    let p = sign_pattern(a);
    let signs = [p.get(0, 0), p.get(0, 1), p.get(1, 0), p.get(1, 1)];
    let det = a.determinant();
    let matched = PATTERNS_2X2
        .iter()
        .find(|(_, cells, _)| cells.iter().zip(signs).all(|(c, s)| c.admits(s)));
    let verdict = match matched {
        None => decide(false, Certificate::new(Rule::T9_1, "no admissible pattern")),
        Some((label, _, rule)) => {
            let ok = match rule {
                DetRule::Free => true,
                DetRule::Positive => det.is_positive(),
                DetRule::Negative => det.is_negative(),
            };
            let cond = match (ok, rule) {
                (true, _) | (_, DetRule::Free) => label.to_string(),
                (false, DetRule::Positive) => format!("{label} requires det > 0"),
                (false, DetRule::Negative) => format!("{label} requires det < 0"),
            };
            decide(ok, Certificate::new(Rule::T9_1, cond))
        }
    };
    Ok(ClassVerdict {
        certificate: verdict.certificate.with_determinant(det),
        ..verdict
    })
}

/// Classifies with default oracle settings.
pub fn classify(a: &RationalMatrix) -> ClassVerdict {
    classify_with(a, &ClassifyOptions::default())
}

/// Dispatch: nonpositive row, order 1, order 2, triangular, triangular plus
/// row, bdsw Types I-IV, then the oracle.
pub fn classify_with(a: &RationalMatrix, opts: &ClassifyOptions) -> ClassVerdict {
    if let Some(i) = first_nonpositive_row(a) {
        return ClassVerdict::no(
            Certificate::new(Rule::NonpositiveRow, format!("nonpositive row {}", i + 1))
                .with_witness(Witness::Row(i + 1)),
        );
    }
    if a.order() == 1 {
        // The only row has a positive entry, so a_11 > 0.
        return ClassVerdict::yes(Certificate::new(Rule::Scalar, "a_11 > 0"));
    }
    let theorem = if a.order() == 2 {
        classify_2x2(a)
    } else {
        classify_triangular(a)
            .or_else(|_| classify_triangular_plus_row(a))
            .or_else(|_| match bdsw_type(a) {
                Some(BdswType::I { .. }) => classify_bdsw_type1(a),
                Some(BdswType::II) => classify_bdsw_type2(a),
                Some(BdswType::III) => classify_bdsw_type3(a),
                Some(BdswType::IV { .. }) => classify_bdsw_type4(a),
                None => Err(Error::WrongStructure("no theorem applies")),
            })
    };
    theorem.unwrap_or_else(|_| {
        q_oracle_capped(a, opts.budget, opts.seed, opts.cap).unwrap_or_else(|e| {
            ClassVerdict::undecided(Certificate::new(Rule::Inconclusive, e.to_string()))
        })
    })
}
