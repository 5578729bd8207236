//! Exact LCP solving by enumeration of complementary supports.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use super::feasibility::{solve_feasibility, FeasibilitySystem};
use crate::error::{Error, Result};
use crate::matrix::{gauss_jordan, RationalMatrix};
use crate::scalar::{to_f64, Scalar, Sign};

/// Default largest order accepted by the support enumeration (2^16 supports).
pub const DEFAULT_ENUM_CAP: usize = 16;

/// Upper bound on the matrix order for exponential enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumCap(pub usize);

impl Default for EnumCap {
    fn default() -> Self {
        EnumCap(DEFAULT_ENUM_CAP)
    }
}

impl EnumCap {
    /// Reads `LCP_ENUM_CAP`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var("LCP_ENUM_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(EnumCap)
            .unwrap_or_default()
    }

    pub fn check(self, order: usize) -> Result<()> {
        // Hard ceiling keeps the u64 support masks meaningful.
        if order > self.0 || order > 63 {
            Err(Error::CapExceeded { order, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

/// `LCP(A, q)`: find `x >= 0` with `Ax + q >= 0` and `xᵀ(Ax + q) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpInstance {
    pub a: RationalMatrix,
    pub q: Vec<Scalar>,
}

impl LcpInstance {
    pub fn new(a: RationalMatrix, q: Vec<Scalar>) -> Result<Self> {
        if q.len() != a.order() {
            return Err(Error::DimensionMismatch {
                expected: a.order(),
                got: q.len(),
            });
        }
        Ok(LcpInstance { a, q })
    }

    /// Exact check of the three complementarity conditions.
    pub fn is_solution(&self, x: &[Scalar]) -> bool {
        is_lcp_solution(&self.a, &self.q, x)
    }
}

pub fn is_lcp_solution(a: &RationalMatrix, q: &[Scalar], x: &[Scalar]) -> bool {
    if x.len() != a.order() || x.iter().any(Signed::is_negative) {
        return false;
    }
    let w: Vec<Scalar> = a.mul_vec(x).into_iter().zip(q).map(|(v, qi)| v + qi).collect();
    w.iter().all(|v| !v.is_negative()) && x.iter().zip(&w).all(|(xi, wi)| (xi * wi).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpSolution {
    pub x: Vec<Scalar>,
    /// 0-based indices with `x_i > 0`.
    pub support: Vec<usize>,
    /// `x + Ax + q > 0` componentwise.
    pub nondegenerate: bool,
    /// Sign of `det A_II` over the support; the empty determinant has sign +1.
    pub support_det_sign: Sign,
    /// Found on a support with singular `A_II`; `x` represents a family of solutions.
    pub from_singular_support: bool,
}

pub(crate) enum SupportKind {
    Nonsingular {
        inverse: Vec<Vec<Scalar>>,
        inverse_f64: Vec<Vec<f64>>,
        det_sign: Sign,
    },
    Singular,
}

pub(crate) struct Support {
    pub idx: Vec<usize>,
    pub comp: Vec<usize>,
    pub kind: SupportKind,
}

/// Every complementary support of a matrix with its principal block
/// factored once, so many right-hand sides can be tried cheaply.
pub struct SupportTable<'a> {
    a: &'a RationalMatrix,
    a_f64: Vec<Vec<f64>>,
    pub(crate) supports: Vec<Support>,
}

pub(crate) fn mask_indices(mask: u64, n: usize) -> (Vec<usize>, Vec<usize>) {
    (0..n).partition(|&i| mask >> i & 1 == 1)
}

pub(crate) fn invert_block(block: Vec<Vec<Scalar>>) -> Option<(Vec<Vec<Scalar>>, Sign)> {
    let k = block.len();
    if k == 0 {
        return Some((Vec::new(), Sign::Pos));
    }
    let det = crate::matrix::determinant_rows(block.clone());
    if det.is_zero() {
        return None;
    }
    let mut aug: Vec<Vec<Scalar>> = block
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..k).map(|j| if i == j { num_traits::One::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    gauss_jordan(&mut aug, k)?;
    Some((aug.into_iter().map(|r| r[k..].to_vec()).collect(), Sign::of(&det)))
}

impl<'a> SupportTable<'a> {
    pub fn new(a: &'a RationalMatrix, cap: EnumCap) -> Result<Self> {
        let n = a.order();
        cap.check(n)?;
        let supports = (0..1u64 << n)
            .map(|mask| {
                let (idx, comp) = mask_indices(mask, n);
                let kind = match invert_block(a.block(&idx, &idx)) {
                    Some((inverse, det_sign)) => SupportKind::Nonsingular {
                        inverse_f64: inverse.iter().map(|r| r.iter().map(to_f64).collect()).collect(),
                        inverse,
                        det_sign,
                    },
                    None => SupportKind::Singular,
                };
                Support { idx, comp, kind }
            })
            .collect();
        let a_f64 = (0..n).map(|i| a.row(i).iter().map(to_f64).collect()).collect();
        Ok(SupportTable { a, a_f64, supports })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        self.a
    }

    /// Candidate on a nonsingular support: `x_I = -A_II⁻¹ q_I`, zero elsewhere.
    pub(crate) fn candidate(&self, s: &Support, inverse: &[Vec<Scalar>], q: &[Scalar]) -> Vec<Scalar> {
        let n = self.a.order();
        let mut x = vec![Scalar::zero(); n];
        for (r, &i) in s.idx.iter().enumerate() {
            let v = s.idx.iter().enumerate().fold(Scalar::zero(), |acc, (c, &j)| acc + &inverse[r][c] * &q[j]);
            x[i] = -v;
        }
        x
    }

    /// Off-support slacks `(Ax + q)_j` for `j` outside the support.
    pub(crate) fn slack(&self, s: &Support, x: &[Scalar], q: &[Scalar], j: usize) -> Scalar {
        s.idx.iter().fold(q[j].clone(), |acc, &i| acc + self.a.get(j, i) * &x[i])
    }

    fn singular_feasible_point(&self, s: &Support, q: &[Scalar]) -> Option<Vec<Scalar>> {
        let k = s.idx.len();
        let mut sys = FeasibilitySystem::nonnegative(k);
        for &i in &s.idx {
            sys = sys.eq(s.idx.iter().map(|&j| self.a.get(i, j).clone()).collect(), -q[i].clone());
        }
        for &i in &s.comp {
            sys = sys.ge(s.idx.iter().map(|&j| self.a.get(i, j).clone()).collect(), -q[i].clone());
        }
        let y = solve_feasibility(&sys)?;
        let mut x = vec![Scalar::zero(); self.a.order()];
        for (v, &i) in y.into_iter().zip(&s.idx) {
            x[i] = v;
        }
        Some(x)
    }

    fn try_support(&self, s: &Support, q: &[Scalar]) -> Option<(Vec<Scalar>, bool)> {
        match &s.kind {
            SupportKind::Nonsingular { inverse, .. } => {
                let x = self.candidate(s, inverse, q);
                let ok = s.idx.iter().all(|&i| !x[i].is_negative())
                    && s.comp.iter().all(|&j| !self.slack(s, &x, q, j).is_negative());
                ok.then_some((x, false))
            }
            SupportKind::Singular => self.singular_feasible_point(s, q).map(|x| (x, true)),
        }
    }

    /// True iff `LCP(A, q)` has at least one solution.
    pub fn is_solvable(&self, q: &[Scalar]) -> bool {
        self.clearly_solvable_f64(q) || self.supports.iter().any(|s| self.try_support(s, q).is_some())
    }

    /// Floating-point screen: true only when some nonsingular support yields
    /// a candidate whose computed entries clear a safety margin.
    fn clearly_solvable_f64(&self, q: &[Scalar]) -> bool {
        let qf: Vec<f64> = q.iter().map(to_f64).collect();
        let qmax = qf.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let n = qf.len();
        let mut x = vec![0.0; n];
        self.supports.iter().any(|s| {
            let SupportKind::Nonsingular { inverse_f64, .. } = &s.kind else {
                return false;
            };
            let imax = inverse_f64.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
            let margin = 1e-9 * (1.0 + qmax) * imax * (n as f64 + 1.0);
            x.iter_mut().for_each(|v| *v = 0.0);
            for (r, &i) in s.idx.iter().enumerate() {
                x[i] = -s.idx.iter().enumerate().map(|(c, &j)| inverse_f64[r][c] * qf[j]).sum::<f64>();
                if x[i] <= margin {
                    return false;
                }
            }
            let amax = 1.0 + self.a_f64.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
            s.comp.iter().all(|&j| {
                let w = qf[j] + s.idx.iter().map(|&i| self.a_f64[j][i] * x[i]).sum::<f64>();
                w > margin * amax
            })
        })
    }

    /// All solutions on nonsingular supports, plus one representative per
    /// singular support admitting solutions; ordered by support bitmask.
    pub fn solve(&self, q: &[Scalar]) -> Vec<LcpSolution> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for s in &self.supports {
            let Some((x, singular)) = self.try_support(s, q) else {
                continue;
            };
            if !seen.insert(x.clone()) {
                continue;
            }
            out.push(self.describe(x, q, singular));
        }
        out
    }

    fn describe(&self, x: Vec<Scalar>, q: &[Scalar], singular: bool) -> LcpSolution {
        let support: Vec<usize> = (0..x.len()).filter(|&i| x[i].is_positive()).collect();
        let w: Vec<Scalar> = self.a.mul_vec(&x).into_iter().zip(q).map(|(v, qi)| v + qi).collect();
        let nondegenerate = x.iter().zip(&w).all(|(xi, wi)| (xi + wi).is_positive());
        let support_det_sign = if support.is_empty() {
            Sign::Pos
        } else {
            Sign::of(&self.a.principal(&support).determinant())
        };
        LcpSolution {
            x,
            support,
            nondegenerate,
            support_det_sign,
            from_singular_support: singular,
        }
    }
}

/// Solves `LCP(A, q)` by enumerating complementary supports under the default cap.
pub fn solve_lcp(inst: &LcpInstance) -> Result<Vec<LcpSolution>> {
    solve_lcp_capped(inst, EnumCap::default())
}

pub fn solve_lcp_capped(inst: &LcpInstance, cap: EnumCap) -> Result<Vec<LcpSolution>> {
    Ok(SupportTable::new(&inst.a, cap)?.solve(&inst.q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn solve(a: RationalMatrix, q: &[i64]) -> Vec<LcpSolution> {
        solve_lcp(&LcpInstance::new(a, v(q)).unwrap()).unwrap()
    }

    #[test]
    fn identity_has_unique_solution() {
        let sols = solve(RationalMatrix::identity(2), &[-1, -1]);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].x, v(&[1, 1]));
        assert_eq!(sols[0].support, vec![0, 1]);
        assert!(sols[0].nondegenerate);
        assert_eq!(sols[0].support_det_sign, Sign::Pos);
    }

    #[test]
    fn triangular_plus_corner_has_no_solution() {
        let a = RationalMatrix::from_i64(&[&[1, -1, 1], &[0, 1, -1], &[1, 0, 0]]);
        assert!(solve(a, &[0, 0, -1]).is_empty());
    }

    #[test]
    fn four_by_four_positive_determinant_has_no_solution() {
        let a = RationalMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, -1], &[1, 0, 0, 0]]);
        assert!(a.determinant().is_positive());
        assert!(solve(a, &[0, 0, 0, -1]).is_empty());
    }

    #[test]
    fn type_iv_has_two_solutions_at_positive_q() {
        let a = RationalMatrix::from_i64(&[&[-1, 1, 0], &[0, -1, 1], &[-1, 0, 1]]);
        let sols = solve(a, &[1, 1, 1]);
        let xs: Vec<_> = sols.iter().map(|s| s.x.clone()).collect();
        assert!(xs.contains(&v(&[0, 0, 0])));
        assert!(xs.contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn singular_supports_yield_flagged_representatives() {
        // LCP(0, 0): every x >= 0 solves; zero is found first, others are represented.
        let sols = solve(RationalMatrix::zeros(2), &[0, 0]);
        assert_eq!(sols[0].x, v(&[0, 0]));
        assert!(sols.iter().all(|s| is_lcp_solution(&RationalMatrix::zeros(2), &v(&[0, 0]), &s.x)));
        assert!(sols.iter().skip(1).all(|s| s.from_singular_support));
    }

    #[test]
    fn cap_is_enforced() {
        let inst = LcpInstance::new(RationalMatrix::identity(5), v(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(
            solve_lcp_capped(&inst, EnumCap(4)),
            Err(Error::CapExceeded { order: 5, cap: 4 })
        );
        assert!(LcpInstance::new(RationalMatrix::identity(2), v(&[1])).is_err());
    }
}
