//! Three-valued Q-membership oracle built from exact certificates.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::classes::{is_e0_capped, is_r0_capped, is_s};
use super::degree::{degree_with_table, DEFAULT_RESAMPLE_BUDGET};
use super::solve::{EnumCap, SupportKind, SupportTable};
use crate::error::Result;
use crate::matrix::RationalMatrix;
use crate::scalar::{frac, int, Scalar};
use crate::structure::first_nonpositive_row;
use crate::verdict::{Certificate, ClassVerdict, Rule, Witness};

/// Largest order for which every corner of `{-1,0,1}^n` is tried.
const MAX_CORNER_ORDER: usize = 8;

pub fn q_oracle(a: &RationalMatrix, budget: usize, seed: u64) -> Result<ClassVerdict> {
    q_oracle_capped(a, budget, seed, EnumCap::default())
}

/// Decides Q-membership when a certificate is found, otherwise returns Undecided.
///
/// No: a nonpositive row, failure of S, or an explicit `q` with no solution
/// (grid corners, points just outside complementary-cone facets, then
/// `budget` random draws). Yes: R0 with nonzero degree, or R*.
pub fn q_oracle_capped(a: &RationalMatrix, budget: usize, seed: u64, cap: EnumCap) -> Result<ClassVerdict> {
    let n = a.order();
    cap.check(n)?;
    if let Some(i) = first_nonpositive_row(a) {
        return Ok(ClassVerdict::no(
            Certificate::new(Rule::NonpositiveRow, format!("nonpositive row {}", i + 1)).with_witness(Witness::Row(i + 1)),
        ));
    }
    if is_s(a).is_no() {
        return Ok(ClassVerdict::no(Certificate::new(Rule::NotS, "no x > 0 with Ax > 0")));
    }
    let table = SupportTable::new(a, cap)?;
    if is_r0_capped(a, cap)?.is_yes() {
        if let Ok(d) = degree_with_table(&table, seed, DEFAULT_RESAMPLE_BUDGET) {
            if d != 0 {
                return Ok(ClassVerdict::yes(
                    Certificate::new(Rule::NonzeroDegree, "R0 with nonzero degree").with_witness(Witness::Degree(d)),
                ));
            }
        }
        if is_e0_capped(a, cap)?.is_yes() {
            return Ok(ClassVerdict::yes(Certificate::new(Rule::RStar, "R0 and E0")));
        }
    }
    if let Some(q) = find_unsolvable(&table, budget, seed) {
        return Ok(ClassVerdict::no(
            Certificate::new(Rule::UnsolvableQ, "LCP(A,q) has no solution").with_witness(Witness::UnsolvableQ(q)),
        ));
    }
    Ok(ClassVerdict::undecided(Certificate::new(Rule::Inconclusive, "no certificate found")))
}

/// Searches for `q` with `LCP(A, q)` unsolvable.
pub fn find_unsolvable(table: &SupportTable<'_>, budget: usize, seed: u64) -> Option<Vec<Scalar>> {
    let n = table.matrix().order();
    if n <= MAX_CORNER_ORDER {
        if let Some(q) = corners(n).find(|q| !table.is_solvable(q)) {
            return Some(q);
        }
        if let Some(q) = facet_probes(table, seed).find(|q| !table.is_solvable(q)) {
            return Some(q);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..budget)
        .map(|_| (0..n).map(|_| int(rng.random_range(-16..=16))).collect::<Vec<_>>())
        .find(|q| !table.is_solvable(q))
}

/// Nonzero points of `{-1,0,1}^n`, coordinates varying fastest at index 0.
fn corners(n: usize) -> impl Iterator<Item = Vec<Scalar>> {
    let origin = (3usize.pow(n as u32) - 1) / 2;
    (0..3usize.pow(n as u32)).filter(move |&c| c != origin).map(move |mut code| {
        (0..n)
            .map(|_| {
                let d = code % 3;
                code /= 3;
                int(d as i64 - 1)
            })
            .collect()
    })
}

/// Points just across each facet of every full-dimensional complementary cone.
///
/// The cone for support `I` is generated by `-A e_i` (`i ∈ I`) and `e_j`
/// (`j ∉ I`); an uncovered region of a non-Q matrix is bounded by such facets.
fn facet_probes<'t>(table: &'t SupportTable<'_>, seed: u64) -> impl Iterator<Item = Vec<Scalar>> + 't {
    let a = table.matrix();
    let n = a.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5851_f42d_4c95_7f2d));
    let weights: Vec<Vec<Scalar>> = std::iter::once(vec![Scalar::one(); n])
        .chain((0..2).map(|_| (0..n).map(|_| int(rng.random_range(1..=9))).collect()))
        .collect();
    let step = frac(1, 16);
    table
        .supports
        .iter()
        .filter(|s| matches!(s.kind, SupportKind::Nonsingular { .. }))
        .flat_map(move |s| {
            let weights = weights.clone();
            let step = step.clone();
            (0..n).flat_map(move |facet| {
                let step = step.clone();
                weights.clone().into_iter().map(move |mut y| {
                    y[facet] = -(&step * &y[facet]);
                    cone_point(a, &s.idx, &y)
                })
            })
        })
}

/// `q = Σ_{i∈I} -y_i A e_i + Σ_{j∉I} y_j e_j`.
fn cone_point(a: &RationalMatrix, idx: &[usize], y: &[Scalar]) -> Vec<Scalar> {
    let n = a.order();
    let mut q: Vec<Scalar> = (0..n)
        .map(|j| if idx.contains(&j) { Scalar::zero() } else { y[j].clone() })
        .collect();
    for &i in idx {
        for (j, qj) in q.iter_mut().enumerate() {
            *qj -= a.get(j, i) * &y[i];
        }
    }
    q
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcp::solve::{solve_lcp, LcpInstance};
    use crate::verdict::Answer;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64(rows)
    }

    fn oracle(a: &RationalMatrix) -> ClassVerdict {
        q_oracle(a, 64, 7).unwrap()
    }

    fn assert_unsolvable_witness(a: &RationalMatrix, v: &ClassVerdict) {
        let Some(Witness::UnsolvableQ(q)) = v.witness() else {
            panic!("expected unsolvable q, got {v}");
        };
        let sols = solve_lcp(&LcpInstance::new(a.clone(), q.clone()).unwrap()).unwrap();
        assert!(sols.is_empty());
    }

    #[test]
    fn type_i_case_two_is_q() {
        assert_eq!(oracle(&m(&[&[1, -1], &[1, 0]])).answer, Answer::Yes);
    }

    #[test]
    fn triangular_plus_corner_is_not_q() {
        let a = m(&[&[1, -1, 1], &[0, 1, -1], &[1, 0, 0]]);
        let v = oracle(&a);
        assert_eq!(v.answer, Answer::No);
        assert_unsolvable_witness(&a, &v);
    }

    #[test]
    fn nonpositive_rows_are_not_q() {
        let v = oracle(&m(&[&[-1, 0], &[0, -1]]));
        assert_eq!(v.answer, Answer::No);
        assert_eq!(v.witness(), Some(&Witness::Row(1)));
    }

    #[test]
    fn positive_determinant_four_by_four_is_not_q() {
        let a = m(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, -1], &[1, 0, 0, 0]]);
        let v = oracle(&a);
        assert_eq!(v.answer, Answer::No);
        assert_unsolvable_witness(&a, &v);
    }

    #[test]
    fn corners_skip_origin() {
        let all: Vec<_> = corners(2).collect();
        assert_eq!(all.len(), 8);
        assert!(!all.contains(&vec![int(0), int(0)]));
    }
}
