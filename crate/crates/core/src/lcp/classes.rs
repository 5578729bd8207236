//! Exact membership tests for the standard LCP matrix classes.

use num_traits::{One, Signed, Zero};

use super::feasibility::{solve_feasibility, FeasibilitySystem};
use super::solve::{mask_indices, EnumCap};
use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::scalar::Scalar;
use crate::verdict::{Certificate, ClassVerdict, Rule, Witness};

fn row_on(a: &RationalMatrix, i: usize, idx: &[usize]) -> Vec<Scalar> {
    idx.iter().map(|&j| a.get(i, j).clone()).collect()
}

fn lift(n: usize, idx: &[usize], y: Vec<Scalar>) -> Vec<Scalar> {
    let mut x = vec![Scalar::zero(); n];
    for (v, &i) in y.into_iter().zip(idx) {
        x[i] = v;
    }
    x
}

/// Runs `system(I)` over every nonempty support `I` in bitmask order and
/// returns the first feasible point, lifted to full length.
fn first_feasible(
    a: &RationalMatrix,
    cap: EnumCap,
    system: impl Fn(&[usize], &[usize]) -> FeasibilitySystem,
) -> Result<Option<Vec<Scalar>>> {
    let n = a.order();
    cap.check(n)?;
    for mask in 1..1u64 << n {
        let (idx, comp) = mask_indices(mask, n);
        if let Some(y) = solve_feasibility(&system(&idx, &comp)) {
            return Ok(Some(lift(n, &idx, y)));
        }
    }
    Ok(None)
}

fn r0_system(a: &RationalMatrix, idx: &[usize], comp: &[usize]) -> FeasibilitySystem {
    let mut sys = FeasibilitySystem::nonnegative(idx.len()).eq(vec![Scalar::one(); idx.len()], Scalar::one());
    for &i in idx {
        sys = sys.eq(row_on(a, i, idx), Scalar::zero());
    }
    for &i in comp {
        sys = sys.ge(row_on(a, i, idx), Scalar::zero());
    }
    sys
}

/// R0: `LCP(A, 0)` has only the zero solution.
pub fn is_r0(a: &RationalMatrix) -> Result<ClassVerdict> {
    is_r0_capped(a, EnumCap::default())
}

pub fn is_r0_capped(a: &RationalMatrix, cap: EnumCap) -> Result<ClassVerdict> {
    Ok(match first_feasible(a, cap, |idx, comp| r0_system(a, idx, comp))? {
        Some(x) => ClassVerdict::no(
            Certificate::new(Rule::SupportLp, "nonzero solution of LCP(A,0)").with_witness(Witness::Vector(x)),
        ),
        None => ClassVerdict::yes(Certificate::new(Rule::SupportLp, "LCP(A,0) has only the zero solution")),
    })
}

/// R(d): `LCP(A, 0)` and `LCP(A, d)` have only the zero solution.
pub fn is_rd(a: &RationalMatrix, d: &[Scalar]) -> Result<ClassVerdict> {
    is_rd_capped(a, d, EnumCap::default())
}

pub fn is_rd_capped(a: &RationalMatrix, d: &[Scalar], cap: EnumCap) -> Result<ClassVerdict> {
    if d.len() != a.order() {
        return Err(Error::DimensionMismatch {
            expected: a.order(),
            got: d.len(),
        });
    }
    if !d.iter().all(Signed::is_positive) {
        return Err(Error::NotPositive);
    }
    let r0 = is_r0_capped(a, cap)?;
    if r0.is_no() {
        return Ok(r0);
    }
    let found = first_feasible(a, cap, |idx, comp| {
        let mut sys = FeasibilitySystem::nonnegative(idx.len());
        for &i in idx {
            sys = sys.eq(row_on(a, i, idx), -d[i].clone());
        }
        for &i in comp {
            sys = sys.ge(row_on(a, i, idx), -d[i].clone());
        }
        sys
    })?;
    Ok(match found {
        Some(x) => ClassVerdict::no(
            Certificate::new(Rule::SupportLp, "nonzero solution of LCP(A,d)").with_witness(Witness::Vector(x)),
        ),
        None => ClassVerdict::yes(Certificate::new(
            Rule::SupportLp,
            "LCP(A,0) and LCP(A,d) have only the zero solution",
        )),
    })
}

/// E0 (semimonotone): no nonzero `x >= 0` has `(Ax)_i < 0` on all of its support.
pub fn is_e0(a: &RationalMatrix) -> Result<ClassVerdict> {
    is_e0_capped(a, EnumCap::default())
}

pub fn is_e0_capped(a: &RationalMatrix, cap: EnumCap) -> Result<ClassVerdict> {
    let found = first_feasible(a, cap, |idx, _| {
        idx.iter().fold(FeasibilitySystem::nonnegative(idx.len()), |sys, &i| {
            sys.le(row_on(a, i, idx), -Scalar::one())
        })
    })?;
    Ok(match found {
        Some(x) => ClassVerdict::no(
            Certificate::new(Rule::SupportLp, "x_i(Ax)_i < 0 on the support of x").with_witness(Witness::Vector(x)),
        ),
        None => ClassVerdict::yes(Certificate::new(Rule::SupportLp, "semimonotone")),
    })
}

/// E (strictly semimonotone): every nonzero `x >= 0` has `x_i(Ax)_i > 0` somewhere.
pub fn is_e(a: &RationalMatrix) -> Result<ClassVerdict> {
    is_e_capped(a, EnumCap::default())
}

pub fn is_e_capped(a: &RationalMatrix, cap: EnumCap) -> Result<ClassVerdict> {
    let found = first_feasible(a, cap, |idx, _| {
        idx.iter().fold(
            FeasibilitySystem::nonnegative(idx.len()).eq(vec![Scalar::one(); idx.len()], Scalar::one()),
            |sys, &i| sys.le(row_on(a, i, idx), Scalar::zero()),
        )
    })?;
    Ok(match found {
        Some(x) => ClassVerdict::no(
            Certificate::new(Rule::SupportLp, "x_i(Ax)_i <= 0 on the support of x").with_witness(Witness::Vector(x)),
        ),
        None => ClassVerdict::yes(Certificate::new(Rule::SupportLp, "strictly semimonotone")),
    })
}

/// S: some `x > 0` has `Ax > 0`. The Yes witness is strictly positive.
pub fn is_s(a: &RationalMatrix) -> ClassVerdict {
    let n = a.order();
    let sys = (0..n).fold(FeasibilitySystem::nonnegative(n), |sys, i| sys.ge(a.row(i).to_vec(), Scalar::one()));
    match solve_feasibility(&sys) {
        Some(x) => {
            // Ax >= 1, so shifting by eps < 1/|A1|_inf keeps Ax positive.
            let a1 = a.mul_vec(&vec![Scalar::one(); n]);
            let m = a1.iter().map(Signed::abs).max().unwrap_or_else(Scalar::zero);
            let eps = (Scalar::one() + m).recip();
            let x = x.into_iter().map(|v| v + &eps).collect();
            ClassVerdict::yes(Certificate::new(Rule::SupportLp, "x > 0 with Ax > 0").with_witness(Witness::Vector(x)))
        }
        None => ClassVerdict::no(Certificate::new(Rule::SupportLp, "no x >= 0 with Ax >= 1")),
    }
}

fn minor_scan(a: &RationalMatrix, cap: EnumCap, strict: bool) -> Result<ClassVerdict> {
    let n = a.order();
    cap.check(n)?;
    for mask in 1..1u64 << n {
        let (idx, _) = mask_indices(mask, n);
        let m = a.principal(&idx).determinant();
        if m.is_negative() || (strict && m.is_zero()) {
            let indices = idx.iter().map(|i| i + 1).collect();
            let cond = if strict { "nonpositive principal minor" } else { "negative principal minor" };
            return Ok(ClassVerdict::no(
                Certificate::new(Rule::PrincipalMinors, cond).with_witness(Witness::Minor { indices, value: m }),
            ));
        }
    }
    let cond = if strict { "all principal minors positive" } else { "all principal minors nonnegative" };
    Ok(ClassVerdict::yes(Certificate::new(Rule::PrincipalMinors, cond)))
}

/// P: every principal minor is positive.
pub fn is_p(a: &RationalMatrix) -> Result<ClassVerdict> {
    minor_scan(a, EnumCap::default(), true)
}

/// P0: every principal minor is nonnegative.
pub fn is_p0(a: &RationalMatrix) -> Result<ClassVerdict> {
    minor_scan(a, EnumCap::default(), false)
}

pub fn is_p_capped(a: &RationalMatrix, cap: EnumCap) -> Result<ClassVerdict> {
    minor_scan(a, cap, true)
}

pub fn is_p0_capped(a: &RationalMatrix, cap: EnumCap) -> Result<ClassVerdict> {
    minor_scan(a, cap, false)
}

/// Z: every off-diagonal entry is nonpositive.
pub fn is_z(a: &RationalMatrix) -> ClassVerdict {
    let n = a.order();
    let bad = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && a.get(i, j).is_positive());
    match bad {
        Some((i, j)) => ClassVerdict::no(Certificate::new(
            Rule::SignScan,
            format!("positive off-diagonal entry a_{}{}", i + 1, j + 1),
        )),
        None => ClassVerdict::yes(Certificate::new(Rule::SignScan, "off-diagonal entries nonpositive")),
    }
}

/// R* = R0 and E0.
pub fn is_rstar(a: &RationalMatrix) -> Result<ClassVerdict> {
    is_rstar_capped(a, EnumCap::default())
}

pub fn is_rstar_capped(a: &RationalMatrix, cap: EnumCap) -> Result<ClassVerdict> {
    let r0 = is_r0_capped(a, cap)?;
    if r0.is_no() {
        return Ok(r0);
    }
    let e0 = is_e0_capped(a, cap)?;
    if e0.is_no() {
        return Ok(e0);
    }
    Ok(ClassVerdict::yes(Certificate::new(Rule::SupportLp, "R0 and E0")))
}
