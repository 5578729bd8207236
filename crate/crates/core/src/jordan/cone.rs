use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lcp::{solve_lcp_capped, EnumCap, LcpInstance};
use crate::matrix::RationalMatrix;
use crate::scalar::{format_vector, to_f64, Scalar};
use crate::verdict::{Certificate, ClassVerdict, Rule};

use super::algebra::{AlgebraSpec, JordanElement};
use super::frame::JordanFrame;
use super::transform::{hat_transform, to_real, LinearTransform};

/// Default residual tolerance for cone solution checks.
pub const VERIFY_TOL: f64 = 1e-9;

/// Record of the three symmetric-cone LCP conditions for a candidate `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScLcpSolutionCheck {
    pub x: JordanElement,
    pub y: JordanElement,
    pub min_eig_x: f64,
    pub min_eig_y: f64,
    pub inner: f64,
    pub pass: bool,
}

impl ScLcpSolutionCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "min_eig_x": self.min_eig_x,
            "min_eig_y": self.min_eig_y,
            "inner": self.inner,
            "pass": self.pass,
        })
    }
}

/// Checks `x >= 0`, `y = L(x) + q >= 0` and `<x, y> = 0` up to `tol`.
pub fn verify_sc_solution(
    l: &LinearTransform,
    q: &JordanElement,
    x: &JordanElement,
    tol: f64,
) -> Result<ScLcpSolutionCheck> {
    let y = l.apply(x)?.add(q)?;
    let min_eig_x = x.min_eigenvalue()?;
    let min_eig_y = y.min_eigenvalue()?;
    let inner = x.inner(&y)?;
    let pass = min_eig_x >= -tol && min_eig_y >= -tol && inner.abs() <= tol;
    Ok(ScLcpSolutionCheck { x: x.clone(), y, min_eig_x, min_eig_y, inner, pass })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedSolution {
    /// Exact solution of `LCP(A, q)`.
    pub r: Vec<Scalar>,
    /// Check of `r^` against `LCP(A^, V+, q^)`.
    pub check: ScLcpSolutionCheck,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EmbedOutcome {
    Solved(Vec<EmbeddedSolution>),
    /// `LCP(A, q)` has no solution, so no frame-diagonal cone solution exists.
    Unsolvable,
}

impl EmbedOutcome {
    pub fn all_pass(&self) -> bool {
        match self {
            EmbedOutcome::Solved(s) => s.iter().all(|e| e.check.pass),
            EmbedOutcome::Unsolvable => true,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EmbedOutcome::Unsolvable => json!({ "outcome": "unsolvable", "pass": true }),
            EmbedOutcome::Solved(s) => json!({
                "outcome": "solved",
                "pass": self.all_pass(),
                "solutions": s.iter().map(|e| json!({
                    "r": format_vector(&e.r),
                    "check": e.check.to_json(),
                })).collect::<Vec<_>>(),
            }),
        }
    }
}

pub fn embed_solve(a: &RationalMatrix, q: &[Scalar], frame: &JordanFrame) -> Result<EmbedOutcome> {
    embed_solve_with(a, q, frame, EnumCap::from_env(), VERIFY_TOL)
}

/// Solves `LCP(A, q)` exactly, lifts every solution `r` to `r^` and checks
/// it against `LCP(A^, V+, q^)`.
pub fn embed_solve_with(
    a: &RationalMatrix,
    q: &[Scalar],
    frame: &JordanFrame,
    cap: EnumCap,
    tol: f64,
) -> Result<EmbedOutcome> {
    if a.order() != frame.len() {
        return Err(Error::DimensionMismatch { expected: frame.len(), got: a.order() });
    }
    let inst = LcpInstance::new(a.clone(), q.to_vec())?;
    let sols = solve_lcp_capped(&inst, cap)?;
    if sols.is_empty() {
        return Ok(EmbedOutcome::Unsolvable);
    }
    let l = hat_transform(&to_real(a), frame)?;
    let qf: Vec<f64> = q.iter().map(to_f64).collect();
    let q_hat = frame.hat(&qf)?;
    let mut out = Vec::with_capacity(sols.len());
    for s in sols {
        let rf: Vec<f64> = s.x.iter().map(to_f64).collect();
        let x = frame.hat(&rf)?;
        let check = verify_sc_solution(&l, &q_hat, &x, tol)?;
        out.push(EmbeddedSolution { r: s.x, check });
    }
    Ok(EmbedOutcome::Solved(out))
}

/// Default eigenvalue band for the rank-one test.
pub const RANK_ONE_TOL: f64 = 1e-9;

fn eig_range(x: &JordanElement) -> Result<(f64, f64)> {
    Ok((x.min_eigenvalue()?, x.max_eigenvalue()?))
}

/// `a (x) b` is Q iff `a > 0, b > 0` or `a < 0, b < 0`. Eigenvalues within
/// `tol` of zero count as unknown sign.
pub fn classify_rank_one_q(a: &JordanElement, b: &JordanElement, tol: f64) -> Result<ClassVerdict> {
    a.inner(b)?;
    let (a_lo, a_hi) = eig_range(a)?;
    let (b_lo, b_hi) = eig_range(b)?;
    let cond = format!("eig(a) in [{a_lo:.3e}, {a_hi:.3e}], eig(b) in [{b_lo:.3e}, {b_hi:.3e}]");
    let cert = Certificate::new(Rule::T10_8, cond);
    if (a_lo > tol && b_lo > tol) || (a_hi < -tol && b_hi < -tol) {
        return Ok(ClassVerdict::yes(cert));
    }
    let may_pos = a_lo >= -tol && b_lo >= -tol;
    let may_neg = a_hi <= tol && b_hi <= tol;
    if !may_pos && !may_neg {
        return Ok(ClassVerdict::no(cert));
    }
    Ok(ClassVerdict::undecided(cert))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampleOutcome {
    NoViolation { samples: usize },
    Violation(JordanElement),
}

impl SampleOutcome {
    pub fn witness(&self) -> Option<&JordanElement> {
        match self {
            SampleOutcome::Violation(x) => Some(x),
            SampleOutcome::NoViolation { .. } => None,
        }
    }
}

/// `e / |e|`, then `samples` primitive idempotents and normalized squares
/// drawn alternately.
fn cone_samples(algebra: AlgebraSpec, samples: usize, seed: u64) -> impl Iterator<Item = JordanElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = JordanElement::unit(algebra);
    let first = e.scale(1.0 / e.norm());
    std::iter::once(first).chain((0..samples).map(move |k| {
        if k % 2 == 0 {
            JordanElement::random_cone(algebra, &mut rng)
        } else {
            JordanFrame::random(algebra, &mut rng).idempotents()[0].clone()
        }
    }))
}

/// Looks for a nonzero cone element with `<L(x), x> <= tol`. Sampling can
/// only refute strict copositivity, never prove it.
pub fn strict_copositivity_sample(l: &LinearTransform, samples: usize, seed: u64, tol: f64) -> Result<SampleOutcome> {
    for x in cone_samples(l.algebra(), samples, seed) {
        if l.apply(&x)?.inner(&x)? <= tol {
            return Ok(SampleOutcome::Violation(x));
        }
    }
    Ok(SampleOutcome::NoViolation { samples: samples + 1 })
}

/// Looks for a nonzero cone element whose image leaves the cone
/// (`lambda_min(L(x)) < -tol`).
pub fn cone_image_sample(l: &LinearTransform, samples: usize, seed: u64, tol: f64) -> Result<SampleOutcome> {
    for x in cone_samples(l.algebra(), samples, seed) {
        if !l.apply(&x)?.in_cone(tol)? {
            return Ok(SampleOutcome::Violation(x));
        }
    }
    Ok(SampleOutcome::NoViolation { samples: samples + 1 })
}

/// Smallest eigenvalue of `L(x)` over the sampled cone elements.
pub fn min_image_eigenvalue(l: &LinearTransform, samples: usize, seed: u64) -> Result<f64> {
    let mut lo = f64::INFINITY;
    for x in cone_samples(l.algebra(), samples, seed) {
        lo = lo.min(l.apply(&x)?.min_eigenvalue()?);
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::transform::rank_one;
    use crate::scalar::int;
    use crate::verdict::Answer;
    use nalgebra::DMatrix;

    #[test]
    fn verify_identity_examples() {
        let spec = AlgebraSpec::Sym(3);
        let id = LinearTransform::identity(spec);
        let e = JordanElement::unit(spec);
        assert!(verify_sc_solution(&id, &e.neg(), &e, 1e-12).unwrap().pass);
        let c = verify_sc_solution(&id, &e, &e, 1e-12).unwrap();
        assert!(!c.pass);
        assert!((c.inner - 6.0).abs() < 1e-12);
    }

    #[test]
    fn embed_identity() {
        let f = JordanFrame::standard(AlgebraSpec::Sym(2));
        let out = embed_solve(&RationalMatrix::identity(2), &[int(-1), int(-1)], &f).unwrap();
        let EmbedOutcome::Solved(s) = out else { panic!("solvable") };
        assert_eq!(s.len(), 1);
        assert!(s[0].check.pass);
        assert!(s[0].check.x.distance(&JordanElement::unit(AlgebraSpec::Sym(2))) < 1e-15);
    }

    #[test]
    fn embed_small_example_tight() {
        let a = RationalMatrix::from_i64(&[&[1, -1], &[1, 0]]);
        let f = JordanFrame::standard(AlgebraSpec::Sym(2));
        let out = embed_solve_with(&a, &[int(-1), int(-1)], &f, EnumCap::default(), 1e-12).unwrap();
        assert!(matches!(out, EmbedOutcome::Solved(_)));
        assert!(out.all_pass());
    }

    #[test]
    fn embed_unsolvable() {
        let a = RationalMatrix::from_i64(&[&[-1, 0], &[0, -1]]);
        let f = JordanFrame::standard(AlgebraSpec::Sym(2));
        assert_eq!(embed_solve(&a, &[int(1), int(-1)], &f).unwrap(), EmbedOutcome::Unsolvable);
    }

    #[test]
    fn rank_one_verdicts() {
        let spec = AlgebraSpec::Sym(2);
        let e = JordanElement::unit(spec);
        assert_eq!(classify_rank_one_q(&e, &e, RANK_ONE_TOL).unwrap().answer, Answer::Yes);
        assert_eq!(classify_rank_one_q(&e.neg(), &e.neg(), RANK_ONE_TOL).unwrap().answer, Answer::Yes);
        let mixed = JordanElement::diagonal(spec, &[1.0, -1.0]).unwrap();
        let v = classify_rank_one_q(&mixed, &e, RANK_ONE_TOL).unwrap();
        assert_eq!(v.answer, Answer::No);
        assert_eq!(v.rule(), Rule::T10_8);
        let edge = JordanElement::diagonal(spec, &[1.0, 0.0]).unwrap();
        assert_eq!(classify_rank_one_q(&edge, &e, RANK_ONE_TOL).unwrap().answer, Answer::Undecided);
        assert_eq!(classify_rank_one_q(&edge, &e.neg(), RANK_ONE_TOL).unwrap().answer, Answer::No);
    }

    #[test]
    fn copositivity_sampler() {
        let spec = AlgebraSpec::Sym(3);
        let e = JordanElement::unit(spec);
        let id = LinearTransform::identity(spec);
        assert!(matches!(strict_copositivity_sample(&id, 200, 1, 0.0).unwrap(), SampleOutcome::NoViolation { .. }));
        let l = rank_one(&e, &e.neg()).unwrap();
        let out = strict_copositivity_sample(&l, 200, 1, 0.0).unwrap();
        let x = out.witness().unwrap();
        assert!(x.distance(&e.scale(1.0 / 3f64.sqrt())) < 1e-15);

        let a = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.0, 0.0, 3.0, 1.0, 4.0, 0.0, 0.5]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let hat = hat_transform(&a, &JordanFrame::random(spec, &mut rng)).unwrap();
        assert!(matches!(strict_copositivity_sample(&hat, 2000, 3, 0.0).unwrap(), SampleOutcome::NoViolation { .. }));
    }

    #[test]
    fn image_sampler_finds_mixed_direction() {
        let spec = AlgebraSpec::Sym(2);
        let a = JordanElement::diagonal(spec, &[1.0, -2.0]).unwrap();
        let b = JordanElement::unit(spec);
        let l = rank_one(&a, &b).unwrap();
        let x = cone_image_sample(&l, 10, 0, 1e-9).unwrap();
        let x = x.witness().expect("violation");
        assert!(x.in_cone(0.0).unwrap());
        assert!(!l.apply(x).unwrap().in_cone(1e-9).unwrap());
    }
}
