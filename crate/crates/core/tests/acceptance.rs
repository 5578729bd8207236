//! Acceptance gate: eleven end-to-end criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed.

use std::thread;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcpq_core::jordan::{
    classify_rank_one_q, cone_image_sample, conjugate_transform, embed_solve_with, hat_transform,
    min_image_eigenvalue, quadratic_representation, rank_one, to_real, verify_sc_solution, AlgebraSpec,
    EmbedOutcome, JordanElement, JordanFrame, RANK_ONE_TOL,
};
use lcpq_core::lcp::{
    degree, is_e, is_lcp_solution, is_p, is_r0, is_rd, is_rstar, q_oracle, solve_lcp, EnumCap, LcpInstance,
};
use lcpq_core::scalar::int;
use lcpq_core::structure::{bdsw_type, relevant_off_diagonal};
use lcpq_core::{
    classify, classify_2x2, classify_bdsw_type1, classify_bdsw_type2, classify_bdsw_type3, classify_bdsw_type4,
    classify_triangular, ppt, rotate_conjugate, Answer, BdswType, ClassVerdict, EntryRange, GenKind,
    MatrixGenerator, RationalMatrix, Rule, Scalar, Witness,
};

const BUDGET: usize = 256;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], summary: String) -> Self {
        let detail = match failures.first() {
            None => summary,
            Some(f) => format!("{summary}; {} failure(s), first: {f}", failures.len()).replace('\n', " / "),
        };
        Outcome { pass: failures.is_empty(), detail }
    }
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn oracle(a: &RationalMatrix, seed: u64) -> ClassVerdict {
    q_oracle(a, BUDGET, seed).expect("order within cap")
}

fn det_sign_positive(e: usize, det: &Scalar) -> bool {
    if e % 2 == 1 {
        det.is_negative()
    } else {
        det.is_positive()
    }
}

fn r0(a: &RationalMatrix) -> bool {
    is_r0(a).unwrap().is_yes()
}

/// Q iff R0 with degree +-1, on the oracle's definite verdicts.
fn degree_equivalence(a: &RationalMatrix, q: Answer) -> Option<String> {
    let lhs = r0(a) && degree(a, 5).map(|d| d.abs() == 1).unwrap_or(false);
    match q {
        Answer::Undecided => None,
        q if (q == Answer::Yes) != lhs => Some(format!("R0/degree mismatch for {}", a.to_plain())),
        _ => None,
    }
}

fn exhaustive_2x2() -> Outcome {
    let mut failures = Vec::new();
    let mut yes = 0;
    let vals = [-2i64, -1, 0, 1, 2];
    for code in 0..625usize {
        let e: Vec<i64> = (0..4).map(|p| vals[(code / 5usize.pow(p)) % 5]).collect();
        let a = RationalMatrix::from_i64(&[&e[0..2], &e[2..4]]);
        let c = classify_2x2(&a).unwrap();
        let o = oracle(&a, code as u64);
        if c.answer.contradicts(o.answer) {
            failures.push(format!("{} classify {} oracle {}", a.to_plain(), c, o));
        }
        if !o.answer.is_definite() || !c.answer.is_definite() {
            failures.push(format!("{} undecided", a.to_plain()));
        }
        failures.extend(degree_equivalence(&a, o.answer));
        yes += c.is_yes() as usize;
    }
    Outcome::new(&failures, format!("625 matrices, {yes} Q"))
}

fn triangular() -> Outcome {
    let mut g = MatrixGenerator::new(2, EntryRange::symmetric(5));
    let mut failures = Vec::new();
    let mut yes = 0;
    for t in 0..1000u64 {
        let n = 1 + (t as usize % 6);
        let a = g.sample(GenKind::Triangular, n).unwrap();
        let c = classify_triangular(&a).unwrap();
        let want = a.diag().iter().all(Signed::is_positive);
        if c.is_yes() != want {
            failures.push(format!("{} verdict {}", a.to_plain(), c));
        }
        let o = oracle(&a, t);
        if c.answer.contradicts(o.answer) || !o.answer.is_definite() {
            failures.push(format!("{} classify {} oracle {}", a.to_plain(), c, o));
        }
        if c.is_yes() {
            yes += 1;
            let chain = [is_p(&a), is_e(&a), is_rstar(&a)];
            if !chain.iter().all(|v| v.as_ref().unwrap().is_yes()) {
                failures.push(format!("{} Q but not P/E/R*", a.to_plain()));
            }
        }
    }
    Outcome::new(&failures, format!("1000 matrices, {yes} Q"))
}

/// Shared loop for the determinant-characterized bdsw types.
fn bdsw_family(
    kind: GenKind,
    seed: u64,
    classify: fn(&RationalMatrix) -> lcpq_core::Result<ClassVerdict>,
    expected: fn(&RationalMatrix) -> bool,
    extra: fn(&RationalMatrix, &mut Vec<String>),
) -> Outcome {
    let mut g = MatrixGenerator::new(seed, EntryRange::symmetric(5));
    let mut failures = Vec::new();
    let mut yes = 0;
    for t in 0..500u64 {
        let n = 2 + (t as usize % 5);
        let a = g.sample(kind, n).unwrap();
        let c = classify(&a).unwrap();
        let o = oracle(&a, t);
        if c.is_yes() != expected(&a) {
            failures.push(format!("{} verdict {} against determinant rule", a.to_plain(), c));
        }
        if c.answer != o.answer {
            failures.push(format!("{} classify {} oracle {}", a.to_plain(), c, o));
        }
        failures.extend(degree_equivalence(&a, o.answer));
        extra(&a, &mut failures);
        yes += c.is_yes() as usize;
    }
    Outcome::new(&failures, format!("500 matrices, {yes} Q"))
}

fn type2() -> Outcome {
    bdsw_family(GenKind::BdswII, 3, classify_bdsw_type2, |a| a.determinant().is_positive(), |_, _| {})
}

fn type3_inverse(a: &RationalMatrix, failures: &mut Vec<String>) {
    let n = a.order();
    let det = a.determinant();
    if det.is_zero() {
        return;
    }
    let sign = if n % 2 == 1 { int(1) } else { int(-1) };
    let b = a.inverse().unwrap().scale(&(&det * &sign));
    if !b.rows().flatten().all(Signed::is_positive) {
        failures.push(format!("{} inverse pattern not positive", a.to_plain()));
    }
}

fn type3() -> Outcome {
    bdsw_family(
        GenKind::BdswIII,
        4,
        classify_bdsw_type3,
        |a| det_sign_positive(a.order() + 1, &a.determinant()),
        type3_inverse,
    )
}

fn negative_diagonal_count(a: &RationalMatrix) -> usize {
    a.diag().iter().filter(|d| d.is_negative()).count()
}

/// Pivot on a positive last diagonal entry: the northwest block of the
/// transform is bdsw of Type IV (Type III once one positive row is left)
/// with corner `-a_n1 a_(n-1)n / a_nn`; the degree changes by `sgn a_ii`.
/// At order 2 the corner lands on the diagonal of the `1 x 1` block.
fn type4_recursion(a: &RationalMatrix, failures: &mut Vec<String>) {
    let n = a.order();
    let k = negative_diagonal_count(a);
    let rotated = (1..n)
        .map(|s| rotate_conjugate(a, s).unwrap())
        .chain(std::iter::once(a.clone()))
        .find(|b| b.get(n - 1, n - 1).is_positive() && bdsw_type(b).is_some())
        .expect("Type IV has a positive diagonal entry");
    let t = ppt(&rotated, &[n - 1]).unwrap();
    let idx: Vec<usize> = (0..n - 1).collect();
    let nw = t.principal(&idx);
    let corner = -(rotated.get(n - 1, 0) * rotated.get(n - 2, n - 1)) / rotated.get(n - 1, n - 1);
    let want = if n - k == 1 { Some(BdswType::III) } else { Some(BdswType::IV { k }) };
    let got = if nw.order() >= 2 { bdsw_type(&nw) } else { None };
    let shape_ok = if nw.order() == 1 {
        nw.get(0, 0) == &(rotated.get(0, 0) + &corner)
    } else {
        got == want && nw.get(n - 2, 0) == &corner
    };
    if !shape_ok {
        failures.push(format!("{} pivot block {} has type {:?}", a.to_plain(), nw.to_plain(), got));
    }
    if !r0(a) {
        return;
    }
    let d = degree(a, 9).unwrap();
    for i in 0..n {
        let p = a.get(i, i);
        let t = ppt(a, &[i]).unwrap();
        let dt = degree(&t, 9).unwrap();
        let s = if p.is_positive() { 1 } else { -1 };
        if dt != d * s {
            failures.push(format!("{} pivot {i}: deg {dt} vs {d}*{s}", a.to_plain()));
        }
    }
}

fn type4() -> Outcome {
    bdsw_family(
        GenKind::BdswIV,
        5,
        classify_bdsw_type4,
        |a| det_sign_positive(negative_diagonal_count(a) + 1, &a.determinant()),
        type4_recursion,
    )
}

/// Case conditions for Type I, recomputed entry by entry.
fn type1_expected(a: &RationalMatrix) -> (Rule, bool) {
    let n = a.order();
    let (an1, ann) = (a.get(n - 1, 0), a.get(n - 1, n - 1));
    let diag_pos = |upto: usize| (0..upto).all(|i| a.get(i, i).is_positive());
    if !an1.is_negative() && ann.is_positive() {
        (Rule::T5_1, diag_pos(n))
    } else if an1.is_positive() && ann.is_zero() {
        (Rule::T5_2, diag_pos(n - 1) && (0..n - 1).all(|i| a.get(i, i + 1).is_negative()))
    } else if an1.is_negative() && ann.is_positive() {
        let b = (0..n - 1).any(|r| {
            a.get(r, r).is_zero()
                && a.get(r, r + 1).is_positive()
                && (0..n).filter(|&i| i != r).all(|i| a.get(i, i).is_positive() && relevant_off_diagonal(a, i).is_negative())
        });
        (Rule::T5_3, diag_pos(n) || b)
    } else {
        (Rule::T5_4, false)
    }
}

fn type1() -> Outcome {
    let mut g = MatrixGenerator::new(6, EntryRange::symmetric(5));
    let mut failures = Vec::new();
    let mut cases = [0usize; 4];
    let mut yes = 0;
    for t in 0..500u64 {
        let n = 2 + (t as usize % 5);
        let a = g.sample(GenKind::BdswI, n).unwrap();
        let c = classify_bdsw_type1(&a).unwrap();
        let (rule, want) = type1_expected(&a);
        let case = [Rule::T5_1, Rule::T5_2, Rule::T5_3, Rule::T5_4].iter().position(|r| *r == rule).unwrap();
        cases[case] += 1;
        if c.rule() != rule || c.is_yes() != want {
            failures.push(format!("{} verdict {}, expected {rule} {want}", a.to_plain(), c));
        }
        let o = oracle(&a, t);
        if c.answer != o.answer {
            failures.push(format!("{} classify {} oracle {}", a.to_plain(), c, o));
        }
        if rule == Rule::T5_2 && c.is_yes() && !a.determinant().is_positive() {
            failures.push(format!("{} case 2 Q with det <= 0", a.to_plain()));
        }
        failures.extend(degree_equivalence(&a, o.answer));
        yes += c.is_yes() as usize;
    }
    Outcome::new(&failures, format!("500 matrices, cases {cases:?}, {yes} Q"))
}

fn fixtures() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };

    let a1 = RationalMatrix::from_i64(&[&[-1, 0], &[0, -1]]);
    let v = classify(&a1);
    check(v.is_no() && v.rule() == Rule::NonpositiveRow, "A1 not rejected by nonpositive row");

    let a2 = RationalMatrix::from_i64(&[&[0, 1], &[0, 1]]);
    check(classify(&a2).is_no(), "A2 classified Q");
    check(lcpq_core::lcp::is_s(&a2).is_yes(), "A2 should be S");
    check(is_r0(&a2).unwrap().is_no(), "A2 should fail R0");

    let a4 = RationalMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, -1], &[1, 0, 0, 0]]);
    check(a4.determinant().is_positive(), "4x4 determinant not positive");
    let q = vec![int(0), int(0), int(0), int(-1)];
    let sols = solve_lcp(&LcpInstance::new(a4.clone(), q).unwrap()).unwrap();
    check(sols.is_empty(), "4x4 LCP with q=(0,0,0,-1) has a solution");
    let v = classify(&a4);
    check(v.is_no() && v.rule() == Rule::T5_2, "4x4 not rejected by T5.2");
    check(oracle(&a4, 0).is_no(), "oracle misses the 4x4 counterexample");

    let a3 = RationalMatrix::from_i64(&[&[1, -1, 1], &[0, 1, -1], &[1, 0, 0]]);
    let q3 = vec![int(0), int(0), int(-1)];
    check(solve_lcp(&LcpInstance::new(a3.clone(), q3).unwrap()).unwrap().is_empty(), "3x3 LCP solvable");
    check(classify(&a3).is_no(), "3x3 triangular-plus-corner classified Q");

    let e2 = RationalMatrix::from_i64(&[&[1, -1], &[1, 0]]);
    check(classify(&e2).is_yes() && is_e(&e2).unwrap().is_no(), "[[1,-1],[1,0]] should be Q but not E");

    Outcome::new(&failures, "A1, A2, 4x4, 3x3, q=(0,0,0,-1)".into())
}

fn random_int_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> RationalMatrix {
    RationalMatrix::from_fn(n, |_, _| int(rng.random_range(lo..=hi)))
}

fn r0_block(rng: &mut ChaCha8Rng, n: usize, lo: i64) -> RationalMatrix {
    loop {
        let m = random_int_matrix(rng, n, lo, 3);
        if r0(&m) {
            return m;
        }
    }
}

fn int_rows(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Vec<Vec<Scalar>> {
    (0..rows).map(|_| (0..cols).map(|_| int(rng.random_range(lo..=hi))).collect()).collect()
}

fn blocks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let mut q_count = 0;
    for t in 0..200u64 {
        let p = rng.random_range(1..=3);
        let s = rng.random_range(1..=3);
        let b = r0_block(&mut rng, p, -3);
        let e = r0_block(&mut rng, s, 0);
        let c = int_rows(&mut rng, p, s, -3, 3);
        let d = int_rows(&mut rng, s, p, 0, 3);
        let a = block_matrix(&b, &c, &d, &e);
        if !r0(&a) {
            failures.push(format!("{} not R0", a.to_plain()));
            continue;
        }
        let (da, db, de) = (degree(&a, t).unwrap(), degree(&b, t).unwrap(), degree(&e, t).unwrap());
        if da != db * de {
            failures.push(format!("{}: deg {da} != {db}*{de}", a.to_plain()));
        }
        let qa = oracle(&a, t);
        let qb = oracle(&b, t);
        if qa.is_yes() && qb.is_no() {
            failures.push(format!("{}: A in Q but B not", a.to_plain()));
        }
        if db != 0 && de != 0 && qa.is_no() {
            failures.push(format!("{}: nonzero degrees but A not Q", a.to_plain()));
        }
        let ones = |k: usize| vec![Scalar::one(); k];
        if is_rd(&b, &ones(p)).unwrap().is_yes() && !is_rd(&a, &ones(p + s)).unwrap().is_yes() {
            failures.push(format!("{}: B in R(1) but A not", a.to_plain()));
        }
        if is_rstar(&b).unwrap().is_yes() && !is_rstar(&a).unwrap().is_yes() {
            failures.push(format!("{}: B in R* but A not", a.to_plain()));
        }
        let free = random_int_matrix(&mut rng, p, -3, 3);
        let a2 = block_matrix(&free, &c, &d, &random_int_matrix(&mut rng, s, -3, 3));
        if r0(&a2) && !r0(&free) {
            failures.push(format!("{}: A in R0 with D >= 0 but B not", a2.to_plain()));
        }
        q_count += qa.is_yes() as usize;
    }
    Outcome::new(&failures, format!("200 compositions, {q_count} Q"))
}

fn block_matrix(b: &RationalMatrix, c: &[Vec<Scalar>], d: &[Vec<Scalar>], e: &RationalMatrix) -> RationalMatrix {
    let p = b.order();
    let s = e.order();
    RationalMatrix::from_fn(p + s, |i, j| match (i < p, j < p) {
        (true, true) => b.get(i, j).clone(),
        (true, false) => c[i][j - p].clone(),
        (false, true) => d[i - p][j].clone(),
        (false, false) => e.get(i - p, j - p).clone(),
    })
}

fn random_algebra(rng: &mut ChaCha8Rng) -> AlgebraSpec {
    if rng.random_bool(0.5) {
        AlgebraSpec::Rn(rng.random_range(1..=6))
    } else {
        AlgebraSpec::Sym(rng.random_range(1..=4))
    }
}

fn random_frame(rng: &mut ChaCha8Rng, spec: AlgebraSpec) -> JordanFrame {
    match rng.random_range(0..3) {
        0 => JordanFrame::standard(spec),
        1 => JordanFrame::random(spec, rng),
        _ => JordanElement::random(spec, rng).spectral().unwrap().1,
    }
}

fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-2.0..2.0)).collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// One sample of every identity; returns the largest residual.
fn jordan_sample(rng: &mut ChaCha8Rng) -> f64 {
    let spec = random_algebra(rng);
    let n = spec.rank();
    let x = JordanElement::random(spec, rng);
    let y = JordanElement::random(spec, rng);
    let z = JordanElement::random(spec, rng);
    let mut worst: f64 = 0.0;

    worst = worst.max(x.product(&y).unwrap().distance(&y.product(&x).unwrap()));
    let x2 = x.square();
    let lhs = x.product(&x2.product(&y).unwrap()).unwrap();
    let rhs = x2.product(&x.product(&y).unwrap()).unwrap();
    worst = worst.max(lhs.distance(&rhs));
    let l = x.product(&y).unwrap().inner(&z).unwrap();
    let r = x.inner(&y.product(&z).unwrap()).unwrap();
    worst = worst.max((l - r).abs());

    let (eigs, spectral_frame) = x.spectral().unwrap();
    worst = worst.max(spectral_frame.residual());
    worst = worst.max(spectral_frame.hat(&eigs).unwrap().distance(&x));

    let frame = random_frame(rng, spec);
    worst = worst.max(frame.residual());
    let rv = gaussian_vec(rng, n);
    let sv = gaussian_vec(rng, n);
    let rh = frame.hat(&rv).unwrap();
    let sh = frame.hat(&sv).unwrap();
    worst = worst.max(max_diff(&frame.bracket(&rh).unwrap(), &rv));
    worst = worst.max((dot(&rv, &sv) - rh.inner(&sh).unwrap()).abs());

    let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-3.0..3.0));
    let ahat = hat_transform(&a, &frame).unwrap();
    let ar: Vec<f64> = (&a * nalgebra::DVector::from_vec(rv.clone())).iter().copied().collect();
    worst = worst.max(ahat.apply(&rh).unwrap().distance(&frame.hat(&ar).unwrap()));
    let bx = frame.bracket(&x).unwrap();
    let abx: Vec<f64> = (&a * nalgebra::DVector::from_vec(bx.clone())).iter().copied().collect();
    worst = worst.max((ahat.apply(&x).unwrap().inner(&x).unwrap() - dot(&abx, &bx)).abs());

    let c1 = JordanElement::random_cone(spec, rng);
    let c2 = JordanElement::random_cone(spec, rng);
    worst = worst.max((-c1.inner(&c2).unwrap()).max(0.0));
    worst
}

fn jordan_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    let samples = 10_000;
    for _ in 0..samples {
        worst = worst.max(jordan_sample(&mut rng));
    }
    let failures = if worst < 1e-9 { vec![] } else { vec![format!("max residual {worst:e}")] };
    Outcome::new(&failures, format!("{samples} samples, max residual {worst:.2e}"))
}

fn embedding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = Vec::new();
    let (mut lifted, mut constructed) = (0, 0);
    for _ in 0..200 {
        let n = rng.random_range(1..=4);
        let spec = AlgebraSpec::Sym(n);
        let a = random_int_matrix(&mut rng, n, -3, 3);
        let q: Vec<Scalar> = (0..n).map(|_| int(rng.random_range(-3..=3))).collect();
        let af = to_real(&a);
        for frame in [JordanFrame::standard(spec), JordanFrame::random(spec, &mut rng)] {
            match embed_solve_with(&a, &q, &frame, EnumCap::default(), 1e-9).unwrap() {
                EmbedOutcome::Solved(sols) => {
                    for s in &sols {
                        lifted += 1;
                        if !s.check.pass {
                            failures.push(format!("{} q={:?}: lifted solution fails", a.to_plain(), q));
                        }
                    }
                }
                EmbedOutcome::Unsolvable => {}
            }

            let support: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
            let r: Vec<i64> = support.iter().map(|&s| if s { rng.random_range(1..=4) } else { 0 }).collect();
            let w: Vec<i64> = support.iter().map(|&s| if s { 0 } else { rng.random_range(0..=4) }).collect();
            let rq: Vec<Scalar> = r.iter().map(|&v| int(v)).collect();
            let ar = a.mul_vec(&rq);
            let q2: Vec<Scalar> = (0..n).map(|i| int(w[i]) - &ar[i]).collect();
            let rf: Vec<f64> = r.iter().map(|&v| v as f64).collect();
            let x = frame.hat(&rf).unwrap();
            let l = hat_transform(&af, &frame).unwrap();
            let q2f: Vec<f64> = q2.iter().map(lcpq_core::scalar::to_f64).collect();
            let check = verify_sc_solution(&l, &frame.hat(&q2f).unwrap(), &x, 1e-9).unwrap();
            let br = frame.bracket(&x).unwrap();
            let rounded: Vec<Scalar> = br.iter().map(|v| int(v.round() as i64)).collect();
            let close = max_diff(&br, &br.iter().map(|v| v.round()).collect::<Vec<_>>()) < 1e-9;
            if !check.pass || !close || !is_lcp_solution(&a, &q2, &rounded) {
                failures.push(format!("{}: constructed cone solution does not bracket back", a.to_plain()));
            }
            constructed += 1;

            if let Ok(v) = is_r0(&a) {
                if let (Answer::No, Some(Witness::Vector(r))) = (v.answer, v.witness()) {
                    let rf: Vec<f64> = r.iter().map(lcpq_core::scalar::to_f64).collect();
                    let x = frame.hat(&rf).unwrap();
                    let zero = JordanElement::zero(spec);
                    if x.norm() == 0.0 || !verify_sc_solution(&l, &zero, &x, 1e-9).unwrap().pass {
                        failures.push(format!("{}: R0 witness does not lift", a.to_plain()));
                    }
                }
            }
        }
    }
    Outcome::new(&failures, format!("200 instances x 2 frames, {lifted} lifted, {constructed} constructed"))
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum SignClass {
    Positive,
    Negative,
    Mixed,
    WithZero,
}

fn eigs_for(rng: &mut ChaCha8Rng, class: SignClass, m: usize) -> Vec<f64> {
    let mag = |rng: &mut ChaCha8Rng| rng.random_range(0.5..3.0);
    let mut v: Vec<f64> = (0..m).map(|_| mag(rng)).collect();
    match class {
        SignClass::Positive => {}
        SignClass::Negative => v.iter_mut().for_each(|x| *x = -*x),
        SignClass::Mixed => {
            let i = rng.random_range(0..m);
            v[i] = -v[i];
            if m > 1 && v.iter().all(|x| *x < 0.0) {
                v[0] = -v[0];
            }
        }
        SignClass::WithZero => {
            let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            v.iter_mut().for_each(|x| *x *= s);
            v[rng.random_range(0..m)] = 0.0;
        }
    }
    v
}

fn rank_one_classification() -> Outcome {
    use SignClass::*;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut failures = Vec::new();
    let classes = [Positive, Negative, Mixed, WithZero];
    let mut counts = [0usize; 3];
    for round in 0..20u64 {
        let m = 2 + (round as usize % 3);
        let spec = AlgebraSpec::Sym(m);
        for ca in classes {
            for cb in classes {
                let a = JordanFrame::random(spec, &mut rng).hat(&eigs_for(&mut rng, ca, m)).unwrap();
                let b = JordanFrame::random(spec, &mut rng).hat(&eigs_for(&mut rng, cb, m)).unwrap();
                let v = classify_rank_one_q(&a, &b, RANK_ONE_TOL).unwrap();
                let want_yes = matches!((ca, cb), (Positive, Positive) | (Negative, Negative));
                counts[match v.answer {
                    Answer::Yes => 0,
                    Answer::No => 1,
                    Answer::Undecided => 2,
                }] += 1;
                if v.is_yes() != want_yes {
                    failures.push(format!("{ca:?}/{cb:?} gave {v}"));
                }
                let l = rank_one(&a, &b).unwrap();
                if want_yes && min_image_eigenvalue(&l, 200, round).unwrap() <= 0.0 {
                    failures.push(format!("{ca:?}/{cb:?}: image left the interior"));
                }
                if ca == Mixed {
                    if !v.is_no() {
                        failures.push(format!("mixed a/{cb:?} not No: {v}"));
                    }
                    let found = cone_image_sample(&l, 200, round, 1e-9).unwrap();
                    match found.witness() {
                        Some(x) if x.in_cone(1e-12).unwrap() && !l.apply(x).unwrap().in_cone(1e-9).unwrap() => {}
                        _ => failures.push(format!("mixed a/{cb:?}: no cone violation found")),
                    }
                }
            }
        }

        let frame = JordanFrame::random(spec, &mut rng);
        let dv: Vec<i64> = (0..m).map(|_| rng.random_range(-3..=3)).collect();
        let df: Vec<f64> = dv.iter().map(|&v| v as f64).collect();
        let d = frame.hat(&df).unwrap();
        let e = JordanElement::unit(spec);
        let rows = DMatrix::from_fn(m, m, |_, j| df[j]);
        let hat = hat_transform(&rows, &frame).unwrap();
        let t = rank_one(&e, &d).unwrap();
        for _ in 0..20 {
            let x = JordanElement::random(spec, &mut rng);
            let gap = hat.apply(&x).unwrap().distance(&t.apply(&x).unwrap());
            if gap > 1e-10 {
                failures.push(format!("constant-row hat differs from e(x)d by {gap:e}"));
            }
        }
        let exact = RationalMatrix::from_fn(m, |_, j| int(dv[j]));
        let positive = dv.iter().all(|&v| v > 0);
        let rn = classify(&exact);
        let rk = classify_rank_one_q(&e, &d, RANK_ONE_TOL).unwrap();
        if rk.is_yes() != positive || rn.is_yes() != positive || rn.answer == Answer::Undecided {
            failures.push(format!("d={dv:?}: rank-one {rk}, matrix {rn}"));
        }

        let a = JordanElement::random_cone(spec, &mut rng).add(&e.scale(0.2)).unwrap();
        let b = JordanElement::random(spec, &mut rng);
        let c = a.inverse(1e-12).unwrap().sqrt(1e-12).unwrap();
        let pc = quadratic_representation(&c);
        let reduced = conjugate_transform(&rank_one(&a, &b).unwrap(), &pc).unwrap();
        let target = rank_one(&e, &pc.apply(&b).unwrap()).unwrap();
        for _ in 0..10 {
            let x = JordanElement::random(spec, &mut rng);
            let gap = reduced.apply(&x).unwrap().distance(&target.apply(&x).unwrap());
            let scale = 1.0 + target.apply(&x).unwrap().norm();
            if gap > 1e-8 * scale {
                failures.push(format!("P_c reduction differs by {gap:e}"));
            }
        }
    }
    Outcome::new(&failures, format!("yes/no/undecided {counts:?}"))
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "exhaustive 2x2 agreement", limit: Duration::from_secs(30), run: exhaustive_2x2 },
        Criterion { id: 2, name: "triangular theorem", limit: Duration::from_secs(120), run: triangular },
        Criterion { id: 3, name: "bdsw Type II", limit: Duration::from_secs(120), run: type2 },
        Criterion { id: 4, name: "bdsw Type III", limit: Duration::from_secs(120), run: type3 },
        Criterion { id: 5, name: "bdsw Type IV", limit: Duration::from_secs(180), run: type4 },
        Criterion { id: 6, name: "bdsw Type I", limit: Duration::from_secs(120), run: type1 },
        Criterion { id: 7, name: "counterexample fixtures", limit: Duration::from_secs(1), run: fixtures },
        Criterion { id: 8, name: "block degree machinery", limit: Duration::from_secs(120), run: blocks },
        Criterion { id: 9, name: "Jordan identities", limit: Duration::from_secs(120), run: jordan_identities },
        Criterion { id: 10, name: "embedding round trip", limit: Duration::from_secs(120), run: embedding },
        Criterion { id: 11, name: "rank-one classification", limit: Duration::from_secs(120), run: rank_one_classification },
    ];
    let results: Vec<(Outcome, Duration)> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|c| {
                s.spawn(move || {
                    let start = Instant::now();
                    let out = (c.run)();
                    (out, start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut failed = 0;
    for (c, (out, took)) in criteria.iter().zip(results) {
        let pass = out.pass && took <= c.limit;
        failed += !pass as usize;
        let timing = if took <= c.limit { String::new() } else { format!(" over limit {:?}", c.limit) };
        println!(
            "{} {:>2} {}: {} [{:.2}s{timing}]",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            out.detail,
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
