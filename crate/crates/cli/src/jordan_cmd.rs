use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use lcpq_core::jordan::{
    classify_rank_one_q, cone_image_sample, embed_solve_with, identity_residuals, rank_one, AlgebraSpec,
    EmbedOutcome, JordanElement, JordanFrame, SampleOutcome,
};
use lcpq_core::lcp::EnumCap;
use lcpq_core::matrix::parse_vector;
use lcpq_core::scalar::format_vector;
use lcpq_core::Answer;

use crate::exit::{self, CliResult, Failure};
use crate::matrix_cmd::{read_matrix, InputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FrameKind {
    Standard,
    Random,
}

fn frame(kind: FrameKind, algebra: AlgebraSpec, rng: &mut ChaCha8Rng) -> JordanFrame {
    match kind {
        FrameKind::Standard => JordanFrame::standard(algebra),
        FrameKind::Random => JordanFrame::random(algebra, rng),
    }
}

pub struct EmbedArgs<'a> {
    pub matrix: &'a str,
    pub q: &'a str,
    pub n: Option<usize>,
    pub frame: FrameKind,
    pub seed: u64,
    pub tol: f64,
    pub json: bool,
}

pub fn embed_check(args: EmbedArgs<'_>) -> CliResult {
    let input = read_matrix(args.matrix, InputFormat::Auto)?;
    let a = &input.matrix;
    if let Some(n) = args.n {
        if n != a.order() {
            return Err(Failure::new(exit::USAGE, format!("--n {n} but the matrix has order {}", a.order())));
        }
    }
    let q = parse_vector(args.q)?;
    let algebra = AlgebraSpec::Sym(a.order()).validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let f = frame(args.frame, algebra, &mut rng);
    let outcome = embed_solve_with(a, &q, &f, EnumCap::from_env(), args.tol)?;
    let pass = outcome.all_pass();
    if args.json {
        let mut v = outcome.to_json();
        v["input_sha256"] = json!(input.sha256);
        v["q"] = json!(format_vector(&q));
        v["algebra"] = json!(algebra.to_string());
        println!("{v}");
    } else {
        match &outcome {
            EmbedOutcome::Unsolvable => println!("LCP(A, q) has no solution; nothing to embed"),
            EmbedOutcome::Solved(sols) => {
                for s in sols {
                    let c = &s.check;
                    println!(
                        "r=({}) min_eig(x)={:.3e} min_eig(y)={:.3e} <x,y>={:.3e} {}",
                        format_vector(&s.r).join(","),
                        c.min_eig_x,
                        c.min_eig_y,
                        c.inner,
                        if c.pass { "pass" } else { "FAIL" }
                    );
                }
            }
        }
        println!("embed-check: {}", if pass { "pass" } else { "fail" });
    }
    Ok(if pass { exit::YES } else { exit::NO })
}

/// `eigs:l1,..,lm` (element with these eigenvalues in the chosen frame) or
/// `coords:c1,..` (raw orthonormal coordinates).
fn parse_element(text: &str, algebra: Option<AlgebraSpec>, f: &JordanFrame) -> CliResult<JordanElement> {
    let bad = || Failure::new(exit::USAGE, format!("bad element `{text}`, expected eigs:.. or coords:.."));
    let (kind, body) = text.split_once(':').ok_or_else(bad)?;
    let values = body
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    match kind.trim() {
        "eigs" => Ok(f.hat(&values)?),
        "coords" => {
            let algebra = algebra.ok_or_else(|| Failure::new(exit::USAGE, "coords: needs --algebra"))?;
            Ok(JordanElement::new(algebra, values)?)
        }
        _ => Err(bad()),
    }
}

fn eig_count(text: &str) -> Option<usize> {
    text.strip_prefix("eigs:").map(|b| b.split(',').count())
}

pub struct RankOneArgs<'a> {
    pub a: &'a str,
    pub b: &'a str,
    pub algebra: Option<AlgebraSpec>,
    pub frame: FrameKind,
    pub seed: u64,
    pub tol: f64,
    pub samples: usize,
    pub json: bool,
}

pub fn rank_one_cmd(args: RankOneArgs<'_>) -> CliResult {
    let algebra = match args.algebra {
        Some(s) => s,
        None => {
            let m = eig_count(args.a)
                .or_else(|| eig_count(args.b))
                .ok_or_else(|| Failure::new(exit::USAGE, "cannot infer the algebra; pass --algebra"))?;
            AlgebraSpec::Sym(m).validate()?
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let fa = frame(args.frame, algebra, &mut rng);
    let fb = frame(args.frame, algebra, &mut rng);
    let a = parse_element(args.a, Some(algebra), &fa)?;
    let b = parse_element(args.b, Some(algebra), &fb)?;
    if a.algebra() != algebra || b.algebra() != algebra {
        return Err(Failure::new(exit::USAGE, format!("elements must lie in {algebra}")));
    }
    let verdict = classify_rank_one_q(&a, &b, args.tol)?;
    // A No verdict comes with a sampled cone element whose image leaves the cone.
    let witness = if verdict.answer == Answer::No {
        match cone_image_sample(&rank_one(&a, &b)?, args.samples, args.seed, args.tol)? {
            SampleOutcome::Violation(x) => Some(x),
            SampleOutcome::NoViolation { .. } => None,
        }
    } else {
        None
    };
    if args.json {
        let mut v = json!({ "algebra": algebra.to_string(), "verdict": verdict.to_json() });
        if let Some(x) = &witness {
            v["violation"] = x.to_json();
        }
        println!("{v}");
    } else {
        println!("Q: {verdict}");
        if let Some(x) = &witness {
            let coords: Vec<String> = x.coords().iter().map(|c| format!("{c:.6}")).collect();
            println!("cone element with image outside the cone: ({})", coords.join(","));
        }
    }
    Ok(exit::for_answer(verdict.answer))
}

pub fn identities(algebra: AlgebraSpec, samples: usize, seed: u64, tol: f64, json: bool) -> CliResult {
    let report = identity_residuals(algebra, samples, seed)?;
    let failures = report.failures(tol);
    if json {
        let mut v = report.to_json();
        v["tol"] = json!(tol);
        v["pass"] = json!(failures.is_empty());
        println!("{v}");
    } else {
        println!("algebra {algebra}, {samples} samples, seed {seed}");
        for (name, r) in &report.residuals {
            println!("{name:<24} {r:.3e}");
        }
        println!("max residual {:.3e} (tol {tol:e})", report.max_residual());
    }
    if failures.is_empty() {
        return Ok(exit::YES);
    }
    for (name, r) in failures {
        eprintln!("{name}: residual {r:.3e} exceeds {tol:e}");
    }
    Ok(exit::NO)
}
