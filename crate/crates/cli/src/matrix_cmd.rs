use std::fs;
use std::io::Write;
use std::path::Path;
use std::thread;
use std::time::Instant;

use clap::ValueEnum;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use lcpq_core::lcp::{degree_capped, q_oracle_capped, EnumCap};
use lcpq_core::{
    classify_with, detect_structure, generate, parse_matrix, ClassVerdict, ClassifyOptions, EntryRange, GenKind,
    MatrixFormat, RationalMatrix,
};

use crate::exit::{self, CliResult, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Plain,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
}

/// A parsed input file with its content hash.
pub struct Input {
    pub path: String,
    pub sha256: String,
    pub matrix: RationalMatrix,
}

pub fn read_matrix(path: &str, format: InputFormat) -> CliResult<Input> {
    let bytes = fs::read(path).map_err(|e| Failure::io(path, e))?;
    let format = match format {
        InputFormat::Auto => MatrixFormat::sniff(&bytes),
        InputFormat::Plain => MatrixFormat::Plain,
        InputFormat::Json => MatrixFormat::Json,
    };
    let matrix = parse_matrix(&bytes, format).map_err(|e| {
        let f = Failure::from(e);
        Failure::new(f.code, format!("{path}: {}", f.message))
    })?;
    Ok(Input {
        path: path.to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
        matrix,
    })
}

/// Maps `f` over `items` on scoped threads, keeping input order.
fn par_map<'a, T: Sync, R: Send>(items: &'a [T], f: impl Fn(&'a T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// One line of a run report.
struct Record<'a> {
    input: &'a Input,
    structure: String,
    classifier: ClassVerdict,
    classify_ms: f64,
    oracle: Option<(ClassVerdict, f64)>,
}

impl Record<'_> {
    fn agreement(&self) -> Option<bool> {
        self.oracle.as_ref().map(|(o, _)| !self.classifier.answer.contradicts(o.answer))
    }

    fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "path": self.input.path,
            "input_sha256": self.input.sha256,
            "order": self.input.matrix.order(),
            "structure": self.structure,
            "classifier": self.classifier.to_json(),
        });
        if let Some((o, _)) = &self.oracle {
            v["oracle"] = o.to_json();
            v["agreement"] = json!(self.agreement());
        }
        if timings {
            let mut t = json!({ "classify_ms": self.classify_ms });
            if let Some((_, ms)) = &self.oracle {
                t["oracle_ms"] = json!(ms);
            }
            v["timings"] = t;
        }
        v
    }
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn run<'a>(input: &'a Input, opts: &ClassifyOptions, with_oracle: bool) -> CliResult<Record<'a>> {
    let a = &input.matrix;
    let structure = detect_structure(a).tag.to_string();
    let t = Instant::now();
    let classifier = classify_with(a, opts);
    let classify_ms = elapsed_ms(t);
    let oracle = if with_oracle {
        let t = Instant::now();
        let o = q_oracle_capped(a, opts.budget, opts.seed, opts.cap)?;
        Some((o, elapsed_ms(t)))
    } else {
        None
    };
    Ok(Record { input, structure, classifier, classify_ms, oracle })
}

fn read_all(paths: &[String], format: InputFormat) -> CliResult<Vec<Input>> {
    paths.iter().map(|p| read_matrix(p, format)).collect()
}

pub struct ClassifyArgs<'a> {
    pub paths: &'a [String],
    pub format: InputFormat,
    pub json: bool,
    pub timings: bool,
    pub budget: usize,
    pub seed: u64,
}

pub fn classify(args: ClassifyArgs<'_>) -> CliResult {
    let inputs = read_all(args.paths, args.format)?;
    let opts = ClassifyOptions { budget: args.budget, seed: args.seed, cap: EnumCap::from_env() };
    let multi = inputs.len() > 1;
    let records = par_map(&inputs, |i| run(i, &opts, false));
    let mut code = exit::YES;
    let mut out = std::io::stdout().lock();
    for r in records {
        let r = r?;
        code = code.max(exit::for_answer(r.classifier.answer));
        if args.json {
            writeln!(out, "{}", r.to_json(args.timings)).ok();
        } else if multi {
            writeln!(out, "{}: Q: {}", r.input.path, r.classifier).ok();
        } else {
            writeln!(out, "Q: {}", r.classifier).ok();
        }
    }
    Ok(code)
}

pub fn verify(args: ClassifyArgs<'_>) -> CliResult {
    let inputs = read_all(args.paths, args.format)?;
    let cap = EnumCap::from_env();
    for i in &inputs {
        cap.check(i.matrix.order()).map_err(|e| {
            let f = Failure::from(e);
            Failure::new(f.code, format!("{}: {}", i.path, f.message))
        })?;
    }
    let opts = ClassifyOptions { budget: args.budget, seed: args.seed, cap };
    let records = par_map(&inputs, |i| run(i, &opts, true));
    let mut contradictions = 0usize;
    let mut out = std::io::stdout().lock();
    if !args.json {
        writeln!(out, "path\torder\tstructure\tclassifier\toracle\tagreement").ok();
    }
    for r in records {
        let r = r?;
        let agree = r.agreement().unwrap_or(true);
        if !agree {
            contradictions += 1;
        }
        if args.json {
            writeln!(out, "{}", r.to_json(args.timings)).ok();
        } else {
            let oracle = r.oracle.as_ref().map(|(o, _)| o.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.input.path,
                r.input.matrix.order(),
                r.structure,
                r.classifier,
                oracle,
                if agree { "agree" } else { "CONTRADICTION" }
            )
            .ok();
        }
    }
    if contradictions > 0 {
        eprintln!("{contradictions} contradiction(s) between classifier and oracle");
        return Ok(exit::NO);
    }
    Ok(exit::YES)
}

pub fn degree(path: &str, format: InputFormat, seed: u64) -> CliResult {
    let input = read_matrix(path, format)?;
    let d = degree_capped(&input.matrix, seed, EnumCap::from_env())?;
    println!("{d}");
    Ok(exit::YES)
}

pub struct GenerateArgs<'a> {
    pub kind: &'a str,
    pub n: Option<usize>,
    pub count: usize,
    pub seed: u64,
    pub entry_range: &'a str,
    pub out: Option<&'a Path>,
    pub format: OutputFormat,
}

fn encode(a: &RationalMatrix, format: OutputFormat) -> String {
    match format {
        OutputFormat::Plain => a.to_plain(),
        OutputFormat::Json => format!("{}\n", a.to_json()),
    }
}

pub fn generate_cmd(args: GenerateArgs<'_>) -> CliResult {
    let kind: GenKind = args.kind.parse()?;
    let range: EntryRange = args.entry_range.parse()?;
    let n = args.n.unwrap_or(if kind == GenKind::TwoByTwo { 2 } else { 3 });
    let mats = generate(kind, n, args.count, args.seed, range)?;
    match args.out {
        None => {
            let mut out = std::io::stdout().lock();
            for a in &mats {
                writeln!(out, "{}", a.to_json()).ok();
            }
        }
        Some(dir) => {
            let shown = dir.display().to_string();
            fs::create_dir_all(dir).map_err(|e| Failure::io(&shown, e))?;
            let width = args.count.saturating_sub(1).to_string().len().max(4);
            let ext = match args.format {
                OutputFormat::Plain => "txt",
                OutputFormat::Json => "json",
            };
            for (i, a) in mats.iter().enumerate() {
                let path = dir.join(format!("{kind}-n{n}-{i:0width$}.{ext}"));
                fs::write(&path, encode(a, args.format)).map_err(|e| Failure::io(&path.display().to_string(), e))?;
            }
        }
    }
    Ok(exit::YES)
}
