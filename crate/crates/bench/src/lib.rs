//! Seeded inputs shared by the benchmarks.

use lcpq_core::scalar::int;
use lcpq_core::{generate, EntryRange, GenKind, RationalMatrix, Scalar};

pub const SEED: u64 = 2024;

pub fn corpus(kind: GenKind, n: usize, count: usize) -> Vec<RationalMatrix> {
    generate(kind, n, count, SEED, EntryRange::symmetric(5)).expect("benchmark family is feasible")
}

/// Dense integer matrix with a dominant positive diagonal.
pub fn dense(n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, |i, j| {
        if i == j {
            int(2 * n as i64)
        } else {
            int(((3 * i + 5 * j) % 7) as i64 - 3)
        }
    })
}

pub fn ramp(n: usize) -> Vec<Scalar> {
    (0..n).map(|i| int(i as i64 - (n as i64) / 2)).collect()
}
