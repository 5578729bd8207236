//! Seeded random instances of the structured matrix families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::scalar::{int, Scalar};
use crate::structure::{bdsw_type, BdswType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// Upper or lower triangular.
    Triangular,
    /// Upper triangular leading block, nonnegative last row with positive corner.
    TriangularPlusRow,
    BdswI,
    BdswII,
    BdswIII,
    BdswIV,
    TwoByTwo,
}

impl GenKind {
    pub const ALL: [GenKind; 7] = [
        GenKind::Triangular,
        GenKind::TriangularPlusRow,
        GenKind::BdswI,
        GenKind::BdswII,
        GenKind::BdswIII,
        GenKind::BdswIV,
        GenKind::TwoByTwo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Triangular => "tri",
            GenKind::TriangularPlusRow => "tri-plus-row",
            GenKind::BdswI => "bdsw-1",
            GenKind::BdswII => "bdsw-2",
            GenKind::BdswIII => "bdsw-3",
            GenKind::BdswIV => "bdsw-4",
            GenKind::TwoByTwo => "2x2",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown matrix type '{s}'")))
    }
}

/// Integer entries drawn from `lo..=hi`; sign-constrained entries use
/// magnitudes in `1..=max(|lo|, |hi|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntryRange {
    pub lo: i64,
    pub hi: i64,
}

impl Default for EntryRange {
    fn default() -> Self {
        EntryRange { lo: -5, hi: 5 }
    }
}

impl EntryRange {
    pub fn symmetric(r: i64) -> Self {
        EntryRange { lo: -r.abs(), hi: r.abs() }
    }

    fn magnitude(self) -> i64 {
        self.lo.abs().max(self.hi.abs())
    }
}

impl FromStr for EntryRange {
    type Err = Error;

    /// `R` for `-R..=R`, or `lo..hi` (inclusive).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("bad entry range '{s}'"));
        let r = match s.split_once("..") {
            Some((lo, hi)) => EntryRange {
                lo: lo.trim().parse().map_err(|_| bad())?,
                hi: hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?,
            },
            None => EntryRange::symmetric(s.trim().parse().map_err(|_| bad())?),
        };
        if r.lo > r.hi {
            return Err(bad());
        }
        Ok(r)
    }
}

/// Deterministic stream of structured matrices.
pub struct MatrixGenerator {
    rng: ChaCha8Rng,
    range: EntryRange,
}

impl MatrixGenerator {
    pub fn new(seed: u64, range: EntryRange) -> Self {
        MatrixGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            range,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn any(&mut self) -> Scalar {
        int(self.rng.random_range(self.range.lo..=self.range.hi))
    }

    pub fn positive(&mut self) -> Scalar {
        int(self.rng.random_range(1..=self.range.magnitude()))
    }

    pub fn negative(&mut self) -> Scalar {
        -self.positive()
    }

    pub fn nonnegative(&mut self) -> Scalar {
        int(self.rng.random_range(0..=self.range.magnitude()))
    }

    pub fn sample(&mut self, kind: GenKind, n: usize) -> Result<RationalMatrix> {
        check_order(kind, n, self.range)?;
        Ok(match kind {
            GenKind::Triangular => self.triangular(n),
            GenKind::TriangularPlusRow => self.triangular_plus_row(n),
            GenKind::BdswI => self.bdsw_type1(n),
            GenKind::BdswII => self.bdsw_signed(n, &vec![true; n]),
            GenKind::BdswIII => self.bdsw_signed(n, &vec![false; n]),
            GenKind::BdswIV => {
                let k = self.rng.random_range(1..n);
                let mut signs: Vec<bool> = (0..n).map(|i| i >= k).collect();
                signs.shuffle(&mut self.rng);
                self.bdsw_signed(n, &signs)
            }
            GenKind::TwoByTwo => RationalMatrix::from_fn(2, |_, _| self.any()),
        })
    }

    fn triangular(&mut self, n: usize) -> RationalMatrix {
        let upper = RationalMatrix::from_fn(n, |i, j| if j >= i { self.any() } else { int(0) });
        if self.rng.random_bool(0.5) {
            upper
        } else {
            upper.transpose()
        }
    }

    fn triangular_plus_row(&mut self, n: usize) -> RationalMatrix {
        RationalMatrix::from_fn(n, |i, j| match (i + 1 == n, j + 1 == n) {
            (false, _) if j >= i => self.any(),
            (false, _) => int(0),
            (true, false) => self.nonnegative(),
            (true, true) => self.positive(),
        })
    }

    /// bdsw matrix whose row `i` has diagonal sign `+` when `positive_diag[i]`
    /// and an opposite-signed relevant off-diagonal entry.
    fn bdsw_signed(&mut self, n: usize, positive_diag: &[bool]) -> RationalMatrix {
        let mut a = RationalMatrix::zeros(n);
        for (i, &p) in positive_diag.iter().enumerate() {
            let (d, o) = if p {
                (self.positive(), self.negative())
            } else {
                (self.negative(), self.positive())
            };
            a.set(i, i, d);
            a.set(i, (i + 1) % n, o);
        }
        a
    }

    /// Type I across the four sign cases of the last row, biased towards
    /// rows that make the Q conditions reachable.
    fn bdsw_type1(&mut self, n: usize) -> RationalMatrix {
        loop {
            let mut a = RationalMatrix::zeros(n);
            let case = self.rng.random_range(1..=4);
            let (an1, ann) = match case {
                1 => (self.nonnegative(), self.positive()),
                2 => (self.positive(), int(0)),
                3 => (self.negative(), self.positive()),
                _ => (self.positive(), self.negative()),
            };
            a.set(n - 1, 0, an1);
            a.set(n - 1, n - 1, ann);
            for i in 0..n - 1 {
                let (d, o) = match self.rng.random_range(0..10) {
                    0..=4 => (self.positive(), self.negative()),
                    5..=6 => (self.positive(), self.nonnegative()),
                    7 => (int(0), self.positive()),
                    _ => (self.negative(), self.positive()),
                };
                a.set(i, i, d);
                a.set(i, i + 1, o);
            }
            if case >= 3 && !(0..n - 1).any(|i| a.row(i).iter().all(|v| *v >= int(0))) {
                let r = self.rng.random_range(0..n - 1);
                let zero_diag = self.rng.random_bool(0.3);
                a.set(r, r, if zero_diag { int(0) } else { self.positive() });
                let o = self.positive();
                a.set(r, r + 1, o);
            }
            if matches!(bdsw_type(&a), Some(BdswType::I { .. })) {
                return a;
            }
        }
    }
}

fn check_order(kind: GenKind, n: usize, range: EntryRange) -> Result<()> {
    let ok = match kind {
        GenKind::Triangular => n >= 1,
        GenKind::TwoByTwo => n == 2,
        _ => n >= 2,
    };
    if !ok {
        return Err(Error::InfeasibleConstraints(format!("{kind} is not defined for order {n}")));
    }
    if kind != GenKind::Triangular && kind != GenKind::TwoByTwo && range.magnitude() == 0 {
        return Err(Error::InfeasibleConstraints(format!("{kind} needs nonzero entries")));
    }
    Ok(())
}

/// `count` seeded instances of `kind` with order `n`.
pub fn generate(kind: GenKind, n: usize, count: usize, seed: u64, range: EntryRange) -> Result<Vec<RationalMatrix>> {
    let mut g = MatrixGenerator::new(seed, range);
    (0..count).map(|_| g.sample(kind, n)).collect()
}
