//! Exact phase-one simplex for small rational feasibility systems.
//!
//! Pivoting follows Bland's rule (lowest entering index, lowest leaving basic
//! index on ratio ties), so the method terminates without cycling.

use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// One linear form `coeffs · x` paired with a right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRow {
    pub coeffs: Vec<Scalar>,
    pub rhs: Scalar,
}

impl LinearRow {
    pub fn new(coeffs: Vec<Scalar>, rhs: Scalar) -> Self {
        LinearRow { coeffs, rhs }
    }
}

/// `equalities: a·x = b`, `inequalities: a·x >= b`, `x >= lower_bounds`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilitySystem {
    pub num_vars: usize,
    pub equalities: Vec<LinearRow>,
    pub inequalities: Vec<LinearRow>,
    pub lower_bounds: Vec<Scalar>,
}

impl FeasibilitySystem {
    /// System over `num_vars` variables constrained to `x >= 0`.
    pub fn nonnegative(num_vars: usize) -> Self {
        FeasibilitySystem {
            num_vars,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            lower_bounds: vec![Scalar::zero(); num_vars],
        }
    }

    pub fn eq(mut self, coeffs: Vec<Scalar>, rhs: Scalar) -> Self {
        self.equalities.push(LinearRow::new(coeffs, rhs));
        self
    }

    pub fn ge(mut self, coeffs: Vec<Scalar>, rhs: Scalar) -> Self {
        self.inequalities.push(LinearRow::new(coeffs, rhs));
        self
    }

    pub fn le(self, coeffs: Vec<Scalar>, rhs: Scalar) -> Self {
        self.ge(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    fn check_dimensions(&self) {
        assert_eq!(self.lower_bounds.len(), self.num_vars, "lower bound count");
        for row in self.equalities.iter().chain(&self.inequalities) {
            assert_eq!(row.coeffs.len(), self.num_vars, "row width");
        }
    }

    pub fn is_satisfied_by(&self, x: &[Scalar]) -> bool {
        let dot = |r: &LinearRow| r.coeffs.iter().zip(x).fold(Scalar::zero(), |acc, (a, b)| acc + a * b);
        x.len() == self.num_vars
            && x.iter().zip(&self.lower_bounds).all(|(v, l)| v >= l)
            && self.equalities.iter().all(|r| dot(r) == r.rhs)
            && self.inequalities.iter().all(|r| dot(r) >= r.rhs)
    }
}

/// Returns a feasible point, or `None` when the system is infeasible.
pub fn solve_feasibility(sys: &FeasibilitySystem) -> Option<Vec<Scalar>> {
    sys.check_dimensions();
    let nv = sys.num_vars;
    let ni = sys.inequalities.len();
    let rows: Vec<(&LinearRow, bool)> = sys
        .equalities
        .iter()
        .map(|r| (r, false))
        .chain(sys.inequalities.iter().map(|r| (r, true)))
        .collect();
    let m = rows.len();
    if m == 0 {
        return Some(sys.lower_bounds.clone());
    }

    // Columns: shifted originals y = x - l, one surplus per inequality, one artificial per row.
    let n_struct = nv + ni;
    let width = n_struct + m;
    let mut tab: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    let mut rhs: Vec<Scalar> = Vec::with_capacity(m);
    let mut surplus = 0;
    for (r, (row, is_ineq)) in rows.iter().enumerate() {
        let mut line = vec![Scalar::zero(); width];
        let mut b = row.rhs.clone();
        for j in 0..nv {
            line[j] = row.coeffs[j].clone();
            b -= &row.coeffs[j] * &sys.lower_bounds[j];
        }
        if *is_ineq {
            line[nv + surplus] = -Scalar::one();
            surplus += 1;
        }
        if b.is_negative() {
            for v in line.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
        }
        line[n_struct + r] = Scalar::one();
        tab.push(line);
        rhs.push(b);
    }
    let mut basis: Vec<usize> = (n_struct..width).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<Scalar> = (0..width)
        .map(|j| {
            if j >= n_struct {
                Scalar::zero()
            } else {
                -tab.iter().fold(Scalar::zero(), |acc, line| acc + &line[j])
            }
        })
        .collect();
    let mut objective: Scalar = rhs.iter().fold(Scalar::zero(), |acc, b| acc + b);

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Scalar)> = None;
        for r in 0..m {
            if !tab[r][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[r] / &tab[r][enter];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // Phase one is bounded below by zero, so an entering column always has a leaving row.
        let (pr, _) = leave.expect("phase-one simplex cannot be unbounded");
        let inv = tab[pr][enter].recip();
        for v in tab[pr].iter_mut() {
            *v *= &inv;
        }
        rhs[pr] *= &inv;
        for r in 0..m {
            if r == pr || tab[r][enter].is_zero() {
                continue;
            }
            let f = tab[r][enter].clone();
            for j in 0..width {
                if !tab[pr][j].is_zero() {
                    let t = &f * &tab[pr][j];
                    tab[r][j] -= t;
                }
            }
            let t = &f * &rhs[pr];
            rhs[r] -= t;
        }
        let f = cost[enter].clone();
        for j in 0..width {
            if !tab[pr][j].is_zero() {
                let t = &f * &tab[pr][j];
                cost[j] -= t;
            }
        }
        objective += &f * &rhs[pr];
        basis[pr] = enter;
    }

    if objective.is_positive() {
        return None;
    }
    let mut x = sys.lower_bounds.clone();
    for (r, &b) in basis.iter().enumerate() {
        if b < nv {
            x[b] += &rhs[r];
        }
    }
    debug_assert!(sys.is_satisfied_by(&x));
    Some(x)
}
