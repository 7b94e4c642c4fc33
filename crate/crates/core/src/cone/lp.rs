//! Dense two-phase primal simplex with Bland's rule.
//!
//! Problems are stated as: maximize `c·x` subject to `A x = b` and per-variable
//! lower bounds (`None` marks a free variable). Instances here are small
//! (a few hundred columns), so the whole tableau is kept dense.

use crate::error::Error;
use crate::linalg::solve_square;
use crate::scalar::{pivot_tolerance, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem<T> {
    /// Maximized objective coefficients, one per variable.
    pub objective: Vec<T>,
    /// Equality-constraint rows.
    pub constraints: Vec<Vec<T>>,
    pub rhs: Vec<T>,
    /// Lower bound per variable; `None` means free.
    pub lower: Vec<Option<T>>,
}

impl<T: Real> LpProblem<T> {
    /// Problem in `vars` non-negative variables with a zero objective.
    pub fn new(vars: usize) -> Self {
        Self {
            objective: vec![T::zero(); vars],
            constraints: Vec::new(),
            rhs: Vec::new(),
            lower: vec![Some(T::zero()); vars],
        }
    }

    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, row: Vec<T>, rhs: T) {
        self.constraints.push(row);
        self.rhs.push(rhs);
    }

    /// Largest absolute residual of `A x = b`.
    pub fn equality_residual(&self, x: &[T]) -> T {
        self.constraints
            .iter()
            .zip(&self.rhs)
            .map(|(row, &b)| {
                let ax: T = row.iter().zip(x).map(|(&a, &xi)| a * xi).sum();
                (ax - b).abs()
            })
            .fold(T::zero(), T::max)
    }

    fn validate(&self) -> Result<(), Error<T>> {
        let n = self.vars();
        if self.lower.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.lower.len(),
            });
        }
        if self.rhs.len() != self.constraints.len() {
            return Err(Error::DimensionMismatch {
                expected: self.constraints.len(),
                found: self.rhs.len(),
            });
        }
        if let Some(row) = self.constraints.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        let finite = self.objective.iter().all(|x| x.is_finite())
            && self.rhs.iter().all(|x| x.is_finite())
            && self.constraints.iter().flatten().all(|x| x.is_finite())
            && self.lower.iter().flatten().all(|x| x.is_finite());
        if !finite {
            return Err(Error::NonFinite);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    /// Variable values: the optimum, or the last feasible vertex when unbounded.
    /// Empty when infeasible.
    pub values: Vec<T>,
    pub objective: T,
}

enum Column<T> {
    Shifted { var: usize, lower: T },
    Positive { var: usize },
    Negative { var: usize },
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    /// Reduced costs; the last slot holds the negated objective value.
    cost: Vec<T>,
    basis: Vec<usize>,
    width: usize,
}

enum Pass {
    Optimal,
    Unbounded,
}

impl<T: Real> Tableau<T> {
    fn rhs(&self, i: usize) -> T {
        self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != T::zero() {
                for (x, &q) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * q;
                }
                row[c] = T::zero();
            }
        }
        let f = self.cost[c];
        if f != T::zero() {
            for (x, &q) in self.cost.iter_mut().zip(&pivot_row) {
                *x -= f * q;
            }
            self.cost[c] = T::zero();
        }
        self.basis[r] = c;
    }

    /// Bland's rule: lowest-index improving column enters; among tied ratios
    /// the row whose basic variable has the lowest index leaves.
    fn run(&mut self, allowed: usize, budget: &mut usize) -> Result<Pass, Error<T>> {
        let tol = pivot_tolerance::<T>();
        loop {
            let Some(c) = (0..allowed).find(|&j| self.cost[j] > tol) else {
                return Ok(Pass::Optimal);
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][c];
                if a > tol {
                    let ratio = self.rhs(i).max(T::zero()) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((r, best)) => {
                            let slack = tol * best.abs().max(T::one());
                            if ratio < best - slack
                                || (ratio <= best + slack && self.basis[i] < self.basis[r])
                            {
                                Some((i, ratio.min(best)))
                            } else {
                                Some((r, best))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Ok(Pass::Unbounded);
            };
            if *budget == 0 {
                return Err(Error::PivotLimit);
            }
            *budget -= 1;
            self.pivot(r, c);
        }
    }
}

/// Solves the problem by a two-phase dense simplex with Bland's rule.
pub fn solve_lp<T: Real>(problem: &LpProblem<T>) -> Result<LpSolution<T>, Error<T>> {
    problem.validate()?;
    let tol = pivot_tolerance::<T>();

    // Standard form: every column non-negative.
    let mut columns = Vec::new();
    for (var, lower) in problem.lower.iter().enumerate() {
        match lower {
            Some(l) => columns.push(Column::Shifted { var, lower: *l }),
            None => {
                columns.push(Column::Positive { var });
                columns.push(Column::Negative { var });
            }
        }
    }
    let ncols = columns.len();
    let mut a_std: Vec<Vec<T>> = Vec::with_capacity(problem.constraints.len());
    let mut b_std: Vec<T> = Vec::with_capacity(problem.constraints.len());
    let mut obj_std = vec![T::zero(); ncols];
    for (row, &b) in problem.constraints.iter().zip(&problem.rhs) {
        let mut shifted_b = b;
        let mut out = Vec::with_capacity(ncols);
        for col in &columns {
            match *col {
                Column::Shifted { var, lower } => {
                    shifted_b -= row[var] * lower;
                    out.push(row[var]);
                }
                Column::Positive { var } => out.push(row[var]),
                Column::Negative { var } => out.push(-row[var]),
            }
        }
        let scale = out.iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
        if scale <= T::min_positive_value() {
            if shifted_b.abs() > tol * shifted_b.abs().max(T::one()) {
                return Ok(LpSolution {
                    status: LpStatus::Infeasible,
                    values: Vec::new(),
                    objective: T::nan(),
                });
            }
            continue;
        }
        let sign = if shifted_b < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        let f = sign / scale;
        a_std.push(out.into_iter().map(|x| x * f).collect());
        b_std.push(shifted_b * f);
    }
    for (k, col) in columns.iter().enumerate() {
        match *col {
            Column::Shifted { var, .. } => obj_std[k] = problem.objective[var],
            Column::Positive { var } => obj_std[k] = problem.objective[var],
            Column::Negative { var } => obj_std[k] = -problem.objective[var],
        }
    }

    let nrows = a_std.len();
    let width = ncols + nrows;
    let mut tab = Tableau {
        rows: (0..nrows)
            .map(|i| {
                let mut row = a_std[i].clone();
                row.extend((0..nrows).map(|k| if k == i { T::one() } else { T::zero() }));
                row.push(b_std[i]);
                row
            })
            .collect(),
        cost: vec![T::zero(); width + 1],
        basis: (ncols..width).collect(),
        width,
    };
    // phase 1: maximize −Σ artificials
    for row in &tab.rows {
        for j in 0..ncols {
            tab.cost[j] += row[j];
        }
        tab.cost[width] += row[width];
    }
    let mut budget = 100 * (width + 10);
    tab.run(width, &mut budget)?;
    let infeasibility = tab.cost[width];
    let b_scale = b_std.iter().fold(T::one(), |acc, x| acc.max(x.abs()));
    if infeasibility > tol * b_scale * T::from_usize(nrows.max(1)).unwrap() {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            values: Vec::new(),
            objective: T::nan(),
        });
    }
    // drive remaining artificials out of the basis; drop redundant rows
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= ncols {
            let best = (0..ncols)
                .map(|j| (j, tab.rows[r][j].abs()))
                .fold((0, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best.1 > tol {
                tab.pivot(r, best.0);
            } else {
                tab.rows.remove(r);
                tab.basis.remove(r);
                a_std.remove(r);
                b_std.remove(r);
                continue;
            }
        }
        r += 1;
    }

    // phase 2
    tab.cost = vec![T::zero(); width + 1];
    tab.cost[..ncols].copy_from_slice(&obj_std);
    for i in 0..tab.rows.len() {
        let cb = obj_std[tab.basis[i]];
        if cb != T::zero() {
            for j in 0..=width {
                let v = tab.rows[i][j];
                tab.cost[j] -= cb * v;
            }
        }
    }
    let pass = tab.run(ncols, &mut budget)?;

    // basic values: re-solve B y_B = b from the scaled original rows
    let mut y = vec![T::zero(); ncols];
    let basis_matrix: Vec<Vec<T>> = a_std
        .iter()
        .map(|row| tab.basis.iter().map(|&j| row[j]).collect())
        .collect();
    match solve_square(basis_matrix, b_std.clone()) {
        Some(xb) => {
            for (&j, v) in tab.basis.iter().zip(xb) {
                y[j] = v.max(T::zero());
            }
        }
        None => {
            for (i, &j) in tab.basis.iter().enumerate() {
                y[j] = tab.rhs(i).max(T::zero());
            }
        }
    }
    let mut values = vec![T::zero(); problem.vars()];
    for (k, col) in columns.iter().enumerate() {
        match *col {
            Column::Shifted { var, lower } => values[var] = lower + y[k],
            Column::Positive { var } => values[var] += y[k],
            Column::Negative { var } => values[var] -= y[k],
        }
    }
    let objective = problem
        .objective
        .iter()
        .zip(&values)
        .map(|(&c, &x)| c * x)
        .sum();
    Ok(LpSolution {
        status: match pass {
            Pass::Optimal => LpStatus::Optimal,
            Pass::Unbounded => LpStatus::Unbounded,
        },
        values,
        objective,
    })
}
