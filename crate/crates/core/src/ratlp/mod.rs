//! Exact rational linear programming.
//!
//! Every answer comes with something checkable: an optimal solution carries
//! row duals whose objective equals the primal objective, and an infeasible
//! problem carries a Farkas certificate. [`LpSolution::verify`] re-checks both
//! in exact arithmetic.
//!
//! Dual sign conventions, for a minimization: `y_i >= 0` on `>=` rows,
//! `y_i <= 0` on `<=` rows, free on `=` rows, with reduced costs
//! `d = c - y A`. A maximization flips every sign.

mod problem;
mod simplex;

use num_traits::{Signed, Zero};
use thiserror::Error;

pub use problem::{Direction, LpProblem, Row, Sense};

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("variable {0} has upper bound below its lower bound")]
    InconsistentBounds(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Proof that no point satisfies the rows and bounds.
///
/// With row multipliers `y` signed so that `y_i (A_i x - b_i) <= 0` for every
/// feasible `x` (`y_i >= 0` on `<=` rows, `<= 0` on `>=` rows, free on `=`
/// rows) and bound multipliers `mu` (positive uses the upper bound, negative
/// the lower), the certificate requires `y A + mu = 0` and
/// `y b + sum mu_j bound_j < 0`, which no feasible point can meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub row_multipliers: Vec<Rational>,
    pub bound_multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    /// Completes row multipliers with the bound multipliers `mu = -y A`.
    pub fn from_row_multipliers(p: &LpProblem, y: Vec<Rational>) -> Self {
        let mut mu = vec![Rational::zero(); p.num_vars()];
        for (yi, row) in y.iter().zip(&p.rows) {
            if yi.is_zero() {
                continue;
            }
            for (j, a) in &row.coeffs {
                mu[*j] -= yi * a;
            }
        }
        FarkasCertificate {
            row_multipliers: y,
            bound_multipliers: mu,
        }
    }

    /// The certified contradiction `0 <= value` with `value < 0`, or a reason
    /// the certificate fails.
    pub fn verify(&self, p: &LpProblem) -> Result<Rational, String> {
        if self.row_multipliers.len() != p.num_rows() || self.bound_multipliers.len() != p.num_vars() {
            return Err("certificate has the wrong dimensions".into());
        }
        let mut combo = self.bound_multipliers.clone();
        let mut value = Rational::zero();
        for (i, (y, row)) in self.row_multipliers.iter().zip(&p.rows).enumerate() {
            let ok = match row.sense {
                Sense::Le => !y.is_negative(),
                Sense::Ge => !y.is_positive(),
                Sense::Eq => true,
            };
            if !ok {
                return Err(format!("row {i} multiplier has the wrong sign"));
            }
            for (j, a) in &row.coeffs {
                combo[*j] += y * a;
            }
            value += y * &row.rhs;
        }
        if let Some(j) = combo.iter().position(|c| !c.is_zero()) {
            return Err(format!("combination leaves column {j} nonzero"));
        }
        for (j, mu) in self.bound_multipliers.iter().enumerate() {
            if mu.is_positive() {
                let u = p.upper[j]
                    .as_ref()
                    .ok_or_else(|| format!("column {j} uses a missing upper bound"))?;
                value += mu * u;
            } else if mu.is_negative() {
                let l = p.lower[j]
                    .as_ref()
                    .ok_or_else(|| format!("column {j} uses a missing lower bound"))?;
                value += mu * l;
            }
        }
        if value.is_negative() {
            Ok(value)
        } else {
            Err(format!("combined right-hand side {value} is not negative"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal point; empty unless `Optimal`.
    pub primal: Vec<Rational>,
    /// Row duals; empty unless `Optimal`.
    pub duals: Vec<Rational>,
    pub objective: Option<Rational>,
    pub farkas: Option<FarkasCertificate>,
}

impl LpSolution {
    /// Objective of the dual solution, or a reason it is not dual feasible.
    pub fn dual_objective(&self, p: &LpProblem) -> Result<Rational, String> {
        if self.duals.len() != p.num_rows() {
            return Err("dual vector has the wrong length".into());
        }
        let s = match p.direction {
            Direction::Minimize => Rational::from_integer(1.into()),
            Direction::Maximize => Rational::from_integer((-1).into()),
        };
        let mut d = p.objective.clone();
        let mut value = Rational::zero();
        for (i, (y, row)) in self.duals.iter().zip(&p.rows).enumerate() {
            let sy = &s * y;
            let ok = match row.sense {
                Sense::Le => !sy.is_positive(),
                Sense::Ge => !sy.is_negative(),
                Sense::Eq => true,
            };
            if !ok {
                return Err(format!("dual of row {i} has the wrong sign"));
            }
            for (j, a) in &row.coeffs {
                d[*j] -= y * a;
            }
            value += y * &row.rhs;
        }
        for (j, dj) in d.iter().enumerate() {
            let sd = &s * dj;
            if sd.is_positive() {
                let l = p.lower[j]
                    .as_ref()
                    .ok_or_else(|| format!("reduced cost of column {j} needs a lower bound"))?;
                value += dj * l;
            } else if sd.is_negative() {
                let u = p.upper[j]
                    .as_ref()
                    .ok_or_else(|| format!("reduced cost of column {j} needs an upper bound"))?;
                value += dj * u;
            }
        }
        Ok(value)
    }

    /// Exact re-check: primal feasibility plus strong duality for `Optimal`,
    /// the Farkas certificate for `Infeasible`.
    pub fn verify(&self, p: &LpProblem) -> Result<(), String> {
        match self.status {
            LpStatus::Optimal => {
                if let Some(v) = p.violation(&self.primal) {
                    return Err(v);
                }
                let primal = p.objective_value(&self.primal);
                if self.objective.as_ref() != Some(&primal) {
                    return Err("stored objective differs from the primal point".into());
                }
                let dual = self.dual_objective(p)?;
                if dual != primal {
                    return Err(format!("duality gap: primal {primal}, dual {dual}"));
                }
                Ok(())
            }
            LpStatus::Infeasible => self
                .farkas
                .as_ref()
                .ok_or_else(|| "infeasible without a certificate".to_string())?
                .verify(p)
                .map(|_| ()),
            LpStatus::Unbounded => Ok(()),
        }
    }
}

/// Solves `p` exactly.
pub fn solve_lp(p: &LpProblem) -> Result<LpSolution, LpError> {
    simplex::solve(p)
}

pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(FarkasCertificate),
}

/// Feasibility of the rows and bounds of `p`, ignoring its objective.
pub fn feasibility(p: &LpProblem) -> Result<Feasibility, LpError> {
    let mut q = p.clone();
    q.objective.iter_mut().for_each(|c| *c = Rational::zero());
    let sol = solve_lp(&q)?;
    Ok(match sol.status {
        LpStatus::Optimal => Feasibility::Feasible(sol.primal),
        _ => Feasibility::Infeasible(sol.farkas.expect("zero objective is never unbounded")),
    })
}

/// Result of `min |x|_1` subject to `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum L1Outcome {
    Optimal {
        value: Rational,
        x: Vec<Rational>,
        /// Row duals `y` with `|y A_j| <= 1` and `y b = value`.
        duals: Vec<Rational>,
    },
    /// Certificate for the split problem in `(x+, x-)`.
    Infeasible {
        problem: LpProblem,
        farkas: FarkasCertificate,
    },
}

/// The split LP `min sum (x+ + x-)` with `A (x+ - x-) = b`, `x+, x- >= 0`.
pub fn l1_problem(rows: &[Vec<(usize, Rational)>], ncols: usize, b: &[Rational]) -> Result<LpProblem, LpError> {
    if rows.len() != b.len() {
        return Err(LpError::DimensionMismatch(format!(
            "{} rows but {} right-hand sides",
            rows.len(),
            b.len()
        )));
    }
    let mut p = LpProblem::minimize();
    for j in 0..ncols {
        let plus = p.add_nonneg(Rational::from_integer(1.into()));
        p.set_name(plus, format!("xp{j}"));
        let minus = p.add_nonneg(Rational::from_integer(1.into()));
        p.set_name(minus, format!("xm{j}"));
    }
    for (row, rhs) in rows.iter().zip(b) {
        let mut coeffs = Vec::with_capacity(2 * row.len());
        for (j, a) in row {
            if *j >= ncols {
                return Err(LpError::DimensionMismatch(format!("column {j} of {ncols}")));
            }
            coeffs.push((2 * j, a.clone()));
            coeffs.push((2 * j + 1, -a.clone()));
        }
        p.add_row(coeffs, Sense::Eq, rhs.clone())?;
    }
    Ok(p)
}

/// `min |x|_1` subject to `A x = b`, with `A` given as sparse rows.
pub fn min_l1(rows: &[Vec<(usize, Rational)>], ncols: usize, b: &[Rational]) -> Result<L1Outcome, LpError> {
    let p = l1_problem(rows, ncols, b)?;
    let sol = solve_lp(&p)?;
    match sol.status {
        LpStatus::Optimal => {
            let x = (0..ncols)
                .map(|j| &sol.primal[2 * j] - &sol.primal[2 * j + 1])
                .collect();
            Ok(L1Outcome::Optimal {
                value: sol.objective.expect("optimal has an objective"),
                x,
                duals: sol.duals,
            })
        }
        LpStatus::Infeasible => Ok(L1Outcome::Infeasible {
            farkas: sol.farkas.expect("infeasible has a certificate"),
            problem: p,
        }),
        LpStatus::Unbounded => unreachable!("an l1 objective is bounded below by zero"),
    }
}
