use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use super::LpError;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }

    pub(crate) fn flipped(self) -> Sense {
        match self {
            Sense::Le => Sense::Ge,
            Sense::Eq => Sense::Eq,
            Sense::Ge => Sense::Le,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<(usize, Rational)>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Row {
    pub fn activity(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(j, a)| a * &x[*j]).sum()
    }
}

/// A linear program over exact rationals.
///
/// Variables carry optional lower and upper bounds (`None` is unbounded on that
/// side). Rows are sparse; repeated column indices in a row are summed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub direction: Direction,
    pub objective: Vec<Rational>,
    pub lower: Vec<Option<Rational>>,
    pub upper: Vec<Option<Rational>>,
    pub rows: Vec<Row>,
    pub names: Vec<String>,
}

impl LpProblem {
    pub fn new(direction: Direction) -> Self {
        LpProblem {
            direction,
            objective: Vec::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            rows: Vec::new(),
            names: Vec::new(),
        }
    }

    pub fn minimize() -> Self {
        Self::new(Direction::Minimize)
    }

    pub fn maximize() -> Self {
        Self::new(Direction::Maximize)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds a variable with objective coefficient `cost`; returns its index.
    pub fn add_var(&mut self, cost: Rational, lower: Option<Rational>, upper: Option<Rational>) -> usize {
        self.objective.push(cost);
        self.lower.push(lower);
        self.upper.push(upper);
        self.names.push(format!("x{}", self.objective.len() - 1));
        self.objective.len() - 1
    }

    /// Adds a nonnegative variable.
    pub fn add_nonneg(&mut self, cost: Rational) -> usize {
        self.add_var(cost, Some(Rational::zero()), None)
    }

    pub fn add_free(&mut self, cost: Rational) -> usize {
        self.add_var(cost, None, None)
    }

    pub fn set_name(&mut self, j: usize, name: impl Into<String>) {
        self.names[j] = name.into();
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, Rational)>, sense: Sense, rhs: Rational) -> Result<usize, LpError> {
        let n = self.num_vars();
        if let Some(&(j, _)) = coeffs.iter().find(|(j, _)| *j >= n) {
            return Err(LpError::DimensionMismatch(format!(
                "row {} references column {j} of {n}",
                self.rows.len()
            )));
        }
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(coeffs.len());
        let mut sorted = coeffs;
        sorted.sort_by_key(|(j, _)| *j);
        for (j, a) in sorted {
            match merged.last_mut() {
                Some((k, b)) if *k == j => *b += a,
                _ => merged.push((j, a)),
            }
        }
        merged.retain(|(_, a)| !a.is_zero());
        self.rows.push(Row {
            coeffs: merged,
            sense,
            rhs,
        });
        Ok(self.rows.len() - 1)
    }

    pub(crate) fn check(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n || self.names.len() != n {
            return Err(LpError::DimensionMismatch(
                "bound or name vectors differ in length from objective".into(),
            ));
        }
        for (i, r) in self.rows.iter().enumerate() {
            if r.coeffs.iter().any(|(j, _)| *j >= n) {
                return Err(LpError::DimensionMismatch(format!(
                    "row {i} references a missing column"
                )));
            }
        }
        for j in 0..n {
            if let (Some(l), Some(u)) = (&self.lower[j], &self.upper[j]) {
                if u < l {
                    return Err(LpError::InconsistentBounds(j));
                }
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// First violated row or bound, if any.
    pub fn violation(&self, x: &[Rational]) -> Option<String> {
        if x.len() != self.num_vars() {
            return Some(format!(
                "point has {} coordinates, expected {}",
                x.len(),
                self.num_vars()
            ));
        }
        for (j, xj) in x.iter().enumerate() {
            if self.lower[j].as_ref().is_some_and(|l| xj < l) {
                return Some(format!("{} below its lower bound", self.names[j]));
            }
            if self.upper[j].as_ref().is_some_and(|u| xj > u) {
                return Some(format!("{} above its upper bound", self.names[j]));
            }
        }
        for (i, r) in self.rows.iter().enumerate() {
            let a = r.activity(x);
            let ok = match r.sense {
                Sense::Le => a <= r.rhs,
                Sense::Eq => a == r.rhs,
                Sense::Ge => a >= r.rhs,
            };
            if !ok {
                return Some(format!("row {i} violated: {a} {} {}", r.sense.symbol(), r.rhs));
            }
        }
        None
    }

    /// Plain-text listing with exact rationals.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let term = |s: &mut String, a: &Rational, name: &str, first: bool| {
            if first {
                if a.is_negative() {
                    let _ = write!(s, "-{} {name}", a.abs());
                } else {
                    let _ = write!(s, "{a} {name}");
                }
            } else if a.is_negative() {
                let _ = write!(s, "- {} {name}", a.abs());
            } else {
                let _ = write!(s, "+ {a} {name}");
            }
        };
        s.push_str(match self.direction {
            Direction::Minimize => "minimize\n  obj:",
            Direction::Maximize => "maximize\n  obj:",
        });
        let mut first = true;
        for (j, c) in self.objective.iter().enumerate() {
            if !c.is_zero() {
                s.push(' ');
                term(&mut s, c, &self.names[j], first);
                first = false;
            }
        }
        if first {
            s.push_str(" 0");
        }
        s.push_str("\nsubject to\n");
        for (i, r) in self.rows.iter().enumerate() {
            let _ = write!(s, "  r{i}:");
            if r.coeffs.is_empty() {
                s.push_str(" 0");
            }
            for (k, (j, a)) in r.coeffs.iter().enumerate() {
                s.push(' ');
                term(&mut s, a, &self.names[*j], k == 0);
            }
            let _ = writeln!(s, " {} {}", r.sense.symbol(), r.rhs);
        }
        s.push_str("bounds\n");
        for j in 0..self.num_vars() {
            let name = &self.names[j];
            let _ = match (&self.lower[j], &self.upper[j]) {
                (None, None) => writeln!(s, "  {name} free"),
                (Some(l), None) => writeln!(s, "  {l} <= {name}"),
                (None, Some(u)) => writeln!(s, "  {name} <= {u}"),
                (Some(l), Some(u)) => writeln!(s, "  {l} <= {name} <= {u}"),
            };
        }
        s.push_str("end\n");
        s
    }
}
