//! Two-phase primal simplex on a dense rational tableau with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::problem::{Direction, LpProblem, Sense};
use super::{FarkasCertificate, LpError, LpSolution, LpStatus};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ColKind {
    Structural,
    Slack,
    Artificial,
}

type StandardRow = (Vec<(usize, Rational)>, Sense, Rational);

/// Standard form `min c x', A x' (sense) b, x' >= 0` built from a general problem.
struct Standard {
    /// Internal structural column -> (original variable, sign).
    cols: Vec<(usize, i8)>,
    offset: Vec<Rational>,
    rows: Vec<StandardRow>,
    /// Number of leading rows that come from the original problem.
    original_rows: usize,
    cost: Vec<Rational>,
}

fn standardize(p: &LpProblem) -> Standard {
    let n = p.num_vars();
    let mut cols = Vec::new();
    let mut offset = vec![Rational::zero(); n];
    let mut colmap: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
    let mut ub_rows = Vec::new();
    for j in 0..n {
        match (&p.lower[j], &p.upper[j]) {
            (Some(l), u) => {
                offset[j] = l.clone();
                colmap[j].push((cols.len(), 1));
                if let Some(u) = u {
                    ub_rows.push((vec![(cols.len(), Rational::one())], Sense::Le, u - l));
                }
                cols.push((j, 1));
            }
            (None, Some(u)) => {
                offset[j] = u.clone();
                colmap[j].push((cols.len(), -1));
                cols.push((j, -1));
            }
            (None, None) => {
                colmap[j].push((cols.len(), 1));
                cols.push((j, 1));
                colmap[j].push((cols.len(), -1));
                cols.push((j, -1));
            }
        }
    }
    let flip = match p.direction {
        Direction::Minimize => Rational::one(),
        Direction::Maximize => -Rational::one(),
    };
    let cost = cols
        .iter()
        .map(|&(j, s)| &p.objective[j] * &flip * Rational::from_integer(s.into()))
        .collect();
    let mut rows = Vec::with_capacity(p.rows.len() + ub_rows.len());
    for r in &p.rows {
        let mut coeffs = Vec::new();
        let mut rhs = r.rhs.clone();
        for (j, a) in &r.coeffs {
            rhs -= a * &offset[*j];
            for &(k, s) in &colmap[*j] {
                coeffs.push((k, if s > 0 { a.clone() } else { -a.clone() }));
            }
        }
        rows.push((coeffs, r.sense, rhs));
    }
    let original_rows = rows.len();
    rows.extend(ub_rows);
    Standard {
        cols,
        offset,
        rows,
        original_rows,
        cost,
    }
}

struct Tableau {
    /// `m` constraint rows followed by the objective row; last column is the rhs.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
    /// Column holding the identity entry of each row (slack or artificial).
    ident: Vec<usize>,
    negated: Vec<bool>,
    width: usize,
}

impl Tableau {
    fn m(&self) -> usize {
        self.basis.len()
    }

    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.t[r][c];
        let nz: Vec<usize> = (0..=self.width).filter(|&j| !self.t[r][j].is_zero()).collect();
        for &j in &nz {
            self.t[r][j] *= &inv;
        }
        let pivot_row = std::mem::take(&mut self.t[r]);
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                row[j] -= delta;
            }
        }
        self.t[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs Bland's rule to optimality; `false` means unbounded.
    fn optimize(&mut self) -> bool {
        let obj = self.m();
        loop {
            let entering =
                (0..self.width).find(|&j| self.kinds[j] != ColKind::Artificial && self.t[obj][j].is_negative());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.m() {
                let a = &self.t[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    /// Installs `cost` as the objective row, priced out against the basis.
    fn set_objective(&mut self, cost: &[Rational]) {
        let obj = self.m();
        let mut row: Vec<Rational> = cost.to_vec();
        row.push(Rational::zero());
        for i in 0..self.m() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (r, tij) in row.iter_mut().zip(&self.t[i]).take(self.width + 1) {
                if !tij.is_zero() {
                    *r -= cb * tij;
                }
            }
        }
        self.t[obj] = row;
    }

    /// Row duals `y_i = c_k - d_k` read at each row's identity column.
    fn duals(&self, cost: &[Rational]) -> Vec<Rational> {
        let obj = self.m();
        (0..self.m())
            .map(|i| {
                let k = self.ident[i];
                let y = &cost[k] - &self.t[obj][k];
                if self.negated[i] {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }
}

pub(crate) fn solve(p: &LpProblem) -> Result<LpSolution, LpError> {
    p.check()?;
    let sf = standardize(p);
    let ns = sf.cols.len();
    let m = sf.rows.len();
    let mut kinds = vec![ColKind::Structural; ns];
    let mut negated = vec![false; m];
    let mut senses = Vec::with_capacity(m);
    for (i, (_, sense, rhs)) in sf.rows.iter().enumerate() {
        let mut s = *sense;
        if rhs.is_negative() {
            negated[i] = true;
            s = s.flipped();
        }
        senses.push(s);
        match s {
            Sense::Le => kinds.push(ColKind::Slack),
            Sense::Ge => {
                kinds.push(ColKind::Slack);
                kinds.push(ColKind::Artificial);
            }
            Sense::Eq => kinds.push(ColKind::Artificial),
        }
    }
    let width = kinds.len();
    let mut t = Vec::with_capacity(m + 1);
    let mut basis = Vec::with_capacity(m);
    let mut ident = Vec::with_capacity(m);
    let mut next = ns;
    for (i, (coeffs, _, rhs)) in sf.rows.iter().enumerate() {
        let sign = if negated[i] { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); width + 1];
        for (k, a) in coeffs {
            row[*k] += a * &sign;
        }
        row[width] = rhs * &sign;
        match senses[i] {
            Sense::Le => {
                row[next] = Rational::one();
                basis.push(next);
                ident.push(next);
                next += 1;
            }
            Sense::Ge => {
                row[next] = -Rational::one();
                row[next + 1] = Rational::one();
                basis.push(next + 1);
                ident.push(next + 1);
                next += 2;
            }
            Sense::Eq => {
                row[next] = Rational::one();
                basis.push(next);
                ident.push(next);
                next += 1;
            }
        }
        t.push(row);
    }
    t.push(Vec::new());
    let mut tab = Tableau {
        t,
        basis,
        kinds,
        ident,
        negated,
        width,
    };

    let phase1_cost: Vec<Rational> = tab
        .kinds
        .iter()
        .map(|k| {
            if *k == ColKind::Artificial {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    tab.set_objective(&phase1_cost);
    tab.optimize();
    let infeasibility = -tab.t[m][width].clone();
    if infeasibility.is_positive() {
        let y1 = tab.duals(&phase1_cost);
        let y: Vec<Rational> = y1[..sf.original_rows].iter().map(|v| -v).collect();
        let farkas = FarkasCertificate::from_row_multipliers(p, y);
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            primal: Vec::new(),
            duals: Vec::new(),
            objective: None,
            farkas: Some(farkas),
        });
    }

    // drive zero-level artificials out of the basis where possible
    for i in 0..m {
        if tab.kinds[tab.basis[i]] != ColKind::Artificial {
            continue;
        }
        if let Some(c) = (0..width).find(|&j| tab.kinds[j] != ColKind::Artificial && !tab.t[i][j].is_zero()) {
            tab.pivot(i, c);
        }
    }

    let mut phase2_cost = sf.cost.clone();
    phase2_cost.resize(width, Rational::zero());
    tab.set_objective(&phase2_cost);
    if !tab.optimize() {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            primal: Vec::new(),
            duals: Vec::new(),
            objective: None,
            farkas: None,
        });
    }

    let mut xs = vec![Rational::zero(); width];
    for i in 0..m {
        xs[tab.basis[i]] = tab.rhs(i).clone();
    }
    let mut primal = sf.offset.clone();
    for (k, &(j, s)) in sf.cols.iter().enumerate() {
        if s > 0 {
            primal[j] += &xs[k];
        } else {
            primal[j] -= &xs[k];
        }
    }
    let mut duals = tab.duals(&phase2_cost);
    duals.truncate(sf.original_rows);
    if p.direction == Direction::Maximize {
        for y in &mut duals {
            *y = -y.clone();
        }
    }
    let objective = p.objective_value(&primal);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        primal,
        duals,
        objective: Some(objective),
        farkas: None,
    })
}
