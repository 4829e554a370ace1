use std::collections::{BTreeMap, VecDeque};

use num_traits::{Signed, Zero};

use super::FillError;
use crate::cayley::{CayleyBall, EdgeId, VertexId};
use crate::foxcalc::{cell_boundary, EdgeCochain, FillCertificate, GroupRingVec};
use crate::Rational;

/// The 2-cells of a ball and their edge boundaries.
///
/// A context may be restricted to the sub-ball of a smaller radius, which
/// keeps only cells and edges whose vertices all lie in it.
#[derive(Clone, Debug)]
pub struct FillContext<'a> {
    ball: &'a CayleyBall,
    radius: usize,
    vertex_limit: usize,
    cells: Vec<(VertexId, usize)>,
    boundaries: Vec<Vec<(EdgeId, Rational)>>,
    edge_cells: Vec<Vec<usize>>,
}

/// A fill problem after collapsing cells forced to zero.
///
/// A cell is forced to zero when it is the only live cell on an edge where the
/// target vanishes. Removal order is kept so cochains can be extended back.
#[derive(Clone, Debug)]
pub(crate) struct Collapsed {
    pub alive: Vec<usize>,
    pub removed: Vec<(usize, EdgeId)>,
    /// Edges carrying a live cell or a nonzero target value, sorted.
    pub rows: Vec<EdgeId>,
    pub target: BTreeMap<EdgeId, Rational>,
}

impl Collapsed {
    /// Sparse rows of the boundary matrix over live cells, with right-hand sides.
    pub fn system(&self, ctx: &FillContext) -> (Vec<Vec<(usize, Rational)>>, Vec<Rational>) {
        let row_of: BTreeMap<EdgeId, usize> = self.rows.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut rows = vec![Vec::new(); self.rows.len()];
        for (k, &c) in self.alive.iter().enumerate() {
            for (e, a) in &ctx.boundaries[c] {
                rows[row_of[e]].push((k, a.clone()));
            }
        }
        let b = self
            .rows
            .iter()
            .map(|e| self.target.get(e).cloned().unwrap_or_else(Rational::zero))
            .collect();
        (rows, b)
    }
}

impl<'a> FillContext<'a> {
    pub fn new(ball: &'a CayleyBall) -> Self {
        Self::with_radius(ball, ball.radius())
    }

    /// Context of the sub-ball of radius `min(radius, ball radius)`.
    pub fn with_radius(ball: &'a CayleyBall, radius: usize) -> Self {
        let radius = radius.min(ball.radius());
        let vertex_limit = ball.prefix_len(radius);
        let mut cells = Vec::new();
        let mut boundaries = Vec::new();
        let mut edge_cells = vec![Vec::new(); ball.edges().len()];
        for g in 0..vertex_limit {
            for j in 0..ball.relators().len() {
                let Ok(chain) = cell_boundary(g, j, ball) else {
                    continue;
                };
                let Ok(by_edge) = chain.edge_coefficients(ball) else {
                    continue;
                };
                let inside = by_edge.keys().all(|&e| {
                    let edge = ball.edge(e);
                    edge.src < vertex_limit && edge.dst < vertex_limit
                });
                if !inside {
                    continue;
                }
                let id = cells.len();
                for &e in by_edge.keys() {
                    edge_cells[e].push(id);
                }
                cells.push((g, j));
                boundaries.push(by_edge.into_iter().collect());
            }
        }
        FillContext {
            ball,
            radius,
            vertex_limit,
            cells,
            boundaries,
            edge_cells,
        }
    }

    pub fn ball(&self) -> &'a CayleyBall {
        self.ball
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[(VertexId, usize)] {
        &self.cells
    }

    pub fn cell_edges(&self, c: usize) -> &[(EdgeId, Rational)] {
        &self.boundaries[c]
    }

    /// Whether the edge lies in this (sub-)ball.
    pub fn contains_edge(&self, e: EdgeId) -> bool {
        let edge = self.ball.edge(e);
        edge.src < self.vertex_limit && edge.dst < self.vertex_limit
    }

    /// `a(d c)` for cell `c`.
    pub fn pair_cell(&self, a: &EdgeCochain, c: usize) -> Rational {
        self.boundaries[c].iter().map(|(e, x)| x * a.get(*e)).sum()
    }

    pub fn certificate(&self, coeffs: impl IntoIterator<Item = (usize, Rational)>) -> FillCertificate {
        FillCertificate::new(coeffs.into_iter().map(|(c, t)| {
            let (g, j) = self.cells[c];
            (t, g, j)
        }))
    }

    /// Edge-indexed target; `None` if it leaves this (sub-)ball.
    pub(crate) fn target(&self, z: &GroupRingVec) -> Result<Option<BTreeMap<EdgeId, Rational>>, FillError> {
        let by_edge = z.edge_coefficients(self.ball)?;
        Ok(by_edge.keys().all(|&e| self.contains_edge(e)).then_some(by_edge))
    }

    pub(crate) fn collapse(&self, target: BTreeMap<EdgeId, Rational>) -> Collapsed {
        let n = self.cells.len();
        let mut alive = vec![true; n];
        let mut count: Vec<usize> = self.edge_cells.iter().map(Vec::len).collect();
        let free = |e: EdgeId, count: &[usize]| count[e] == 1 && !target.contains_key(&e);
        let mut queue: VecDeque<EdgeId> = (0..count.len()).filter(|&e| free(e, &count)).collect();
        let mut removed = Vec::new();
        while let Some(e) = queue.pop_front() {
            if !free(e, &count) {
                continue;
            }
            let c = *self.edge_cells[e].iter().find(|&&c| alive[c]).expect("one live cell");
            alive[c] = false;
            removed.push((c, e));
            for (e2, _) in &self.boundaries[c] {
                count[*e2] -= 1;
                if free(*e2, &count) {
                    queue.push_back(*e2);
                }
            }
        }
        let rows = (0..count.len())
            .filter(|&e| count[e] > 0 || target.contains_key(&e))
            .collect();
        Collapsed {
            alive: (0..n).filter(|&c| alive[c]).collect(),
            removed,
            rows,
            target,
        }
    }

    /// Extends a cochain defined on the collapsed rows so that every removed
    /// cell pairs to zero with it. Values on live-cell edges are unchanged.
    pub(crate) fn extend(&self, collapsed: &Collapsed, a: &mut EdgeCochain) {
        for &(c, free) in collapsed.removed.iter().rev() {
            let mut rest = Rational::zero();
            let mut coeff = Rational::zero();
            for (e, x) in &self.boundaries[c] {
                if *e == free {
                    coeff = x.clone();
                } else {
                    rest += x * a.get(*e);
                }
            }
            a.set(free, -rest / coeff);
        }
    }

    /// Largest `|a(d c)|` over all cells of the context.
    pub fn max_cell_pairing(&self, a: &EdgeCochain) -> Rational {
        (0..self.cells.len())
            .map(|c| self.pair_cell(a, c).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}
