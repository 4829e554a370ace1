//! Bounded primitives on an arbitrary finite cell complex.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::{parse_bound_value, BoundFunction, PrimitiveError};
use crate::cayley::CayleyBall;
use crate::foxcalc::ball_cells;
use crate::ratlp::{solve_lp, FarkasCertificate, LpProblem, LpStatus, Sense};
use crate::Rational;

/// A finite complex given by cell counts and sparse integer boundary matrices.
///
/// `boundaries[q]` holds `(row, col, value)` entries of `d_q: C_q -> C_{q-1}`,
/// rows indexing `(q-1)`-cells and columns `q`-cells. Missing degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    dims: Vec<usize>,
    boundaries: BTreeMap<usize, Vec<(usize, usize, i64)>>,
}

impl FiniteComplex {
    pub fn new(
        dims: Vec<usize>,
        boundaries: BTreeMap<usize, Vec<(usize, usize, i64)>>,
    ) -> Result<Self, PrimitiveError> {
        for (&q, entries) in &boundaries {
            if q == 0 || q >= dims.len() {
                return Err(PrimitiveError::DimensionMismatch(format!(
                    "boundary in degree {q} of {}",
                    dims.len()
                )));
            }
            for &(r, c, _) in entries {
                if r >= dims[q - 1] || c >= dims[q] {
                    return Err(PrimitiveError::DimensionMismatch(format!(
                        "entry ({r}, {c}) of d{q} outside {}x{}",
                        dims[q - 1],
                        dims[q]
                    )));
                }
            }
        }
        let x = FiniteComplex { dims, boundaries };
        for q in 2..x.dims.len() {
            if !x.composite_is_zero(q) {
                return Err(PrimitiveError::BoundaryNotZero { q });
            }
        }
        Ok(x)
    }

    /// `{"dims": [n0, n1, ...], "boundaries": {"1": [[row, col, val], ...], ...}}`.
    pub fn from_json(v: &Value) -> Result<Self, PrimitiveError> {
        let bad = |m: &str| PrimitiveError::Json(m.to_string());
        let dims = v
            .get("dims")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `dims`"))?
            .iter()
            .map(|d| {
                d.as_u64()
                    .map(|d| d as usize)
                    .ok_or_else(|| bad("dims must be integers"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut boundaries = BTreeMap::new();
        if let Some(map) = v.get("boundaries") {
            let map = map.as_object().ok_or_else(|| bad("`boundaries` must be an object"))?;
            for (k, entries) in map {
                let q: usize = k.parse().map_err(|_| bad("boundary keys are degrees"))?;
                let entries = entries.as_array().ok_or_else(|| bad("boundary must be a list"))?;
                let mut list = Vec::with_capacity(entries.len());
                for e in entries {
                    let t = e
                        .as_array()
                        .filter(|t| t.len() == 3)
                        .ok_or_else(|| bad("entries are [row, col, val]"))?;
                    let r = t[0].as_u64().ok_or_else(|| bad("row must be an integer"))? as usize;
                    let c = t[1].as_u64().ok_or_else(|| bad("col must be an integer"))? as usize;
                    let val = t[2].as_i64().ok_or_else(|| bad("value must be an integer"))?;
                    list.push((r, c, val));
                }
                boundaries.insert(q, list);
            }
        }
        Self::new(dims, boundaries)
    }

    pub fn to_json(&self) -> Value {
        let b: serde_json::Map<String, Value> = self
            .boundaries
            .iter()
            .map(|(q, es)| {
                (
                    q.to_string(),
                    es.iter().map(|&(r, c, v)| serde_json::json!([r, c, v])).collect(),
                )
            })
            .collect();
        serde_json::json!({ "dims": self.dims, "boundaries": b })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_cells(&self, q: usize) -> usize {
        self.dims.get(q).copied().unwrap_or(0)
    }

    /// Columns of `d_q`: the boundary of each `q`-cell as `(row, value)` pairs.
    pub fn boundary_columns(&self, q: usize) -> Vec<Vec<(usize, i64)>> {
        let mut cols = vec![Vec::new(); self.num_cells(q)];
        for &(r, c, v) in self.boundaries.get(&q).map(Vec::as_slice).unwrap_or(&[]) {
            if v != 0 {
                cols[c].push((r, v));
            }
        }
        for col in &mut cols {
            col.sort_unstable();
            col.dedup_by(|b, a| {
                if a.0 == b.0 {
                    a.1 += b.1;
                    true
                } else {
                    false
                }
            });
            col.retain(|&(_, v)| v != 0);
        }
        cols
    }

    fn composite_is_zero(&self, q: usize) -> bool {
        let lower = self.boundary_columns(q - 1);
        self.boundary_columns(q).iter().all(|col| {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(mid, a) in col {
                for &(low, b) in &lower[mid] {
                    *acc.entry(low).or_default() += a * b;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }

    /// `(dt)(sigma) = t(d sigma)` for a `(q-1)`-cochain `t`.
    pub fn coboundary(&self, q: usize, t: &[Rational]) -> Vec<Rational> {
        self.boundary_columns(q)
            .iter()
            .map(|col| col.iter().map(|&(r, v)| &t[r] * Rational::from_integer(v.into())).sum())
            .collect()
    }

    /// The boundary of the octahedron: a 2-sphere with 6 vertices, 12 edges
    /// and 8 triangles.
    pub fn octahedron() -> Self {
        // vertex 2k and 2k+1 are antipodal
        let mut edges = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                if j != i + 1 || i % 2 == 1 {
                    edges.push((i, j));
                }
            }
        }
        let edge_index = |i: usize, j: usize| edges.iter().position(|&e| e == (i, j)).unwrap();
        let mut d1 = Vec::new();
        for (k, &(i, j)) in edges.iter().enumerate() {
            d1.push((i, k, -1));
            d1.push((j, k, 1));
        }
        let mut d2 = Vec::new();
        let mut face = 0;
        for x in [0, 1] {
            for y in [2, 3] {
                for z in [4, 5] {
                    d2.push((edge_index(y, z), face, 1));
                    d2.push((edge_index(x, z), face, -1));
                    d2.push((edge_index(x, y), face, 1));
                    face += 1;
                }
            }
        }
        Self::new(vec![6, edges.len(), 8], BTreeMap::from([(1, d1), (2, d2)])).expect("octahedron is a complex")
    }

    /// The 2-complex of a Cayley ball: vertices, edges, and every relator
    /// cell lying inside the ball.
    pub fn from_ball(ball: &CayleyBall) -> Self {
        let mut d1 = Vec::new();
        for (k, e) in ball.edges().iter().enumerate() {
            d1.push((e.src, k, -1));
            d1.push((e.dst, k, 1));
        }
        let cells = ball_cells(ball);
        let mut d2 = Vec::new();
        for (c, (_, boundary)) in cells.iter().enumerate() {
            for (e, v) in boundary.edge_coefficients(ball).expect("cells lie in the ball") {
                let v = v.to_integer().try_into().expect("cell boundaries are small integers");
                d2.push((e, c, v));
            }
        }
        Self::new(
            vec![ball.num_vertices(), ball.edges().len(), cells.len()],
            BTreeMap::from([(1, d1), (2, d2)]),
        )
        .expect("ball complex satisfies dd = 0")
    }
}

/// Parses a cochain given as a JSON map `index -> "p/q"`; unlisted cells are 0.
pub fn cochain_from_json(v: &Value, n: usize) -> Result<Vec<Rational>, PrimitiveError> {
    let map = v
        .as_object()
        .ok_or_else(|| PrimitiveError::Json("cochain must be an object of index -> value".into()))?;
    let mut out = vec![Rational::zero(); n];
    for (k, val) in map {
        let i: usize = k
            .parse()
            .map_err(|_| PrimitiveError::Json(format!("bad index `{k}`")))?;
        if i >= n {
            return Err(PrimitiveError::DimensionMismatch(format!("index {i} of {n}")));
        }
        out[i] = parse_bound_value(val)?.ok_or_else(|| PrimitiveError::Json("cochain values are finite".into()))?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexOutcome {
    Feasible(Vec<Rational>),
    /// Certificate for the bounded system on the `(q-1)`-cells.
    Infeasible {
        farkas: FarkasCertificate,
        problem: LpProblem,
    },
}

/// Whether `A x = b` has a solution, by exact row reduction. `rows[i]` is a
/// sparse row of `A`.
fn consistent(rows: &[Vec<(usize, i64)>], ncols: usize, b: &[Rational]) -> bool {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut dense = vec![Rational::zero(); ncols + 1];
            for &(c, v) in row {
                dense[c] += Rational::from_integer(v.into());
            }
            dense[ncols] = bi.clone();
            dense
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = Rational::one() / &m[rank][col];
        for x in &mut m[rank] {
            *x *= &inv;
        }
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, px) in row.iter_mut().zip(&pivot) {
                    *x -= &f * px;
                }
            }
        }
        rank += 1;
    }
    m[rank..].iter().all(|row| row[ncols].is_zero())
}

/// Finds `t` on `(q-1)`-cells with `dt = u` and `|t| <= f` cellwise, of least
/// l1 norm, or a Farkas certificate that none exists. Fails with `NotExact` when `dt = u`
/// has no solution at all.
pub fn complex_primitive(
    x: &FiniteComplex,
    q: usize,
    u: &[Rational],
    f: &BoundFunction,
) -> Result<ComplexOutcome, PrimitiveError> {
    if q == 0 || q >= x.dims().len() {
        return Err(PrimitiveError::DimensionMismatch(format!(
            "degree {q} of a {}-complex",
            x.dims().len()
        )));
    }
    let (n, m) = (x.num_cells(q - 1), x.num_cells(q));
    if u.len() != m {
        return Err(PrimitiveError::DimensionMismatch(format!(
            "cochain has {} values, {m} cells",
            u.len()
        )));
    }
    if f.len() != n {
        return Err(PrimitiveError::DimensionMismatch(format!(
            "bound has {} values, {n} cells",
            f.len()
        )));
    }
    let cols = x.boundary_columns(q);
    if !consistent(&cols, n, u) {
        return Err(PrimitiveError::NotExact);
    }
    // t = p - n with p, n in [0, f]; minimizing the sum picks the least-l1 primitive
    let mut lp = LpProblem::minimize();
    for i in 0..n {
        for name in ["p", "n"] {
            let k = lp.add_var(Rational::one(), Some(Rational::zero()), f.get(i).cloned());
            lp.set_name(k, format!("{name}{i}"));
        }
    }
    for (col, ui) in cols.iter().zip(u) {
        let mut coeffs = Vec::with_capacity(2 * col.len());
        for &(r, v) in col {
            let v = Rational::from_integer(v.into());
            coeffs.push((2 * r + 1, -v.clone()));
            coeffs.push((2 * r, v));
        }
        lp.add_row(coeffs, Sense::Eq, ui.clone())?;
    }
    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Optimal => {
            let t: Vec<Rational> = sol.primal.chunks(2).map(|pn| &pn[0] - &pn[1]).collect();
            let ok = x.coboundary(q, &t) == u
                && t.iter()
                    .enumerate()
                    .all(|(i, ti)| f.get(i).is_none_or(|b| ti.abs() <= *b));
            if !ok {
                return Err(PrimitiveError::Verification("primitive fails dt = u or a bound".into()));
            }
            Ok(ComplexOutcome::Feasible(t))
        }
        LpStatus::Infeasible => {
            let farkas = sol.farkas.expect("infeasible has a certificate");
            farkas.verify(&lp).map_err(PrimitiveError::Verification)?;
            Ok(ComplexOutcome::Infeasible { farkas, problem: lp })
        }
        LpStatus::Unbounded => unreachable!("a nonnegative objective is bounded"),
    }
}

/// A seeded exact `q`-cochain `u = d t0` with `t0` integral in `[-3, 3]`.
/// Returns `(t0, u)`.
pub fn random_exact_cochain(x: &FiniteComplex, q: usize, seed: u64) -> (Vec<Rational>, Vec<Rational>) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let t0: Vec<Rational> = (0..x.num_cells(q - 1))
        .map(|_| Rational::from_integer(rng.gen_range(-3..=3).into()))
        .collect();
    let u = x.coboundary(q, &t0);
    (t0, u)
}
