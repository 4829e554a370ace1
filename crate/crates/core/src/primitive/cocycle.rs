use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde_json::Value;

use super::PrimitiveError;
use crate::cayley::{CayleyBall, VertexId};
use crate::foxcalc::{cell_boundary, EdgeCochain};
use crate::{parse_rational, Rational};

/// A 2-cocycle given by its edge data `alpha_0(g, s)`.
///
/// The cocycle itself is `b = d alpha_0`; adding a coboundary `dm` to
/// `alpha_0` describes the same `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleData {
    pub alpha0: EdgeCochain,
}

impl CocycleData {
    pub fn new(alpha0: EdgeCochain) -> Self {
        CocycleData { alpha0 }
    }

    pub fn zero() -> Self {
        Self::new(EdgeCochain::zero())
    }

    /// `alpha_0(g, s_0) = ` exponent sum of the second generator in `g`, zero
    /// on other generators. On `Z^2` every unit square picks up `-1`.
    pub fn winding(ball: &CayleyBall) -> Self {
        let np = ball.num_generators();
        Self::new(EdgeCochain::from_fn(ball, |e| {
            let edge = ball.edge(e);
            if edge.gen == 0 && np > 1 {
                Rational::from_integer(ball.word(edge.src).exponent_sums(np)[1].into())
            } else {
                Rational::zero()
            }
        }))
    }

    /// `alpha_0 + dm`.
    pub fn plus_coboundary(&self, m: &crate::foxcalc::VertexFunction, ball: &CayleyBall) -> Self {
        Self::new(self.alpha0.add(&EdgeCochain::coboundary(m, ball)))
    }
}

/// A bound `F: G -> [0, inf]` on ball vertices; `None` is `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundFunction {
    values: Vec<Option<Rational>>,
}

impl BoundFunction {
    pub fn new(values: Vec<Option<Rational>>) -> Result<Self, PrimitiveError> {
        if let Some(i) = values.iter().position(|v| v.as_ref().is_some_and(|x| x.is_negative())) {
            return Err(PrimitiveError::NegativeBound(i));
        }
        Ok(BoundFunction { values })
    }

    pub fn constant(n: usize, c: Rational) -> Result<Self, PrimitiveError> {
        Self::new(vec![Some(c); n])
    }

    pub fn infinite(n: usize) -> Self {
        BoundFunction { values: vec![None; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `F(v)`, with vertices past the table treated as `+inf`.
    pub fn get(&self, v: VertexId) -> Option<&Rational> {
        self.values.get(v).and_then(Option::as_ref)
    }

    pub fn values(&self) -> &[Option<Rational>] {
        &self.values
    }

    /// Parses a JSON object mapping indices to `"p/q"` or `"inf"`; unlisted
    /// indices get `default`.
    pub fn from_json(value: &Value, n: usize, default: Option<Rational>) -> Result<Self, PrimitiveError> {
        let map = value
            .as_object()
            .ok_or_else(|| PrimitiveError::Json("bound must be an object of index -> value".into()))?;
        let mut values = vec![default; n];
        for (k, v) in map {
            let i: usize = k
                .parse()
                .map_err(|_| PrimitiveError::Json(format!("bad index `{k}`")))?;
            if i >= n {
                return Err(PrimitiveError::DimensionMismatch(format!("index {i} of {n}")));
            }
            values[i] = parse_bound_value(v)?;
        }
        Self::new(values)
    }
}

pub(crate) fn parse_bound_value(v: &Value) -> Result<Option<Rational>, PrimitiveError> {
    match v {
        Value::String(s) if s == "inf" => Ok(None),
        Value::String(s) => parse_rational(s)
            .map(Some)
            .ok_or_else(|| PrimitiveError::Json(format!("bad rational `{s}`"))),
        Value::Number(n) if n.is_i64() => Ok(Some(Rational::from_integer(n.as_i64().unwrap().into()))),
        _ => Err(PrimitiveError::Json(format!("bad value {v}"))),
    }
}

/// Per-vertex norm `||b||(g) = max_j |alpha_0(g I_{r_j})|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleNorm {
    pub values: BTreeMap<VertexId, Rational>,
    /// Vertices where some translated relator leaves the ball.
    pub omitted: Vec<VertexId>,
}

impl CocycleNorm {
    pub fn max(&self) -> Rational {
        self.values.values().max().cloned().unwrap_or_else(Rational::zero)
    }
}

pub fn cocycle_norm(cd: &CocycleData, ball: &CayleyBall) -> CocycleNorm {
    let mut values = BTreeMap::new();
    let mut omitted = Vec::new();
    'vertices: for g in 0..ball.num_vertices() {
        let mut best = Rational::zero();
        for j in 0..ball.relators().len() {
            let Ok(c) = cell_boundary(g, j, ball) else {
                omitted.push(g);
                continue 'vertices;
            };
            let v = cd.alpha0.pair(&c, ball).expect("cell edges are in the ball").abs();
            best = best.max(v);
        }
        values.insert(g, best);
    }
    CocycleNorm { values, omitted }
}
