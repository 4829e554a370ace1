use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::ChainError;
use crate::cayley::{CayleyBall, EdgeId, VertexId};
use crate::{parse_rational, Rational};

/// Sparse element of `Q[G]^S`: coefficient on `g e_s`, i.e. on the edge leaving
/// `g` labelled `s`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingVec {
    entries: BTreeMap<(VertexId, usize), Rational>,
}

impl GroupRingVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, v: VertexId, gen: usize) -> Rational {
        self.entries.get(&(v, gen)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, v: VertexId, gen: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry((v, gen)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&(v, gen));
        }
    }

    pub fn add_scaled(&mut self, other: &GroupRingVec, c: &Rational) {
        for (&(v, g), x) in &other.entries {
            self.add_term(v, g, x * c);
        }
    }

    pub fn add_assign(&mut self, other: &GroupRingVec) {
        self.add_scaled(other, &Rational::one());
    }

    pub fn sub_assign(&mut self, other: &GroupRingVec) {
        self.add_scaled(other, &-Rational::one());
    }

    pub fn scaled(&self, c: &Rational) -> GroupRingVec {
        let mut out = GroupRingVec::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, usize, &Rational)> {
        self.entries.iter().map(|(&(v, g), c)| (v, g, c))
    }

    /// `sum |coefficients|`.
    pub fn l1_norm(&self) -> Rational {
        self.entries.values().map(|c| c.abs()).sum()
    }

    /// Left translation by `g`, defined when every `g * h` is in the ball.
    pub fn translate(&self, g: VertexId, ball: &CayleyBall) -> Result<GroupRingVec, ChainError> {
        let mut out = GroupRingVec::zero();
        for (v, s, c) in self.iter() {
            let gv = ball
                .translate(g, v)
                .ok_or(ChainError::TranslateEscapesBall { base: g, vertex: v })?;
            out.add_term(gv, s, c.clone());
        }
        Ok(out)
    }

    /// Edge-indexed view; fails if some slot has no edge in the ball.
    pub fn edge_coefficients(&self, ball: &CayleyBall) -> Result<BTreeMap<EdgeId, Rational>, ChainError> {
        let mut out = BTreeMap::new();
        for (v, s, c) in self.iter() {
            let e = ball
                .out_edge(v, s)
                .ok_or(ChainError::TargetEscapesBall { vertex: v, gen: s })?;
            out.insert(e, c.clone());
        }
        Ok(out)
    }

    /// JSON list of `[vertex-word, generator-name, "p/q"]`.
    pub fn to_json(&self, ball: &CayleyBall) -> Value {
        Value::Array(
            self.iter()
                .map(|(v, s, c)| json!([ball.format_vertex(v), ball.generators()[s], c.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(value: &Value, ball: &CayleyBall) -> Result<GroupRingVec, ChainError> {
        let bad = |m: &str| ChainError::Json(m.to_string());
        let items = value.as_array().ok_or_else(|| bad("expected a list"))?;
        let mut out = GroupRingVec::zero();
        for item in items {
            let triple = item
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| bad("expected [word, gen, coeff]"))?;
            let word_text = triple[0].as_str().ok_or_else(|| bad("vertex must be a string"))?;
            let gen_name = triple[1].as_str().ok_or_else(|| bad("generator must be a string"))?;
            let coeff = triple[2]
                .as_str()
                .and_then(parse_rational)
                .ok_or_else(|| bad("coefficient must be a \"p/q\" string"))?;
            let v = vertex_from_text(word_text, ball)?;
            let s = ball
                .generators()
                .iter()
                .position(|g| g == gen_name)
                .ok_or_else(|| bad(&format!("unknown generator `{gen_name}`")))?;
            out.add_term(v, s, coeff);
        }
        Ok(out)
    }

    /// Stable digest of the chain, for audit trails.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (v, s, c) in self.iter() {
            h.update(format!("{v}:{s}:{c};").as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub(crate) fn vertex_from_text(text: &str, ball: &CayleyBall) -> Result<VertexId, ChainError> {
    let p = crate::presentation::Presentation::new(ball.generators().to_vec(), Vec::new())
        .map_err(|e| ChainError::Json(e.to_string()))?;
    let w = p.parse_word(text).map_err(|e| ChainError::Json(e.to_string()))?;
    ball.vertex_of(&w)
        .ok_or_else(|| ChainError::Json(format!("vertex `{text}` is outside the ball")))
}

/// Sparse element of `Q[G]`; also used for vertex functions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingScalar {
    entries: BTreeMap<VertexId, Rational>,
}

/// Real-valued function on ball vertices (missing = 0).
pub type VertexFunction = GroupRingScalar;

impl GroupRingScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Rational {
        self.entries.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, v: VertexId, c: Rational) {
        if c.is_zero() {
            self.entries.remove(&v);
        } else {
            self.entries.insert(v, c);
        }
    }

    pub fn add_term(&mut self, v: VertexId, c: Rational) {
        let cur = self.get(v);
        self.set(v, cur + c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &Rational)> {
        self.entries.iter().map(|(&v, c)| (v, c))
    }

    pub fn l1_norm(&self) -> Rational {
        self.entries.values().map(|c| c.abs()).sum()
    }
}

/// Finite formal sum `sum tau_i g_i f_{j_i}` of translated relator cells.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FillCertificate {
    terms: Vec<(Rational, VertexId, usize)>,
    /// Digest of the cycle this certificate was produced for.
    pub target_digest: Option<String>,
}

impl FillCertificate {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Merges repeated cells and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (Rational, VertexId, usize)>) -> Self {
        let mut acc: BTreeMap<(VertexId, usize), Rational> = BTreeMap::new();
        for (c, v, j) in terms {
            *acc.entry((v, j)).or_insert_with(Rational::zero) += c;
        }
        FillCertificate {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((v, j), c)| (c, v, j))
                .collect(),
            target_digest: None,
        }
    }

    pub fn terms(&self) -> &[(Rational, VertexId, usize)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum |tau_i|`.
    pub fn l1_value(&self) -> Rational {
        self.terms.iter().map(|(c, _, _)| c.abs()).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(c, _, _)| c.is_integer())
    }

    pub fn to_json(&self, ball: &CayleyBall) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(c, v, j)| json!([c.to_string(), ball.format_vertex(*v), j]))
                .collect(),
        )
    }
}

/// Function on ball edges (missing = 0).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeCochain {
    values: BTreeMap<EdgeId, Rational>,
}

impl EdgeCochain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_fn(ball: &CayleyBall, mut f: impl FnMut(EdgeId) -> Rational) -> Self {
        let mut out = EdgeCochain::zero();
        for e in 0..ball.edges().len() {
            out.set(e, f(e));
        }
        out
    }

    /// `dm(g, gs) = m(gs) - m(g)`.
    pub fn coboundary(m: &VertexFunction, ball: &CayleyBall) -> Self {
        Self::from_fn(ball, |e| {
            let edge = ball.edge(e);
            m.get(edge.dst) - m.get(edge.src)
        })
    }

    pub fn get(&self, e: EdgeId) -> Rational {
        self.values.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, e: EdgeId, c: Rational) {
        if c.is_zero() {
            self.values.remove(&e);
        } else {
            self.values.insert(e, c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, &Rational)> {
        self.values.iter().map(|(&e, c)| (e, c))
    }

    pub fn add(&self, other: &EdgeCochain) -> EdgeCochain {
        let mut out = self.clone();
        for (e, c) in other.iter() {
            out.set(e, out.get(e) + c);
        }
        out
    }

    /// Pairing `a(x) = sum x(g, s) a(g, gs)`.
    pub fn pair(&self, x: &GroupRingVec, ball: &CayleyBall) -> Result<Rational, ChainError> {
        let mut total = Rational::zero();
        for (v, s, c) in x.iter() {
            let e = ball
                .out_edge(v, s)
                .ok_or(ChainError::TargetEscapesBall { vertex: v, gen: s })?;
            total += c * self.get(e);
        }
        Ok(total)
    }

    /// `max |a(e)|`.
    pub fn sup_norm(&self) -> Rational {
        self.values
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// JSON list of `[vertex-word, generator-name, "p/q"]`, one per edge.
    pub fn to_json(&self, ball: &CayleyBall) -> Value {
        Value::Array(
            self.iter()
                .map(|(e, c)| {
                    let edge = ball.edge(e);
                    json!([ball.format_vertex(edge.src), ball.generators()[edge.gen], c.to_string()])
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value, ball: &CayleyBall) -> Result<EdgeCochain, ChainError> {
        let x = GroupRingVec::from_json(value, ball)?;
        let mut out = EdgeCochain::zero();
        for (e, c) in x.edge_coefficients(ball)? {
            out.set(e, c);
        }
        Ok(out)
    }
}
