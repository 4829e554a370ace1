//! Low-degree bar complex and the comparison maps with the cellular chains.
//!
//! Bar cochains are never tabulated. A 1-cochain is a closure on ordered
//! pairs `(g, h)`; the cellular side reaches it through [`edge_pair_value`],
//! which reads an edge cochain as `a(g, gs) = alpha(g, s)` and
//! `a(gs, g) = -alpha(g, s)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{fox_theta, ChainError, EdgeCochain, FillCertificate, GroupRingVec};
use crate::cayley::{CayleyBall, VertexId};
use crate::filling::{fill_int, FillError};
use crate::presentation::Letter;
use crate::Rational;

/// `da(g0, g1, g2) = a(g1, g2) - a(g0, g2) + a(g0, g1)`.
pub fn bar_coboundary<F>(a: F, g0: VertexId, g1: VertexId, g2: VertexId) -> Result<Rational, ChainError>
where
    F: Fn(VertexId, VertexId) -> Option<Rational>,
{
    let get = |x: VertexId, y: VertexId| a(x, y).ok_or(ChainError::UnevaluablePair { g: x, h: y });
    Ok(get(g1, g2)? - get(g0, g2)? + get(g0, g1)?)
}

/// Value of an edge cochain on the pair `(g, h)`; `None` unless `g` and `h`
/// are equal or adjacent.
pub fn edge_pair_value(a: &EdgeCochain, ball: &CayleyBall, g: VertexId, h: VertexId) -> Option<Rational> {
    if g == h {
        return Some(Rational::zero());
    }
    for s in 0..ball.num_generators() {
        if let Some(e) = ball.out_edge(g, s) {
            if ball.edge(e).dst == h {
                return Some(a.get(e));
            }
        }
        if let Some(e) = ball.in_edge(g, s) {
            if ball.edge(e).src == h {
                return Some(-a.get(e));
            }
        }
    }
    None
}

/// Inhomogeneous bar 2-cell `coeff [base | letter]`, homogeneously `(1, base, base*letter)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarTerm {
    pub coeff: i64,
    pub base: VertexId,
    pub letter: Letter,
}

/// `psi_2(f_j)`: the cone `sum_i [g_i | s_i^{e_i}]` over the relator cycle.
pub fn psi2(j: usize, ball: &CayleyBall) -> Result<Vec<BarTerm>, ChainError> {
    let r = ball.relators().get(j).ok_or(ChainError::EmptyRelator(j))?;
    if r.is_empty() {
        return Err(ChainError::EmptyRelator(j));
    }
    let path = ball
        .walk(0, r)
        .ok_or(ChainError::CellEscapesBall { vertex: 0, relator: j })?;
    Ok(r.letters()
        .iter()
        .zip(&path)
        .map(|(&letter, &base)| BarTerm { coeff: 1, base, letter })
        .collect())
}

/// Bar boundary of a 2-chain, read back as an edge chain.
///
/// Each term `(1, g, gx)` has boundary `(g, gx) - (1, gx) + (1, g)`. Pairs are
/// alternating, `(h, g) = -(g, h)`. Every surviving pair must be an edge.
pub fn bar_boundary2(terms: &[BarTerm], ball: &CayleyBall) -> Result<GroupRingVec, ChainError> {
    let mut pairs: BTreeMap<(VertexId, VertexId), Rational> = BTreeMap::new();
    let mut add = |g: VertexId, h: VertexId, c: Rational| {
        if g == h {
            return;
        }
        let (key, c) = if g < h { ((g, h), c) } else { ((h, g), -c) };
        *pairs.entry(key).or_insert_with(Rational::zero) += c;
    };
    for t in terms {
        let gx = ball
            .step(t.base, t.letter)
            .ok_or(ChainError::UnevaluablePair { g: t.base, h: t.base })?;
        let c = Rational::from_integer(t.coeff.into());
        add(t.base, gx, c.clone());
        add(0, gx, -c.clone());
        add(0, t.base, c);
    }
    let mut out = GroupRingVec::zero();
    for ((g, h), c) in pairs {
        if c.is_zero() {
            continue;
        }
        let mut found = None;
        for s in 0..ball.num_generators() {
            if let Some(e) = ball.out_edge(g, s).filter(|&e| ball.edge(e).dst == h) {
                found = Some((e, Rational::one()));
            } else if let Some(e) = ball.in_edge(g, s).filter(|&e| ball.edge(e).src == h) {
                found = Some((e, -Rational::one()));
            }
            if found.is_some() {
                break;
            }
        }
        let (e, sign) = found.ok_or(ChainError::UnevaluablePair { g, h })?;
        let edge = ball.edge(e);
        out.add_term(edge.src, edge.gen, c * sign);
    }
    Ok(out)
}

/// `chi_1([1, g])`: the Fox chain of the normal form of `g`.
pub fn chi1(g: VertexId, ball: &CayleyBall) -> Result<GroupRingVec, ChainError> {
    fox_theta(ball.word(g), ball)
}

/// `chi_2([g | h])`: a minimal integral filling of the relation
/// `nu(g) nu(h) nu(gh)^-1`, or the empty certificate when it is freely trivial.
pub fn chi2(g: VertexId, h: VertexId, ball: &CayleyBall, budget: u64) -> Result<FillCertificate, FillError> {
    let gh = ball
        .translate(g, h)
        .ok_or(ChainError::TranslateEscapesBall { base: g, vertex: h })?;
    let w = ball.word(g).join(ball.word(h)).join(&ball.word(gh).invert());
    if w.free_reduce().is_empty() {
        return Ok(FillCertificate::empty());
    }
    let z = super::cycle_of_relation(&w, 0, ball)?;
    Ok(fill_int(&z, ball, budget)?.certificate)
}
