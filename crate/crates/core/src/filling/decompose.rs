use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use super::FillError;
use crate::cayley::{CayleyBall, VertexId};
use crate::foxcalc::{boundary1, GroupRingVec};
use crate::presentation::{Letter, Word};
use crate::Rational;

/// One piece `coeff * I_word` read from `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePiece {
    pub coeff: Rational,
    pub base: VertexId,
    pub word: Word,
}

/// Oriented edges leaving `u` that carry positive flow in `x`.
fn flow_steps(x: &GroupRingVec, ball: &CayleyBall, u: VertexId) -> Vec<(Letter, VertexId)> {
    let mut out = Vec::new();
    for code in 0..2 * ball.num_generators() {
        let l = Letter::from_code(code);
        if let Some((e, dir)) = ball.step_edge(u, l) {
            let edge = ball.edge(e);
            let c = x.get(edge.src, edge.gen);
            if (dir > 0 && c.is_positive()) || (dir < 0 && c.is_negative()) {
                out.push((l, if dir > 0 { edge.dst } else { edge.src }));
            }
        }
    }
    out
}

/// Writes a 1-cycle as a positive combination of relation cycles.
///
/// Each round takes the term of least `|tau|` (ties by vertex, then
/// generator), orients it along its sign, closes it up with a shortest path of
/// positive flow back to its tail, and subtracts `|tau|` times that loop. The
/// chosen term cancels, so every round removes at least one term.
pub fn decompose_cycle(x: &GroupRingVec, ball: &CayleyBall, budget: usize) -> Result<Vec<CyclePiece>, FillError> {
    if !boundary1(x, ball)?.is_zero() {
        return Err(FillError::NotACycle);
    }
    let mut rest = x.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        if out.len() >= budget {
            return Err(FillError::Budget {
                nodes: budget as u64,
                lower: Rational::zero(),
                best: None,
            });
        }
        let (v, s, tau) = rest
            .iter()
            .min_by(|a, b| a.2.abs().cmp(&b.2.abs()).then((a.0, a.1).cmp(&(b.0, b.1))))
            .map(|(v, s, c)| (v, s, c.clone()))
            .expect("nonzero chain");
        let e = ball.out_edge(v, s).ok_or(FillError::TraceEscapesBall)?;
        let dst = ball.edge(e).dst;
        let (first, tail, head) = if tau.is_positive() {
            (Letter::pos(s), v, dst)
        } else {
            (Letter::neg(s), dst, v)
        };
        // breadth-first search head -> tail along positive flow
        let mut prev: Vec<Option<(VertexId, Letter)>> = vec![None; ball.num_vertices()];
        let mut seen = vec![false; ball.num_vertices()];
        seen[head] = true;
        let mut queue = VecDeque::from([head]);
        while let Some(u) = queue.pop_front() {
            if u == tail {
                break;
            }
            for (l, w) in flow_steps(&rest, ball, u) {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((u, l));
                    queue.push_back(w);
                }
            }
        }
        if !seen[tail] {
            return Err(FillError::TraceEscapesBall);
        }
        let mut back = Vec::new();
        let mut u = tail;
        while u != head {
            let (p, l) = prev[u].expect("path recorded");
            back.push(l);
            u = p;
        }
        back.reverse();
        let mut letters = vec![first];
        letters.extend(back);
        let word = Word::new(letters);
        let coeff = tau.abs();
        let loop_chain = crate::foxcalc::cycle_of_relation(&word, tail, ball)?;
        rest.add_scaled(&loop_chain, &-coeff.clone());
        out.push(CyclePiece {
            coeff,
            base: tail,
            word,
        });
    }
    Ok(out)
}
