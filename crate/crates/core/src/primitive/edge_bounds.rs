//! Bounded primitives on a Cayley ball.
//!
//! Condition (i): a vertex function `m` with `|alpha_0(g, s) + m(gs) - m(g)| <= F(g)`
//! on every edge. Condition (ii): for every relation `w` read from `g`,
//! `|alpha_0(I_w)|` is at most the sum of `F` over the sources of the edges
//! the walk crosses. Edges whose source has `F = inf` carry no constraint.

use num_traits::{Signed, Zero};

use super::{BoundFunction, CocycleData, PrimitiveError};
use crate::cayley::{enumerate_relations, CayleyBall, EdgeId, EnumerationMode, VertexId};
use crate::filling::{decompose_cycle, CyclePiece};
use crate::foxcalc::{cycle_of_relation, GroupRingVec, VertexFunction};
use crate::presentation::{Letter, Word};
use crate::ratlp::{solve_lp, FarkasCertificate, LpProblem, LpStatus, Sense};
use crate::Rational;

/// Sum of `F` over the edge sources of the walk of `w` from `base`; `None` when
/// a source has `F = inf` or the walk leaves the ball.
pub fn bound_along(w: &Word, base: VertexId, f: &BoundFunction, ball: &CayleyBall) -> Option<Rational> {
    let mut total = Rational::zero();
    let mut cur = base;
    for &l in w.letters() {
        let (e, dir) = ball.step_edge(cur, l)?;
        let edge = ball.edge(e);
        total += f.get(edge.src)?;
        cur = if dir > 0 { edge.dst } else { edge.src };
    }
    Some(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub base: VertexId,
    pub word: Word,
    /// `|alpha_0(I_w)|` at `base`.
    pub lhs: Rational,
    /// Sum of `F` along the walk.
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionIiReport {
    pub violations: Vec<Violation>,
    pub relations: usize,
    pub walks_checked: usize,
    pub partial: bool,
}

/// Checks (ii) on every enumerated relation, translated to every base vertex
/// whose walk stays in the ball.
pub fn check_condition_ii(
    cd: &CocycleData,
    f: &BoundFunction,
    ball: &CayleyBall,
    max_len: usize,
    mode: EnumerationMode,
) -> Result<ConditionIiReport, PrimitiveError> {
    let set = enumerate_relations(ball, max_len, mode)?;
    let mut violations = Vec::new();
    let mut walks_checked = 0;
    for w in &set.relations {
        for g in 0..ball.num_vertices() {
            let Ok(cyc) = cycle_of_relation(w, g, ball) else {
                continue;
            };
            walks_checked += 1;
            let Some(rhs) = bound_along(w, g, f, ball) else {
                continue;
            };
            let lhs = cd.alpha0.pair(&cyc, ball)?.abs();
            if lhs > rhs {
                violations.push(Violation {
                    base: g,
                    word: w.clone(),
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(ConditionIiReport {
        violations,
        relations: set.relations.len(),
        walks_checked,
        partial: set.partial,
    })
}

/// The feasibility program of condition (i), with `m(identity) = 0`.
///
/// Column `k` is `m(k + 1)`. Each constrained edge contributes a `<=` row and
/// then a `>=` row on `m(gs) - m(g)`.
pub fn primitive_problem(cd: &CocycleData, f: &BoundFunction, ball: &CayleyBall) -> (LpProblem, Vec<EdgeId>) {
    let mut lp = LpProblem::minimize();
    for v in 1..ball.num_vertices() {
        let k = lp.add_free(Rational::zero());
        lp.set_name(k, format!("m{v}"));
    }
    let mut edges = Vec::new();
    for (e, edge) in ball.edges().iter().enumerate() {
        let Some(fg) = f.get(edge.src) else {
            continue;
        };
        let a = cd.alpha0.get(e);
        let mut coeffs = Vec::new();
        if edge.dst != 0 {
            coeffs.push((edge.dst - 1, Rational::from_integer(1.into())));
        }
        if edge.src != 0 {
            coeffs.push((edge.src - 1, Rational::from_integer((-1).into())));
        }
        lp.add_row(coeffs.clone(), Sense::Le, fg - &a).expect("columns exist");
        lp.add_row(coeffs, Sense::Ge, -fg - &a).expect("columns exist");
        edges.push(e);
    }
    (lp, edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimitiveOutcome {
    Feasible(VertexFunction),
    Infeasible {
        farkas: FarkasCertificate,
        /// Net multiplier on each edge; a 1-cycle.
        flow: GroupRingVec,
        pieces: Vec<CyclePiece>,
        /// Pieces that violate (ii) on their own. Never empty.
        violating: Vec<Violation>,
    },
}

/// Checks (i) in exact arithmetic.
pub fn satisfies_condition_i(cd: &CocycleData, f: &BoundFunction, m: &VertexFunction, ball: &CayleyBall) -> bool {
    ball.edges().iter().enumerate().all(|(e, edge)| match f.get(edge.src) {
        None => true,
        Some(fg) => (cd.alpha0.get(e) + m.get(edge.dst) - m.get(edge.src)).abs() <= *fg,
    })
}

/// Solves (i). On failure the Farkas certificate is turned into an edge flow,
/// decomposed into relation cycles, and the cycles violating (ii) are returned.
pub fn find_primitive(
    cd: &CocycleData,
    f: &BoundFunction,
    ball: &CayleyBall,
) -> Result<PrimitiveOutcome, PrimitiveError> {
    let (lp, edges) = primitive_problem(cd, f, ball);
    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Optimal => {
            let mut m = VertexFunction::zero();
            for (k, v) in sol.primal.iter().enumerate() {
                m.set(k + 1, v.clone());
            }
            if !satisfies_condition_i(cd, f, &m, ball) {
                return Err(PrimitiveError::Verification("primitive violates a bound".into()));
            }
            Ok(PrimitiveOutcome::Feasible(m))
        }
        LpStatus::Infeasible => {
            let farkas = sol.farkas.expect("infeasible has a certificate");
            farkas.verify(&lp).map_err(PrimitiveError::Verification)?;
            let mut flow = GroupRingVec::zero();
            for (i, &e) in edges.iter().enumerate() {
                let x = &farkas.row_multipliers[2 * i] + &farkas.row_multipliers[2 * i + 1];
                let edge = ball.edge(e);
                flow.add_term(edge.src, edge.gen, x);
            }
            let pieces = decompose_cycle(&flow, ball, usize::MAX)?;
            let mut violating = Vec::new();
            for p in &pieces {
                let cyc = cycle_of_relation(&p.word, p.base, ball)?;
                let lhs = cd.alpha0.pair(&cyc, ball)?.abs();
                if let Some(rhs) = bound_along(&p.word, p.base, f, ball) {
                    if lhs > rhs {
                        violating.push(Violation {
                            base: p.base,
                            word: p.word.clone(),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
            if violating.is_empty() {
                return Err(PrimitiveError::Verification("no decomposed cycle violates (ii)".into()));
            }
            Ok(PrimitiveOutcome::Infeasible {
                farkas,
                flow,
                pieces,
                violating,
            })
        }
        LpStatus::Unbounded => unreachable!("a zero objective is bounded"),
    }
}

/// Complete check of (ii) over every closed walk in the ball.
///
/// (i) is a system of difference constraints, so it is solvable iff the graph
/// with arcs `g -> gs` of weight `F(g) - alpha` and `gs -> g` of weight
/// `F(g) + alpha` has no negative cycle; a negative cycle is exactly a closed
/// walk violating (ii). Returns the simple cycle the search closes on, if any;
/// it need not be the shortest or the most violated.
pub fn violating_cycle(cd: &CocycleData, f: &BoundFunction, ball: &CayleyBall) -> Option<Violation> {
    let n = ball.num_vertices();
    let mut arcs: Vec<(VertexId, VertexId, Rational, Letter)> = Vec::new();
    for (e, edge) in ball.edges().iter().enumerate() {
        if let Some(fg) = f.get(edge.src) {
            let a = cd.alpha0.get(e);
            arcs.push((edge.src, edge.dst, fg - &a, Letter::pos(edge.gen)));
            arcs.push((edge.dst, edge.src, fg + &a, Letter::neg(edge.gen)));
        }
    }
    let mut dist = vec![Rational::zero(); n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last = None;
    for _ in 0..n {
        last = None;
        for (i, (u, v, w, _)) in arcs.iter().enumerate() {
            let cand = &dist[*u] + w;
            if cand < dist[*v] {
                dist[*v] = cand;
                pred[*v] = Some(i);
                last = Some(*v);
            }
        }
        last?;
    }
    let mut v = last?;
    for _ in 0..n {
        v = arcs[pred[v]?].0;
    }
    // v is on the cycle; walk predecessors back to it
    let start = v;
    let mut letters = Vec::new();
    loop {
        let (u, _, _, l) = &arcs[pred[v]?];
        letters.push(*l);
        v = *u;
        if v == start {
            break;
        }
    }
    letters.reverse();
    let word = Word::new(letters);
    let cyc = cycle_of_relation(&word, start, ball).ok()?;
    let lhs = cd.alpha0.pair(&cyc, ball).ok()?.abs();
    let rhs = bound_along(&word, start, f, ball)?;
    Some(Violation {
        base: start,
        word,
        lhs,
        rhs,
    })
}

/// Side-by-side run of (i) and (ii) on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm4Report {
    /// (i) holds: the program found a primitive.
    pub primitive_exists: bool,
    /// A closed walk violating (ii), from the complete check.
    pub complete_violation: Option<Violation>,
    /// Violations among enumerated relations up to `max_len`.
    pub enumerated_violations: usize,
    pub enumeration_partial: bool,
    /// For an infeasible instance: certificate verified and some decomposed
    /// cycle violates (ii).
    pub certificate_ok: Option<bool>,
    /// (i) holds iff the complete check finds no violation.
    pub agreement: bool,
    /// Explains a difference between (i) and the enumerated check, which can
    /// only come from the length cap or the sampling.
    pub truncation_note: Option<String>,
}

pub fn check_thm4_equivalence(
    cd: &CocycleData,
    f: &BoundFunction,
    ball: &CayleyBall,
    max_len: usize,
    mode: EnumerationMode,
) -> Result<Thm4Report, PrimitiveError> {
    let outcome = find_primitive(cd, f, ball);
    let (primitive_exists, certificate_ok) = match &outcome {
        Ok(PrimitiveOutcome::Feasible(_)) => (true, None),
        Ok(PrimitiveOutcome::Infeasible { .. }) => (false, Some(true)),
        Err(PrimitiveError::Verification(_)) => (false, Some(false)),
        Err(e) => return Err(e.clone()),
    };
    let complete_violation = violating_cycle(cd, f, ball);
    let enumerated = check_condition_ii(cd, f, ball, max_len, mode)?;
    let agreement = primitive_exists == complete_violation.is_none()
        && !(primitive_exists && !enumerated.violations.is_empty())
        && certificate_ok != Some(false);
    let truncation_note = (!primitive_exists && enumerated.violations.is_empty()).then(|| {
        let len = complete_violation.as_ref().map_or(0, |v| v.word.len());
        format!(
            "no enumerated relation up to length {max_len} violates (ii); the shortest witness found has length {len}"
        )
    });
    Ok(Thm4Report {
        primitive_exists,
        complete_violation,
        enumerated_violations: enumerated.violations.len(),
        enumeration_partial: enumerated.partial,
        certificate_ok,
        agreement,
        truncation_note,
    })
}

/// `M = max_j |psi_2(f_j)|_1`, the bar-complex size of the relator cells.
/// Informational only.
pub fn relator_constant(ball: &CayleyBall) -> Result<usize, PrimitiveError> {
    let mut m = 0;
    for j in 0..ball.relators().len() {
        let terms = crate::foxcalc::psi2(j, ball)?;
        m = m.max(terms.iter().map(|t| t.coeff.unsigned_abs() as usize).sum());
    }
    Ok(m)
}

/// A seeded instance: `alpha_0 = dm + noise` with integer `m` in `[-4, 4]`,
/// three half-integer noise edges, and `F(g)` drawn from `{0, 1/4, ..., 3}`.
pub fn random_instance(ball: &CayleyBall, seed: u64) -> (CocycleData, BoundFunction) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let int = |n: i64| Rational::from_integer(n.into());
    let mut m = VertexFunction::zero();
    for v in 0..ball.num_vertices() {
        m.set(v, int(rng.gen_range(-4..=4)));
    }
    let mut alpha = crate::foxcalc::EdgeCochain::coboundary(&m, ball);
    if !ball.edges().is_empty() {
        for _ in 0..3 {
            let e = rng.gen_range(0..ball.edges().len());
            alpha.set(e, alpha.get(e) + Rational::new(rng.gen_range(-3..=3).into(), 2.into()));
        }
    }
    let f = (0..ball.num_vertices())
        .map(|_| Some(Rational::new(rng.gen_range(0..=3).into(), rng.gen_range(1..=4).into())))
        .collect();
    (
        CocycleData::new(alpha),
        BoundFunction::new(f).expect("bounds are nonnegative"),
    )
}
