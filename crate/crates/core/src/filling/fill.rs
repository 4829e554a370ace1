use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::context::{Collapsed, FillContext};
use super::FillError;
use crate::cayley::CayleyBall;
use crate::foxcalc::{boundary1, boundary2, cycle_of_relation, EdgeCochain, FillCertificate, GroupRingVec};
use crate::presentation::Word;
use crate::ratlp::{l1_problem, min_l1, solve_lp, L1Outcome, LpProblem, LpStatus, Sense};
use crate::Rational;

/// A ball-truncated filling norm with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillReport {
    pub value: Rational,
    pub certificate: FillCertificate,
    pub radius: usize,
    /// The value at the next smaller radius differs or does not exist, so the
    /// truncation may still be cutting off better fillings.
    pub truncated: bool,
    /// A cochain `a` with `|a(g I_r)| <= 1` on every cell and `a(z) = value`,
    /// proving the value is optimal. Only for real fills.
    pub dual: Option<EdgeCochain>,
}

fn check_cycle(z: &GroupRingVec, ball: &CayleyBall) -> Result<(), FillError> {
    if boundary1(z, ball)?.is_zero() {
        Ok(())
    } else {
        Err(FillError::NotACycle)
    }
}

fn verify_certificate(c: &FillCertificate, z: &GroupRingVec, ball: &CayleyBall) -> Result<(), FillError> {
    if boundary2(c, ball)? == *z {
        Ok(())
    } else {
        Err(FillError::Verification(
            "certificate boundary differs from the target".into(),
        ))
    }
}

/// Turns a Farkas certificate of the split fill LP into a separating cochain.
fn separating_cochain(
    ctx: &FillContext,
    collapsed: &Collapsed,
    y: &[Rational],
    z: &GroupRingVec,
) -> Result<FillError, FillError> {
    let mut a = EdgeCochain::zero();
    for (e, v) in collapsed.rows.iter().zip(y) {
        a.set(*e, -v.clone());
    }
    ctx.extend(collapsed, &mut a);
    let pairing = a.pair(z, ctx.ball())?;
    if !pairing.is_positive() || !ctx.max_cell_pairing(&a).is_zero() {
        return Err(FillError::Verification("separating cochain fails to separate".into()));
    }
    Ok(FillError::NotABoundary { witness: a, pairing })
}

/// Real fill on one context: value, certificate, and extended dual cochain.
fn solve_real(ctx: &FillContext, z: &GroupRingVec) -> Result<Result<FillReport, FillError>, FillError> {
    let Some(target) = ctx.target(z)? else {
        return Ok(Err(FillError::EscapesBall { radius: ctx.radius() }));
    };
    let collapsed = ctx.collapse(target);
    let (rows, b) = collapsed.system(ctx);
    match min_l1(&rows, collapsed.alive.len(), &b)? {
        L1Outcome::Optimal { value, x, duals } => {
            let certificate = ctx.certificate(collapsed.alive.iter().copied().zip(x));
            let mut dual = EdgeCochain::zero();
            for (e, y) in collapsed.rows.iter().zip(duals) {
                dual.set(*e, y);
            }
            ctx.extend(&collapsed, &mut dual);
            Ok(Ok(FillReport {
                value,
                certificate,
                radius: ctx.radius(),
                truncated: false,
                dual: Some(dual),
            }))
        }
        L1Outcome::Infeasible { farkas, .. } => {
            Ok(Err(separating_cochain(ctx, &collapsed, &farkas.row_multipliers, z)?))
        }
    }
}

/// Minimal `sum |tau|` over real 2-chains in the ball with boundary `z`.
///
/// The value is certified twice: the certificate's boundary is recomputed and
/// the dual cochain is checked against every cell of the ball.
pub fn fill_real(z: &GroupRingVec, ball: &CayleyBall) -> Result<FillReport, FillError> {
    fill_real_in(&FillContext::new(ball), z)
}

/// [`fill_real`] on a prepared context, reusable across many targets.
pub fn fill_real_in(ctx: &FillContext, z: &GroupRingVec) -> Result<FillReport, FillError> {
    let ball = ctx.ball();
    check_cycle(z, ball)?;
    let mut report = solve_real(ctx, z)??;
    verify_certificate(&report.certificate, z, ball)?;
    let dual = report.dual.as_ref().expect("real fills carry a dual");
    if ctx.max_cell_pairing(dual) > Rational::one() || dual.pair(z, ball)? != report.value {
        return Err(FillError::Verification(
            "dual cochain does not certify the value".into(),
        ));
    }
    report.truncated = match ctx.radius().checked_sub(1) {
        None => false,
        Some(r) => match solve_real(&FillContext::with_radius(ball, r), z)? {
            Ok(smaller) => smaller.value != report.value,
            Err(_) => true,
        },
    };
    Ok(report)
}

/// Result of the ℓ1 fill/norm duality on one relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCheck {
    pub primal: Rational,
    pub dual: Rational,
    /// Bound `lambda` on `|a(g I_r)|`.
    pub bound: Rational,
    /// Optimal cochain of the dual program, defined on the whole ball.
    pub cochain: EdgeCochain,
}

impl DualCheck {
    pub fn agrees(&self) -> bool {
        self.dual == &self.bound * &self.primal
    }
}

/// Solves `max a(I_w)` subject to `|a(g I_{r_j})| <= bound` as its own linear
/// program and compares with the primal fill value.
pub fn dual_norm_check(w: &Word, ball: &CayleyBall, bound: &Rational) -> Result<DualCheck, FillError> {
    if bound.is_negative() {
        return Err(FillError::Verification("dual bound must be nonnegative".into()));
    }
    let z = cycle_of_relation(w, 0, ball)?;
    let ctx = FillContext::new(ball);
    let primal = fill_real_in(&ctx, &z)?.value;
    let target = ctx.target(&z)?.ok_or(FillError::EscapesBall { radius: ctx.radius() })?;
    let collapsed = ctx.collapse(target);
    let col_of: BTreeMap<_, _> = collapsed.rows.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut lp = LpProblem::maximize();
    for &e in &collapsed.rows {
        let c = collapsed.target.get(&e).cloned().unwrap_or_else(Rational::zero);
        lp.add_free(c);
    }
    for &c in &collapsed.alive {
        let coeffs: Vec<_> = ctx.cell_edges(c).iter().map(|(e, a)| (col_of[e], a.clone())).collect();
        lp.add_row(coeffs.clone(), Sense::Le, bound.clone())?;
        lp.add_row(coeffs, Sense::Ge, -bound.clone())?;
    }
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(FillError::Verification(format!("dual program is {:?}", sol.status)));
    }
    sol.verify(&lp).map_err(FillError::Verification)?;
    let mut cochain = EdgeCochain::zero();
    for (e, v) in collapsed.rows.iter().zip(&sol.primal) {
        cochain.set(*e, v.clone());
    }
    ctx.extend(&collapsed, &mut cochain);
    let dual = cochain.pair(&z, ball)?;
    if dual != sol.objective.clone().expect("optimal") || ctx.max_cell_pairing(&cochain) > *bound {
        return Err(FillError::Verification("extended dual cochain is not feasible".into()));
    }
    Ok(DualCheck {
        primal,
        dual,
        bound: bound.clone(),
        cochain,
    })
}

/// Distance to the nearest integer.
fn fractionality(v: &Rational) -> Rational {
    let f = v - v.floor();
    let g = Rational::one() - &f;
    f.min(g)
}

struct Node {
    /// `(variable, sense, bound)` rows added by branching.
    cuts: Vec<(usize, Sense, Rational)>,
}

/// Minimal `sum |tau|` over integral 2-chains in the ball with boundary `z`.
///
/// Depth-first branch and bound over the real relaxation: branch on the most
/// fractional coefficient (lowest index on ties), floor side first, and prune
/// when the rounded-up bound cannot beat the incumbent. `budget` caps the
/// number of relaxations solved.
pub fn fill_int(z: &GroupRingVec, ball: &CayleyBall, budget: u64) -> Result<FillReport, FillError> {
    fill_int_in(&FillContext::new(ball), z, budget)
}

pub fn fill_int_in(ctx: &FillContext, z: &GroupRingVec, budget: u64) -> Result<FillReport, FillError> {
    let ball = ctx.ball();
    check_cycle(z, ball)?;
    let target = ctx.target(z)?.ok_or(FillError::EscapesBall { radius: ctx.radius() })?;
    let collapsed = ctx.collapse(target);
    let (rows, b) = collapsed.system(ctx);
    let n = collapsed.alive.len();
    let base = l1_problem(&rows, n, &b)?;
    let mut incumbent: Option<(Rational, Vec<Rational>)> = None;
    let mut root_bound: Option<Rational> = None;
    let mut stack = vec![Node { cuts: Vec::new() }];
    let mut nodes = 0u64;
    while let Some(node) = stack.pop() {
        nodes += 1;
        if nodes > budget {
            return Err(FillError::Budget {
                nodes: budget,
                lower: root_bound.unwrap_or_else(Rational::zero),
                best: incumbent.map(|(v, _)| Box::new(v)),
            });
        }
        let mut lp = base.clone();
        for (j, sense, k) in &node.cuts {
            lp.add_row(
                vec![(2 * j, Rational::one()), (2 * j + 1, -Rational::one())],
                *sense,
                k.clone(),
            )?;
        }
        let sol = solve_lp(&lp)?;
        if sol.status != LpStatus::Optimal {
            if root_bound.is_none() {
                let farkas = sol.farkas.expect("infeasible has a certificate");
                return Err(separating_cochain(ctx, &collapsed, &farkas.row_multipliers, z)?);
            }
            continue;
        }
        let value = sol.objective.clone().expect("optimal");
        if root_bound.is_none() {
            root_bound = Some(value.ceil());
        }
        if let Some((best, _)) = &incumbent {
            if value.ceil() >= *best {
                continue;
            }
        }
        let tau: Vec<Rational> = (0..n).map(|j| &sol.primal[2 * j] - &sol.primal[2 * j + 1]).collect();
        let mut branch: Option<(usize, Rational)> = None;
        for (j, t) in tau.iter().enumerate() {
            if t.is_integer() {
                continue;
            }
            let f = fractionality(t);
            if branch.as_ref().is_none_or(|(_, bf)| f > *bf) {
                branch = Some((j, f));
            }
        }
        match branch {
            None => incumbent = Some((value, tau)),
            Some((j, _)) => {
                let t = &tau[j];
                let mut up = node.cuts.clone();
                up.push((j, Sense::Ge, t.ceil()));
                let mut down = node.cuts;
                down.push((j, Sense::Le, t.floor()));
                stack.push(Node { cuts: up });
                stack.push(Node { cuts: down });
            }
        }
    }
    let (value, tau) = incumbent.ok_or(FillError::NoIntegralFilling)?;
    let certificate = ctx.certificate(collapsed.alive.iter().copied().zip(tau));
    verify_certificate(&certificate, z, ball)?;
    Ok(FillReport {
        value,
        certificate,
        radius: ctx.radius(),
        truncated: false,
        dual: None,
    })
}

/// One row of [`stable_fill`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableRow {
    pub n: usize,
    /// `fill_real(I_{w^n}) / n`.
    pub real: Rational,
    /// `fill_int(I_{w^n}) / n`, when requested.
    pub integral: Option<Rational>,
}

/// `fill(I_{w^n}) / n` for `n = 1..=n_max`.
pub fn stable_fill(
    w: &Word,
    ball: &CayleyBall,
    n_max: usize,
    int_budget: Option<u64>,
) -> Result<Vec<StableRow>, FillError> {
    let ctx = FillContext::new(ball);
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let z = cycle_of_relation(&w.pow(n), 0, ball)?;
        let nn = Rational::from_integer(n.into());
        let real = fill_real_in(&ctx, &z)?.value / &nn;
        let integral = match int_budget {
            Some(budget) => Some(fill_int_in(&ctx, &z, budget)?.value / &nn),
            None => None,
        };
        out.push(StableRow { n, real, integral });
    }
    Ok(out)
}
