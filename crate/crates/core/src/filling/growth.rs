use rayon::prelude::*;

use num_traits::Zero;

use super::context::FillContext;
use super::fill::{fill_int_in, fill_real_in, FillReport};
use super::FillError;
use crate::cayley::{enumerate_relations, CayleyBall, EnumerationMode};
use crate::foxcalc::cycle_of_relation;
use crate::presentation::{Oracle, Presentation, Word};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthKind {
    /// `sup fill_real(I_w) / |w|`.
    Cof,
    /// `sup fill_int(I_w)`.
    DehnAb,
    /// `sup fill_real(I_w)`.
    DehnAbReal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    pub value: Rational,
    pub witness: Option<String>,
    pub radius: usize,
    pub truncated: bool,
}

/// `sup` of a filling quantity over relations of length at most `n`, for each `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthTable {
    pub kind: GrowthKind,
    pub rows: Vec<GrowthRow>,
    pub mode: EnumerationMode,
    /// Sampling stopped short of its target count.
    pub partial: bool,
    /// Relations with no filling inside the ball; they do not enter the sup.
    pub unfilled: Vec<String>,
    pub relations_checked: usize,
}

impl GrowthTable {
    /// `n,value_num,value_den,witness,radius,truncated` with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,value_num,value_den,witness,radius,truncated\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n,
                r.value.numer(),
                r.value.denom(),
                r.witness.as_deref().unwrap_or(""),
                r.radius,
                r.truncated
            ));
        }
        s
    }

    pub fn value_at(&self, n: usize) -> Option<&Rational> {
        self.rows.iter().find(|r| r.n == n).map(|r| &r.value)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GrowthOptions {
    /// Branch-and-bound node budget per integral fill.
    pub budget: u64,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        GrowthOptions { budget: 10_000 }
    }
}

fn evaluate(kind: GrowthKind, ctx: &FillContext, w: &Word, opts: GrowthOptions) -> Result<FillReport, FillError> {
    let z = cycle_of_relation(w, 0, ctx.ball())?;
    match kind {
        GrowthKind::Cof | GrowthKind::DehnAbReal => fill_real_in(ctx, &z),
        GrowthKind::DehnAb => {
            // the integral fill's truncation flag follows the real relaxation
            let mut rep = fill_int_in(ctx, &z, opts.budget)?;
            rep.truncated = fill_real_in(ctx, &z)?.truncated;
            Ok(rep)
        }
    }
}

/// Growth table on an existing ball, rows `n = 1..=n_max`.
pub fn growth_table(
    kind: GrowthKind,
    ball: &CayleyBall,
    n_max: usize,
    mode: EnumerationMode,
    opts: GrowthOptions,
) -> Result<GrowthTable, FillError> {
    let set = enumerate_relations(ball, n_max, mode)?;
    let ctx = FillContext::new(ball);
    let results: Vec<Result<FillReport, FillError>> = set
        .relations
        .par_iter()
        .map(|w| evaluate(kind, &ctx, w, opts))
        .collect();
    let mut scored: Vec<(usize, Rational, &Word, bool)> = Vec::new();
    let mut unfilled = Vec::new();
    for (w, res) in set.relations.iter().zip(results) {
        match res {
            Ok(rep) => {
                let value = match kind {
                    GrowthKind::Cof => rep.value / Rational::from_integer(w.len().into()),
                    _ => rep.value,
                };
                scored.push((w.len(), value, w, rep.truncated));
            }
            Err(FillError::NotABoundary { .. }) | Err(FillError::EscapesBall { .. }) => {
                unfilled.push(ball.format_word(w))
            }
            Err(e) => return Err(e),
        }
    }
    let mut rows = Vec::with_capacity(n_max);
    let mut best: Option<(Rational, &Word, bool)> = None;
    let mut idx = 0;
    for n in 1..=n_max {
        while idx < scored.len() && scored[idx].0 <= n {
            let (_, v, w, t) = &scored[idx];
            if best.as_ref().is_none_or(|(b, _, _)| v > b) {
                best = Some((v.clone(), w, *t));
            }
            idx += 1;
        }
        rows.push(match &best {
            Some((v, w, t)) => GrowthRow {
                n,
                value: v.clone(),
                witness: Some(ball.format_word(w)),
                radius: ball.radius(),
                truncated: *t,
            },
            None => GrowthRow {
                n,
                value: Rational::zero(),
                witness: None,
                radius: ball.radius(),
                truncated: false,
            },
        });
    }
    Ok(GrowthTable {
        kind,
        rows,
        mode,
        partial: set.partial,
        unfilled,
        relations_checked: set.relations.len(),
    })
}

/// The homological Dehn function `delta^ab(n)`, with integral fills.
pub fn dehn_ab(
    p: &Presentation,
    oracle: &Oracle,
    n: usize,
    radius: usize,
    mode: EnumerationMode,
    opts: GrowthOptions,
) -> Result<GrowthTable, FillError> {
    let ball = CayleyBall::build(p, oracle, radius)?;
    growth_table(GrowthKind::DehnAb, &ball, n, mode, opts)
}

/// The cofilling function `Cof(n) = sup fill_real(I_w) / |w|`.
pub fn cof(
    p: &Presentation,
    oracle: &Oracle,
    n: usize,
    radius: usize,
    mode: EnumerationMode,
    opts: GrowthOptions,
) -> Result<GrowthTable, FillError> {
    let ball = CayleyBall::build(p, oracle, radius)?;
    growth_table(GrowthKind::Cof, &ball, n, mode, opts)
}
