use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use cofill_core::cayley::{CayleyBall, CayleyError, EnumerationMode};
use cofill_core::filling::{
    dual_norm_check, fill_int, fill_real, growth_table, FillError, FillReport, GrowthKind, GrowthOptions, GrowthTable,
};
use cofill_core::foxcalc::{ball_cells, cycle_of_relation, ChainError, EdgeCochain, FillCertificate};
use cofill_core::presentation::{library, parse_presentation, Letter, Oracle, OracleKind, Presentation, Word};
use cofill_core::primitive::{
    check_condition_ii, check_thm4_equivalence, cochain_from_json, complex_primitive, find_primitive,
    random_exact_cochain, random_instance, relator_constant, BoundFunction, CocycleData, ComplexOutcome, FiniteComplex,
    PrimitiveError, PrimitiveOutcome, Violation,
};
use cofill_core::ratlp::FarkasCertificate;
use cofill_core::{parse_rational, Error, Rational};
use num_traits::Signed;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::args::{Cli, CocycleArgs, Command, ComplexArgs, Format, OracleChoice};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// What a command produced: the output bytes, the exit code, and what the
/// manifest needs to reproduce it.
pub struct Outcome {
    pub body: String,
    pub code: i32,
    pub seed: Option<u64>,
    pub presentation: Option<String>,
    pub inputs: BTreeMap<String, String>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

macro_rules! core_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        }
    )*};
}
core_from!(
    FillError,
    ChainError,
    CayleyError,
    PrimitiveError,
    cofill_core::presentation::PresentationError
);

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) if e.is_budget() => EXIT_BUDGET,
            CliError::Core(Error::Presentation(_)) => EXIT_USAGE,
            CliError::Core(Error::Primitive(
                PrimitiveError::Json(_) | PrimitiveError::DimensionMismatch(_) | PrimitiveError::NegativeBound(_),
            )) => EXIT_USAGE,
            CliError::Core(Error::Primitive(PrimitiveError::BoundaryNotZero { .. })) => EXIT_USAGE,
            CliError::Core(Error::Chain(ChainError::Json(_) | ChainError::NotARelation(_))) => EXIT_USAGE,
            CliError::Core(_) => EXIT_NEGATIVE,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Core(e) => {
                let hint = match e {
                    Error::Chain(ChainError::WalkEscapesBall { .. }) | Error::Fill(FillError::EscapesBall { .. }) => {
                        "; try a larger --radius"
                    }
                    Error::Cayley(CayleyError::BallTooLarge { .. }) => "; try a smaller --radius",
                    Error::Fill(FillError::Budget { .. }) => "; raise --budget",
                    _ => "",
                };
                format!("{e}{hint}")
            }
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn parse_mode(text: &str) -> Result<EnumerationMode, CliError> {
    EnumerationMode::parse(text).ok_or_else(|| {
        usage(format!(
            "--mode must be `exhaustive` or `sample:COUNT:SEED`, got `{text}`"
        ))
    })
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

fn mode_seed(mode: EnumerationMode) -> Option<u64> {
    match mode {
        EnumerationMode::Sample { seed, .. } => Some(seed),
        EnumerationMode::Exhaustive => None,
    }
}

fn parse_bound_text(text: &str) -> Result<Option<Rational>, CliError> {
    if text == "inf" {
        return Ok(None);
    }
    let v = parse_rational(text).ok_or_else(|| usage(format!("bad rational `{text}`")))?;
    if v.is_negative() {
        return Err(usage(format!("bound `{text}` is negative")));
    }
    Ok(Some(v))
}

fn r(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Whether every pair of generators commutes by some relator, so that the
/// group is abelian and exponent sums solve its word problem.
fn has_all_commutators(p: &Presentation) -> bool {
    let keys: Vec<Word> = p.relators().iter().map(|r| r.cyclic_class_key()).collect();
    let n = p.num_generators();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let c = Word::new(vec![Letter::pos(i), Letter::pos(j), Letter::neg(i), Letter::neg(j)]);
            keys.contains(&c.cyclic_class_key())
        })
    })
}

struct Ctx<'a> {
    cli: &'a Cli,
    /// Presentation text replacing the file or stdin source, from a manifest.
    presentation_text: Option<&'a str>,
    inputs: BTreeMap<String, String>,
    presentation: Option<String>,
}

impl Ctx<'_> {
    fn read_file(&mut self, path: &Path) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        self.inputs
            .insert(path.display().to_string(), sha256_hex(text.as_bytes()));
        Ok(text)
    }

    fn read_json(&mut self, path: &Path) -> Result<Value, CliError> {
        let text = self.read_file(path)?;
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    }

    fn group(&mut self) -> Result<(Presentation, Oracle), CliError> {
        let cli = self.cli;
        let g = &cli.global;
        let (p, o) = if let Some(name) = &g.group {
            library::by_name(name).ok_or_else(|| {
                usage(format!(
                    "unknown group `{name}`; choose z2, free2, surface2 or heisenberg"
                ))
            })?
        } else {
            let text = match (self.presentation_text, &g.presentation) {
                (Some(t), _) => t.to_string(),
                (None, Some(path)) if path.as_os_str() != "-" => self.read_file(path)?,
                (None, _) => {
                    let mut s = String::new();
                    std::io::stdin()
                        .read_to_string(&mut s)
                        .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
                    s
                }
            };
            let p = parse_presentation(&text)?;
            let kind = match g.oracle {
                OracleChoice::Free => OracleKind::FreeGroup,
                OracleChoice::Abelian => OracleKind::Abelianized,
                OracleChoice::Dehn => OracleKind::DehnSmallCancellation,
                OracleChoice::Auto if p.num_relators() == 0 => OracleKind::FreeGroup,
                OracleChoice::Auto if has_all_commutators(&p) => OracleKind::Abelianized,
                OracleChoice::Auto => OracleKind::DehnSmallCancellation,
            };
            let o = Oracle::new(kind, &p).map_err(|e| {
                usage(format!(
                    "{e}; pass --oracle abelian for an abelian group or use a built-in --group"
                ))
            })?;
            (p, o)
        };
        self.presentation = Some(p.canonical_text());
        Ok((p, o))
    }

    fn ball(&mut self) -> Result<(Presentation, CayleyBall), CliError> {
        let (p, o) = self.group()?;
        let ball = CayleyBall::build(&p, &o, self.cli.global.radius)?;
        Ok((p, ball))
    }

    fn format(&self, default: Format) -> Format {
        self.cli.global.format.unwrap_or(default)
    }
}

/// Runs a parsed command. `presentation_text` overrides the presentation
/// source when replaying.
pub fn run(cli: &Cli, presentation_text: Option<&str>) -> Result<Outcome, CliError> {
    let mut ctx = Ctx {
        cli,
        presentation_text,
        inputs: BTreeMap::new(),
        presentation: None,
    };
    let mode = parse_mode(&cli.global.mode)?;
    let (body, code, seed) = match &cli.command {
        Command::Ball => (ball_cmd(&mut ctx)?, EXIT_OK, None),
        Command::Fill { word, integral } => {
            let (b, c) = fill_cmd(&mut ctx, word, *integral)?;
            (b, c, None)
        }
        Command::Dehn { n, real } => {
            let kind = if *real {
                GrowthKind::DehnAbReal
            } else {
                GrowthKind::DehnAb
            };
            (growth_cmd(&mut ctx, kind, *n, mode)?, EXIT_OK, mode_seed(mode))
        }
        Command::Cof { n } => (
            growth_cmd(&mut ctx, GrowthKind::Cof, *n, mode)?,
            EXIT_OK,
            mode_seed(mode),
        ),
        Command::DualCheck { word, lambda } => (dual_cmd(&mut ctx, word, lambda)?, EXIT_OK, None),
        Command::Primitive(a) => (primitive_cmd(&mut ctx, a)?, EXIT_OK, a.random_seed),
        Command::CheckIi(a) => (
            check_ii_cmd(&mut ctx, a, mode)?,
            EXIT_OK,
            a.random_seed.or(mode_seed(mode)),
        ),
        Command::Thm4(a) => {
            let (b, c) = thm4_cmd(&mut ctx, a, mode)?;
            (b, c, a.random_seed.or(mode_seed(mode)))
        }
        Command::ComplexPrimitive(a) => {
            let (b, c) = complex_cmd(&mut ctx, a)?;
            (b, c, a.random_seed)
        }
        Command::Replay { .. } => return Err(usage("replay cannot be nested")),
    };
    Ok(Outcome {
        body,
        code,
        seed,
        presentation: ctx.presentation,
        inputs: ctx.inputs,
    })
}

fn ball_cmd(ctx: &mut Ctx) -> Result<String, CliError> {
    let (_, ball) = ctx.ball()?;
    let mut v = ball.to_json();
    v["num_vertices"] = json!(ball.num_vertices());
    v["num_edges"] = json!(ball.edges().len());
    v["num_cells"] = json!(ball_cells(&ball).len());
    Ok(pretty(&v))
}

fn parse_word(p: &Presentation, text: &str) -> Result<Word, CliError> {
    Ok(p.parse_word(text)?)
}

fn certificate_json(c: &FillCertificate, ball: &CayleyBall) -> Value {
    c.to_json(ball)
}

fn report_json(rep: &FillReport, ball: &CayleyBall, integral: bool) -> Value {
    let mut v = json!({
        "status": "filled",
        "integral": integral,
        "value": r(&rep.value),
        "certificate": certificate_json(&rep.certificate, ball),
        "radius": rep.radius,
        "truncated": rep.truncated,
    });
    if let Some(d) = &rep.dual {
        v["dual"] = d.to_json(ball);
    }
    v
}

fn fill_cmd(ctx: &mut Ctx, word: &str, integral: bool) -> Result<(String, i32), CliError> {
    let (p, ball) = ctx.ball()?;
    let w = parse_word(&p, word)?;
    let z = cycle_of_relation(&w, 0, &ball)?;
    let res = if integral {
        fill_int(&z, &ball, ctx.cli.global.budget)
    } else {
        fill_real(&z, &ball)
    };
    match res {
        Ok(rep) => Ok((pretty(&report_json(&rep, &ball, integral)), EXIT_OK)),
        Err(FillError::NotABoundary { witness, pairing }) => {
            let v = json!({
                "status": "not_a_boundary",
                "pairing": r(&pairing),
                "witness": witness.to_json(&ball),
            });
            Ok((pretty(&v), EXIT_NEGATIVE))
        }
        Err(FillError::Budget { nodes, lower, best }) => {
            let v = json!({
                "status": "budget_exhausted",
                "nodes": nodes,
                "lower": r(&lower),
                "best": best.as_deref().map(r),
            });
            Ok((pretty(&v), EXIT_BUDGET))
        }
        Err(e) => Err(e.into()),
    }
}

fn growth_json(t: &GrowthTable) -> Value {
    let kind = match t.kind {
        GrowthKind::Cof => "cof",
        GrowthKind::DehnAb => "dehn_ab",
        GrowthKind::DehnAbReal => "dehn_ab_real",
    };
    json!({
        "kind": kind,
        "partial": t.partial,
        "relations_checked": t.relations_checked,
        "unfilled": t.unfilled,
        "rows": t.rows.iter().map(|row| json!({
            "n": row.n,
            "value": r(&row.value),
            "witness": row.witness,
            "radius": row.radius,
            "truncated": row.truncated,
        })).collect::<Vec<_>>(),
    })
}

fn growth_cmd(ctx: &mut Ctx, kind: GrowthKind, n: usize, mode: EnumerationMode) -> Result<String, CliError> {
    let (_, ball) = ctx.ball()?;
    let opts = GrowthOptions {
        budget: ctx.cli.global.budget,
    };
    let t = growth_table(kind, &ball, n, mode, opts)?;
    Ok(match ctx.format(Format::Csv) {
        Format::Csv => {
            if !t.unfilled.is_empty() {
                eprintln!(
                    "note: {} relations have no filling in the ball and are excluded; --format json lists them",
                    t.unfilled.len()
                );
            }
            t.to_csv()
        }
        Format::Json => pretty(&growth_json(&t)),
    })
}

fn dual_cmd(ctx: &mut Ctx, word: &str, lambda: &str) -> Result<String, CliError> {
    let (p, ball) = ctx.ball()?;
    let w = parse_word(&p, word)?;
    let bound = parse_bound_text(lambda)?.ok_or_else(|| usage("--lambda must be finite"))?;
    let d = dual_norm_check(&w, &ball, &bound)?;
    Ok(pretty(&json!({
        "primal": r(&d.primal),
        "dual": r(&d.dual),
        "bound": r(&d.bound),
        "agrees": d.agrees(),
        "cochain": d.cochain.to_json(&ball),
    })))
}

fn cocycle_inputs(ctx: &mut Ctx, a: &CocycleArgs, ball: &CayleyBall) -> Result<(CocycleData, BoundFunction), CliError> {
    let n = ball.num_vertices();
    let (cd, drawn) = if let Some(path) = &a.alpha {
        let v = ctx.read_json(path)?;
        (CocycleData::new(EdgeCochain::from_json(&v, ball)?), None)
    } else if a.winding {
        (CocycleData::winding(ball), None)
    } else if let Some(seed) = a.random_seed {
        let (cd, f) = random_instance(ball, seed);
        (cd, Some(f))
    } else {
        return Err(usage("give one of --alpha FILE, --winding or --random-seed N"));
    };
    let default = a.bound_const.as_deref().map(parse_bound_text).transpose()?;
    let f = match (&a.bound, default, drawn) {
        (Some(path), default, _) => {
            let v = ctx.read_json(path)?;
            BoundFunction::from_json(&v, n, default.flatten())?
        }
        (None, Some(c), _) => BoundFunction::new(vec![c; n])?,
        (None, None, Some(f)) => f,
        (None, None, None) => return Err(usage("give --bound FILE or --bound-const VALUE")),
    };
    Ok((cd, f))
}

fn violation_json(v: &Violation, ball: &CayleyBall) -> Value {
    json!({
        "base": ball.format_vertex(v.base),
        "word": ball.format_word(&v.word),
        "lhs": r(&v.lhs),
        "rhs": r(&v.rhs),
    })
}

fn farkas_json(f: &FarkasCertificate) -> Value {
    json!({
        "row_multipliers": f.row_multipliers.iter().map(r).collect::<Vec<_>>(),
        "bound_multipliers": f.bound_multipliers.iter().map(r).collect::<Vec<_>>(),
    })
}

fn primitive_cmd(ctx: &mut Ctx, a: &CocycleArgs) -> Result<String, CliError> {
    let (_, ball) = ctx.ball()?;
    let (cd, f) = cocycle_inputs(ctx, a, &ball)?;
    let v = match find_primitive(&cd, &f, &ball)? {
        PrimitiveOutcome::Feasible(m) => json!({
            "status": "feasible",
            "m": (0..ball.num_vertices()).map(|v| json!([ball.format_vertex(v), r(&m.get(v))])).collect::<Vec<_>>(),
        }),
        PrimitiveOutcome::Infeasible {
            farkas,
            flow,
            pieces,
            violating,
        } => json!({
            "status": "infeasible",
            "farkas": farkas_json(&farkas),
            "flow": flow.to_json(&ball),
            "pieces": pieces.iter().map(|p| json!({
                "coeff": r(&p.coeff),
                "base": ball.format_vertex(p.base),
                "word": ball.format_word(&p.word),
            })).collect::<Vec<_>>(),
            "violating": violating.iter().map(|v| violation_json(v, &ball)).collect::<Vec<_>>(),
        }),
    };
    Ok(pretty(&v))
}

fn check_ii_cmd(ctx: &mut Ctx, a: &CocycleArgs, mode: EnumerationMode) -> Result<String, CliError> {
    let (_, ball) = ctx.ball()?;
    let (cd, f) = cocycle_inputs(ctx, a, &ball)?;
    let rep = check_condition_ii(&cd, &f, &ball, ctx.cli.global.max_len, mode)?;
    Ok(pretty(&json!({
        "relations": rep.relations,
        "walks_checked": rep.walks_checked,
        "partial": rep.partial,
        "violations": rep.violations.iter().map(|v| violation_json(v, &ball)).collect::<Vec<_>>(),
    })))
}

fn thm4_cmd(ctx: &mut Ctx, a: &CocycleArgs, mode: EnumerationMode) -> Result<(String, i32), CliError> {
    let (_, ball) = ctx.ball()?;
    let (cd, f) = cocycle_inputs(ctx, a, &ball)?;
    let rep = check_thm4_equivalence(&cd, &f, &ball, ctx.cli.global.max_len, mode)?;
    let v = json!({
        "primitive_exists": rep.primitive_exists,
        "complete_violation": rep.complete_violation.as_ref().map(|v| violation_json(v, &ball)),
        "enumerated_violations": rep.enumerated_violations,
        "enumeration_partial": rep.enumeration_partial,
        "certificate_ok": rep.certificate_ok,
        "agreement": rep.agreement,
        "truncation_note": rep.truncation_note,
        "relator_constant": relator_constant(&ball).ok(),
    });
    Ok((pretty(&v), if rep.agreement { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn complex_cmd(ctx: &mut Ctx, a: &ComplexArgs) -> Result<(String, i32), CliError> {
    let x = match &a.complex {
        Some(path) => {
            let v = ctx.read_json(path)?;
            FiniteComplex::from_json(&v)?
        }
        None => FiniteComplex::octahedron(),
    };
    if a.q == 0 || a.q >= x.dims().len() {
        return Err(usage(format!(
            "--q must be between 1 and {}",
            x.dims().len().saturating_sub(1)
        )));
    }
    let n = x.num_cells(a.q - 1);
    let (u, drawn) = match (&a.cochain, a.random_seed) {
        (Some(path), _) => {
            let v = ctx.read_json(path)?;
            (cochain_from_json(&v, x.num_cells(a.q))?, None)
        }
        (None, Some(seed)) => {
            let (t0, u) = random_exact_cochain(&x, a.q, seed);
            let sup = t0.iter().map(|t| t.abs()).max().unwrap_or_default();
            (u, Some(sup))
        }
        (None, None) => return Err(usage("give --cochain FILE or --random-seed N")),
    };
    let default = a.bound_const.as_deref().map(parse_bound_text).transpose()?;
    let f = match (&a.bound, default, drawn) {
        (Some(path), default, _) => {
            let v = ctx.read_json(path)?;
            BoundFunction::from_json(&v, n, default.flatten())?
        }
        (None, Some(c), _) => BoundFunction::new(vec![c; n])?,
        (None, None, Some(sup)) => BoundFunction::new(vec![Some(sup); n])?,
        (None, None, None) => return Err(usage("give --bound FILE or --bound-const VALUE")),
    };
    match complex_primitive(&x, a.q, &u, &f) {
        Ok(ComplexOutcome::Feasible(t)) => Ok((
            pretty(&json!({
                "status": "feasible",
                "u": u.iter().map(r).collect::<Vec<_>>(),
                "t": t.iter().map(r).collect::<Vec<_>>(),
            })),
            EXIT_OK,
        )),
        Ok(ComplexOutcome::Infeasible { farkas, .. }) => Ok((
            pretty(&json!({
                "status": "infeasible",
                "u": u.iter().map(r).collect::<Vec<_>>(),
                "farkas": farkas_json(&farkas),
            })),
            EXIT_OK,
        )),
        Err(PrimitiveError::NotExact) => Ok((pretty(&json!({"status": "not_exact"})), EXIT_NEGATIVE)),
        Err(e) => Err(e.into()),
    }
}
