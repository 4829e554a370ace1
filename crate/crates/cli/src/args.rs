use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "cofill",
    version,
    about = "Filling and cofilling invariants of finitely presented groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Built-in group: z2, free2, surface2, heisenberg.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Presentation file in `gens ... rels ...` form; `-` reads stdin. Stdin is
    /// also used when neither this nor --group is given.
    #[arg(long, global = true)]
    pub presentation: Option<PathBuf>,
    /// Word-problem oracle for a presentation file.
    #[arg(long, global = true, value_enum, default_value_t = OracleChoice::Auto)]
    pub oracle: OracleChoice,
    #[arg(long, global = true, default_value_t = 3)]
    pub radius: usize,
    #[arg(long, global = true, default_value_t = 8)]
    pub max_len: usize,
    /// `exhaustive` or `sample:COUNT:SEED`.
    #[arg(long, global = true, default_value = "exhaustive")]
    pub mode: String,
    /// Output format; tables default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Branch-and-bound node budget for integral fills.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub budget: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write the run manifest here; defaults to `<out>.manifest.json`, or
    /// stderr when the result goes to stdout.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleChoice {
    /// Free group without relators, exponent sums when every pair of
    /// generators has a commutator relator, else small cancellation (the
    /// presentation must be C'(1/6)).
    Auto,
    Free,
    /// Exponent sums; correct only for abelian groups.
    Abelian,
    Dehn,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Enumerate the Cayley ball.
    Ball,
    /// Minimal filling of the relator cycle of a word.
    Fill {
        #[arg(long)]
        word: String,
        /// Integral filling by branch and bound.
        #[arg(long)]
        integral: bool,
    },
    /// Homological Dehn function table.
    Dehn {
        #[arg(long)]
        n: usize,
        /// Use real fills instead of integral ones.
        #[arg(long)]
        real: bool,
    },
    /// Cofilling function table.
    Cof {
        #[arg(long)]
        n: usize,
    },
    /// Compare the filling with its dual cochain program.
    DualCheck {
        #[arg(long)]
        word: String,
        /// Bound on the cochain over each cell.
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    /// Find a vertex function m with |alpha + dm| <= F on every edge.
    Primitive(CocycleArgs),
    /// Check the relation inequality on enumerated relations.
    CheckIi(CocycleArgs),
    /// Run both sides of the bounded-primitive equivalence.
    Thm4(CocycleArgs),
    /// Bounded primitive of a cochain on a finite complex.
    ComplexPrimitive(ComplexArgs),
    /// Re-run a manifest and compare output bytes.
    Replay { manifest_file: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Ball => "ball",
            Command::Fill { .. } => "fill",
            Command::Dehn { .. } => "dehn",
            Command::Cof { .. } => "cof",
            Command::DualCheck { .. } => "dual-check",
            Command::Primitive(_) => "primitive",
            Command::CheckIi(_) => "check-ii",
            Command::Thm4(_) => "thm4",
            Command::ComplexPrimitive(_) => "complex-primitive",
            Command::Replay { .. } => "replay",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CocycleArgs {
    /// Edge data as JSON `[[vertex-word, generator, "p/q"], ...]`.
    #[arg(long, conflicts_with_all = ["winding", "random_seed"])]
    pub alpha: Option<PathBuf>,
    /// alpha(g, first generator) = exponent sum of the second generator in g.
    #[arg(long)]
    pub winding: bool,
    /// Seeded coboundary-plus-noise instance (also draws F unless given).
    #[arg(long, conflicts_with = "winding")]
    pub random_seed: Option<u64>,
    /// Bounds as JSON `{"vertex-index": "p/q" | "inf"}`; unlisted vertices
    /// take --bound-const.
    #[arg(long)]
    pub bound: Option<PathBuf>,
    /// Constant bound, `p/q` or `inf`.
    #[arg(long)]
    pub bound_const: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct ComplexArgs {
    /// Complex as JSON `{"dims": [...], "boundaries": {"1": [[row, col, val], ...]}}`.
    #[arg(long, required_unless_present = "octahedron")]
    pub complex: Option<PathBuf>,
    /// Use the octahedral 2-sphere.
    #[arg(long, conflicts_with = "complex")]
    pub octahedron: bool,
    /// Degree of the cochain u.
    #[arg(long, default_value_t = 2)]
    pub q: usize,
    /// u as JSON `{"cell-index": "p/q"}`.
    #[arg(long, required_unless_present = "random_seed")]
    pub cochain: Option<PathBuf>,
    /// Seeded exact cochain u = d t0; the default bound is the sup of |t0|.
    #[arg(long, conflicts_with = "cochain")]
    pub random_seed: Option<u64>,
    /// Bounds on (q-1)-cells as JSON `{"cell-index": "p/q" | "inf"}`.
    #[arg(long)]
    pub bound: Option<PathBuf>,
    /// Constant bound, `p/q` or `inf`.
    #[arg(long)]
    pub bound_const: Option<String>,
}
