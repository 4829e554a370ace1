use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::args::Cli;
use crate::run::{sha256_hex, Outcome};

/// Everything needed to reproduce one run.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Arguments after the program name, minus `--out` and `--manifest`.
    pub argv: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    pub seed: Option<u64>,
    /// Canonical presentation text; replay uses it instead of the original
    /// file or stdin.
    pub presentation: Option<String>,
    pub presentation_sha256: Option<String>,
    /// sha256 of every input file read, by path.
    pub inputs: BTreeMap<String, String>,
    pub exit_code: i32,
    pub output_sha256: String,
    pub wall_time_ms: u128,
}

/// Drops output-location flags, which do not affect the result.
pub fn reproducible_args(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv {
        if skip {
            skip = false;
            continue;
        }
        if a == "--out" || a == "--manifest" {
            skip = true;
            continue;
        }
        if a.starts_with("--out=") || a.starts_with("--manifest=") {
            continue;
        }
        out.push(a.clone());
    }
    out
}

impl RunManifest {
    pub fn new(cli: &Cli, argv: &[String], outcome: &Outcome, wall_time_ms: u128) -> Self {
        let g = &cli.global;
        let mut parameters = BTreeMap::new();
        parameters.insert("radius".into(), g.radius.to_string());
        parameters.insert("max_len".into(), g.max_len.to_string());
        parameters.insert("mode".into(), g.mode.clone());
        parameters.insert("budget".into(), g.budget.to_string());
        if let Some(f) = g.format {
            parameters.insert("format".into(), format!("{f:?}").to_lowercase());
        }
        if let Some(name) = &g.group {
            parameters.insert("group".into(), name.clone());
        }
        RunManifest {
            tool: "cofill".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: cli.command.name().into(),
            argv: argv.to_vec(),
            parameters,
            seed: outcome.seed,
            presentation_sha256: outcome.presentation.as_ref().map(|t| sha256_hex(t.as_bytes())),
            presentation: outcome.presentation.clone(),
            inputs: outcome.inputs.clone(),
            exit_code: outcome.code,
            output_sha256: sha256_hex(outcome.body.as_bytes()),
            wall_time_ms,
        }
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn to_compact_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}
