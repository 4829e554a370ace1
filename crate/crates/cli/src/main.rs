//! `cofill`: filling norms, growth tables and bounded primitives from the
//! command line. Results go to stdout or `--out`. Every run also writes a
//! manifest recording how to reproduce it, and `cofill replay` checks that it
//! does.

mod args;
mod manifest;
mod run;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use manifest::{reproducible_args, RunManifest};
use run::{run, sha256_hex, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

fn init_threads() {
    let n = std::env::var("COFILL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1);
    // only fails if a pool already exists
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
}

fn write_body(path: Option<&Path>, body: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| e.to_string())
        }
    }
}

/// `--manifest`, else next to `--out`; `None` means results went to stdout
/// and the manifest goes to stderr.
fn manifest_path(cli: &Cli) -> Option<PathBuf> {
    let g = &cli.global;
    g.manifest.clone().or_else(|| {
        g.out.as_ref().map(|o| {
            let mut s = o.clone().into_os_string();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    })
}

fn execute(cli: &Cli, argv: &[String]) -> i32 {
    let start = Instant::now();
    let outcome = match run(cli, None) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };
    let elapsed = start.elapsed().as_millis();
    if let Err(e) = write_body(cli.global.out.as_deref(), &outcome.body) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let m = RunManifest::new(cli, argv, &outcome, elapsed);
    match manifest_path(cli) {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, m.to_json()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => eprintln!("manifest: {}", m.to_compact_json()),
    }
    outcome.code
}

fn replay(path: &Path, out: Option<&Path>) -> i32 {
    let m = match RunManifest::load(path) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    for (input, hash) in &m.inputs {
        match std::fs::read(input) {
            Ok(bytes) if sha256_hex(&bytes) == *hash => {}
            Ok(_) => {
                eprintln!("error: input {input} changed since the manifest was written");
                return EXIT_USAGE;
            }
            Err(e) => {
                eprintln!("error: cannot read input {input}: {e}");
                return EXIT_USAGE;
            }
        }
    }
    let cli = match Cli::try_parse_from(std::iter::once("cofill".to_string()).chain(m.argv.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: manifest arguments do not parse: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = match run(&cli, m.presentation.as_deref()) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };
    if let Err(e) = write_body(out, &outcome.body) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    let actual = sha256_hex(outcome.body.as_bytes());
    if actual == m.output_sha256 && outcome.code == m.exit_code {
        eprintln!("replay: identical output ({actual})");
        EXIT_OK
    } else {
        eprintln!(
            "replay: output differs (expected {} exit {}, got {actual} exit {})",
            m.output_sha256, m.exit_code, outcome.code
        );
        EXIT_NEGATIVE
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    let code = match &cli.command {
        Command::Replay { manifest_file } => replay(manifest_file, cli.global.out.as_deref()),
        _ => {
            let argv: Vec<String> = std::env::args().skip(1).collect();
            execute(&cli, &reproducible_args(&argv))
        }
    };
    ExitCode::from(code as u8)
}
