//! Built-in presentations with matched oracles.

use std::sync::Arc;

use super::{parse_presentation, HeisenbergOracle, Oracle, OracleKind, Presentation};

pub const NAMES: [&str; 4] = ["z2", "free2", "surface2", "heisenberg"];

fn build(text: &str, kind: OracleKind) -> (Presentation, Oracle) {
    let p = parse_presentation(text).expect("built-in presentation parses");
    let o = Oracle::new(kind, &p).expect("built-in oracle matches");
    (p, o)
}

/// `Z^2 = <a, b | [a, b]>` with the abelian oracle.
pub fn z2() -> (Presentation, Oracle) {
    build("gens a b ; rels a b a^-1 b^-1", OracleKind::Abelianized)
}

/// The free group on `a, b`.
pub fn free2() -> (Presentation, Oracle) {
    build("gens a b", OracleKind::FreeGroup)
}

/// Genus-2 surface group with Dehn's algorithm.
pub fn surface2() -> (Presentation, Oracle) {
    build(
        "gens a1 b1 a2 b2 ; rels a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1",
        OracleKind::DehnSmallCancellation,
    )
}

/// Discrete Heisenberg group with the `a^i b^j c^k` normal form.
pub fn heisenberg() -> (Presentation, Oracle) {
    build(
        "gens a b c ; rels a b a^-1 b^-1 c^-1 ; a c a^-1 c^-1 ; b c b^-1 c^-1",
        OracleKind::Extension(Arc::new(HeisenbergOracle::new(0, 1, 2))),
    )
}

pub fn by_name(name: &str) -> Option<(Presentation, Oracle)> {
    match name {
        "z2" => Some(z2()),
        "free2" => Some(free2()),
        "surface2" => Some(surface2()),
        "heisenberg" => Some(heisenberg()),
        _ => None,
    }
}
