use std::collections::HashSet;
use std::fmt;

use super::word::{Letter, Word};
use super::PresentationError;

/// Exponents in `a^k` are expanded eagerly, so they are capped.
pub const MAX_EXPONENT: i64 = 1_000_000;

/// A finite presentation `<S | R>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates names and cyclically reduces every relator.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for name in &generators {
            if name.is_empty() || !is_identifier(name) {
                return Err(PresentationError::BadGeneratorName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let mut reduced = Vec::with_capacity(relators.len());
        for (i, r) in relators.into_iter().enumerate() {
            if let Some(g) = r.max_gen() {
                if g >= generators.len() {
                    return Err(PresentationError::GeneratorOutOfRange { relator: i, gen: g });
                }
            }
            let r = r.cyclic_reduce();
            if r.is_empty() {
                return Err(PresentationError::EmptyRelator { index: i, line: None });
            }
            reduced.push(r);
        }
        Ok(Presentation {
            generators,
            relators: reduced,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Renders a word with this presentation's generator names.
    pub fn format_word(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }

    /// Parses a single word such as `a b^2 a^-1`.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let mut letters = Vec::new();
        for (col, tok) in tokens_with_columns(text) {
            parse_atom(tok, &self.generators, 1, col, &mut letters)?;
        }
        Ok(Word::new(letters))
    }

    /// Canonical one-line text form; parsing it yields an equal presentation.
    pub fn canonical_text(&self) -> String {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        format!("gens {} ; rels {}", self.generators.join(" "), rels.join(" ; "))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() || c == ';' {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
            if c == ';' {
                out.push((i, &line[i..i + 1]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t))
}

fn parse_atom(
    tok: &str,
    gens: &[String],
    line: usize,
    col: usize,
    out: &mut Vec<Letter>,
) -> Result<(), PresentationError> {
    let (name, exp) = match tok.split_once('^') {
        Some((name, e)) => {
            let k: i64 = e.parse().map_err(|_| PresentationError::Syntax {
                line,
                col,
                msg: format!("bad exponent in `{tok}`"),
            })?;
            if k.abs() > MAX_EXPONENT {
                return Err(PresentationError::Syntax {
                    line,
                    col,
                    msg: format!("exponent {k} exceeds {MAX_EXPONENT}"),
                });
            }
            (name, k)
        }
        None => (tok, 1),
    };
    if !is_identifier(name) {
        return Err(PresentationError::Syntax {
            line,
            col,
            msg: format!("expected generator, found `{tok}`"),
        });
    }
    let gen = gens
        .iter()
        .position(|g| g == name)
        .ok_or_else(|| PresentationError::UnknownGenerator {
            name: name.to_string(),
            line,
            col,
        })?;
    let letter = if exp >= 0 { Letter::pos(gen) } else { Letter::neg(gen) };
    out.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
    Ok(())
}

#[derive(PartialEq)]
enum Section {
    None,
    Gens,
    Rels,
}

/// Parses the line-oriented `gens ... rels ...` format.
///
/// `;` separates relators; a newline also ends the current relator. Comments
/// run from `#` to end of line.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut section = Section::None;
    let mut gens: Vec<String> = Vec::new();
    let mut seen_gens = false;
    // (letters, line of first atom)
    let mut rels: Vec<(Vec<Letter>, usize)> = Vec::new();
    let mut current: Option<(Vec<Letter>, usize)> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("");
        for (col, tok) in tokens_with_columns(line) {
            match tok {
                "gens" => {
                    if seen_gens {
                        return Err(PresentationError::Syntax {
                            line: line_no,
                            col,
                            msg: "duplicate `gens` section".into(),
                        });
                    }
                    seen_gens = true;
                    section = Section::Gens;
                }
                "rels" => {
                    if !seen_gens {
                        return Err(PresentationError::Syntax {
                            line: line_no,
                            col,
                            msg: "`rels` before `gens`".into(),
                        });
                    }
                    section = Section::Rels;
                }
                ";" => {
                    if section == Section::Rels {
                        if let Some(r) = current.take() {
                            rels.push(r);
                        }
                    }
                }
                _ => match section {
                    Section::None => {
                        return Err(PresentationError::Syntax {
                            line: line_no,
                            col,
                            msg: format!("expected `gens`, found `{tok}`"),
                        })
                    }
                    Section::Gens => {
                        if !is_identifier(tok) {
                            return Err(PresentationError::Syntax {
                                line: line_no,
                                col,
                                msg: format!("bad generator name `{tok}`"),
                            });
                        }
                        if gens.iter().any(|g| g == tok) {
                            return Err(PresentationError::DuplicateGenerator(tok.to_string()));
                        }
                        gens.push(tok.to_string());
                    }
                    Section::Rels => {
                        let cur = current.get_or_insert_with(|| (Vec::new(), line_no));
                        parse_atom(tok, &gens, line_no, col, &mut cur.0)?;
                    }
                },
            }
        }
        if section == Section::Rels {
            if let Some(r) = current.take() {
                rels.push(r);
            }
        }
    }
    if !seen_gens {
        return Err(PresentationError::Syntax {
            line: 1,
            col: 1,
            msg: "missing `gens` section".into(),
        });
    }
    let mut words = Vec::with_capacity(rels.len());
    for (i, (letters, line)) in rels.into_iter().enumerate() {
        let w = Word::new(letters).cyclic_reduce();
        if w.is_empty() {
            return Err(PresentationError::EmptyRelator {
                index: i,
                line: Some(line),
            });
        }
        words.push(w);
    }
    Presentation::new(gens, words)
}
