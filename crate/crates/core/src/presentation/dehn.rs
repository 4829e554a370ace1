//! Dehn's algorithm for C'(1/6) presentations.

use super::oracle::{AbelianOracle, KeyedWords, NormalForm};
use super::parse::Presentation;
use super::word::{Letter, Word};
use super::PresentationError;

#[derive(Debug)]
pub struct DehnOracle {
    num_gens: usize,
    /// All cyclic rotations of every relator and its inverse, deduplicated.
    symmetrized: Vec<Vec<Letter>>,
    abelian: AbelianOracle,
}

/// Cyclic rotations of relators and their inverses.
pub fn symmetrized_closure(p: &Presentation) -> Vec<Vec<Letter>> {
    let mut out: Vec<Vec<Letter>> = Vec::new();
    for r in p.relators() {
        for w in [r.clone(), r.invert()] {
            for k in 0..w.len() {
                let rot = w.rotate(k).into_letters();
                if !out.contains(&rot) {
                    out.push(rot);
                }
            }
        }
    }
    out.sort();
    out
}

fn common_prefix(u: &[Letter], v: &[Letter]) -> usize {
    u.iter().zip(v).take_while(|(x, y)| x == y).count()
}

/// Longest piece found, as `(piece length, relator length)` of a violating pair,
/// or `None` when the presentation satisfies C'(1/6).
pub fn small_cancellation_violation(p: &Presentation) -> Option<(usize, usize)> {
    let sym = symmetrized_closure(p);
    for (i, u) in sym.iter().enumerate() {
        for v in &sym[i + 1..] {
            let piece = common_prefix(u, v);
            let shorter = u.len().min(v.len());
            if 6 * piece >= shorter {
                return Some((piece, shorter));
            }
        }
    }
    None
}

impl DehnOracle {
    pub fn new(p: &Presentation) -> Result<Self, PresentationError> {
        if let Some((piece, len)) = small_cancellation_violation(p) {
            return Err(PresentationError::NotSmallCancellation { piece, len });
        }
        Ok(DehnOracle {
            num_gens: p.num_generators(),
            symmetrized: symmetrized_closure(p),
            abelian: AbelianOracle::new(p),
        })
    }

    /// Replaces more-than-half relator subwords by the shorter complement until
    /// none remain. The result is empty iff the input is trivial.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let mut cur = w.free_reduce().into_letters();
        'outer: loop {
            for start in 0..cur.len() {
                for r in &self.symmetrized {
                    let k = common_prefix(&cur[start..], r);
                    if 2 * k > r.len() {
                        // cur[start..start+k] = r[..k] = (r[k..])^-1
                        let replacement: Vec<Letter> = r[k..].iter().rev().map(|l| l.inverse()).collect();
                        let mut next = cur[..start].to_vec();
                        next.extend(replacement);
                        next.extend_from_slice(&cur[start + k..]);
                        cur = Word::new(next).free_reduce().into_letters();
                        continue 'outer;
                    }
                }
            }
            return Word::new(cur);
        }
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.dehn_reduce(&u.join(&v.invert())).is_empty()
    }
}

impl NormalForm for DehnOracle {
    fn name(&self) -> &str {
        "dehn"
    }

    fn is_identity(&self, w: &Word) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    /// Shortlex-least geodesic, found by a layered search bounded by the
    /// length of the Dehn-reduced word. Cost grows with the ball of that radius.
    fn normal_form(&self, w: &Word) -> Word {
        let target = self.dehn_reduce(w);
        if target.len() <= 1 {
            return target;
        }
        let target_key = self.element_key(&target);
        let mut words: Vec<Word> = vec![Word::empty()];
        let mut index = KeyedWords::default();
        index.insert(self.element_key(&Word::empty()), 0);
        let mut layer: Vec<usize> = vec![0];
        for _ in 0..target.len() {
            let mut next = Vec::new();
            for &id in &layer {
                let base = words[id].clone();
                for code in 0..2 * self.num_gens {
                    let l = Letter::from_code(code);
                    if base.letters().last().is_some_and(|&t| t.is_inverse_of(l)) {
                        continue;
                    }
                    let mut cand = base.clone();
                    cand.push(l);
                    let key = self.element_key(&cand);
                    if index.candidates(&key).iter().any(|&j| self.equal(&words[j], &cand)) {
                        continue;
                    }
                    if key == target_key && self.equal(&cand, &target) {
                        return cand;
                    }
                    index.insert(key, words.len());
                    next.push(words.len());
                    words.push(cand);
                }
            }
            layer = next;
        }
        // Unreachable for a correct C'(1/6) presentation: the target has length
        // at most its Dehn-reduced length.
        target
    }

    fn element_key(&self, w: &Word) -> Vec<i64> {
        self.abelian.coordinates(w)
    }

    fn key_is_exact(&self) -> bool {
        false
    }
}
