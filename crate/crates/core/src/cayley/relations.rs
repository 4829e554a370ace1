use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CayleyBall, CayleyError, VertexId};
use crate::presentation::{Letter, Word};

/// Default cap on depth-first nodes visited during exhaustive enumeration.
pub const DEFAULT_WALK_CAP: u64 = 200_000_000;

/// How relations are drawn from a ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every class of closed reduced walks once.
    Exhaustive,
    /// Loops cut from a seeded loop-erased random walk.
    Sample { count: usize, seed: u64 },
}

impl EnumerationMode {
    /// Parses `exhaustive` or `sample:COUNT:SEED`.
    pub fn parse(s: &str) -> Option<Self> {
        if s == "exhaustive" {
            return Some(EnumerationMode::Exhaustive);
        }
        let rest = s.strip_prefix("sample:")?;
        let (count, seed) = rest.split_once(':')?;
        Some(EnumerationMode::Sample {
            count: count.parse().ok()?,
            seed: seed.parse().ok()?,
        })
    }
}

impl std::fmt::Display for EnumerationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EnumerationMode::Exhaustive => f.write_str("exhaustive"),
            EnumerationMode::Sample { count, seed } => write!(f, "sample:{count}:{seed}"),
        }
    }
}

/// Relations found in a ball: cyclically reduced words read as closed walks at
/// the identity, one per class under rotation and inversion.
#[derive(Clone, Debug, Default)]
pub struct RelationSet {
    pub relations: Vec<Word>,
    /// Sampling stopped before reaching the requested count.
    pub partial: bool,
}

/// Enumerates relations of length `<= max_len` whose walk from the identity stays in the ball.
///
/// Walks are confined to the ball, so a relation whose walk leaves it is never
/// produced. Output is sorted by length, then lexicographically.
pub fn enumerate_relations(
    ball: &CayleyBall,
    max_len: usize,
    mode: EnumerationMode,
) -> Result<RelationSet, CayleyError> {
    enumerate_relations_with_cap(ball, max_len, mode, DEFAULT_WALK_CAP)
}

pub fn enumerate_relations_with_cap(
    ball: &CayleyBall,
    max_len: usize,
    mode: EnumerationMode,
    walk_cap: u64,
) -> Result<RelationSet, CayleyError> {
    let mut set = match mode {
        EnumerationMode::Exhaustive => exhaustive(ball, max_len, walk_cap)?,
        EnumerationMode::Sample { count, seed } => sample(ball, max_len, count, seed, walk_cap),
    };
    set.relations
        .sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(set)
}

struct Search<'a> {
    ball: &'a CayleyBall,
    max_len: usize,
    letters: Vec<Letter>,
    seen: HashSet<Word>,
    out: Vec<Word>,
    visited: u64,
    cap: u64,
}

impl Search<'_> {
    fn dfs(&mut self, v: VertexId) -> Result<(), CayleyError> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(CayleyError::WalkBudget { cap: self.cap });
        }
        let depth = self.letters.len();
        if depth > 0 && v == 0 {
            let w = Word::new(self.letters.clone());
            if w.is_cyclically_reduced() && self.seen.insert(w.cyclic_class_key()) {
                self.out.push(w);
            }
        }
        if depth == self.max_len {
            return Ok(());
        }
        let remaining = self.max_len - depth - 1;
        for code in 0..2 * self.ball.num_generators() {
            let l = Letter::from_code(code);
            if self.letters.last().is_some_and(|&t| t.is_inverse_of(l)) {
                continue;
            }
            if let Some(u) = self.ball.step(v, l) {
                if self.ball.length(u) <= remaining {
                    self.letters.push(l);
                    self.dfs(u)?;
                    self.letters.pop();
                }
            }
        }
        Ok(())
    }
}

fn exhaustive(ball: &CayleyBall, max_len: usize, cap: u64) -> Result<RelationSet, CayleyError> {
    let mut s = Search {
        ball,
        max_len,
        letters: Vec::new(),
        seen: HashSet::new(),
        out: Vec::new(),
        visited: 0,
        cap,
    };
    s.dfs(0)?;
    Ok(RelationSet {
        relations: s.out,
        partial: false,
    })
}

fn sample(ball: &CayleyBall, max_len: usize, count: usize, seed: u64, cap: u64) -> RelationSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut path: Vec<VertexId> = vec![0];
    let mut letters: Vec<Letter> = Vec::new();
    let np = ball.num_generators();
    let mut steps = 0u64;
    while out.len() < count && steps < cap {
        steps += 1;
        let v = *path.last().unwrap();
        let moves: Vec<(Letter, VertexId)> = (0..2 * np)
            .filter_map(|c| {
                let l = Letter::from_code(c);
                ball.step(v, l).map(|u| (l, u))
            })
            .collect();
        if moves.is_empty() {
            break;
        }
        let (l, u) = moves[rng.gen_range(0..moves.len())];
        letters.push(l);
        match path.iter().position(|&x| x == u) {
            Some(i) => {
                // erase the loop path[i] -> ... -> u
                let loop_word = Word::new(letters[i..].to_vec());
                path.truncate(i + 1);
                letters.truncate(i);
                if loop_word.len() <= max_len
                    && loop_word.is_cyclically_reduced()
                    && ball.walk(0, &loop_word).is_some_and(|p| *p.last().unwrap() == 0)
                    && seen.insert(loop_word.cyclic_class_key())
                {
                    out.push(loop_word);
                }
            }
            None => path.push(u),
        }
        if path.len() > 4 * (ball.radius() + 1) * (max_len + 1) {
            path.truncate(1);
            letters.clear();
        }
    }
    RelationSet {
        partial: out.len() < count,
        relations: out,
    }
}
