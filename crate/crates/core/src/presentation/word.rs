use std::cmp::Ordering;
use std::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    /// `+1` or `-1`.
    pub sign: i8,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, sign: 1 }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, sign: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.gen == other.gen && self.sign == -other.sign
    }

    /// Position in the alphabet `s0 < s0^-1 < s1 < s1^-1 < ...`.
    pub fn code(self) -> usize {
        2 * self.gen + usize::from(self.sign < 0)
    }

    pub fn from_code(code: usize) -> Self {
        Letter {
            gen: code / 2,
            sign: if code.is_multiple_of(2) { 1 } else { -1 },
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code().cmp(&other.code())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A word in the free group on the generators, stored as signed generator indices.
///
/// Words compare lexicographically by letter code, which is the order used for
/// every tie-break in the crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from `(generator, exponent)` pairs, expanding powers.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(gen, k) in powers {
            let letter = if k >= 0 { Letter::pos(gen) } else { Letter::neg(gen) };
            letters.extend(std::iter::repeat_n(letter, k.unsigned_abs() as usize));
        }
        Word(letters).free_reduce()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| !p[0].is_inverse_of(p[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&f), Some(&l)) if self.0.len() > 1 => !f.is_inverse_of(l),
                _ => true,
            }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&top) if top.is_inverse_of(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// Concatenation followed by free reduction at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.free_reduce().0;
        for &l in &other.0 {
            match out.last() {
                Some(&top) if top.is_inverse_of(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// Plain juxtaposition, no reduction.
    pub fn join(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Unreduced `n`-fold power.
    pub fn pow(&self, n: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * n);
        for _ in 0..n {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// Free reduction followed by stripping conjugating letters from both ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().0;
        let (mut lo, mut hi) = (0usize, w.len());
        while hi - lo >= 2 && w[lo].is_inverse_of(w[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(w[lo..hi].to_vec())
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Lexicographically least word among all rotations of `self` and of its inverse.
    pub fn cyclic_class_key(&self) -> Word {
        let inv = self.invert();
        let n = self.0.len();
        (0..n.max(1))
            .flat_map(|k| [self.rotate(k), inv.rotate(k)])
            .min()
            .unwrap_or_default()
    }

    /// Exponent sum per generator.
    pub fn exponent_sums(&self, num_gens: usize) -> Vec<i64> {
        let mut v = vec![0i64; num_gens];
        for l in &self.0 {
            v[l.gen] += i64::from(l.sign);
        }
        v
    }

    /// Renders with the given generator names, e.g. `a b a^-1 b^-1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(l.gen) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "s{}", l.gen)?,
            }
            if l.sign < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}
