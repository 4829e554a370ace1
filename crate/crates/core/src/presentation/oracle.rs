//! Word-problem oracles.
//!
//! Every higher module treats group elements as opaque canonical words; the
//! oracle is the only place that knows what the group is. New groups plug in
//! by implementing [`NormalForm`] and wrapping it in [`OracleKind::Extension`].

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::dehn::DehnOracle;
use super::parse::Presentation;
use super::word::{Letter, Word};
use super::PresentationError;

/// A solution of the word problem for one presentation.
pub trait NormalForm: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    /// Canonical representative: equal output iff equal group elements.
    fn normal_form(&self, w: &Word) -> Word;

    fn is_identity(&self, w: &Word) -> bool {
        self.normal_form(w).is_empty()
    }

    /// A class function on the group: equal elements give equal keys.
    fn element_key(&self, w: &Word) -> Vec<i64>;

    /// Whether distinct elements are guaranteed distinct keys.
    fn key_is_exact(&self) -> bool {
        true
    }
}

/// The oracle families a caller can request.
#[derive(Clone, Debug)]
pub enum OracleKind {
    FreeGroup,
    Abelianized,
    DehnSmallCancellation,
    FiniteTable(MultiplicationTable),
    Extension(Arc<dyn NormalForm>),
}

/// A validated oracle bound to a presentation.
#[derive(Clone, Debug)]
pub struct Oracle {
    inner: Arc<dyn NormalForm>,
}

impl Oracle {
    pub fn new(kind: OracleKind, p: &Presentation) -> Result<Self, PresentationError> {
        let inner: Arc<dyn NormalForm> = match kind {
            OracleKind::FreeGroup => {
                if p.num_relators() > 0 {
                    return Err(PresentationError::OracleMismatch(
                        "free-group oracle requires a presentation without relators".into(),
                    ));
                }
                Arc::new(FreeGroupOracle {
                    num_gens: p.num_generators(),
                })
            }
            OracleKind::Abelianized => Arc::new(AbelianOracle::new(p)),
            OracleKind::DehnSmallCancellation => Arc::new(DehnOracle::new(p)?),
            OracleKind::FiniteTable(table) => Arc::new(FiniteTableOracle::new(table, p)?),
            OracleKind::Extension(inner) => {
                if let Some((i, _)) = p.relators().iter().enumerate().find(|(_, r)| !inner.is_identity(r)) {
                    return Err(PresentationError::OracleMismatch(format!(
                        "oracle `{}` does not kill relator {i}",
                        inner.name()
                    )));
                }
                inner
            }
        };
        Ok(Oracle { inner })
    }

    pub fn name(&self) -> &str {
        self.inner.name()
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        self.inner.normal_form(w)
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.inner.is_identity(w)
    }

    pub fn element_key(&self, w: &Word) -> Vec<i64> {
        self.inner.element_key(w)
    }

    pub fn key_is_exact(&self) -> bool {
        self.inner.key_is_exact()
    }
}

/// Free reduction is the normal form of a free group.
#[derive(Debug)]
pub struct FreeGroupOracle {
    num_gens: usize,
}

impl NormalForm for FreeGroupOracle {
    fn name(&self) -> &str {
        "free"
    }

    fn normal_form(&self, w: &Word) -> Word {
        w.free_reduce()
    }

    fn element_key(&self, w: &Word) -> Vec<i64> {
        debug_assert!(w.max_gen().is_none_or(|g| g < self.num_gens));
        w.free_reduce().letters().iter().map(|l| l.code() as i64).collect()
    }
}

/// Word problem of the abelianization `Z^p / <exponent vectors of relators>`.
///
/// This is the word problem of the presented group exactly when that group is
/// abelian; the oracle cannot check this and callers pick it accordingly.
#[derive(Debug)]
pub struct AbelianOracle {
    num_gens: usize,
    /// Hermite basis of the relation lattice: (pivot column, row).
    basis: Vec<(usize, Vec<i128>)>,
}

impl AbelianOracle {
    pub fn new(p: &Presentation) -> Self {
        let n = p.num_generators();
        let rows: Vec<Vec<i128>> = p
            .relators()
            .iter()
            .map(|r| r.exponent_sums(n).into_iter().map(i128::from).collect())
            .collect();
        AbelianOracle {
            num_gens: n,
            basis: hermite_rows(rows, n),
        }
    }

    /// Unique coset representative of the exponent vector.
    pub fn coordinates(&self, w: &Word) -> Vec<i64> {
        let mut v: Vec<i128> = w.exponent_sums(self.num_gens).into_iter().map(i128::from).collect();
        for (col, row) in &self.basis {
            let d = row[*col];
            let q = v[*col].div_euclid(d);
            if q != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
        v.into_iter().map(|x| x as i64).collect()
    }
}

/// Row echelon form over the integers with positive pivots.
fn hermite_rows(mut rows: Vec<Vec<i128>>, ncols: usize) -> Vec<(usize, Vec<i128>)> {
    let mut out = Vec::new();
    for col in 0..ncols {
        loop {
            // Euclid on the column among remaining rows.
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let pivot = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let prow = rows[pivot].clone();
            for &i in &nz {
                if i != pivot {
                    let q = rows[i][col].div_euclid(prow[col]);
                    for (x, p) in rows[i].iter_mut().zip(&prow) {
                        *x -= q * p;
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][col] != 0) {
            let mut row = rows.swap_remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push((col, row));
        }
    }
    out
}

impl NormalForm for AbelianOracle {
    fn name(&self) -> &str {
        "abelian"
    }

    fn normal_form(&self, w: &Word) -> Word {
        let coords = self.coordinates(w);
        let powers: Vec<(usize, i64)> = coords.into_iter().enumerate().collect();
        Word::from_powers(&powers)
    }

    fn element_key(&self, w: &Word) -> Vec<i64> {
        self.coordinates(w)
    }
}

/// Cayley table of a finite group together with the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    /// `table[x][y] = x * y`.
    pub table: Vec<Vec<usize>>,
    /// Element represented by each generator.
    pub generators: Vec<usize>,
}

#[derive(Debug)]
pub struct FiniteTableOracle {
    table: Vec<Vec<usize>>,
    identity: usize,
    gen_images: Vec<usize>,
    gen_inverse_images: Vec<usize>,
    /// Shortlex-least word of every element.
    words: Vec<Option<Word>>,
}

impl FiniteTableOracle {
    pub fn new(mt: MultiplicationTable, p: &Presentation) -> Result<Self, PresentationError> {
        let n = mt.table.len();
        let bad = |m: &str| PresentationError::InvalidTable(m.to_string());
        if n == 0 || mt.table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(bad("table must be square with entries in range"));
        }
        let t = &mt.table;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| t[e][x] == x && t[x][e] == x))
            .ok_or_else(|| bad("no identity element"))?;
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| t[x][y] == identity && t[y][x] == identity)
                .ok_or_else(|| bad("element without inverse"))?;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if t[t[x][y]][z] != t[x][t[y][z]] {
                        return Err(bad("table is not associative"));
                    }
                }
            }
        }
        if mt.generators.len() != p.num_generators() || mt.generators.iter().any(|&g| g >= n) {
            return Err(bad("one image per generator required"));
        }
        let gen_inverse_images = mt.generators.iter().map(|&g| inverse[g]).collect();
        let mut oracle = FiniteTableOracle {
            table: mt.table,
            identity,
            gen_images: mt.generators,
            gen_inverse_images,
            words: vec![None; n],
        };
        for (i, r) in p.relators().iter().enumerate() {
            if oracle.evaluate(r) != identity {
                return Err(PresentationError::OracleMismatch(format!(
                    "relator {i} is not the identity in the table"
                )));
            }
        }
        // Shortlex BFS over the table's Cayley graph.
        oracle.words[identity] = Some(Word::empty());
        let mut frontier = vec![identity];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                let base = oracle.words[x].clone().unwrap();
                for code in 0..2 * p.num_generators() {
                    let l = Letter::from_code(code);
                    let y = oracle.table[x][oracle.image(l)];
                    if oracle.words[y].is_none() {
                        let mut w = base.clone();
                        w.push(l);
                        oracle.words[y] = Some(w);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(oracle)
    }

    fn image(&self, l: Letter) -> usize {
        if l.sign > 0 {
            self.gen_images[l.gen]
        } else {
            self.gen_inverse_images[l.gen]
        }
    }

    pub fn evaluate(&self, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(self.identity, |x, &l| self.table[x][self.image(l)])
    }
}

impl NormalForm for FiniteTableOracle {
    fn name(&self) -> &str {
        "finite-table"
    }

    fn normal_form(&self, w: &Word) -> Word {
        // Every element reachable from a word is reachable from the identity.
        self.words[self.evaluate(w)].clone().unwrap_or_default()
    }

    fn element_key(&self, w: &Word) -> Vec<i64> {
        vec![self.evaluate(w) as i64]
    }
}

/// Heisenberg group `<a, b, c | [a,b] c^-1, [a,c], [b,c]>` with normal form `a^i b^j c^k`.
#[derive(Debug, Clone)]
pub struct HeisenbergOracle {
    a: usize,
    b: usize,
    c: usize,
}

impl HeisenbergOracle {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        HeisenbergOracle { a, b, c }
    }

    /// Coordinates `(i, j, k)` of the element `a^i b^j c^k`.
    pub fn coordinates(&self, w: &Word) -> (i64, i64, i64) {
        let (mut i, mut j, mut k) = (0i64, 0i64, 0i64);
        for l in w.letters() {
            let e = i64::from(l.sign);
            if l.gen == self.a {
                // b^j a = a b^j c^-j
                i += e;
                k -= e * j;
            } else if l.gen == self.b {
                j += e;
            } else if l.gen == self.c {
                k += e;
            }
        }
        (i, j, k)
    }
}

impl NormalForm for HeisenbergOracle {
    fn name(&self) -> &str {
        "heisenberg"
    }

    fn normal_form(&self, w: &Word) -> Word {
        let (i, j, k) = self.coordinates(w);
        Word::from_powers(&[(self.a, i), (self.b, j), (self.c, k)])
    }

    fn element_key(&self, w: &Word) -> Vec<i64> {
        let (i, j, k) = self.coordinates(w);
        vec![i, j, k]
    }
}

/// Groups elements by key; used by oracles whose key is not exact.
#[derive(Clone, Default, Debug)]
pub(crate) struct KeyedWords {
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl KeyedWords {
    pub(crate) fn candidates(&self, key: &[i64]) -> &[usize] {
        self.buckets.get(key).map_or(&[], |v| v.as_slice())
    }

    pub(crate) fn insert(&mut self, key: Vec<i64>, id: usize) {
        self.buckets.entry(key).or_default().push(id);
    }
}
