use std::collections::HashMap;

use serde_json::{json, Value};

use super::CayleyError;
use crate::presentation::{KeyedWords, Letter, Oracle, Presentation, Word};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Default cap on the number of ball vertices.
pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

/// Directed Cayley-graph edge `src -> src * gen = dst`, one per positive generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: VertexId,
    pub gen: usize,
    pub dst: VertexId,
}

/// The ball of radius `r` about the identity in the Cayley graph.
///
/// Vertex 0 is the identity. Vertices are numbered layer by layer; inside a
/// layer they are sorted by canonical word, so a ball of radius `r` is a
/// prefix of the ball of radius `r + 1`.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    radius: usize,
    generators: Vec<String>,
    relators: Vec<Word>,
    oracle: Oracle,
    vertices: Vec<Word>,
    lengths: Vec<usize>,
    edges: Vec<Edge>,
    /// `out[v * p + g]`: edge leaving `v` labelled `g`.
    out: Vec<Option<EdgeId>>,
    /// `inc[v * p + g]`: edge entering `v` labelled `g`.
    inc: Vec<Option<EdgeId>>,
    exact_index: HashMap<Vec<i64>, VertexId>,
    bucket_index: KeyedWords,
}

impl CayleyBall {
    pub fn build(p: &Presentation, oracle: &Oracle, radius: usize) -> Result<Self, CayleyError> {
        Self::build_with_cap(p, oracle, radius, DEFAULT_VERTEX_CAP)
    }

    pub fn build_with_cap(p: &Presentation, oracle: &Oracle, radius: usize, cap: usize) -> Result<Self, CayleyError> {
        let np = p.num_generators();
        let mut ball = CayleyBall {
            radius,
            generators: p.generators().to_vec(),
            relators: p.relators().to_vec(),
            oracle: oracle.clone(),
            vertices: Vec::new(),
            lengths: Vec::new(),
            edges: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
            exact_index: HashMap::new(),
            bucket_index: KeyedWords::default(),
        };
        ball.insert_vertex(oracle.normal_form(&Word::empty()), 0);
        let mut layer: Vec<VertexId> = vec![0];
        for d in 0..radius {
            // (canonical word, key) of elements first reached in this layer
            let mut fresh: Vec<(Word, Vec<i64>)> = Vec::new();
            for &v in &layer {
                for code in 0..2 * np {
                    let l = Letter::from_code(code);
                    let cand = ball.vertices[v].join(&Word::new(vec![l]));
                    if cand.len() >= 2 && cand.letters()[cand.len() - 2].is_inverse_of(l) {
                        continue;
                    }
                    if ball.find(&cand, d + 1).is_some() {
                        continue;
                    }
                    let key = oracle.element_key(&cand);
                    let seen = fresh.iter().any(|(w, k)| {
                        *k == key && (oracle.key_is_exact() || oracle.is_identity(&w.join(&cand.invert())))
                    });
                    if !seen {
                        let canon = if oracle.key_is_exact() {
                            oracle.normal_form(&cand)
                        } else {
                            // Layers are scanned in lexicographic order, so the
                            // first word found is the shortlex-least geodesic.
                            cand.free_reduce()
                        };
                        fresh.push((canon, key));
                    }
                }
            }
            if ball.vertices.len() + fresh.len() > cap {
                return Err(CayleyError::BallTooLarge { cap, radius: d + 1 });
            }
            fresh.sort();
            layer = fresh.into_iter().map(|(w, _)| ball.insert_vertex(w, d + 1)).collect();
        }
        let n = ball.vertices.len();
        ball.out = vec![None; n * np];
        ball.inc = vec![None; n * np];
        for v in 0..n {
            for g in 0..np {
                let w = ball.vertices[v].join(&Word::new(vec![Letter::pos(g)]));
                let hint = ball.lengths[v] + 1;
                if let Some(dst) = ball.find(&w, hint) {
                    let id = ball.edges.len();
                    ball.edges.push(Edge { src: v, gen: g, dst });
                    ball.out[v * np + g] = Some(id);
                    ball.inc[dst * np + g] = Some(id);
                }
            }
        }
        Ok(ball)
    }

    fn insert_vertex(&mut self, w: Word, len: usize) -> VertexId {
        let id = self.vertices.len();
        let key = self.oracle.element_key(&w);
        if self.oracle.key_is_exact() {
            self.exact_index.insert(key, id);
        } else {
            self.bucket_index.insert(key, id);
        }
        self.vertices.push(w);
        self.lengths.push(len);
        id
    }

    /// Looks up the vertex for `w = parent * letter` where `len_hint = |parent| + 1`.
    fn find(&self, w: &Word, len_hint: usize) -> Option<VertexId> {
        let key = self.oracle.element_key(w);
        if self.oracle.key_is_exact() {
            return self.exact_index.get(&key).copied();
        }
        let inv = w.invert();
        self.bucket_index.candidates(&key).iter().copied().find(|&c| {
            self.lengths[c] <= len_hint
                && self.lengths[c] + 2 >= len_hint
                && self.oracle.is_identity(&self.vertices[c].join(&inv))
        })
    }

    /// Vertex for an arbitrary word, if its element lies in the ball.
    pub fn vertex_of(&self, w: &Word) -> Option<VertexId> {
        let key = self.oracle.element_key(w);
        if self.oracle.key_is_exact() {
            return self.exact_index.get(&key).copied();
        }
        let inv = w.invert();
        self.bucket_index
            .candidates(&key)
            .iter()
            .copied()
            .find(|&c| self.oracle.is_identity(&self.vertices[c].join(&inv)))
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn word(&self, v: VertexId) -> &Word {
        &self.vertices[v]
    }

    /// Word length `|g|` of a vertex.
    pub fn length(&self, v: VertexId) -> usize {
        self.lengths[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn out_edge(&self, v: VertexId, gen: usize) -> Option<EdgeId> {
        self.out[v * self.generators.len() + gen]
    }

    pub fn in_edge(&self, v: VertexId, gen: usize) -> Option<EdgeId> {
        self.inc[v * self.generators.len() + gen]
    }

    /// Edge crossed when reading `l` at `v`, with the crossing direction.
    pub fn step_edge(&self, v: VertexId, l: Letter) -> Option<(EdgeId, i8)> {
        if l.sign > 0 {
            self.out_edge(v, l.gen).map(|e| (e, 1))
        } else {
            self.in_edge(v, l.gen).map(|e| (e, -1))
        }
    }

    pub fn step(&self, v: VertexId, l: Letter) -> Option<VertexId> {
        self.step_edge(v, l).map(|(e, s)| {
            let edge = self.edges[e];
            if s > 0 {
                edge.dst
            } else {
                edge.src
            }
        })
    }

    /// Vertices `g_1 = base, g_2, ..., g_{n+1}` visited when reading `w` from `base`.
    pub fn walk(&self, base: VertexId, w: &Word) -> Option<Vec<VertexId>> {
        let mut path = Vec::with_capacity(w.len() + 1);
        path.push(base);
        let mut cur = base;
        for &l in w.letters() {
            cur = self.step(cur, l)?;
            path.push(cur);
        }
        Some(path)
    }

    /// The product `g * h`, computed by reading the canonical word of `h` from `g`.
    pub fn translate(&self, g: VertexId, h: VertexId) -> Option<VertexId> {
        self.walk(g, &self.vertices[h]).map(|p| *p.last().unwrap())
    }

    /// The vertex-prefix of radius `r`: `{ v : |v| <= r }` is `0..prefix_len(r)`.
    pub fn prefix_len(&self, r: usize) -> usize {
        self.lengths.partition_point(|&l| l <= r)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }

    pub fn format_vertex(&self, v: VertexId) -> String {
        self.format_word(&self.vertices[v])
    }

    /// JSON dump `{radius, vertices, edges}`.
    pub fn to_json(&self) -> Value {
        json!({
            "radius": self.radius,
            "vertices": self.vertices.iter().map(|w| self.format_word(w)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| [e.src, e.gen, e.dst]).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::library;

    #[test]
    fn z2_radius_one_has_five_vertices() {
        let (p, o) = library::z2();
        let ball = CayleyBall::build(&p, &o, 1).unwrap();
        assert_eq!(ball.num_vertices(), 5);
        let words: Vec<String> = (0..5).map(|v| ball.format_vertex(v)).collect();
        assert_eq!(words, ["", "a", "a^-1", "b", "b^-1"]);
    }

    #[test]
    fn z2_radius_two_counts_lattice_points() {
        let (p, o) = library::z2();
        let ball = CayleyBall::build(&p, &o, 2).unwrap();
        // |{(i,j) : |i| + |j| <= 2}|
        let oracle_count = (-2i32..=2)
            .flat_map(|i| (-2i32..=2).map(move |j| (i, j)))
            .filter(|(i, j)| i.abs() + j.abs() <= 2)
            .count();
        assert_eq!(ball.num_vertices(), oracle_count);
        assert_eq!(oracle_count, 13);
    }

    #[test]
    fn free_group_radius_two() {
        let (p, o) = library::free2();
        let ball = CayleyBall::build(&p, &o, 2).unwrap();
        assert_eq!(ball.num_vertices(), 1 + 4 + 12);
        assert_eq!(ball.edges().len(), 16);
    }

    #[test]
    fn edges_are_consistent_with_oracle() {
        for (p, o) in [library::z2(), library::surface2(), library::heisenberg()] {
            let ball = CayleyBall::build(&p, &o, 2).unwrap();
            for e in ball.edges() {
                let w = ball.word(e.src).join(&Word::new(vec![Letter::pos(e.gen)]));
                assert!(o.is_identity(&w.join(&ball.word(e.dst).invert())));
                let (ls, ld) = (ball.length(e.src), ball.length(e.dst));
                assert!(ls.abs_diff(ld) <= 1);
            }
            assert_eq!(ball.length(0), 0);
        }
    }

    #[test]
    fn surface_ball_growth() {
        let (p, o) = library::surface2();
        let ball = CayleyBall::build(&p, &o, 2).unwrap();
        // 1 + 8 + 8*7 (no relation of length <= 4 in the genus-2 group)
        assert_eq!(ball.num_vertices(), 1 + 8 + 56);
    }

    #[test]
    fn balls_are_nested() {
        let (p, o) = library::heisenberg();
        let small = CayleyBall::build(&p, &o, 2).unwrap();
        let big = CayleyBall::build(&p, &o, 3).unwrap();
        assert_eq!(&big.vertices()[..small.num_vertices()], small.vertices());
        assert_eq!(big.prefix_len(2), small.num_vertices());
    }

    #[test]
    fn cap_is_enforced() {
        let (p, o) = library::free2();
        assert!(matches!(
            CayleyBall::build_with_cap(&p, &o, 4, 50),
            Err(CayleyError::BallTooLarge { .. })
        ));
    }

    #[test]
    fn json_dump_shape() {
        let (p, o) = library::z2();
        let ball = CayleyBall::build(&p, &o, 1).unwrap();
        let j = ball.to_json();
        assert_eq!(j["radius"], 1);
        assert_eq!(j["vertices"].as_array().unwrap().len(), 5);
        assert_eq!(j["edges"].as_array().unwrap().len(), 4);
    }
}
