use super::{CayleyBall, EdgeId, VertexId};
use crate::foxcalc::GroupRingVec;
use crate::Rational;
use num_traits::{One, Zero};

/// Fundamental cycles of a breadth-first spanning tree.
#[derive(Clone, Debug)]
pub struct CycleBasis {
    /// Non-tree edge that each cycle is built on, in edge order.
    pub edges: Vec<EdgeId>,
    pub cycles: Vec<GroupRingVec>,
}

/// Tree path from the identity to `v` as a signed edge chain.
fn tree_path(ball: &CayleyBall, parent: &[Option<(EdgeId, i8)>], mut v: VertexId) -> GroupRingVec {
    let mut chain = GroupRingVec::zero();
    while let Some((e, sign)) = parent[v] {
        let edge = ball.edge(e);
        chain.add_term(edge.src, edge.gen, Rational::from_integer(sign.into()));
        v = if sign > 0 { edge.src } else { edge.dst };
    }
    chain
}

/// A basis of the cycle space of the ball's graph, `|E| - |V| + 1` chains.
pub fn cycle_basis(ball: &CayleyBall) -> CycleBasis {
    let n = ball.num_vertices();
    // parent[v] = (edge, +1) if reached along the edge, (edge, -1) against it
    let mut parent: Vec<Option<(EdgeId, i8)>> = vec![None; n];
    let mut reached = vec![false; n];
    let mut tree = vec![false; ball.edges().len()];
    reached[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for code in 0..2 * ball.num_generators() {
            let l = crate::presentation::Letter::from_code(code);
            if let Some((e, s)) = ball.step_edge(v, l) {
                let u = ball.step(v, l).unwrap();
                if !reached[u] {
                    reached[u] = true;
                    parent[u] = Some((e, s));
                    tree[e] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut edges = Vec::new();
    let mut cycles = Vec::new();
    for (id, e) in ball.edges().iter().enumerate() {
        if tree[id] {
            continue;
        }
        let mut c = tree_path(ball, &parent, e.src);
        c.add_term(e.src, e.gen, Rational::one());
        c.sub_assign(&tree_path(ball, &parent, e.dst));
        edges.push(id);
        cycles.push(c);
    }
    CycleBasis { edges, cycles }
}

/// Coordinates of a cycle `z` in the basis, or `None` if `z` is not in its span.
///
/// The coefficient on each fundamental cycle is forced to be `z`'s value on
/// that cycle's non-tree edge; the recombination is then checked exactly.
pub fn express_in_basis(ball: &CayleyBall, basis: &CycleBasis, z: &GroupRingVec) -> Option<Vec<Rational>> {
    let coeffs: Vec<Rational> = basis
        .edges
        .iter()
        .map(|&e| {
            let edge = ball.edge(e);
            z.get(edge.src, edge.gen)
        })
        .collect();
    let mut sum = GroupRingVec::zero();
    for (c, cyc) in coeffs.iter().zip(&basis.cycles) {
        if !c.is_zero() {
            sum.add_scaled(cyc, c);
        }
    }
    (sum == *z).then_some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{enumerate_relations, EnumerationMode};
    use crate::foxcalc::{boundary1, cycle_of_relation};
    use crate::presentation::library;

    #[test]
    fn tree_ball_has_empty_basis() {
        let (p, o) = library::free2();
        let ball = CayleyBall::build(&p, &o, 2).unwrap();
        assert!(cycle_basis(&ball).cycles.is_empty());
    }

    #[test]
    fn basis_size_is_cycle_rank() {
        let (p, o) = library::z2();
        for (r, expected_edges) in [(1usize, 4usize), (2, 16), (3, 36)] {
            let ball = CayleyBall::build(&p, &o, r).unwrap();
            // lattice edges with both ends in the l1 ball, counted directly
            let pts: Vec<(i32, i32)> = (-(r as i32)..=r as i32)
                .flat_map(|i| (-(r as i32)..=r as i32).map(move |j| (i, j)))
                .filter(|(i, j)| i.abs() + j.abs() <= r as i32)
                .collect();
            let inside = |x: i32, y: i32| x.abs() + y.abs() <= r as i32;
            let lattice_edges = pts
                .iter()
                .map(|&(x, y)| usize::from(inside(x + 1, y)) + usize::from(inside(x, y + 1)))
                .sum::<usize>();
            assert_eq!(lattice_edges, expected_edges);
            assert_eq!(ball.edges().len(), lattice_edges);
            let basis = cycle_basis(&ball);
            assert_eq!(basis.cycles.len(), lattice_edges + 1 - ball.num_vertices());
            for c in &basis.cycles {
                assert!(boundary1(c, &ball).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn relation_cycles_lie_in_span() {
        let (p, o) = library::heisenberg();
        let ball = CayleyBall::build(&p, &o, 3).unwrap();
        let basis = cycle_basis(&ball);
        let set = enumerate_relations(&ball, 8, EnumerationMode::Exhaustive).unwrap();
        assert!(!set.relations.is_empty());
        for w in &set.relations {
            let z = cycle_of_relation(w, 0, &ball).unwrap();
            assert!(express_in_basis(&ball, &basis, &z).is_some());
        }
    }
}
