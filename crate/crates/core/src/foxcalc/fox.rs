use super::{ChainError, FillCertificate, GroupRingScalar, GroupRingVec};
use crate::cayley::{CayleyBall, EdgeId, VertexId};
use crate::presentation::{Letter, Word};
use crate::Rational;

/// Signed edge chain of the walk reading `w` from `base`; `None` if the walk
/// leaves the ball.
fn walk_chain(w: &Word, base: VertexId, ball: &CayleyBall) -> Option<GroupRingVec> {
    let mut out = GroupRingVec::zero();
    let mut cur = base;
    for &l in w.letters() {
        let (e, dir) = ball.step_edge(cur, l)?;
        let edge = ball.edge(e);
        out.add_term(edge.src, edge.gen, Rational::from_integer(dir.into()));
        cur = if dir > 0 { edge.dst } else { edge.src };
    }
    Some(out)
}

/// Fox derivative `theta(w) = sum_{e_i=1} g_i e_{s_i} - sum_{e_i=-1} g_{i+1} e_{s_i}`,
/// where `g_i` is the prefix before the `i`-th letter.
///
/// A negative letter `s^-1` read at `g_i` contributes the edge `g_{i+1} -> g_i`
/// labelled `s`, which is why its coefficient sits at `g_{i+1}`.
pub fn fox_theta(w: &Word, ball: &CayleyBall) -> Result<GroupRingVec, ChainError> {
    walk_chain(w, 0, ball).ok_or(ChainError::PrefixEscapesBall)
}

/// The relation cycle `I_w` read from `base`.
pub fn cycle_of_relation(w: &Word, base: VertexId, ball: &CayleyBall) -> Result<GroupRingVec, ChainError> {
    if !ball.oracle().is_identity(w) {
        return Err(ChainError::NotARelation(ball.format_word(w)));
    }
    walk_chain(w, base, ball).ok_or(ChainError::WalkEscapesBall { base })
}

/// `eta`: the slot `g e_s` is the edge `g -> gs`.
pub fn eta(x: &GroupRingVec, ball: &CayleyBall) -> Result<Vec<(EdgeId, Rational)>, ChainError> {
    Ok(x.edge_coefficients(ball)?.into_iter().collect())
}

/// `d_1(g e_s) = gs - g`.
pub fn boundary1(x: &GroupRingVec, ball: &CayleyBall) -> Result<GroupRingScalar, ChainError> {
    let mut out = GroupRingScalar::zero();
    for (g, s, c) in x.iter() {
        let gs = ball
            .step(g, Letter::pos(s))
            .ok_or(ChainError::TargetEscapesBall { vertex: g, gen: s })?;
        out.add_term(gs, c.clone());
        out.add_term(g, -c.clone());
    }
    Ok(out)
}

/// Boundary of the 2-cell `g f_j`: the translate `g I_{r_j}`.
pub fn cell_boundary(g: VertexId, j: usize, ball: &CayleyBall) -> Result<GroupRingVec, ChainError> {
    let r = &ball.relators()[j];
    walk_chain(r, g, ball).ok_or(ChainError::CellEscapesBall { vertex: g, relator: j })
}

/// `d_2(sum tau_i g_i f_{j_i}) = sum tau_i g_i theta(r_{j_i})`.
pub fn boundary2(c: &FillCertificate, ball: &CayleyBall) -> Result<GroupRingVec, ChainError> {
    let mut out = GroupRingVec::zero();
    for (tau, g, j) in c.terms() {
        out.add_scaled(&cell_boundary(*g, *j, ball)?, tau);
    }
    Ok(out)
}

/// Every 2-cell `(g, j)` whose boundary lies in the ball, with that boundary.
pub fn ball_cells(ball: &CayleyBall) -> Vec<((VertexId, usize), GroupRingVec)> {
    let mut out = Vec::new();
    for g in 0..ball.num_vertices() {
        for j in 0..ball.relators().len() {
            if let Ok(b) = cell_boundary(g, j, ball) {
                out.push(((g, j), b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::library;
    use crate::rational::int;

    fn z2_ball(r: usize) -> (crate::presentation::Presentation, CayleyBall) {
        let (p, o) = library::z2();
        let ball = CayleyBall::build(&p, &o, r).unwrap();
        (p, ball)
    }

    fn v(p: &crate::presentation::Presentation, ball: &CayleyBall, text: &str) -> VertexId {
        ball.vertex_of(&p.parse_word(text).unwrap()).unwrap()
    }

    #[test]
    fn theta_of_commutator() {
        let (p, ball) = z2_ball(2);
        let w = p.parse_word("a b a^-1 b^-1").unwrap();
        let th = fox_theta(&w, &ball).unwrap();
        // (1 - b) e_a + (a - 1) e_b
        let mut expected = GroupRingVec::zero();
        expected.add_term(0, 0, int(1));
        expected.add_term(v(&p, &ball, "b"), 0, int(-1));
        expected.add_term(v(&p, &ball, "a"), 1, int(1));
        expected.add_term(0, 1, int(-1));
        assert_eq!(th, expected);
        assert!(boundary1(&th, &ball).unwrap().is_zero());
    }

    #[test]
    fn theta_trivial_words() {
        let (p, ball) = z2_ball(1);
        assert!(fox_theta(&Word::empty(), &ball).unwrap().is_zero());
        assert!(fox_theta(&p.parse_word("a a^-1").unwrap(), &ball).unwrap().is_zero());
    }

    #[test]
    fn cycle_of_square_and_powers() {
        let (p, ball) = z2_ball(3);
        let w = p.parse_word("a b a^-1 b^-1").unwrap();
        let c = cycle_of_relation(&w, 0, &ball).unwrap();
        assert_eq!(c.len(), 4);
        let sq = cycle_of_relation(&w.join(&w), 0, &ball).unwrap();
        assert_eq!(sq, c.scaled(&int(2)));
        assert!(cycle_of_relation(&p.parse_word("a a^-1").unwrap(), 0, &ball)
            .unwrap()
            .is_zero());
        assert!(matches!(
            cycle_of_relation(&p.parse_word("a b").unwrap(), 0, &ball),
            Err(ChainError::NotARelation(_))
        ));
    }

    #[test]
    fn boundary1_examples() {
        let (p, ball) = z2_ball(2);
        let mut x = GroupRingVec::zero();
        x.add_term(0, 0, int(1));
        let b = boundary1(&x, &ball).unwrap();
        assert_eq!(b.get(v(&p, &ball, "a")), int(1));
        assert_eq!(b.get(0), int(-1));
        x.add_term(v(&p, &ball, "a"), 1, int(1));
        let b = boundary1(&x, &ball).unwrap();
        assert_eq!(b.get(v(&p, &ball, "a b")), int(1));
        assert_eq!(b.get(0), int(-1));
        assert_eq!(b.iter().count(), 2);
    }

    #[test]
    fn boundary2_rectangle() {
        let (p, ball) = z2_ball(3);
        let a = v(&p, &ball, "a");
        let c = FillCertificate::new([(int(1), 0, 0), (int(1), a, 0)]);
        let rect = boundary2(&c, &ball).unwrap();
        let w = p.parse_word("a a b a^-1 a^-1 b^-1").unwrap();
        assert_eq!(rect, cycle_of_relation(&w, 0, &ball).unwrap());
        assert_eq!(rect.len(), 6);
        assert!(boundary2(&FillCertificate::empty(), &ball).unwrap().is_zero());
        let single = boundary2(&FillCertificate::new([(int(1), 0, 0)]), &ball).unwrap();
        assert_eq!(single, fox_theta(&p.relators()[0], &ball).unwrap());
    }
}
