use num_traits::{Signed, Zero};
use proptest::prelude::*;

use super::*;
use crate::cayley::{CayleyBall, EnumerationMode};
use crate::foxcalc::VertexFunction;
use crate::presentation::library;
use crate::rational::{frac, int};
use crate::Rational;

fn z2(r: usize) -> CayleyBall {
    let (p, o) = library::z2();
    CayleyBall::build(&p, &o, r).unwrap()
}

fn coords(ball: &CayleyBall, v: usize) -> (i64, i64) {
    let s = ball.word(v).exponent_sums(2);
    (s[0], s[1])
}

#[test]
fn cocycle_norm_examples() {
    let ball = z2(3);
    assert!(cocycle_norm(&CocycleData::zero(), &ball).max().is_zero());

    let mut m = VertexFunction::zero();
    for v in 0..ball.num_vertices() {
        let (x, y) = coords(&ball, v);
        m.set(v, int(x * x - 3 * y + 7));
    }
    let exact = CocycleData::zero().plus_coboundary(&m, &ball);
    assert!(cocycle_norm(&exact, &ball).max().is_zero());

    let norm = cocycle_norm(&CocycleData::winding(&ball), &ball);
    assert!(!norm.values.is_empty());
    assert!(norm.values.values().all(|v| *v == int(1)));
    // the relator square at (x, y) has corners up to (x + 1, y + 1)
    for v in 0..ball.num_vertices() {
        let (x, y) = coords(&ball, v);
        let fits = [(0, 0), (1, 0), (1, 1), (0, 1)]
            .iter()
            .all(|(dx, dy)| (x + dx).abs() + (y + dy).abs() <= 3);
        assert_eq!(norm.values.contains_key(&v), fits, "vertex {v}");
    }
}

#[test]
fn condition_ii_examples() {
    let ball = z2(3);
    let n = ball.num_vertices();
    let zero_f = BoundFunction::constant(n, int(0)).unwrap();
    let r = check_condition_ii(&CocycleData::zero(), &zero_f, &ball, 4, EnumerationMode::Exhaustive).unwrap();
    assert!(r.violations.is_empty());

    let w = CocycleData::winding(&ball);
    let r = check_condition_ii(&w, &zero_f, &ball, 4, EnumerationMode::Exhaustive).unwrap();
    assert!(!r.violations.is_empty());
    assert!(r.violations.iter().all(|v| v.lhs == int(1) && v.rhs.is_zero()));
    let bases: std::collections::BTreeSet<_> = r.violations.iter().map(|v| v.base).collect();
    assert!((0..n).filter(|&v| ball.length(v) <= 1).all(|v| bases.contains(&v)));
    // every base is a corner of a unit square lying in the ball
    let in_ball = |(x, y): (i64, i64)| x.abs() + y.abs() <= 3;
    for &v in &bases {
        let (x, y) = coords(&ball, v);
        let corner = [(0, 0), (-1, 0), (-1, -1), (0, -1)].iter().any(|(ox, oy)| {
            [(0, 0), (1, 0), (1, 1), (0, 1)]
                .iter()
                .all(|(dx, dy)| in_ball((x + ox + dx, y + oy + dy)))
        });
        assert!(corner, "vertex {v}");
    }

    let one = BoundFunction::constant(n, int(1)).unwrap();
    let r = check_condition_ii(&w, &one, &ball, 4, EnumerationMode::Exhaustive).unwrap();
    assert!(r.violations.is_empty());
    assert!(r.walks_checked > 0);
}

#[test]
fn find_primitive_examples() {
    let ball = z2(3);
    let n = ball.num_vertices();
    let zero_f = BoundFunction::constant(n, int(0)).unwrap();
    match find_primitive(&CocycleData::zero(), &zero_f, &ball).unwrap() {
        PrimitiveOutcome::Feasible(m) => assert!(m.is_zero()),
        other => panic!("{other:?}"),
    }

    let mut m0 = VertexFunction::zero();
    for v in 0..n {
        let (x, y) = coords(&ball, v);
        m0.set(v, frac(2 * x - y + 5, 3));
    }
    let cd = CocycleData::zero().plus_coboundary(&m0, &ball);
    match find_primitive(&cd, &zero_f, &ball).unwrap() {
        PrimitiveOutcome::Feasible(m) => {
            for v in 0..n {
                // alpha + dm = 0 forces m = -(m0 - m0(1))
                assert_eq!(m.get(v), -(m0.get(v) - m0.get(0)));
            }
        }
        other => panic!("{other:?}"),
    }

    let eighth = BoundFunction::constant(n, frac(1, 8)).unwrap();
    match find_primitive(&CocycleData::winding(&ball), &eighth, &ball).unwrap() {
        PrimitiveOutcome::Infeasible { violating, pieces, .. } => {
            assert!(!pieces.is_empty() && !violating.is_empty());
            for v in &violating {
                // winding pairs a closed walk to minus its enclosed signed area
                assert_eq!(v.lhs, int(shoelace(&ball, v.base, &v.word).abs()));
                assert_eq!(v.rhs, frac(v.word.len() as i64, 8));
                assert!(v.lhs > v.rhs);
            }
        }
        other => panic!("{other:?}"),
    }
}

/// Signed area of a closed lattice walk, by the shoelace formula.
fn shoelace(ball: &CayleyBall, base: usize, w: &crate::presentation::Word) -> i64 {
    let (mut x, mut y) = coords(ball, base);
    let mut twice = 0;
    for l in w.letters() {
        let d = if l.sign > 0 { 1 } else { -1 };
        let (nx, ny) = if l.gen == 0 { (x + d, y) } else { (x, y + d) };
        twice += x * ny - nx * y;
        (x, y) = (nx, ny);
    }
    twice / 2
}

#[test]
fn infinite_bounds_drop_constraints() {
    let ball = z2(2);
    let f = BoundFunction::infinite(ball.num_vertices());
    assert!(matches!(
        find_primitive(&CocycleData::winding(&ball), &f, &ball).unwrap(),
        PrimitiveOutcome::Feasible(_)
    ));
    assert!(violating_cycle(&CocycleData::winding(&ball), &f, &ball).is_none());
    assert_eq!(
        BoundFunction::new(vec![Some(int(-1))]),
        Err(PrimitiveError::NegativeBound(0))
    );
}

#[test]
fn thm4_examples() {
    let ball = z2(3);
    let n = ball.num_vertices();
    let zero_f = BoundFunction::constant(n, int(0)).unwrap();
    let r = check_thm4_equivalence(&CocycleData::zero(), &zero_f, &ball, 4, EnumerationMode::Exhaustive).unwrap();
    assert!(r.primitive_exists && r.agreement && r.complete_violation.is_none());

    let eighth = BoundFunction::constant(n, frac(1, 8)).unwrap();
    let r = check_thm4_equivalence(
        &CocycleData::winding(&ball),
        &eighth,
        &ball,
        4,
        EnumerationMode::Exhaustive,
    )
    .unwrap();
    assert!(!r.primitive_exists && r.agreement);
    assert_eq!(r.certificate_ok, Some(true));
    assert!(r.enumerated_violations > 0);
    let v = r.complete_violation.unwrap();
    assert!(v.lhs > v.rhs);
    assert!(ball.oracle().is_identity(&v.word));
}

#[test]
fn winding_needs_a_half() {
    // the radius-2 ball is the 3x3 grid plus four pendant edges; the largest
    // area-to-perimeter ratio of a closed walk is the 2x2 square's 4/8
    let ball = z2(2);
    let n = ball.num_vertices();
    let cd = CocycleData::winding(&ball);
    for (f, ok) in [(frac(2, 5), false), (frac(1, 2), true), (int(1), true)] {
        let bound = BoundFunction::constant(n, f).unwrap();
        let feasible = matches!(
            find_primitive(&cd, &bound, &ball).unwrap(),
            PrimitiveOutcome::Feasible(_)
        );
        assert_eq!(feasible, ok);
        assert_eq!(violating_cycle(&cd, &bound, &ball).is_none(), ok);
    }
}

#[test]
fn relator_constant_is_relator_length() {
    assert_eq!(relator_constant(&z2(2)).unwrap(), 4);
    let (p, o) = library::heisenberg();
    assert_eq!(relator_constant(&CayleyBall::build(&p, &o, 3).unwrap()).unwrap(), 5);
}

fn random_cochain(n: usize, seed: u64) -> Vec<Rational> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()
}

#[test]
fn octahedron_is_a_sphere() {
    let x = FiniteComplex::octahedron();
    assert_eq!(x.dims(), &[6, 12, 8]);
    // Euler characteristic 2
    assert_eq!(6 - 12 + 8, 2);
    let cols = x.boundary_columns(2);
    // every edge lies on exactly two faces
    let mut count = [0; 12];
    for c in &cols {
        assert_eq!(c.len(), 3);
        for &(e, _) in c {
            count[e] += 1;
        }
    }
    assert!(count.iter().all(|&c| c == 2));
}

#[test]
fn complex_primitive_examples() {
    let x = FiniteComplex::octahedron();
    let f = BoundFunction::constant(12, int(2)).unwrap();
    match complex_primitive(&x, 2, &vec![int(0); 8], &f).unwrap() {
        ComplexOutcome::Feasible(t) => assert!(t.iter().all(Zero::is_zero)),
        other => panic!("{other:?}"),
    }

    let t0 = random_cochain(12, 7);
    let u = x.coboundary(2, &t0);
    assert!(u.iter().any(|v| !v.is_zero()));
    let sup = t0.iter().map(|v| v.abs()).max().unwrap();
    match complex_primitive(&x, 2, &u, &BoundFunction::constant(12, sup.clone()).unwrap()).unwrap() {
        ComplexOutcome::Feasible(t) => {
            assert_eq!(x.coboundary(2, &t), u);
            assert!(t.iter().all(|v| v.abs() <= sup));
        }
        other => panic!("{other:?}"),
    }
    match complex_primitive(&x, 2, &u, &BoundFunction::constant(12, int(0)).unwrap()).unwrap() {
        ComplexOutcome::Infeasible { farkas, problem } => assert!(farkas.verify(&problem).is_ok()),
        other => panic!("{other:?}"),
    }

    // the top class of the sphere is not exact
    let mut top = vec![int(0); 8];
    top[0] = int(1);
    assert_eq!(
        complex_primitive(&x, 2, &top, &BoundFunction::infinite(12)),
        Err(PrimitiveError::NotExact)
    );
    assert!(matches!(
        complex_primitive(&x, 3, &top, &BoundFunction::infinite(12)),
        Err(PrimitiveError::DimensionMismatch(_))
    ));
}

#[test]
fn complex_json_round_trip_and_checks() {
    let x = FiniteComplex::octahedron();
    assert_eq!(FiniteComplex::from_json(&x.to_json()).unwrap(), x);
    // a triangle whose 2-cell boundary is not a cycle
    let bad = serde_json::json!({
        "dims": [3, 3, 1],
        "boundaries": {"1": [[0,0,-1],[1,0,1],[1,1,-1],[2,1,1],[0,2,-1],[2,2,1]], "2": [[0,0,1],[1,0,1],[2,0,1]]}
    });
    assert_eq!(
        FiniteComplex::from_json(&bad),
        Err(PrimitiveError::BoundaryNotZero { q: 2 })
    );
    let good = serde_json::json!({
        "dims": [3, 3, 1],
        "boundaries": {"1": [[0,0,-1],[1,0,1],[1,1,-1],[2,1,1],[0,2,-1],[2,2,1]], "2": [[0,0,1],[1,0,1],[2,0,-1]]}
    });
    let tri = FiniteComplex::from_json(&good).unwrap();
    let u = cochain_from_json(&serde_json::json!({"0": "3/2"}), 1).unwrap();
    match complex_primitive(&tri, 2, &u, &BoundFunction::constant(3, frac(1, 2)).unwrap()).unwrap() {
        ComplexOutcome::Feasible(t) => assert_eq!(tri.coboundary(2, &t), u),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        complex_primitive(&tri, 2, &u, &BoundFunction::constant(3, frac(1, 3)).unwrap()).unwrap(),
        ComplexOutcome::Infeasible { .. }
    ));
    let f = BoundFunction::from_json(&serde_json::json!({"1": "inf", "2": 0}), 3, Some(int(1))).unwrap();
    assert_eq!(f.get(0), Some(&int(1)));
    assert_eq!(f.get(1), None);
    assert_eq!(f.get(2), Some(&int(0)));
}

/// Edge bounds `F(src)` on the ball complex.
fn edge_bounds(ball: &CayleyBall, f: &BoundFunction) -> BoundFunction {
    BoundFunction::new(ball.edges().iter().map(|e| f.get(e.src).cloned()).collect()).unwrap()
}

fn noisy_instance(ball: &CayleyBall, seed: u64) -> (CocycleData, BoundFunction) {
    random_instance(ball, seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn feasibility_matches_negative_cycle_check(seed in any::<u64>()) {
        let ball = z2(3);
        let (cd, f) = noisy_instance(&ball, seed);
        let out = find_primitive(&cd, &f, &ball).unwrap();
        let feasible = matches!(out, PrimitiveOutcome::Feasible(_));
        prop_assert_eq!(feasible, violating_cycle(&cd, &f, &ball).is_none());
        if let PrimitiveOutcome::Feasible(m) = &out {
            prop_assert!(satisfies_condition_i(&cd, &f, m, &ball));
        }
    }

    #[test]
    fn coboundary_absorption(seed in any::<u64>(), shift in prop::collection::vec(-5i64..=5, 25)) {
        let ball = z2(2);
        let (cd, f) = noisy_instance(&ball, seed);
        let mut m0 = VertexFunction::zero();
        for (v, s) in shift.iter().enumerate().take(ball.num_vertices()) {
            m0.set(v, int(*s));
        }
        let moved = cd.plus_coboundary(&m0, &ball);
        let a = matches!(find_primitive(&cd, &f, &ball).unwrap(), PrimitiveOutcome::Feasible(_));
        let b = matches!(find_primitive(&moved, &f, &ball).unwrap(), PrimitiveOutcome::Feasible(_));
        prop_assert_eq!(a, b);
        prop_assert_eq!(cocycle_norm(&cd, &ball), cocycle_norm(&moved, &ball));
    }

    #[test]
    fn ball_complex_bridge(seed in any::<u64>()) {
        // H^1 of a ball in the Z^2 plane vanishes, so bounded primitives of the
        // cell data and bounded vertex corrections are the same problem
        let ball = z2(3);
        let (cd, f) = noisy_instance(&ball, seed);
        let x = FiniteComplex::from_ball(&ball);
        let alpha: Vec<Rational> = (0..ball.edges().len()).map(|e| cd.alpha0.get(e)).collect();
        let u = x.coboundary(2, &alpha);
        let group = matches!(find_primitive(&cd, &f, &ball).unwrap(), PrimitiveOutcome::Feasible(_));
        let complex = matches!(
            complex_primitive(&x, 2, &u, &edge_bounds(&ball, &f)).unwrap(),
            ComplexOutcome::Feasible(_)
        );
        prop_assert_eq!(group, complex);
    }
}

#[test]
fn ball_complex_matches_cell_count() {
    let ball = z2(2);
    let x = FiniteComplex::from_ball(&ball);
    assert_eq!(x.dims()[0], 13);
    assert_eq!(x.dims()[1], ball.edges().len());
    // unit squares fully inside the radius-2 diamond: the four around the identity
    assert_eq!(x.dims()[2], 4);
}
