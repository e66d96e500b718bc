use abstract_checker::lp::{maximize, LpOutcome, Rel};
use abstract_checker::poly::{Cmp, Constraint, Polyhedron};
use geometry::Scalar;
use proptest::prelude::{prop_assert, proptest};

fn int(v: i64) -> Scalar {
    Scalar::from_integer(v.into())
}

fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

fn row(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn textbook_optimum() {
    // max x + y with x + 2y <= 4, 3x + y <= 6
    let out = maximize(&[row(&[1, 2]), row(&[3, 1])], &[Rel::Le, Rel::Le], &row(&[4, 6]), &row(&[1, 1]));
    assert_eq!(out, LpOutcome::Optimal { value: ratio(14, 5), point: vec![ratio(8, 5), ratio(6, 5)] });
}

#[test]
fn equality_and_lower_bound_rows() {
    // max -x - y with x + y = 3, x >= 1
    let out = maximize(&[row(&[1, 1]), row(&[1, 0])], &[Rel::Eq, Rel::Ge], &row(&[3, 1]), &row(&[-1, -1]));
    let LpOutcome::Optimal { value, .. } = out else { panic!("{out:?}") };
    assert_eq!(value, int(-3));
}

#[test]
fn infeasible_and_unbounded() {
    let inf = maximize(&[row(&[1]), row(&[1])], &[Rel::Ge, Rel::Le], &row(&[2, 1]), &row(&[1]));
    assert_eq!(inf, LpOutcome::Infeasible);
    let unb = maximize(&[row(&[1, -1])], &[Rel::Le], &row(&[1]), &row(&[1, 0]));
    assert_eq!(unb, LpOutcome::Unbounded);
}

#[test]
fn huge_coefficients_fall_back_to_exact_arithmetic() {
    let big = Scalar::new(num_bigint::BigInt::from(3u8).pow(90), 1.into());
    let out = maximize(&[vec![big.clone(), int(1)]], &[Rel::Le], std::slice::from_ref(&big), &row(&[1, 1]));
    let LpOutcome::Optimal { value, .. } = out else { panic!("{out:?}") };
    assert_eq!(value, big);
}

fn boxed(lo: &[i64], hi: &[i64]) -> Polyhedron {
    let mut p = Polyhedron::universe(lo.len());
    for (i, (&l, &h)) in lo.iter().zip(hi).enumerate() {
        p.add(&[(i, int(-1))], Cmp::Le, int(-l));
        p.add(&[(i, int(1))], Cmp::Le, int(h));
    }
    p
}

#[test]
fn strict_rows_exclude_their_boundary() {
    let p = Polyhedron::universe(1).and(&[(0, int(1))], Cmp::Lt, int(0));
    assert!(!p.is_feasible());
    let q = Polyhedron::universe(1).and(&[(0, int(1))], Cmp::Le, int(0));
    assert!(q.is_feasible());
}

proptest! {
    #[test]
    fn box_extent_matches_its_bounds(a in 0i64..20, w in 0i64..20, b in 0i64..20, v in 0i64..20) {
        let p = boxed(&[a, b], &[a + w, b + v]);
        prop_assert!(p.inf_of(&[(0, int(1)), (1, int(1))]) == Some(int(a + b)));
        prop_assert!(p.contains_point(&[int(a), int(b + v)]));
        prop_assert!(!p.contains_point(&[int(a + w + 1), int(b)]));
    }

    #[test]
    fn eliminating_a_variable_projects(a in 0i64..10, w in 0i64..10, b in 0i64..10, v in 0i64..10, k in 1i64..4) {
        // y bounded by a box and x = k*y: eliminating y keeps x in [k*b, k*(b+v)]
        let mut p = boxed(&[a, b], &[a + w, b + v]);
        let dim = 3;
        let mut p3 = Polyhedron::universe(dim);
        for c in p.constraints() {
            let mut coef = c.coef.clone();
            coef.push(int(0));
            p3.push(Constraint { coef, cmp: c.cmp, rhs: c.rhs.clone() });
        }
        p3.add(&[(2, int(1)), (1, int(-k))], Cmp::Eq, int(0));
        let proj = p3.eliminate(1);
        prop_assert!(proj.inf_of(&[(2, int(1))]) == Some(int(k * b)));
        prop_assert!(proj.contains_point(&[int(a), int(0), int(k * (b + v))]));
        prop_assert!(!proj.contains_point(&[int(a), int(0), int(k * (b + v) + 1)]));
        p = p.tidy();
        prop_assert!(p.is_feasible());
    }

    #[test]
    fn widening_contains_both_arguments(a in 0i64..10, w in 0i64..10, b in 0i64..10, v in 0i64..10, s in 0i64..5) {
        let older = boxed(&[a, b], &[a + w, b + v]);
        let newer = boxed(&[a, b], &[a + w + s, b + v + s]);
        let wide = older.widen(&newer);
        prop_assert!(wide.contains(&older));
        prop_assert!(wide.contains(&newer));
    }

    #[test]
    fn shadow_contains_translates_and_larger_ghosts(x in 0i64..10, y in 0i64..10, g in 0i64..10, t in 0i64..10, up in 0i64..10) {
        // a single point (ghost g, coordinates x and y)
        let p = boxed(&[g, x, y], &[g, x, y]);
        let sh = p.shadow(0, &[1, 2]);
        prop_assert!(sh.contains(&p));
        prop_assert!(sh.contains_point(&[int(g + up), int(x + t), int(y + t)]));
        if g > 0 {
            prop_assert!(!sh.contains_point(&[int(g - 1), int(x), int(y)]));
        }
        if x != y {
            prop_assert!(!sh.contains_point(&[int(g), int(y), int(x)]));
        }
    }

    #[test]
    fn entailed_rows_hold_on_sample_points(a in 0i64..10, w in 1i64..10, c in 0i64..25) {
        let p = boxed(&[a], &[a + w]);
        let row = Constraint::new(1, &[(0, int(1))], Cmp::Le, int(c));
        prop_assert!(p.entails(&row) == (a + w <= c));
    }
}
