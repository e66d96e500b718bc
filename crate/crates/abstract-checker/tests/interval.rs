use abstract_checker::interval::{faulty_loop_start, interval_exec, IntervalReport};
use abstract_checker::*;
use geometry::Scalar;
use protocol::Protocol;

fn int(v: i64) -> Scalar {
    Scalar::from_integer(v.into())
}

fn run(x: i64, delta: i64) -> IntervalReport {
    let g = build_graph(&Protocol::Ours);
    interval_exec(&g.rules, faulty_loop_start(), true, &int(x), &int(delta), 100_000).unwrap()
}

fn headline(x: i64, delta: i64) -> Scalar {
    (int(x) / int(2)).min(int(3 * delta))
}

#[test]
fn faulty_loop_at_ten_and_one() {
    let r = run(10, 1);
    assert!(!r.vacuous());
    assert_eq!(r.separation.as_ref().unwrap().1, int(7));
    assert_eq!(r.signed, Some((int(-5), int(7))));
    assert!(r.decrease().unwrap() >= headline(10, 1));
}

#[test]
fn faulty_loop_at_four_and_three() {
    let r = run(4, 3);
    assert_eq!(r.decrease(), Some(int(2)));
    assert!(r.decrease().unwrap() >= headline(4, 3));
}

#[test]
fn faulty_loop_at_six_and_two() {
    let r = run(6, 2);
    assert!(r.decrease().unwrap() >= headline(6, 2));
    assert_eq!(r.separation.unwrap().1, int(3));
}

#[test]
fn faulty_loop_within_delta_always_gathers() {
    for (x, d) in [(1, 1), (1, 2), (1, 4)] {
        let r = run(x, d);
        assert!(r.vacuous(), "({x}, {d})");
        assert!(r.gathered > 0);
        assert_eq!(r.decrease(), None);
    }
}
