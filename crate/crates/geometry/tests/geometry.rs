use geometry::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(s: &str) -> Scalar {
    parse_scalar(s).unwrap()
}

fn pt(x: &str, y: &str) -> Point {
    Point::new(q(x), q(y))
}

#[test]
fn midpoint_examples() {
    assert_eq!(midpoint(&pt("0", "0"), &pt("4", "0")), pt("2", "0"));
    assert_eq!(midpoint(&pt("3/7", "-2"), &pt("3/7", "-2")), pt("3/7", "-2"));
    assert_eq!(midpoint(&pt("0", "0"), &pt("1", "1")), pt("1/2", "1/2"));
}

#[test]
fn interpolate_examples() {
    assert_eq!(interpolate(&pt("0", "0"), &pt("8", "0"), &q("1/8")).unwrap(), pt("1", "0"));
    assert_eq!(interpolate(&pt("5", "5"), &pt("5", "5"), &q("2/3")).unwrap(), pt("5", "5"));
    assert_eq!(interpolate(&pt("0", "0"), &pt("3", "1"), &q("1")).unwrap(), pt("3", "1"));
    assert!(matches!(interpolate(&pt("0", "0"), &pt("3", "1"), &q("3/2")), Err(GeometryError::ParameterOutOfRange(_))));
    assert!(interpolate(&pt("0", "0"), &pt("3", "1"), &q("-1/9")).is_err());
}

#[test]
fn dist_sq_examples() {
    assert_eq!(dist_sq(&pt("0", "0"), &pt("3", "4")), q("25"));
    assert_eq!(dist_sq(&pt("7/3", "1"), &pt("7/3", "1")), Scalar::zero());
    assert_eq!(dist_sq(&pt("0", "0"), &pt("1", "1")), q("2"));
}

#[test]
fn frame_examples() {
    let id = Frame::identity();
    assert_eq!(id.to_local(&pt("9/2", "-1")), pt("9/2", "-1"));
    let two = Frame::new(Point::origin(), [[q("2"), q("0")], [q("0"), q("2")]]).unwrap();
    assert_eq!(two.to_local(&pt("4", "0")), pt("2", "0"));
    assert_eq!(Frame::new(Point::origin(), [[q("1"), q("2")], [q("2"), q("4")]]), Err(GeometryError::SingularBasis));
    let mirror = Frame::new(pt("1", "1"), [[q("0"), q("1")], [q("1"), q("0")]]).unwrap();
    assert_eq!(mirror.determinant(), q("-1"));
    assert_eq!(mirror.to_local(&pt("3", "2")), pt("1", "2"));
}

#[test]
fn scalar_text_round_trip() {
    assert_eq!(format_scalar(&q("3")), "3/1");
    assert_eq!(format_scalar(&q("-6/4")), "-3/2");
    assert_eq!(q(" 10 / 5 "), q("2"));
    assert!(parse_scalar("1/0").is_err());
    assert!(parse_scalar("x").is_err());
    assert_eq!(pt("1/2", "0").to_string(), "[1/2, 0/1]");
}

#[test]
fn segment_membership() {
    let (a, b) = (pt("0", "0"), pt("4", "2"));
    assert_eq!(segment_param(&a, &b, &pt("2", "1")), Some(q("1/2")));
    assert_eq!(segment_param(&a, &b, &pt("2", "3/2")), None);
    assert_eq!(segment_param(&a, &b, &pt("6", "3")), None);
    assert_eq!(segment_param(&a, &a, &a), Some(Scalar::one()));
    assert_eq!(segment_param(&a, &a, &b), None);
}

#[test]
fn progress_rule_is_exact() {
    // segment of length 8, delta 1: one eighth is exactly enough
    let s = q("64");
    assert!(progress_ok(&q("1/8"), &s, &q("1")));
    assert!(!progress_ok(&q("1/16"), &s, &q("1")));
    // shorter than delta: only the full move counts
    assert!(progress_ok(&q("1"), &q("1/4"), &q("1")));
    assert!(!progress_ok(&q("99/100"), &q("1/4"), &q("1")));
}

#[test]
fn sqrt_upper_bounds() {
    assert_eq!(sqrt_upper(&q("9/4"), 1000), q("3/2"));
    let r = sqrt_upper(&q("2"), 1000);
    assert!(&r * &r >= q("2"));
    assert!(&r - q("1/1000") < q("1415/1000"));
}

fn small() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

fn point() -> impl Strategy<Value = Point> {
    (small(), small()).prop_map(|(x, y)| Point::new(x, y))
}

fn frame() -> impl Strategy<Value = Frame> {
    (point(), small(), small(), small(), small())
        .prop_filter_map("singular", |(o, a, b, c, d)| Frame::new(o, [[a, b], [c, d]]).ok())
}

proptest! {
    #[test]
    fn frame_round_trip(f in frame(), p in point()) {
        prop_assert_eq!(f.from_local(&f.to_local(&p)), p.clone());
        prop_assert_eq!(f.to_local(&f.from_local(&p)), p);
    }

    #[test]
    fn frames_preserve_midpoints(f in frame(), a in point(), b in point()) {
        let m = midpoint(&f.to_local(&a), &f.to_local(&b));
        prop_assert_eq!(f.from_local(&m), midpoint(&a, &b));
    }

    #[test]
    fn interpolation_lands_on_segment(a in point(), b in point(), n in 0u32..=20) {
        let t = Scalar::new(n.into(), 20.into());
        let p = interpolate(&a, &b, &t).unwrap();
        let back = segment_param(&a, &b, &p).unwrap();
        if a != b { prop_assert_eq!(back, t); }
    }

    #[test]
    fn scalar_format_parses_back(v in small()) {
        prop_assert_eq!(parse_scalar(&format_scalar(&v)).unwrap(), v);
    }
}
