use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::GeometryError;

pub type Scalar = BigRational;

/// Parses `"n"` or `"n/d"` with an optional leading minus sign.
pub fn parse_scalar(s: &str) -> Result<Scalar, GeometryError> {
    let bad = || GeometryError::BadScalar(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// Always `num/den`, even for integers, so trace files have one shape.
pub fn format_scalar(v: &Scalar) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn isqrt_floor(v: &BigInt) -> BigInt {
    if v.is_negative() {
        return BigInt::zero();
    }
    v.sqrt()
}

/// A rational `r >= sqrt(v)` with `r - sqrt(v) <= 1/scale`.
/// Exact when `v` is the square of a rational.
pub fn sqrt_upper(v: &Scalar, scale: u32) -> Scalar {
    if v.is_zero() || v.is_negative() {
        return Scalar::zero();
    }
    let (n, d) = (v.numer(), v.denom());
    let (rn, rd) = (isqrt_floor(n), isqrt_floor(d));
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        return Scalar::new(rn, rd);
    }
    // sqrt(n/d) = sqrt(n*d)/d, bounded above by (floor(sqrt(n*d*s^2)) + 1) / (d*s)
    let s = BigInt::from(scale);
    let inner = n * d * &s * &s;
    let root = isqrt_floor(&inner) + BigInt::one();
    Scalar::new(root, d * s)
}

/// The non-rigid movement rule: a move that covers fraction `t` of a segment
/// of squared length `seg_sq` is acceptable iff it reaches the end or its
/// length is at least `delta`. Decided as `t^2 * seg_sq >= delta^2`.
pub fn progress_ok(t: &Scalar, seg_sq: &Scalar, delta: &Scalar) -> bool {
    t.is_one() || t * t * seg_sq >= delta * delta
}
