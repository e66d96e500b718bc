use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::format_scalar;
use crate::{GeometryError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_integer(x.into()), Scalar::from_integer(y.into()))
    }

    pub fn origin() -> Self {
        Point::new(Scalar::zero(), Scalar::zero())
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &Scalar) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &Point) -> Scalar {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> Scalar {
        &self.x * &o.y - &self.y * &o.x
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_scalar(&self.x), format_scalar(&self.y))
    }
}

pub fn midpoint(a: &Point, b: &Point) -> Point {
    let half = Scalar::new(1.into(), 2.into());
    a.add(b).scale(&half)
}

pub fn interpolate(from: &Point, to: &Point, t: &Scalar) -> Result<Point, GeometryError> {
    if *t < Scalar::zero() || *t > Scalar::one() {
        return Err(GeometryError::ParameterOutOfRange(format_scalar(t)));
    }
    Ok(from.add(&to.sub(from).scale(t)))
}

pub fn dist_sq(a: &Point, b: &Point) -> Scalar {
    let d = a.sub(b);
    d.dot(&d)
}

/// If `p` lies on the closed segment `[a, b]`, returns `t` with
/// `p = a + t (b - a)`. A degenerate segment yields `t = 1` for its only point.
pub fn segment_param(a: &Point, b: &Point, p: &Point) -> Option<Scalar> {
    let ab = b.sub(a);
    let ap = p.sub(a);
    if ab.is_origin() {
        return ap.is_origin().then(Scalar::one);
    }
    if !ab.cross(&ap).is_zero() {
        return None;
    }
    let t = ab.dot(&ap) / ab.dot(&ab);
    (t >= Scalar::zero() && t <= Scalar::one()).then_some(t)
}
