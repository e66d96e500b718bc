use num_traits::Zero;

use crate::{GeometryError, Point, Scalar};

/// A robot's private coordinate system: `global = origin + basis * local`.
///
/// The basis may reflect, shear or rescale; only invertibility is required.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    origin: Point,
    basis: [[Scalar; 2]; 2],
    inverse: [[Scalar; 2]; 2],
}

impl Frame {
    pub fn new(origin: Point, basis: [[Scalar; 2]; 2]) -> Result<Self, GeometryError> {
        let [[a, b], [c, d]] = &basis;
        let det = a * d - b * c;
        if det.is_zero() {
            return Err(GeometryError::SingularBasis);
        }
        let inverse = [[d / &det, -(b / &det)], [-(c / &det), a / &det]];
        Ok(Frame { origin, basis, inverse })
    }

    pub fn identity() -> Self {
        Self::at(Point::origin())
    }

    /// Axis-aligned unit frame centred at `origin`.
    pub fn at(origin: Point) -> Self {
        let one = Scalar::from_integer(1.into());
        let zero = Scalar::zero();
        Frame::new(origin, [[one.clone(), zero.clone()], [zero, one]]).expect("identity basis")
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn basis(&self) -> &[[Scalar; 2]; 2] {
        &self.basis
    }

    pub fn determinant(&self) -> Scalar {
        let [[a, b], [c, d]] = &self.basis;
        a * d - b * c
    }

    /// Same orientation and scale, moved to a new origin.
    pub fn recentred(&self, origin: Point) -> Self {
        Frame { origin, basis: self.basis.clone(), inverse: self.inverse.clone() }
    }

    pub fn to_local(&self, p: &Point) -> Point {
        apply(&self.inverse, &p.sub(&self.origin))
    }

    pub fn from_local(&self, p: &Point) -> Point {
        apply(&self.basis, p).add(&self.origin)
    }
}

fn apply(m: &[[Scalar; 2]; 2], p: &Point) -> Point {
    Point::new(&m[0][0] * &p.x + &m[0][1] * &p.y, &m[1][0] * &p.x + &m[1][1] * &p.y)
}
