//! Exact rational plane geometry.
//!
//! Everything here is computed over arbitrary-precision rationals, so
//! equality tests are exact and nothing is ever rounded.

mod frame;
mod point;
mod scalar;

pub use frame::Frame;
pub use point::{dist_sq, interpolate, midpoint, segment_param, Point};
pub use scalar::{format_scalar, isqrt_floor, parse_scalar, progress_ok, sqrt_upper, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("basis is singular")]
    SingularBasis,
    #[error("interpolation parameter {0} is outside [0, 1]")]
    ParameterOutOfRange(String),
    #[error("cannot parse rational {0:?}")]
    BadScalar(String),
}
