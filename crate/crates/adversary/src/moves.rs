use executor::{Phase, Robot, SystemConfig};
use geometry::{dist_sq, interpolate, segment_param, sqrt_upper, Point, Scalar};
use num_traits::{One, Zero};

/// Resolution of the rational bound used when `delta / |move|` is irrational.
const SQRT_SCALE: u32 = 1 << 20;

/// Smallest fraction of a move (from its origin) the adversary may stop at,
/// rounded up to a rational when the exact value is irrational.
pub fn progress_fraction_floor(seg_sq: &Scalar, delta: &Scalar) -> Scalar {
    if seg_sq.is_zero() || delta * delta >= *seg_sq {
        return Scalar::one();
    }
    let t = sqrt_upper(&(delta * delta / seg_sq), SQRT_SCALE);
    t.min(Scalar::one())
}

/// Where a moving robot stops if it travels as little as the rules allow.
pub fn min_progress_point(cfg: &SystemConfig, r: usize) -> Option<Point> {
    let robot = &cfg.robots[r];
    let Phase::Moving { target, move_origin } = &robot.phase else { return None };
    let floor = progress_fraction_floor(&dist_sq(move_origin, target), &cfg.delta);
    let t = floor.max(current_fraction(robot).unwrap_or_else(Scalar::zero));
    Some(interpolate(move_origin, target, &t).expect("fraction within [0, 1]"))
}

pub(crate) fn current_fraction(robot: &Robot) -> Option<Scalar> {
    let Phase::Moving { target, move_origin } = &robot.phase else { return None };
    segment_param(move_origin, target, &robot.position)
}

pub(crate) fn full_move(cfg: &SystemConfig, r: usize) -> Option<Point> {
    match &cfg.robots[r].phase {
        Phase::Moving { target, .. } => Some(target.clone()),
        _ => None,
    }
}
