use executor::{Action, FairnessDebt, Phase, Robot, Strategy, SystemConfig};
use geometry::{interpolate, Frame, Point, Scalar};
use num_traits::{One, Zero};
use protocol::{Color, ComputeOutcome, Protocol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::moves::{current_fraction, progress_fraction_floor};

fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

/// A fraction in `[lo, 1]`, often exactly at one of the ends.
fn fraction_between(rng: &mut impl Rng, lo: &Scalar) -> Scalar {
    match rng.random_range(0..4) {
        0 => lo.clone(),
        1 => Scalar::one(),
        _ => {
            let m = rng.random_range(1..=16i64);
            let k = rng.random_range(0..=m);
            lo + (Scalar::one() - lo) * ratio(k, m)
        }
    }
}

/// Seeded random scheduler that pays its fairness debt on time.
#[derive(Debug, Clone)]
pub struct RandomFair {
    seed: u64,
    rng: ChaCha8Rng,
    /// Chance of a simultaneous look when both robots wait.
    pub p_both: f64,
    /// Chance a moving robot stops rather than pausing mid-way.
    pub p_end: f64,
}

impl RandomFair {
    pub fn new(seed: u64) -> Self {
        RandomFair { seed, rng: ChaCha8Rng::seed_from_u64(seed), p_both: 0.2, p_end: 0.6 }
    }

    fn move_action(&mut self, cfg: &SystemConfig, r: usize, must_end: bool) -> Action {
        let robot = &cfg.robots[r];
        let Phase::Moving { target, move_origin } = &robot.phase else { unreachable!("caller checked phase") };
        let here = current_fraction(robot).unwrap_or_else(Scalar::zero);
        if must_end || self.rng.random_bool(self.p_end) {
            let floor = progress_fraction_floor(&geometry::dist_sq(move_origin, target), &cfg.delta);
            let t = fraction_between(&mut self.rng, &floor.max(here));
            Action::EndMove(r, interpolate(move_origin, target, &t).expect("fraction in range"))
        } else {
            let t = fraction_between(&mut self.rng, &here);
            Action::AdvanceMove(r, interpolate(move_origin, target, &t).expect("fraction in range"))
        }
    }
}

impl Strategy for RandomFair {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn next_action(&mut self, _: &Protocol, cfg: &SystemConfig, debt: &FairnessDebt) -> Option<Action> {
        let both_wait = cfg.robots.iter().all(|r| r.phase == Phase::Wait);
        if both_wait && self.rng.random_bool(self.p_both) {
            return Some(Action::Both);
        }
        let r = match (debt.starving(0), debt.starving(1)) {
            (true, _) => 0,
            (_, true) => 1,
            _ => self.rng.random_range(0..2),
        };
        Some(match cfg.robots[r].phase {
            Phase::Wait => Action::Look(r),
            Phase::Computing { .. } => Action::FinishCompute(r),
            Phase::Moving { .. } => self.move_action(cfg, r, debt.must_finish_phase(r)),
        })
    }
}

fn coord(rng: &mut impl Rng) -> Scalar {
    let d = rng.random_range(1..=8i64);
    ratio(rng.random_range(-100 * d..=100 * d), d)
}

fn point(rng: &mut impl Rng) -> Point {
    Point::new(coord(rng), coord(rng))
}

fn frame(rng: &mut impl Rng) -> Frame {
    loop {
        let mut e = || ratio(rng.random_range(-4..=4i64), rng.random_range(1..=3i64));
        let basis = [[e(), e()], [e(), e()]];
        if let Ok(f) = Frame::new(Point::origin(), basis) {
            return f;
        }
    }
}

fn color(rng: &mut impl Rng) -> Color {
    if rng.random_bool(0.5) {
        Color::White
    } else {
        Color::Black
    }
}

fn robot(rng: &mut impl Rng) -> Robot {
    let c = color(rng);
    let f = frame(rng);
    match rng.random_range(0..3) {
        0 => Robot { frame: f, ..Robot::waiting(c, point(rng)) },
        1 => {
            let target_local = rng.random_bool(0.7).then(|| point(rng));
            let outcome = ComputeOutcome { new_color: color(rng), target_local };
            Robot { color: c, position: point(rng), phase: Phase::Computing { outcome }, frame: f }
        }
        _ => {
            let (origin, target) = (point(rng), point(rng));
            let t = ratio(rng.random_range(0..=4), 4);
            let position = interpolate(&origin, &target, &t).expect("fraction in range");
            Robot { color: c, position, phase: Phase::Moving { target, move_origin: origin }, frame: f }
        }
    }
}

/// Arbitrary colours, phases, pending targets, frames and positions in
/// `[-100, 100]^2`, with `delta` in `(0, 2]`.
pub fn random_corrupted_config(seed: u64) -> SystemConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = robot(&mut rng);
    let b = robot(&mut rng);
    let d = rng.random_range(1..=16i64);
    let delta = ratio(rng.random_range(1..=2 * d), d);
    SystemConfig::new(a, b, delta)
}
