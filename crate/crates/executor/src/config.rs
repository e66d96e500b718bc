use geometry::{dist_sq, Frame, Point, Scalar};
use protocol::{Color, ComputeOutcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Phase {
    Wait,
    /// Outcome computed at look time, target still in the robot's frame.
    Computing {
        outcome: ComputeOutcome,
    },
    /// Target and origin in global coordinates.
    Moving {
        target: Point,
        move_origin: Point,
    },
}

impl Phase {
    pub fn name(&self) -> &'static str {
        match self {
            Phase::Wait => "Wait",
            Phase::Computing { .. } => "Computing",
            Phase::Moving { .. } => "Moving",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Robot {
    pub color: Color,
    pub position: Point,
    pub phase: Phase,
    /// Orientation and unit of the robot's private coordinates. Kept centred
    /// at (0, 0); it is re-centred on the robot whenever it is used.
    pub frame: Frame,
}

impl Robot {
    pub fn waiting(color: Color, position: Point) -> Self {
        Robot { color, frame: Frame::identity(), position, phase: Phase::Wait }
    }

    pub fn local_frame(&self) -> Frame {
        self.frame.recentred(self.position.clone())
    }

    /// Pending target in global coordinates, if any.
    pub fn pending_target(&self) -> Option<Point> {
        match &self.phase {
            Phase::Wait => None,
            Phase::Computing { outcome } => outcome.target_local.as_ref().map(|t| self.local_frame().from_local(t)),
            Phase::Moving { target, .. } => Some(target.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemConfig {
    pub robots: [Robot; 2],
    pub delta: Scalar,
}

impl SystemConfig {
    pub fn new(a: Robot, b: Robot, delta: Scalar) -> Self {
        assert!(delta > Scalar::from_integer(0.into()), "delta must be positive");
        SystemConfig { robots: [a, b], delta }
    }

    /// Both robots waiting with the given colours at the given points.
    pub fn waiting(colors: [Color; 2], positions: [Point; 2], delta: Scalar) -> Self {
        let [pa, pb] = positions;
        SystemConfig::new(Robot::waiting(colors[0], pa), Robot::waiting(colors[1], pb), delta)
    }

    pub fn separation_sq(&self) -> Scalar {
        dist_sq(&self.robots[0].position, &self.robots[1].position)
    }

    pub fn is_gathered(&self) -> bool {
        self.robots[0].position == self.robots[1].position
    }

    pub fn swapped(&self) -> Self {
        let [a, b] = self.robots.clone();
        SystemConfig { robots: [b, a], delta: self.delta.clone() }
    }
}
