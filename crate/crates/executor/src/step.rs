use geometry::{dist_sq, progress_ok, segment_param, Point};
use protocol::{Protocol, Snapshot};

use crate::{other, Phase, RobotId, SystemConfig};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    Look(RobotId),
    FinishCompute(RobotId),
    AdvanceMove(RobotId, Point),
    EndMove(RobotId, Point),
    /// Both robots look at the same instant.
    Both,
}

impl Action {
    pub fn actors(&self) -> Vec<RobotId> {
        match self {
            Action::Look(r) | Action::FinishCompute(r) | Action::AdvanceMove(r, _) | Action::EndMove(r, _) => vec![*r],
            Action::Both => vec![0, 1],
        }
    }

    pub fn involves(&self, r: RobotId) -> bool {
        self.actors().contains(&r)
    }

    pub fn swapped(&self) -> Action {
        match self {
            Action::Look(r) => Action::Look(other(*r)),
            Action::FinishCompute(r) => Action::FinishCompute(other(*r)),
            Action::AdvanceMove(r, p) => Action::AdvanceMove(other(*r), p.clone()),
            Action::EndMove(r, p) => Action::EndMove(other(*r), p.clone()),
            Action::Both => Action::Both,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Action::Look(_) => "Look",
            Action::FinishCompute(_) => "FinishCompute",
            Action::AdvanceMove(..) => "AdvanceMove",
            Action::EndMove(..) => "EndMove",
            Action::Both => "Both",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("robot {robot} cannot {action} while in {phase}")]
    IllegalPhase { robot: RobotId, action: &'static str, phase: &'static str },
    #[error("robot {robot}: {reason}")]
    IllegalEndpoint { robot: RobotId, reason: String },
}

/// What robot `r` sees right now, in its own frame.
pub fn snapshot_for(cfg: &SystemConfig, r: RobotId) -> Snapshot {
    let me = &cfg.robots[r];
    let them = &cfg.robots[other(r)];
    Snapshot::new(me.color, them.color, me.local_frame().to_local(&them.position))
}

fn phase_error(cfg: &SystemConfig, robot: RobotId, action: &'static str) -> StepError {
    StepError::IllegalPhase { robot, action, phase: cfg.robots[robot].phase.name() }
}

fn look(protocol: &Protocol, cfg: &SystemConfig, next: &mut SystemConfig, r: RobotId) -> Result<(), StepError> {
    if cfg.robots[r].phase != Phase::Wait {
        return Err(phase_error(cfg, r, "Look"));
    }
    let outcome = protocol.compute(&snapshot_for(cfg, r));
    next.robots[r].phase = Phase::Computing { outcome };
    Ok(())
}

/// Applies one action. On error the input is untouched and nothing is returned.
pub fn step(protocol: &Protocol, cfg: &SystemConfig, action: &Action) -> Result<SystemConfig, StepError> {
    let mut next = cfg.clone();
    match action {
        Action::Look(r) => look(protocol, cfg, &mut next, *r)?,
        Action::Both => {
            // both snapshots read the same pre-state
            look(protocol, cfg, &mut next, 0)?;
            look(protocol, cfg, &mut next, 1)?;
        }
        Action::FinishCompute(r) => {
            let robot = &cfg.robots[*r];
            let Phase::Computing { outcome } = &robot.phase else {
                return Err(phase_error(cfg, *r, "FinishCompute"));
            };
            let n = &mut next.robots[*r];
            n.color = outcome.new_color;
            n.phase = match &outcome.target_local {
                None => Phase::Wait,
                Some(t) => {
                    Phase::Moving { target: robot.local_frame().from_local(t), move_origin: robot.position.clone() }
                }
            };
        }
        Action::AdvanceMove(r, waypoint) => {
            let robot = &cfg.robots[*r];
            let Phase::Moving { target, .. } = &robot.phase else {
                return Err(phase_error(cfg, *r, "AdvanceMove"));
            };
            if segment_param(&robot.position, target, waypoint).is_none() {
                return Err(StepError::IllegalEndpoint {
                    robot: *r,
                    reason: format!("waypoint {waypoint} is not on the remaining path to {target}"),
                });
            }
            next.robots[*r].position = waypoint.clone();
        }
        Action::EndMove(r, endpoint) => {
            let robot = &cfg.robots[*r];
            let Phase::Moving { target, move_origin } = &robot.phase else {
                return Err(phase_error(cfg, *r, "EndMove"));
            };
            if segment_param(&robot.position, target, endpoint).is_none() {
                return Err(StepError::IllegalEndpoint {
                    robot: *r,
                    reason: format!("endpoint {endpoint} is not on the remaining path to {target}"),
                });
            }
            let t = segment_param(move_origin, target, endpoint).expect("remaining path lies on the move segment");
            if !progress_ok(&t, &dist_sq(move_origin, target), &cfg.delta) {
                return Err(StepError::IllegalEndpoint {
                    robot: *r,
                    reason: format!("stopping at {endpoint} covers less than min(delta, |move|)"),
                });
            }
            let n = &mut next.robots[*r];
            n.position = endpoint.clone();
            n.phase = Phase::Wait;
        }
    }
    Ok(next)
}

/// Same position and nothing left that could move either robot off it.
pub fn is_gathered_quiescent(cfg: &SystemConfig) -> bool {
    cfg.is_gathered()
        && cfg.robots.iter().all(|r| match &r.phase {
            Phase::Wait => true,
            Phase::Computing { outcome } => outcome.target_local.as_ref().is_none_or(|t| t.is_origin()),
            Phase::Moving { target, .. } => *target == r.position,
        })
}
