use executor::{Action, FairnessDebt, Phase, Strategy, SystemConfig};
use protocol::Protocol;

use crate::moves::{full_move, min_progress_point};

fn end_move(cfg: &SystemConfig, r: usize, minimal: bool) -> Action {
    let p = if minimal { min_progress_point(cfg, r) } else { full_move(cfg, r) };
    Action::EndMove(r, p.expect("robot is moving"))
}

/// Next micro-step of robot `r` on its own cycle.
fn own_step(cfg: &SystemConfig, r: usize, minimal: bool) -> Action {
    match cfg.robots[r].phase {
        Phase::Wait => Action::Look(r),
        Phase::Computing { .. } => Action::FinishCompute(r),
        Phase::Moving { .. } => end_move(cfg, r, minimal),
    }
}

/// Lock-step rounds: simultaneous looks, then both computes, then both moves.
#[derive(Debug, Clone)]
pub struct Fsync {
    minimal: bool,
}

impl Fsync {
    pub fn rigid() -> Self {
        Fsync { minimal: false }
    }

    /// Every move stops after exactly `min(delta, |move|)`.
    pub fn min_progress() -> Self {
        Fsync { minimal: true }
    }
}

impl Strategy for Fsync {
    fn name(&self) -> String {
        if self.minimal { "fsync-minprog" } else { "fsync" }.into()
    }

    fn next_action(&mut self, _: &Protocol, cfg: &SystemConfig, _: &FairnessDebt) -> Option<Action> {
        let [a, b] = &cfg.robots;
        if a.phase == Phase::Wait && b.phase == Phase::Wait {
            return Some(Action::Both);
        }
        // finish whatever is in flight, computes before moves, robot 0 first
        for want_compute in [true, false] {
            for r in 0..2 {
                let busy = match cfg.robots[r].phase {
                    Phase::Computing { .. } => want_compute,
                    Phase::Moving { .. } => !want_compute,
                    Phase::Wait => false,
                };
                if busy {
                    return Some(own_step(cfg, r, self.minimal));
                }
            }
        }
        None
    }
}

/// Whole cycles, one robot at a time, alternating; moves are rigid.
#[derive(Debug, Clone, Default)]
pub struct SsyncAlt {
    current: usize,
}

impl Strategy for SsyncAlt {
    fn name(&self) -> String {
        "ssync-alt".into()
    }

    fn next_action(&mut self, _: &Protocol, cfg: &SystemConfig, _: &FairnessDebt) -> Option<Action> {
        let r = self.current;
        let a = own_step(cfg, r, false);
        let completes_cycle = match (&a, &cfg.robots[r].phase) {
            (Action::EndMove(..), _) => true,
            (Action::FinishCompute(_), Phase::Computing { outcome }) => outcome.target_local.is_none(),
            _ => false,
        };
        if completes_cycle {
            self.current = 1 - r;
        }
        Some(a)
    }
}

/// Phase-level round robin where every move covers as little as allowed.
#[derive(Debug, Clone, Default)]
pub struct MinProgress {
    turn: usize,
}

impl Strategy for MinProgress {
    fn name(&self) -> String {
        "minprog".into()
    }

    fn next_action(&mut self, _: &Protocol, cfg: &SystemConfig, _: &FairnessDebt) -> Option<Action> {
        let r = self.turn;
        self.turn = 1 - r;
        Some(own_step(cfg, r, true))
    }
}
