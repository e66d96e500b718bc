use executor::{step, Action, FairnessDebt, Phase, Strategy, SystemConfig};
use protocol::{Color, Protocol};

use crate::moves::full_move;
use crate::sync::SsyncAlt;
use crate::AdversaryError;

/// Robot labels inside one round of the script.
const A: usize = 0;
const B: usize = 1;

#[derive(Debug, Clone, Copy)]
enum Beat {
    Both,
    Look(usize),
    Finish(usize),
    /// End the move exactly at the target.
    Arrive(usize),
}

/// One halving round from "both Black, waiting": both look; A finishes and
/// looks again while B is still computing; A reaches B and runs a whole new
/// cycle there; B then completes its move to the old midpoint.
const ROUND: [Beat; 12] = [
    Beat::Both,
    Beat::Finish(A),
    Beat::Look(A),
    Beat::Finish(A),
    Beat::Finish(B),
    Beat::Look(B),
    Beat::Arrive(A),
    Beat::Look(A),
    Beat::Finish(A),
    Beat::Arrive(A),
    Beat::Finish(B),
    Beat::Arrive(B),
];

/// The scripted execution repeated `rounds` times. When the protocol refuses
/// a scripted step the strategy stops scripting and completes cycles one
/// robot at a time with rigid moves.
#[derive(Debug, Clone)]
pub struct Counterexample {
    rounds: usize,
    position: usize,
    fallback: Option<SsyncAlt>,
    checked: bool,
}

impl Counterexample {
    pub fn new(rounds: usize) -> Self {
        Counterexample { rounds, position: 0, fallback: None, checked: false }
    }

    pub fn check_premise(cfg: &SystemConfig) -> Result<(), AdversaryError> {
        let ok = cfg.robots.iter().all(|r| r.color == Color::Black && r.phase == Phase::Wait) && !cfg.is_gathered();
        if ok {
            Ok(())
        } else {
            Err(AdversaryError::Premise)
        }
    }

    /// True once the script had to be abandoned.
    pub fn diverged(&self) -> bool {
        self.fallback.is_some()
    }

    fn scripted(&self, cfg: &SystemConfig) -> Option<Action> {
        Some(match ROUND[self.position % ROUND.len()] {
            Beat::Both => Action::Both,
            Beat::Look(r) => Action::Look(r),
            Beat::Finish(r) => Action::FinishCompute(r),
            Beat::Arrive(r) => Action::EndMove(r, full_move(cfg, r)?),
        })
    }
}

impl Strategy for Counterexample {
    fn name(&self) -> String {
        format!("counterexample:{}", self.rounds)
    }

    fn next_action(&mut self, protocol: &Protocol, cfg: &SystemConfig, debt: &FairnessDebt) -> Option<Action> {
        if !self.checked {
            self.checked = true;
            Self::check_premise(cfg).ok()?;
        }
        if let Some(f) = &mut self.fallback {
            return f.next_action(protocol, cfg, debt);
        }
        if self.position >= self.rounds * ROUND.len() {
            return None;
        }
        match self.scripted(cfg).filter(|a| step(protocol, cfg, a).is_ok()) {
            Some(a) => {
                self.position += 1;
                Some(a)
            }
            None => {
                let mut f = SsyncAlt::default();
                let a = f.next_action(protocol, cfg, debt);
                self.fallback = Some(f);
                a
            }
        }
    }
}
