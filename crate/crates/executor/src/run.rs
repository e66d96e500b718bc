use protocol::Protocol;

use crate::trace::{Trace, TraceHeader, TraceStep};
use crate::{is_gathered_quiescent, step, Action, Phase, RobotId, StepError, SystemConfig};

pub const DEFAULT_WINDOW: usize = 16;

/// Fairness bookkeeping handed to strategies before every decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessDebt {
    pub window: usize,
    /// Consecutive actions since each robot last acted.
    pub idle: [usize; 2],
    /// Own turns spent in the current Computing/Moving phase.
    pub phase_turns: [usize; 2],
}

impl FairnessDebt {
    pub fn new(window: usize) -> Self {
        FairnessDebt { window, idle: [0, 0], phase_turns: [0, 0] }
    }

    /// True when the next action must involve `r`.
    pub fn starving(&self, r: RobotId) -> bool {
        self.idle[r] + 1 >= self.window
    }

    /// True when `r`'s next own turn must end its current phase.
    pub fn must_finish_phase(&self, r: RobotId) -> bool {
        self.phase_turns[r] + 1 >= self.window
    }

    /// Why `a` would break fairness in `cfg`, if it would.
    pub fn check(&self, cfg: &SystemConfig, a: &Action) -> Result<(), String> {
        for r in 0..2 {
            if !a.involves(r) && self.starving(r) {
                return Err(format!("robot {r} idle for {} actions", self.window));
            }
        }
        if let Action::AdvanceMove(r, _) = a {
            if self.must_finish_phase(*r) && matches!(cfg.robots[*r].phase, Phase::Moving { .. }) {
                return Err(format!("robot {r} kept moving for {} of its turns", self.window));
            }
        }
        Ok(())
    }

    /// Books `a` as taken.
    pub fn record(&mut self, a: &Action) {
        for r in 0..2 {
            if a.involves(r) {
                self.idle[r] = 0;
            } else {
                self.idle[r] += 1;
            }
        }
        match a {
            Action::AdvanceMove(r, _) => self.phase_turns[*r] += 1,
            Action::EndMove(r, _) | Action::FinishCompute(r) => self.phase_turns[*r] = 0,
            Action::Look(_) | Action::Both => {}
        }
    }
}

/// A scheduler. Returning `None` ends the run.
pub trait Strategy {
    fn name(&self) -> String;

    fn next_action(&mut self, protocol: &Protocol, cfg: &SystemConfig, debt: &FairnessDebt) -> Option<Action>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Gathered,
    Timeout,
    ScriptEnd,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Gathered => "Gathered",
            Verdict::Timeout => "Timeout",
            Verdict::ScriptEnd => "ScriptEnd",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub verdict: Verdict,
    pub trace: Trace,
    pub final_config: SystemConfig,
}

impl RunOutcome {
    pub fn steps(&self) -> usize {
        self.trace.steps.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error("strategy {strategy} proposed an illegal action at step {step}: {source}")]
    IllegalAction { strategy: String, step: usize, source: StepError },
    #[error("strategy {strategy} broke fairness at step {step}: {reason}")]
    Unfair { strategy: String, step: usize, reason: String },
    #[error("fairness window must be at least 1")]
    BadWindow,
}

pub fn run(
    protocol: &Protocol,
    initial: &SystemConfig,
    strategy: &mut dyn Strategy,
    window: usize,
    max_steps: usize,
    seed: Option<u64>,
) -> Result<RunOutcome, RunError> {
    if window == 0 {
        return Err(RunError::BadWindow);
    }
    let header = TraceHeader {
        protocol: protocol.selector(),
        strategy: strategy.name(),
        delta: initial.delta.clone(),
        window,
        seed,
        initial: initial.clone(),
    };
    let mut trace = Trace { header, steps: Vec::new() };
    let mut cfg = initial.clone();
    let mut debt = FairnessDebt::new(window);
    let verdict = loop {
        if is_gathered_quiescent(&cfg) {
            break Verdict::Gathered;
        }
        if trace.steps.len() >= max_steps {
            break Verdict::Timeout;
        }
        let Some(action) = strategy.next_action(protocol, &cfg, &debt) else {
            break Verdict::ScriptEnd;
        };
        let at = trace.steps.len();
        debt.check(&cfg, &action).map_err(|reason| RunError::Unfair { strategy: strategy.name(), step: at, reason })?;
        cfg = step(protocol, &cfg, &action).map_err(|source| RunError::IllegalAction {
            strategy: strategy.name(),
            step: at,
            source,
        })?;
        debt.record(&action);
        trace.steps.push(TraceStep { digest: crate::trace::digest(&cfg), action });
    };
    Ok(RunOutcome { verdict, trace, final_config: cfg })
}
