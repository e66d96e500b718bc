//! Asynchronous look-compute-move semantics for two robots.
//!
//! [`step`] applies one scheduler decision to a [`SystemConfig`]; [`run`]
//! drives a [`Strategy`] under a fairness window and records a replayable
//! [`Trace`].

mod config;
mod run;
mod step;
pub mod trace;

pub use config::{Phase, Robot, SystemConfig};
pub use run::{run, FairnessDebt, RunError, RunOutcome, Strategy, Verdict, DEFAULT_WINDOW};
pub use step::{is_gathered_quiescent, snapshot_for, step, Action, StepError};
pub use trace::{replay, Trace, TraceError, TraceHeader, TraceStep};

/// Robots are indexed 0 and 1 for bookkeeping; the protocol never sees it.
pub type RobotId = usize;

pub fn other(r: RobotId) -> RobotId {
    1 - r
}
