//! Worst-case separation over every execution of a loop that starts and
//! ends in the same pair of settled robot states.

use geometry::Scalar;
use num_traits::{Signed, Zero};
use protocol::Color;

use crate::abstraction::Rules;
use crate::segment::{explore, ExploreError, Semantics, SymPhase, SymRobot, SymState, SymStep};

/// The loop through the faulty region: A waits in White, B has just
/// decided to turn from Black to White and has no target.
pub fn faulty_loop_start() -> [SymRobot; 2] {
    [
        SymRobot { color: Color::White, phase: SymPhase::Wait },
        SymRobot { color: Color::Black, phase: SymPhase::Computing { next: Color::White, has_target: false } },
    ]
}

#[derive(Debug, Clone)]
pub struct IntervalReport {
    pub x: Scalar,
    pub delta: Scalar,
    /// Distinct symbolic end states that close the loop.
    pub returns: usize,
    /// Executions that end gathered and settled instead of closing the loop.
    pub gathered: usize,
    /// Range of the final separation over loop-closing executions.
    pub separation: Option<(Scalar, Scalar)>,
    /// Range of the final signed offset of B from A, where A started at 0
    /// and B at `x`.
    pub signed: Option<(Scalar, Scalar)>,
    /// One execution attaining the largest final separation.
    pub worst: Vec<SymStep>,
}

impl IntervalReport {
    /// No execution closes the loop, so there is nothing to certify.
    pub fn vacuous(&self) -> bool {
        self.returns == 0
    }

    /// Guaranteed decrease of the separation per lap, `None` if vacuous.
    pub fn decrease(&self) -> Option<Scalar> {
        self.separation.as_ref().map(|(_, hi)| &self.x - hi)
    }
}

/// Runs every execution from `start` with the robots `x` apart until the
/// pair of states recurs (in either order) or the robots gather for good.
/// With `through_faulty`, only laps during which both robots held different
/// targets at once are counted as returns.
pub fn interval_exec(
    rules: &Rules,
    start: [SymRobot; 2],
    through_faulty: bool,
    x: &Scalar,
    delta: &Scalar,
    limit: usize,
) -> Result<IntervalReport, ExploreError> {
    assert!(x.is_positive() && delta.is_positive());
    let sem = Semantics { rules, delta: delta.clone(), track_faulty: through_faulty };
    let [a, b] = start;
    let closes = |s: &SymState| s.robots == [a, b] || s.robots == [b, a];
    let stop = |s: &SymState| s.settled() && (closes(s) || s.gathered());
    let init = SymState::anchored(a, b).with_separation(x);
    let ends = explore(&sem, init, &stop, limit)?;
    let mut report = IntervalReport {
        x: x.clone(),
        delta: delta.clone(),
        returns: 0,
        gathered: 0,
        separation: None,
        signed: None,
        worst: Vec::new(),
    };
    let mut best: Option<Scalar> = None;
    for s in &ends {
        if through_faulty && !s.faulty {
            continue;
        }
        if s.gathered() {
            report.gathered += 1;
            continue;
        }
        if !closes(s) {
            continue;
        }
        report.returns += 1;
        let (Some(lo), Some(hi)) = s.offset() else { unreachable!("positions are bounded by x") };
        widen(&mut report.signed, &lo, &hi);
        // the state is split by order, so the offset keeps one sign
        let (dlo, dhi) = if lo.is_negative() || (lo.is_zero() && hi.is_zero()) { (-hi, -lo) } else { (lo, hi) };
        if best.as_ref().is_none_or(|m| dhi > *m) {
            best = Some(dhi.clone());
            report.worst = s.path.clone();
        }
        widen(&mut report.separation, &dlo, &dhi);
    }
    Ok(report)
}

fn widen(range: &mut Option<(Scalar, Scalar)>, lo: &Scalar, hi: &Scalar) {
    match range {
        None => *range = Some((lo.clone(), hi.clone())),
        Some((l, h)) => {
            if lo < l {
                *l = lo.clone();
            }
            if hi > h {
                *h = hi.clone();
            }
        }
    }
}
