//! Replays concrete executions against the abstract graph. Every concrete
//! step has to show up as an edge, or the abstraction misses behaviour.

use executor::{step, Action, StepError, SystemConfig, Trace};

use crate::graph::{AbstractGraph, EdgeLabel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingEdge {
    pub from: String,
    pub to: String,
    pub action: String,
    pub moved: bool,
}

impl std::fmt::Display for MissingEdge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} --{}{}--> {}", self.from, self.action, if self.moved { " move" } else { "" }, self.to)
    }
}

#[derive(Debug, Clone, Default)]
pub struct OracleReport {
    pub transitions: usize,
    pub missing: Vec<MissingEdge>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn absorb(&mut self, other: OracleReport) {
        self.transitions += other.transitions;
        for m in other.missing {
            if !self.missing.contains(&m) {
                self.missing.push(m);
            }
        }
    }
}

fn label_of(action: &Action) -> EdgeLabel {
    match action {
        Action::Look(_) => EdgeLabel::Look,
        Action::FinishCompute(_) => EdgeLabel::Finish,
        Action::AdvanceMove(..) => EdgeLabel::Advance,
        Action::EndMove(..) => EdgeLabel::End,
        Action::Both => EdgeLabel::BothLook,
    }
}

/// Checks one concrete step. `None` when the graph has a matching edge.
pub fn check_step(g: &AbstractGraph, pre: &SystemConfig, action: &Action, post: &SystemConfig) -> Option<MissingEdge> {
    let from = g.rules.abstract_config(pre);
    let to = g.rules.abstract_config(post);
    let moved = pre.robots.iter().zip(&post.robots).any(|(a, b)| a.position != b.position);
    let label = label_of(action);
    // slots of `from` the acting robot may occupy
    let slots: Vec<[bool; 2]> = match action {
        Action::Both => vec![[true, true]],
        _ => {
            let r = action.actors()[0];
            let mine = g.rules.local(pre, r);
            (0..2).filter(|&s| from.robots[s] == mine).map(|s| [s == 0, s == 1]).collect()
        }
    };
    let found = match (g.node_id(&from), g.node_id(&to)) {
        (Some(f), Some(t)) => g
            .out_edges(f)
            .iter()
            .map(|&e| &g.edges[e])
            .any(|e| e.to == t && e.label == label && e.motion == moved && slots.contains(&e.actors)),
        _ => false,
    };
    (!found).then(|| MissingEdge { from: from.to_string(), to: to.to_string(), action: label.to_string(), moved })
}

/// Replays a trace and checks every step.
pub fn check_trace(g: &AbstractGraph, trace: &Trace) -> Result<OracleReport, StepError> {
    let protocol = g.rules.protocol();
    let mut report = OracleReport::default();
    let mut cfg = trace.header.initial.clone();
    for s in &trace.steps {
        let next = step(protocol, &cfg, &s.action)?;
        report.transitions += 1;
        if let Some(m) = check_step(g, &cfg, &s.action, &next) {
            if !report.missing.contains(&m) {
                report.missing.push(m);
            }
        }
        cfg = next;
    }
    Ok(report)
}
