use std::collections::{BTreeSet, HashMap};
use std::fmt;

use protocol::Protocol;

use crate::abstraction::{AbstractConfig, AbstractPhase, Local, Rules};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Look,
    Finish,
    Advance,
    End,
    BothLook,
}

impl EdgeLabel {
    pub fn short(self) -> &'static str {
        match self {
            EdgeLabel::Look => "L",
            EdgeLabel::Finish => "F",
            EdgeLabel::Advance => "V",
            EdgeLabel::End => "E",
            EdgeLabel::BothLook => "LL",
        }
    }

    /// Advancing part of the way is not a completed action for fairness.
    pub fn counts_as_acting(self) -> bool {
        self != EdgeLabel::Advance
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
    /// Acting slots, in the numbering of `from`.
    pub actors: [bool; 2],
    /// Some robot's position changed.
    pub motion: bool,
    /// Slot 0 of `to` is the robot that sat in slot 1 of `from`.
    pub swapped: bool,
}

#[derive(Debug, Clone)]
pub struct AbstractGraph {
    pub rules: Rules,
    pub nodes: Vec<AbstractConfig>,
    pub edges: Vec<Edge>,
    index: HashMap<AbstractConfig, usize>,
    out: Vec<Vec<usize>>,
}

impl AbstractGraph {
    pub fn node_id(&self, n: &AbstractConfig) -> Option<usize> {
        self.index.get(n).copied()
    }

    /// Edge ids leaving `n`.
    pub fn out_edges(&self, n: usize) -> &[usize] {
        &self.out[n]
    }

    pub fn successors(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[n].iter().map(|&e| self.edges[e].to)
    }

    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut p = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            p[e.to].push(e.from);
        }
        p
    }

    /// A graph over the same nodes with the given edges; used to exercise
    /// the checks on hand-made inputs.
    pub fn with_edges(&self, edges: Vec<Edge>) -> AbstractGraph {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push(i);
        }
        AbstractGraph { rules: self.rules.clone(), nodes: self.nodes.clone(), edges, index: self.index.clone(), out }
    }

    pub fn describe_edge(&self, e: &Edge) -> String {
        let who: Vec<String> =
            (0..2).filter(|&i| e.actors[i]).map(|i| self.nodes[e.from].robots[i].to_string()).collect();
        format!(
            "{} --{}[{}]{}--> {}",
            self.nodes[e.from],
            e.label,
            who.join("+"),
            if e.motion { " move" } else { "" },
            self.nodes[e.to]
        )
    }
}

/// All canonical nodes for the protocol.
pub fn enumerate_nodes(rules: &Rules) -> Vec<AbstractConfig> {
    let locals = rules.locals();
    let mut set = BTreeSet::new();
    for a in &locals {
        for b in &locals {
            for g in [false, true] {
                set.insert(AbstractConfig::new(a.clone(), b.clone(), g));
            }
        }
    }
    set.into_iter().collect()
}

struct Succ {
    to: AbstractConfig,
    label: EdgeLabel,
    actors: [bool; 2],
    motion: bool,
    swapped: bool,
}

fn place(i: usize, me: Local, other: Local, g: bool) -> (AbstractConfig, bool) {
    if i == 0 {
        AbstractConfig::canonical(me, other, g)
    } else {
        AbstractConfig::canonical(other, me, g)
    }
}

/// Ways the other robot's pending target can look after `me` moved.
fn other_after_motion(rules: &Rules, ot: &Local) -> Vec<Local> {
    let color = match &ot.phase {
        AbstractPhase::C2T { next, .. } => *next,
        AbstractPhase::M2T { .. } => ot.color,
        _ => return vec![ot.clone()],
    };
    let with_kind = |kind, stale| {
        let phase = match &ot.phase {
            AbstractPhase::C2T { next, .. } => AbstractPhase::C2T { next: *next, kind },
            _ => AbstractPhase::M2T { kind },
        };
        Local::new(ot.color, phase, stale)
    };
    let mut out = vec![with_kind(rules.stale_kind(color), true)];
    if ot.stale {
        for k in rules.kinds(color) {
            out.push(with_kind(k.clone(), false));
        }
    }
    out
}

fn successors(rules: &Rules, node: &AbstractConfig) -> Vec<Succ> {
    let g = node.gathered;
    let mut res = Vec::new();
    for i in 0..2 {
        let me = &node.robots[i];
        let ot = &node.robots[1 - i];
        let mut actors = [false; 2];
        actors[i] = true;
        let mut push = |me: Local, ot: Local, ng: bool, label, motion| {
            let (to, swapped) = place(i, me, ot, ng);
            res.push(Succ { to, label, actors, motion, swapped });
        };
        match &me.phase {
            AbstractPhase::W => {
                let phase = rules.look(me.color, ot.color, g);
                push(Local::new(me.color, phase, false), ot.clone(), g, EdgeLabel::Look, false);
            }
            AbstractPhase::C2B | AbstractPhase::C2W | AbstractPhase::C2N => {
                let next = match me.phase {
                    AbstractPhase::C2B => protocol::Color::Black,
                    _ => protocol::Color::White,
                };
                push(Local::new(next, AbstractPhase::W, false), ot.clone(), g, EdgeLabel::Finish, false);
            }
            AbstractPhase::C2T { next, kind } => {
                let m = Local::new(*next, AbstractPhase::M2T { kind: kind.clone() }, me.stale);
                push(m, ot.clone(), g, EdgeLabel::Finish, false);
            }
            AbstractPhase::M2T { kind } => {
                let reach: Vec<bool> = match (me.stale, g) {
                    (false, true) => vec![],
                    (false, false) if kind.is_other() => vec![true, false],
                    (false, false) => vec![false],
                    (true, true) => vec![false],
                    (true, false) => vec![true, false],
                };
                let mut outcomes: Vec<(bool, Local, bool)> = vec![(g, ot.clone(), false)];
                for ng in reach {
                    for o in other_after_motion(rules, ot) {
                        outcomes.push((ng, o, true));
                    }
                }
                let done = Local::new(me.color, AbstractPhase::W, false);
                for (ng, o, motion) in outcomes {
                    push(me.clone(), o.clone(), ng, EdgeLabel::Advance, motion);
                    push(done.clone(), o, ng, EdgeLabel::End, motion);
                }
            }
        }
    }
    let [a, b] = &node.robots;
    if a.phase == AbstractPhase::W && b.phase == AbstractPhase::W {
        let na = Local::new(a.color, rules.look(a.color, b.color, g), false);
        let nb = Local::new(b.color, rules.look(b.color, a.color, g), false);
        let (to, swapped) = AbstractConfig::canonical(na, nb, g);
        res.push(Succ { to, label: EdgeLabel::BothLook, actors: [true, true], motion: false, swapped });
    }
    res
}

/// Builds the full abstract transition graph, including configurations no
/// correct execution would start from.
pub fn build_graph(protocol: &Protocol) -> AbstractGraph {
    let rules = Rules::new(protocol);
    let nodes = enumerate_nodes(&rules);
    let index: HashMap<AbstractConfig, usize> = nodes.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
    let mut edges = BTreeSet::new();
    for (from, n) in nodes.iter().enumerate() {
        for s in successors(&rules, n) {
            let to = index[&s.to];
            edges.insert(Edge { from, to, label: s.label, actors: s.actors, motion: s.motion, swapped: s.swapped });
        }
    }
    let edges: Vec<Edge> = edges.into_iter().collect();
    let mut out = vec![Vec::new(); nodes.len()];
    for (i, e) in edges.iter().enumerate() {
        out[e.from].push(i);
    }
    AbstractGraph { rules, nodes, edges, index, out }
}
