use std::collections::{BTreeMap, VecDeque};

use crate::abstraction::AbstractConfig;
use crate::classify::{Labels, SubsetLabel};
use crate::fair::fair_components;
use crate::graph::AbstractGraph;

/// One graph assertion and, when it fails, a path showing why.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct StructureReport {
    pub checks: Vec<Check>,
    /// Edges leaving ILLEGAL, by target subset.
    pub illegal_exits: BTreeMap<SubsetLabel, usize>,
    /// A path from a terminal SYM configuration to FAULTY2 that is allowed
    /// to pass through separated SYM configurations, if there is one.
    pub terminal_sym_to_faulty2: Option<Vec<String>>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Shortest edge path from any of `src` to a node satisfying `goal`, staying
/// on nodes accepted by `through`.
fn shortest(
    g: &AbstractGraph,
    src: &[usize],
    goal: &dyn Fn(usize) -> bool,
    through: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut prev: Vec<Option<usize>> = vec![None; g.nodes.len()];
    let mut seen = vec![false; g.nodes.len()];
    let mut queue = VecDeque::new();
    for &s in src {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if goal(u) {
            let mut out = Vec::new();
            let mut cur = u;
            while let Some(e) = prev[cur] {
                out.push(e);
                cur = g.edges[e].from;
            }
            out.reverse();
            return Some(out);
        }
        for &e in g.out_edges(u) {
            let v = g.edges[e].to;
            if !seen[v] && through(v) {
                seen[v] = true;
                prev[v] = Some(e);
                queue.push_back(v);
            }
        }
    }
    None
}

fn describe(g: &AbstractGraph, edges: &[usize]) -> Vec<String> {
    edges.iter().map(|&e| g.describe_edge(&g.edges[e])).collect()
}

/// The offending edge, preceded by how the clean start gets there if it can.
fn edge_witness(g: &AbstractGraph, e: usize) -> Vec<String> {
    let start = g.node_id(&AbstractConfig::clean_start()).unwrap();
    let from = g.edges[e].from;
    let mut path = shortest(g, &[start], &|n| n == from, &|_| true).unwrap_or_default();
    path.push(e);
    describe(g, &path)
}

fn exits_check(
    g: &AbstractGraph,
    labels: &Labels,
    name: &'static str,
    from: SubsetLabel,
    allowed: &[SubsetLabel],
) -> Check {
    let bad = (0..g.edges.len()).find(|&e| {
        let edge = &g.edges[e];
        labels.of(edge.from) == from && !allowed.contains(&labels.of(edge.to))
    });
    let allowed: Vec<&str> = allowed.iter().map(|l| l.name()).collect();
    Check {
        name,
        passed: bad.is_none(),
        detail: match bad {
            None => format!("every edge out of {from} lands in {}", allowed.join(" or ")),
            Some(e) => format!("{from} reaches {}", labels.of(g.edges[e].to)),
        },
        witness: bad.map(|e| edge_witness(g, e)).unwrap_or_default(),
    }
}

/// Checks the exit structure of the subsets.
///
/// Leaving a subset for GATHERED always counts as a legal exit. ILLEGAL is
/// required to have no cycle in which both robots act; it may be left for
/// any labelled subset, and the exits are counted. Terminal SYM
/// configurations may reach FAULTY2 only through separated SYM ones.
pub fn check_structure(g: &AbstractGraph, labels: &Labels) -> StructureReport {
    use SubsetLabel::*;
    let mut checks = vec![
        exits_check(g, labels, "ASYM is closed", Asym, &[Asym, Gathered]),
        exits_check(g, labels, "FAULTY1 exits only to ASYM", Faulty1, &[Faulty1, Asym, Gathered]),
    ];

    let fair = fair_components(g, &|n| labels.of(n) == Illegal);
    let mut illegal_exits = BTreeMap::new();
    for e in &g.edges {
        if labels.of(e.from) == Illegal && labels.of(e.to) != Illegal {
            *illegal_exits.entry(labels.of(e.to)).or_insert(0) += 1;
        }
    }
    let census: Vec<String> = illegal_exits.iter().map(|(l, c)| format!("{l} {c}")).collect();
    checks.push(Check {
        name: "ILLEGAL has no fair cycle",
        passed: fair.is_empty(),
        detail: format!("{} fair components; exits: {}", fair.len(), census.join(", ")),
        witness: fair.first().map(|c| describe(g, &c.walk)).unwrap_or_default(),
    });

    let bad = (0..g.edges.len()).find(|&e| {
        let edge = &g.edges[e];
        labels.of(edge.from) == Gathered && (labels.of(edge.to) != Gathered || edge.motion)
    });
    checks.push(Check {
        name: "GATHERED is closed and motionless",
        passed: bad.is_none(),
        detail: match bad {
            None => "no edge out of GATHERED moves a robot or leaves it".into(),
            Some(e) => format!("edge to {} (motion {})", labels.of(g.edges[e].to), g.edges[e].motion),
        },
        witness: bad.map(|e| edge_witness(g, e)).unwrap_or_default(),
    });

    let terminal_sym: Vec<usize> = labels.nodes(Sym).filter(|&n| g.nodes[n].gathered).collect();
    let is_f2 = |n: usize| labels.of(n) == Faulty2;
    let direct = shortest(g, &terminal_sym, &is_f2, &|n| !(labels.of(n) == Sym && !g.nodes[n].gathered));
    checks.push(Check {
        name: "terminal SYM reaches FAULTY2 only via separated SYM",
        passed: direct.is_none(),
        detail: format!("{} terminal SYM configurations", terminal_sym.len()),
        witness: direct.map(|p| describe(g, &p)).unwrap_or_default(),
    });
    let terminal_sym_to_faulty2 = shortest(g, &terminal_sym, &is_f2, &|_| true).map(|p| describe(g, &p));

    StructureReport { checks, illegal_exits, terminal_sym_to_faulty2 }
}
