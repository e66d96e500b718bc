//! Certification of every fair cycle.
//!
//! Cycles that avoid anchors must be motionless and gathered; this is read
//! off the finite graph. Cycles through anchors are checked on the anchor
//! graphs: from `x >= δ` every fair cycle must shrink the separation by a
//! fixed amount, and below `δ` there must be no fair cycle at all, so the
//! robots gather.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use geometry::{format_scalar, Scalar};
use num_traits::Zero;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::anchor::{anchor_graph, describe_anchor, AnchorGraph, Regime, Shape};
use crate::fair::fair_components;
use crate::graph::AbstractGraph;
use crate::segment::ExploreError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleKind {
    /// Some robot completes no action on the cycle.
    Unfair,
    /// Gathered, nobody moves.
    Motionless,
    /// Each lap shrinks the separation by at least `bound` and by at least
    /// `floor`·δ.
    Decreasing { bound: Option<Shape>, floor: Scalar },
}

impl fmt::Display for CycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleKind::Unfair => f.write_str("unfair"),
            CycleKind::Motionless => f.write_str("motionless"),
            CycleKind::Decreasing { bound: Some(s), floor } => {
                write!(f, "decreasing by {s} (at least {}δ)", format_scalar(floor))
            }
            CycleKind::Decreasing { bound: None, floor } => write!(f, "decreasing by {}δ", format_scalar(floor)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CycleCertificate {
    /// `None` for cycles that never pass an anchor.
    pub regime: Option<Regime>,
    pub cycle: Vec<String>,
    pub kind: CycleKind,
}

#[derive(Debug, Clone)]
pub struct CycleFailure {
    pub regime: Option<Regime>,
    pub reason: String,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub certificates: Vec<CycleCertificate>,
    pub failures: Vec<CycleFailure>,
    pub anchor_edges: [usize; 2],
}

impl CertifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn count(&self, pred: impl Fn(&CycleKind) -> bool) -> usize {
        self.certificates.iter().filter(|c| pred(&c.kind)).count()
    }
}

/// Node-simple cycles over the anchor edges, one per choice among parallel
/// edges, as lists of edge ids starting from their smallest node.
pub fn elementary_cycles(g: &AnchorGraph, keep: &dyn Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let n = g.anchors.len();
    let mut out_edges = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        if keep(i) {
            out_edges[e.from].push(i);
        }
    }
    let mut cycles = Vec::new();
    for s in 0..n {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        let mut path = Vec::new();
        walk(g, &out_edges, s, s, &mut on_path, &mut path, &mut cycles);
    }
    cycles
}

fn walk(
    g: &AnchorGraph,
    out_edges: &[Vec<usize>],
    s: usize,
    u: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    cycles: &mut Vec<Vec<usize>>,
) {
    for &e in &out_edges[u] {
        let v = g.edges[e].to;
        path.push(e);
        if v == s {
            cycles.push(path.clone());
        } else if v > s && !on_path[v] {
            on_path[v] = true;
            walk(g, out_edges, s, v, on_path, path, cycles);
            on_path[v] = false;
        }
        path.pop();
    }
}

fn describe_anchor_edge(g: &AnchorGraph, e: usize) -> String {
    let edge = &g.edges[e];
    let who: Vec<&str> = [("A", edge.acted[0]), ("B", edge.acted[1])].iter().filter(|x| x.1).map(|x| x.0).collect();
    let steps: Vec<String> = edge.path.iter().map(|s| s.to_string()).collect();
    format!(
        "{} --[{}] {}--> {}",
        describe_anchor(&g.anchors[edge.from]),
        steps.join(", "),
        if who.is_empty() { String::new() } else { format!("({} acted) ", who.join("+")) },
        describe_anchor(&g.anchors[edge.to])
    )
}

/// Shortest path of kept edges from `u` to `v`, as edge ids.
fn path_between(g: &AnchorGraph, edges: &[usize], u: usize, v: usize) -> Vec<usize> {
    let mut via: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::from([u]);
    let mut seen = BTreeSet::from([u]);
    while let Some(n) = queue.pop_front() {
        if n == v {
            break;
        }
        for &e in edges.iter().filter(|&&e| g.edges[e].from == n) {
            if seen.insert(g.edges[e].to) {
                via.insert(g.edges[e].to, e);
                queue.push_back(g.edges[e].to);
            }
        }
    }
    let mut path = Vec::new();
    let mut n = v;
    while n != u {
        let e = via[&n];
        path.push(e);
        n = g.edges[e].from;
    }
    path.reverse();
    path
}

/// A closed walk of anchor edges in which both robots act, if the kept
/// edges allow one.
fn fair_walk(g: &AnchorGraph, keep: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
    let mut dg: DiGraph<usize, usize> = DiGraph::new();
    let ids: Vec<_> = (0..g.anchors.len()).map(|i| dg.add_node(i)).collect();
    for (i, e) in g.edges.iter().enumerate() {
        if keep(i) {
            dg.add_edge(ids[e.from], ids[e.to], i);
        }
    }
    for comp in tarjan_scc(&dg) {
        let inside: BTreeSet<usize> = comp.iter().map(|n| dg[*n]).collect();
        let internal: Vec<usize> = (0..g.edges.len())
            .filter(|&i| keep(i) && inside.contains(&g.edges[i].from) && inside.contains(&g.edges[i].to))
            .collect();
        let first = |r: usize| internal.iter().copied().find(|&i| g.edges[i].acted[r]);
        let (Some(a), Some(b)) = (first(0), first(1)) else { continue };
        let (ea, eb) = (&g.edges[a], &g.edges[b]);
        let mut walk = vec![a];
        if a != b {
            walk.extend(path_between(g, &internal, ea.to, eb.from));
            walk.push(b);
        }
        walk.extend(path_between(g, &internal, g.edges[*walk.last().expect("nonempty")].to, ea.from));
        return Some(walk);
    }
    None
}

fn shape_rank(s: &Option<Shape>) -> usize {
    let menu = Shape::menu();
    s.as_ref().and_then(|s| menu.iter().position(|m| m == s)).unwrap_or(menu.len())
}

fn certify_anchor_graph(g: &AnchorGraph, report: &mut CertifyReport) {
    let regime = Some(g.regime);
    for (i, e) in g.edges.iter().enumerate() {
        if e.increases {
            report.failures.push(CycleFailure {
                regime,
                reason: "an execution between anchors ends farther apart".into(),
                witness: vec![describe_anchor_edge(g, i)],
            });
        }
    }
    // the edges that do not count as progress must not support a fair run
    let flat = |i: usize| g.regime == Regime::Near || !g.edges[i].decreasing();
    if let Some(walk) = fair_walk(g, &flat) {
        let witness: Vec<String> = walk.iter().map(|&i| describe_anchor_edge(g, i)).collect();
        report.failures.push(CycleFailure {
            regime,
            reason: match g.regime {
                Regime::Near => "robots closer than δ can cycle forever without gathering".into(),
                Regime::Far => "a fair run can go on forever without shrinking the separation".into(),
            },
            witness,
        });
    }
    for cycle in elementary_cycles(g, &|_| true) {
        let acts = cycle.iter().fold([false; 2], |a, &i| [a[0] | g.edges[i].acted[0], a[1] | g.edges[i].acted[1]]);
        let text: Vec<String> = cycle.iter().map(|&i| describe_anchor_edge(g, i)).collect();
        let kind = if acts != [true, true] {
            CycleKind::Unfair
        } else if g.regime == Regime::Near {
            report.failures.push(CycleFailure { regime, reason: "fair cycle below δ".into(), witness: text });
            continue;
        } else {
            let floor: Scalar = cycle.iter().map(|&i| g.edges[i].floor.clone()).sum();
            if floor.is_zero() {
                report.failures.push(CycleFailure {
                    regime,
                    reason: "fair cycle with no decrease".into(),
                    witness: text,
                });
                continue;
            }
            let best = cycle
                .iter()
                .filter(|&&i| g.edges[i].decreasing())
                .map(|&i| g.edges[i].shape.clone())
                .min_by_key(shape_rank)
                .flatten();
            CycleKind::Decreasing { bound: best, floor }
        };
        report.certificates.push(CycleCertificate { regime, cycle: text, kind });
    }
}

/// Settled, apart robots: the configurations the anchor graphs start from.
pub fn is_anchor(g: &AbstractGraph, n: usize) -> bool {
    let node = &g.nodes[n];
    !node.gathered && node.robots.iter().all(|r| r.settled())
}

/// Certifies every fair cycle of the protocol.
pub fn certify_cycles(g: &AbstractGraph, limit: usize) -> Result<CertifyReport, ExploreError> {
    let mut report = CertifyReport { certificates: Vec::new(), failures: Vec::new(), anchor_edges: [0, 0] };
    for comp in fair_components(g, &|n| !is_anchor(g, n)) {
        let walk: Vec<String> = comp.walk.iter().map(|&e| g.describe_edge(&g.edges[e])).collect();
        let gathered = comp.nodes.iter().all(|&n| g.nodes[n].gathered);
        if gathered && !comp.motion {
            report.certificates.push(CycleCertificate { regime: None, cycle: walk, kind: CycleKind::Motionless });
        } else {
            report.failures.push(CycleFailure {
                regime: None,
                reason: "fair cycle that never settles both robots apart".into(),
                witness: walk,
            });
        }
    }
    for (k, regime) in [Regime::Far, Regime::Near].into_iter().enumerate() {
        let ag = anchor_graph(&g.rules, regime, limit)?;
        report.anchor_edges[k] = ag.edges.len();
        certify_anchor_graph(&ag, &mut report);
    }
    Ok(report)
}
