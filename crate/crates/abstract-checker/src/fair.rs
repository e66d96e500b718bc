//! Fairness needs robot identities, which canonical nodes forget. The lift
//! pairs every node with a bit saying whether slot 0 holds robot A.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::graph::AbstractGraph;

/// A strongly connected set of configurations in which both robots act.
#[derive(Debug, Clone)]
pub struct FairComponent {
    /// Canonical node ids, sorted.
    pub nodes: Vec<usize>,
    pub motion: bool,
    /// Edge ids of a closed walk inside the component in which both robots
    /// act.
    pub walk: Vec<usize>,
}

struct LiftEdge {
    edge: usize,
    acts: [bool; 2],
}

/// Fair components of the subgraph induced by `keep`.
pub fn fair_components(g: &AbstractGraph, keep: &dyn Fn(usize) -> bool) -> Vec<FairComponent> {
    let mut lift: DiGraph<(usize, bool), LiftEdge> = DiGraph::new();
    let mut ids: HashMap<(usize, bool), NodeIndex> = HashMap::new();
    for n in (0..g.nodes.len()).filter(|&n| keep(n)) {
        for fl in [false, true] {
            ids.insert((n, fl), lift.add_node((n, fl)));
        }
    }
    for (ei, e) in g.edges.iter().enumerate() {
        if !keep(e.from) || !keep(e.to) {
            continue;
        }
        for fl in [false, true] {
            let mut acts = [false; 2];
            if e.label.counts_as_acting() {
                for slot in 0..2 {
                    if e.actors[slot] {
                        acts[slot ^ fl as usize] = true;
                    }
                }
            }
            lift.add_edge(ids[&(e.from, fl)], ids[&(e.to, fl ^ e.swapped)], LiftEdge { edge: ei, acts });
        }
    }
    let mut out = Vec::new();
    let mut seen_nodes = BTreeSet::new();
    for comp in tarjan_scc(&lift) {
        let inside: HashSet<NodeIndex> = comp.iter().copied().collect();
        let internal: Vec<_> = lift
            .edge_indices()
            .filter(|&e| {
                let (a, b) = lift.edge_endpoints(e).unwrap();
                inside.contains(&a) && inside.contains(&b)
            })
            .collect();
        let by = |r: usize| internal.iter().copied().find(|&e| lift[e].acts[r]);
        let (Some(ea), Some(eb)) = (by(0), by(1)) else { continue };
        let mut nodes: Vec<usize> = comp.iter().map(|&i| lift[i].0).collect();
        nodes.sort();
        nodes.dedup();
        // the mirrored copy of a component carries the same information
        if !seen_nodes.insert(nodes.clone()) {
            continue;
        }
        let motion = internal.iter().any(|&e| g.edges[lift[e].edge].motion);
        let ends = |e| lift.edge_endpoints(e).unwrap();
        let mut walk = vec![ea];
        walk.extend(path(&lift, &inside, ends(ea).1, ends(eb).0));
        walk.push(eb);
        walk.extend(path(&lift, &inside, ends(eb).1, ends(ea).0));
        out.push(FairComponent { nodes, motion, walk: walk.into_iter().map(|e| lift[e].edge).collect() });
    }
    out.sort_by(|a, b| a.nodes.cmp(&b.nodes));
    out
}

fn path(
    lift: &DiGraph<(usize, bool), LiftEdge>,
    inside: &HashSet<NodeIndex>,
    from: NodeIndex,
    to: NodeIndex,
) -> Vec<petgraph::graph::EdgeIndex> {
    let mut prev: HashMap<NodeIndex, petgraph::graph::EdgeIndex> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = HashSet::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for e in lift.edges(u) {
            use petgraph::visit::EdgeRef;
            let v = e.target();
            if inside.contains(&v) && seen.insert(v) {
                prev.insert(v, e.id());
                queue.push_back(v);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = to;
    while cur != from {
        let e = prev[&cur];
        out.push(e);
        cur = lift.edge_endpoints(e).unwrap().0;
    }
    out.reverse();
    out
}
