use std::collections::VecDeque;
use std::fmt;

use crate::abstraction::AbstractConfig;
use crate::graph::AbstractGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubsetLabel {
    Sym,
    Asym,
    Faulty1,
    Faulty2,
    Illegal,
    Gathered,
}

impl SubsetLabel {
    pub const ALL: [SubsetLabel; 6] = [
        SubsetLabel::Sym,
        SubsetLabel::Asym,
        SubsetLabel::Faulty1,
        SubsetLabel::Faulty2,
        SubsetLabel::Illegal,
        SubsetLabel::Gathered,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubsetLabel::Sym => "SYM",
            SubsetLabel::Asym => "ASYM",
            SubsetLabel::Faulty1 => "FAULTY1",
            SubsetLabel::Faulty2 => "FAULTY2",
            SubsetLabel::Illegal => "ILLEGAL",
            SubsetLabel::Gathered => "GATHERED",
        }
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Label of every node plus the flags the labels are derived from.
#[derive(Debug, Clone)]
pub struct Labels {
    pub labels: Vec<SubsetLabel>,
    pub reachable: Vec<bool>,
}

impl Labels {
    pub fn of(&self, n: usize) -> SubsetLabel {
        self.labels[n]
    }

    pub fn count(&self, l: SubsetLabel) -> usize {
        self.labels.iter().filter(|x| **x == l).count()
    }

    pub fn nodes(&self, l: SubsetLabel) -> impl Iterator<Item = usize> + '_ {
        (0..self.labels.len()).filter(move |&n| self.labels[n] == l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("{} configurations fit no subset, first {}", .0.len(), .0[0])]
    Unclassified(Vec<String>),
}

/// Nodes reachable from `src` following `adj`.
pub(crate) fn closure(src: impl IntoIterator<Item = usize>, adj: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::new();
    for s in src {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

pub(crate) fn forward(g: &AbstractGraph) -> Vec<Vec<usize>> {
    (0..g.nodes.len()).map(|n| g.successors(n).collect()).collect()
}

/// Splits the nodes into the six subsets.
///
/// Configurations that can return to the clean start form SYM, or FAULTY2
/// when both robots head for different points. Of the remaining reachable
/// ones, those with distinct colours that can never become faulty or
/// equal-coloured again are ASYM, and those that can still become faulty are
/// FAULTY1.
pub fn classify(g: &AbstractGraph) -> Result<Labels, ClassifyError> {
    let start = g.node_id(&AbstractConfig::clean_start()).expect("clean start is a node");
    let succ = forward(g);
    let pred = g.predecessors();
    let reach = closure([start], &succ);
    let back = closure([start], &pred);
    let n = g.nodes.len();
    let equal_nominal = (0..n).filter(|&i| !g.nodes[i].gathered && g.nodes[i].same_colors());
    let can_equal = closure(equal_nominal, &pred);
    let can_fault = closure((0..n).filter(|&i| g.nodes[i].faulty()), &pred);
    let mut labels = Vec::with_capacity(n);
    let mut bad = Vec::new();
    for (i, node) in g.nodes.iter().enumerate() {
        let label = if node.gathered_quiet() {
            SubsetLabel::Gathered
        } else if !reach[i] {
            SubsetLabel::Illegal
        } else if back[i] {
            if node.faulty() {
                SubsetLabel::Faulty2
            } else {
                SubsetLabel::Sym
            }
        } else if !node.same_colors() && !can_equal[i] && !can_fault[i] {
            SubsetLabel::Asym
        } else if can_fault[i] {
            SubsetLabel::Faulty1
        } else {
            bad.push(node.to_string());
            SubsetLabel::Illegal
        };
        labels.push(label);
    }
    if !bad.is_empty() {
        return Err(ClassifyError::Unclassified(bad));
    }
    Ok(Labels { labels, reachable: reach })
}
