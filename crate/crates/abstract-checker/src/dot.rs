use std::fmt::Write;

use crate::classify::{Labels, SubsetLabel};
use crate::graph::AbstractGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering with one cluster per subset. Faulty configurations are
/// drawn with a double outline, moving edges bold.
pub fn to_dot(g: &AbstractGraph, labels: &Labels) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&g.rules.protocol().selector()));
    let _ = writeln!(out, "  rankdir=LR;\n  node [shape=box, fontname=monospace];");
    for (i, l) in SubsetLabel::ALL.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{i} {{\n    label={};", quote(l.name()));
        for n in labels.nodes(*l) {
            let node = &g.nodes[n];
            let mut attrs = vec![format!("label={}", quote(&node.to_string()))];
            if node.faulty() {
                attrs.push("peripheries=2".into());
                attrs.push("color=red".into());
            }
            let _ = writeln!(out, "    n{n} [{}];", attrs.join(", "));
        }
        let _ = writeln!(out, "  }}");
    }
    for e in &g.edges {
        let mut attrs = vec![format!("label={}", quote(e.label.short()))];
        if e.motion {
            attrs.push("style=bold".into());
        }
        let _ = writeln!(out, "  n{} -> n{} [{}];", e.from, e.to, attrs.join(", "));
    }
    out.push_str("}\n");
    out
}
