use abstract_checker::*;
use protocol::Protocol;

#[test]
fn export_is_byte_identical_and_well_formed() {
    let g = build_graph(&Protocol::Ours);
    let labels = classify(&g).unwrap();
    let a = to_dot(&g, &labels);
    let b = to_dot(&build_graph(&Protocol::Ours), &classify(&g).unwrap());
    assert_eq!(a, b);
    assert!(a.starts_with("digraph "));
    assert_eq!(a.matches('{').count(), a.matches('}').count());
    assert_eq!(a.matches("subgraph cluster_").count(), SubsetLabel::ALL.len());
    for l in SubsetLabel::ALL {
        assert!(a.contains(&format!("label=\"{}\";", l.name())));
    }
    assert_eq!(a.matches(" -> ").count(), g.edges.len());
    let declared =
        a.lines().filter(|l| l.trim_start().starts_with('n') && l.contains(" [label=") && !l.contains("->")).count();
    assert_eq!(declared, g.nodes.len());
    let faulty = g.nodes.iter().filter(|n| n.faulty()).count();
    assert_eq!(a.matches("peripheries=2").count(), faulty);
    // quotes inside labels are balanced on every line
    assert!(a.lines().all(|l| l.matches('"').count() % 2 == 0));
}
