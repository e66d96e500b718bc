use abstract_checker::*;
use executor::{step, Action, Phase, Robot, SystemConfig};
use geometry::{parse_scalar, Point, Scalar};
use protocol::{Color, Protocol};
use Color::*;

fn q(s: &str) -> Scalar {
    parse_scalar(s).unwrap()
}

fn pt(x: &str, y: &str) -> Point {
    Point::new(q(x), q(y))
}

fn label_of(g: &AbstractGraph, labels: &Labels, cfg: &SystemConfig) -> SubsetLabel {
    labels.of(g.node_id(&g.rules.abstract_config(cfg)).unwrap())
}

#[test]
fn subset_sizes_for_both_protocols() {
    use SubsetLabel::*;
    let cases = [
        (Protocol::Ours, [(Sym, 31), (Asym, 16), (Faulty1, 21), (Faulty2, 13), (Illegal, 183), (Gathered, 78)]),
        (Protocol::Viglietta, [(Sym, 32), (Asym, 14), (Faulty1, 16), (Faulty2, 16), (Illegal, 186), (Gathered, 78)]),
    ];
    for (p, expect) in cases {
        let g = build_graph(&p);
        let labels = classify(&g).unwrap();
        for (l, n) in expect {
            assert_eq!(labels.count(l), n, "{p} {l}");
        }
    }
}

#[test]
fn named_configurations_land_in_their_subsets() {
    let g = build_graph(&Protocol::Ours);
    let labels = classify(&g).unwrap();
    let clean = SystemConfig::waiting([White, White], [pt("0", "0"), pt("5", "0")], q("1"));
    assert_eq!(label_of(&g, &labels, &clean), SubsetLabel::Sym);
    let mixed = SystemConfig::waiting([White, Black], [pt("0", "0"), pt("5", "0")], q("1"));
    assert_eq!(label_of(&g, &labels, &mixed), SubsetLabel::Asym);
    for n in 0..g.nodes.len() {
        // gathered with nothing pending
        if g.nodes[n].gathered && g.nodes[n].robots.iter().all(|r| r.settled()) {
            assert_eq!(labels.of(n), SubsetLabel::Gathered, "{}", g.nodes[n]);
        }
    }
    let w = Local::new(White, AbstractPhase::W, false);
    let quiet = g.node_id(&AbstractConfig::new(w.clone(), w, true)).unwrap();
    assert_eq!(labels.of(quiet), SubsetLabel::Gathered);
}

#[test]
fn labels_survive_robot_swap() {
    let g = build_graph(&Protocol::Ours);
    let labels = classify(&g).unwrap();
    for seed in 0..300 {
        let cfg = adversary::random_corrupted_config(seed);
        assert_eq!(label_of(&g, &labels, &cfg), label_of(&g, &labels, &cfg.swapped()));
    }
}

#[test]
fn all_structure_checks_pass_for_ours() {
    let g = build_graph(&Protocol::Ours);
    let labels = classify(&g).unwrap();
    let report = check_structure(&g, &labels);
    for c in &report.checks {
        assert!(c.passed, "{}: {} {:?}", c.name, c.detail, c.witness);
    }
    assert_eq!(report.checks.len(), 5);
}

#[test]
fn illegal_exits_reach_beyond_sym_and_faulty1() {
    // Corrupted starts may also land in ASYM, FAULTY2 or GATHERED; all of
    // those subsets are valid, so the weaker acyclicity check is the one
    // that matters.
    let g = build_graph(&Protocol::Ours);
    let labels = classify(&g).unwrap();
    let report = check_structure(&g, &labels);
    let exits = &report.illegal_exits;
    assert_eq!(exits.get(&SubsetLabel::Sym), Some(&63));
    assert_eq!(exits.get(&SubsetLabel::Faulty1), Some(&43));
    assert_eq!(exits.get(&SubsetLabel::Faulty2), Some(&20));
}

#[test]
fn empty_edge_set_passes_closure_checks() {
    let full = build_graph(&Protocol::Ours);
    let labels = classify(&full).unwrap();
    let g = full.with_edges(Vec::new());
    let report = check_structure(&g, &labels);
    assert!(report.passed(), "{:?}", report.checks);
}

#[test]
fn edge_leaving_asym_is_reported_with_witness() {
    let full = build_graph(&Protocol::Ours);
    let labels = classify(&full).unwrap();
    let from = labels.nodes(SubsetLabel::Asym).next().unwrap();
    let to = labels.nodes(SubsetLabel::Sym).next().unwrap();
    let bad = Edge { from, to, label: EdgeLabel::Look, actors: [true, false], motion: false, swapped: false };
    let mut edges = full.edges.clone();
    edges.push(bad);
    let report = check_structure(&full.with_edges(edges), &labels);
    let asym = report.checks.iter().find(|c| c.name == "ASYM is closed").unwrap();
    assert!(!asym.passed);
    assert!(!asym.witness.is_empty());
}

/// A gathered configuration whose second robot still moves towards a stale
/// point walks out of the terminal region and into FAULTY2. This is why the
/// check only rules out reaching FAULTY2 without passing through separated
/// SYM configurations.
#[test]
fn stale_move_from_gathered_reaches_faulty2_through_separated_sym() {
    let g = build_graph(&Protocol::Ours);
    let labels = classify(&g).unwrap();
    let mut b = Robot::waiting(Black, pt("0", "0"));
    b.phase = Phase::Moving { target: pt("10", "0"), move_origin: pt("0", "0") };
    let mut cfg = SystemConfig::new(Robot::waiting(Black, pt("0", "0")), b, q("1"));
    assert!(cfg.is_gathered());
    assert_eq!(label_of(&g, &labels, &cfg), SubsetLabel::Sym);
    let script = [
        Action::EndMove(1, pt("10", "0")),
        Action::Both,
        Action::FinishCompute(0),
        Action::Look(0),
        Action::FinishCompute(1),
        Action::Look(1),
    ];
    let mut seen = Vec::new();
    for a in &script {
        let next = step(&Protocol::Ours, &cfg, a).unwrap();
        assert_eq!(check_step(&g, &cfg, a, &next), None);
        cfg = next;
        seen.push(label_of(&g, &labels, &cfg));
    }
    assert_eq!(seen.last(), Some(&SubsetLabel::Faulty2));
    assert!(seen[..seen.len() - 1].iter().all(|l| *l == SubsetLabel::Sym), "{seen:?}");
    let report = check_structure(&g, &labels);
    assert!(report.terminal_sym_to_faulty2.is_some());
}

#[test]
fn viglietta_terminal_sym_reaches_faulty2_directly() {
    let g = build_graph(&Protocol::Viglietta);
    let labels = classify(&g).unwrap();
    let report = check_structure(&g, &labels);
    let c = report.checks.iter().find(|c| c.name.starts_with("terminal SYM")).unwrap();
    assert!(!c.passed);
    assert!(!c.witness.is_empty());
}
