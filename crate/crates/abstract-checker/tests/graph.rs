use std::collections::{BTreeSet, HashSet};

use abstract_checker::*;
use executor::{Phase, Robot, SystemConfig};
use geometry::{parse_scalar, Point, Scalar};
use proptest::prelude::{prop_assert_eq, proptest};
use protocol::{Color, ComputeOutcome, Protocol, Snapshot};
use Color::*;

fn q(s: &str) -> Scalar {
    parse_scalar(s).unwrap()
}

fn pt(x: &str, y: &str) -> Point {
    Point::new(q(x), q(y))
}

fn local(c: Color, p: AbstractPhase) -> Local {
    Local::new(c, p, false)
}

/// Counts nodes straight from the protocol's outputs: every colour can be
/// waiting, computing towards each next colour with no target or with one of
/// the targets that colour uses (fresh or stale), or moving to one of its
/// own targets (fresh or stale). Pairs are unordered; each pair comes
/// gathered or apart.
fn brute_force_node_count(p: &Protocol) -> usize {
    let mut fractions: [BTreeSet<Scalar>; 2] = Default::default();
    let idx = |c: Color| (c == Black) as usize;
    for me in [White, Black] {
        for other in [White, Black] {
            let out = p.compute(&Snapshot::new(me, other, pt("1", "0")));
            if let Some(t) = out.target_local {
                fractions[idx(out.new_color)].insert(t.x);
            }
        }
    }
    for f in fractions.iter_mut() {
        if f.is_empty() {
            f.insert(q("1"));
        }
    }
    let mut states = HashSet::new();
    for c in [White, Black] {
        states.insert(format!("{c:?} wait"));
        for next in [White, Black] {
            states.insert(format!("{c:?} compute {next:?} none"));
            for f in &fractions[idx(next)] {
                for stale in [false, true] {
                    states.insert(format!("{c:?} compute {next:?} {f} {stale}"));
                }
            }
        }
        for f in &fractions[idx(c)] {
            for stale in [false, true] {
                states.insert(format!("{c:?} move {f} {stale}"));
            }
        }
    }
    let n = states.len();
    n * (n + 1) / 2 * 2
}

#[test]
fn node_count_matches_independent_enumeration() {
    for p in [Protocol::Ours, Protocol::Viglietta, Protocol::parse("classl:1/2,0,1,1/3;WBWB").unwrap()] {
        let g = build_graph(&p);
        assert_eq!(g.nodes.len(), brute_force_node_count(&p), "{p}");
        let distinct: HashSet<_> = g.nodes.iter().collect();
        assert_eq!(distinct.len(), g.nodes.len());
    }
}

#[test]
fn graph_is_deterministic() {
    let a = build_graph(&Protocol::Ours);
    let b = build_graph(&Protocol::Ours);
    assert_eq!(a.nodes, b.nodes);
    assert_eq!(a.edges, b.edges);
}

#[test]
fn gathered_white_pair_only_idles() {
    let g = build_graph(&Protocol::Ours);
    let w = local(White, AbstractPhase::W);
    let start = g.node_id(&AbstractConfig::new(w.clone(), w, true)).unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(n) = stack.pop() {
        for &e in g.out_edges(n) {
            let edge = &g.edges[e];
            assert!(!edge.motion, "{}", g.describe_edge(edge));
            assert!(g.nodes[edge.to].gathered);
            if seen.insert(edge.to) {
                stack.push(edge.to);
            }
        }
    }
    // every configuration reached leads back to the start
    for &n in &seen {
        let mut back = BTreeSet::from([n]);
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            for s in g.successors(m) {
                if back.insert(s) {
                    stack.push(s);
                }
            }
        }
        assert!(back.contains(&start), "{} cannot return", g.nodes[n]);
    }
}

#[test]
fn black_pair_look_turns_white() {
    let g = build_graph(&Protocol::Ours);
    let b = local(Black, AbstractPhase::W);
    let from = g.node_id(&AbstractConfig::new(b.clone(), b, false)).unwrap();
    let hit = g
        .out_edges(from)
        .iter()
        .map(|&e| &g.edges[e])
        .any(|e| e.label == EdgeLabel::Look && g.nodes[e.to].robots.iter().any(|r| r.phase == AbstractPhase::C2W));
    assert!(hit);
}

#[test]
fn white_waiting_pair_apart_is_the_clean_start() {
    let cfg = SystemConfig::waiting([White, White], [pt("0", "0"), pt("3", "0")], q("1"));
    let rules = build_graph(&Protocol::Ours).rules;
    assert_eq!(rules.abstract_config(&cfg), AbstractConfig::clean_start());
}

#[test]
fn computing_towards_midpoint_is_c2h() {
    let mut a = Robot::waiting(White, pt("0", "0"));
    a.phase = Phase::Computing { outcome: ComputeOutcome { new_color: Black, target_local: Some(pt("1/2", "0")) } };
    let cfg = SystemConfig::new(a, Robot::waiting(White, pt("1", "0")), q("1"));
    let node = build_graph(&Protocol::Ours).rules.abstract_config(&cfg);
    assert!(node.robots.iter().any(|r| r.to_string() == "W/C2H"), "{node}");
}

#[test]
fn move_to_a_point_that_is_no_longer_the_midpoint_is_stale() {
    let mut a = Robot::waiting(Black, pt("0", "0"));
    a.phase = Phase::Moving { target: pt("10", "0"), move_origin: pt("0", "0") };
    let cfg = SystemConfig::new(a, Robot::waiting(Black, pt("0", "0")), q("1"));
    let node = build_graph(&Protocol::Ours).rules.abstract_config(&cfg);
    assert_eq!(node.to_string(), "(B/W, B/M2H*, G)");
}

fn any_config(seed: u64, steps: usize) -> SystemConfig {
    let init = adversary::random_corrupted_config(seed);
    let mut s = adversary::RandomFair::new(seed);
    let out = executor::run(&Protocol::Ours, &init, &mut s, 16, steps, Some(seed)).unwrap();
    out.final_config
}

proptest! {
    #[test]
    fn abstraction_ignores_robot_order(seed in 0u64..100_000, steps in 0usize..12) {
        let rules = build_graph(&Protocol::Ours).rules;
        let cfg = any_config(seed, steps);
        prop_assert_eq!(rules.abstract_config(&cfg), rules.abstract_config(&cfg.swapped()));
    }

    #[test]
    fn canonical_form_is_order_free(i in 0usize..18, j in 0usize..18, gathered: bool) {
        let locals = build_graph(&Protocol::Ours).rules.locals();
        let (a, b) = (locals[i].clone(), locals[j].clone());
        let (x, sx) = AbstractConfig::canonical(a.clone(), b.clone(), gathered);
        let (y, sy) = AbstractConfig::canonical(b, a, gathered);
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(sx && sy, false);
        prop_assert_eq!(x.robots[0] <= x.robots[1], true);
    }
}
