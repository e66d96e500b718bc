use abstract_checker::*;
use executor::{run, Action, SystemConfig};
use geometry::{parse_scalar, Point};
use protocol::{Color, Protocol};

fn random_runs(p: &Protocol, seeds: std::ops::Range<u64>) -> Vec<executor::Trace> {
    seeds
        .map(|seed| {
            let init = adversary::random_corrupted_config(seed);
            let mut s = adversary::RandomFair::new(seed);
            run(p, &init, &mut s, 16, 20_000, Some(seed)).unwrap().trace
        })
        .collect()
}

#[test]
fn random_runs_stay_inside_the_graph() {
    for p in [Protocol::Ours, Protocol::Viglietta] {
        let g = build_graph(&p);
        let mut report = OracleReport::default();
        for t in random_runs(&p, 0..150) {
            report.absorb(check_trace(&g, &t).unwrap());
        }
        assert!(report.transitions > 1000);
        assert!(report.passed(), "{p}: {:?}", report.missing.first());
    }
}

#[test]
fn scripted_counterexample_stays_inside_the_graph() {
    let p = Protocol::Viglietta;
    let g = build_graph(&p);
    let one = parse_scalar("1").unwrap();
    let init = SystemConfig::waiting([Color::Black; 2], [Point::origin(), Point::from_ints(1, 0)], one);
    let mut s = adversary::Counterexample::new(5);
    let t = run(&p, &init, &mut s, 16, 1000, None).unwrap().trace;
    let report = check_trace(&g, &t).unwrap();
    assert_eq!(report.transitions, 60);
    assert!(report.passed());
}

#[test]
fn missing_edges_are_reported() {
    let full = build_graph(&Protocol::Ours);
    let g = full.with_edges(Vec::new());
    let one = parse_scalar("1").unwrap();
    let cfg = SystemConfig::waiting([Color::White; 2], [Point::origin(), Point::from_ints(1, 0)], one);
    let next = executor::step(&Protocol::Ours, &cfg, &Action::Look(0)).unwrap();
    let m = check_step(&g, &cfg, &Action::Look(0), &next).unwrap();
    assert_eq!(m.action, "L");
    assert!(!m.moved);
    assert_eq!(check_step(&full, &cfg, &Action::Look(0), &next), None);
}
