use executor::*;
use geometry::{parse_scalar, Frame, Point, Scalar};
use proptest::prelude::{prop, prop_assert, prop_assert_eq, prop_assume, prop_oneof, proptest, Just};
use proptest::strategy::Strategy as _;
use protocol::{Color, ComputeOutcome, Protocol};
use Color::*;

fn q(s: &str) -> Scalar {
    parse_scalar(s).unwrap()
}

fn pt(x: &str, y: &str) -> Point {
    Point::new(q(x), q(y))
}

fn moving(color: Color, at: Point, origin: Point, target: Point) -> Robot {
    Robot { phase: Phase::Moving { target, move_origin: origin }, ..Robot::waiting(color, at) }
}

struct Script(std::vec::IntoIter<Action>);

impl Script {
    fn new(v: Vec<Action>) -> Self {
        Script(v.into_iter())
    }
}

impl Strategy for Script {
    fn name(&self) -> String {
        "test-script".into()
    }

    fn next_action(&mut self, _: &Protocol, _: &SystemConfig, _: &FairnessDebt) -> Option<Action> {
        self.0.next()
    }
}

#[test]
fn end_move_respects_delta() {
    let cfg = SystemConfig::new(
        moving(White, pt("0", "0"), pt("0", "0"), pt("8", "0")),
        Robot::waiting(Black, pt("9", "0")),
        q("1"),
    );
    let ours = Protocol::Ours;
    assert!(step(&ours, &cfg, &Action::EndMove(0, pt("1", "0"))).is_ok());
    assert!(matches!(
        step(&ours, &cfg, &Action::EndMove(0, pt("1/2", "0"))),
        Err(StepError::IllegalEndpoint { robot: 0, .. })
    ));
    assert!(step(&ours, &cfg, &Action::EndMove(0, pt("1", "1/100"))).is_err());
    assert!(step(&ours, &cfg, &Action::EndMove(0, pt("9", "0"))).is_err());
}

#[test]
fn short_moves_are_rigid() {
    let cfg = SystemConfig::new(
        moving(White, pt("0", "0"), pt("0", "0"), pt("1/2", "0")),
        Robot::waiting(Black, pt("1/2", "0")),
        q("1"),
    );
    let ours = Protocol::Ours;
    assert!(step(&ours, &cfg, &Action::EndMove(0, pt("1/2", "0"))).is_ok());
    for stop in ["0", "1/4", "49/100"] {
        assert!(step(&ours, &cfg, &Action::EndMove(0, pt(stop, "0"))).is_err());
    }
}

#[test]
fn progress_is_measured_from_the_move_origin() {
    // already advanced 3 of 8; stopping after one more unit is fine
    let cfg = SystemConfig::new(
        moving(White, pt("3", "0"), pt("0", "0"), pt("8", "0")),
        Robot::waiting(Black, pt("9", "0")),
        q("1"),
    );
    assert!(step(&Protocol::Ours, &cfg, &Action::EndMove(0, pt("3", "0"))).is_ok());
    assert!(step(&Protocol::Ours, &cfg, &Action::EndMove(0, pt("2", "0"))).is_err());
    assert!(step(&Protocol::Ours, &cfg, &Action::AdvanceMove(0, pt("2", "0"))).is_err());
    assert!(step(&Protocol::Ours, &cfg, &Action::AdvanceMove(0, pt("5", "0"))).is_ok());
}

#[test]
fn black_pair_look_then_finish_turns_white() {
    let cfg = SystemConfig::waiting([Black, Black], [pt("0", "0"), pt("1", "0")], q("1"));
    let ours = Protocol::Ours;
    let c1 = step(&ours, &cfg, &Action::Look(0)).unwrap();
    assert!(matches!(c1.robots[0].phase, Phase::Computing { .. }));
    assert_eq!(c1.robots[0].color, Black);
    let c2 = step(&ours, &c1, &Action::FinishCompute(0)).unwrap();
    assert_eq!(c2.robots[0].color, White);
    assert_eq!(c2.robots[0].phase, Phase::Wait);
    assert_eq!(c2.robots[0].position, pt("0", "0"));
}

#[test]
fn zero_length_move_can_end() {
    let cfg = SystemConfig::new(
        moving(White, pt("2", "2"), pt("2", "2"), pt("2", "2")),
        Robot::waiting(Black, pt("9", "0")),
        q("1"),
    );
    let c = step(&Protocol::Ours, &cfg, &Action::EndMove(0, pt("2", "2"))).unwrap();
    assert_eq!(c.robots[0].phase, Phase::Wait);
}

#[test]
fn wrong_phase_is_rejected_without_change() {
    let cfg = SystemConfig::waiting([White, White], [pt("0", "0"), pt("1", "0")], q("1"));
    let ours = Protocol::Ours;
    for a in [Action::FinishCompute(0), Action::EndMove(1, pt("1", "0")), Action::AdvanceMove(0, pt("0", "0"))] {
        assert!(matches!(step(&ours, &cfg, &a), Err(StepError::IllegalPhase { .. })));
    }
    let looked = step(&ours, &cfg, &Action::Look(1)).unwrap();
    assert!(step(&ours, &looked, &Action::Look(1)).is_err());
    assert!(step(&ours, &looked, &Action::Both).is_err());
}

#[test]
fn both_looks_read_the_same_instant() {
    let cfg = SystemConfig::waiting([White, White], [pt("0", "0"), pt("4", "0")], q("1"));
    let c = step(&Protocol::Ours, &cfg, &Action::Both).unwrap();
    let c = step(&Protocol::Ours, &c, &Action::FinishCompute(0)).unwrap();
    let c = step(&Protocol::Ours, &c, &Action::FinishCompute(1)).unwrap();
    for r in &c.robots {
        assert_eq!(r.color, Black);
        assert!(matches!(&r.phase, Phase::Moving { target, .. } if *target == pt("2", "0")));
    }
}

#[test]
fn quiescence_examples() {
    let both = SystemConfig::waiting([White, White], [pt("1", "1"), pt("1", "1")], q("1"));
    assert!(is_gathered_quiescent(&both));
    let mut away = both.clone();
    away.robots[1] = moving(White, pt("1", "1"), pt("1", "1"), pt("2", "2"));
    assert!(!is_gathered_quiescent(&away));
    let mut computing = both.clone();
    computing.robots[1].phase =
        Phase::Computing { outcome: ComputeOutcome { new_color: Black, target_local: Some(Point::origin()) } };
    assert!(is_gathered_quiescent(&computing));
    // no successor of that configuration separates the robots
    for p in [Protocol::Ours, Protocol::Viglietta] {
        for cfg in successors(&p, &computing) {
            assert!(cfg.is_gathered());
        }
    }
}

/// Legal successors with endpoints drawn from a few salient points.
fn successors(p: &Protocol, cfg: &SystemConfig) -> Vec<SystemConfig> {
    let mut actions = vec![Action::Both];
    for r in 0..2 {
        actions.push(Action::Look(r));
        actions.push(Action::FinishCompute(r));
        if let Phase::Moving { target, move_origin } = &cfg.robots[r].phase {
            for t in ["0", "1/3", "1/2", "1"] {
                let w = geometry::interpolate(move_origin, target, &q(t)).unwrap();
                actions.push(Action::AdvanceMove(r, w.clone()));
                actions.push(Action::EndMove(r, w));
            }
        }
    }
    actions.iter().filter_map(|a| step(p, cfg, a).ok()).collect()
}

#[test]
fn run_stops_on_zero_budget() {
    let cfg = SystemConfig::waiting([White, White], [pt("0", "0"), pt("1", "0")], q("1"));
    let out = run(&Protocol::Ours, &cfg, &mut Script::new(vec![]), 16, 0, None).unwrap();
    assert_eq!(out.verdict, Verdict::Timeout);
    let out = run(&Protocol::Ours, &cfg, &mut Script::new(vec![]), 16, 10, None).unwrap();
    assert_eq!(out.verdict, Verdict::ScriptEnd);
    assert!(matches!(run(&Protocol::Ours, &cfg, &mut Script::new(vec![]), 0, 10, None), Err(RunError::BadWindow)));
}

#[test]
fn run_reports_gathering() {
    let cfg = SystemConfig::waiting([White, White], [pt("0", "0"), pt("2", "0")], q("1"));
    let script = vec![
        Action::Both,
        Action::FinishCompute(0),
        Action::FinishCompute(1),
        Action::EndMove(0, pt("1", "0")),
        Action::EndMove(1, pt("1", "0")),
    ];
    let out = run(&Protocol::Ours, &cfg, &mut Script::new(script), 16, 100, None).unwrap();
    assert_eq!(out.verdict, Verdict::Gathered);
    assert_eq!(out.steps(), 5);
}

#[test]
fn run_rejects_starvation_and_endless_moves() {
    let cfg = SystemConfig::waiting([Black, White], [pt("0", "0"), pt("100", "0")], q("1"));
    // robot 0 looks and finishes over and over while robot 1 idles
    let script: Vec<Action> = (0..4).flat_map(|_| [Action::Look(0), Action::FinishCompute(0)]).collect();
    let err = run(&Protocol::Ours, &cfg, &mut Script::new(script), 4, 100, None).unwrap_err();
    assert!(matches!(err, RunError::Unfair { step: 3, .. }), "{err}");

    let cfg = SystemConfig::new(
        moving(White, pt("0", "0"), pt("0", "0"), pt("100", "0")),
        Robot::waiting(Black, pt("100", "0")),
        q("1"),
    );
    let mut script = Vec::new();
    for i in 1..=3 {
        script.push(Action::AdvanceMove(0, pt(&i.to_string(), "0")));
        script.push(Action::Look(1));
        script.push(Action::FinishCompute(1));
    }
    let err = run(&Protocol::Ours, &cfg, &mut Script::new(script), 3, 100, None).unwrap_err();
    assert!(matches!(err, RunError::Unfair { .. }), "{err}");
}

#[test]
fn illegal_script_is_a_strategy_fault() {
    let cfg = SystemConfig::waiting([White, White], [pt("0", "0"), pt("1", "0")], q("1"));
    let err = run(&Protocol::Ours, &cfg, &mut Script::new(vec![Action::FinishCompute(0)]), 16, 10, None).unwrap_err();
    assert!(matches!(err, RunError::IllegalAction { step: 0, .. }));
}

fn sample_trace() -> Trace {
    let cfg = SystemConfig::waiting([White, Black], [pt("0", "0"), pt("5/2", "-1")], q("1/3"));
    let script = vec![
        Action::Look(0),
        Action::Look(1),
        Action::FinishCompute(0),
        Action::AdvanceMove(0, pt("5/4", "-1/2")),
        Action::FinishCompute(1),
        Action::EndMove(0, pt("5/2", "-1")),
    ];
    run(&Protocol::Ours, &cfg, &mut Script::new(script), 16, 100, Some(7)).unwrap().trace
}

#[test]
fn traces_round_trip_and_replay() {
    let trace = sample_trace();
    let text = trace.to_text();
    assert!(text.lines().next().unwrap().contains("\"seed\":7"));
    assert!(text.contains("\"5/2\""));
    let back = Trace::read_from(text.as_bytes()).unwrap();
    assert_eq!(back, trace);
    let last = replay(&back).unwrap();
    assert_eq!(trace::digest(&last), trace.steps.last().unwrap().digest);
    assert_eq!(back.to_text(), text);
}

#[test]
fn replay_catches_tampering() {
    let mut trace = sample_trace();
    trace.steps[3].action = Action::AdvanceMove(0, pt("5/8", "-1/4"));
    assert!(matches!(replay(&trace), Err(TraceError::DigestMismatch { step: 3, .. })));
    let mut trace = sample_trace();
    trace.steps[2].digest = "00".into();
    assert!(matches!(replay(&trace), Err(TraceError::DigestMismatch { step: 2, .. })));
    assert!(Trace::read_from("{}\n".as_bytes()).is_err());
    assert!(Trace::read_from("".as_bytes()).is_err());
}

#[test]
fn trace_files_round_trip() {
    let trace = sample_trace();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.jsonl");
    trace.write_to(std::fs::File::create(&path).unwrap()).unwrap();
    let back = Trace::read_from(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    assert_eq!(replay(&back).unwrap(), replay(&trace).unwrap());
}

#[test]
fn frames_survive_serialization() {
    let mut cfg = SystemConfig::waiting([White, Black], [pt("0", "0"), pt("1", "0")], q("1"));
    cfg.robots[1].frame = Frame::new(Point::origin(), [[q("0"), q("-2")], [q("3"), q("1/2")]]).unwrap();
    let text = trace::config_json(&cfg);
    assert_eq!(trace::config_from_json(&text).unwrap(), cfg);
}

// --- properties over random legal executions ---

fn small() -> impl proptest::strategy::Strategy<Value = Scalar> {
    (-20i64..20, 1i64..5).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

fn point() -> impl proptest::strategy::Strategy<Value = Point> {
    (small(), small()).prop_map(|(x, y)| Point::new(x, y))
}

fn color() -> impl proptest::strategy::Strategy<Value = Color> {
    prop_oneof![Just(White), Just(Black)]
}

/// Picks among legal successors by index; endpoints on a coarse grid.
fn random_walk(p: &Protocol, start: &SystemConfig, picks: &[usize]) -> Vec<(SystemConfig, Action, SystemConfig)> {
    let mut out = Vec::new();
    let mut cfg = start.clone();
    for &k in picks {
        let mut options = vec![Action::Both];
        for r in 0..2 {
            options.push(Action::Look(r));
            options.push(Action::FinishCompute(r));
            if let Phase::Moving { target, .. } = &cfg.robots[r].phase {
                let here = cfg.robots[r].position.clone();
                for t in ["1/4", "1/2", "1"] {
                    let w = geometry::interpolate(&here, target, &q(t)).unwrap();
                    options.push(Action::AdvanceMove(r, w.clone()));
                    options.push(Action::EndMove(r, w));
                }
            }
        }
        let legal: Vec<(Action, SystemConfig)> =
            options.into_iter().filter_map(|a| step(p, &cfg, &a).ok().map(|c| (a, c))).collect();
        let (a, next) = legal[k % legal.len()].clone();
        out.push((cfg.clone(), a, next.clone()));
        cfg = next;
    }
    out
}

proptest! {
    #[test]
    fn swap_symmetry(ca in color(), cb in color(), a in point(), b in point(), picks in prop::collection::vec(0usize..64, 1..40)) {
        let p = Protocol::Ours;
        let cfg = SystemConfig::waiting([ca, cb], [a, b], q("1/2"));
        for (pre, act, post) in random_walk(&p, &cfg, &picks) {
            prop_assert_eq!(step(&p, &pre.swapped(), &act.swapped()).unwrap(), post.swapped());
        }
    }

    #[test]
    fn delta_soundness(ca in color(), cb in color(), a in point(), b in point(), picks in prop::collection::vec(0usize..64, 1..60)) {
        let p = Protocol::Ours;
        let cfg = SystemConfig::waiting([ca, cb], [a, b], q("1"));
        for (pre, act, _) in random_walk(&p, &cfg, &picks) {
            if let Action::EndMove(r, e) = &act {
                let Phase::Moving { target, move_origin } = &pre.robots[*r].phase else { unreachable!() };
                let moved = geometry::dist_sq(move_origin, e);
                let full = geometry::dist_sq(move_origin, target);
                prop_assert!(e == target || moved >= q("1"));
                prop_assert!(moved <= full);
            }
        }
    }

    #[test]
    fn collinear_runs_stay_collinear(ca in color(), cb in color(), a in point(), b in point(), picks in prop::collection::vec(0usize..64, 1..60)) {
        prop_assume!(a != b);
        let p = Protocol::Ours;
        let cfg = SystemConfig::waiting([ca, cb], [a.clone(), b.clone()], q("1/3"));
        let dir = b.sub(&a);
        let on_line = |x: &Point| x.sub(&a).cross(&dir) == Scalar::from_integer(0.into());
        for (_, _, post) in random_walk(&p, &cfg, &picks) {
            for r in &post.robots {
                prop_assert!(on_line(&r.position));
                if let Some(t) = r.pending_target() { prop_assert!(on_line(&t)); }
            }
        }
    }

    #[test]
    fn quiescence_is_closed(ca in color(), cb in color(), a in point(), picks in prop::collection::vec(0usize..64, 1..30)) {
        let p = Protocol::Ours;
        let cfg = SystemConfig::waiting([ca, cb], [a.clone(), a], q("1"));
        for (pre, _, post) in random_walk(&p, &cfg, &picks) {
            prop_assert!(is_gathered_quiescent(&pre));
            prop_assert!(is_gathered_quiescent(&post));
        }
    }

    #[test]
    fn runs_are_deterministic(picks in prop::collection::vec(0usize..64, 1..30)) {
        let p = Protocol::Ours;
        let cfg = SystemConfig::waiting([White, Black], [pt("0", "0"), pt("7", "3")], q("1/2"));
        let walk: Vec<Action> = random_walk(&p, &cfg, &picks).into_iter().map(|(_, a, _)| a).collect();
        let t1 = run(&p, &cfg, &mut Script::new(walk.clone()), 1000, 1000, Some(1)).unwrap().trace.to_text();
        let t2 = run(&p, &cfg, &mut Script::new(walk), 1000, 1000, Some(1)).unwrap().trace.to_text();
        prop_assert_eq!(t1, t2);
    }
}
