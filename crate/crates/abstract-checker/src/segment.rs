//! Symbolic execution on the line through both robots.
//!
//! Positions, move origins and targets are variables of a polyhedron. The
//! initial separation `X` stays in slot 0 so outcomes relate the final
//! separation to the initial one. Partial moves are only materialised when
//! the other robot looks, which is the only moment they can matter.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use geometry::Scalar;
use protocol::Color;

use crate::abstraction::{no_target_phase, AbstractPhase, Rules};
use crate::poly::{Cmp, Polyhedron};

pub const X: usize = 0;
const TMP: usize = 7;
const DIM: usize = 8;

pub fn pos(r: usize) -> usize {
    1 + 3 * r
}
pub fn origin(r: usize) -> usize {
    2 + 3 * r
}
pub fn target(r: usize) -> usize {
    3 + 3 * r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymPhase {
    Wait,
    Computing { next: Color, has_target: bool },
    Moving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymRobot {
    pub color: Color,
    pub phase: SymPhase,
}

impl SymRobot {
    pub fn settled(&self) -> bool {
        matches!(self.phase, SymPhase::Wait | SymPhase::Computing { has_target: false, .. })
    }

    /// Abstract phase of a settled robot.
    pub fn settled_phase(&self) -> Option<AbstractPhase> {
        match self.phase {
            SymPhase::Wait => Some(AbstractPhase::W),
            SymPhase::Computing { next, has_target: false } => Some(no_target_phase(self.color, next)),
            _ => None,
        }
    }
}

impl fmt::Display for SymRobot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            SymPhase::Wait => write!(f, "{}/W", self.color.letter()),
            SymPhase::Computing { next, has_target } => {
                write!(f, "{}/C{}{}", self.color.letter(), next.letter(), if has_target { "+t" } else { "" })
            }
            SymPhase::Moving => write!(f, "{}/M", self.color.letter()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymStep {
    Look(usize),
    /// `mover` advances part of the way, then `looker` looks.
    AdvanceLook {
        mover: usize,
        looker: usize,
    },
    Finish(usize),
    End(usize),
}

impl SymStep {
    pub fn actor(self) -> usize {
        match self {
            SymStep::Look(r) | SymStep::Finish(r) | SymStep::End(r) => r,
            SymStep::AdvanceLook { looker, .. } => looker,
        }
    }
}

impl fmt::Display for SymStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = |r: usize| if r == 0 { 'A' } else { 'B' };
        match self {
            SymStep::Look(r) => write!(f, "look {}", n(*r)),
            SymStep::AdvanceLook { mover, looker } => write!(f, "advance {} + look {}", n(*mover), n(*looker)),
            SymStep::Finish(r) => write!(f, "finish {}", n(*r)),
            SymStep::End(r) => write!(f, "end {}", n(*r)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SymState {
    pub robots: [SymRobot; 2],
    pub poly: Polyhedron,
    pub acted: [bool; 2],
    /// Both robots have at some point held targets at different points.
    pub faulty: bool,
    pub path: Vec<SymStep>,
}

fn q(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

fn t(v: usize, c: i64) -> (usize, Scalar) {
    (v, q(c))
}

impl SymState {
    /// Robot 0 at 0 and robot 1 at `X > 0`, both settled.
    pub fn anchored(a: SymRobot, b: SymRobot) -> Self {
        let mut p = Polyhedron::universe(DIM);
        p.add(&[t(pos(0), 1)], Cmp::Eq, q(0));
        p.add(&[t(pos(1), 1), t(X, -1)], Cmp::Eq, q(0));
        p.add(&[t(X, -1)], Cmp::Lt, q(0));
        SymState { robots: [a, b], poly: p.tidy(), acted: [false; 2], faulty: false, path: Vec::new() }
    }

    pub fn with_separation(mut self, x: &Scalar) -> Self {
        self.poly.add(&[t(X, 1)], Cmp::Eq, x.clone());
        self.poly = self.poly.tidy();
        self
    }

    pub fn settled(&self) -> bool {
        self.robots.iter().all(SymRobot::settled)
    }

    /// The robots share a position everywhere in the polyhedron.
    pub fn gathered(&self) -> bool {
        let [_, (_, a), (_, b)] = self.order_split();
        !a.is_feasible() && !b.is_feasible()
    }

    /// Signed offset of robot 1 from robot 0: (inf, sup) of `p1 - p0`.
    /// `None` for an unbounded side.
    pub fn offset(&self) -> (Option<Scalar>, Option<Scalar>) {
        let terms = [t(pos(1), 1), t(pos(0), -1)];
        (self.poly.inf_of(&terms), self.poly.sup_of(&terms).value().cloned())
    }

    /// Splits on whether the robots share a position, then on their order.
    pub fn order_split(&self) -> [(Ordering, Polyhedron); 3] {
        let (a, b) = (pos(0), pos(1));
        [
            (Ordering::Same, self.poly.and(&[t(a, 1), t(b, -1)], Cmp::Eq, q(0))),
            (Ordering::ZeroFirst, self.poly.and(&[t(a, 1), t(b, -1)], Cmp::Lt, q(0))),
            (Ordering::OneFirst, self.poly.and(&[t(b, 1), t(a, -1)], Cmp::Lt, q(0))),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ordering {
    Same,
    /// Robot 0 strictly left of robot 1.
    ZeroFirst,
    OneFirst,
}

fn finish(p: Polyhedron) -> Option<Polyhedron> {
    let p = p.tidy();
    p.is_feasible().then_some(p)
}

/// Both endpoint orders of "a lies on the segment from s to e".
fn on_segment(p: &Polyhedron, s: usize, a: usize, e: usize) -> Vec<Polyhedron> {
    let mut out = Vec::new();
    for d in [1, -1] {
        let mut pp = p.clone();
        pp.add(&[t(s, d), t(a, -d)], Cmp::Le, q(0));
        pp.add(&[t(a, d), t(e, -d)], Cmp::Le, q(0));
        out.extend(finish(pp));
    }
    out
}

pub struct Semantics<'a> {
    pub rules: &'a Rules,
    pub delta: Scalar,
    /// Split states on whether the two pending targets differ, keeping the
    /// `faulty` flag exact.
    pub track_faulty: bool,
}

fn holds_target(r: &SymRobot) -> bool {
    matches!(r.phase, SymPhase::Moving | SymPhase::Computing { has_target: true, .. })
}

impl Semantics<'_> {
    fn look(&self, s: &SymState, i: usize, poly: &Polyhedron, out: &mut Vec<SymState>, step: SymStep) {
        let j = 1 - i;
        let (me, ot) = (s.robots[i], s.robots[j]);
        let (pi, pj) = (pos(i), pos(j));
        for g in [true, false] {
            let sides = if g {
                vec![poly.and(&[t(pi, 1), t(pj, -1)], Cmp::Eq, q(0))]
            } else {
                vec![poly.and(&[t(pi, 1), t(pj, -1)], Cmp::Lt, q(0)), poly.and(&[t(pj, 1), t(pi, -1)], Cmp::Lt, q(0))]
            };
            let rule = self.rules.rule(me.color, ot.color, g);
            for side in sides {
                if !side.is_feasible() {
                    continue;
                }
                let mut p = side;
                if let Some(l) = &rule.lambda {
                    p.add(&[t(origin(i), 1), t(pi, -1)], Cmp::Eq, q(0));
                    p.add(&[(target(i), q(1)), (pi, l - q(1)), (pj, -l.clone())], Cmp::Eq, q(0));
                }
                let mut ns = s.clone();
                ns.robots[i].phase = SymPhase::Computing { next: rule.next, has_target: rule.lambda.is_some() };
                ns.poly = p.tidy();
                ns.acted[i] = true;
                ns.path.push(step);
                out.push(ns);
            }
        }
    }

    /// Every single-step successor.
    pub fn successors(&self, s: &SymState) -> Vec<SymState> {
        let out = self.raw_successors(s);
        if !self.track_faulty {
            return out;
        }
        let mut split = Vec::with_capacity(out.len());
        for ns in out {
            if ns.faulty || !ns.robots.iter().all(holds_target) {
                split.push(ns);
                continue;
            }
            let (a, b) = (target(0), target(1));
            for (cmp, terms, faulty) in [
                (Cmp::Eq, [t(a, 1), t(b, -1)], false),
                (Cmp::Lt, [t(a, 1), t(b, -1)], true),
                (Cmp::Lt, [t(b, 1), t(a, -1)], true),
            ] {
                if let Some(p) = finish(ns.poly.and(&terms, cmp, q(0))) {
                    split.push(SymState { poly: p, faulty, ..ns.clone() });
                }
            }
        }
        split
    }

    /// Successors with every settled state split into its gathered and
    /// separated parts.
    fn raw_successors(&self, s: &SymState) -> Vec<SymState> {
        let mut out = Vec::new();
        for ns in self.moves(s) {
            if !ns.settled() {
                out.push(ns);
                continue;
            }
            for (_, p) in ns.order_split() {
                if let Some(p) = finish(p) {
                    out.push(SymState { poly: p, ..ns.clone() });
                }
            }
        }
        out
    }

    fn moves(&self, s: &SymState) -> Vec<SymState> {
        let mut out = Vec::new();
        for i in 0..2 {
            let j = 1 - i;
            match s.robots[i].phase {
                SymPhase::Wait => {
                    self.look(s, i, &s.poly, &mut out, SymStep::Look(i));
                    if s.robots[j].phase == SymPhase::Moving {
                        for p in on_segment(&s.poly, pos(j), TMP, target(j)) {
                            let moved = p.eliminate_all(&[pos(j)]).remap(&relabel(TMP, pos(j)), DIM);
                            self.look(s, i, &moved, &mut out, SymStep::AdvanceLook { mover: j, looker: i });
                        }
                    }
                }
                SymPhase::Computing { next, has_target } => {
                    let mut ns = s.clone();
                    ns.robots[i] =
                        SymRobot { color: next, phase: if has_target { SymPhase::Moving } else { SymPhase::Wait } };
                    ns.acted[i] = true;
                    ns.path.push(SymStep::Finish(i));
                    out.push(ns);
                }
                SymPhase::Moving => {
                    let (pi, oi, ti) = (pos(i), origin(i), target(i));
                    for base in on_segment(&s.poly, pi, TMP, ti) {
                        for d in [1, -1] {
                            let mut dir = base.clone();
                            dir.add(&[t(oi, d), t(ti, -d)], Cmp::Le, q(0));
                            // short move: taken in full
                            let mut rigid = dir.clone();
                            rigid.add(&[t(ti, d), t(oi, -d)], Cmp::Le, self.delta.clone());
                            rigid.add(&[t(TMP, 1), t(ti, -1)], Cmp::Eq, q(0));
                            // long move: at least delta from the origin
                            let mut long = dir;
                            long.add(&[t(oi, d), t(ti, -d)], Cmp::Le, -self.delta.clone());
                            long.add(&[t(oi, d), t(TMP, -d)], Cmp::Le, -self.delta.clone());
                            for p in [rigid, long] {
                                let Some(p) = finish(p) else { continue };
                                let p = p.eliminate_all(&[pi, oi, ti]).remap(&relabel(TMP, pi), DIM);
                                let mut ns = s.clone();
                                ns.robots[i].phase = SymPhase::Wait;
                                ns.poly = p;
                                ns.acted[i] = true;
                                ns.path.push(SymStep::End(i));
                                out.push(ns);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Identity map except that `from` moves to `to`; `to` must be dead.
fn relabel(from: usize, to: usize) -> Vec<Option<usize>> {
    (0..DIM)
        .map(|v| {
            if v == from {
                Some(to)
            } else if v == to {
                None
            } else {
                Some(v)
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExploreError {
    #[error("symbolic exploration gave up after {0} states")]
    Limit(usize),
}

/// Coordinates that carry information for these robot states: positions,
/// and origins and targets of pending moves.
pub fn live(robots: &[SymRobot; 2]) -> Vec<usize> {
    let mut out = vec![pos(0), pos(1)];
    for (i, r) in robots.iter().enumerate() {
        if holds_target(r) {
            out.extend([origin(i), target(i)]);
        }
    }
    out
}

/// Explores until `stop` holds, returning the stopped states.
///
/// A state is dropped when an earlier state with the same discrete part
/// covers it up to a translation and a smaller `X`. The semantics never
/// read `X` and commute with translations, so whatever the dropped state
/// could do the earlier one can do with at least the same decrease.
pub fn explore(
    sem: &Semantics<'_>,
    start: SymState,
    stop: &dyn Fn(&SymState) -> bool,
    limit: usize,
) -> Result<Vec<SymState>, ExploreError> {
    let mut seen: HashMap<Key, Vec<Polyhedron>> = HashMap::new();
    // a witness outside a stored polyhedron rules it out without any LP
    let covered =
        |old: &Polyhedron, new: &Polyhedron, w: &[geometry::Scalar]| old.contains_point(w) && old.contains(new);
    let mut stack = vec![(start, None::<Rc<Trail>>)];
    let mut done = Vec::new();
    let mut count = 0;
    while let Some((s, trail)) = stack.pop() {
        for mut ns in sem.successors(&s) {
            if stop(&ns) {
                done.push(ns);
                continue;
            }
            let key = (ns.robots, ns.acted, ns.faulty);
            let Some(w) = ns.poly.witness() else { continue };
            let bucket = seen.entry(key).or_default();
            if bucket.iter().any(|p| covered(p, &ns.poly, &w)) {
                continue;
            }
            // the same discrete state for the third time on this path:
            // generalise so that ever-growing chains stop, keeping the
            // invariant that everything stays between the starting points
            let mut earlier = Trail::iter(&trail).filter(|t| t.key == key);
            if let (Some(last), Some(_)) = (earlier.next(), earlier.next()) {
                let mut p = last.poly.widen(&ns.poly);
                for v in live(&ns.robots) {
                    p.add(&[t(v, 1), t(X, -1)], Cmp::Le, q(0));
                }
                ns.poly = p.tidy();
            }
            bucket.push(ns.poly.shadow(X, &live(&ns.robots)));
            count += 1;
            if count > limit {
                return Err(ExploreError::Limit(limit));
            }
            let t = Rc::new(Trail { key, poly: ns.poly.clone(), parent: trail.clone() });
            stack.push((ns, Some(t)));
        }
    }
    Ok(done)
}

type Key = ([SymRobot; 2], [bool; 2], bool);

/// Discrete states and polyhedra along the current path, newest first.
struct Trail {
    key: Key,
    poly: Polyhedron,
    parent: Option<Rc<Trail>>,
}

impl Trail {
    fn iter(start: &Option<Rc<Trail>>) -> impl Iterator<Item = &Trail> {
        std::iter::successors(start.as_deref(), |t| t.parent.as_deref())
    }
}
