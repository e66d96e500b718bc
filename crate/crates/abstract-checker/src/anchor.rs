//! Executions between settled configurations, explored symbolically.
//!
//! A configuration is an anchor when the robots are apart and neither holds
//! a target. Every infinite execution that keeps moving passes through
//! anchors infinitely often, so distances only need comparing there. Lengths
//! are measured in units of δ, so δ is 1 and the separation `X` stays
//! symbolic.

use std::collections::BTreeMap;
use std::fmt;

use geometry::Scalar;
use num_traits::{One, Zero};
use protocol::Color;

use crate::abstraction::Rules;
use crate::poly::{Cmp, Polyhedron};
use crate::segment::{explore, pos, ExploreError, Semantics, SymPhase, SymRobot, SymState, SymStep, X};

/// Every ordered pair of settled robot states.
pub fn anchors() -> Vec<[SymRobot; 2]> {
    let mut locals = Vec::new();
    for color in Color::ALL {
        locals.push(SymRobot { color, phase: SymPhase::Wait });
        for next in Color::ALL {
            locals.push(SymRobot { color, phase: SymPhase::Computing { next, has_target: false } });
        }
    }
    let mut out = Vec::new();
    for a in &locals {
        for b in &locals {
            out.push([*a, *b]);
        }
    }
    out
}

/// A decrease bound `min(a·x, b·δ)`; a missing side is unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub per_x: Option<Scalar>,
    pub per_delta: Option<Scalar>,
}

fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}

impl Shape {
    /// Candidate bounds, tried in this order.
    pub fn menu() -> Vec<Shape> {
        let s = |a: Option<(i64, i64)>, b: Option<(i64, i64)>| Shape {
            per_x: a.map(|(n, d)| frac(n, d)),
            per_delta: b.map(|(n, d)| frac(n, d)),
        };
        vec![
            s(None, Some((2, 1))),
            s(Some((1, 1)), Some((2, 1))),
            s(Some((1, 2)), Some((3, 1))),
            s(None, Some((1, 1))),
            s(Some((1, 1)), Some((1, 1))),
            s(Some((1, 2)), Some((1, 1))),
            s(Some((1, 2)), None),
            s(Some((1, 4)), Some((1, 2))),
        ]
    }

    /// Whether `X - dist >= self` everywhere in `p`, given `dist_terms`.
    fn holds(&self, p: &Polyhedron, dist: &[(usize, Scalar)]) -> bool {
        // the violating region: X - dist below both sides of the minimum
        let mut bad = p.clone();
        let mut gap: Vec<(usize, Scalar)> = vec![(X, Scalar::one())];
        gap.extend(dist.iter().map(|(v, c)| (*v, -c.clone())));
        if let Some(a) = &self.per_x {
            let mut t = gap.clone();
            t.push((X, -a.clone()));
            bad.add(&t, Cmp::Lt, Scalar::zero());
        }
        if let Some(b) = &self.per_delta {
            bad.add(&gap, Cmp::Lt, b.clone());
        }
        !bad.is_feasible()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.per_x.as_ref().map(|a| {
            if a.is_one() {
                "x".to_string()
            } else if a.numer().is_one() {
                format!("x/{}", a.denom())
            } else {
                format!("{a}x")
            }
        });
        let d = self.per_delta.as_ref().map(|b| if b.is_one() { "δ".to_string() } else { format!("{b}δ") });
        match (x, d) {
            (Some(x), Some(d)) => write!(f, "min({x}, {d})"),
            (Some(x), None) => f.write_str(&x),
            (None, Some(d)) => f.write_str(&d),
            (None, None) => f.write_str("∞"),
        }
    }
}

/// All executions from one anchor to the next with the same endpoints and
/// the same robots acting, merged.
#[derive(Debug, Clone)]
pub struct AnchorEdge {
    pub from: usize,
    pub to: usize,
    pub acted: [bool; 2],
    /// Infimum of the decrease `X - dist` in units of δ.
    pub floor: Scalar,
    /// Some execution ends farther apart than it started.
    pub increases: bool,
    /// First bound from [`Shape::menu`] that holds on every execution.
    pub shape: Option<Shape>,
    /// An execution attaining the floor.
    pub path: Vec<SymStep>,
}

impl AnchorEdge {
    pub fn decreasing(&self) -> bool {
        self.floor > Scalar::zero()
    }
}

#[derive(Debug, Clone)]
pub struct AnchorGraph {
    pub regime: Regime,
    pub anchors: Vec<[SymRobot; 2]>,
    pub edges: Vec<AnchorEdge>,
    /// Executions that settle gathered instead of at an anchor.
    pub gathered_ends: usize,
}

struct End {
    to: usize,
    acted: [bool; 2],
    floor: Scalar,
    increases: bool,
    holds: Vec<bool>,
    path: Vec<SymStep>,
}

fn q(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

/// Starting separations considered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `x >= δ`
    Far,
    /// `x < δ`
    Near,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Far => "x >= δ",
            Regime::Near => "x < δ",
        })
    }
}

fn ends_from(
    rules: &Rules,
    index: &BTreeMap<[SymRobot; 2], usize>,
    start: [SymRobot; 2],
    regime: Regime,
    limit: usize,
) -> Result<(Vec<End>, usize), ExploreError> {
    let sem = Semantics { rules, delta: Scalar::one(), track_faulty: false };
    let mut init = SymState::anchored(start[0], start[1]);
    let cmp = if regime == Regime::Far { Cmp::Le } else { Cmp::Lt };
    let sign = if regime == Regime::Far { -1 } else { 1 };
    init.poly.add(&[(X, q(sign))], cmp, q(sign));
    let menu = Shape::menu();
    let mut out = Vec::new();
    let mut gathered = 0;
    for s in explore(&sem, init, &|s: &SymState| s.settled(), limit)? {
        if s.gathered() {
            gathered += 1;
            continue;
        }
        let (lo, _) = s.offset();
        let sign = if lo.is_some_and(|v| v >= Scalar::zero()) { 1 } else { -1 };
        let dist = [(pos(1), q(sign)), (pos(0), q(-sign))];
        let gap = [(X, q(1)), (pos(1), q(-sign)), (pos(0), q(sign))];
        let floor = s.poly.inf_of(&gap).expect("separations are bounded by X");
        let increases = s.poly.and(&gap, Cmp::Lt, Scalar::zero()).is_feasible();
        out.push(End {
            to: index[&s.robots],
            acted: s.acted,
            floor,
            increases,
            holds: menu.iter().map(|m| m.holds(&s.poly, &dist)).collect(),
            path: s.path,
        });
    }
    Ok((out, gathered))
}

/// Explores every anchor, in parallel, and merges the results in anchor
/// order.
pub fn anchor_graph(rules: &Rules, regime: Regime, limit: usize) -> Result<AnchorGraph, ExploreError> {
    let anchors = anchors();
    let index: BTreeMap<[SymRobot; 2], usize> = anchors.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let results: Vec<Result<(Vec<End>, usize), ExploreError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = anchors
            .iter()
            .map(|a| {
                let index = &index;
                scope.spawn(move || ends_from(rules, index, *a, regime, limit))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("explorer thread panicked")).collect()
    });
    let menu = Shape::menu();
    let mut edges = Vec::new();
    let mut gathered_ends = 0;
    for (from, r) in results.into_iter().enumerate() {
        let (ends, g) = r?;
        gathered_ends += g;
        let mut merged: BTreeMap<(usize, [bool; 2]), AnchorEdge> = BTreeMap::new();
        let mut holds: BTreeMap<(usize, [bool; 2]), Vec<bool>> = BTreeMap::new();
        for e in ends {
            let key = (e.to, e.acted);
            let h = holds.entry(key).or_insert_with(|| vec![true; menu.len()]);
            for (x, y) in h.iter_mut().zip(&e.holds) {
                *x &= *y;
            }
            match merged.get_mut(&key) {
                Some(m) => {
                    m.increases |= e.increases;
                    if e.floor < m.floor {
                        m.floor = e.floor;
                        m.path = e.path;
                    }
                }
                None => {
                    merged.insert(
                        key,
                        AnchorEdge {
                            from,
                            to: e.to,
                            acted: e.acted,
                            floor: e.floor,
                            increases: e.increases,
                            shape: None,
                            path: e.path,
                        },
                    );
                }
            }
        }
        for (key, mut edge) in merged {
            edge.shape = holds[&key].iter().position(|h| *h).map(|i| menu[i].clone());
            edges.push(edge);
        }
    }
    Ok(AnchorGraph { regime, anchors, edges, gathered_ends })
}

pub fn describe_anchor(a: &[SymRobot; 2]) -> String {
    format!("({}, {})", a[0], a[1])
}
