use std::fmt;

use executor::{Phase, SystemConfig};
use geometry::{format_scalar, Point, Scalar};
use num_traits::{One, Signed, Zero};
use protocol::{Color, Protocol, Snapshot};

/// Fraction of the way from the robot's origin to the other robot that a
/// pending target is supposed to be. 1/2 is "half", 1 is "other".
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Kind(pub Scalar);

impl Kind {
    pub fn is_other(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == Scalar::new(1.into(), 2.into()) {
            f.write_str("H")
        } else if self.0.is_one() {
            f.write_str("O")
        } else {
            write!(f, "L{}", format_scalar(&self.0))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AbstractPhase {
    W,
    /// Computing, no target, turning Black.
    C2B,
    /// Computing, no target, Black turning White.
    C2W,
    /// Computing, no target, White staying White.
    C2N,
    /// Computing with a target: C2H / C2O for the usual kinds.
    C2T {
        next: Color,
        kind: Kind,
    },
    /// Moving: M2H / M2O for the usual kinds.
    M2T {
        kind: Kind,
    },
}

impl AbstractPhase {
    pub fn has_target(&self) -> bool {
        matches!(self, AbstractPhase::C2T { .. } | AbstractPhase::M2T { .. })
    }

    pub fn kind(&self) -> Option<&Kind> {
        match self {
            AbstractPhase::C2T { kind, .. } | AbstractPhase::M2T { kind } => Some(kind),
            _ => None,
        }
    }
}

impl fmt::Display for AbstractPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbstractPhase::W => f.write_str("W"),
            AbstractPhase::C2B => f.write_str("C2B"),
            AbstractPhase::C2W => f.write_str("C2W"),
            AbstractPhase::C2N => f.write_str("C2N"),
            AbstractPhase::C2T { next, kind } => {
                let usual = matches!((kind.to_string().as_str(), next), ("H", Color::Black) | ("O", Color::White));
                if usual {
                    write!(f, "C2{kind}")
                } else {
                    write!(f, "C2{kind}>{}", next.letter())
                }
            }
            AbstractPhase::M2T { kind } => write!(f, "M2{kind}"),
        }
    }
}

/// One robot's abstract state. `stale` marks a pending target that no longer
/// sits where its kind says it should, given where the other robot is now.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Local {
    pub color: Color,
    pub phase: AbstractPhase,
    pub stale: bool,
}

impl Local {
    pub fn new(color: Color, phase: AbstractPhase, stale: bool) -> Self {
        Local { color, phase, stale }
    }

    pub fn has_target(&self) -> bool {
        self.phase.has_target()
    }

    /// No pending target at all.
    pub fn settled(&self) -> bool {
        !self.has_target()
    }
}

impl fmt::Display for Local {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}{}", self.color.letter(), self.phase, if self.stale { "*" } else { "" })
    }
}

/// Unordered pair of robot states plus the gathered flag. Slot 0 always
/// holds the smaller state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbstractConfig {
    pub robots: [Local; 2],
    pub gathered: bool,
}

impl AbstractConfig {
    /// Returns the canonical form and whether the slots were exchanged.
    pub fn canonical(a: Local, b: Local, gathered: bool) -> (Self, bool) {
        if a <= b {
            (AbstractConfig { robots: [a, b], gathered }, false)
        } else {
            (AbstractConfig { robots: [b, a], gathered }, true)
        }
    }

    pub fn new(a: Local, b: Local, gathered: bool) -> Self {
        Self::canonical(a, b, gathered).0
    }

    pub fn clean_start() -> Self {
        let w = Local::new(Color::White, AbstractPhase::W, false);
        AbstractConfig::new(w.clone(), w, false)
    }

    pub fn any_stale(&self) -> bool {
        self.robots.iter().any(|r| r.stale)
    }

    /// Both robots settled on the same point with nothing pending that could
    /// pull them apart.
    pub fn gathered_quiet(&self) -> bool {
        self.gathered && !self.any_stale()
    }

    pub fn same_colors(&self) -> bool {
        self.robots[0].color == self.robots[1].color
    }

    /// Both robots hold targets, and those targets are not the same point.
    pub fn faulty(&self) -> bool {
        let [a, b] = &self.robots;
        let (Some(ka), Some(kb)) = (a.phase.kind(), b.phase.kind()) else { return false };
        let agree = !a.stale && !b.stale && &ka.0 + &kb.0 == Scalar::one();
        !agree
    }
}

impl fmt::Display for AbstractConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}{})", self.robots[0], self.robots[1], if self.gathered { ", G" } else { "" })
    }
}

/// What a Look produces, read off the protocol on a reference snapshot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub next: Color,
    pub lambda: Option<Scalar>,
}

/// The protocol's behaviour in colour-pair form, plus the target kinds each
/// colour can be heading for.
#[derive(Debug, Clone)]
pub struct Rules {
    protocol: Protocol,
    kinds: [Vec<Kind>; 2],
}

fn color_index(c: Color) -> usize {
    match c {
        Color::White => 0,
        Color::Black => 1,
    }
}

impl Rules {
    pub fn new(protocol: &Protocol) -> Self {
        let mut kinds: [Vec<Kind>; 2] = [Vec::new(), Vec::new()];
        let rules = Rules { protocol: protocol.clone(), kinds: kinds.clone() };
        for me in Color::ALL {
            for other in Color::ALL {
                let r = rules.rule(me, other, false);
                if let Some(l) = r.lambda {
                    let k = &mut kinds[color_index(r.next)];
                    if !k.contains(&Kind(l.clone())) {
                        k.push(Kind(l));
                    }
                }
            }
        }
        for k in kinds.iter_mut() {
            if k.is_empty() {
                k.push(Kind(Scalar::one()));
            }
            k.sort();
        }
        Rules { protocol: protocol.clone(), kinds }
    }

    pub fn protocol(&self) -> &Protocol {
        &self.protocol
    }

    /// Kinds a robot that is (or will be) `color` may be moving towards.
    pub fn kinds(&self, color: Color) -> &[Kind] {
        &self.kinds[color_index(color)]
    }

    /// Kind recorded for stale targets.
    pub fn stale_kind(&self, color: Color) -> Kind {
        self.kinds(color)[0].clone()
    }

    pub fn rule(&self, me: Color, other: Color, gathered: bool) -> Rule {
        let at = if gathered { Point::origin() } else { Point::from_ints(1, 0) };
        let out = self.protocol.compute(&Snapshot::new(me, other, at));
        let lambda = out.target_local.and_then(|t| {
            assert!(t.y.is_zero(), "protocol target off the line through both robots");
            if gathered {
                Some(self.stale_kind(out.new_color).0)
            } else {
                (!t.x.is_zero()).then_some(t.x)
            }
        });
        if let Some(l) = &lambda {
            assert!(l.is_positive() && *l <= Scalar::one(), "target fraction outside (0, 1]");
        }
        Rule { next: out.new_color, lambda }
    }

    /// Abstract phase right after a Look by `me`.
    pub fn look(&self, me: Color, other: Color, gathered: bool) -> AbstractPhase {
        let r = self.rule(me, other, gathered);
        match r.lambda {
            Some(l) => AbstractPhase::C2T { next: r.next, kind: Kind(l) },
            None => no_target_phase(me, r.next),
        }
    }

    /// Every abstract local state, in canonical order.
    pub fn locals(&self) -> Vec<Local> {
        let mut out = Vec::new();
        for c in Color::ALL {
            out.push(Local::new(c, AbstractPhase::W, false));
            for next in Color::ALL {
                out.push(Local::new(c, no_target_phase(c, next), false));
                for kind in self.kinds(next) {
                    for stale in [false, true] {
                        out.push(Local::new(c, AbstractPhase::C2T { next, kind: kind.clone() }, stale));
                    }
                }
            }
            for kind in self.kinds(c) {
                for stale in [false, true] {
                    out.push(Local::new(c, AbstractPhase::M2T { kind: kind.clone() }, stale));
                }
            }
        }
        out.sort();
        out
    }

    fn classify_target(&self, color: Color, origin: &Point, target: &Point, other: &Point) -> (Kind, bool) {
        for k in self.kinds(color) {
            let expect = origin.add(&other.sub(origin).scale(&k.0));
            if expect == *target {
                return (k.clone(), false);
            }
        }
        (self.stale_kind(color), true)
    }

    /// Abstract state of robot `i` of a concrete configuration.
    pub fn local(&self, cfg: &SystemConfig, i: usize) -> Local {
        let r = &cfg.robots[i];
        let q = &cfg.robots[1 - i].position;
        match &r.phase {
            Phase::Wait => Local::new(r.color, AbstractPhase::W, false),
            Phase::Computing { outcome } => match r.pending_target() {
                None => Local::new(r.color, no_target_phase(r.color, outcome.new_color), false),
                Some(t) => {
                    let (kind, stale) = self.classify_target(outcome.new_color, &r.position, &t, q);
                    Local::new(r.color, AbstractPhase::C2T { next: outcome.new_color, kind }, stale)
                }
            },
            Phase::Moving { target, move_origin } => {
                let (kind, stale) = self.classify_target(r.color, move_origin, target, q);
                Local::new(r.color, AbstractPhase::M2T { kind }, stale)
            }
        }
    }

    /// Maps a concrete configuration to its abstract node.
    pub fn abstract_config(&self, cfg: &SystemConfig) -> AbstractConfig {
        AbstractConfig::new(self.local(cfg, 0), self.local(cfg, 1), cfg.is_gathered())
    }
}

pub fn no_target_phase(me: Color, next: Color) -> AbstractPhase {
    match (me, next) {
        (_, Color::Black) => AbstractPhase::C2B,
        (Color::Black, Color::White) => AbstractPhase::C2W,
        (Color::White, Color::White) => AbstractPhase::C2N,
    }
}
