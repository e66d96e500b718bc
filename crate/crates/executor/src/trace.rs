//! Line-delimited JSON traces: one header line, then one line per action
//! carrying the SHA-256 digest of the configuration it produced.

use std::io::{BufRead, Write};

use geometry::{format_scalar, parse_scalar, Frame, Point, Scalar};
use protocol::{Color, ComputeOutcome, Protocol};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{step, Action, Phase, Robot, StepError, SystemConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceHeader {
    pub protocol: String,
    pub strategy: String,
    pub delta: Scalar,
    pub window: usize,
    pub seed: Option<u64>,
    pub initial: SystemConfig,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub action: Action,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub header: TraceHeader,
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("step {step}: {source}")]
    Step { step: usize, source: StepError },
    #[error("step {step}: digest mismatch (recorded {recorded}, replayed {replayed})")]
    DigestMismatch { step: usize, recorded: String, replayed: String },
}

type Pt = [String; 2];

#[derive(Serialize, Deserialize)]
struct RobotWire {
    color: char,
    position: Pt,
    phase: PhaseWire,
    basis: [Pt; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum PhaseWire {
    Wait,
    Computing { new_color: char, target_local: Option<Pt> },
    Moving { target: Pt, move_origin: Pt },
}

#[derive(Serialize, Deserialize)]
struct ConfigWire {
    delta: String,
    robots: [RobotWire; 2],
}

#[derive(Serialize, Deserialize)]
struct HeaderWire {
    protocol: String,
    strategy: String,
    delta: String,
    window: usize,
    seed: Option<u64>,
    initial: ConfigWire,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum ActionWire {
    Look { robot: usize },
    FinishCompute { robot: usize },
    AdvanceMove { robot: usize, point: Pt },
    EndMove { robot: usize, point: Pt },
    Both,
}

#[derive(Serialize, Deserialize)]
struct StepWire {
    step: usize,
    action: ActionWire,
    digest: String,
}

fn pt(p: &Point) -> Pt {
    [format_scalar(&p.x), format_scalar(&p.y)]
}

fn unpt(p: &Pt) -> Result<Point, String> {
    let x = parse_scalar(&p[0]).map_err(|e| e.to_string())?;
    let y = parse_scalar(&p[1]).map_err(|e| e.to_string())?;
    Ok(Point::new(x, y))
}

fn color(c: char) -> Result<Color, String> {
    Color::from_letter(c).ok_or_else(|| format!("bad colour {c:?}"))
}

fn config_wire(cfg: &SystemConfig) -> ConfigWire {
    let robot = |r: &Robot| {
        let b = r.frame.basis();
        RobotWire {
            color: r.color.letter(),
            position: pt(&r.position),
            phase: match &r.phase {
                Phase::Wait => PhaseWire::Wait,
                Phase::Computing { outcome } => PhaseWire::Computing {
                    new_color: outcome.new_color.letter(),
                    target_local: outcome.target_local.as_ref().map(pt),
                },
                Phase::Moving { target, move_origin } => {
                    PhaseWire::Moving { target: pt(target), move_origin: pt(move_origin) }
                }
            },
            basis: [
                [format_scalar(&b[0][0]), format_scalar(&b[0][1])],
                [format_scalar(&b[1][0]), format_scalar(&b[1][1])],
            ],
        }
    };
    ConfigWire { delta: format_scalar(&cfg.delta), robots: [robot(&cfg.robots[0]), robot(&cfg.robots[1])] }
}

fn config_unwire(w: &ConfigWire) -> Result<SystemConfig, String> {
    let robot = |r: &RobotWire| -> Result<Robot, String> {
        let position = unpt(&r.position)?;
        let s = |v: &String| parse_scalar(v).map_err(|e| e.to_string());
        let basis = [[s(&r.basis[0][0])?, s(&r.basis[0][1])?], [s(&r.basis[1][0])?, s(&r.basis[1][1])?]];
        let frame = Frame::new(Point::origin(), basis).map_err(|e| e.to_string())?;
        let phase = match &r.phase {
            PhaseWire::Wait => Phase::Wait,
            PhaseWire::Computing { new_color, target_local } => Phase::Computing {
                outcome: ComputeOutcome {
                    new_color: color(*new_color)?,
                    target_local: target_local.as_ref().map(unpt).transpose()?,
                },
            },
            PhaseWire::Moving { target, move_origin } => {
                Phase::Moving { target: unpt(target)?, move_origin: unpt(move_origin)? }
            }
        };
        Ok(Robot { color: color(r.color)?, position, phase, frame })
    };
    let delta = parse_scalar(&w.delta).map_err(|e| e.to_string())?;
    if delta <= Scalar::from_integer(0.into()) {
        return Err("delta must be positive".into());
    }
    Ok(SystemConfig { robots: [robot(&w.robots[0])?, robot(&w.robots[1])?], delta })
}

fn action_wire(a: &Action) -> ActionWire {
    match a {
        Action::Look(r) => ActionWire::Look { robot: *r },
        Action::FinishCompute(r) => ActionWire::FinishCompute { robot: *r },
        Action::AdvanceMove(r, p) => ActionWire::AdvanceMove { robot: *r, point: pt(p) },
        Action::EndMove(r, p) => ActionWire::EndMove { robot: *r, point: pt(p) },
        Action::Both => ActionWire::Both,
    }
}

fn action_unwire(a: &ActionWire) -> Result<Action, String> {
    let robot = |r: usize| if r < 2 { Ok(r) } else { Err(format!("no robot {r}")) };
    Ok(match a {
        ActionWire::Look { robot: r } => Action::Look(robot(*r)?),
        ActionWire::FinishCompute { robot: r } => Action::FinishCompute(robot(*r)?),
        ActionWire::AdvanceMove { robot: r, point } => Action::AdvanceMove(robot(*r)?, unpt(point)?),
        ActionWire::EndMove { robot: r, point } => Action::EndMove(robot(*r)?, unpt(point)?),
        ActionWire::Both => Action::Both,
    })
}

/// Canonical JSON text of a configuration.
pub fn config_json(cfg: &SystemConfig) -> String {
    serde_json::to_string(&config_wire(cfg)).expect("plain data serializes")
}

pub fn config_from_json(text: &str) -> Result<SystemConfig, String> {
    let w: ConfigWire = serde_json::from_str(text).map_err(|e| e.to_string())?;
    config_unwire(&w)
}

pub fn digest(cfg: &SystemConfig) -> String {
    hex::encode(Sha256::digest(config_json(cfg).as_bytes()))
}

impl Trace {
    pub fn write_to(&self, mut out: impl Write) -> std::io::Result<()> {
        let h = &self.header;
        let header = HeaderWire {
            protocol: h.protocol.clone(),
            strategy: h.strategy.clone(),
            delta: format_scalar(&h.delta),
            window: h.window,
            seed: h.seed,
            initial: config_wire(&h.initial),
        };
        writeln!(out, "{}", serde_json::to_string(&header).expect("serializable"))?;
        for (i, s) in self.steps.iter().enumerate() {
            let line = StepWire { step: i, action: action_wire(&s.action), digest: s.digest.clone() };
            writeln!(out, "{}", serde_json::to_string(&line).expect("serializable"))?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn read_from(input: impl BufRead) -> Result<Trace, TraceError> {
        let mut lines = input.lines().enumerate().filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()));
        let bad = |line: usize, reason: String| TraceError::Malformed { line: line + 1, reason };
        let (n, first) = lines.next().ok_or_else(|| bad(0, "empty trace".into()))?;
        let hw: HeaderWire = serde_json::from_str(&first?).map_err(|e| bad(n, e.to_string()))?;
        let header = TraceHeader {
            protocol: hw.protocol,
            strategy: hw.strategy,
            delta: parse_scalar(&hw.delta).map_err(|e| bad(n, e.to_string()))?,
            window: hw.window,
            seed: hw.seed,
            initial: config_unwire(&hw.initial).map_err(|e| bad(n, e))?,
        };
        let mut steps = Vec::new();
        for (n, line) in lines {
            let sw: StepWire = serde_json::from_str(&line?).map_err(|e| bad(n, e.to_string()))?;
            if sw.step != steps.len() {
                return Err(bad(n, format!("expected step {}, found {}", steps.len(), sw.step)));
            }
            steps.push(TraceStep { action: action_unwire(&sw.action).map_err(|e| bad(n, e))?, digest: sw.digest });
        }
        Ok(Trace { header, steps })
    }
}

/// Re-executes every action and checks each recorded digest.
pub fn replay(trace: &Trace) -> Result<SystemConfig, TraceError> {
    let protocol = Protocol::parse(&trace.header.protocol)
        .map_err(|e| TraceError::Malformed { line: 1, reason: e.to_string() })?;
    let mut cfg = trace.header.initial.clone();
    for (i, s) in trace.steps.iter().enumerate() {
        cfg = step(&protocol, &cfg, &s.action).map_err(|source| TraceError::Step { step: i, source })?;
        let replayed = digest(&cfg);
        if replayed != s.digest {
            return Err(TraceError::DigestMismatch { step: i, recorded: s.digest.clone(), replayed });
        }
    }
    Ok(cfg)
}
