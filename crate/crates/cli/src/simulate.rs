use std::io::Write;
use std::path::{Path, PathBuf};

use geometry::{format_scalar, parse_scalar, Point, Scalar};
use num_traits::Signed;
use protocol::{Color, Protocol};

use crate::{CliError, SimulateArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartColors {
    /// BB for the counterexample, WW otherwise.
    Auto,
    Fixed([Color; 2]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Start {
    /// Both waiting on the x axis, `dist` apart.
    Clean {
        dist: Scalar,
        colors: StartColors,
    },
    File(PathBuf),
    RandomCorrupted,
}

/// Everything one simulation needs.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub protocol: Protocol,
    pub strategy: String,
    /// `None` keeps the start's own value (1 for clean starts).
    pub delta: Option<Scalar>,
    pub window: usize,
    pub max_steps: usize,
    pub seed: u64,
    pub start: Start,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn colors_arg(s: &str) -> Result<[Color; 2], CliError> {
    let cs: Vec<Color> =
        s.chars().map(Color::from_letter).collect::<Option<_>>().ok_or_else(|| usage(format!("bad colours {s:?}")))?;
    cs.try_into().map_err(|_| usage(format!("expected two colours, got {s:?}")))
}

impl RunSpec {
    pub fn from_args(a: &SimulateArgs) -> Result<Self, CliError> {
        let protocol = Protocol::parse(&a.protocol).map_err(|e| usage(e.to_string()))?;
        let delta = a.delta.as_deref().map(parse_scalar).transpose().map_err(|e| usage(format!("--delta: {e}")))?;
        let start = match a.start.as_str() {
            "clean" => Start::Clean {
                dist: parse_scalar(&a.dist).map_err(|e| usage(format!("--dist: {e}")))?,
                colors: match &a.colors {
                    Some(c) => StartColors::Fixed(colors_arg(c)?),
                    None => StartColors::Auto,
                },
            },
            "random" => Start::RandomCorrupted,
            s => match s.strip_prefix("file:") {
                Some(path) => Start::File(PathBuf::from(path)),
                None => return Err(usage(format!("unknown start {s:?}"))),
            },
        };
        let spec = RunSpec {
            protocol,
            strategy: a.strategy.clone(),
            delta,
            window: a.k,
            max_steps: a.max_steps,
            seed: a.seed,
            start,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.delta.as_ref().is_some_and(|d| !d.is_positive()) {
            return Err(usage("delta must be positive"));
        }
        if self.window == 0 {
            return Err(usage("the fairness window K must be at least 1"));
        }
        if let Start::Clean { dist, .. } = &self.start {
            if dist.is_negative() {
                return Err(usage("distance must not be negative"));
            }
        }
        Ok(())
    }

    pub fn initial(&self) -> Result<executor::SystemConfig, CliError> {
        let mut cfg = match &self.start {
            Start::Clean { dist, colors } => {
                let colors = match colors {
                    StartColors::Fixed(c) => *c,
                    StartColors::Auto if self.strategy.starts_with("counterexample:") => [Color::Black; 2],
                    StartColors::Auto => [Color::White; 2],
                };
                let b = Point::new(dist.clone(), Scalar::from_integer(0.into()));
                executor::SystemConfig::waiting(colors, [Point::origin(), b], Scalar::from_integer(1.into()))
            }
            Start::File(path) => {
                let text = std::fs::read_to_string(path)?;
                executor::trace::config_from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
            }
            Start::RandomCorrupted => adversary::random_corrupted_config(self.seed),
        };
        if let Some(d) = &self.delta {
            cfg.delta = d.clone();
        }
        Ok(cfg)
    }
}

/// Runs the simulation, writes the trace to `trace_path` and prints a short
/// summary.
pub fn simulate(spec: &RunSpec, trace_path: &Path, out: &mut dyn Write) -> Result<executor::RunOutcome, CliError> {
    let initial = spec.initial()?;
    let mut strategy = adversary::strategy_from_selector(&spec.strategy).map_err(|e| usage(e.to_string()))?;
    let outcome =
        executor::run(&spec.protocol, &initial, strategy.as_mut(), spec.window, spec.max_steps, Some(spec.seed))?;
    let file = std::fs::File::create(trace_path)?;
    outcome.trace.write_to(std::io::BufWriter::new(file))?;
    writeln!(out, "protocol: {}", spec.protocol.selector())?;
    writeln!(out, "strategy: {}", outcome.trace.header.strategy)?;
    writeln!(out, "delta: {}", format_scalar(&initial.delta))?;
    writeln!(out, "seed: {}", spec.seed)?;
    writeln!(out, "verdict: {}", outcome.verdict)?;
    writeln!(out, "steps: {}", outcome.steps())?;
    writeln!(out, "separation^2: {}", format_scalar(&outcome.final_config.separation_sq()))?;
    writeln!(out, "trace: {}", trace_path.display())?;
    Ok(outcome)
}
