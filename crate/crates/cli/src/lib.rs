//! `gather2`: simulate, replay and verify two-robot gathering protocols.

mod simulate;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use simulate::{simulate, RunSpec, Start, StartColors};
pub use verify::{soundness, verify, VerifyOptions};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Trace(#[from] executor::TraceError),
    #[error(transparent)]
    Run(#[from] executor::RunError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Trace(executor::TraceError::DigestMismatch { .. } | executor::TraceError::Step { .. }) => {
                EXIT_FAILED
            }
            CliError::Run(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gather2", version, about = "Two-robot gathering with lights: simulation and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one execution and write its trace.
    Simulate(SimulateArgs),
    /// Check the protocol's configuration graph.
    Verify {
        /// ours, viglietta2 or classl:<l_bb,l_bw,l_wb,l_ww;cccc>
        protocol: String,
        /// Random executions replayed against the graph.
        #[arg(long, default_value_t = 200)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also list every cycle certificate.
        #[arg(long)]
        verbose: bool,
    },
    /// Re-execute a trace and check its digests.
    Replay { trace: PathBuf },
    /// Write the configuration graph in Graphviz format.
    ExportDot {
        protocol: String,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
pub struct SimulateArgs {
    #[arg(long, default_value = "ours")]
    pub protocol: String,
    /// fsync, fsync-minprog, ssync-alt, minprog, random:<seed>, script:<file>, counterexample:<k>
    #[arg(long, default_value = "fsync")]
    pub strategy: String,
    /// Minimum progress per move. Defaults to 1, or to the corrupted
    /// configuration's own value for random starts.
    #[arg(long)]
    pub delta: Option<String>,
    /// Initial separation for clean starts.
    #[arg(long, default_value = "1")]
    pub dist: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fairness window.
    #[arg(long, default_value_t = executor::DEFAULT_WINDOW)]
    pub k: usize,
    /// clean, random (corrupted, drawn from the seed) or file:<config.json>
    #[arg(long, default_value = "clean")]
    pub start: String,
    /// Colours of a clean start, e.g. WW or BB. Defaults to BB for the
    /// counterexample strategy and WW otherwise.
    #[arg(long)]
    pub colors: Option<String>,
    /// Where to write the trace.
    #[arg(long, default_value = "trace.jsonl")]
    pub trace: PathBuf,
}

fn protocol_arg(s: &str) -> Result<protocol::Protocol, CliError> {
    protocol::Protocol::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Simulate(args) => {
            let spec = RunSpec::from_args(&args)?;
            simulate(&spec, &args.trace, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { protocol, runs, seed, verbose } => {
            let p = protocol_arg(&protocol)?;
            let ok = verify(&p, &VerifyOptions { runs, seed, verbose, ..VerifyOptions::default() }, out)?;
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Replay { trace } => {
            let file = std::fs::File::open(&trace)?;
            let t = executor::Trace::read_from(std::io::BufReader::new(file))?;
            let end = executor::replay(&t)?;
            writeln!(out, "seed: {}", t.header.seed.map_or("none".to_string(), |s| s.to_string()))?;
            writeln!(out, "replayed {} steps, all digests match", t.steps.len())?;
            writeln!(out, "separation^2: {}", geometry::format_scalar(&end.separation_sq()))?;
            Ok(EXIT_OK)
        }
        Command::ExportDot { protocol, out: path } => {
            let p = protocol_arg(&protocol)?;
            let g = abstract_checker::build_graph(&p);
            let labels = abstract_checker::classify(&g).map_err(|e| CliError::Usage(e.to_string()))?;
            let text = abstract_checker::to_dot(&g, &labels);
            match path {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line and returns the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
