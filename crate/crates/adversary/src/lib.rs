//! Schedulers for the executor: synchronous restrictions, worst-case
//! progress, seeded random fair scheduling, file scripts, and the halving
//! execution that defeats two-colour class-L protocols.

mod counterexample;
mod moves;
mod random;
mod script;
mod sync;

use std::path::Path;

pub use counterexample::Counterexample;
pub use moves::{min_progress_point, progress_fraction_floor};
pub use random::{random_corrupted_config, RandomFair};
pub use script::{parse_script, Scripted};
pub use sync::{Fsync, MinProgress, SsyncAlt};

use executor::Strategy;

#[derive(Debug, thiserror::Error)]
pub enum AdversaryError {
    #[error("unknown strategy selector {0:?}")]
    BadSelector(String),
    #[error("cannot read script {path}: {source}")]
    ScriptIo { path: String, source: std::io::Error },
    #[error("script line {line}: {reason}")]
    ScriptSyntax { line: usize, reason: String },
    #[error("counterexample needs both robots Black, waiting, at distinct points")]
    Premise,
}

/// Builds a strategy from its command-line name.
pub fn strategy_from_selector(sel: &str) -> Result<Box<dyn Strategy>, AdversaryError> {
    let bad = || AdversaryError::BadSelector(sel.to_string());
    Ok(match sel.trim() {
        "fsync" => Box::new(Fsync::rigid()),
        "fsync-minprog" => Box::new(Fsync::min_progress()),
        "ssync-alt" => Box::new(SsyncAlt::default()),
        "minprog" => Box::new(MinProgress::default()),
        s => {
            if let Some(seed) = s.strip_prefix("random:") {
                Box::new(RandomFair::new(seed.parse().map_err(|_| bad())?))
            } else if let Some(path) = s.strip_prefix("script:") {
                let text = std::fs::read_to_string(Path::new(path))
                    .map_err(|source| AdversaryError::ScriptIo { path: path.to_string(), source })?;
                Box::new(Scripted::new(parse_script(&text)?))
            } else if let Some(k) = s.strip_prefix("counterexample:") {
                Box::new(Counterexample::new(k.parse().map_err(|_| bad())?))
            } else {
                return Err(bad());
            }
        }
    })
}
