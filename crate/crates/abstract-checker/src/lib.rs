//! Finite abstraction of two-robot gathering and the checks run over it.

mod abstraction;
pub mod anchor;
mod certify;
mod classify;
mod dot;
pub mod fair;
mod graph;
pub mod lp;
mod oracle;
pub mod poly;
mod structure;

pub use abstraction::{no_target_phase, AbstractConfig, AbstractPhase, Kind, Local, Rule, Rules};
pub use certify::{
    certify_cycles, elementary_cycles, is_anchor, CertifyReport, CycleCertificate, CycleFailure, CycleKind,
};
pub use classify::{classify, ClassifyError, Labels, SubsetLabel};
pub use graph::{build_graph, enumerate_nodes, AbstractGraph, Edge, EdgeLabel};
pub use structure::{check_structure, Check, StructureReport};
pub mod interval;
pub mod segment;
pub use dot::to_dot;
pub use oracle::{check_step, check_trace, MissingEdge, OracleReport};
