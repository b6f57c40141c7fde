//! Proof labeling schemes over port-numbered graphs: centralized provers that
//! assign per-node certificate labels, strictly node-local verifiers, generic
//! scheme-construction engines (primal-dual and verified centralized
//! approximation), reductions between approximate and decision schemes, and a
//! registry of concrete constructions for classic graph optimization
//! problems, all validated at desk scale against brute-force oracles and
//! adversarial label fuzzing.

pub mod bits;
pub mod certify;
pub mod config;
pub mod generators;
pub mod graph;
pub mod lp;
pub mod oracles;
pub mod registry;
pub mod scheme;
pub mod schemes;
pub mod soundness;
pub mod suite;

pub use bits::BitString;
pub use config::{Assignment, ConfigGraph, ProblemKind};
pub use graph::{Graph, GraphBuilder, NodeId};
pub use scheme::{
    proof_size, prove, verify, LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind,
    Sense, Verdict,
};
