//! Reusable certificate sub-schemes: sum comparison over a certified
//! spanning tree, two-candidate leader election in odd rings, MST
//! certification, and feasibility schemes for the composite constructions.

pub mod comparison;
pub mod feasibility;
pub mod leader;
pub mod mst;

pub use comparison::{check_from_chunks, prove_certs, ComparisonScheme, TreeCert, ViewValue};
pub use feasibility::{
    HamiltonianFeasibility, NodeSetFeasibility, TerminalTreeFeasibility,
};
pub use leader::TwoCandidateLeScheme;
pub use mst::{lex_mst, lex_mst_induced, MstCert, MstCertifyScheme};
