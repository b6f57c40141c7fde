//! Concrete scheme families.

pub mod cover_match;
pub mod flow_cut;
pub mod vca_based;
