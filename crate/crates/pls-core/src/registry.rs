//! Named constructors for every concrete scheme, for the CLI and the
//! acceptance suite.

use crate::certify::{
    HamiltonianFeasibility, MstCertifyScheme, NodeSetFeasibility, TerminalTreeFeasibility,
    TwoCandidateLeScheme,
};
use crate::scheme::Scheme;
use crate::schemes::cover_match::{
    make_bmatching_adpls, make_bmatching_apls, make_bmatching_bipartite_dpls,
    make_bmatching_bipartite_pls, make_edge_cover_adpls, make_edge_cover_apls,
    make_edge_cover_bipartite_dpls, make_edge_cover_bipartite_pls,
    make_odd_ring_edge_cover_dpls, make_odd_ring_edge_cover_pls,
};
use crate::schemes::flow_cut::{
    make_flow_dpls, make_flow_pls, make_maxcut_adpls, make_maxcut_apls,
};
use crate::schemes::vca_based::{
    make_ds_adpls, make_ds_apls, make_steiner_adpls, make_steiner_apls, make_tsp_adpls,
    make_tsp_apls, make_vc_adpls, make_vc_apls,
};

#[derive(Debug, Clone, Copy, Default)]
pub struct SchemeParams {
    pub kappa: Option<u64>,
    pub k: Option<i64>,
}

/// The twenty-two concrete constructions.
pub const SCHEME_NAMES: [&str; 22] = [
    "edge-cover-apls",
    "edge-cover-ring-pls",
    "edge-cover-bipartite-pls",
    "b-matching-apls",
    "b-matching-bipartite-pls",
    "vertex-cover-apls",
    "dominating-set-apls",
    "tsp-apls",
    "steiner-apls",
    "max-flow-pls",
    "max-cut-apls",
    "edge-cover-adpls",
    "edge-cover-ring-dpls",
    "edge-cover-bipartite-dpls",
    "b-matching-adpls",
    "b-matching-bipartite-dpls",
    "vertex-cover-adpls",
    "dominating-set-adpls",
    "tsp-adpls",
    "steiner-adpls",
    "max-flow-dpls",
    "max-cut-adpls",
];

/// Auxiliary sub-schemes, also runnable from the CLI.
pub const AUXILIARY_NAMES: [&str; 6] = [
    "two-candidate-leader-election",
    "mst-certify",
    "hamiltonian-cycle-feasibility",
    "terminal-tree-feasibility",
    "vertex-cover-feasibility",
    "dominating-set-feasibility",
];

pub fn make_scheme(name: &str, params: SchemeParams) -> Result<Box<dyn Scheme>, String> {
    let kappa = || params.kappa.ok_or_else(|| format!("{name} needs --kappa"));
    let k = || params.k.ok_or_else(|| format!("{name} needs --k"));
    Ok(match name {
        "edge-cover-apls" => Box::new(make_edge_cover_apls(kappa()?)),
        "edge-cover-ring-pls" => Box::new(make_odd_ring_edge_cover_pls()),
        "edge-cover-bipartite-pls" => Box::new(make_edge_cover_bipartite_pls()),
        "b-matching-apls" => Box::new(make_bmatching_apls(kappa()?)),
        "b-matching-bipartite-pls" => Box::new(make_bmatching_bipartite_pls()),
        "vertex-cover-apls" => Box::new(make_vc_apls()),
        "dominating-set-apls" => Box::new(make_ds_apls()),
        "tsp-apls" => Box::new(make_tsp_apls()),
        "steiner-apls" => Box::new(make_steiner_apls()),
        "max-flow-pls" => Box::new(make_flow_pls()),
        "max-cut-apls" => Box::new(make_maxcut_apls()),
        "edge-cover-adpls" => Box::new(make_edge_cover_adpls(kappa()?, k()?)),
        "edge-cover-ring-dpls" => Box::new(make_odd_ring_edge_cover_dpls(k()?)),
        "edge-cover-bipartite-dpls" => Box::new(make_edge_cover_bipartite_dpls(k()?)),
        "b-matching-adpls" => Box::new(make_bmatching_adpls(kappa()?, k()?)),
        "b-matching-bipartite-dpls" => Box::new(make_bmatching_bipartite_dpls(k()?)),
        "vertex-cover-adpls" => Box::new(make_vc_adpls(k()?)),
        "dominating-set-adpls" => Box::new(make_ds_adpls(k()?)),
        "tsp-adpls" => Box::new(make_tsp_adpls(k()?)),
        "steiner-adpls" => Box::new(make_steiner_adpls(k()?)),
        "max-flow-dpls" => Box::new(make_flow_dpls(k()?)),
        "max-cut-adpls" => Box::new(make_maxcut_adpls(k()?)),
        "two-candidate-leader-election" => Box::new(TwoCandidateLeScheme),
        "mst-certify" => Box::new(MstCertifyScheme),
        "hamiltonian-cycle-feasibility" => Box::new(HamiltonianFeasibility),
        "terminal-tree-feasibility" => Box::new(TerminalTreeFeasibility),
        "vertex-cover-feasibility" => Box::new(NodeSetFeasibility::vertex_cover()),
        "dominating-set-feasibility" => Box::new(NodeSetFeasibility::dominating_set()),
        _ => return Err(format!("unknown scheme {name}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_named_schemes_construct() {
        let params = SchemeParams { kappa: Some(2), k: Some(3) };
        for name in SCHEME_NAMES.iter().chain(AUXILIARY_NAMES.iter()) {
            assert!(make_scheme(name, params).is_ok(), "{name}");
        }
        assert!(make_scheme("nope", params).is_err());
        assert!(make_scheme("edge-cover-apls", SchemeParams::default()).is_err());
    }
}
