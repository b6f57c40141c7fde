//! Two-candidate leader election in odd rings with O(1) labels.
//!
//! Labels are proper 3-colorings in two bits: 00 and 01 are the plain colors,
//! 10 marks the sole leader, 11 is invalid. An odd ring admits no proper
//! 2-coloring, so a labeling without the leader color cannot satisfy the
//! local conditions; electing both candidates breaks the leader's
//! neighbors-differ condition somewhere on the ring.

use num_rational::BigRational;
use num_traits::One;

use crate::bits::BitString;
use crate::config::{ConfigGraph, ProblemKind};
use crate::graph::odd_girth;
use crate::scheme::{
    LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind, Sense,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeColor {
    Zero,
    One,
    Leader,
}

impl LeColor {
    pub fn encode(self) -> BitString {
        let mut bs = BitString::new();
        let v = match self {
            LeColor::Zero => 0,
            LeColor::One => 1,
            LeColor::Leader => 2,
        };
        bs.push_uint(v, 2);
        bs
    }

    pub fn decode(bits: &BitString) -> Option<LeColor> {
        if bits.len() != 2 {
            return None;
        }
        match (bits.bit(0)?, bits.bit(1)?) {
            (false, false) => Some(LeColor::Zero),
            (false, true) => Some(LeColor::One),
            (true, false) => Some(LeColor::Leader),
            (true, true) => None,
        }
    }
}

/// The four local conditions on bare color chunks, with the leader predicate
/// supplied by the caller (election output for the standalone scheme,
/// looseness for the odd-ring edge cover composition).
pub fn check_le_color_codes(
    own: &BitString,
    left: Option<&BitString>,
    right: Option<&BitString>,
    i_am_leader: bool,
) -> bool {
    let mine = match LeColor::decode(own) {
        Some(c) => c,
        None => return false,
    };
    if (mine == LeColor::Leader) != i_am_leader {
        return false;
    }
    let (a, b) = match (
        left.and_then(LeColor::decode),
        right.and_then(LeColor::decode),
    ) {
        (Some(a), Some(b)) => (a, b),
        _ => return false,
    };
    if mine == LeColor::Leader && a == b {
        return false;
    }
    mine != a && mine != b
}

/// View-based variant for schemes whose whole label is the color chunk.
pub fn check_le_colors(view: &LocalView, own: &BitString, i_am_leader: bool) -> bool {
    if view.degree() != 2 {
        return false;
    }
    check_le_color_codes(own, view.neighbor_label(0), view.neighbor_label(1), i_am_leader)
}

/// Colors the ring with the given node as leader: walk the remaining even
/// path alternating the two plain colors.
pub fn color_ring(cfg: &ConfigGraph, leader: usize) -> LabelAssignment {
    let g = cfg.graph();
    let mut labels = LabelAssignment::default();
    labels.insert(g.id(leader), LeColor::Leader.encode());
    let mut prev = leader;
    let mut cur = g.ports(leader)[0].neighbor;
    let mut step = 0u64;
    while cur != leader {
        let color = if step % 2 == 0 { LeColor::Zero } else { LeColor::One };
        labels.insert(g.id(cur), color.encode());
        let next = g
            .ports(cur)
            .iter()
            .map(|p| p.neighbor)
            .find(|&u| u != prev)
            .expect("ring node has two neighbors");
        prev = cur;
        cur = next;
        step += 1;
    }
    labels
}

fn is_odd_ring(cfg: &ConfigGraph) -> Result<(), SchemeError> {
    let g = cfg.graph();
    if g.directed() || g.node_indices().any(|v| g.deg(v) != 2) || g.n() % 2 == 0 {
        return Err(SchemeError::UniverseViolation("not an odd ring".into()));
    }
    // degree 2 everywhere and connected means a single cycle
    debug_assert_eq!(odd_girth(g), Some(g.n()));
    Ok(())
}

/// Feasibility scheme for electing exactly one of the two candidates marked
/// in the input; candidates are the terminal-flagged nodes.
pub struct TwoCandidateLeScheme;

impl Scheme for TwoCandidateLeScheme {
    fn name(&self) -> String {
        "two-candidate-leader-election".into()
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Feasibility
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        BigRational::one()
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((ProblemKind::LeaderElection, Sense::Min))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        is_odd_ring(cfg)?;
        if cfg.graph().terminals().len() != 2 {
            return Err(SchemeError::UniverseViolation(
                "exactly two candidates must be marked".into(),
            ));
        }
        Ok(())
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let g = cfg.graph();
        let elected: Vec<usize> = g
            .node_indices()
            .filter(|&v| cfg.output_bits(v).bit(0) == Some(true))
            .collect();
        match elected.as_slice() {
            [a] if g.is_terminal(*a) => Ok(color_ring(cfg, *a)),
            _ => Err(SchemeError::ProverRefused(
                "output does not elect exactly one candidate".into(),
            )),
        }
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let elected = match view.output_membership() {
            Some(b) => b,
            None => return false,
        };
        if elected && !view.is_terminal() {
            return false;
        }
        let own = match view.label() {
            Some(l) => l.clone(),
            None => return false,
        };
        check_le_colors(view, &own, elected)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::config::{encode_node_subset, ConfigGraph};
    use crate::graph::{Graph, GraphBuilder};
    use crate::scheme::{prove, verify};

    fn candidate_ring(n: usize, cands: [usize; 2]) -> Graph {
        let mut b = GraphBuilder::new(&format!("ring{n}"));
        for i in 0..n {
            b.node_full(i as u64, None, None, cands.contains(&i), false, false, 0);
        }
        for i in 0..n {
            b.edge(i as u64, ((i + 1) % n) as u64);
        }
        b.build().unwrap()
    }

    #[test]
    fn three_ring_single_leader_accepts() {
        let g = candidate_ring(3, [0, 1]);
        let out = encode_node_subset(&g, &[0usize].into());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = TwoCandidateLeScheme;
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
        assert_eq!(crate::scheme::proof_size(&labels), 2);
    }

    #[test]
    fn electing_both_candidates_is_refused() {
        let g = candidate_ring(5, [0, 2]);
        let out = encode_node_subset(&g, &[0usize, 2].into());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        assert!(prove(&TwoCandidateLeScheme, &cfg).is_err());
    }

    #[test]
    fn exhaustive_no_labels_accept_double_election() {
        // 5-ring, both candidates elected: every 2-bit labeling must reject
        let g = candidate_ring(5, [0, 2]);
        let out = encode_node_subset(&g, &[0usize, 2].into());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = TwoCandidateLeScheme;
        let mut accepted = 0;
        for assignment in 0..1024u32 {
            // 5 nodes, 4 codes each (incl. the invalid 11): 4^5 labelings
            let mut labels = LabelAssignment::default();
            let mut code = assignment;
            for v in 0..5u64 {
                let c = (code % 4) as u64;
                code /= 4;
                let mut bs = BitString::new();
                bs.push_uint(c, 2);
                labels.insert(v, bs);
            }
            if verify(&s, &cfg, &labels).accept() {
                accepted += 1;
            }
        }
        assert_eq!(accepted, 0);
    }

    #[test]
    fn zero_leaders_rejected_everywhere() {
        let g = candidate_ring(5, [0, 2]);
        let out = encode_node_subset(&g, &BTreeSet::new());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = TwoCandidateLeScheme;
        for assignment in 0..1024u32 {
            let mut labels = LabelAssignment::default();
            let mut code = assignment;
            for v in 0..5u64 {
                let c = (code % 4) as u64;
                code /= 4;
                let mut bs = BitString::new();
                bs.push_uint(c, 2);
                labels.insert(v, bs);
            }
            assert!(!verify(&s, &cfg, &labels).accept());
        }
    }
}
