//! Feasibility schemes: membership-bit schemes for vertex cover and
//! dominating set, position labels for Hamiltonian cycles, and rooted-tree
//! labels for terminal-spanning trees.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::One;

use crate::bits::{BitReader, BitString};
use crate::config::{decode_edge_subset, validate_output, ConfigGraph, ProblemKind};
use crate::graph::NodeId;
use crate::scheme::{
    LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind, Sense,
};

// ---------------------------------------------------------------------------
// One-bit node-set feasibility: the label mirrors the output membership bit,
// so neighbors can check covering/domination locally.
// ---------------------------------------------------------------------------

pub struct NodeSetFeasibility {
    kind: ProblemKind,
}

impl NodeSetFeasibility {
    pub fn vertex_cover() -> Self {
        Self { kind: ProblemKind::VertexCover }
    }

    pub fn dominating_set() -> Self {
        Self { kind: ProblemKind::DominatingSet }
    }
}

impl Scheme for NodeSetFeasibility {
    fn name(&self) -> String {
        match self.kind {
            ProblemKind::VertexCover => "vertex-cover-feasibility".into(),
            _ => "dominating-set-feasibility".into(),
        }
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Feasibility
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        BigRational::one()
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((self.kind, Sense::Min))
    }

    fn check_universe(&self, _cfg: &ConfigGraph) -> Result<(), SchemeError> {
        Ok(())
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        if !validate_output(self.kind, cfg).unwrap_or(false) {
            return Err(SchemeError::ProverRefused("output is not feasible".into()));
        }
        let g = cfg.graph();
        let mut labels = LabelAssignment::default();
        for v in g.node_indices() {
            labels.insert(g.id(v), cfg.output_bits(v).clone());
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let mine = match view.output_membership() {
            Some(b) => b,
            None => return false,
        };
        match view.label() {
            Some(l) if l.len() == 1 && l.bit(0) == Some(mine) => {}
            _ => return false,
        }
        let neighbor_bit = |p: usize| {
            view.neighbor_label(p)
                .filter(|l| l.len() == 1)
                .and_then(|l| l.bit(0))
        };
        match self.kind {
            ProblemKind::VertexCover => (0..view.degree())
                .all(|p| mine || neighbor_bit(p) == Some(true)),
            _ => {
                mine || (0..view.degree()).any(|p| neighbor_bit(p) == Some(true))
                    && (0..view.degree()).all(|p| neighbor_bit(p).is_some())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Hamiltonian cycle feasibility: positions along the cycle from a root.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
struct CycleCert {
    root_id: NodeId,
    pos: u64,
    is_last: bool,
}

impl CycleCert {
    fn encode(&self) -> BitString {
        let mut bs = BitString::new();
        bs.push_gamma(self.root_id + 1);
        bs.push_gamma(self.pos + 1);
        bs.push_bit(self.is_last);
        bs
    }

    fn decode(bits: &BitString) -> Option<Self> {
        let mut r = BitReader::new(bits);
        let root_id = r.read_gamma()? - 1;
        let pos = r.read_gamma()? - 1;
        let is_last = r.read_bit()?;
        if !r.at_end() {
            return None;
        }
        Some(Self { root_id, pos, is_last })
    }
}

/// Accepts iff the output-marked edges form one Hamiltonian cycle.
pub struct HamiltonianFeasibility;

impl Scheme for HamiltonianFeasibility {
    fn name(&self) -> String {
        "hamiltonian-cycle-feasibility".into()
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Feasibility
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        BigRational::one()
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((ProblemKind::MetricTsp, Sense::Min))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        if cfg.graph().directed() {
            return Err(SchemeError::UniverseViolation("undirected graphs only".into()));
        }
        Ok(())
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        if !validate_output(ProblemKind::MetricTsp, cfg).unwrap_or(false) {
            return Err(SchemeError::ProverRefused("output is not a Hamiltonian cycle".into()));
        }
        let g = cfg.graph();
        let cycle = decode_edge_subset(cfg).expect("validated above");
        let root = g.node_indices().min_by_key(|&v| g.id(v)).unwrap();
        // walk toward the smaller-id marked neighbor for determinism
        let marked_neighbors = |v: usize| -> Vec<usize> {
            g.ports(v)
                .iter()
                .filter(|p| cycle.contains(&p.edge))
                .map(|p| p.neighbor)
                .collect()
        };
        let mut labels = LabelAssignment::default();
        let first = marked_neighbors(root).into_iter().min_by_key(|&v| g.id(v)).unwrap();
        let (mut prev, mut cur, mut pos) = (root, first, 1u64);
        labels.insert(
            g.id(root),
            CycleCert { root_id: g.id(root), pos: 0, is_last: false }.encode(),
        );
        while cur != root {
            let next = marked_neighbors(cur)
                .into_iter()
                .find(|&u| u != prev)
                .expect("cycle node has two marked neighbors");
            labels.insert(
                g.id(cur),
                CycleCert { root_id: g.id(root), pos, is_last: next == root }.encode(),
            );
            prev = cur;
            cur = next;
            pos += 1;
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let own = match view.label().and_then(CycleCert::decode) {
            Some(c) => c,
            None => return false,
        };
        let marks = match view.output_edge_marks() {
            Some(m) => m,
            None => return false,
        };
        let neighbors: Vec<Option<CycleCert>> = (0..view.degree())
            .map(|p| view.neighbor_label(p).and_then(CycleCert::decode))
            .collect();
        if neighbors.iter().any(|c| c.is_none()) {
            return false;
        }
        let neighbors: Vec<CycleCert> = neighbors.into_iter().map(Option::unwrap).collect();
        if neighbors.iter().any(|c| c.root_id != own.root_id) {
            return false;
        }
        if (own.pos == 0) != (own.root_id == view.my_id()) {
            return false;
        }
        if own.pos == 0 && own.is_last {
            return false;
        }
        let marked: Vec<&CycleCert> = neighbors
            .iter()
            .zip(&marks)
            .filter_map(|(c, &m)| m.then_some(c))
            .collect();
        if marked.len() != 2 {
            return false;
        }
        let (a, b) = (marked[0], marked[1]);
        if own.pos == 0 {
            let fits = |x: &CycleCert, y: &CycleCert| {
                x.pos == 1 && !x.is_last && y.is_last && y.pos >= 1
            };
            // n = 2 would make the successor also the last; rings start at 3
            fits(a, b) || fits(b, a)
        } else if own.is_last {
            let fits = |x: &CycleCert, y: &CycleCert| x.pos + 1 == own.pos && y.pos == 0;
            fits(a, b) || fits(b, a)
        } else {
            let fits = |x: &CycleCert, y: &CycleCert| {
                x.pos + 1 == own.pos && y.pos == own.pos + 1
            };
            fits(a, b) || fits(b, a)
        }
    }
}

/// Weight of the marked edge leading to the cycle successor, for objective
/// decompositions: each cycle edge is charged at its lower-position endpoint.
pub fn cycle_successor_weight(view: &LocalView) -> Option<u64> {
    let own = CycleCert::decode(view.label()?)?;
    let marks = view.output_edge_marks()?;
    for p in 0..view.degree() {
        if !marks[p] {
            continue;
        }
        let c = CycleCert::decode(view.neighbor_label(p)?)?;
        let succ = if own.is_last { c.pos == 0 } else { c.pos == own.pos + 1 };
        if succ {
            return view.port_weight(p).or(Some(1));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Terminal-spanning tree feasibility: rooted depths over the marked edges.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
struct TreeDepthCert {
    root_id: NodeId,
    depth: u64,
}

impl TreeDepthCert {
    fn encode(&self) -> BitString {
        let mut bs = BitString::new();
        bs.push_gamma(self.root_id + 1);
        bs.push_gamma(self.depth + 1);
        bs
    }

    fn decode(bits: &BitString) -> Option<Self> {
        let mut r = BitReader::new(bits);
        let root_id = r.read_gamma()? - 1;
        let depth = r.read_gamma()? - 1;
        if !r.at_end() {
            return None;
        }
        Some(Self { root_id, depth })
    }
}

/// Accepts iff the marked edges form one tree whose nodes include every
/// terminal. Participants are the nodes with at least one marked edge.
pub struct TerminalTreeFeasibility;

impl Scheme for TerminalTreeFeasibility {
    fn name(&self) -> String {
        "terminal-tree-feasibility".into()
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Feasibility
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        BigRational::one()
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((ProblemKind::SteinerTree, Sense::Min))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        if cfg.graph().terminals().len() < 2 {
            return Err(SchemeError::UniverseViolation("need at least 2 terminals".into()));
        }
        Ok(())
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        if !validate_output(ProblemKind::SteinerTree, cfg).unwrap_or(false) {
            return Err(SchemeError::ProverRefused("output is not a terminal-spanning tree".into()));
        }
        let g = cfg.graph();
        let tree = decode_edge_subset(cfg).expect("validated above");
        let mut participants: BTreeSet<usize> = BTreeSet::new();
        for &e in &tree {
            participants.insert(g.edge(e).u);
            participants.insert(g.edge(e).v);
        }
        let root = participants
            .iter()
            .copied()
            .min_by_key(|&v| g.id(v))
            .ok_or_else(|| SchemeError::ProverRefused("empty tree".into()))?;
        // depths along the tree itself, not graph distance
        let mut depth: std::collections::BTreeMap<usize, u64> = [(root, 0)].into();
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for p in cfg.graph().ports(v) {
                if tree.contains(&p.edge) && !depth.contains_key(&p.neighbor) {
                    depth.insert(p.neighbor, depth[&v] + 1);
                    stack.push(p.neighbor);
                }
            }
        }
        let mut labels = LabelAssignment::default();
        for v in g.node_indices() {
            let d = depth.get(&v).copied().unwrap_or(0);
            labels.insert(g.id(v), TreeDepthCert { root_id: g.id(root), depth: d }.encode());
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let own = match view.label().and_then(TreeDepthCert::decode) {
            Some(c) => c,
            None => return false,
        };
        let marks = match view.output_edge_marks() {
            Some(m) => m,
            None => return false,
        };
        let neighbors: Vec<Option<TreeDepthCert>> = (0..view.degree())
            .map(|p| view.neighbor_label(p).and_then(TreeDepthCert::decode))
            .collect();
        if neighbors.iter().any(|c| c.is_none()) {
            return false;
        }
        let neighbors: Vec<TreeDepthCert> = neighbors.into_iter().map(Option::unwrap).collect();
        if neighbors.iter().any(|c| c.root_id != own.root_id) {
            return false;
        }
        let marked_deg = marks.iter().filter(|&&m| m).count();
        if marked_deg == 0 {
            // outside the tree: terminals must participate
            return !view.is_terminal();
        }
        if own.depth == 0 && own.root_id != view.my_id() {
            return false;
        }
        if own.depth > 0 && own.root_id == view.my_id() {
            return false;
        }
        let mut parents = 0;
        for (p, c) in neighbors.iter().enumerate() {
            if !marks[p] {
                continue;
            }
            if c.depth + 1 == own.depth {
                parents += 1;
            } else if c.depth != own.depth + 1 {
                return false;
            }
        }
        if own.depth == 0 {
            parents == 0
        } else {
            parents == 1
        }
    }
}

/// Weight of the marked edge to the tree parent (0 at the root and off the
/// tree), for objective decompositions.
pub fn tree_parent_weight(view: &LocalView) -> Option<u64> {
    let own = TreeDepthCert::decode(view.label()?)?;
    let marks = view.output_edge_marks()?;
    if own.depth == 0 {
        return Some(0);
    }
    let mut found = None;
    for p in 0..view.degree() {
        if !marks[p] {
            continue;
        }
        let c = TreeDepthCert::decode(view.neighbor_label(p)?)?;
        if c.depth + 1 == own.depth {
            found = Some(view.port_weight(p).unwrap_or(1));
        }
    }
    if marks.iter().all(|&m| !m) {
        return Some(0);
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{encode_edge_subset, encode_node_subset};
    use crate::graph::{Graph, GraphBuilder};
    use crate::scheme::{prove, verify};

    fn ring(n: usize) -> Graph {
        let mut b = GraphBuilder::new(&format!("ring{n}"));
        for i in 0..n {
            b.node(i as u64);
        }
        for i in 0..n {
            b.edge(i as u64, ((i + 1) % n) as u64);
        }
        b.build().unwrap()
    }

    #[test]
    fn five_ring_is_its_own_hamiltonian_cycle() {
        let g = ring(5);
        let all: BTreeSet<usize> = (0..5).collect();
        let out = encode_edge_subset(&g, &all);
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = HamiltonianFeasibility;
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn marked_degree_one_rejects_locally() {
        let g = ring(5);
        let out = encode_edge_subset(&g, &[0usize].into());
        let cfg = ConfigGraph::with_output(g.clone(), out).unwrap();
        let s = HamiltonianFeasibility;
        assert!(prove(&s, &cfg).is_err());
        // arbitrary labels cannot fix a degree-1 node
        let mut labels = LabelAssignment::default();
        for v in 0..5u64 {
            labels.insert(v, CycleCert { root_id: 0, pos: v, is_last: v == 4 }.encode());
        }
        let verdict = verify(&s, &cfg, &labels);
        assert!(!verdict.accept());
    }

    #[test]
    fn vertex_cover_feasibility_round_trip() {
        let g = ring(5);
        let cover: BTreeSet<usize> = [0, 2, 4].into();
        let out = encode_node_subset(&g, &cover);
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = NodeSetFeasibility::vertex_cover();
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn terminal_tree_on_star() {
        let mut b = GraphBuilder::new("star");
        b.node(0);
        for i in 1..4u64 {
            b.node_full(i, None, None, true, false, false, 0);
        }
        for i in 1..4u64 {
            b.edge(0, i);
        }
        let g = b.build().unwrap();
        let out = encode_edge_subset(&g, &(0..3).collect());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = TerminalTreeFeasibility;
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn terminal_outside_tree_rejects() {
        let mut b = GraphBuilder::new("p3");
        b.node_full(0, None, None, true, false, false, 0);
        b.node(1);
        b.node_full(2, None, None, true, false, false, 0);
        b.edge(0, 1).edge(1, 2);
        let g = b.build().unwrap();
        // mark only edge 0: terminal 2 is outside
        let out = encode_edge_subset(&g, &[0usize].into());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = TerminalTreeFeasibility;
        assert!(prove(&s, &cfg).is_err());
        let mut labels = LabelAssignment::default();
        for v in 0..3u64 {
            labels.insert(v, TreeDepthCert { root_id: 0, depth: v }.encode());
        }
        let verdict = verify(&s, &cfg, &labels);
        assert_eq!(verdict.by_node[&2], false);
    }

    #[test]
    fn cycle_with_extra_component_rejected() {
        // two triangles joined by one unmarked edge; each triangle marked:
        // a 6-node graph whose marking is two disjoint 3-cycles
        let mut b = GraphBuilder::new("two-tri");
        for i in 0..6 {
            b.node(i);
        }
        b.edge(0, 1).edge(1, 2).edge(2, 0); // edges 0,1,2
        b.edge(3, 4).edge(4, 5).edge(5, 3); // edges 3,4,5
        b.edge(2, 3); // bridge, unmarked
        let g = b.build().unwrap();
        let out = encode_edge_subset(&g, &(0..6).collect());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = HamiltonianFeasibility;
        assert!(prove(&s, &cfg).is_err());
        // exhaustive over positions is large; spot-check honest-shaped labels
        let mut labels = LabelAssignment::default();
        for v in 0..3u64 {
            labels.insert(v, CycleCert { root_id: 0, pos: v, is_last: v == 2 }.encode());
        }
        for v in 3..6u64 {
            labels.insert(v, CycleCert { root_id: 0, pos: v, is_last: v == 5 }.encode());
        }
        assert!(!verify(&s, &cfg, &labels).accept());
    }
}
