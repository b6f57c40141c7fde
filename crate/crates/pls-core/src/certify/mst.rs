//! Minimum spanning tree certification from Borůvka fragment phases.
//!
//! Ties are broken by the lexicographic key (weight, min endpoint id, max
//! endpoint id), which makes the MST unique and lets the verifier rely on the
//! cut property per edge: an edge that is the key-minimal edge leaving any
//! node set belongs to the MST. Labels carry, per phase, the node's fragment
//! id and its fragment's claimed minimum outgoing edge; fragment agreement
//! spreads the claim over each same-fragment component, every member checks
//! its own outgoing ports against the claim, and the claimed edge's inside
//! endpoint witnesses that the edge exists, leaves the fragment, lies on the
//! tree, and actually merges. The certified tree itself is the parent
//! relation (root id, parent id, depth), so the scheme also works when the
//! tree lives in the labels rather than the output.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::One;

use crate::bits::{BitReader, BitString};
use crate::config::{decode_edge_subset, ConfigGraph, ProblemKind};
use crate::graph::{Graph, NodeId};
use crate::scheme::{
    LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind, Sense,
};

/// Edge ordering that makes the MST unique.
pub fn lex_key(g: &Graph, e: usize) -> (u64, NodeId, NodeId) {
    g.edge_key(e)
}

/// Kruskal under the lex order, over the nodes in `nodes` (edge endpoints
/// must both lie inside). Returns `None` when the induced subgraph is
/// disconnected.
pub fn lex_mst_induced(g: &Graph, nodes: &BTreeSet<usize>) -> Option<(u64, BTreeSet<usize>)> {
    let mut edges: Vec<usize> = (0..g.m())
        .filter(|&e| nodes.contains(&g.edge(e).u) && nodes.contains(&g.edge(e).v))
        .collect();
    edges.sort_by_key(|&e| lex_key(g, e));
    let mut parent: BTreeMap<usize, usize> = nodes.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut BTreeMap<usize, usize>, v: usize) -> usize {
        let p = parent[&v];
        if p == v {
            v
        } else {
            let r = find(parent, p);
            parent.insert(v, r);
            r
        }
    }
    let mut tree = BTreeSet::new();
    let mut total = 0;
    for e in edges {
        let (a, b) = (find(&mut parent, g.edge(e).u), find(&mut parent, g.edge(e).v));
        if a != b {
            parent.insert(a, b);
            tree.insert(e);
            total += g.edge(e).weight.unwrap_or(1);
        }
    }
    (tree.len() + 1 == nodes.len()).then_some((total, tree))
}

/// The tie-broken MST of the whole graph.
pub fn lex_mst(g: &Graph) -> BTreeSet<usize> {
    lex_mst_induced(g, &g.node_indices().collect())
        .expect("graph is connected")
        .1
}

pub type MoeKey = (u64, NodeId, NodeId);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseCert {
    pub frag: NodeId,
    pub moe: Option<MoeKey>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MstCert {
    pub own_id: NodeId,
    pub tree_root: NodeId,
    /// None at the root.
    pub parent: Option<NodeId>,
    pub depth: u64,
    pub phases: Vec<PhaseCert>,
}

impl MstCert {
    pub fn encode(&self) -> BitString {
        let mut bs = BitString::new();
        bs.push_gamma(self.own_id + 1);
        bs.push_gamma(self.tree_root + 1);
        match self.parent {
            Some(p) => {
                bs.push_bit(true);
                bs.push_gamma(p + 1);
            }
            None => bs.push_bit(false),
        }
        bs.push_gamma(self.depth + 1);
        bs.push_gamma(self.phases.len() as u64 + 1);
        for ph in &self.phases {
            bs.push_gamma(ph.frag + 1);
            match ph.moe {
                Some((w, lo, hi)) => {
                    bs.push_bit(true);
                    bs.push_gamma(w + 1);
                    bs.push_gamma(lo + 1);
                    bs.push_gamma(hi + 1);
                }
                None => bs.push_bit(false),
            }
        }
        bs
    }

    pub fn decode(bits: &BitString) -> Option<Self> {
        let mut r = BitReader::new(bits);
        let own_id = r.read_gamma()? - 1;
        let tree_root = r.read_gamma()? - 1;
        let parent = if r.read_bit()? { Some(r.read_gamma()? - 1) } else { None };
        let depth = r.read_gamma()? - 1;
        let np = (r.read_gamma()? - 1) as usize;
        if np > 4096 {
            return None;
        }
        let mut phases = Vec::with_capacity(np);
        for _ in 0..np {
            let frag = r.read_gamma()? - 1;
            let moe = if r.read_bit()? {
                Some((r.read_gamma()? - 1, r.read_gamma()? - 1, r.read_gamma()? - 1))
            } else {
                None
            };
            phases.push(PhaseCert { frag, moe });
        }
        if !r.at_end() {
            return None;
        }
        Some(Self { own_id, tree_root, parent, depth, phases })
    }
}

/// Honest certificates for the lex MST over `participants`.
pub fn prove_mst_certs(
    g: &Graph,
    participants: &BTreeSet<usize>,
) -> Result<BTreeMap<usize, MstCert>, SchemeError> {
    let (_, tree) = lex_mst_induced(g, participants).ok_or_else(|| {
        SchemeError::ProverRefused("participant subgraph is disconnected".into())
    })?;

    // rooted tree structure
    let root = *participants.iter().min_by_key(|&&v| g.id(v)).unwrap();
    let mut depth: BTreeMap<usize, u64> = [(root, 0)].into();
    let mut parent: BTreeMap<usize, Option<usize>> = [(root, None)].into();
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for p in g.ports(v) {
            if tree.contains(&p.edge) && !depth.contains_key(&p.neighbor) {
                depth.insert(p.neighbor, depth[&v] + 1);
                parent.insert(p.neighbor, Some(v));
                stack.push(p.neighbor);
            }
        }
    }

    // Boruvka rounds under the lex order
    let mut frag: BTreeMap<usize, NodeId> =
        participants.iter().map(|&v| (v, g.id(v))).collect();
    let mut phases: BTreeMap<usize, Vec<PhaseCert>> =
        participants.iter().map(|&v| (v, Vec::new())).collect();
    let inner_edges: Vec<usize> = (0..g.m())
        .filter(|&e| participants.contains(&g.edge(e).u) && participants.contains(&g.edge(e).v))
        .collect();
    loop {
        let mut moe: BTreeMap<NodeId, MoeKey> = BTreeMap::new();
        for &e in &inner_edges {
            let (fu, fv) = (frag[&g.edge(e).u], frag[&g.edge(e).v]);
            if fu == fv {
                continue;
            }
            let key = lex_key(g, e);
            for f in [fu, fv] {
                if moe.get(&f).is_none_or(|cur| key < *cur) {
                    moe.insert(f, key);
                }
            }
        }
        let done = moe.is_empty();
        for &v in participants {
            phases.get_mut(&v).unwrap().push(PhaseCert {
                frag: frag[&v],
                moe: moe.get(&frag[&v]).copied(),
            });
        }
        if done {
            break;
        }
        // merge fragment groups connected by chosen edges
        let mut group: BTreeMap<NodeId, NodeId> = BTreeMap::new();
        fn find(group: &mut BTreeMap<NodeId, NodeId>, f: NodeId) -> NodeId {
            let p = *group.entry(f).or_insert(f);
            if p == f {
                f
            } else {
                let r = find(group, p);
                group.insert(f, r);
                r
            }
        }
        for &e in &inner_edges {
            let (fu, fv) = (frag[&g.edge(e).u], frag[&g.edge(e).v]);
            if fu == fv {
                continue;
            }
            let key = lex_key(g, e);
            if moe.get(&fu) == Some(&key) || moe.get(&fv) == Some(&key) {
                let (a, b) = (find(&mut group, fu), find(&mut group, fv));
                if a != b {
                    group.insert(a.max(b), a.min(b));
                }
            }
        }
        let next: BTreeMap<usize, NodeId> = participants
            .iter()
            .map(|&v| (v, find(&mut group, frag[&v])))
            .collect();
        frag = next;
    }

    Ok(participants
        .iter()
        .map(|&v| {
            (
                v,
                MstCert {
                    own_id: g.id(v),
                    tree_root: g.id(root),
                    parent: parent[&v].map(|p| g.id(p)),
                    depth: depth[&v],
                    phases: phases[&v].clone(),
                },
            )
        })
        .collect())
}

/// Per-port information handed to the certificate check.
pub struct MstPort<'a> {
    pub weight: u64,
    /// Output mark when the tree lives in the output; None for label trees.
    pub marked: Option<bool>,
    /// Neighbor certificate; None when the neighbor does not participate.
    pub neighbor: Option<&'a MstCert>,
}

/// Node-local MST certificate check. Returns the parent port on success
/// (None at the root) so callers can price the parent edge.
pub fn check_mst_cert(
    my_id: NodeId,
    own: &MstCert,
    ports: &[MstPort<'_>],
) -> Option<Option<usize>> {
    if own.own_id != my_id {
        return None;
    }
    let np = own.phases.len();
    if np == 0 {
        return None;
    }
    let participant_ports: Vec<(usize, &MstPort)> = ports
        .iter()
        .enumerate()
        .filter(|(_, p)| p.neighbor.is_some())
        .collect();
    for (_, p) in &participant_ports {
        let c = p.neighbor.unwrap();
        if c.tree_root != own.tree_root || c.phases.len() != np {
            return None;
        }
    }

    // rooted tree structure from parent ids and depths
    if (own.depth == 0) != own.parent.is_none() {
        return None;
    }
    if (own.depth == 0) != (own.tree_root == my_id) {
        return None;
    }
    let mut parent_port = None;
    if let Some(pid) = own.parent {
        for (i, p) in &participant_ports {
            let c = p.neighbor.unwrap();
            if c.own_id == pid && c.depth + 1 == own.depth {
                parent_port = Some(*i);
            }
        }
        parent_port?;
    }
    // edge is on the certified tree iff it joins me to my parent or to a child
    let in_tree = |i: usize, p: &MstPort| -> bool {
        parent_port == Some(i)
            || p.neighbor.is_some_and(|c| c.parent == Some(my_id) && c.depth == own.depth + 1)
    };
    // when the tree is output-resident, marks must match the parent relation
    for (i, p) in ports.iter().enumerate() {
        if let Some(marked) = p.marked {
            let t = p.neighbor.is_some() && in_tree(i, p);
            if marked != t {
                return None;
            }
        }
    }

    if own.phases[0].frag != my_id {
        return None;
    }
    let last = np - 1;
    for (ell, ph) in own.phases.iter().enumerate() {
        for (i, p) in &participant_ports {
            let c = p.neighbor.unwrap();
            let other = &c.phases[ell];
            if other.frag == ph.frag {
                if other.moe != ph.moe {
                    return None;
                }
            } else {
                // my fragment's claim must not exceed any outgoing edge I see
                let edge_key =
                    (p.weight, my_id.min(c.own_id), my_id.max(c.own_id));
                match ph.moe {
                    Some(key) if key <= edge_key => {}
                    _ => return None,
                }
                // tree edges changing fragments must merge through a claim
                if ell < last
                    && in_tree(*i, p)
                    && own.phases[ell + 1].frag == c.phases[ell + 1].frag
                    && ph.moe != Some(edge_key)
                    && other.moe != Some(edge_key)
                {
                    return None;
                }
            }
        }
        // witness duty: a claim naming me must be a real outgoing tree edge
        // that merges in the next phase
        if let Some((w, lo, hi)) = ph.moe {
            if my_id == lo || my_id == hi {
                if ell == last {
                    return None;
                }
                let other_id = if my_id == lo { hi } else { lo };
                let witnessed = participant_ports.iter().any(|(i, p)| {
                    let c = p.neighbor.unwrap();
                    c.own_id == other_id
                        && p.weight == w
                        && c.phases[ell].frag != ph.frag
                        && in_tree(*i, p)
                        && own.phases[ell + 1].frag == c.phases[ell + 1].frag
                });
                if !witnessed {
                    return None;
                }
            }
        }
        if ell == last {
            if ph.moe.is_some() {
                return None;
            }
            for (_, p) in &participant_ports {
                if p.neighbor.unwrap().phases[last].frag != ph.frag {
                    return None;
                }
            }
        }
    }
    Some(parent_port)
}

/// Scheme: accepts iff the output-marked edges form the tie-broken MST.
pub struct MstCertifyScheme;

impl Scheme for MstCertifyScheme {
    fn name(&self) -> String {
        "mst-certify".into()
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Pls
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        BigRational::one()
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((ProblemKind::SpanningTree, Sense::Min))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        if cfg.graph().directed() {
            return Err(SchemeError::UniverseViolation("undirected graphs only".into()));
        }
        Ok(())
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let g = cfg.graph();
        let marked = decode_edge_subset(cfg)
            .map_err(|e| SchemeError::ProverRefused(e.to_string()))?;
        if marked != lex_mst(g) {
            return Err(SchemeError::ProverRefused("output is not the tie-broken MST".into()));
        }
        let certs = prove_mst_certs(g, &g.node_indices().collect())?;
        let mut labels = LabelAssignment::default();
        for (v, cert) in certs {
            labels.insert(g.id(v), cert.encode());
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let own = match view.label().and_then(MstCert::decode) {
            Some(c) => c,
            None => return false,
        };
        let marks = match view.output_edge_marks() {
            Some(m) => m,
            None => return false,
        };
        let neighbor_certs: Vec<Option<MstCert>> = (0..view.degree())
            .map(|p| view.neighbor_label(p).and_then(MstCert::decode))
            .collect();
        if neighbor_certs.iter().any(|c| c.is_none()) {
            return false;
        }
        let ports: Vec<MstPort> = (0..view.degree())
            .map(|p| MstPort {
                weight: view.port_weight(p).unwrap_or(1),
                marked: Some(marks[p]),
                neighbor: neighbor_certs[p].as_ref(),
            })
            .collect();
        check_mst_cert(view.my_id(), &own, &ports).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::encode_edge_subset;
    use crate::graph::GraphBuilder;
    use crate::scheme::{prove, verify};

    fn weighted_ring(n: usize, ws: &[u64]) -> Graph {
        let mut b = GraphBuilder::new(&format!("wring{n}"));
        for i in 0..n {
            b.node(i as u64);
        }
        for i in 0..n {
            b.edge_w(i as u64, ((i + 1) % n) as u64, ws[i]);
        }
        b.build().unwrap()
    }

    #[test]
    fn star_mst_is_all_edges() {
        let mut b = GraphBuilder::new("star");
        for i in 0..5 {
            b.node(i);
        }
        for i in 1..5u64 {
            b.edge_w(0, i, i);
        }
        let g = b.build().unwrap();
        let mst = lex_mst(&g);
        assert_eq!(mst.len(), 4);
        let out = encode_edge_subset(&g, &mst);
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = MstCertifyScheme;
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn four_ring_accepts_only_the_mst() {
        let g = weighted_ring(4, &[1, 2, 3, 4]);
        let mst = lex_mst(&g);
        assert_eq!(mst, [0usize, 1, 2].into());

        let good = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &mst)).unwrap();
        let s = MstCertifyScheme;
        let labels = prove(&s, &good).unwrap();
        assert!(verify(&s, &good, &labels).accept());

        // the tree {0, 1, 3} is spanning but not minimal; honest labels for it
        // do not exist, and the mst labels do not transfer
        let other: BTreeSet<usize> = [0usize, 1, 3].into();
        let bad = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &other)).unwrap();
        assert!(prove(&s, &bad).is_err());
        assert!(!verify(&s, &bad, &labels).accept());
    }

    #[test]
    fn single_edge_accepts() {
        let mut b = GraphBuilder::new("p2");
        b.node(0).node(1);
        b.edge_w(0, 1, 7);
        let g = b.build().unwrap();
        let mst = lex_mst(&g);
        let cfg = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &mst)).unwrap();
        let s = MstCertifyScheme;
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn all_spanning_trees_except_mst_have_no_honest_proof() {
        let g = weighted_ring(4, &[1, 2, 3, 4]);
        let mst = lex_mst(&g);
        for t in crate::oracles::spanning_trees(&g) {
            let cfg =
                ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &t)).unwrap();
            let s = MstCertifyScheme;
            match prove(&s, &cfg) {
                Ok(labels) => {
                    assert_eq!(t, mst);
                    assert!(verify(&s, &cfg, &labels).accept());
                }
                Err(_) => assert_ne!(t, mst),
            }
        }
    }
}
