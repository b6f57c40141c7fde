//! Input/output assignments over a graph and the per-problem output codecs.
//!
//! A configuration graph pairs a graph with a per-node state string
//! `S(v) = I(v)·O(v)`. The input half is canonical for a given graph (ids,
//! weights, flags, and per-port edge attributes); the output half encodes the
//! proposed solution. Structures shared by two endpoints (edge subsets, edge
//! values) are encoded redundantly at both ends and must agree to decode.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::bits::{uint_width, BitReader, BitString};
use crate::graph::{Graph, NodeId};

/// The optimization problems covered by the concrete schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum ProblemKind {
    EdgeCover,
    BMatching,
    VertexCover,
    DominatingSet,
    MetricTsp,
    SteinerTree,
    MaxFlow,
    MaxCut,
    /// Two-candidate leader election (feasibility only).
    LeaderElection,
    /// Spanning tree given as marked edges (used by the MST certifier).
    SpanningTree,
}

impl ProblemKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "edge-cover" => Self::EdgeCover,
            "b-matching" => Self::BMatching,
            "vertex-cover" => Self::VertexCover,
            "dominating-set" => Self::DominatingSet,
            "tsp" => Self::MetricTsp,
            "steiner" => Self::SteinerTree,
            "max-flow" => Self::MaxFlow,
            "max-cut" => Self::MaxCut,
            "leader-election" => Self::LeaderElection,
            "spanning-tree" => Self::SpanningTree,
            _ => return None,
        })
    }
}

/// Map from node id to a bit string.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(pub BTreeMap<NodeId, BitString>);

impl Assignment {
    pub fn empty_for(g: &Graph) -> Self {
        Self(g.node_indices().map(|v| (g.id(v), BitString::new())).collect())
    }

    pub fn get(&self, id: NodeId) -> Option<&BitString> {
        self.0.get(&id)
    }

    pub fn covers(&self, g: &Graph) -> bool {
        g.node_indices().all(|v| self.0.contains_key(&g.id(v)))
    }

    /// Parses a sidecar file of `out <id> <hex>` lines.
    pub fn parse_sidecar(text: &str) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tok = content.split_whitespace();
            if tok.next() != Some("out") {
                return Err(format!("line {}: expected 'out'", lineno + 1));
            }
            let id: NodeId = tok
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| format!("line {}: bad node id", lineno + 1))?;
            let bits = tok
                .next()
                .and_then(BitString::from_hex)
                .ok_or_else(|| format!("line {}: bad hex string", lineno + 1))?;
            map.insert(id, bits);
        }
        Ok(Self(map))
    }

    pub fn to_sidecar(&self) -> String {
        let mut out = String::new();
        for (id, bits) in &self.0 {
            out.push_str(&format!("out {} {}\n", id, bits.to_hex()));
        }
        out
    }
}

/// Canonical per-node input encoding: id, degree, node attributes, then per
/// port the edge attributes, all gamma- or flag-coded. Only used to
/// materialize `S(v)`; verifiers read the same data through [`LocalView`]
/// accessors.
pub fn canonical_input(g: &Graph) -> Assignment {
    let mut map = BTreeMap::new();
    for v in g.node_indices() {
        let mut bs = BitString::new();
        bs.push_gamma(g.id(v) + 1);
        bs.push_gamma(g.deg(v) as u64 + 1);
        bs.push_gamma(g.w_max() + 1);
        push_opt(&mut bs, g.node_weight(v));
        push_opt(&mut bs, g.b_value(v));
        bs.push_bit(g.is_terminal(v));
        bs.push_bit(g.source() == Some(v));
        bs.push_bit(g.sink() == Some(v));
        for p in g.ports(v) {
            let e = g.edge(p.edge);
            if g.directed() {
                bs.push_bit(p.outgoing);
            }
            push_opt(&mut bs, e.weight);
            push_opt(&mut bs, e.capacity);
        }
        map.insert(g.id(v), bs);
    }
    Assignment(map)
}

fn push_opt(bs: &mut BitString, v: Option<u64>) {
    match v {
        Some(x) => {
            bs.push_bit(true);
            bs.push_gamma(x + 1);
        }
        None => bs.push_bit(false),
    }
}

/// A graph together with its (possibly empty) output assignment.
#[derive(Debug, Clone)]
pub struct ConfigGraph {
    graph: Graph,
    output: Assignment,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("assignment missing node {0}")]
    MissingNode(NodeId),
    #[error("input assignment does not match the canonical encoding at node {0}")]
    InputMismatch(NodeId),
}

impl ConfigGraph {
    /// Input graph `G_I`: every node's output is the empty string.
    pub fn input_only(graph: Graph) -> Self {
        let output = Assignment::empty_for(&graph);
        Self { graph, output }
    }

    pub fn with_output(graph: Graph, output: Assignment) -> Result<Self, ConfigError> {
        for v in graph.node_indices() {
            if output.get(graph.id(v)).is_none() {
                return Err(ConfigError::MissingNode(graph.id(v)));
            }
        }
        Ok(Self { graph, output })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn output(&self) -> &Assignment {
        &self.output
    }

    pub fn output_bits(&self, v: usize) -> &BitString {
        self.output.get(self.graph.id(v)).expect("total output")
    }

    /// `S(v) = I(v)·O(v)`.
    pub fn state_bits(&self, v: usize) -> BitString {
        let mut s = canonical_input(&self.graph)
            .get(self.graph.id(v))
            .cloned()
            .expect("canonical input is total");
        s.extend(self.output_bits(v));
        s
    }
}

/// Builds a configuration graph from an explicit input assignment, verifying
/// that it matches the canonical encoding of the graph.
pub fn attach_io(
    graph: Graph,
    input: &Assignment,
    output: Assignment,
) -> Result<ConfigGraph, ConfigError> {
    let canonical = canonical_input(&graph);
    for v in graph.node_indices() {
        let id = graph.id(v);
        let given = input.get(id).ok_or(ConfigError::MissingNode(id))?;
        if given != canonical.get(id).unwrap() {
            return Err(ConfigError::InputMismatch(id));
        }
    }
    ConfigGraph::with_output(graph, output)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("output at node {0} is undecodable")]
    Undecodable(NodeId),
    #[error("endpoints disagree on edge ({0}, {1})")]
    EdgeMismatch(NodeId, NodeId),
    #[error("problem needs {0}")]
    MissingAttribute(&'static str),
}

fn value_width(g: &Graph) -> usize {
    uint_width(g.w_max())
}

// ---------------------------------------------------------------------------
// Output encoders (prover/oracle side)
// ---------------------------------------------------------------------------

/// Edge subset: one bit per port, in port order.
pub fn encode_edge_subset(g: &Graph, edges: &BTreeSet<usize>) -> Assignment {
    let mut map = BTreeMap::new();
    for v in g.node_indices() {
        let mut bs = BitString::new();
        for p in g.ports(v) {
            bs.push_bit(edges.contains(&p.edge));
        }
        map.insert(g.id(v), bs);
    }
    Assignment(map)
}

/// Edge-valued outputs (b-matchings, flows): one fixed-width field per port.
pub fn encode_edge_values(g: &Graph, values: &BTreeMap<usize, u64>) -> Assignment {
    let w = value_width(g);
    let mut map = BTreeMap::new();
    for v in g.node_indices() {
        let mut bs = BitString::new();
        for p in g.ports(v) {
            bs.push_uint(values.get(&p.edge).copied().unwrap_or(0), w);
        }
        map.insert(g.id(v), bs);
    }
    Assignment(map)
}

/// Node subset: a single membership bit.
pub fn encode_node_subset(g: &Graph, nodes: &BTreeSet<usize>) -> Assignment {
    let mut map = BTreeMap::new();
    for v in g.node_indices() {
        let mut bs = BitString::new();
        bs.push_bit(nodes.contains(&v));
        map.insert(g.id(v), bs);
    }
    Assignment(map)
}

// ---------------------------------------------------------------------------
// Global decoders (oracle side; verifiers use LocalView decoders instead)
// ---------------------------------------------------------------------------

pub fn decode_edge_subset(cfg: &ConfigGraph) -> Result<BTreeSet<usize>, DecodeError> {
    let g = cfg.graph();
    let mut marks: Vec<Option<bool>> = vec![None; g.m()];
    for v in g.node_indices() {
        let bits = cfg.output_bits(v);
        if bits.len() != g.deg(v) {
            return Err(DecodeError::Undecodable(g.id(v)));
        }
        for (i, p) in g.ports(v).iter().enumerate() {
            let b = bits.bit(i).unwrap();
            match marks[p.edge] {
                None => marks[p.edge] = Some(b),
                Some(prev) if prev == b => {}
                Some(_) => {
                    let e = g.edge(p.edge);
                    return Err(DecodeError::EdgeMismatch(g.id(e.u), g.id(e.v)));
                }
            }
        }
    }
    Ok(marks
        .iter()
        .enumerate()
        .filter_map(|(e, m)| m.unwrap_or(false).then_some(e))
        .collect())
}

pub fn decode_edge_values(cfg: &ConfigGraph) -> Result<BTreeMap<usize, u64>, DecodeError> {
    let g = cfg.graph();
    let w = value_width(g);
    let mut values: Vec<Option<u64>> = vec![None; g.m()];
    for v in g.node_indices() {
        let bits = cfg.output_bits(v);
        if bits.len() != g.deg(v) * w {
            return Err(DecodeError::Undecodable(g.id(v)));
        }
        let mut r = BitReader::new(bits);
        for p in g.ports(v) {
            let val = r.read_uint(w).unwrap();
            match values[p.edge] {
                None => values[p.edge] = Some(val),
                Some(prev) if prev == val => {}
                Some(_) => {
                    let e = g.edge(p.edge);
                    return Err(DecodeError::EdgeMismatch(g.id(e.u), g.id(e.v)));
                }
            }
        }
    }
    Ok(values
        .iter()
        .enumerate()
        .filter_map(|(e, v)| v.filter(|&x| x > 0).map(|x| (e, x)))
        .collect())
}

pub fn decode_node_subset(cfg: &ConfigGraph) -> Result<BTreeSet<usize>, DecodeError> {
    let g = cfg.graph();
    let mut set = BTreeSet::new();
    for v in g.node_indices() {
        let bits = cfg.output_bits(v);
        if bits.len() != 1 {
            return Err(DecodeError::Undecodable(g.id(v)));
        }
        if bits.bit(0).unwrap() {
            set.insert(v);
        }
    }
    Ok(set)
}

// ---------------------------------------------------------------------------
// Feasibility and objectives
// ---------------------------------------------------------------------------

/// True iff the decoded output is a feasible solution for `kind`.
pub fn validate_output(kind: ProblemKind, cfg: &ConfigGraph) -> Result<bool, DecodeError> {
    let g = cfg.graph();
    match kind {
        ProblemKind::EdgeCover => {
            let c = decode_edge_subset(cfg)?;
            let mut covered = vec![false; g.n()];
            for &e in &c {
                covered[g.edge(e).u] = true;
                covered[g.edge(e).v] = true;
            }
            Ok(covered.into_iter().all(|x| x))
        }
        ProblemKind::BMatching => {
            let mu = decode_edge_values(cfg)?;
            Ok(g.node_indices().all(|v| {
                let b = g.b_value(v).unwrap_or(1);
                let load: u64 = g.ports(v).iter().filter_map(|p| mu.get(&p.edge)).sum();
                load <= b
            }))
        }
        ProblemKind::VertexCover => {
            let u = decode_node_subset(cfg)?;
            Ok(g.edges().iter().all(|e| u.contains(&e.u) || u.contains(&e.v)))
        }
        ProblemKind::DominatingSet => {
            let u = decode_node_subset(cfg)?;
            Ok(g.node_indices().all(|v| {
                u.contains(&v) || g.ports(v).iter().any(|p| u.contains(&p.neighbor))
            }))
        }
        ProblemKind::MetricTsp => {
            let t = decode_edge_subset(cfg)?;
            Ok(is_single_cycle_spanning(g, &t))
        }
        ProblemKind::SteinerTree | ProblemKind::SpanningTree => {
            let t = decode_edge_subset(cfg)?;
            let need_all = kind == ProblemKind::SpanningTree;
            Ok(is_tree_spanning(g, &t, need_all))
        }
        ProblemKind::MaxFlow => {
            let f = decode_edge_values(cfg)?;
            let (s, t) = match (g.source(), g.sink()) {
                (Some(s), Some(t)) => (s, t),
                _ => return Err(DecodeError::MissingAttribute("source/sink")),
            };
            for (&e, &val) in &f {
                if val > g.edge(e).capacity.unwrap_or(0) {
                    return Ok(false);
                }
            }
            Ok(g.node_indices().filter(|&v| v != s && v != t).all(|v| {
                let inflow: u64 = g
                    .ports(v)
                    .iter()
                    .filter(|p| !p.outgoing)
                    .filter_map(|p| f.get(&p.edge))
                    .sum();
                let outflow: u64 = g
                    .ports(v)
                    .iter()
                    .filter(|p| p.outgoing)
                    .filter_map(|p| f.get(&p.edge))
                    .sum();
                inflow == outflow
            }))
        }
        ProblemKind::MaxCut => {
            let s = decode_node_subset(cfg)?;
            Ok(!s.is_empty() && s.len() < g.n())
        }
        ProblemKind::LeaderElection => {
            let elected = decode_node_subset(cfg)?;
            Ok(elected.len() == 1 && elected.iter().all(|&v| g.is_terminal(v)))
        }
    }
}

fn is_single_cycle_spanning(g: &Graph, t: &BTreeSet<usize>) -> bool {
    if t.len() != g.n() {
        return false;
    }
    let mut deg = vec![0usize; g.n()];
    for &e in t {
        deg[g.edge(e).u] += 1;
        deg[g.edge(e).v] += 1;
    }
    if deg.iter().any(|&d| d != 2) {
        return false;
    }
    connected_in(g, t, &(0..g.n()).collect::<BTreeSet<_>>())
}

fn is_tree_spanning(g: &Graph, t: &BTreeSet<usize>, all_nodes: bool) -> bool {
    let mut touched: BTreeSet<usize> = BTreeSet::new();
    for &e in t {
        touched.insert(g.edge(e).u);
        touched.insert(g.edge(e).v);
    }
    if all_nodes {
        if touched.len() != g.n() {
            return false;
        }
    } else {
        let terms = g.terminals();
        if terms.is_empty() {
            return false;
        }
        if terms.len() == 1 && t.is_empty() {
            return true;
        }
        if !terms.iter().all(|v| touched.contains(v)) {
            return false;
        }
    }
    // a tree on its touched node set: connected and |E| = |V| - 1
    !touched.is_empty() && t.len() + 1 == touched.len() && connected_in(g, t, &touched)
}

fn connected_in(g: &Graph, edges: &BTreeSet<usize>, nodes: &BTreeSet<usize>) -> bool {
    let start = match nodes.iter().next() {
        Some(&v) => v,
        None => return false,
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for p in g.ports(v) {
            if edges.contains(&p.edge) && seen.insert(p.neighbor) {
                stack.push(p.neighbor);
            }
        }
    }
    nodes.iter().all(|v| seen.contains(v))
}

/// Expected output length in bits for a node under the given problem kind.
pub fn expected_output_len(kind: ProblemKind, g: &Graph, v: usize) -> usize {
    match kind {
        ProblemKind::EdgeCover
        | ProblemKind::MetricTsp
        | ProblemKind::SteinerTree
        | ProblemKind::SpanningTree => g.deg(v),
        ProblemKind::BMatching | ProblemKind::MaxFlow => g.deg(v) * value_width(g),
        ProblemKind::VertexCover
        | ProblemKind::DominatingSet
        | ProblemKind::MaxCut
        | ProblemKind::LeaderElection => 1,
    }
}

/// Trims hex-padding from a sidecar assignment down to the exact per-node
/// output length for `kind`. Dropped padding bits must be zero.
pub fn fit_output(
    kind: ProblemKind,
    g: &Graph,
    out: &Assignment,
) -> Result<Assignment, DecodeError> {
    let mut map = BTreeMap::new();
    for v in g.node_indices() {
        let id = g.id(v);
        let want = expected_output_len(kind, g, v);
        let bits = out.get(id).ok_or(DecodeError::Undecodable(id))?;
        if bits.len() < want || bits.len() >= want + 4 {
            return Err(DecodeError::Undecodable(id));
        }
        for i in want..bits.len() {
            if bits.bit(i) == Some(true) {
                return Err(DecodeError::Undecodable(id));
            }
        }
        map.insert(id, BitString::from_bits((0..want).map(|i| bits.bit(i).unwrap()).collect()));
    }
    Ok(Assignment(map))
}

/// Objective value of a feasible output, as an exact integer.
pub fn objective(kind: ProblemKind, cfg: &ConfigGraph) -> Result<i64, DecodeError> {
    let g = cfg.graph();
    match kind {
        ProblemKind::EdgeCover => Ok(decode_edge_subset(cfg)?.len() as i64),
        ProblemKind::BMatching => {
            Ok(decode_edge_values(cfg)?.values().map(|&v| v as i64).sum())
        }
        ProblemKind::VertexCover | ProblemKind::DominatingSet => {
            let u = decode_node_subset(cfg)?;
            Ok(u.iter().map(|&v| g.node_weight(v).unwrap_or(1) as i64).sum())
        }
        ProblemKind::MetricTsp | ProblemKind::SteinerTree | ProblemKind::SpanningTree => {
            let t = decode_edge_subset(cfg)?;
            Ok(t.iter().map(|&e| g.edge(e).weight.unwrap_or(1) as i64).sum())
        }
        ProblemKind::MaxFlow => {
            let f = decode_edge_values(cfg)?;
            let t = g.sink().ok_or(DecodeError::MissingAttribute("sink"))?;
            let inflow: u64 = g
                .ports(t)
                .iter()
                .filter(|p| !p.outgoing)
                .filter_map(|p| f.get(&p.edge))
                .sum();
            let outflow: u64 = g
                .ports(t)
                .iter()
                .filter(|p| p.outgoing)
                .filter_map(|p| f.get(&p.edge))
                .sum();
            Ok(inflow as i64 - outflow as i64)
        }
        ProblemKind::MaxCut => {
            let s = decode_node_subset(cfg)?;
            Ok(g
                .edges()
                .iter()
                .filter(|e| s.contains(&e.u) != s.contains(&e.v))
                .map(|e| e.weight.unwrap_or(1) as i64)
                .sum())
        }
        ProblemKind::LeaderElection => Ok(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

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
    fn edge_subset_round_trip_on_ring() {
        let g = ring(5);
        // C = {01, 23, 34}: edge indices 0, 2, 3
        let c: BTreeSet<usize> = [0, 2, 3].into();
        let out = encode_edge_subset(&g, &c);
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        assert_eq!(decode_edge_subset(&cfg).unwrap(), c);
        assert_eq!(validate_output(ProblemKind::EdgeCover, &cfg), Ok(true));
        assert_eq!(objective(ProblemKind::EdgeCover, &cfg), Ok(3));
    }

    #[test]
    fn bmatching_violation_detected() {
        let g = ring(3);
        // both edges at node 1 matched while b defaults to 1
        let mu: BTreeMap<usize, u64> = [(0, 1), (1, 1)].into();
        let out = encode_edge_values(&g, &mu);
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        assert_eq!(validate_output(ProblemKind::BMatching, &cfg), Ok(false));
    }

    #[test]
    fn flow_saturating_two_node() {
        let g = Graph::parse("graph f directed W=3\nnode 0 source\nnode 1 sink\nedge 0 1 c=3\n")
            .unwrap();
        let out = encode_edge_values(&g, &[(0usize, 3u64)].into());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        assert_eq!(validate_output(ProblemKind::MaxFlow, &cfg), Ok(true));
        assert_eq!(objective(ProblemKind::MaxFlow, &cfg), Ok(3));
    }

    #[test]
    fn attach_io_checks_input() {
        let g = ring(3);
        let input = canonical_input(&g);
        let out = Assignment::empty_for(&g);
        assert!(attach_io(g.clone(), &input, out.clone()).is_ok());

        let mut bad = input.clone();
        bad.0.insert(0, BitString::new());
        assert!(matches!(
            attach_io(g.clone(), &bad, out.clone()),
            Err(ConfigError::InputMismatch(0))
        ));

        let mut missing = input;
        missing.0.remove(&2);
        assert!(matches!(
            attach_io(g, &missing, out),
            Err(ConfigError::MissingNode(2))
        ));
    }

    #[test]
    fn mismatched_edge_subset_rejected() {
        let g = ring(3);
        let mut out = encode_edge_subset(&g, &[0usize].into());
        // flip node 0's view of edge 0 only
        let bits = out.0.get_mut(&0).unwrap();
        *bits = bits.flipped_bit(0);
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        assert!(matches!(
            decode_edge_subset(&cfg),
            Err(DecodeError::EdgeMismatch(_, _))
        ));
    }

    #[test]
    fn sidecar_round_trip() {
        let g = ring(5);
        let out = encode_edge_subset(&g, &[0usize, 2, 3].into());
        let text = out.to_sidecar();
        let parsed = Assignment::parse_sidecar(&text).unwrap();
        // hex pads to nibbles; decoding uses exact lengths, so compare prefixes
        for v in g.node_indices() {
            let orig = out.get(g.id(v)).unwrap();
            let got = parsed.get(g.id(v)).unwrap();
            for i in 0..orig.len() {
                assert_eq!(orig.bit(i), got.bit(i));
            }
        }
    }
}
