//! The generic proof-labeling-scheme machinery: label assignments, the
//! strictly node-local view handed to verifiers, and the prove/verify drivers.
//!
//! A verifier sees exactly the 3-tuple (own state, own label, neighbor labels
//! by port). [`LocalView`] enforces that: its accessors expose only the node's
//! own input attributes, its own output bits, its own label, and the labels of
//! its neighbors. Neighbor states and ids are deliberately unreachable.

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use crate::bits::BitString;
use crate::config::{ConfigGraph, ProblemKind};
use crate::graph::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SchemeKind {
    Pls,
    Apls,
    Dpls,
    Adpls,
    Feasibility,
    Comparison,
}

impl SchemeKind {
    /// Decision schemes verify input graphs; the rest verify IO graphs.
    pub fn is_decision(self) -> bool {
        matches!(self, Self::Dpls | Self::Adpls | Self::Comparison)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Sense {
    Min,
    Max,
}

/// Per-node certificate labels. Proof size is the maximum label length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelAssignment(pub BTreeMap<NodeId, BitString>);

impl LabelAssignment {
    pub fn get(&self, id: NodeId) -> Option<&BitString> {
        self.0.get(&id)
    }

    pub fn insert(&mut self, id: NodeId, bits: BitString) {
        self.0.insert(id, bits);
    }
}

/// Maximum label length in bits across all nodes.
pub fn proof_size(labels: &LabelAssignment) -> usize {
    labels.0.values().map(BitString::len).max().unwrap_or(0)
}

/// Per-node verifier outcomes; global accept iff every node accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub by_node: BTreeMap<NodeId, bool>,
}

impl Verdict {
    pub fn accept(&self) -> bool {
        self.by_node.values().all(|&b| b)
    }

    pub fn rejecting_nodes(&self) -> Vec<NodeId> {
        self.by_node.iter().filter(|(_, &ok)| !ok).map(|(&id, _)| id).collect()
    }
}

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error("configuration outside the scheme universe: {0}")]
    UniverseViolation(String),
    #[error("prover refused: {0}")]
    ProverRefused(String),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// Everything the verifier at one node may look at.
pub struct LocalView {
    // private: accessors below define the entire visible surface
    my_id: NodeId,
    degree: usize,
    node_weight: Option<u64>,
    b_value: Option<u64>,
    terminal: bool,
    source: bool,
    sink: bool,
    directed: bool,
    w_max: u64,
    port_weight: Vec<Option<u64>>,
    port_capacity: Vec<Option<u64>>,
    port_outgoing: Vec<bool>,
    input_bits: BitString,
    output_bits: BitString,
    label: Option<BitString>,
    neighbor_labels: Vec<Option<BitString>>,
}

impl LocalView {
    /// Builds the view of node `v`; labels may be partial (missing decodes fail).
    pub fn build(cfg: &ConfigGraph, v: usize, labels: &LabelAssignment) -> LocalView {
        let g = cfg.graph();
        LocalView {
            my_id: g.id(v),
            degree: g.deg(v),
            node_weight: g.node_weight(v),
            b_value: g.b_value(v),
            terminal: g.is_terminal(v),
            source: g.source() == Some(v),
            sink: g.sink() == Some(v),
            directed: g.directed(),
            w_max: g.w_max(),
            port_weight: g.ports(v).iter().map(|p| g.edge(p.edge).weight).collect(),
            port_capacity: g.ports(v).iter().map(|p| g.edge(p.edge).capacity).collect(),
            port_outgoing: g.ports(v).iter().map(|p| p.outgoing).collect(),
            input_bits: cfg.state_bits(v),
            output_bits: cfg.output_bits(v).clone(),
            label: labels.get(g.id(v)).cloned(),
            neighbor_labels: g
                .ports(v)
                .iter()
                .map(|p| labels.get(g.id(p.neighbor)).cloned())
                .collect(),
        }
    }

    pub fn my_id(&self) -> NodeId {
        self.my_id
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn node_weight(&self) -> Option<u64> {
        self.node_weight
    }

    pub fn b_value(&self) -> Option<u64> {
        self.b_value
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal
    }

    pub fn is_source(&self) -> bool {
        self.source
    }

    pub fn is_sink(&self) -> bool {
        self.sink
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn w_max(&self) -> u64 {
        self.w_max
    }

    /// Ports are 0-based here; file-format port `p` is index `p - 1`.
    pub fn port_weight(&self, p: usize) -> Option<u64> {
        self.port_weight.get(p).copied().flatten()
    }

    pub fn port_capacity(&self, p: usize) -> Option<u64> {
        self.port_capacity.get(p).copied().flatten()
    }

    pub fn port_outgoing(&self, p: usize) -> bool {
        self.port_outgoing.get(p).copied().unwrap_or(false)
    }

    pub fn state_bits(&self) -> &BitString {
        &self.input_bits
    }

    pub fn output_bits(&self) -> &BitString {
        &self.output_bits
    }

    pub fn label(&self) -> Option<&BitString> {
        self.label.as_ref()
    }

    pub fn neighbor_label(&self, p: usize) -> Option<&BitString> {
        self.neighbor_labels.get(p).and_then(Option::as_ref)
    }

    /// Clone of the view with its own and neighbor labels replaced, used by
    /// composite schemes to run an inner verifier on extracted sub-labels.
    pub fn with_labels(
        &self,
        label: Option<BitString>,
        neighbor_labels: Vec<Option<BitString>>,
    ) -> LocalView {
        assert_eq!(neighbor_labels.len(), self.degree);
        LocalView {
            my_id: self.my_id,
            degree: self.degree,
            node_weight: self.node_weight,
            b_value: self.b_value,
            terminal: self.terminal,
            source: self.source,
            sink: self.sink,
            directed: self.directed,
            w_max: self.w_max,
            port_weight: self.port_weight.clone(),
            port_capacity: self.port_capacity.clone(),
            port_outgoing: self.port_outgoing.clone(),
            input_bits: self.input_bits.clone(),
            output_bits: self.output_bits.clone(),
            label,
            neighbor_labels,
        }
    }

    // -- output decoders (local slice only) --

    /// Edge-subset output: my port marks.
    pub fn output_edge_marks(&self) -> Option<Vec<bool>> {
        if self.output_bits.len() != self.degree {
            return None;
        }
        Some((0..self.degree).map(|i| self.output_bits.bit(i).unwrap()).collect())
    }

    /// Edge-valued output: one value per port.
    pub fn output_edge_values(&self) -> Option<Vec<u64>> {
        let w = crate::bits::uint_width(self.w_max);
        if self.output_bits.len() != self.degree * w {
            return None;
        }
        let mut r = crate::bits::BitReader::new(&self.output_bits);
        Some((0..self.degree).map(|_| r.read_uint(w).unwrap()).collect())
    }

    /// Node-subset output: my membership bit.
    pub fn output_membership(&self) -> Option<bool> {
        if self.output_bits.len() != 1 {
            return None;
        }
        self.output_bits.bit(0)
    }
}

/// A bundled GPLS: universe predicate, centralized prover, node-local verifier.
pub trait Scheme: Send + Sync {
    fn name(&self) -> String;

    fn kind(&self) -> SchemeKind;

    /// Approximation factor; may depend on the instance (e.g. harmonic bounds).
    fn alpha(&self, cfg: &ConfigGraph) -> BigRational;

    /// The optimization problem this scheme certifies, when there is one.
    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        None
    }

    /// Threshold parameter for decision schemes.
    fn threshold(&self) -> Option<i64> {
        None
    }

    /// Same scheme re-parameterized at another threshold, for decision schemes.
    fn with_threshold(&self, _k: i64) -> Option<Box<dyn Scheme>> {
        None
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError>;

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError>;

    fn verify_node(&self, view: &LocalView) -> bool;
}

/// Runs the prover after validating the universe.
pub fn prove(scheme: &dyn Scheme, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
    scheme.check_universe(cfg)?;
    scheme.prove(cfg)
}

/// Evaluates the node-local verifier at every node. Deterministic; nodes are
/// independent, so evaluation order cannot matter (tested by shuffling).
pub fn verify(scheme: &dyn Scheme, cfg: &ConfigGraph, labels: &LabelAssignment) -> Verdict {
    let g = cfg.graph();
    let by_node = g
        .node_indices()
        .map(|v| {
            let view = LocalView::build(cfg, v, labels);
            (g.id(v), scheme.verify_node(&view))
        })
        .collect();
    Verdict { by_node }
}

/// Evaluates a single node, for locality tests.
pub fn verify_one(scheme: &dyn Scheme, cfg: &ConfigGraph, labels: &LabelAssignment, v: usize) -> bool {
    scheme.verify_node(&LocalView::build(cfg, v, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proof_size_is_max() {
        let mut labels = LabelAssignment::default();
        labels.insert(0, BitString::from_bits(vec![true]));
        labels.insert(1, BitString::from_bits(vec![false]));
        labels.insert(2, BitString::new());
        assert_eq!(proof_size(&labels), 1);
        assert_eq!(proof_size(&LabelAssignment::default()), 0);
    }

    #[test]
    fn verdict_accepts_iff_all_true() {
        let v = Verdict { by_node: [(0, true), (1, false)].into() };
        assert!(!v.accept());
        assert_eq!(v.rejecting_nodes(), vec![1]);
    }
}
