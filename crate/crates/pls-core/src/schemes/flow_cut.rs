//! Maximum flow and maximum weight cut schemes, plus the exact max-flow /
//! min-cut computation they and the oracles share.
//!
//! The flow scheme runs the primal-dual engine on the LP with an artificial
//! return edge: node labels are single cut bits, edge duals are derived from
//! the endpoint bits, and the return-edge constraint y_s - y_t >= 1 splits
//! into the local checks y_s = 1 and y_t = 0. Each of the source and sink
//! evaluates the return-edge flow from its own incident flows.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bits::BitString;
use crate::certify::comparison::{check_from_chunks, prove_certs};
use crate::config::{ConfigGraph, ProblemKind};
use crate::graph::{Graph, NodeId};
use crate::lp::{
    AlphaSpec, ApproxTask, ColRef, LocalCol, LocalLp, LocalRow, LpCol, LpRow, PdProblem,
    PdScheme, StandardFormLp, VcaScheme,
};
use crate::scheme::{
    LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind, Sense,
};

#[derive(Debug, Clone)]
pub struct FlowState {
    pub f: BTreeMap<usize, u64>,
    pub value: u64,
}

#[derive(Debug, Clone)]
pub struct CutCert {
    /// True on the source side.
    pub side: Vec<bool>,
}

fn flow_endpoints(g: &Graph) -> Result<(usize, usize), SchemeError> {
    match (g.source(), g.sink()) {
        (Some(s), Some(t)) if s != t => Ok((s, t)),
        _ => Err(SchemeError::UniverseViolation("need distinct source and sink".into())),
    }
}

/// Exact integral maximum flow by shortest augmenting paths.
pub fn max_flow(g: &Graph) -> Result<FlowState, SchemeError> {
    let (s, t) = flow_endpoints(g)?;
    let mut flow: Vec<i64> = vec![0; g.m()];
    let cap: Vec<i64> = g
        .edges()
        .iter()
        .map(|e| e.capacity.unwrap_or(0) as i64)
        .collect();
    let mut value = 0u64;
    loop {
        // BFS over positive residuals
        let mut pred: Vec<Option<(usize, bool)>> = vec![None; g.n()]; // (edge, forward)
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(v) = queue.pop_front() {
            for p in g.ports(v) {
                let residual = if p.outgoing {
                    cap[p.edge] - flow[p.edge]
                } else {
                    flow[p.edge]
                };
                if residual > 0 && !seen[p.neighbor] {
                    seen[p.neighbor] = true;
                    pred[p.neighbor] = Some((p.edge, p.outgoing));
                    if p.neighbor == t {
                        break 'bfs;
                    }
                    queue.push_back(p.neighbor);
                }
            }
        }
        if !seen[t] {
            break;
        }
        // bottleneck and augment
        let mut bottleneck = i64::MAX;
        let mut v = t;
        while v != s {
            let (e, fwd) = pred[v].unwrap();
            let residual = if fwd { cap[e] - flow[e] } else { flow[e] };
            bottleneck = bottleneck.min(residual);
            v = if fwd { g.edge(e).u } else { g.edge(e).v };
        }
        let mut v = t;
        while v != s {
            let (e, fwd) = pred[v].unwrap();
            if fwd {
                flow[e] += bottleneck;
                v = g.edge(e).u;
            } else {
                flow[e] -= bottleneck;
                v = g.edge(e).v;
            }
        }
        value += bottleneck as u64;
    }
    let f = flow
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(e, &x)| (e, x as u64))
        .collect();
    Ok(FlowState { f, value })
}

/// Source side of a minimum cut: nodes reachable in the residual graph.
pub fn min_cut(g: &Graph, flow: &FlowState) -> Result<CutCert, SchemeError> {
    let (s, _) = flow_endpoints(g)?;
    let mut side = vec![false; g.n()];
    side[s] = true;
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for p in g.ports(v) {
            let fe = flow.f.get(&p.edge).copied().unwrap_or(0);
            let residual = if p.outgoing {
                g.edge(p.edge).capacity.unwrap_or(0) - fe
            } else {
                fe
            };
            if residual > 0 && !side[p.neighbor] {
                side[p.neighbor] = true;
                stack.push(p.neighbor);
            }
        }
    }
    Ok(CutCert { side })
}

fn flow_universe(cfg: &ConfigGraph) -> Result<(), SchemeError> {
    let g = cfg.graph();
    if !g.directed() {
        return Err(SchemeError::UniverseViolation("flow needs a directed graph".into()));
    }
    flow_endpoints(g)?;
    if g.edges().iter().any(|e| e.capacity.is_none()) {
        return Err(SchemeError::UniverseViolation("every edge needs a capacity".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Maximum flow PLS (primal-dual, 1-bit labels)
// ---------------------------------------------------------------------------

pub struct FlowPd;

impl FlowPd {
    fn rational(v: u64) -> BigRational {
        BigRational::from_integer(v.into())
    }
}

impl PdProblem for FlowPd {
    fn name(&self) -> String {
        "max-flow-pls".into()
    }

    fn scheme_kind(&self) -> SchemeKind {
        SchemeKind::Pls
    }

    fn problem(&self) -> (ProblemKind, Sense) {
        (ProblemKind::MaxFlow, Sense::Max)
    }

    fn beta(&self) -> BigRational {
        BigRational::one()
    }

    fn gamma(&self) -> BigRational {
        BigRational::one()
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        flow_universe(cfg)
    }

    fn build_lp(
        &self,
        cfg: &ConfigGraph,
    ) -> Result<(StandardFormLp, Vec<BigRational>), SchemeError> {
        let g = cfg.graph();
        let (s, t) = flow_endpoints(g)?;
        let f = crate::config::decode_edge_values(cfg)
            .map_err(|e| SchemeError::ProverRefused(e.to_string()))?;
        let art = g.m();
        let mut cols: Vec<LpCol> = (0..g.m())
            .map(|e| LpCol { loc: ColRef::Edge(e), c: BigRational::zero() })
            .collect();
        cols.push(LpCol { loc: ColRef::TsArtificial, c: BigRational::one() });

        let mut rows = Vec::new();
        for (e, edge) in g.edges().iter().enumerate() {
            rows.push(LpRow {
                node: edge.u,
                b: Self::rational(edge.capacity.unwrap_or(0)),
                entries: vec![(e, BigRational::one())],
            });
        }
        for v in g.node_indices() {
            let mut entries: Vec<(usize, BigRational)> = g
                .ports(v)
                .iter()
                .map(|p| {
                    let sign = if p.outgoing { -BigRational::one() } else { BigRational::one() };
                    (p.edge, sign)
                })
                .collect();
            if v == s {
                entries.push((art, BigRational::one()));
            }
            if v == t {
                entries.push((art, -BigRational::one()));
            }
            rows.push(LpRow { node: v, b: BigRational::zero(), entries });
        }
        let mut x: Vec<BigRational> = (0..g.m())
            .map(|e| Self::rational(f.get(&e).copied().unwrap_or(0)))
            .collect();
        let net_in_t: BigRational = g
            .ports(t)
            .iter()
            .map(|p| {
                let fe = Self::rational(f.get(&p.edge).copied().unwrap_or(0));
                if p.outgoing {
                    -fe
                } else {
                    fe
                }
            })
            .sum();
        x.push(net_in_t);
        Ok((StandardFormLp { sense: Sense::Max, rows, cols }, x))
    }

    fn gen_duals(&self, cfg: &ConfigGraph) -> Result<Vec<BigRational>, SchemeError> {
        let g = cfg.graph();
        let flow = max_flow(g)?;
        let cut = min_cut(g, &flow)?;
        let mut y = Vec::new();
        for edge in g.edges() {
            let crossing = cut.side[edge.u] && !cut.side[edge.v];
            y.push(if crossing { BigRational::one() } else { BigRational::zero() });
        }
        for v in g.node_indices() {
            y.push(if cut.side[v] { BigRational::one() } else { BigRational::zero() });
        }
        Ok(y)
    }

    fn encode_label(&self, _cfg: &ConfigGraph, _v: usize, ys: &[BigRational]) -> BitString {
        // rows mapped to a node: capacity rows of its out-edges, then its
        // conservation row, whose dual is the cut bit
        let bit = ys.last().is_some_and(|y| y.is_one());
        let mut bs = BitString::new();
        bs.push_bit(bit);
        bs
    }

    fn local_lp(&self, view: &LocalView) -> Option<LocalLp> {
        let flows = view.output_edge_values()?;
        let own = view.label()?;
        if own.len() != 1 {
            return None;
        }
        let me = own.bit(0)?;
        let mut nb = Vec::with_capacity(view.degree());
        for p in 0..view.degree() {
            let l = view.neighbor_label(p)?;
            if l.len() != 1 {
                return None;
            }
            nb.push(l.bit(0)?);
        }
        let bit = |b: bool| if b { BigRational::one() } else { BigRational::zero() };

        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut conservation: Vec<(BigRational, BigRational)> = Vec::new();
        for p in 0..view.degree() {
            let x = Self::rational(flows[p]);
            let (tail_bit, head_bit) = if view.port_outgoing(p) {
                (me, nb[p])
            } else {
                (nb[p], me)
            };
            let crossing = tail_bit && !head_bit;
            if view.port_outgoing(p) {
                // capacity row of my out-edge
                rows.push(LocalRow {
                    b: Self::rational(view.port_capacity(p)?),
                    terms: vec![(BigRational::one(), x.clone())],
                    y: bit(crossing),
                });
                conservation.push((-BigRational::one(), x.clone()));
            } else {
                conservation.push((BigRational::one(), x.clone()));
            }
            // the edge's dual column, seen from this endpoint
            cols.push(LocalCol {
                c: BigRational::zero(),
                x,
                terms: vec![
                    (BigRational::one(), bit(crossing)),
                    (-BigRational::one(), bit(tail_bit)),
                    (BigRational::one(), bit(head_bit)),
                ],
            });
        }
        // artificial return edge, evaluated from my own incident flows
        let net_out: BigRational = (0..view.degree())
            .map(|p| {
                let fe = Self::rational(flows[p]);
                if view.port_outgoing(p) {
                    fe
                } else {
                    -fe
                }
            })
            .sum();
        if view.is_source() {
            conservation.push((BigRational::one(), net_out.clone()));
            cols.push(LocalCol {
                c: BigRational::one(),
                x: net_out.clone(),
                terms: vec![(BigRational::one(), bit(me))],
            });
        }
        if view.is_sink() {
            let net_in = -net_out.clone();
            conservation.push((-BigRational::one(), net_in.clone()));
            cols.push(LocalCol {
                c: BigRational::zero(),
                x: net_in,
                terms: vec![(-BigRational::one(), bit(me))],
            });
        }
        rows.push(LocalRow { b: BigRational::zero(), terms: conservation, y: bit(me) });
        Some(LocalLp { sense: Sense::Max, rows, cols })
    }
}

pub fn make_flow_pls() -> PdScheme<FlowPd> {
    PdScheme::new(FlowPd)
}

// ---------------------------------------------------------------------------
// Maximum flow DPLS (VCA over the min cut)
// ---------------------------------------------------------------------------

struct MinCutTask;

impl ApproxTask for MinCutTask {
    fn prove(
        &self,
        cfg: &ConfigGraph,
    ) -> Result<(BTreeMap<NodeId, BitString>, BTreeMap<NodeId, BigRational>), SchemeError> {
        let g = cfg.graph();
        let flow = max_flow(g)?;
        let cut = min_cut(g, &flow)?;
        let mut chunks = BTreeMap::new();
        let mut lambdas = BTreeMap::new();
        for v in g.node_indices() {
            let mut bs = BitString::new();
            bs.push_bit(cut.side[v]);
            chunks.insert(g.id(v), bs);
            let lam: u64 = g
                .ports(v)
                .iter()
                .filter(|p| p.outgoing && cut.side[v] && !cut.side[p.neighbor])
                .map(|p| g.edge(p.edge).capacity.unwrap_or(0))
                .sum();
            lambdas.insert(g.id(v), BigRational::from_integer(lam.into()));
        }
        Ok((chunks, lambdas))
    }

    fn verify(
        &self,
        view: &LocalView,
        own: &BitString,
        neighbors: &[Option<BitString>],
    ) -> Option<BigRational> {
        if own.len() != 1 {
            return None;
        }
        let me = own.bit(0)?;
        if view.is_source() && !me {
            return None;
        }
        if view.is_sink() && me {
            return None;
        }
        let mut lam = BigRational::zero();
        for p in 0..view.degree() {
            let nb = neighbors[p].as_ref().filter(|l| l.len() == 1)?.bit(0)?;
            if view.port_outgoing(p) && me && !nb {
                lam += BigRational::from_integer(view.port_capacity(p)?.into());
            }
        }
        Some(lam)
    }
}

pub fn make_flow_dpls(k: i64) -> VcaScheme {
    VcaScheme {
        name: format!("max-flow-dpls[k={k}]"),
        scheme_kind: SchemeKind::Dpls,
        alpha: AlphaSpec::of_int(1),
        sense: Sense::Max,
        k,
        problem_kind: ProblemKind::MaxFlow,
        universe: Arc::new(flow_universe),
        task: Arc::new(MinCutTask),
        refit: Arc::new(|k| Box::new(make_flow_dpls(k))),
    }
}

// ---------------------------------------------------------------------------
// Maximum weight cut APLS (1-bit labels)
// ---------------------------------------------------------------------------

pub struct MaxCutApls;

impl Scheme for MaxCutApls {
    fn name(&self) -> String {
        "max-cut-apls".into()
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Apls
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        BigRational::from_integer(2.into())
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((ProblemKind::MaxCut, Sense::Max))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        if cfg.graph().directed() {
            return Err(SchemeError::UniverseViolation("undirected graphs only".into()));
        }
        Ok(())
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let g = cfg.graph();
        let mut labels = LabelAssignment::default();
        for v in g.node_indices() {
            let bits = cfg.output_bits(v);
            if bits.len() != 1 {
                return Err(SchemeError::ProverRefused("output is not a cut".into()));
            }
            labels.insert(g.id(v), bits.clone());
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let mine = match view.output_membership() {
            Some(b) => b,
            None => return false,
        };
        // the label must mirror the output bit so neighbors can read it
        match view.label() {
            Some(l) if l.len() == 1 && l.bit(0) == Some(mine) => {}
            _ => return false,
        }
        let mut crossing = 0u64;
        let mut total = 0u64;
        for p in 0..view.degree() {
            let w = view.port_weight(p).unwrap_or(1);
            total += w;
            let nb = match view.neighbor_label(p) {
                Some(l) if l.len() == 1 => l.bit(0).unwrap(),
                _ => return false,
            };
            if nb != mine {
                crossing += w;
            }
        }
        2 * crossing >= total
    }
}

// ---------------------------------------------------------------------------
// Maximum weight cut ADPLS (pure comparison)
// ---------------------------------------------------------------------------

/// Certifies 4k >= sum of all incident weights (twice the total edge weight),
/// which with the half-total cut guarantee yields a 2-ADPLS.
pub struct MaxCutAdpls {
    k: i64,
}

impl MaxCutAdpls {
    fn h(view: &LocalView) -> BigRational {
        let sum: u64 = (0..view.degree()).map(|p| view.port_weight(p).unwrap_or(1)).sum();
        BigRational::from_integer(sum.into())
    }
}

impl Scheme for MaxCutAdpls {
    fn name(&self) -> String {
        format!("max-cut-adpls[k={}]", self.k)
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Adpls
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        BigRational::from_integer(2.into())
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((ProblemKind::MaxCut, Sense::Max))
    }

    fn threshold(&self) -> Option<i64> {
        Some(self.k)
    }

    fn with_threshold(&self, k: i64) -> Option<Box<dyn Scheme>> {
        Some(Box::new(MaxCutAdpls { k }))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        if cfg.graph().directed() {
            return Err(SchemeError::UniverseViolation("undirected graphs only".into()));
        }
        Ok(())
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let g = cfg.graph();
        let empty = LabelAssignment::default();
        let mut h = BTreeMap::new();
        let mut total = BigRational::zero();
        for v in g.node_indices() {
            let val = -Self::h(&LocalView::build(cfg, v, &empty));
            total += &val;
            h.insert(g.id(v), val);
        }
        // sum of -h >= -4k, i.e. twice the total weight is at most 4k
        let bound = BigRational::from_integer((-4 * self.k).into());
        if total < bound {
            return Err(SchemeError::ProverRefused(format!(
                "total incident weight exceeds 4k = {}",
                4 * self.k
            )));
        }
        let certs = prove_certs(g, &h)?;
        let mut labels = LabelAssignment::default();
        for (id, c) in certs {
            labels.insert(id, c.encode());
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let own = match view.label() {
            Some(l) => l.clone(),
            None => return false,
        };
        let neighbors: Vec<Option<BitString>> = (0..view.degree())
            .map(|p| view.neighbor_label(p).cloned())
            .collect();
        check_from_chunks(
            &own,
            &neighbors,
            view.my_id(),
            &-Self::h(view),
            &BigRational::from_integer((-4 * self.k).into()),
        )
    }
}

pub fn make_maxcut_apls() -> MaxCutApls {
    MaxCutApls
}

pub fn make_maxcut_adpls(k: i64) -> MaxCutAdpls {
    MaxCutAdpls { k }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{encode_edge_values, encode_node_subset};
    use crate::graph::{Graph, GraphBuilder};
    use crate::scheme::{proof_size, prove, verify};
    use std::collections::BTreeSet;

    fn two_node_flow(cap: u64) -> Graph {
        Graph::parse(&format!(
            "graph f directed W={cap}\nnode 0 source\nnode 1 sink\nedge 0 1 c={cap}\n"
        ))
        .unwrap()
    }

    fn diamond() -> Graph {
        Graph::parse(
            "graph d directed W=1\nnode 0 source\nnode 1\nnode 2\nnode 3 sink\n\
             edge 0 1 c=1\nedge 0 2 c=1\nedge 1 3 c=1\nedge 2 3 c=1\n",
        )
        .unwrap()
    }

    #[test]
    fn max_flow_two_node() {
        let g = two_node_flow(3);
        let flow = max_flow(&g).unwrap();
        assert_eq!(flow.value, 3);
        let cut = min_cut(&g, &flow).unwrap();
        assert_eq!(cut.side, vec![true, false]);
    }

    #[test]
    fn max_flow_diamond_is_two() {
        assert_eq!(max_flow(&diamond()).unwrap().value, 2);
    }

    #[test]
    fn zero_capacity_flow() {
        let g = two_node_flow(3);
        // capacities come from the graph; a zero-cap variant:
        let g0 = Graph::parse(
            "graph f directed W=3\nnode 0 source\nnode 1 sink\nedge 0 1 c=0\n",
        )
        .unwrap();
        assert_eq!(max_flow(&g0).unwrap().value, 0);
        assert_eq!(max_flow(&g).unwrap().value, 3);
    }

    #[test]
    fn flow_pls_accepts_saturating_flow() {
        let g = two_node_flow(3);
        let out = encode_edge_values(&g, &[(0usize, 3u64)].into());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = make_flow_pls();
        let labels = prove(&s, &cfg).unwrap();
        assert_eq!(proof_size(&labels), 1);
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn flow_pls_rejects_subflow_under_all_bit_labels() {
        let g = two_node_flow(3);
        let out = encode_edge_values(&g, &[(0usize, 2u64)].into());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = make_flow_pls();
        for mask in 0..4u32 {
            let mut labels = LabelAssignment::default();
            for v in 0..2u64 {
                let mut bs = BitString::new();
                bs.push_bit(mask >> v & 1 == 1);
                labels.insert(v, bs);
            }
            assert!(!verify(&s, &cfg, &labels).accept(), "accepted mask {mask}");
        }
    }

    #[test]
    fn flow_dpls_thresholds() {
        let g = two_node_flow(3);
        let cfg = ConfigGraph::input_only(g);
        let s = make_flow_dpls(3);
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
        // below the max-flow value the prover cannot certify
        assert!(prove(&make_flow_dpls(2), &cfg).is_err());
        // far above is trivially certifiable
        let s9 = make_flow_dpls(9);
        let l9 = prove(&s9, &cfg).unwrap();
        assert!(verify(&s9, &cfg, &l9).accept());
    }

    #[test]
    fn maxcut_apls_triangle_singleton_accepts() {
        let mut b = GraphBuilder::new("tri");
        for i in 0..3 {
            b.node(i);
        }
        b.edge(0, 1).edge(1, 2).edge(2, 0);
        let g = b.build().unwrap();
        let out = encode_node_subset(&g, &[0usize].into());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = make_maxcut_apls();
        let labels = prove(&s, &cfg).unwrap();
        assert_eq!(proof_size(&labels), 1);
        assert!(verify(&s, &cfg, &labels).accept());
        // the honest labels are exactly the output bits
        assert_eq!(labels.get(0).unwrap().bit(0), Some(true));
        assert_eq!(labels.get(1).unwrap().bit(0), Some(false));
    }

    #[test]
    fn maxcut_apls_rejects_unbalanced_path() {
        let mut b = GraphBuilder::new("p3");
        b.node(0).node(1).node(2);
        b.edge_w(0, 1, 1).edge_w(1, 2, 3);
        let g = b.build().unwrap();
        let out = encode_node_subset(&g, &[0usize].into());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = make_maxcut_apls();
        let labels = prove(&s, &cfg).unwrap();
        let verdict = verify(&s, &cfg, &labels);
        assert_eq!(verdict.by_node[&1], false);
        // flipping any single label is caught at the flipped node
        for v in 0..3u64 {
            let mut mutated = labels.clone();
            mutated.insert(v, labels.get(v).unwrap().flipped_bit(0));
            assert_eq!(verify(&s, &cfg, &mutated).by_node[&v], false);
        }
    }

    #[test]
    fn maxcut_adpls_triangle() {
        let mut b = GraphBuilder::new("tri");
        for i in 0..3 {
            b.node(i);
        }
        b.edge(0, 1).edge(1, 2).edge(2, 0);
        let g = b.build().unwrap();
        let cfg = ConfigGraph::input_only(g);
        let s = make_maxcut_adpls(2);
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
        // k = 1: total weight 3 > 2k, the prover refuses
        assert!(prove(&make_maxcut_adpls(1), &cfg).is_err());
    }

    #[test]
    fn empty_and_full_cuts_reject() {
        let mut b = GraphBuilder::new("p2");
        b.node(0).node(1);
        b.edge(0, 1);
        let g = b.build().unwrap();
        let s = make_maxcut_apls();
        for set in [BTreeSet::new(), BTreeSet::from([0usize, 1])] {
            let out = encode_node_subset(&g, &set);
            let cfg = ConfigGraph::with_output(g.clone(), out).unwrap();
            let labels = prove(&s, &cfg).unwrap();
            assert!(!verify(&s, &cfg, &labels).accept());
        }
    }
}
