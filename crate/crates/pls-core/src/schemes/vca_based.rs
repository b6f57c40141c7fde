//! Decision schemes built from verifiable centralized approximations:
//! local-ratio vertex cover, dual-fitting dominating set, and MST-certified
//! metric TSP and Steiner tree, plus their lifted approximation schemes.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bits::{split_frames, BitReader, BitString};
use crate::certify::comparison::{check_from_chunks, prove_certs};
use crate::certify::feasibility::{
    cycle_successor_weight, tree_parent_weight, HamiltonianFeasibility, NodeSetFeasibility,
    TerminalTreeFeasibility,
};
use crate::certify::mst::{check_mst_cert, prove_mst_certs, MstCert, MstPort};
use crate::config::{ConfigGraph, ProblemKind};
use crate::graph::{check_metric, Graph, NodeId};
use crate::lp::{harmonic, AlphaSpec, ApproxTask, ObjectiveLiftedApls, VcaScheme};
use crate::scheme::{
    LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind, Sense,
};

// ---------------------------------------------------------------------------
// Vertex cover: local-ratio 2-approximation with a charging trace
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct VcTrace {
    pub cover: BTreeSet<usize>,
    pub residual: Vec<u64>,
    pub charge: Vec<Option<usize>>,
}

/// The charging loop: repeatedly take the lex-least uncovered edge and move
/// its smaller-residual endpoint into the cover, charging the other side.
pub fn vc_approx(g: &Graph) -> VcTrace {
    let w = |v: usize| g.node_weight(v).unwrap_or(1);
    let mut residual: Vec<u64> = g.node_indices().map(w).collect();
    let mut charge: Vec<Option<usize>> = vec![None; g.n()];
    let mut cover: BTreeSet<usize> = BTreeSet::new();
    loop {
        let mut pick = None;
        for e in 0..g.m() {
            let edge = g.edge(e);
            if !cover.contains(&edge.u) && !cover.contains(&edge.v) {
                let key = (g.id(edge.u).min(g.id(edge.v)), g.id(edge.u).max(g.id(edge.v)));
                if pick.is_none_or(|(best, _)| key < best) {
                    pick = Some((key, e));
                }
            }
        }
        let Some((_, e)) = pick else { break };
        let edge = g.edge(e);
        let (a, b) = if (residual[edge.u], g.id(edge.u)) <= (residual[edge.v], g.id(edge.v)) {
            (edge.u, edge.v)
        } else {
            (edge.v, edge.u)
        };
        charge[a] = Some(b);
        cover.insert(a);
        residual[b] -= residual[a];
    }
    VcTrace { cover, residual, charge }
}

struct VcChunk {
    member: bool,
    own_id: NodeId,
    charged: Option<NodeId>,
    residual: u64,
}

impl VcChunk {
    fn encode(&self) -> BitString {
        let mut bs = BitString::new();
        bs.push_bit(self.member);
        bs.push_gamma(self.own_id + 1);
        match self.charged {
            Some(c) => {
                bs.push_bit(true);
                bs.push_gamma(c + 1);
            }
            None => bs.push_bit(false),
        }
        bs.push_gamma(self.residual + 1);
        bs
    }

    fn decode(bits: &BitString) -> Option<Self> {
        let mut r = BitReader::new(bits);
        let member = r.read_bit()?;
        let own_id = r.read_gamma()? - 1;
        let charged = if r.read_bit()? { Some(r.read_gamma()? - 1) } else { None };
        let residual = r.read_gamma()? - 1;
        r.at_end().then_some(Self { member, own_id, charged, residual })
    }
}

struct VcTask;

impl ApproxTask for VcTask {
    fn prove(
        &self,
        cfg: &ConfigGraph,
    ) -> Result<(BTreeMap<NodeId, BitString>, BTreeMap<NodeId, BigRational>), SchemeError> {
        let g = cfg.graph();
        let trace = vc_approx(g);
        let mut chunks = BTreeMap::new();
        let mut lambdas = BTreeMap::new();
        for v in g.node_indices() {
            let chunk = VcChunk {
                member: trace.cover.contains(&v),
                own_id: g.id(v),
                charged: trace.charge[v].map(|u| g.id(u)),
                residual: trace.residual[v],
            };
            chunks.insert(g.id(v), chunk.encode());
            let lam = if trace.cover.contains(&v) {
                g.node_weight(v).unwrap_or(1)
            } else {
                0
            };
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
        let me = VcChunk::decode(own)?;
        if me.own_id != view.my_id() {
            return None;
        }
        // members charge, non-members never do
        if me.member != me.charged.is_some() {
            return None;
        }
        let nb: Vec<VcChunk> = neighbors
            .iter()
            .map(|c| c.as_ref().and_then(VcChunk::decode))
            .collect::<Option<_>>()?;
        if !me.member && nb.iter().any(|c| !c.member) {
            return None;
        }
        // the charge target must be an actual neighbor
        if let Some(target) = me.charged {
            if !nb.iter().any(|c| c.own_id == target) {
                return None;
            }
        }
        // weight decomposition: w(v) = residual + incoming charges
        let incoming: u64 = nb
            .iter()
            .filter(|c| c.charged == Some(me.own_id))
            .map(|c| c.residual)
            .sum();
        let w = view.node_weight().unwrap_or(1);
        if w != me.residual.checked_add(incoming)? {
            return None;
        }
        Some(if me.member {
            BigRational::from_integer(w.into())
        } else {
            BigRational::zero()
        })
    }
}

fn undirected_universe(cfg: &ConfigGraph) -> Result<(), SchemeError> {
    if cfg.graph().directed() {
        return Err(SchemeError::UniverseViolation("undirected graphs only".into()));
    }
    Ok(())
}

pub fn make_vc_adpls(k: i64) -> VcaScheme {
    VcaScheme {
        name: format!("vertex-cover-adpls[k={k}]"),
        scheme_kind: SchemeKind::Adpls,
        alpha: AlphaSpec::of_int(2),
        sense: Sense::Min,
        k,
        problem_kind: ProblemKind::VertexCover,
        universe: Arc::new(undirected_universe),
        task: Arc::new(VcTask),
        refit: Arc::new(|k| Box::new(make_vc_adpls(k))),
    }
}

// ---------------------------------------------------------------------------
// Dominating set: greedy prices with dual fitting against H_n
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct DsTrace {
    pub set: BTreeSet<usize>,
    pub price: Vec<BigRational>,
}

/// Greedy over closed neighborhoods by best weight-per-newly-covered-node
/// ratio; prices split the chosen weight evenly over the newly covered.
pub fn ds_greedy(g: &Graph) -> DsTrace {
    let w = |v: usize| g.node_weight(v).unwrap_or(1);
    let mut covered = vec![false; g.n()];
    let mut price = vec![BigRational::zero(); g.n()];
    let mut set = BTreeSet::new();
    while covered.iter().any(|&c| !c) {
        let mut best: Option<(BigRational, NodeId, usize, Vec<usize>)> = None;
        for z in g.node_indices() {
            if set.contains(&z) {
                continue;
            }
            let fresh: Vec<usize> = std::iter::once(z)
                .chain(g.ports(z).iter().map(|p| p.neighbor))
                .filter(|&u| !covered[u])
                .collect();
            if fresh.is_empty() {
                continue;
            }
            let ratio = BigRational::new(w(z).into(), (fresh.len() as u64).into());
            let key = (ratio.clone(), g.id(z));
            if best.as_ref().is_none_or(|(r, id, _, _)| (ratio.clone(), g.id(z)) < (r.clone(), *id))
            {
                let _ = key;
                best = Some((ratio, g.id(z), z, fresh));
            }
        }
        let (ratio, _, z, fresh) = best.expect("some node still covers something");
        for u in fresh {
            covered[u] = true;
            price[u] = ratio.clone();
        }
        set.insert(z);
    }
    DsTrace { set, price }
}

struct DsChunk {
    price_num: u64,
    price_den: u64,
    n_claim: u64,
}

impl DsChunk {
    fn encode(&self) -> BitString {
        let mut bs = BitString::new();
        bs.push_gamma(self.price_num + 1);
        bs.push_gamma(self.price_den);
        bs.push_gamma(self.n_claim + 1);
        bs
    }

    fn decode(bits: &BitString) -> Option<Self> {
        let mut r = BitReader::new(bits);
        let price_num = r.read_gamma()? - 1;
        let price_den = r.read_gamma()?;
        let n_claim = r.read_gamma()? - 1;
        r.at_end().then_some(Self { price_num, price_den, n_claim })
    }

    fn price(&self) -> BigRational {
        BigRational::new(self.price_num.into(), self.price_den.into())
    }
}

/// Dominating set ADPLS. The label holds the greedy price, an n-claim
/// certified exact by a two-sided unit comparison, the dual-fitting
/// feasibility check against H_n, and the price-sum comparison.
pub struct DsAdpls {
    k: i64,
}

impl Scheme for DsAdpls {
    fn name(&self) -> String {
        format!("dominating-set-adpls[k={}]", self.k)
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Adpls
    }

    fn alpha(&self, cfg: &ConfigGraph) -> BigRational {
        harmonic(cfg.graph().n())
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((ProblemKind::DominatingSet, Sense::Min))
    }

    fn threshold(&self) -> Option<i64> {
        Some(self.k)
    }

    fn with_threshold(&self, k: i64) -> Option<Box<dyn Scheme>> {
        Some(Box::new(DsAdpls { k }))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        undirected_universe(cfg)
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let g = cfg.graph();
        let trace = ds_greedy(g);
        let total: BigRational = trace.price.iter().sum();
        if total < BigRational::from_integer(self.k.into()) {
            return Err(SchemeError::ProverRefused(format!(
                "greedy weight {total} is below k = {}",
                self.k
            )));
        }
        let n = g.n() as u64;
        let prices: BTreeMap<NodeId, BigRational> = g
            .node_indices()
            .map(|v| (g.id(v), trace.price[v].clone()))
            .collect();
        let ones: BTreeMap<NodeId, BigRational> =
            g.node_indices().map(|v| (g.id(v), BigRational::one())).collect();
        let neg_ones: BTreeMap<NodeId, BigRational> =
            g.node_indices().map(|v| (g.id(v), -BigRational::one())).collect();
        let sum_certs = prove_certs(g, &prices)?;
        let up_certs = prove_certs(g, &ones)?;
        let down_certs = prove_certs(g, &neg_ones)?;
        let mut labels = LabelAssignment::default();
        for v in g.node_indices() {
            let id = g.id(v);
            let p = &trace.price[v];
            let chunk = DsChunk {
                price_num: num_traits::ToPrimitive::to_u64(p.numer()).unwrap(),
                price_den: num_traits::ToPrimitive::to_u64(p.denom()).unwrap(),
                n_claim: n,
            };
            let mut bs = BitString::new();
            bs.push_frame(&chunk.encode());
            bs.push_frame(&sum_certs[&id].encode());
            bs.push_frame(&up_certs[&id].encode());
            bs.push_frame(&down_certs[&id].encode());
            labels.insert(id, bs);
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let own = match view.label().and_then(|l| split_frames(l, 4)) {
            Some(f) => f,
            None => return false,
        };
        let me = match DsChunk::decode(&own[0]) {
            Some(c) => c,
            None => return false,
        };
        let neighbors: Vec<Option<Vec<BitString>>> = (0..view.degree())
            .map(|p| view.neighbor_label(p).and_then(|l| split_frames(l, 4)))
            .collect();
        let nb_chunks: Vec<DsChunk> = match neighbors
            .iter()
            .map(|f| f.as_ref().and_then(|v| DsChunk::decode(&v[0])))
            .collect::<Option<_>>()
        {
            Some(v) => v,
            None => return false,
        };
        if nb_chunks.iter().any(|c| c.n_claim != me.n_claim) {
            return false;
        }
        if me.price().is_negative() {
            return false;
        }
        // dual fitting: price(v) + sum of neighbor prices <= H_n * w(v)
        let h_n = harmonic(me.n_claim as usize);
        let w = BigRational::from_integer(view.node_weight().unwrap_or(1).into());
        let sum: BigRational =
            me.price() + nb_chunks.iter().map(DsChunk::price).sum::<BigRational>();
        if sum > h_n * w {
            return false;
        }
        let frame_of = |idx: usize| -> Vec<Option<BitString>> {
            neighbors
                .iter()
                .map(|f| f.as_ref().map(|v| v[idx].clone()))
                .collect()
        };
        // the price sum reaches the threshold
        if !check_from_chunks(
            &own[1],
            &frame_of(1),
            view.my_id(),
            &me.price(),
            &BigRational::from_integer(self.k.into()),
        ) {
            return false;
        }
        // the n-claim is exactly the node count, from both sides
        let n_claim = BigRational::from_integer(me.n_claim.into());
        check_from_chunks(&own[2], &frame_of(2), view.my_id(), &BigRational::one(), &n_claim)
            && check_from_chunks(
                &own[3],
                &frame_of(3),
                view.my_id(),
                &-BigRational::one(),
                &-n_claim,
            )
    }
}

pub fn make_ds_adpls(k: i64) -> DsAdpls {
    DsAdpls { k }
}

// ---------------------------------------------------------------------------
// Metric TSP and Steiner tree: MST certification as the approximation task
// ---------------------------------------------------------------------------

fn metric_universe(cfg: &ConfigGraph) -> Result<(), SchemeError> {
    undirected_universe(cfg)?;
    match check_metric(cfg.graph()) {
        Ok(true) => Ok(()),
        Ok(false) => Err(SchemeError::UniverseViolation("weights are not metric".into())),
        Err(e) => Err(SchemeError::UniverseViolation(e.to_string())),
    }
}

/// MST-based approximation task: participants certify the lex MST of their
/// induced subgraph in the labels; the decomposition prices each tree edge at
/// its child endpoint, scaled by `price_factor`.
struct MstTask {
    terminals_only: bool,
    price_factor: u64,
}

impl MstTask {
    fn participates(&self, g: &Graph, v: usize) -> bool {
        !self.terminals_only || g.is_terminal(v)
    }
}

impl ApproxTask for MstTask {
    fn prove(
        &self,
        cfg: &ConfigGraph,
    ) -> Result<(BTreeMap<NodeId, BitString>, BTreeMap<NodeId, BigRational>), SchemeError> {
        let g = cfg.graph();
        let participants: BTreeSet<usize> = g
            .node_indices()
            .filter(|&v| self.participates(g, v))
            .collect();
        let certs = prove_mst_certs(g, &participants)?;
        let mut chunks = BTreeMap::new();
        let mut lambdas = BTreeMap::new();
        for v in g.node_indices() {
            let mut bs = BitString::new();
            let mut lam = BigRational::zero();
            if let Some(cert) = certs.get(&v) {
                bs.push_bit(true);
                bs.extend(&cert.encode());
                if let Some(pid) = cert.parent {
                    let p = g
                        .ports(v)
                        .iter()
                        .find(|p| g.id(p.neighbor) == pid)
                        .expect("parent is a neighbor");
                    let w = g.edge(p.edge).weight.unwrap_or(1);
                    lam = BigRational::from_integer((self.price_factor * w).into());
                }
            } else {
                bs.push_bit(false);
            }
            chunks.insert(g.id(v), bs);
            lambdas.insert(g.id(v), lam);
        }
        Ok((chunks, lambdas))
    }

    fn verify(
        &self,
        view: &LocalView,
        own: &BitString,
        neighbors: &[Option<BitString>],
    ) -> Option<BigRational> {
        let split = |bits: &BitString| -> Option<(bool, Option<MstCert>)> {
            let flag = bits.bit(0)?;
            if !flag {
                return (bits.len() == 1).then_some((false, None));
            }
            let rest = BitString::from_bits((1..bits.len()).map(|i| bits.bit(i).unwrap()).collect());
            Some((true, Some(MstCert::decode(&rest)?)))
        };
        let (me_in, my_cert) = split(own)?;
        // the participation flag is bound to the input terminal marker
        if self.terminals_only && me_in != view.is_terminal() {
            return None;
        }
        if !self.terminals_only && !me_in {
            return None;
        }
        let nb: Vec<(bool, Option<MstCert>)> = neighbors
            .iter()
            .map(|c| c.as_ref().and_then(&split))
            .collect::<Option<_>>()?;
        if !me_in {
            return Some(BigRational::zero());
        }
        let my_cert = my_cert?;
        let ports: Vec<MstPort> = (0..view.degree())
            .map(|p| MstPort {
                weight: view.port_weight(p).unwrap_or(1),
                marked: None,
                neighbor: nb[p].1.as_ref(),
            })
            .collect();
        let parent_port = check_mst_cert(view.my_id(), &my_cert, &ports)?;
        Some(match parent_port {
            Some(p) => BigRational::from_integer(
                (self.price_factor * view.port_weight(p).unwrap_or(1)).into(),
            ),
            None => BigRational::zero(),
        })
    }
}

pub fn make_tsp_adpls(k: i64) -> VcaScheme {
    VcaScheme {
        name: format!("tsp-adpls[k={k}]"),
        scheme_kind: SchemeKind::Adpls,
        alpha: AlphaSpec::of_int(2),
        sense: Sense::Min,
        k,
        problem_kind: ProblemKind::MetricTsp,
        universe: Arc::new(|cfg: &ConfigGraph| {
            metric_universe(cfg)?;
            if cfg.graph().n() < 3 {
                return Err(SchemeError::UniverseViolation("tours need n >= 3".into()));
            }
            Ok(())
        }),
        task: Arc::new(MstTask { terminals_only: false, price_factor: 2 }),
        refit: Arc::new(|k| Box::new(make_tsp_adpls(k))),
    }
}

pub fn make_steiner_adpls(k: i64) -> VcaScheme {
    VcaScheme {
        name: format!("steiner-adpls[k={k}]"),
        scheme_kind: SchemeKind::Adpls,
        alpha: AlphaSpec::of_int(2),
        sense: Sense::Min,
        k,
        problem_kind: ProblemKind::SteinerTree,
        universe: Arc::new(|cfg: &ConfigGraph| {
            metric_universe(cfg)?;
            if cfg.graph().terminals().len() < 2 {
                return Err(SchemeError::UniverseViolation("need at least 2 terminals".into()));
            }
            Ok(())
        }),
        task: Arc::new(MstTask { terminals_only: true, price_factor: 1 }),
        refit: Arc::new(|k| Box::new(make_steiner_adpls(k))),
    }
}

// ---------------------------------------------------------------------------
// Lifted approximation schemes
// ---------------------------------------------------------------------------

pub fn make_vc_apls() -> ObjectiveLiftedApls {
    ObjectiveLiftedApls {
        name: "vertex-cover-apls".into(),
        problem_kind: ProblemKind::VertexCover,
        sense: Sense::Min,
        alpha: AlphaSpec::of_int(2),
        universe: Arc::new(undirected_universe),
        feasibility: Arc::new(NodeSetFeasibility::vertex_cover()),
        adpls_factory: Arc::new(|k| Box::new(make_vc_adpls(k))),
        lambda_obj: Arc::new(|view: &LocalView| {
            let member = view.output_membership()?;
            Some(if member {
                BigRational::from_integer(view.node_weight().unwrap_or(1).into())
            } else {
                BigRational::zero()
            })
        }),
    }
}

pub fn make_ds_apls() -> ObjectiveLiftedApls {
    ObjectiveLiftedApls {
        name: "dominating-set-apls".into(),
        problem_kind: ProblemKind::DominatingSet,
        sense: Sense::Min,
        alpha: AlphaSpec::HarmonicOfN,
        universe: Arc::new(undirected_universe),
        feasibility: Arc::new(NodeSetFeasibility::dominating_set()),
        adpls_factory: Arc::new(|k| Box::new(make_ds_adpls(k))),
        lambda_obj: Arc::new(|view: &LocalView| {
            let member = view.output_membership()?;
            Some(if member {
                BigRational::from_integer(view.node_weight().unwrap_or(1).into())
            } else {
                BigRational::zero()
            })
        }),
    }
}

pub fn make_tsp_apls() -> ObjectiveLiftedApls {
    ObjectiveLiftedApls {
        name: "tsp-apls".into(),
        problem_kind: ProblemKind::MetricTsp,
        sense: Sense::Min,
        alpha: AlphaSpec::of_int(2),
        universe: Arc::new(|cfg: &ConfigGraph| {
            metric_universe(cfg)?;
            if cfg.graph().n() < 3 {
                return Err(SchemeError::UniverseViolation("tours need n >= 3".into()));
            }
            Ok(())
        }),
        feasibility: Arc::new(HamiltonianFeasibility),
        adpls_factory: Arc::new(|k| Box::new(make_tsp_adpls(k))),
        lambda_obj: Arc::new(|view: &LocalView| {
            cycle_successor_weight(view).map(|w| BigRational::from_integer(w.into()))
        }),
    }
}

pub fn make_steiner_apls() -> ObjectiveLiftedApls {
    ObjectiveLiftedApls {
        name: "steiner-apls".into(),
        problem_kind: ProblemKind::SteinerTree,
        sense: Sense::Min,
        alpha: AlphaSpec::of_int(2),
        universe: Arc::new(|cfg: &ConfigGraph| {
            metric_universe(cfg)?;
            if cfg.graph().terminals().len() < 2 {
                return Err(SchemeError::UniverseViolation("need at least 2 terminals".into()));
            }
            Ok(())
        }),
        feasibility: Arc::new(TerminalTreeFeasibility),
        adpls_factory: Arc::new(|k| Box::new(make_steiner_adpls(k))),
        lambda_obj: Arc::new(|view: &LocalView| {
            tree_parent_weight(view).map(|w| BigRational::from_integer(w.into()))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::scheme::{prove, verify};

    fn single_edge(w0: u64, w1: u64) -> Graph {
        let mut b = GraphBuilder::new("p2");
        b.node_full(0, Some(w0), None, false, false, false, 0);
        b.node_full(1, Some(w1), None, false, false, false, 0);
        b.edge(0, 1);
        b.build().unwrap()
    }

    fn star(center_w: u64, leaf_w: u64, leaves: usize) -> Graph {
        let mut b = GraphBuilder::new("star");
        b.node_full(0, Some(center_w), None, false, false, false, 0);
        for i in 1..=leaves as u64 {
            b.node_full(i, Some(leaf_w), None, false, false, false, 0);
        }
        for i in 1..=leaves as u64 {
            b.edge(0, i);
        }
        b.build().unwrap()
    }

    fn k_n(n: usize, w: impl Fn(usize, usize) -> u64) -> Graph {
        let mut b = GraphBuilder::new(&format!("k{n}"));
        for i in 0..n {
            b.node(i as u64);
        }
        for i in 0..n {
            for j in i + 1..n {
                b.edge_w(i as u64, j as u64, w(i, j));
            }
        }
        b.build().unwrap()
    }

    #[test]
    fn vc_approx_single_edge() {
        let g = single_edge(3, 5);
        let t = vc_approx(&g);
        assert_eq!(t.cover, [0usize].into());
        assert_eq!(t.residual, vec![3, 2]);
        assert_eq!(t.charge, vec![Some(1), None]);
    }

    #[test]
    fn vc_approx_star_picks_center() {
        let g = star(1, 10, 3);
        let t = vc_approx(&g);
        assert_eq!(t.cover, [0usize].into());
    }

    #[test]
    fn vc_adpls_thresholds() {
        let g = single_edge(3, 5);
        let cfg = ConfigGraph::input_only(g);
        let s = make_vc_adpls(3);
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
        let s0 = make_vc_adpls(0);
        let l0 = prove(&s0, &cfg).unwrap();
        assert!(verify(&s0, &cfg, &l0).accept());
        // lambda total is 3; k = 7 is not reachable
        assert!(prove(&make_vc_adpls(7), &cfg).is_err());
    }

    #[test]
    fn ds_greedy_star_prices() {
        let g = star(1, 10, 3);
        let t = ds_greedy(&g);
        assert_eq!(t.set, [0usize].into());
        let quarter = BigRational::new(1.into(), 4.into());
        assert!(t.price.iter().all(|p| *p == quarter));
    }

    #[test]
    fn ds_greedy_single_edge() {
        let g = single_edge(1, 1);
        let t = ds_greedy(&g);
        assert_eq!(t.set, [0usize].into());
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(t.price, vec![half.clone(), half]);
    }

    #[test]
    fn ds_adpls_star() {
        let g = star(1, 10, 3);
        let cfg = ConfigGraph::input_only(g);
        let s = make_ds_adpls(1);
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
        // greedy total is 1 < 10
        assert!(prove(&make_ds_adpls(10), &cfg).is_err());
    }

    #[test]
    fn tsp_adpls_triangle() {
        let g = k_n(3, |_, _| 1);
        let cfg = ConfigGraph::input_only(g);
        // MST weight 2, doubled 4; optimal tour 3
        let s = make_tsp_adpls(3);
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
        let s4 = make_tsp_adpls(4);
        let l4 = prove(&s4, &cfg).unwrap();
        assert!(verify(&s4, &cfg, &l4).accept());
        assert!(prove(&make_tsp_adpls(5), &cfg).is_err());
    }

    #[test]
    fn tsp_adpls_collinear_k4() {
        let g = k_n(4, |i, j| (j - i) as u64);
        let cfg = ConfigGraph::input_only(g);
        // MST = three unit edges, doubled 6; optimal tour 6
        let s = make_tsp_adpls(6);
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn steiner_adpls_collinear_terminals() {
        let mut b = GraphBuilder::new("k4s");
        for i in 0..4u64 {
            b.node_full(i, None, None, i == 0 || i == 3, false, false, 0);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                b.edge_w(i as u64, j as u64, (j - i) as u64);
            }
        }
        let g = b.build().unwrap();
        let cfg = ConfigGraph::input_only(g);
        // terminal-induced MST is the direct 0-3 edge of weight 3
        let s = make_steiner_adpls(3);
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
        assert!(prove(&make_steiner_adpls(4), &cfg).is_err());
    }

    #[test]
    fn vc_apls_accepts_optimal_cover() {
        let g = single_edge(3, 5);
        let out = crate::config::encode_node_subset(&g, &[0usize].into());
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = make_vc_apls();
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn tsp_apls_accepts_optimal_tour() {
        let g = k_n(4, |i, j| (j - i) as u64);
        let (_, tour) = crate::oracles::tsp_opt(&g).unwrap();
        let out = crate::config::encode_edge_subset(&g, &tour);
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = make_tsp_apls();
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn steiner_apls_accepts_optimal_tree() {
        let mut b = GraphBuilder::new("k4s");
        for i in 0..4u64 {
            b.node_full(i, None, None, i == 0 || i == 3, false, false, 0);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                b.edge_w(i as u64, j as u64, (j - i) as u64);
            }
        }
        let g = b.build().unwrap();
        let (_, tree) = crate::oracles::steiner_opt(&g).unwrap();
        let out = crate::config::encode_edge_subset(&g, &tree);
        let cfg = ConfigGraph::with_output(g, out).unwrap();
        let s = make_steiner_apls();
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }
}
