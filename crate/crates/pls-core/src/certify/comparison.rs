//! The (h, k)-comparison scheme: certifies that the sum of a per-node value
//! over the whole graph is at least a threshold, with labels of
//! O(log n + H) bits.
//!
//! The certificate is a DFS spanning tree encoded as (root id, depth,
//! aggregate). DFS depth has the unique-predecessor property on undirected
//! graphs: every non-root node has exactly one neighbor at depth one less
//! (its parent), and its neighbors at depth one more are exactly its
//! children. The verifier enforces that shape directly, so parent and child
//! pointers never need to be stored and no subtree can be dropped or counted
//! twice. Rational h values are cleared to integers by a scale factor carried
//! in every label and checked for agreement across each edge; the sign
//! convention handles the companion (-h, -k) scheme for upper bounds.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::bits::{tc_width, uint_width, BitReader, BitString};
use crate::config::ConfigGraph;
use crate::graph::{Graph, NodeId};
use crate::scheme::{
    LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind,
};

/// Per-node comparison certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCert {
    pub root_id: NodeId,
    pub depth: u64,
    /// Common denominator clearing every h value to an integer.
    pub scale: u64,
    /// scale * (h of this node + sum over subtree children).
    pub agg: i128,
}

impl TreeCert {
    /// Layout: gamma(field width) | root id | depth | gamma(scale) | aggregate
    /// in two's complement spanning all remaining bits.
    pub fn encode(&self) -> BitString {
        let u = uint_width(self.root_id).max(uint_width(self.depth));
        let mut bs = BitString::new();
        bs.push_gamma(u as u64);
        bs.push_uint(self.root_id, u);
        bs.push_uint(self.depth, u);
        bs.push_gamma(self.scale);
        bs.push_int_tc(self.agg, tc_width(self.agg));
        bs
    }

    pub fn decode(bits: &BitString) -> Option<TreeCert> {
        let mut r = BitReader::new(bits);
        let u = r.read_gamma()? as usize;
        if u > 64 {
            return None;
        }
        let root_id = r.read_uint(u)?;
        let depth = r.read_uint(u)?;
        let scale = r.read_gamma()?;
        let w = r.remaining();
        if w == 0 || w > 127 {
            return None;
        }
        let agg = r.read_int_tc(w)?;
        Some(TreeCert { root_id, depth, scale, agg })
    }
}

/// Builds honest certificates: DFS tree rooted at the minimum id, aggregates
/// as exact scaled integers. Fails on overflow rather than wrapping.
pub fn prove_certs(
    g: &Graph,
    h: &BTreeMap<NodeId, BigRational>,
) -> Result<BTreeMap<NodeId, TreeCert>, SchemeError> {
    let n = g.n();
    let mut scale_big = BigInt::one();
    for v in g.node_indices() {
        let hv = h
            .get(&g.id(v))
            .ok_or_else(|| SchemeError::ProverRefused(format!("missing h at {}", g.id(v))))?;
        scale_big = scale_big.lcm(hv.denom());
    }
    let scale = scale_big
        .to_u64()
        .filter(|&s| s >= 1)
        .ok_or_else(|| SchemeError::ProverRefused("denominator scale overflow".into()))?;

    let root = g
        .node_indices()
        .min_by_key(|&v| g.id(v))
        .expect("graph is nonempty");
    // must be a true DFS tree: its depth layering has the unique-predecessor
    // property the verifier relies on
    let mut depth = vec![u64::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    fn dfs(
        g: &Graph,
        v: usize,
        d: u64,
        depth: &mut [u64],
        parent: &mut [usize],
        order: &mut Vec<usize>,
    ) {
        depth[v] = d;
        order.push(v);
        for p in g.ports(v) {
            if depth[p.neighbor] == u64::MAX {
                parent[p.neighbor] = v;
                dfs(g, p.neighbor, d + 1, depth, parent, order);
            }
        }
    }
    dfs(g, root, 0, &mut depth, &mut parent, &mut order);

    let mut agg = vec![0i128; n];
    for &v in order.iter().rev() {
        let scaled = &h[&g.id(v)] * BigRational::from_integer(scale.into());
        debug_assert!(scaled.is_integer());
        let own = scaled
            .to_integer()
            .to_i128()
            .ok_or_else(|| SchemeError::ProverRefused("aggregate overflow".into()))?;
        agg[v] = agg[v]
            .checked_add(own)
            .ok_or_else(|| SchemeError::ProverRefused("aggregate overflow".into()))?;
        if parent[v] != usize::MAX {
            agg[parent[v]] = agg[parent[v]]
                .checked_add(agg[v])
                .ok_or_else(|| SchemeError::ProverRefused("aggregate overflow".into()))?;
        }
    }

    Ok(g.node_indices()
        .map(|v| {
            (
                g.id(v),
                TreeCert {
                    root_id: g.id(root),
                    depth: depth[v],
                    scale,
                    agg: agg[v],
                },
            )
        })
        .collect())
}

/// Node-local certificate check: structure, agreement, and the aggregate
/// equation; at the root also the threshold.
pub fn check_cert(
    own: &TreeCert,
    neighbors: &[Option<TreeCert>],
    my_id: NodeId,
    my_h: &BigRational,
    k: &BigRational,
) -> bool {
    if own.scale == 0 {
        return false;
    }
    let mut certs = Vec::with_capacity(neighbors.len());
    for c in neighbors {
        match c {
            Some(c) => certs.push(c),
            None => return false,
        }
    }
    if certs
        .iter()
        .any(|c| c.root_id != own.root_id || c.scale != own.scale)
    {
        return false;
    }
    // depth 0 exactly at the node owning the root id
    if (own.depth == 0) != (own.root_id == my_id) {
        return false;
    }
    if own.depth > 0 {
        let below = certs.iter().filter(|c| c.depth + 1 == own.depth).count();
        if below != 1 {
            return false;
        }
    }
    let scale = BigRational::from_integer(own.scale.into());
    let scaled_h = my_h * &scale;
    if !scaled_h.is_integer() {
        return false;
    }
    let mut expect = BigInt::from(own.agg);
    expect -= scaled_h.to_integer();
    let child_sum: BigInt = certs
        .iter()
        .filter(|c| c.depth == own.depth + 1)
        .map(|c| BigInt::from(c.agg))
        .sum();
    if expect != child_sum {
        return false;
    }
    if own.depth == 0 {
        return BigRational::from_integer(own.agg.into()) >= k * scale;
    }
    true
}

/// Verify-time h evaluation: sees only the local view.
pub type ViewValue = Arc<dyn Fn(&LocalView) -> Option<BigRational> + Send + Sync>;

/// Decodes the comparison chunk of each neighbor label with `extract` and
/// runs the local check. Composite schemes use this after frame splitting.
pub fn check_from_chunks(
    own_chunk: &BitString,
    neighbor_chunks: &[Option<BitString>],
    my_id: NodeId,
    my_h: &BigRational,
    k: &BigRational,
) -> bool {
    let own = match TreeCert::decode(own_chunk) {
        Some(c) => c,
        None => return false,
    };
    let neighbors: Vec<Option<TreeCert>> = neighbor_chunks
        .iter()
        .map(|c| c.as_ref().and_then(TreeCert::decode))
        .collect();
    check_cert(&own, &neighbors, my_id, my_h, k)
}

/// Standalone (h, k)-comparison scheme. The h function must read only input
/// and output data from the view, never labels, so the prover can evaluate it
/// before labels exist. Upper-bound comparisons are expressed by negating
/// both h and k at construction.
pub struct ComparisonScheme {
    name: String,
    h: ViewValue,
    k: BigRational,
}

impl ComparisonScheme {
    pub fn new(name: &str, h: ViewValue, k: BigRational) -> Self {
        Self { name: name.to_string(), h, k }
    }

    fn h_map(&self, cfg: &ConfigGraph) -> Result<BTreeMap<NodeId, BigRational>, SchemeError> {
        let empty = LabelAssignment::default();
        let g = cfg.graph();
        g.node_indices()
            .map(|v| {
                let view = LocalView::build(cfg, v, &empty);
                (self.h)(&view)
                    .map(|val| (g.id(v), val))
                    .ok_or_else(|| {
                        SchemeError::ProverRefused(format!("h undefined at node {}", g.id(v)))
                    })
            })
            .collect()
    }
}

impl Scheme for ComparisonScheme {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Comparison
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        BigRational::one()
    }

    fn check_universe(&self, _cfg: &ConfigGraph) -> Result<(), SchemeError> {
        Ok(())
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let h = self.h_map(cfg)?;
        let total: BigRational = h.values().sum();
        if total < self.k {
            return Err(SchemeError::ProverRefused(format!(
                "sum {} is below threshold {}",
                total, self.k
            )));
        }
        let certs = prove_certs(cfg.graph(), &h)?;
        let mut labels = LabelAssignment::default();
        for (id, cert) in certs {
            labels.insert(id, cert.encode());
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let my_h = match (self.h)(view) {
            Some(v) => v,
            None => return false,
        };
        let own = match view.label() {
            Some(l) => l.clone(),
            None => return false,
        };
        let neighbors: Vec<Option<BitString>> = (0..view.degree())
            .map(|p| view.neighbor_label(p).cloned())
            .collect();
        check_from_chunks(&own, &neighbors, view.my_id(), &my_h, &self.k)
    }
}

/// Sum of h over all nodes, evaluated the same way the prover does.
pub fn sum_h(scheme_h: &ViewValue, cfg: &ConfigGraph) -> Option<BigRational> {
    let empty = LabelAssignment::default();
    let g = cfg.graph();
    let mut total = BigRational::zero();
    for v in g.node_indices() {
        total += scheme_h(&LocalView::build(cfg, v, &empty))?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::scheme::{prove, verify};
    use num_traits::FromPrimitive;

    fn path3() -> Graph {
        let mut b = GraphBuilder::new("p3");
        b.node(1).node(2).node(3);
        b.edge(1, 2).edge(2, 3);
        b.build().unwrap()
    }

    fn h_by_id(vals: &[(NodeId, i64)]) -> ViewValue {
        let map: BTreeMap<NodeId, i64> = vals.iter().copied().collect();
        Arc::new(move |view: &LocalView| {
            map.get(&view.my_id()).map(|&v| BigRational::from_i64(v).unwrap())
        })
    }

    #[test]
    fn path_sum_accepted() {
        let cfg = ConfigGraph::input_only(path3());
        let h = h_by_id(&[(1, 5), (2, -2), (3, 4)]);
        let s = ComparisonScheme::new("cmp", h, BigRational::from_i64(6).unwrap());
        let labels = prove(&s, &cfg).unwrap();
        // aggregates along the path: 7 at the root, then 2, then 4
        let c1 = TreeCert::decode(labels.get(1).unwrap()).unwrap();
        let c2 = TreeCert::decode(labels.get(2).unwrap()).unwrap();
        let c3 = TreeCert::decode(labels.get(3).unwrap()).unwrap();
        assert_eq!((c1.agg, c2.agg, c3.agg), (7, 2, 4));
        assert_eq!((c1.root_id, c1.depth), (1, 0));
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn prover_refuses_below_threshold() {
        let cfg = ConfigGraph::input_only(path3());
        let h = h_by_id(&[(1, 5), (2, -2), (3, 4)]);
        let s = ComparisonScheme::new("cmp", h, BigRational::from_i64(8).unwrap());
        assert!(matches!(prove(&s, &cfg), Err(SchemeError::ProverRefused(_))));
    }

    #[test]
    fn single_node_zero_threshold() {
        let mut b = GraphBuilder::new("one");
        b.node(0);
        let cfg = ConfigGraph::input_only(b.build().unwrap());
        let h = h_by_id(&[(0, 0)]);
        let s = ComparisonScheme::new("cmp", h, BigRational::zero());
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn corrupt_agg_rejected() {
        let cfg = ConfigGraph::input_only(path3());
        let h = h_by_id(&[(1, 5), (2, -2), (3, 4)]);
        let s = ComparisonScheme::new("cmp", h, BigRational::from_i64(6).unwrap());
        let labels = prove(&s, &cfg).unwrap();
        let mut cert = TreeCert::decode(labels.get(2).unwrap()).unwrap();
        cert.agg += 1;
        let mut bad = labels.clone();
        bad.insert(2, cert.encode());
        let verdict = verify(&s, &cfg, &bad);
        assert!(!verdict.accept());
    }
}
