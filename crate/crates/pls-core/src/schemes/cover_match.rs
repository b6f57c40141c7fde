//! Edge cover and b-matching scheme families: interchanging/alternating path
//! distances, the odd-girth approximation schemes, the bipartite exact
//! schemes, the odd-ring compositions, and the dual-objective decision
//! variants.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use crate::bits::{uint_width, BitReader, BitString};
use crate::certify::comparison::check_from_chunks;
use crate::certify::leader::check_le_color_codes;
use crate::certify::prove_certs;
use crate::config::{decode_edge_subset, decode_edge_values, ConfigGraph, ProblemKind};
use crate::graph::{bipartition, odd_girth, Graph};
use crate::lp::{
    DualObjectiveAdpls, LocalCol, LocalLp, LocalRow, LpCol, LpRow, PdProblem, PdScheme,
    StandardFormLp,
};
use crate::scheme::{
    LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind, Sense,
};
use crate::schemes::flow_cut::{max_flow, min_cut};

// ---------------------------------------------------------------------------
// Shortest interchanging / alternating simple paths
// ---------------------------------------------------------------------------

/// Shortest interchanging-path lengths for an edge cover: paths start with a
/// cover edge at a loose node and alternate strictly. Exhaustive simple-path
/// search; a layered walk relaxation supplies the unreachable set up front.
pub fn int_distances(g: &Graph, cover: &BTreeSet<usize>) -> Result<Vec<Option<usize>>, SchemeError> {
    let mut cover_deg = vec![0usize; g.n()];
    for &e in cover {
        cover_deg[g.edge(e).u] += 1;
        cover_deg[g.edge(e).v] += 1;
    }
    if cover_deg.iter().any(|&d| d == 0) {
        return Err(SchemeError::ProverRefused("edge set is not a cover".into()));
    }
    let loose: Vec<usize> = g.node_indices().filter(|&v| cover_deg[v] != 1).collect();
    // walk relaxation: odd steps must use cover edges (1-based indexing)
    let reachable = alternating_walk_reachable(g, &loose, |step, in_set| {
        if step % 2 == 1 {
            in_set
        } else {
            !in_set
        }
    }, cover);
    let mut best: Vec<Option<usize>> = vec![None; g.n()];
    for &v in &loose {
        best[v] = Some(0);
    }
    for &start in &loose {
        let mut on_path = vec![false; g.n()];
        on_path[start] = true;
        dfs_paths(g, start, 1, &mut on_path, &mut best, &reachable, &mut |step, e| {
            let in_cover = cover.contains(&e);
            if step % 2 == 1 {
                in_cover
            } else {
                !in_cover
            }
        });
    }
    Ok(best)
}

/// Shortest alternating-path lengths for a b-matching: paths start at an
/// available node; even-indexed edges must carry positive matching value.
pub fn alt_distances(
    g: &Graph,
    mu: &BTreeMap<usize, u64>,
) -> Result<Vec<Option<usize>>, SchemeError> {
    for v in g.node_indices() {
        let load: u64 = g.ports(v).iter().filter_map(|p| mu.get(&p.edge)).sum();
        if load > g.b_value(v).unwrap_or(1) {
            return Err(SchemeError::ProverRefused("mapping is not a b-matching".into()));
        }
    }
    let available: Vec<usize> = g
        .node_indices()
        .filter(|&v| {
            let load: u64 = g.ports(v).iter().filter_map(|p| mu.get(&p.edge)).sum();
            load < g.b_value(v).unwrap_or(1)
        })
        .collect();
    let matched_set: BTreeSet<usize> = mu.keys().copied().collect();
    let reachable = alternating_walk_reachable(g, &available, |step, in_set| {
        if step % 2 == 0 {
            in_set
        } else {
            true
        }
    }, &matched_set);
    let mut best: Vec<Option<usize>> = vec![None; g.n()];
    for &v in &available {
        best[v] = Some(0);
    }
    for &start in &available {
        let mut on_path = vec![false; g.n()];
        on_path[start] = true;
        dfs_paths(g, start, 1, &mut on_path, &mut best, &reachable, &mut |step, e| {
            if step % 2 == 0 {
                matched_set.contains(&e)
            } else {
                true
            }
        });
    }
    Ok(best)
}

/// Layered BFS over (node, parity of the next step): anything unreachable by
/// an alternating walk is unreachable by an alternating path.
fn alternating_walk_reachable(
    g: &Graph,
    starts: &[usize],
    step_ok: impl Fn(usize, bool) -> bool,
    set: &BTreeSet<usize>,
) -> Vec<bool> {
    let mut seen = vec![[false; 2]; g.n()];
    let mut queue = VecDeque::new();
    for &s in starts {
        // next step has index 1
        if !seen[s][1] {
            seen[s][1] = true;
            queue.push_back((s, 1usize));
        }
    }
    while let Some((v, parity)) = queue.pop_front() {
        for p in g.ports(v) {
            if step_ok(parity, set.contains(&p.edge)) {
                let np = (parity + 1) % 2;
                if !seen[p.neighbor][np] {
                    seen[p.neighbor][np] = true;
                    queue.push_back((p.neighbor, np));
                }
            }
        }
    }
    let mut reach = vec![false; g.n()];
    for v in g.node_indices() {
        reach[v] = seen[v][0] || seen[v][1];
    }
    for &s in starts {
        reach[s] = true;
    }
    reach
}

fn dfs_paths(
    g: &Graph,
    v: usize,
    step: usize,
    on_path: &mut Vec<bool>,
    best: &mut Vec<Option<usize>>,
    reachable: &[bool],
    edge_ok: &mut impl FnMut(usize, usize) -> bool,
) {
    if step > g.n() {
        return;
    }
    for pi in 0..g.ports(v).len() {
        let p = g.ports(v)[pi];
        if on_path[p.neighbor] || !reachable[p.neighbor] || !edge_ok(step, p.edge) {
            continue;
        }
        if best[p.neighbor].is_none_or(|b| step < b) {
            best[p.neighbor] = Some(step);
        }
        on_path[p.neighbor] = true;
        dfs_paths(g, p.neighbor, step + 1, on_path, best, reachable, edge_ok);
        on_path[p.neighbor] = false;
    }
}

/// True iff an inflating path exists: an interchanging path between two
/// distinct loose nodes whose first and last edges are both in the cover.
/// Minimum covers admit none.
pub fn inflating_path_exists(g: &Graph, cover: &BTreeSet<usize>) -> bool {
    let mut cover_deg = vec![0usize; g.n()];
    for &e in cover {
        cover_deg[g.edge(e).u] += 1;
        cover_deg[g.edge(e).v] += 1;
    }
    let loose: Vec<usize> = g.node_indices().filter(|&v| cover_deg[v] != 1).collect();
    fn dfs(
        g: &Graph,
        cover: &BTreeSet<usize>,
        cover_deg: &[usize],
        start: usize,
        v: usize,
        step: usize,
        on_path: &mut Vec<bool>,
    ) -> bool {
        for p in g.ports(v) {
            let in_cover = cover.contains(&p.edge);
            let want_cover = step % 2 == 1;
            if on_path[p.neighbor] || in_cover != want_cover {
                continue;
            }
            if in_cover && p.neighbor != start && cover_deg[p.neighbor] != 1 {
                return true;
            }
            on_path[p.neighbor] = true;
            if dfs(g, cover, cover_deg, start, p.neighbor, step + 1, on_path) {
                return true;
            }
            on_path[p.neighbor] = false;
        }
        false
    }
    loose.iter().any(|&u| {
        let mut on_path = vec![false; g.n()];
        on_path[u] = true;
        dfs(g, cover, &cover_deg, u, u, 1, &mut on_path)
    })
}

/// True iff an augmenting path exists: an odd-length alternating path
/// between two distinct available nodes. Maximum b-matchings admit none.
pub fn augmenting_path_exists(g: &Graph, mu: &BTreeMap<usize, u64>) -> bool {
    let load = |v: usize| -> u64 { g.ports(v).iter().filter_map(|p| mu.get(&p.edge)).sum() };
    let available: Vec<usize> = g
        .node_indices()
        .filter(|&v| load(v) < g.b_value(v).unwrap_or(1))
        .collect();
    fn dfs(
        g: &Graph,
        mu: &BTreeMap<usize, u64>,
        available: &[bool],
        start: usize,
        v: usize,
        step: usize,
        on_path: &mut Vec<bool>,
    ) -> bool {
        for p in g.ports(v) {
            let positive = mu.get(&p.edge).copied().unwrap_or(0) > 0;
            if on_path[p.neighbor] || (step % 2 == 0 && !positive) {
                continue;
            }
            if step % 2 == 1 && p.neighbor != start && available[p.neighbor] {
                return true;
            }
            on_path[p.neighbor] = true;
            if dfs(g, mu, available, start, p.neighbor, step + 1, on_path) {
                return true;
            }
            on_path[p.neighbor] = false;
        }
        false
    }
    let mut avail_flags = vec![false; g.n()];
    for &v in &available {
        avail_flags[v] = true;
    }
    available.iter().any(|&u| {
        let mut on_path = vec![false; g.n()];
        on_path[u] = true;
        dfs(g, mu, &avail_flags, u, u, 1, &mut on_path)
    })
}

// ---------------------------------------------------------------------------
// Dual rules
// ---------------------------------------------------------------------------

/// Thm-style dual numerators over kappa+1 for edge cover: int-distance buckets.
pub fn ec_dual_numerators(kappa: u64, int: &[Option<usize>]) -> Vec<u64> {
    int.iter()
        .map(|d| match d {
            Some(d) if (*d as u64) < kappa && d % 2 == 0 => *d as u64 / 2,
            Some(d) if (*d as u64) < kappa => kappa + 1 - (*d as u64 + 1) / 2,
            _ => kappa.div_ceil(2),
        })
        .collect()
}

/// Dual numerators over kappa for b-matching: alt-distance buckets.
pub fn bm_dual_numerators(kappa: u64, alt: &[Option<usize>]) -> Vec<u64> {
    alt.iter()
        .map(|d| match d {
            Some(d) if (*d as u64) < kappa && d % 2 == 0 => *d as u64 / 2,
            Some(d) if (*d as u64) < kappa => kappa - (*d as u64 - 1) / 2,
            _ => kappa.div_ceil(2),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Bipartite integral duals
// ---------------------------------------------------------------------------

/// Minimum b-weighted vertex cover of a bipartite graph via max flow; with
/// unit b this is the Konig cover.
pub fn bipartite_min_b_vertex_cover(g: &Graph) -> Result<BTreeSet<usize>, SchemeError> {
    let color = bipartition(g)
        .ok_or_else(|| SchemeError::UniverseViolation("graph is not bipartite".into()))?;
    let b = |v: usize| g.b_value(v).unwrap_or(1);
    let total_b: u64 = g.node_indices().map(b).sum();
    let inf = total_b + 1;

    let mut builder = crate::graph::GraphBuilder::new("bvc-network").directed(true).w_max(inf);
    let s_id = g.n() as u64 + 1_000_000;
    let t_id = s_id + 1;
    for v in g.node_indices() {
        builder.node_full(g.id(v), None, None, false, false, false, 0);
    }
    builder.node_full(s_id, None, None, false, true, false, 0);
    builder.node_full(t_id, None, None, false, false, true, 0);
    for v in g.node_indices() {
        if color[v] == 0 {
            builder.edge_full(s_id, g.id(v), None, Some(b(v)), 0);
        } else {
            builder.edge_full(g.id(v), t_id, None, Some(b(v)), 0);
        }
    }
    for e in g.edges() {
        let (u, v) = if color[e.u] == 0 { (e.u, e.v) } else { (e.v, e.u) };
        builder.edge_full(g.id(u), g.id(v), None, Some(inf), 0);
    }
    let network = builder
        .build()
        .map_err(|e| SchemeError::ProverRefused(format!("network build failed: {e}")))?;
    let flow = max_flow(&network)?;
    let cut = min_cut(&network, &flow)?;
    let mut cover = BTreeSet::new();
    for v in g.node_indices() {
        let nv = network.index_of(g.id(v)).unwrap();
        let in_s = cut.side[nv];
        if (color[v] == 0 && !in_s) || (color[v] == 1 && in_s) {
            cover.insert(v);
        }
    }
    Ok(cover)
}

/// Maximum independent set of a bipartite graph (complement of the cover).
pub fn bipartite_mis(g: &Graph) -> Result<BTreeSet<usize>, SchemeError> {
    let cover = bipartite_min_b_vertex_cover(g)?;
    Ok(g.node_indices().filter(|v| !cover.contains(v)).collect())
}

// ---------------------------------------------------------------------------
// Primal-dual problems
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
enum DualMode {
    /// odd-girth >= 2 kappa + 1, fractional duals over the given denominator
    OddGirth { kappa: u64 },
    /// bipartite, integral 0/1 duals
    Bipartite,
}

impl DualMode {
    fn denom(&self, cover: bool) -> u64 {
        match self {
            DualMode::OddGirth { kappa } => {
                if cover {
                    kappa + 1
                } else {
                    *kappa
                }
            }
            DualMode::Bipartite => 1,
        }
    }

    fn max_num(&self) -> u64 {
        match self {
            DualMode::OddGirth { kappa } => *kappa,
            DualMode::Bipartite => 1,
        }
    }

    fn width(&self) -> usize {
        uint_width(self.max_num())
    }

    fn beta(&self) -> BigRational {
        match self {
            DualMode::OddGirth { kappa } => {
                BigRational::new((*kappa as i64 + 1).into(), (*kappa as i64).into())
            }
            DualMode::Bipartite => BigRational::one(),
        }
    }

    fn check_universe(&self, g: &Graph) -> Result<(), SchemeError> {
        if g.directed() {
            return Err(SchemeError::UniverseViolation("undirected graphs only".into()));
        }
        match self {
            DualMode::OddGirth { kappa } => match odd_girth(g) {
                Some(og) if (og as u64) < 2 * kappa + 1 => Err(SchemeError::UniverseViolation(
                    format!("odd-girth {og} below {}", 2 * kappa + 1),
                )),
                _ => Ok(()),
            },
            DualMode::Bipartite => bipartition(g)
                .map(|_| ())
                .ok_or_else(|| SchemeError::UniverseViolation("graph is not bipartite".into())),
        }
    }
}

fn decode_numerator(bits: &BitString, width: usize, max_num: u64) -> Option<u64> {
    if bits.len() != width {
        return None;
    }
    let mut r = BitReader::new(bits);
    let num = r.read_uint(width)?;
    (num <= max_num).then_some(num)
}

/// Minimum edge cover: primal min sum x_e with per-node coverage rows.
pub struct EdgeCoverPd {
    mode: DualMode,
}

impl PdProblem for EdgeCoverPd {
    fn name(&self) -> String {
        match self.mode {
            DualMode::OddGirth { kappa } => format!("edge-cover-apls[kappa={kappa}]"),
            DualMode::Bipartite => "edge-cover-bipartite-pls".into(),
        }
    }

    fn scheme_kind(&self) -> SchemeKind {
        match self.mode {
            DualMode::OddGirth { .. } => SchemeKind::Apls,
            DualMode::Bipartite => SchemeKind::Pls,
        }
    }

    fn problem(&self) -> (ProblemKind, Sense) {
        (ProblemKind::EdgeCover, Sense::Min)
    }

    fn beta(&self) -> BigRational {
        self.mode.beta()
    }

    fn gamma(&self) -> BigRational {
        BigRational::one()
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        self.mode.check_universe(cfg.graph())
    }

    fn build_lp(
        &self,
        cfg: &ConfigGraph,
    ) -> Result<(StandardFormLp, Vec<BigRational>), SchemeError> {
        let g = cfg.graph();
        let cover = decode_edge_subset(cfg)
            .map_err(|e| SchemeError::ProverRefused(e.to_string()))?;
        let lp = StandardFormLp {
            sense: Sense::Min,
            rows: g
                .node_indices()
                .map(|v| LpRow {
                    node: v,
                    b: BigRational::one(),
                    entries: g.ports(v).iter().map(|p| (p.edge, BigRational::one())).collect(),
                })
                .collect(),
            cols: (0..g.m())
                .map(|e| LpCol { loc: crate::lp::ColRef::Edge(e), c: BigRational::one() })
                .collect(),
        };
        let x = (0..g.m())
            .map(|e| {
                if cover.contains(&e) {
                    BigRational::one()
                } else {
                    BigRational::from_integer(0.into())
                }
            })
            .collect();
        Ok((lp, x))
    }

    fn gen_duals(&self, cfg: &ConfigGraph) -> Result<Vec<BigRational>, SchemeError> {
        let g = cfg.graph();
        match self.mode {
            DualMode::OddGirth { kappa } => {
                let cover = decode_edge_subset(cfg)
                    .map_err(|e| SchemeError::ProverRefused(e.to_string()))?;
                let int = int_distances(g, &cover)?;
                Ok(ec_dual_numerators(kappa, &int)
                    .into_iter()
                    .map(|n| BigRational::new(n.into(), (kappa + 1).into()))
                    .collect())
            }
            DualMode::Bipartite => {
                let mis = bipartite_mis(g)?;
                Ok(g.node_indices()
                    .map(|v| {
                        if mis.contains(&v) {
                            BigRational::one()
                        } else {
                            BigRational::from_integer(0.into())
                        }
                    })
                    .collect())
            }
        }
    }

    fn encode_label(&self, _cfg: &ConfigGraph, _v: usize, ys: &[BigRational]) -> BitString {
        crate::lp::primal_dual::encode_numerator(&ys[0], self.mode.width(), self.mode.denom(true))
    }

    fn local_lp(&self, view: &LocalView) -> Option<LocalLp> {
        let marks = view.output_edge_marks()?;
        let denom = self.mode.denom(true);
        let y_of = |bits: &BitString| {
            decode_numerator(bits, self.mode.width(), self.mode.max_num())
                .map(|n| BigRational::new(n.into(), denom.into()))
        };
        let y_me = y_of(view.label()?)?;
        let one = BigRational::one();
        let zero = BigRational::from_integer(0.into());
        let x_of = |m: bool| if m { one.clone() } else { zero.clone() };
        let mut cols = Vec::with_capacity(view.degree());
        for p in 0..view.degree() {
            let y_nb = y_of(view.neighbor_label(p)?)?;
            cols.push(LocalCol {
                c: one.clone(),
                x: x_of(marks[p]),
                terms: vec![(one.clone(), y_me.clone()), (one.clone(), y_nb)],
            });
        }
        let rows = vec![LocalRow {
            b: one.clone(),
            terms: marks.iter().map(|&m| (one.clone(), x_of(m))).collect(),
            y: y_me,
        }];
        Some(LocalLp { sense: Sense::Min, rows, cols })
    }
}

/// Maximum b-matching: primal max sum x_e with per-node budget rows.
pub struct BMatchingPd {
    mode: DualMode,
}

impl PdProblem for BMatchingPd {
    fn name(&self) -> String {
        match self.mode {
            DualMode::OddGirth { kappa } => format!("b-matching-apls[kappa={kappa}]"),
            DualMode::Bipartite => "b-matching-bipartite-pls".into(),
        }
    }

    fn scheme_kind(&self) -> SchemeKind {
        match self.mode {
            DualMode::OddGirth { .. } => SchemeKind::Apls,
            DualMode::Bipartite => SchemeKind::Pls,
        }
    }

    fn problem(&self) -> (ProblemKind, Sense) {
        (ProblemKind::BMatching, Sense::Max)
    }

    fn beta(&self) -> BigRational {
        self.mode.beta()
    }

    fn gamma(&self) -> BigRational {
        BigRational::one()
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        self.mode.check_universe(cfg.graph())
    }

    fn build_lp(
        &self,
        cfg: &ConfigGraph,
    ) -> Result<(StandardFormLp, Vec<BigRational>), SchemeError> {
        let g = cfg.graph();
        let mu = decode_edge_values(cfg)
            .map_err(|e| SchemeError::ProverRefused(e.to_string()))?;
        let lp = StandardFormLp {
            sense: Sense::Max,
            rows: g
                .node_indices()
                .map(|v| LpRow {
                    node: v,
                    b: BigRational::from_integer(g.b_value(v).unwrap_or(1).into()),
                    entries: g.ports(v).iter().map(|p| (p.edge, BigRational::one())).collect(),
                })
                .collect(),
            cols: (0..g.m())
                .map(|e| LpCol { loc: crate::lp::ColRef::Edge(e), c: BigRational::one() })
                .collect(),
        };
        let x = (0..g.m())
            .map(|e| BigRational::from_integer(mu.get(&e).copied().unwrap_or(0).into()))
            .collect();
        Ok((lp, x))
    }

    fn gen_duals(&self, cfg: &ConfigGraph) -> Result<Vec<BigRational>, SchemeError> {
        let g = cfg.graph();
        match self.mode {
            DualMode::OddGirth { kappa } => {
                let mu = decode_edge_values(cfg)
                    .map_err(|e| SchemeError::ProverRefused(e.to_string()))?;
                let alt = alt_distances(g, &mu)?;
                Ok(bm_dual_numerators(kappa, &alt)
                    .into_iter()
                    .map(|n| BigRational::new(n.into(), kappa.into()))
                    .collect())
            }
            DualMode::Bipartite => {
                let cover = bipartite_min_b_vertex_cover(g)?;
                Ok(g.node_indices()
                    .map(|v| {
                        if cover.contains(&v) {
                            BigRational::one()
                        } else {
                            BigRational::from_integer(0.into())
                        }
                    })
                    .collect())
            }
        }
    }

    fn encode_label(&self, _cfg: &ConfigGraph, _v: usize, ys: &[BigRational]) -> BitString {
        crate::lp::primal_dual::encode_numerator(&ys[0], self.mode.width(), self.mode.denom(false))
    }

    fn local_lp(&self, view: &LocalView) -> Option<LocalLp> {
        let values = view.output_edge_values()?;
        let denom = self.mode.denom(false);
        let y_of = |bits: &BitString| {
            decode_numerator(bits, self.mode.width(), self.mode.max_num())
                .map(|n| BigRational::new(n.into(), denom.into()))
        };
        let y_me = y_of(view.label()?)?;
        let one = BigRational::one();
        let mut cols = Vec::with_capacity(view.degree());
        for p in 0..view.degree() {
            let y_nb = y_of(view.neighbor_label(p)?)?;
            cols.push(LocalCol {
                c: one.clone(),
                x: BigRational::from_integer(values[p].into()),
                terms: vec![(one.clone(), y_me.clone()), (one.clone(), y_nb)],
            });
        }
        let rows = vec![LocalRow {
            b: BigRational::from_integer(view.b_value().unwrap_or(1).into()),
            terms: values
                .iter()
                .map(|&x| (one.clone(), BigRational::from_integer(x.into())))
                .collect(),
            y: y_me,
        }];
        Some(LocalLp { sense: Sense::Max, rows, cols })
    }
}

pub fn make_edge_cover_apls(kappa: u64) -> PdScheme<EdgeCoverPd> {
    assert!(kappa >= 1);
    PdScheme::new(EdgeCoverPd { mode: DualMode::OddGirth { kappa } })
}

pub fn make_edge_cover_bipartite_pls() -> PdScheme<EdgeCoverPd> {
    PdScheme::new(EdgeCoverPd { mode: DualMode::Bipartite })
}

pub fn make_bmatching_apls(kappa: u64) -> PdScheme<BMatchingPd> {
    assert!(kappa >= 1);
    PdScheme::new(BMatchingPd { mode: DualMode::OddGirth { kappa } })
}

pub fn make_bmatching_bipartite_pls() -> PdScheme<BMatchingPd> {
    PdScheme::new(BMatchingPd { mode: DualMode::Bipartite })
}

// ---------------------------------------------------------------------------
// Odd-ring edge cover PLS: APLS labels + loose-node leader election, with
// kappa broadcast in the labels since nodes do not know n.
// ---------------------------------------------------------------------------

pub struct OddRingEcPls;

fn check_odd_ring(g: &Graph) -> Result<u64, SchemeError> {
    if g.directed() || g.n() % 2 == 0 || g.n() < 3 || g.node_indices().any(|v| g.deg(v) != 2) {
        return Err(SchemeError::UniverseViolation("not an odd ring".into()));
    }
    Ok((g.n() as u64 - 1) / 2)
}

struct RingChunks {
    kappa: u64,
    numerator: BitString,
    color: BitString,
}

fn split_ring_label(bits: &BitString) -> Option<RingChunks> {
    let mut r = BitReader::new(bits);
    let kappa = r.read_gamma()?;
    let width = uint_width(kappa);
    let mut numerator = BitString::new();
    for _ in 0..width {
        numerator.push_bit(r.read_bit()?);
    }
    let mut color = BitString::new();
    for _ in 0..2 {
        color.push_bit(r.read_bit()?);
    }
    r.at_end().then_some(RingChunks { kappa, numerator, color })
}

impl Scheme for OddRingEcPls {
    fn name(&self) -> String {
        "edge-cover-ring-pls".into()
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Pls
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        BigRational::one()
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((ProblemKind::EdgeCover, Sense::Min))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        check_odd_ring(cfg.graph()).map(|_| ())
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let g = cfg.graph();
        let kappa = check_odd_ring(g)?;
        let cover = decode_edge_subset(cfg)
            .map_err(|e| SchemeError::ProverRefused(e.to_string()))?;
        let mut cover_deg = vec![0usize; g.n()];
        for &e in &cover {
            cover_deg[g.edge(e).u] += 1;
            cover_deg[g.edge(e).v] += 1;
        }
        if cover_deg.iter().any(|&d| d == 0) {
            return Err(SchemeError::ProverRefused("not a cover".into()));
        }
        let loose: Vec<usize> = g.node_indices().filter(|&v| cover_deg[v] != 1).collect();
        let [leader] = loose.as_slice() else {
            return Err(SchemeError::ProverRefused(
                "optimal ring covers have exactly one loose node".into(),
            ));
        };
        let int = int_distances(g, &cover)?;
        let nums = ec_dual_numerators(kappa, &int);
        let colors = crate::certify::leader::color_ring(cfg, *leader);
        let mut labels = LabelAssignment::default();
        for v in g.node_indices() {
            let mut bs = BitString::new();
            bs.push_gamma(kappa);
            bs.push_uint(nums[v], uint_width(kappa));
            bs.extend(colors.get(g.id(v)).unwrap());
            labels.insert(g.id(v), bs);
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        if view.degree() != 2 {
            return false;
        }
        let own = match view.label().and_then(split_ring_label) {
            Some(c) => c,
            None => return false,
        };
        let nb: Vec<RingChunks> = match (0..2)
            .map(|p| view.neighbor_label(p).and_then(split_ring_label))
            .collect::<Option<Vec<_>>>()
        {
            Some(v) => v,
            None => return false,
        };
        if nb.iter().any(|c| c.kappa != own.kappa) {
            return false;
        }
        let kappa = own.kappa;
        // the APLS slice at this node, with duals over kappa + 1
        let marks = match view.output_edge_marks() {
            Some(m) => m,
            None => return false,
        };
        let y = |bits: &BitString| {
            decode_numerator(bits, uint_width(kappa), kappa)
                .map(|n| BigRational::new(n.into(), (kappa + 1).into()))
        };
        let y_me = match y(&own.numerator) {
            Some(y) => y,
            None => return false,
        };
        let one = BigRational::one();
        let zero = BigRational::from_integer(0.into());
        let x_of = |m: bool| if m { one.clone() } else { zero.clone() };
        let mut cols = Vec::new();
        for p in 0..2 {
            let y_nb = match y(&nb[p].numerator) {
                Some(y) => y,
                None => return false,
            };
            cols.push(LocalCol {
                c: one.clone(),
                x: x_of(marks[p]),
                terms: vec![(one.clone(), y_me.clone()), (one.clone(), y_nb)],
            });
        }
        let rows = vec![LocalRow {
            b: one.clone(),
            terms: marks.iter().map(|&m| (one.clone(), x_of(m))).collect(),
            y: y_me,
        }];
        let beta = BigRational::new((kappa as i64 + 1).into(), (kappa as i64).into());
        if !crate::lp::check_local(&LocalLp { sense: Sense::Min, rows, cols }, &beta, &one) {
            return false;
        }
        // leader election with leader = loose
        let loose = marks.iter().filter(|&&m| m).count() != 1;
        check_le_color_codes(&own.color, Some(&nb[0].color), Some(&nb[1].color), loose)
    }
}

// ---------------------------------------------------------------------------
// Odd-ring edge cover DPLS: ceil(n/2) >= k via an all-ones comparison.
// ---------------------------------------------------------------------------

pub struct OddRingEcDpls {
    k: i64,
}

impl OddRingEcDpls {
    /// With n odd, ceil(n/2) >= k iff n >= 2k - 1.
    fn comparison_k(&self) -> BigRational {
        BigRational::from_integer((2 * self.k - 1).into())
    }
}

impl Scheme for OddRingEcDpls {
    fn name(&self) -> String {
        format!("edge-cover-ring-dpls[k={}]", self.k)
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Dpls
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        BigRational::one()
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((ProblemKind::EdgeCover, Sense::Min))
    }

    fn threshold(&self) -> Option<i64> {
        Some(self.k)
    }

    fn with_threshold(&self, k: i64) -> Option<Box<dyn Scheme>> {
        Some(Box::new(OddRingEcDpls { k }))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        check_odd_ring(cfg.graph()).map(|_| ())
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let g = cfg.graph();
        check_odd_ring(g)?;
        if (g.n() as i64) < 2 * self.k - 1 {
            return Err(SchemeError::ProverRefused(format!(
                "cover number {} is below k = {}",
                g.n().div_ceil(2),
                self.k
            )));
        }
        let h: BTreeMap<_, _> = g
            .node_indices()
            .map(|v| (g.id(v), BigRational::one()))
            .collect();
        let certs = prove_certs(g, &h)?;
        let mut labels = LabelAssignment::default();
        for (id, c) in certs {
            labels.insert(id, c.encode());
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        if view.degree() != 2 {
            return false;
        }
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
            &BigRational::one(),
            &self.comparison_k(),
        )
    }
}

pub fn make_odd_ring_edge_cover_pls() -> OddRingEcPls {
    OddRingEcPls
}

pub fn make_odd_ring_edge_cover_dpls(k: i64) -> OddRingEcDpls {
    OddRingEcDpls { k }
}

// ---------------------------------------------------------------------------
// Decision variants from the dual objective (APLS -> ADPLS reduction)
// ---------------------------------------------------------------------------

pub fn make_edge_cover_adpls(kappa: u64, k: i64) -> DualObjectiveAdpls {
    let mode = DualMode::OddGirth { kappa };
    let width = mode.width();
    DualObjectiveAdpls {
        name: format!("edge-cover-adpls[kappa={kappa},k={k}]"),
        problem_kind: ProblemKind::EdgeCover,
        sense: Sense::Min,
        alpha: mode.beta(),
        k,
        universe: Arc::new(move |cfg: &ConfigGraph| mode.check_universe(cfg.graph())),
        gen_dual: Arc::new(move |cfg: &ConfigGraph| {
            let g = cfg.graph();
            let cover = crate::oracles::min_edge_cover(g)?;
            let int = int_distances(g, &cover)?;
            let nums = ec_dual_numerators(kappa, &int);
            Ok(g.node_indices()
                .map(|v| (g.id(v), BigRational::new(nums[v].into(), (kappa + 1).into())))
                .collect())
        }),
        encode_y: Arc::new(move |y| {
            crate::lp::primal_dual::encode_numerator(y, width, kappa + 1)
        }),
        decode_y: Arc::new(move |bits| {
            decode_numerator(bits, width, kappa)
                .map(|n| BigRational::new(n.into(), (kappa + 1).into()))
        }),
        edge_geq_one: false,
        b_of: Arc::new(|_| BigRational::one()),
        refit: Arc::new(move |k| Box::new(make_edge_cover_adpls(kappa, k))),
    }
}

pub fn make_edge_cover_bipartite_dpls(k: i64) -> DualObjectiveAdpls {
    DualObjectiveAdpls {
        name: format!("edge-cover-bipartite-dpls[k={k}]"),
        problem_kind: ProblemKind::EdgeCover,
        sense: Sense::Min,
        alpha: BigRational::one(),
        k,
        universe: Arc::new(|cfg: &ConfigGraph| {
            DualMode::Bipartite.check_universe(cfg.graph())
        }),
        gen_dual: Arc::new(|cfg: &ConfigGraph| {
            let g = cfg.graph();
            let mis = bipartite_mis(g)?;
            Ok(g.node_indices()
                .map(|v| {
                    let y = if mis.contains(&v) {
                        BigRational::one()
                    } else {
                        BigRational::from_integer(0.into())
                    };
                    (g.id(v), y)
                })
                .collect())
        }),
        encode_y: Arc::new(|y| crate::lp::primal_dual::encode_numerator(y, 1, 1)),
        decode_y: Arc::new(|bits| {
            decode_numerator(bits, 1, 1).map(|n| BigRational::from_integer(n.into()))
        }),
        edge_geq_one: false,
        b_of: Arc::new(|_| BigRational::one()),
        refit: Arc::new(|k| Box::new(make_edge_cover_bipartite_dpls(k))),
    }
}

pub fn make_bmatching_adpls(kappa: u64, k: i64) -> DualObjectiveAdpls {
    let mode = DualMode::OddGirth { kappa };
    let width = mode.width();
    DualObjectiveAdpls {
        name: format!("b-matching-adpls[kappa={kappa},k={k}]"),
        problem_kind: ProblemKind::BMatching,
        sense: Sense::Max,
        alpha: mode.beta(),
        k,
        universe: Arc::new(move |cfg: &ConfigGraph| mode.check_universe(cfg.graph())),
        gen_dual: Arc::new(move |cfg: &ConfigGraph| {
            let g = cfg.graph();
            let (_, mu) = crate::oracles::max_b_matching(g);
            let alt = alt_distances(g, &mu)?;
            let nums = bm_dual_numerators(kappa, &alt);
            Ok(g.node_indices()
                .map(|v| (g.id(v), BigRational::new(nums[v].into(), kappa.into())))
                .collect())
        }),
        encode_y: Arc::new(move |y| crate::lp::primal_dual::encode_numerator(y, width, kappa)),
        decode_y: Arc::new(move |bits| {
            decode_numerator(bits, width, kappa)
                .map(|n| BigRational::new(n.into(), kappa.into()))
        }),
        edge_geq_one: true,
        b_of: Arc::new(|view| BigRational::from_integer(view.b_value().unwrap_or(1).into())),
        refit: Arc::new(move |k| Box::new(make_bmatching_adpls(kappa, k))),
    }
}

pub fn make_bmatching_bipartite_dpls(k: i64) -> DualObjectiveAdpls {
    DualObjectiveAdpls {
        name: format!("b-matching-bipartite-dpls[k={k}]"),
        problem_kind: ProblemKind::BMatching,
        sense: Sense::Max,
        alpha: BigRational::one(),
        k,
        universe: Arc::new(|cfg: &ConfigGraph| {
            DualMode::Bipartite.check_universe(cfg.graph())
        }),
        gen_dual: Arc::new(|cfg: &ConfigGraph| {
            let g = cfg.graph();
            let cover = bipartite_min_b_vertex_cover(g)?;
            Ok(g.node_indices()
                .map(|v| {
                    let y = if cover.contains(&v) {
                        BigRational::one()
                    } else {
                        BigRational::from_integer(0.into())
                    };
                    (g.id(v), y)
                })
                .collect())
        }),
        encode_y: Arc::new(|y| crate::lp::primal_dual::encode_numerator(y, 1, 1)),
        decode_y: Arc::new(|bits| {
            decode_numerator(bits, 1, 1).map(|n| BigRational::from_integer(n.into()))
        }),
        edge_geq_one: true,
        b_of: Arc::new(|view| BigRational::from_integer(view.b_value().unwrap_or(1).into())),
        refit: Arc::new(|k| Box::new(make_bmatching_bipartite_dpls(k))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{encode_edge_subset, encode_edge_values};
    use crate::graph::GraphBuilder;
    use crate::scheme::{proof_size, prove, verify};

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

    fn path(n: usize) -> Graph {
        let mut b = GraphBuilder::new(&format!("path{n}"));
        for i in 0..n {
            b.node(i as u64);
        }
        for i in 0..n - 1 {
            b.edge(i as u64, i as u64 + 1);
        }
        b.build().unwrap()
    }

    #[test]
    fn int_distances_on_five_ring() {
        // C = {01, 23, 34}: loose node is 3
        let g = ring(5);
        let cover: BTreeSet<usize> = [0, 2, 3].into();
        let int = int_distances(&g, &cover).unwrap();
        assert_eq!(
            int,
            vec![Some(2), Some(2), Some(1), Some(0), Some(1)]
        );
    }

    #[test]
    fn int_distances_on_path3() {
        // P3 with both edges in the cover: ends are tight, middle is loose
        let g = path(3);
        let cover: BTreeSet<usize> = [0, 1].into();
        let int = int_distances(&g, &cover).unwrap();
        assert_eq!(int, vec![Some(1), Some(0), Some(1)]);
    }

    #[test]
    fn ec_duals_match_hand_trace() {
        let g = ring(5);
        let cover: BTreeSet<usize> = [0, 2, 3].into();
        let int = int_distances(&g, &cover).unwrap();
        let nums = ec_dual_numerators(2, &int);
        // y = (1/3, 1/3, 2/3, 0, 2/3)
        assert_eq!(nums, vec![1, 1, 2, 0, 2]);
    }

    #[test]
    fn edge_cover_apls_five_ring_kappa2() {
        let g = ring(5);
        let cover: BTreeSet<usize> = [0, 2, 3].into();
        let cfg = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &cover)).unwrap();
        let s = make_edge_cover_apls(2);
        let labels = prove(&s, &cfg).unwrap();
        assert_eq!(proof_size(&labels), 2);
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn edge_cover_apls_kappa1_is_one_bit() {
        let g = ring(5);
        let cover: BTreeSet<usize> = [0, 2, 3].into();
        let cfg = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &cover)).unwrap();
        let s = make_edge_cover_apls(1);
        let labels = prove(&s, &cfg).unwrap();
        assert_eq!(proof_size(&labels), 1);
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn alt_distances_on_triangle() {
        let g = ring(3);
        let mu: BTreeMap<usize, u64> = [(0usize, 1u64)].into();
        let alt = alt_distances(&g, &mu).unwrap();
        assert_eq!(alt, vec![Some(1), Some(1), Some(0)]);
    }

    #[test]
    fn alt_distances_on_path3() {
        let g = path(3);
        let mu: BTreeMap<usize, u64> = [(0usize, 1u64)].into();
        let alt = alt_distances(&g, &mu).unwrap();
        assert_eq!(alt, vec![Some(2), Some(1), Some(0)]);
    }

    #[test]
    fn bmatching_apls_triangle_kappa1() {
        let g = ring(3);
        let mu: BTreeMap<usize, u64> = [(0usize, 1u64)].into();
        let cfg = ConfigGraph::with_output(g.clone(), encode_edge_values(&g, &mu)).unwrap();
        let s = make_bmatching_apls(1);
        let labels = prove(&s, &cfg).unwrap();
        assert_eq!(proof_size(&labels), 1);
        assert!(verify(&s, &cfg, &labels).accept());
        // hand trace: y = (1, 1, 0)
        assert_eq!(labels.get(0).unwrap().bit(0), Some(true));
        assert_eq!(labels.get(1).unwrap().bit(0), Some(true));
        assert_eq!(labels.get(2).unwrap().bit(0), Some(false));
    }

    #[test]
    fn bipartite_ec_pls_single_edge() {
        let g = path(2);
        let cover: BTreeSet<usize> = [0].into();
        let cfg = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &cover)).unwrap();
        let s = make_edge_cover_bipartite_pls();
        let labels = prove(&s, &cfg).unwrap();
        assert_eq!(proof_size(&labels), 1);
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn bipartite_ec_pls_four_ring() {
        let g = ring(4);
        let cover: BTreeSet<usize> = [0, 2].into();
        let cfg = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &cover)).unwrap();
        let s = make_edge_cover_bipartite_pls();
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
        // a three-edge cover is suboptimal; no 1-bit labeling may accept
        let bad: BTreeSet<usize> = [0, 1, 2].into();
        let cfg_bad =
            ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &bad)).unwrap();
        for mask in 0..16u32 {
            let mut labels = LabelAssignment::default();
            for v in 0..4u64 {
                let mut bs = BitString::new();
                bs.push_bit(mask >> v & 1 == 1);
                labels.insert(v, bs);
            }
            assert!(!verify(&s, &cfg_bad, &labels).accept());
        }
    }

    #[test]
    fn bipartite_bmatching_pls_single_edge() {
        let g = path(2);
        let mu: BTreeMap<usize, u64> = [(0usize, 1u64)].into();
        let cfg = ConfigGraph::with_output(g.clone(), encode_edge_values(&g, &mu)).unwrap();
        let s = make_bmatching_bipartite_pls();
        let labels = prove(&s, &cfg).unwrap();
        assert_eq!(proof_size(&labels), 1);
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn ring_pls_accepts_optimal_cover_only() {
        let g = ring(7);
        // optimal: loose node 0, edges {01, 23, 45, 60}
        let cover: BTreeSet<usize> = [0, 2, 4, 6].into();
        let cfg = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &cover)).unwrap();
        let s = make_odd_ring_edge_cover_pls();
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());

        // a 5-edge cover has at least two loose nodes; the prover refuses
        let big: BTreeSet<usize> = [0, 1, 2, 4, 6].into();
        let cfg_big = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &big)).unwrap();
        assert!(prove(&s, &cfg_big).is_err());
        assert!(!verify(&s, &cfg_big, &labels).accept());
    }

    #[test]
    fn ring_pls_three_ring() {
        let g = ring(3);
        let cover: BTreeSet<usize> = [0, 1].into();
        let cfg = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &cover)).unwrap();
        let s = make_odd_ring_edge_cover_pls();
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn ring_dpls_thresholds() {
        let g = ring(7);
        let cfg = ConfigGraph::input_only(g);
        // ceil(7/2) = 4
        let s4 = make_odd_ring_edge_cover_dpls(4);
        let labels = prove(&s4, &cfg).unwrap();
        assert!(verify(&s4, &cfg, &labels).accept());
        assert!(prove(&make_odd_ring_edge_cover_dpls(5), &cfg).is_err());
        let s0 = make_odd_ring_edge_cover_dpls(0);
        let l0 = prove(&s0, &cfg).unwrap();
        assert!(verify(&s0, &cfg, &l0).accept());
    }

    #[test]
    fn edge_cover_adpls_five_ring() {
        let g = ring(5);
        let cfg = ConfigGraph::input_only(g);
        let s = make_edge_cover_adpls(2, 3);
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
        // alpha * dual objective = 3/2 * 2 = 3 < 4, so k = 4 is not provable
        assert!(prove(&make_edge_cover_adpls(2, 4), &cfg).is_err());
    }

    #[test]
    fn bmatching_adpls_five_ring() {
        let g = ring(5);
        let cfg = ConfigGraph::input_only(g.clone());
        // max matching on a 5-ring is 2
        let s = make_bmatching_adpls(2, 2);
        let labels = prove(&s, &cfg).unwrap();
        assert!(verify(&s, &cfg, &labels).accept());
    }

    #[test]
    fn bipartite_dpls_variants() {
        let g = ring(4);
        let cfg = ConfigGraph::input_only(g);
        // OPT edge cover = 2; OPT matching = 2
        let ec = make_edge_cover_bipartite_dpls(2);
        let labels = prove(&ec, &cfg).unwrap();
        assert!(verify(&ec, &cfg, &labels).accept());
        assert!(prove(&make_edge_cover_bipartite_dpls(3), &cfg).is_err());

        let bm = make_bmatching_bipartite_dpls(2);
        let labels = prove(&bm, &cfg).unwrap();
        assert!(verify(&bm, &cfg, &labels).accept());
        assert!(prove(&make_bmatching_bipartite_dpls(1), &cfg).is_err());
    }
}
