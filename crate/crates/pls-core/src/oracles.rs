//! Brute-force exact solvers and the instance classifier that define ground
//! truth for completeness and soundness testing. Everything here is
//! desk-scale by design: budgets are enforced, not worked around.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::config::{
    self, encode_edge_subset, encode_edge_values, encode_node_subset, Assignment, ConfigGraph,
    ProblemKind,
};
use crate::graph::Graph;
use crate::scheme::{Scheme, SchemeError, Sense};
use crate::schemes::flow_cut::max_flow;

/// Which family an instance falls into for a given scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Family {
    Yes,
    No,
    /// Between exact and alpha-far: the scheme owes nothing either way.
    Gap,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub family: Family,
    pub opt_value: i64,
    pub witness: Option<Assignment>,
}

fn budget(kind: ProblemKind, g: &Graph) -> Result<(), SchemeError> {
    let max_n = match kind {
        ProblemKind::MetricTsp | ProblemKind::SteinerTree => 9,
        ProblemKind::MaxFlow => usize::MAX,
        _ => 12,
    };
    if g.n() > max_n {
        return Err(SchemeError::BudgetExceeded(format!(
            "{} nodes exceeds the {:?} oracle budget",
            g.n(),
            kind
        )));
    }
    Ok(())
}

/// Exact optimum and one optimal output for `kind` on `g`.
pub fn opt_value(kind: ProblemKind, g: &Graph) -> Result<(i64, Assignment), SchemeError> {
    budget(kind, g)?;
    match kind {
        ProblemKind::EdgeCover => {
            let cover = min_edge_cover(g)?;
            Ok((cover.len() as i64, encode_edge_subset(g, &cover)))
        }
        ProblemKind::BMatching => {
            let (total, mu) = max_b_matching(g);
            Ok((total as i64, encode_edge_values(g, &mu)))
        }
        ProblemKind::VertexCover => {
            let (w, set) = best_node_subset(g, Sense::Min, |g, s| {
                g.edges().iter().all(|e| s.contains(&e.u) || s.contains(&e.v))
            });
            Ok((w as i64, encode_node_subset(g, &set)))
        }
        ProblemKind::DominatingSet => {
            let (w, set) = best_node_subset(g, Sense::Min, |g, s| {
                g.node_indices()
                    .all(|v| s.contains(&v) || g.ports(v).iter().any(|p| s.contains(&p.neighbor)))
            });
            Ok((w as i64, encode_node_subset(g, &set)))
        }
        ProblemKind::MetricTsp => {
            let (w, tour) = tsp_opt(g)?;
            Ok((w as i64, encode_edge_subset(g, &tour)))
        }
        ProblemKind::SteinerTree => {
            let (w, tree) = steiner_opt(g)?;
            Ok((w as i64, encode_edge_subset(g, &tree)))
        }
        ProblemKind::MaxFlow => {
            let flow = max_flow(g)?;
            Ok((flow.value as i64, encode_edge_values(g, &flow.f)))
        }
        ProblemKind::MaxCut => {
            let (w, side) = max_cut(g);
            Ok((w as i64, encode_node_subset(g, &side)))
        }
        ProblemKind::SpanningTree => {
            let t = crate::certify::mst::lex_mst(g);
            let w: i64 = t.iter().map(|&e| g.edge(e).weight.unwrap_or(1) as i64).sum();
            Ok((w, encode_edge_subset(g, &t)))
        }
        ProblemKind::LeaderElection => Err(SchemeError::BudgetExceeded(
            "leader election has no objective".into(),
        )),
    }
}

/// Assigns yes/no/gap per the exact family definitions for the scheme's kind.
pub fn classify(scheme: &dyn Scheme, cfg: &ConfigGraph) -> Result<Classification, SchemeError> {
    let (kind, sense) = match scheme.problem() {
        Some(p) => p,
        None => {
            return Err(SchemeError::BudgetExceeded(
                "scheme has no associated optimization problem".into(),
            ))
        }
    };
    let (opt, witness) = opt_value(kind, cfg.graph())?;
    let alpha = scheme.alpha(cfg);

    let family = if scheme.kind().is_decision() {
        let k = scheme
            .threshold()
            .ok_or_else(|| SchemeError::BudgetExceeded("decision scheme without k".into()))?;
        decision_family(opt, k, &alpha, sense)
    } else {
        // (A)PLS: classify the given output
        if !config::validate_output(kind, cfg).unwrap_or(false) {
            Family::No
        } else {
            let f = config::objective(kind, cfg)
                .map_err(|e| SchemeError::UniverseViolation(e.to_string()))?;
            output_family(f, opt, &alpha, sense)
        }
    };
    Ok(Classification { family, opt_value: opt, witness: Some(witness) })
}

fn ratio(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn decision_family(opt: i64, k: i64, alpha: &BigRational, sense: Sense) -> Family {
    match sense {
        Sense::Min => {
            if opt >= k {
                Family::Yes
            } else if ratio(opt) < ratio(k) / alpha {
                Family::No
            } else {
                Family::Gap
            }
        }
        Sense::Max => {
            if opt <= k {
                Family::Yes
            } else if ratio(opt) > ratio(k) * alpha {
                Family::No
            } else {
                Family::Gap
            }
        }
    }
}

fn output_family(f: i64, opt: i64, alpha: &BigRational, sense: Sense) -> Family {
    if f == opt {
        return Family::Yes;
    }
    let far = match sense {
        Sense::Min => ratio(f) > alpha * ratio(opt),
        Sense::Max => ratio(f) < ratio(opt) / alpha,
    };
    if far {
        Family::No
    } else {
        Family::Gap
    }
}

/// True when a yes-instance for a feasibility-style scheme.
pub fn alpha_is_one(alpha: &BigRational) -> bool {
    alpha.is_one()
}

// ---------------------------------------------------------------------------
// Exact solvers
// ---------------------------------------------------------------------------

/// Maximum matching by branching on the smallest unsaturated node.
pub fn max_matching(g: &Graph) -> BTreeSet<usize> {
    fn go(g: &Graph, v: usize, used: &mut Vec<bool>, picked: &mut Vec<usize>, best: &mut Vec<usize>) {
        if v == g.n() {
            if picked.len() > best.len() {
                *best = picked.clone();
            }
            return;
        }
        if used[v] {
            go(g, v + 1, used, picked, best);
            return;
        }
        // v stays unmatched
        go(g, v + 1, used, picked, best);
        // or v matches a later free neighbor
        for p in g.ports(v) {
            if p.neighbor > v && !used[p.neighbor] {
                used[v] = true;
                used[p.neighbor] = true;
                picked.push(p.edge);
                go(g, v + 1, used, picked, best);
                picked.pop();
                used[v] = false;
                used[p.neighbor] = false;
            }
        }
    }
    let mut best = Vec::new();
    go(g, 0, &mut vec![false; g.n()], &mut Vec::new(), &mut best);
    best.into_iter().collect()
}

/// Minimum edge cover via Gallai: a maximum matching extended by one edge per
/// unmatched node. Fails on a single-node graph, which has no cover.
pub fn min_edge_cover(g: &Graph) -> Result<BTreeSet<usize>, SchemeError> {
    if g.n() < 2 {
        return Err(SchemeError::UniverseViolation(
            "edge cover needs at least one edge".into(),
        ));
    }
    let matching = max_matching(g);
    let mut covered = vec![false; g.n()];
    for &e in &matching {
        covered[g.edge(e).u] = true;
        covered[g.edge(e).v] = true;
    }
    let mut cover = matching;
    for v in g.node_indices() {
        if !covered[v] {
            cover.insert(g.ports(v)[0].edge);
            covered[v] = true;
        }
    }
    Ok(cover)
}

/// Maximum b-matching by branch and bound over edges with residual budgets.
pub fn max_b_matching(g: &Graph) -> (u64, BTreeMap<usize, u64>) {
    fn bound(g: &Graph, e: usize, resid: &[u64]) -> u64 {
        (e..g.m())
            .map(|i| {
                let edge = g.edge(i);
                resid[edge.u].min(resid[edge.v])
            })
            .sum()
    }
    fn go(
        g: &Graph,
        e: usize,
        resid: &mut Vec<u64>,
        current: u64,
        chosen: &mut BTreeMap<usize, u64>,
        best: &mut (u64, BTreeMap<usize, u64>),
    ) {
        if e == g.m() {
            if current > best.0 {
                *best = (current, chosen.clone());
            }
            return;
        }
        // the initial (0, empty) pair is already a valid witness, so a
        // non-strict bound can prune
        if current + bound(g, e, resid) <= best.0 {
            return;
        }
        let edge = g.edge(e);
        let cap = resid[edge.u].min(resid[edge.v]).min(g.w_max());
        // try larger values first so the bound prunes early
        for val in (0..=cap).rev() {
            resid[edge.u] -= val;
            resid[edge.v] -= val;
            if val > 0 {
                chosen.insert(e, val);
            }
            go(g, e + 1, resid, current + val, chosen, best);
            chosen.remove(&e);
            resid[edge.u] += val;
            resid[edge.v] += val;
        }
    }
    let mut resid: Vec<u64> = g.node_indices().map(|v| g.b_value(v).unwrap_or(1)).collect();
    let mut best = (0, BTreeMap::new());
    go(g, 0, &mut resid, 0, &mut BTreeMap::new(), &mut best);
    best
}

/// Minimum/maximum weight node subset satisfying `feasible`, by enumeration.
fn best_node_subset(
    g: &Graph,
    sense: Sense,
    feasible: impl Fn(&Graph, &BTreeSet<usize>) -> bool,
) -> (u64, BTreeSet<usize>) {
    let n = g.n();
    let mut best: Option<(u64, BTreeSet<usize>)> = None;
    for mask in 0u32..(1 << n) {
        let set: BTreeSet<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if !feasible(g, &set) {
            continue;
        }
        let w: u64 = set.iter().map(|&v| g.node_weight(v).unwrap_or(1)).sum();
        let better = match (&best, sense) {
            (None, _) => true,
            (Some((bw, _)), Sense::Min) => w < *bw,
            (Some((bw, _)), Sense::Max) => w > *bw,
        };
        if better {
            best = Some((w, set));
        }
    }
    best.expect("whole node set is feasible for covered problems")
}

/// Exact TSP by enumerating tours from a fixed start node.
pub fn tsp_opt(g: &Graph) -> Result<(u64, BTreeSet<usize>), SchemeError> {
    let n = g.n();
    if n < 3 {
        return Err(SchemeError::UniverseViolation("tours need n >= 3".into()));
    }
    let mut others: Vec<usize> = (1..n).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    permute(&mut others, 0, &mut |perm| {
        // fix orientation to halve the work
        if perm[0] > perm[perm.len() - 1] {
            return;
        }
        let mut order = Vec::with_capacity(n);
        order.push(0);
        order.extend_from_slice(perm);
        let mut w = 0u64;
        for i in 0..n {
            let e = match g.edge_between(order[i], order[(i + 1) % n]) {
                Some(e) => e,
                None => return,
            };
            w += g.edge(e).weight.unwrap_or(1);
        }
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, order));
        }
    });
    let (w, order) = best.ok_or_else(|| {
        SchemeError::UniverseViolation("graph has no Hamiltonian cycle".into())
    })?;
    let mut tour = BTreeSet::new();
    for i in 0..n {
        tour.insert(g.edge_between(order[i], order[(i + 1) % n]).unwrap());
    }
    Ok((w, tour))
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Exact Steiner tree: over every subset of non-terminals, the lex-tie-broken
/// MST of the induced connected subgraph.
pub fn steiner_opt(g: &Graph) -> Result<(u64, BTreeSet<usize>), SchemeError> {
    let terms: BTreeSet<usize> = g.terminals().into_iter().collect();
    if terms.len() < 2 {
        return Err(SchemeError::UniverseViolation("need at least 2 terminals".into()));
    }
    let others: Vec<usize> = g.node_indices().filter(|v| !terms.contains(v)).collect();
    let mut best: Option<(u64, BTreeSet<usize>)> = None;
    for mask in 0u32..(1 << others.len()) {
        let mut nodes = terms.clone();
        for (i, &v) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                nodes.insert(v);
            }
        }
        if let Some((w, tree)) = crate::certify::mst::lex_mst_induced(g, &nodes) {
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, tree));
            }
        }
    }
    best.ok_or_else(|| SchemeError::UniverseViolation("terminals not connectable".into()))
}

/// Maximum weight cut by enumerating sides (node 0 fixed outside).
pub fn max_cut(g: &Graph) -> (u64, BTreeSet<usize>) {
    let n = g.n();
    let mut best = (0u64, BTreeSet::new());
    for mask in 1u32..(1 << (n - 1)) {
        let side: BTreeSet<usize> = (1..n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        let w: u64 = g
            .edges()
            .iter()
            .filter(|e| side.contains(&e.u) != side.contains(&e.v))
            .map(|e| e.weight.unwrap_or(1))
            .sum();
        if w > best.0 || best.1.is_empty() {
            best = (w, side);
        }
    }
    best
}

/// Minimum s-t cut value by enumerating all 2^(n-2) sides, for cross-checks.
pub fn min_cut_brute(g: &Graph) -> Result<u64, SchemeError> {
    let (s, t) = match (g.source(), g.sink()) {
        (Some(s), Some(t)) => (s, t),
        _ => return Err(SchemeError::UniverseViolation("need source and sink".into())),
    };
    if g.n() > 12 {
        return Err(SchemeError::BudgetExceeded("cut enumeration capped at n=12".into()));
    }
    let others: Vec<usize> = g.node_indices().filter(|&v| v != s && v != t).collect();
    let mut best = u64::MAX;
    for mask in 0u32..(1 << others.len()) {
        let mut side: BTreeSet<usize> = BTreeSet::from([s]);
        for (i, &v) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                side.insert(v);
            }
        }
        let w: u64 = g
            .edges()
            .iter()
            .filter(|e| side.contains(&e.u) && !side.contains(&e.v))
            .map(|e| e.capacity.unwrap_or(0))
            .sum();
        best = best.min(w);
    }
    Ok(best)
}

/// All spanning trees of `g`, for desk-scale MST cross-checks.
pub fn spanning_trees(g: &Graph) -> Vec<BTreeSet<usize>> {
    let n = g.n();
    let m = g.m();
    let mut out = Vec::new();
    if n == 0 || m < n - 1 {
        return out;
    }
    fn go(
        g: &Graph,
        next: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if chosen.len() == g.n() - 1 {
            let set: BTreeSet<usize> = chosen.iter().copied().collect();
            let nodes: BTreeSet<usize> = (0..g.n()).collect();
            if connected_via(g, &set, &nodes) {
                out.push(set);
            }
            return;
        }
        if next == g.m() || g.m() - next < g.n() - 1 - chosen.len() {
            return;
        }
        chosen.push(next);
        go(g, next + 1, chosen, out);
        chosen.pop();
        go(g, next + 1, chosen, out);
    }
    go(g, 0, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn connected_via(g: &Graph, edges: &BTreeSet<usize>, nodes: &BTreeSet<usize>) -> bool {
    let start = match nodes.iter().next() {
        Some(&v) => v,
        None => return false,
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for p in g.ports(v) {
            if edges.contains(&p.edge) && nodes.contains(&p.neighbor) && seen.insert(p.neighbor) {
                stack.push(p.neighbor);
            }
        }
    }
    nodes.iter().all(|v| seen.contains(v))
}

/// Signed magnitude of a rational, for harmonic-bound comparisons in tests.
pub fn rational_abs(r: &BigRational) -> BigRational {
    r.abs()
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
    fn edge_cover_five_ring_is_three() {
        let cover = min_edge_cover(&ring(5)).unwrap();
        assert_eq!(cover.len(), 3);
    }

    #[test]
    fn matching_triangle_is_one() {
        assert_eq!(max_matching(&ring(3)).len(), 1);
    }

    #[test]
    fn tsp_k3_is_three() {
        let (w, tour) = tsp_opt(&k_n(3, |_, _| 1)).unwrap();
        assert_eq!(w, 3);
        assert_eq!(tour.len(), 3);
    }

    #[test]
    fn tsp_collinear_k4() {
        // points 0,1,2,3 on a line; optimal tour weight 6
        let g = k_n(4, |i, j| (j - i) as u64);
        let (w, _) = tsp_opt(&g).unwrap();
        assert_eq!(w, 6);
    }

    #[test]
    fn steiner_collinear_k4() {
        let mut b = GraphBuilder::new("k4s");
        for i in 0..4u64 {
            if i == 0 || i == 3 {
                b.node_full(i, None, None, true, false, false, 0);
            } else {
                b.node(i);
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                b.edge_w(i as u64, j as u64, (j - i) as u64);
            }
        }
        let g = b.build().unwrap();
        let (w, _) = steiner_opt(&g).unwrap();
        assert_eq!(w, 3);
    }

    #[test]
    fn b_matching_triangle_unit() {
        let (total, _) = max_b_matching(&ring(3));
        assert_eq!(total, 1);
    }

    #[test]
    fn max_cut_triangle_is_two() {
        let (w, side) = max_cut(&ring(3));
        assert_eq!(w, 2);
        assert!(!side.is_empty() && side.len() < 3);
    }

    #[test]
    fn spanning_trees_of_four_ring() {
        assert_eq!(spanning_trees(&ring(4)).len(), 4);
    }
}
