//! Classified instance portfolios: per scheme, streams of candidate
//! configurations bucketed into yes/no/gap families by the exact oracles.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{
    encode_edge_subset, encode_edge_values, encode_node_subset, Assignment, ConfigGraph,
    ProblemKind,
};
use crate::generators as gen;
use crate::graph::Graph;
use crate::oracles::{self, Family};
use crate::registry::{make_scheme, SchemeParams};
use crate::scheme::Scheme;

pub struct Instance {
    pub scheme: Box<dyn Scheme>,
    pub cfg: ConfigGraph,
    pub family: Family,
    pub opt: i64,
}

/// Collects instances of the wanted family for a scheme, walking a
/// deterministic candidate stream until `count` are found.
pub fn collect(name: &str, family: Family, count: usize, seed: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut index = 0u64;
    let mut dry_runs = 0;
    while out.len() < count && dry_runs < 4000 {
        let mut produced = false;
        for inst in candidates(name, seed.wrapping_add(index * 7919)) {
            if inst.scheme.check_universe(&inst.cfg).is_err() {
                continue;
            }
            produced = true;
            if inst.family == family && out.len() < count {
                out.push(inst);
            }
        }
        if !produced {
            dry_runs += 1;
        }
        index += 1;
        if index > 6000 {
            break;
        }
    }
    assert!(
        out.len() >= count,
        "portfolio for {name} produced only {} of {count} {family:?} instances",
        out.len()
    );
    out
}

fn classified(scheme: Box<dyn Scheme>, cfg: ConfigGraph) -> Option<Instance> {
    let c = oracles::classify(scheme.as_ref(), &cfg).ok()?;
    Some(Instance { scheme, cfg, family: c.family, opt: c.opt_value })
}

fn params_k(k: i64) -> SchemeParams {
    SchemeParams { kappa: None, k: Some(k) }
}

fn params_kk(kappa: u64, k: i64) -> SchemeParams {
    SchemeParams { kappa: Some(kappa), k: Some(k) }
}

/// Candidate instances for one seed tick; several per tick.
fn candidates(name: &str, seed: u64) -> Vec<Instance> {
    let mut rng = gen::rng_for(seed);
    match name {
        "edge-cover-apls" | "b-matching-apls" => {
            odd_girth_candidates(name, &mut rng)
        }
        "edge-cover-bipartite-pls" | "b-matching-bipartite-pls" => {
            bipartite_pls_candidates(name, &mut rng)
        }
        "edge-cover-ring-pls" => ring_pls_candidates(&mut rng),
        "edge-cover-ring-dpls" => ring_dpls_candidates(&mut rng),
        "vertex-cover-apls" | "dominating-set-apls" => {
            node_set_apls_candidates(name, &mut rng)
        }
        "vertex-cover-adpls" | "dominating-set-adpls" => {
            node_set_adpls_candidates(name, &mut rng)
        }
        "tsp-apls" | "steiner-apls" => metric_apls_candidates(name, &mut rng),
        "tsp-adpls" | "steiner-adpls" => metric_adpls_candidates(name, &mut rng),
        "max-flow-pls" => flow_pls_candidates(&mut rng),
        "max-flow-dpls" => flow_dpls_candidates(&mut rng),
        "max-cut-apls" => maxcut_apls_candidates(&mut rng),
        "max-cut-adpls" => maxcut_adpls_candidates(&mut rng),
        "edge-cover-adpls" | "b-matching-adpls" => {
            odd_girth_adpls_candidates(name, &mut rng)
        }
        "edge-cover-bipartite-dpls" | "b-matching-bipartite-dpls" => {
            bipartite_dpls_candidates(name, &mut rng)
        }
        _ => Vec::new(),
    }
}

fn kappa_for(rng: &mut ChaCha8Rng) -> u64 {
    [1, 2, 3, 7][rng.random_range(0..4)]
}

/// Edge covers inflated by extra edges, matchings deflated by dropped edges.
fn mutated_edge_subsets(
    g: &Graph,
    optimal: &BTreeSet<usize>,
    rng: &mut ChaCha8Rng,
) -> Vec<BTreeSet<usize>> {
    let mut out = vec![optimal.clone()];
    let spare: Vec<usize> = (0..g.m()).filter(|e| !optimal.contains(e)).collect();
    for extra in 1..=spare.len().min(4) {
        let mut c = optimal.clone();
        let mut spare = spare.clone();
        for _ in 0..extra {
            let i = rng.random_range(0..spare.len());
            c.insert(spare.swap_remove(i));
        }
        out.push(c);
    }
    // dropping edges usually breaks feasibility; still worth probing
    if !optimal.is_empty() {
        let mut c = optimal.clone();
        let drop = *c.iter().nth(rng.random_range(0..c.len())).unwrap();
        c.remove(&drop);
        out.push(c);
    }
    out
}

fn odd_girth_candidates(name: &str, rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let kappa = kappa_for(rng);
    let n = rng.random_range(4..=9);
    let g = gen::odd_girth_at_least("og", n, kappa, rng);
    let params = SchemeParams { kappa: Some(kappa), k: None };
    let mut out = Vec::new();
    if name == "edge-cover-apls" {
        let Ok(cover) = oracles::min_edge_cover(&g) else {
            return out;
        };
        for c in mutated_edge_subsets(&g, &cover, rng) {
            let cfg = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &c)).unwrap();
            if let Ok(s) = make_scheme(name, params) {
                out.extend(classified(s, cfg));
            }
        }
    } else {
        let (_, mu) = oracles::max_b_matching(&g);
        let mut variants = vec![mu.clone()];
        if !mu.is_empty() {
            let mut m = mu.clone();
            let key = *m.keys().next().unwrap();
            m.remove(&key);
            variants.push(m);
        }
        variants.push(Default::default());
        for m in variants {
            let cfg = ConfigGraph::with_output(g.clone(), encode_edge_values(&g, &m)).unwrap();
            if let Ok(s) = make_scheme(name, params) {
                out.extend(classified(s, cfg));
            }
        }
    }
    out
}

fn bipartite_pls_candidates(name: &str, rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let left = rng.random_range(1..=5);
    let right = rng.random_range(1..=5);
    let b_max = (name == "b-matching-bipartite-pls").then(|| rng.random_range(1..=3));
    let g = gen::bipartite_connected("bip", left, right, rng.random_range(0..=3), b_max, rng);
    let mut out = Vec::new();
    if name == "edge-cover-bipartite-pls" {
        let Ok(cover) = oracles::min_edge_cover(&g) else {
            return out;
        };
        for c in mutated_edge_subsets(&g, &cover, rng) {
            let cfg = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &c)).unwrap();
            if let Ok(s) = make_scheme(name, SchemeParams::default()) {
                out.extend(classified(s, cfg));
            }
        }
    } else {
        let (_, mu) = oracles::max_b_matching(&g);
        let mut variants = vec![mu.clone(), Default::default()];
        if !mu.is_empty() {
            let mut m = mu.clone();
            let key = *m.keys().next().unwrap();
            m.remove(&key);
            variants.push(m);
        }
        for m in variants {
            let cfg = ConfigGraph::with_output(g.clone(), encode_edge_values(&g, &m)).unwrap();
            if let Ok(s) = make_scheme(name, SchemeParams::default()) {
                out.extend(classified(s, cfg));
            }
        }
    }
    out
}

/// Optimal cover of an odd ring with the loose node at a chosen position:
/// both edges at the loose node plus a perfect matching of the rest. Ring
/// edge i joins ring positions i and i+1.
fn ring_cover(n: usize, loose_at: usize) -> BTreeSet<usize> {
    let mut cover = BTreeSet::new();
    cover.insert((loose_at + n - 1) % n);
    cover.insert(loose_at);
    let mut p = (loose_at + 2) % n;
    for _ in 0..(n - 3) / 2 {
        cover.insert(p);
        p = (p + 2) % n;
    }
    cover
}

fn ring_pls_candidates(rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let n = [3, 5, 7, 9][rng.random_range(0..4)];
    let g = gen::ring("ring", n, rng);
    let mut out = Vec::new();
    let loose = rng.random_range(0..n);
    let mut covers = vec![ring_cover(n, loose)];
    // inflated cover: add one extra edge
    let mut big = covers[0].clone();
    if let Some(e) = (0..g.m()).find(|e| !big.contains(e)) {
        big.insert(e);
        covers.push(big);
    }
    for c in covers {
        let cfg = ConfigGraph::with_output(g.clone(), encode_edge_subset(&g, &c)).unwrap();
        if let Ok(s) = make_scheme("edge-cover-ring-pls", SchemeParams::default()) {
            out.extend(classified(s, cfg));
        }
    }
    out
}

fn ring_dpls_candidates(rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let n = [3, 5, 7, 9][rng.random_range(0..4)];
    let g = gen::ring("ring", n, rng);
    let opt = (n as i64 + 1) / 2;
    let mut out = Vec::new();
    for k in [0, opt - 1, opt, opt + 1, opt + 2] {
        let cfg = ConfigGraph::input_only(g.clone());
        if let Ok(s) = make_scheme("edge-cover-ring-dpls", params_k(k)) {
            out.extend(classified(s, cfg));
        }
    }
    out
}

fn mutated_node_subsets(
    g: &Graph,
    optimal: &BTreeSet<usize>,
    rng: &mut ChaCha8Rng,
) -> Vec<BTreeSet<usize>> {
    let mut out = vec![optimal.clone()];
    out.push(g.node_indices().collect());
    let mut grown = optimal.clone();
    for v in g.node_indices() {
        if !grown.contains(&v) && rng.random_bool(0.5) {
            grown.insert(v);
        }
    }
    out.push(grown);
    if !optimal.is_empty() {
        let mut shrunk = optimal.clone();
        let drop = *shrunk.iter().nth(rng.random_range(0..shrunk.len())).unwrap();
        shrunk.remove(&drop);
        out.push(shrunk);
    }
    out
}

fn node_set_apls_candidates(name: &str, rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let n = rng.random_range(3..=9);
    let g = gen::random_connected("nw", n, rng.random_range(0..=n), 10, true, rng);
    let kind = if name == "vertex-cover-apls" {
        ProblemKind::VertexCover
    } else {
        ProblemKind::DominatingSet
    };
    let Ok((_, witness)) = oracles::opt_value(kind, &g) else {
        return Vec::new();
    };
    let optimal = crate::config::decode_node_subset(
        &ConfigGraph::with_output(g.clone(), witness).unwrap(),
    )
    .unwrap();
    let mut out = Vec::new();
    for set in mutated_node_subsets(&g, &optimal, rng) {
        let cfg = ConfigGraph::with_output(g.clone(), encode_node_subset(&g, &set)).unwrap();
        if let Ok(s) = make_scheme(name, SchemeParams::default()) {
            out.extend(classified(s, cfg));
        }
    }
    out
}

fn node_set_adpls_candidates(name: &str, rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let n = rng.random_range(3..=9);
    let g = gen::random_connected("nw", n, rng.random_range(0..=n), 10, true, rng);
    let kind = if name == "vertex-cover-adpls" {
        ProblemKind::VertexCover
    } else {
        ProblemKind::DominatingSet
    };
    let Ok((opt, _)) = oracles::opt_value(kind, &g) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for k in [0, opt / 2, opt, opt + 1, 3 * opt + 2] {
        let cfg = ConfigGraph::input_only(g.clone());
        if let Ok(s) = make_scheme(name, params_k(k)) {
            out.extend(classified(s, cfg));
        }
    }
    out
}

fn metric_graph(name: &str, rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.random_range(4..=7);
    let g = gen::metric_complete("met", n, 3 * n as u64, rng);
    if name.starts_with("steiner") {
        let terms = rng.random_range(2..=n.min(4));
        gen::with_terminals(&g, terms, rng)
    } else {
        g
    }
}

fn metric_apls_candidates(name: &str, rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let g = metric_graph(name, rng);
    let kind = if name == "tsp-apls" { ProblemKind::MetricTsp } else { ProblemKind::SteinerTree };
    let Ok((_, witness)) = oracles::opt_value(kind, &g) else {
        return Vec::new();
    };
    let mut outputs: Vec<Assignment> = vec![witness];
    match kind {
        ProblemKind::MetricTsp => {
            // a deliberately bad tour: visit nodes in a random order
            let mut order: Vec<usize> = g.node_indices().collect();
            use rand::seq::SliceRandom;
            order.shuffle(rng);
            let mut tour = BTreeSet::new();
            let ok = (0..order.len()).all(|i| {
                g.edge_between(order[i], order[(i + 1) % order.len()])
                    .map(|e| tour.insert(e))
                    .is_some()
            });
            if ok {
                outputs.push(encode_edge_subset(&g, &tour));
            }
        }
        _ => {
            // a heavy feasible tree: the maximum spanning tree spans terminals
            let mut edges: Vec<usize> = (0..g.m()).collect();
            edges.sort_by_key(|&e| std::cmp::Reverse(g.edge_key(e)));
            let mut parent: Vec<usize> = g.node_indices().collect();
            fn find(p: &mut Vec<usize>, mut v: usize) -> usize {
                while p[v] != v {
                    p[v] = p[p[v]];
                    v = p[v];
                }
                v
            }
            let mut tree = BTreeSet::new();
            for e in edges {
                let (a, b) = (find(&mut parent, g.edge(e).u), find(&mut parent, g.edge(e).v));
                if a != b {
                    parent[a] = b;
                    tree.insert(e);
                }
            }
            outputs.push(encode_edge_subset(&g, &tree));
        }
    }
    let mut out = Vec::new();
    for output in outputs {
        let cfg = ConfigGraph::with_output(g.clone(), output).unwrap();
        if let Ok(s) = make_scheme(name, SchemeParams::default()) {
            out.extend(classified(s, cfg));
        }
    }
    out
}

fn metric_adpls_candidates(name: &str, rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let g = metric_graph(name, rng);
    let kind = if name == "tsp-adpls" { ProblemKind::MetricTsp } else { ProblemKind::SteinerTree };
    let Ok((opt, _)) = oracles::opt_value(kind, &g) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for k in [0, opt / 2, opt, opt + 1, 3 * opt] {
        let cfg = ConfigGraph::input_only(g.clone());
        if let Ok(s) = make_scheme(name, params_k(k)) {
            out.extend(classified(s, cfg));
        }
    }
    out
}

fn flow_pls_candidates(rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let n = rng.random_range(2..=8);
    let g = gen::flow_network("net", n, rng.random_range(1..=9), rng);
    let Ok(flow) = crate::schemes::flow_cut::max_flow(&g) else {
        return Vec::new();
    };
    let mut outputs = vec![encode_edge_values(&g, &flow.f)];
    if flow.value > 0 {
        outputs.push(encode_edge_values(&g, &Default::default()));
    }
    let mut out = Vec::new();
    for output in outputs {
        let cfg = ConfigGraph::with_output(g.clone(), output).unwrap();
        if let Ok(s) = make_scheme("max-flow-pls", SchemeParams::default()) {
            out.extend(classified(s, cfg));
        }
    }
    out
}

fn flow_dpls_candidates(rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let n = rng.random_range(2..=8);
    let g = gen::flow_network("net", n, rng.random_range(1..=9), rng);
    let Ok(flow) = crate::schemes::flow_cut::max_flow(&g) else {
        return Vec::new();
    };
    let opt = flow.value as i64;
    let mut out = Vec::new();
    for k in [0, opt - 1, opt, opt + 1, 2 * opt + 3] {
        let cfg = ConfigGraph::input_only(g.clone());
        if let Ok(s) = make_scheme("max-flow-dpls", params_k(k)) {
            out.extend(classified(s, cfg));
        }
    }
    out
}

fn edge_weighted_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.random_range(3..=9);
    let ids_seed = rng.random::<u64>();
    let mut inner = gen::rng_for(ids_seed);
    let base = gen::random_connected("cutg", n, rng.random_range(0..=n), 9, false, &mut inner);
    // re-issue the same structure with random edge weights
    let mut b = crate::graph::GraphBuilder::new("cutg").w_max(9);
    for v in base.node_indices() {
        b.node(base.id(v));
    }
    for e in base.edges() {
        b.edge_w(base.id(e.u), base.id(e.v), rng.random_range(1..=9));
    }
    b.build().unwrap()
}

fn maxcut_apls_candidates(rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let g = edge_weighted_graph(rng);
    let (_, best) = oracles::max_cut(&g);
    let mut sets = vec![best];
    // random sides probe the no and gap regions
    let side: BTreeSet<usize> = g.node_indices().filter(|_| rng.random_bool(0.5)).collect();
    if !side.is_empty() && side.len() < g.n() {
        sets.push(side);
    }
    sets.push([0usize].into());
    let mut out = Vec::new();
    for s in sets {
        let cfg = ConfigGraph::with_output(g.clone(), encode_node_subset(&g, &s)).unwrap();
        if let Ok(sch) = make_scheme("max-cut-apls", SchemeParams::default()) {
            out.extend(classified(sch, cfg));
        }
    }
    out
}

fn maxcut_adpls_candidates(rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let g = edge_weighted_graph(rng);
    let (opt, _) = oracles::max_cut(&g);
    let opt = opt as i64;
    let mut out = Vec::new();
    for k in [0, opt / 3, opt, opt + 1, 3 * opt] {
        let cfg = ConfigGraph::input_only(g.clone());
        if let Ok(s) = make_scheme("max-cut-adpls", params_k(k)) {
            out.extend(classified(s, cfg));
        }
    }
    out
}

fn odd_girth_adpls_candidates(name: &str, rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let kappa = kappa_for(rng);
    let n = rng.random_range(4..=9);
    let g = gen::odd_girth_at_least("og", n, kappa, rng);
    let kind = if name == "edge-cover-adpls" {
        ProblemKind::EdgeCover
    } else {
        ProblemKind::BMatching
    };
    let Ok((opt, _)) = oracles::opt_value(kind, &g) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for k in [0, opt / 2, opt, opt + 1, 3 * opt + 2] {
        let cfg = ConfigGraph::input_only(g.clone());
        if let Ok(s) = make_scheme(name, params_kk(kappa, k)) {
            out.extend(classified(s, cfg));
        }
    }
    out
}

fn bipartite_dpls_candidates(name: &str, rng: &mut ChaCha8Rng) -> Vec<Instance> {
    let left = rng.random_range(1..=5);
    let right = rng.random_range(1..=5);
    let b_max = (name == "b-matching-bipartite-dpls").then(|| rng.random_range(1..=3));
    let g = gen::bipartite_connected("bip", left, right, rng.random_range(0..=3), b_max, rng);
    let kind = if name == "edge-cover-bipartite-dpls" {
        ProblemKind::EdgeCover
    } else {
        ProblemKind::BMatching
    };
    let Ok((opt, _)) = oracles::opt_value(kind, &g) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for k in [0, opt - 1, opt, opt + 1, 2 * opt + 3] {
        let cfg = ConfigGraph::input_only(g.clone());
        if let Ok(s) = make_scheme(name, params_k(k)) {
            out.extend(classified(s, cfg));
        }
    }
    out
}
