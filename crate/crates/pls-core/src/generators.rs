//! Deterministic instance generators for the test harness and CLI. All
//! randomness flows through a caller-seeded ChaCha stream, so the same seed
//! reproduces the same instances byte for byte.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphBuilder};

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shuffled node ids, so structurally identical graphs still differ.
fn shuffled_ids(n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut ids: Vec<u64> = (0..n as u64).collect();
    ids.shuffle(rng);
    ids
}

/// Ring on n nodes with permuted ids.
pub fn ring(name: &str, n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let ids = shuffled_ids(n, rng);
    let mut b = GraphBuilder::new(name);
    for &id in &ids {
        b.node(id);
    }
    for i in 0..n {
        b.edge(ids[i], ids[(i + 1) % n]);
    }
    b.build().expect("rings are well formed")
}

/// Connected random graph: a random spanning tree plus extra random edges.
pub fn random_connected(
    name: &str,
    n: usize,
    extra_edges: usize,
    w_max: u64,
    node_weights: bool,
    rng: &mut ChaCha8Rng,
) -> Graph {
    let ids = shuffled_ids(n, rng);
    let mut b = GraphBuilder::new(name).w_max(w_max);
    for &id in &ids {
        let w = node_weights.then(|| rng.random_range(1..=w_max));
        b.node_full(id, w, None, false, false, false, 0);
    }
    let mut present = BTreeSet::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        present.insert((j.min(i), j.max(i)));
        b.edge(ids[i], ids[j]);
    }
    let mut budget = extra_edges;
    let mut guard = 0;
    while budget > 0 && guard < 10 * extra_edges + 50 {
        guard += 1;
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j || present.contains(&(i.min(j), i.max(j))) {
            continue;
        }
        present.insert((i.min(j), i.max(j)));
        b.edge(ids[i], ids[j]);
        budget -= 1;
    }
    b.build().expect("tree plus extras is connected")
}

/// Connected bipartite graph with optional b-values on the nodes.
pub fn bipartite_connected(
    name: &str,
    left: usize,
    right: usize,
    extra_edges: usize,
    b_max: Option<u64>,
    rng: &mut ChaCha8Rng,
) -> Graph {
    let n = left + right;
    let ids = shuffled_ids(n, rng);
    let mut builder = GraphBuilder::new(name);
    if let Some(bm) = b_max {
        builder = builder.w_max(bm);
    }
    for (i, &id) in ids.iter().enumerate() {
        let b = b_max.map(|bm| rng.random_range(1..=bm));
        let _ = i;
        builder.node_full(id, None, b, false, false, false, 0);
    }
    // spanning tree over an order that starts with one node per side, so an
    // earlier opposite-side anchor always exists
    let mut order: Vec<usize> = vec![0, left];
    let mut rest: Vec<usize> = (1..left).chain(left + 1..n).collect();
    rest.shuffle(rng);
    order.extend(rest);
    let mut present = BTreeSet::new();
    for pos in 1..n {
        let i = order[pos];
        let anchors: Vec<usize> = order[..pos]
            .iter()
            .copied()
            .filter(|&j| (j < left) != (i < left))
            .collect();
        let j = anchors[rng.random_range(0..anchors.len())];
        present.insert((j.min(i), j.max(i)));
        builder.edge(ids[i], ids[j]);
    }
    let mut budget = extra_edges;
    let mut guard = 0;
    while budget > 0 && guard < 10 * extra_edges + 50 {
        guard += 1;
        let i = rng.random_range(0..left);
        let j = left + rng.random_range(0..right);
        if present.contains(&(i.min(j), i.max(j))) {
            continue;
        }
        present.insert((i.min(j), i.max(j)));
        builder.edge(ids[i], ids[j]);
        budget -= 1;
    }
    builder.build().expect("bipartite generator keeps connectivity")
}

/// Graph of odd-girth at least 2 kappa + 1: either bipartite (infinite
/// odd-girth) or a long odd ring with pendant trees.
pub fn odd_girth_at_least(
    name: &str,
    n: usize,
    kappa: u64,
    rng: &mut ChaCha8Rng,
) -> Graph {
    let ring_len = 2 * kappa as usize + 1;
    if ring_len > n || rng.random_bool(0.4) {
        let left = 1 + rng.random_range(0..n.max(2) - 1);
        return bipartite_connected(name, left, n - left, rng.random_range(0..=n / 2), None, rng);
    }
    let ids = shuffled_ids(n, rng);
    let mut b = GraphBuilder::new(name);
    for &id in &ids {
        b.node(id);
    }
    for i in 0..ring_len {
        b.edge(ids[i], ids[(i + 1) % ring_len]);
    }
    for i in ring_len..n {
        let j = rng.random_range(0..i);
        b.edge(ids[i], ids[j]);
    }
    b.build().expect("odd ring plus trees is connected")
}

/// Complete metric graph from points on the integer line.
pub fn metric_complete(name: &str, n: usize, spread: u64, rng: &mut ChaCha8Rng) -> Graph {
    let ids = shuffled_ids(n, rng);
    let mut points = BTreeSet::new();
    while points.len() < n {
        points.insert(rng.random_range(0..=spread));
    }
    let points: Vec<u64> = points.into_iter().collect();
    let mut b = GraphBuilder::new(name);
    for &id in &ids {
        b.node(id);
    }
    for i in 0..n {
        for j in i + 1..n {
            b.edge_w(ids[i], ids[j], points[j] - points[i]);
        }
    }
    b.build().expect("complete graphs are connected")
}

/// Marks `count` random terminals on a copy of the graph.
pub fn with_terminals(g: &Graph, count: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut nodes: Vec<usize> = g.node_indices().collect();
    nodes.shuffle(rng);
    let chosen: BTreeSet<usize> = nodes.into_iter().take(count).collect();
    // rebuild preserving declaration order
    let mut builder = GraphBuilder::new(g.name()).w_max(g.w_max());
    if g.directed() {
        builder = builder.directed(true);
    }
    for v in g.node_indices() {
        builder.node_full(
            g.id(v),
            g.node_weight(v),
            g.b_value(v),
            chosen.contains(&v),
            g.source() == Some(v),
            g.sink() == Some(v),
            0,
        );
    }
    for e in g.edges() {
        builder.edge_full(g.id(e.u), g.id(e.v), e.weight, e.capacity, 0);
    }
    builder.build().expect("copy of a valid graph")
}

/// Layered random flow network from source 0 to sink n-1.
pub fn flow_network(name: &str, n: usize, w_max: u64, rng: &mut ChaCha8Rng) -> Graph {
    assert!(n >= 2);
    let ids = shuffled_ids(n, rng);
    let mut b = GraphBuilder::new(name).directed(true).w_max(w_max);
    for (i, &id) in ids.iter().enumerate() {
        b.node_full(id, None, None, false, i == 0, i == n - 1, 0);
    }
    // a path source -> ... -> sink guarantees connectivity
    for i in 0..n - 1 {
        b.edge_full(ids[i], ids[i + 1], None, Some(rng.random_range(0..=w_max)), 0);
    }
    let extras = rng.random_range(0..=n);
    let mut present: BTreeSet<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let mut guard = 0;
    let mut added = 0;
    while added < extras && guard < 10 * n + 50 {
        guard += 1;
        let i = rng.random_range(0..n - 1);
        let j = rng.random_range(i + 1..n);
        if present.contains(&(i, j)) {
            continue;
        }
        present.insert((i, j));
        b.edge_full(ids[i], ids[j], None, Some(rng.random_range(0..=w_max)), 0);
        added += 1;
    }
    b.build().expect("flow networks are connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bipartition, check_metric, odd_girth};

    #[test]
    fn generators_are_deterministic() {
        let g1 = random_connected("r", 8, 4, 5, true, &mut rng_for(42));
        let g2 = random_connected("r", 8, 4, 5, true, &mut rng_for(42));
        assert_eq!(g1.serialize(), g2.serialize());
    }

    #[test]
    fn bipartite_generator_is_bipartite() {
        for seed in 0..20 {
            let g = bipartite_connected("b", 4, 4, 3, Some(3), &mut rng_for(seed));
            assert!(bipartition(&g).is_some(), "seed {seed}");
        }
    }

    #[test]
    fn odd_girth_generator_respects_bound() {
        for seed in 0..20 {
            let g = odd_girth_at_least("og", 9, 2, &mut rng_for(seed));
            let og = odd_girth(&g);
            assert!(og.is_none() || og.unwrap() >= 5, "seed {seed}: {og:?}");
        }
    }

    #[test]
    fn metric_generator_is_metric() {
        for seed in 0..10 {
            let g = metric_complete("m", 6, 30, &mut rng_for(seed));
            assert_eq!(check_metric(&g), Ok(true), "seed {seed}");
        }
    }

    #[test]
    fn flow_generator_has_endpoints() {
        let g = flow_network("f", 6, 7, &mut rng_for(3));
        assert!(g.source().is_some() && g.sink().is_some());
    }
}
