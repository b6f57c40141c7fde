//! The eight acceptance criteria. Every tolerance is pinned here; each
//! criterion returns pass/fail plus detail lines for the report.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;

use rand::Rng;

use crate::bits::{tc_width, uint_width};
use crate::certify::comparison::ComparisonScheme;
use crate::certify::mst::{lex_mst, lex_mst_induced};
use crate::config::{ConfigGraph, ProblemKind};
use crate::generators as gen;
use crate::graph::NodeId;
use crate::lp::harmonic;
use crate::oracles::{self, Family};
use crate::registry::{make_scheme, SchemeParams, SCHEME_NAMES};
use crate::scheme::{proof_size, prove, verify, LocalView};
use crate::schemes::cover_match::{
    alt_distances, augmenting_path_exists, inflating_path_exists, int_distances,
    make_bmatching_apls, make_bmatching_bipartite_pls, make_edge_cover_apls,
    make_edge_cover_bipartite_pls,
};
use crate::schemes::flow_cut::{make_flow_pls, max_flow};
use crate::schemes::vca_based::{ds_greedy, vc_approx};
use crate::soundness::{exhaust_soundness, fuzz_soundness};
use crate::suite::portfolio::{collect, Instance};

use super::{CriterionResult, SuiteReport};

pub const CRITERION_COUNT: usize = 8;

type CheckFn = fn(u64) -> (bool, Vec<String>);

pub fn run_suite(seed: u64, filter: Option<&str>) -> SuiteReport {
    let criteria: [(usize, &str, CheckFn); CRITERION_COUNT] = [
        (1, "proof-size-table", c1_proof_sizes),
        (2, "completeness", c2_completeness),
        (3, "soundness-exhaustive", c3_exhaustive),
        (4, "soundness-fuzzed", c4_fuzzed),
        (5, "approximation-sandwiches", c5_sandwiches),
        (6, "duality-properties", c6_duality),
        (7, "structural-lemmas", c7_structural),
        (8, "reduction-round-trips", c8_reductions),
    ];
    let mut results = Vec::new();
    for (id, name, f) in criteria {
        if let Some(pat) = filter {
            if !name.contains(pat) {
                continue;
            }
        }
        let start = Instant::now();
        let (pass, details) = f(seed);
        results.push(CriterionResult {
            id,
            name: name.to_string(),
            pass,
            details,
            millis: start.elapsed().as_millis(),
        });
    }
    SuiteReport { seed, criteria: results }
}

fn yes_instances(name: &str, count: usize, seed: u64) -> Vec<Instance> {
    collect(name, Family::Yes, count, seed)
}

fn no_instances(name: &str, count: usize, seed: u64) -> Vec<Instance> {
    collect(name, Family::No, count, seed)
}

// ---------------------------------------------------------------------------
// Criterion 1: proof sizes, bit exact where the bound is exact
// ---------------------------------------------------------------------------

fn c1_proof_sizes(seed: u64) -> (bool, Vec<String>) {
    let mut details = Vec::new();
    let mut pass = true;
    let mut expect = |label: String, ok: bool, details: &mut Vec<String>| {
        if !ok {
            pass = false;
        }
        details.push(format!("{} {}", if ok { "ok " } else { "FAIL" }, label));
    };

    // exact widths for the dual-numerator schemes
    for kappa in [1u64, 2, 3, 7] {
        for (name, maker) in [("edge-cover-apls", 0), ("b-matching-apls", 1)] {
            let mut sizes = BTreeSet::new();
            let mut found = 0;
            let mut tick = 0u64;
            while found < 3 && tick < 600 {
                let mut rng = gen::rng_for(seed ^ (kappa * 131 + maker * 17 + tick));
                tick += 1;
                let n = rng.random_range(4..=9);
                let g = gen::odd_girth_at_least("og", n, kappa, &mut rng);
                let cfg = match maker {
                    0 => {
                        let Ok(c) = oracles::min_edge_cover(&g) else { continue };
                        ConfigGraph::with_output(
                            g.clone(),
                            crate::config::encode_edge_subset(&g, &c),
                        )
                        .unwrap()
                    }
                    _ => {
                        let (_, mu) = oracles::max_b_matching(&g);
                        ConfigGraph::with_output(
                            g.clone(),
                            crate::config::encode_edge_values(&g, &mu),
                        )
                        .unwrap()
                    }
                };
                let scheme = make_scheme(name, SchemeParams { kappa: Some(kappa), k: None })
                    .unwrap();
                let Ok(labels) = prove(scheme.as_ref(), &cfg) else { continue };
                sizes.insert(proof_size(&labels));
                found += 1;
            }
            let want = uint_width(kappa) ;
            expect(
                format!("{name} kappa={kappa}: sizes {sizes:?} == ceil(log2(kappa+1)) = {want}"),
                found >= 3 && sizes == BTreeSet::from([want]),
                &mut details,
            );
        }
    }

    // one-bit schemes
    for name in [
        "edge-cover-bipartite-pls",
        "b-matching-bipartite-pls",
        "max-flow-pls",
        "max-cut-apls",
    ] {
        let insts = yes_instances(name, 5, seed ^ 0x51);
        let mut sizes = BTreeSet::new();
        for inst in &insts {
            if let Ok(labels) = prove(inst.scheme.as_ref(), &inst.cfg) {
                sizes.insert(proof_size(&labels));
            }
        }
        expect(
            format!("{name}: sizes {sizes:?} == 1 bit"),
            sizes == BTreeSet::from([1]),
            &mut details,
        );
    }

    // comparison-based schemes against 8 + 3 ceil(log2 n) + H, where H is the
    // two's-complement width of the largest scaled per-node value
    let log2n = |n: usize| uint_width(n as u64 - 1).max(1);
    let mut worst_slack = i64::MAX;
    for tick in 0..20u64 {
        let mut rng = gen::rng_for(seed ^ (0x77 + tick));
        let n = rng.random_range(2..=10);
        let g = gen::random_connected("cmp", n, rng.random_range(0..=n), 10, false, &mut rng);
        let h_map: BTreeMap<NodeId, i64> = g
            .node_indices()
            .map(|v| (g.id(v), rng.random_range(-10..=10)))
            .collect();
        let total: i64 = h_map.values().sum();
        let h_capture = h_map.clone();
        let scheme = ComparisonScheme::new(
            "cmp",
            Arc::new(move |view: &LocalView| {
                h_capture.get(&view.my_id()).map(|&x| BigRational::from_integer(x.into()))
            }),
            BigRational::from_integer(total.into()),
        );
        let cfg = ConfigGraph::input_only(g.clone());
        let labels = prove(&scheme, &cfg).unwrap();
        let h_bits = h_map.values().map(|&x| tc_width(x as i128)).max().unwrap();
        let bound = 8 + 3 * log2n(g.n()) + h_bits;
        worst_slack = worst_slack.min(bound as i64 - proof_size(&labels) as i64);
        if proof_size(&labels) > bound {
            expect(
                format!(
                    "comparison n={n}: size {} over bound {bound}",
                    proof_size(&labels)
                ),
                false,
                &mut details,
            );
        }
    }
    expect(
        format!("comparison scheme sizes within 8 + 3 log n + H (min slack {worst_slack})"),
        worst_slack >= 0,
        &mut details,
    );

    for name in ["edge-cover-ring-dpls", "max-cut-adpls"] {
        let insts = yes_instances(name, 5, seed ^ 0x99);
        let mut ok = true;
        for inst in &insts {
            let Ok(labels) = prove(inst.scheme.as_ref(), &inst.cfg) else {
                ok = false;
                continue;
            };
            let g = inst.cfg.graph();
            let h_bits = match name {
                "edge-cover-ring-dpls" => 2,
                _ => g
                    .node_indices()
                    .map(|v| {
                        let s: u64 =
                            g.ports(v).iter().map(|p| g.edge(p.edge).weight.unwrap_or(1)).sum();
                        tc_width(-(s as i128))
                    })
                    .max()
                    .unwrap(),
            };
            let bound = 8 + 3 * log2n(g.n()) + h_bits;
            if proof_size(&labels) > bound {
                ok = false;
            }
        }
        expect(format!("{name}: sizes within 8 + 3 log n + H"), ok, &mut details);
    }

    (pass, details)
}

// ---------------------------------------------------------------------------
// Criterion 2: completeness on 50 oracle-certified yes-instances per scheme
// ---------------------------------------------------------------------------

fn c2_completeness(seed: u64) -> (bool, Vec<String>) {
    let mut details = Vec::new();
    let mut pass = true;
    for name in SCHEME_NAMES {
        let insts = yes_instances(name, 50, seed ^ 0xc2);
        let mut failures = 0;
        for inst in &insts {
            match prove(inst.scheme.as_ref(), &inst.cfg) {
                Ok(labels) => {
                    if !verify(inst.scheme.as_ref(), &inst.cfg, &labels).accept() {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
        if failures > 0 {
            pass = false;
        }
        details.push(format!(
            "{} {name}: {}/{} yes-instances accepted",
            if failures == 0 { "ok " } else { "FAIL" },
            insts.len() - failures,
            insts.len()
        ));
    }
    (pass, details)
}

// ---------------------------------------------------------------------------
// Criterion 3: exhaustive soundness where n * honest-bits <= 20
// ---------------------------------------------------------------------------

fn c3_exhaustive(seed: u64) -> (bool, Vec<String>) {
    let mut details = Vec::new();
    let mut pass = true;
    let names = [
        "edge-cover-apls",
        "b-matching-apls",
        "edge-cover-bipartite-pls",
        "b-matching-bipartite-pls",
        "max-flow-pls",
        "max-cut-apls",
        "edge-cover-ring-pls",
    ];
    for name in names {
        let candidates = no_instances(name, 60, seed ^ 0xc3);
        let mut done = 0;
        let mut accepts_total = 0u64;
        for inst in &candidates {
            if done >= 20 {
                break;
            }
            // honest label length from the yes-sibling of the same graph
            let Some((kind, _)) = inst.scheme.problem() else { continue };
            let Ok((_, witness)) = oracles::opt_value(kind, inst.cfg.graph()) else {
                continue;
            };
            let Ok(donor_cfg) = ConfigGraph::with_output(inst.cfg.graph().clone(), witness)
            else {
                continue;
            };
            let Ok(donor) = inst.scheme.prove(&donor_cfg) else { continue };
            let b = proof_size(&donor).max(1);
            let n = inst.cfg.graph().n();
            if n * b > 20 || inst.cfg.graph().m() > 14 {
                continue;
            }
            match exhaust_soundness(inst.scheme.as_ref(), &inst.cfg, b) {
                Ok(report) => {
                    accepts_total += report.accepts;
                    done += 1;
                }
                Err(_) => continue,
            }
        }
        let ok = done >= 20 && accepts_total == 0;
        if !ok {
            pass = false;
        }
        details.push(format!(
            "{} {name}: {done} no-instances exhausted, {accepts_total} accepting assignments",
            if ok { "ok " } else { "FAIL" }
        ));
    }
    (pass, details)
}

// ---------------------------------------------------------------------------
// Criterion 4: fuzzed soundness, 10^4 random plus structured per no-instance
// ---------------------------------------------------------------------------

fn c4_fuzzed(seed: u64) -> (bool, Vec<String>) {
    let mut details = Vec::new();
    let mut pass = true;
    for name in SCHEME_NAMES {
        let insts = no_instances(name, 3, seed ^ 0xc4);
        let mut accepts = 0u64;
        let mut trials = 0u64;
        for (i, inst) in insts.iter().enumerate() {
            let max_bits = donor_bits(inst).unwrap_or(8).clamp(4, 30);
            let report = fuzz_soundness(
                inst.scheme.as_ref(),
                &inst.cfg,
                10_000,
                max_bits,
                seed ^ (0x4000 + i as u64),
            );
            accepts += report.accepts;
            trials += report.trials;
        }
        let ok = accepts == 0;
        if !ok {
            pass = false;
        }
        details.push(format!(
            "{} {name}: {trials} adversarial labelings, {accepts} accepted",
            if ok { "ok " } else { "FAIL" }
        ));
    }
    (pass, details)
}

fn donor_bits(inst: &Instance) -> Option<usize> {
    let (kind, _) = inst.scheme.problem()?;
    if inst.scheme.kind().is_decision() {
        let refit = inst.scheme.with_threshold(inst.opt)?;
        let labels = refit.prove(&inst.cfg).ok()?;
        Some(proof_size(&labels))
    } else {
        let (_, witness) = oracles::opt_value(kind, inst.cfg.graph()).ok()?;
        let donor = ConfigGraph::with_output(inst.cfg.graph().clone(), witness).ok()?;
        let labels = inst.scheme.prove(&donor).ok()?;
        Some(proof_size(&labels))
    }
}

// ---------------------------------------------------------------------------
// Criterion 5: approximation sandwiches against brute-force oracles
// ---------------------------------------------------------------------------

fn c5_sandwiches(seed: u64) -> (bool, Vec<String>) {
    let mut details = Vec::new();
    let mut pass = true;
    let mut expect = |label: String, violations: usize, details: &mut Vec<String>| {
        if violations > 0 {
            pass = false;
        }
        details.push(format!(
            "{} {label}: {violations} violations over 200 instances",
            if violations == 0 { "ok " } else { "FAIL" }
        ));
    };

    let two = BigRational::from_integer(2.into());

    // vertex cover: OPT <= w(U) <= 2 OPT
    let mut viol = 0;
    for i in 0..200u64 {
        let mut rng = gen::rng_for(seed ^ (0x500 + i));
        let n = rng.random_range(2..=9);
        let g = gen::random_connected("vc", n, rng.random_range(0..=n), 10, true, &mut rng);
        let (opt, _) = oracles::opt_value(ProblemKind::VertexCover, &g).unwrap();
        let t = vc_approx(&g);
        let w: u64 = t.cover.iter().map(|&v| g.node_weight(v).unwrap_or(1)).sum();
        if (w as i64) < opt || BigRational::from_integer((w as i64).into()) > &two * BigRational::from_integer(opt.into()) {
            viol += 1;
        }
    }
    expect("vertex cover ratio <= 2".into(), viol, &mut details);

    // dominating set: OPT <= sum d = w(U) <= H_n OPT
    let mut viol = 0;
    for i in 0..200u64 {
        let mut rng = gen::rng_for(seed ^ (0x510 + i));
        let n = rng.random_range(2..=9);
        let g = gen::random_connected("ds", n, rng.random_range(0..=n), 10, true, &mut rng);
        let (opt, _) = oracles::opt_value(ProblemKind::DominatingSet, &g).unwrap();
        let t = ds_greedy(&g);
        let total: BigRational = t.price.iter().sum();
        let w: u64 = t.set.iter().map(|&v| g.node_weight(v).unwrap_or(1)).sum();
        if total != BigRational::from_integer((w as i64).into())
            || total < BigRational::from_integer(opt.into())
            || total > harmonic(g.n()) * BigRational::from_integer(opt.into())
        {
            viol += 1;
        }
    }
    expect("dominating set ratio <= H_n".into(), viol, &mut details);

    // metric TSP: OPT <= 2 w(MST) <= 2 OPT
    let mut viol = 0;
    for i in 0..200u64 {
        let mut rng = gen::rng_for(seed ^ (0x520 + i));
        let n = rng.random_range(3..=7);
        let g = gen::metric_complete("tsp", n, 3 * n as u64, &mut rng);
        let (opt, _) = oracles::opt_value(ProblemKind::MetricTsp, &g).unwrap();
        let mst: i64 = lex_mst(&g)
            .iter()
            .map(|&e| g.edge(e).weight.unwrap_or(1) as i64)
            .sum();
        if opt > 2 * mst || 2 * mst > 2 * opt {
            viol += 1;
        }
    }
    expect("tsp: OPT <= 2 w(MST) <= 2 OPT".into(), viol, &mut details);

    // Steiner: OPT <= w(T_S) <= 2 OPT
    let mut viol = 0;
    for i in 0..200u64 {
        let mut rng = gen::rng_for(seed ^ (0x530 + i));
        let n = rng.random_range(3..=7);
        let g0 = gen::metric_complete("st", n, 3 * n as u64, &mut rng);
        let terms = rng.random_range(2..=n.min(5));
        let g = gen::with_terminals(&g0, terms, &mut rng);
        let (opt, _) = oracles::opt_value(ProblemKind::SteinerTree, &g).unwrap();
        let term_set: BTreeSet<usize> = g.terminals().into_iter().collect();
        let (ts, _) = lex_mst_induced(&g, &term_set).unwrap();
        if (ts as i64) < opt || (ts as i64) > 2 * opt {
            viol += 1;
        }
    }
    expect("steiner: OPT <= w(T_S) <= 2 OPT".into(), viol, &mut details);

    // max-flow equals min-cut, against cut enumeration
    let mut viol = 0;
    for i in 0..200u64 {
        let mut rng = gen::rng_for(seed ^ (0x540 + i));
        let n = rng.random_range(2..=8);
        let g = gen::flow_network("fl", n, rng.random_range(1..=9), &mut rng);
        let flow = max_flow(&g).unwrap();
        let cut = oracles::min_cut_brute(&g).unwrap();
        if flow.value != cut {
            viol += 1;
        }
    }
    expect("max-flow = min-cut".into(), viol, &mut details);

    // optimal cuts carry at least half the total weight
    let mut viol = 0;
    for i in 0..200u64 {
        let mut rng = gen::rng_for(seed ^ (0x550 + i));
        let n = rng.random_range(2..=9);
        let g = gen::random_connected("mc", n, rng.random_range(0..=n), 9, false, &mut rng);
        let (opt, _) = oracles::max_cut(&g);
        let total: u64 = g.edges().iter().map(|e| e.weight.unwrap_or(1)).sum();
        if 2 * opt < total {
            viol += 1;
        }
    }
    expect("max cut >= half total weight".into(), viol, &mut details);

    (pass, details)
}

// ---------------------------------------------------------------------------
// Criterion 6: weak duality and the relaxed-slackness objective bound
// ---------------------------------------------------------------------------

fn c6_duality(seed: u64) -> (bool, Vec<String>) {
    use crate::lp::PdProblem;
    let mut details = Vec::new();
    let mut pass = true;

    fn check_pair<P: PdProblem>(
        pd: &P,
        cfg: &ConfigGraph,
        details: &mut Vec<String>,
    ) -> bool {
        let Ok((lp, x)) = pd.build_lp(cfg) else {
            details.push(format!("FAIL {}: lp build failed", pd.name()));
            return false;
        };
        let Ok(y) = pd.gen_duals(cfg) else {
            details.push(format!("FAIL {}: dual generation failed", pd.name()));
            return false;
        };
        if !crate::lp::standard_form::locally_verifiable(&lp, cfg.graph()) {
            details.push(format!("FAIL {}: lp is not locally verifiable", pd.name()));
            return false;
        }
        let primal_ok = lp.check_primal_feasible(&x) == Ok(true);
        let dual_ok = lp.check_dual_feasible(&y) == Ok(true);
        let cx = lp.primal_objective(&x);
        let by = lp.dual_objective(&y);
        let weak = match lp.sense {
            crate::scheme::Sense::Min => cx >= by,
            crate::scheme::Sense::Max => cx <= by,
        };
        let slack = lp
            .check_relaxed_slackness(&x, &y, &pd.beta(), &pd.gamma())
            .unwrap_or(false);
        let bg = pd.beta() * pd.gamma();
        let bound = match lp.sense {
            crate::scheme::Sense::Min => cx <= &bg * &by,
            crate::scheme::Sense::Max => cx >= by / &bg,
        };
        let ok = primal_ok && dual_ok && weak && slack && bound;
        if !ok {
            details.push(format!(
                "FAIL {}: feas ({primal_ok},{dual_ok}) weak {weak} slack {slack} bound {bound}",
                pd.name()
            ));
        }
        ok
    }

    let mut checked = 0;
    let mut failed = 0;
    for tick in 0..30u64 {
        let mut rng = gen::rng_for(seed ^ (0x600 + tick));
        let kappa = [1u64, 2, 3][rng.random_range(0..3)];
        let n = rng.random_range(4..=9);
        let g = gen::odd_girth_at_least("og", n, kappa, &mut rng);
        if let Ok(cover) = oracles::min_edge_cover(&g) {
            let cfg = ConfigGraph::with_output(
                g.clone(),
                crate::config::encode_edge_subset(&g, &cover),
            )
            .unwrap();
            checked += 1;
            if !check_pair(&make_edge_cover_apls(kappa).problem, &cfg, &mut details) {
                failed += 1;
            }
        }
        let (_, mu) = oracles::max_b_matching(&g);
        let cfg =
            ConfigGraph::with_output(g.clone(), crate::config::encode_edge_values(&g, &mu))
                .unwrap();
        checked += 1;
        if !check_pair(&make_bmatching_apls(kappa).problem, &cfg, &mut details) {
            failed += 1;
        }
    }
    for tick in 0..30u64 {
        let mut rng = gen::rng_for(seed ^ (0x610 + tick));
        let left = rng.random_range(1..=5);
        let right = rng.random_range(1..=5);
        let g = gen::bipartite_connected(
            "bip",
            left,
            right,
            rng.random_range(0..=3),
            Some(rng.random_range(1..=3)),
            &mut rng,
        );
        if let Ok(cover) = oracles::min_edge_cover(&g) {
            let cfg = ConfigGraph::with_output(
                g.clone(),
                crate::config::encode_edge_subset(&g, &cover),
            )
            .unwrap();
            checked += 1;
            if !check_pair(&make_edge_cover_bipartite_pls().problem, &cfg, &mut details) {
                failed += 1;
            }
        }
        let (_, mu) = oracles::max_b_matching(&g);
        let cfg =
            ConfigGraph::with_output(g.clone(), crate::config::encode_edge_values(&g, &mu))
                .unwrap();
        checked += 1;
        if !check_pair(&make_bmatching_bipartite_pls().problem, &cfg, &mut details) {
            failed += 1;
        }
    }
    for tick in 0..30u64 {
        let mut rng = gen::rng_for(seed ^ (0x620 + tick));
        let n = rng.random_range(2..=8);
        let g = gen::flow_network("fl", n, rng.random_range(1..=9), &mut rng);
        let flow = max_flow(&g).unwrap();
        let cfg =
            ConfigGraph::with_output(g.clone(), crate::config::encode_edge_values(&g, &flow.f))
                .unwrap();
        checked += 1;
        if !check_pair(&make_flow_pls().problem, &cfg, &mut details) {
            failed += 1;
        }
    }
    if failed > 0 {
        pass = false;
    }
    details.push(format!(
        "{} duality checks: {checked} prover-emitted pairs, {failed} violations",
        if failed == 0 { "ok " } else { "FAIL" }
    ));
    (pass, details)
}

// ---------------------------------------------------------------------------
// Criterion 7: structural lemmas as executable checks
// ---------------------------------------------------------------------------

fn c7_structural(seed: u64) -> (bool, Vec<String>) {
    let mut details = Vec::new();
    let mut pass = true;
    let mut cover_checked = 0;
    let mut cover_viol = 0;
    let mut match_checked = 0;
    let mut match_viol = 0;
    for tick in 0..60u64 {
        let mut rng = gen::rng_for(seed ^ (0x700 + tick));
        let n = rng.random_range(2..=8);
        let g = gen::random_connected("st", n, rng.random_range(0..=n), 4, false, &mut rng);

        if let Ok(cover) = oracles::min_edge_cover(&g) {
            cover_checked += 1;
            if inflating_path_exists(&g, &cover) {
                cover_viol += 1;
            }
            let int = int_distances(&g, &cover).unwrap();
            for u in g.node_indices() {
                if let Some(d) = int[u] {
                    if d % 2 == 1 {
                        for p in g.ports(u) {
                            if int[p.neighbor].is_none_or(|dn| dn > d + 1) {
                                cover_viol += 1;
                            }
                        }
                    }
                }
            }
        }

        let (_, mu) = oracles::max_b_matching(&g);
        match_checked += 1;
        if augmenting_path_exists(&g, &mu) {
            match_viol += 1;
        }
        let alt = alt_distances(&g, &mu).unwrap();
        for u in g.node_indices() {
            if let Some(d) = alt[u] {
                if d % 2 == 0 {
                    for p in g.ports(u) {
                        if alt[p.neighbor].is_none_or(|dn| dn > d + 1) {
                            match_viol += 1;
                        }
                    }
                }
            }
        }
    }
    if cover_viol + match_viol > 0 {
        pass = false;
    }
    details.push(format!(
        "{} optimal covers: {cover_checked} instances, {cover_viol} lemma violations",
        if cover_viol == 0 { "ok " } else { "FAIL" }
    ));
    details.push(format!(
        "{} maximum b-matchings: {match_checked} instances, {match_viol} lemma violations",
        if match_viol == 0 { "ok " } else { "FAIL" }
    ));
    (pass, details)
}

// ---------------------------------------------------------------------------
// Criterion 8: reduction round-trips
// ---------------------------------------------------------------------------

fn c8_reductions(seed: u64) -> (bool, Vec<String>) {
    let mut details = Vec::new();
    let mut pass = true;
    let mut expect = |label: String, ok: bool, details: &mut Vec<String>| {
        if !ok {
            pass = false;
        }
        details.push(format!("{} {label}", if ok { "ok " } else { "FAIL" }));
    };

    // lifted schemes accept oracle-optimal outputs and fuzz-reject alpha-far ones
    for name in ["vertex-cover-apls", "dominating-set-apls", "tsp-apls", "steiner-apls"] {
        let yes = yes_instances(name, 5, seed ^ 0x800);
        let mut ok = true;
        for inst in &yes {
            match prove(inst.scheme.as_ref(), &inst.cfg) {
                Ok(labels) => ok &= verify(inst.scheme.as_ref(), &inst.cfg, &labels).accept(),
                Err(_) => ok = false,
            }
        }
        expect(format!("{name}: accepts optimal outputs"), ok, &mut details);

        let nos = no_instances(name, 2, seed ^ 0x810);
        let mut accepts = 0;
        for (i, inst) in nos.iter().enumerate() {
            let report = fuzz_soundness(
                inst.scheme.as_ref(),
                &inst.cfg,
                2_000,
                16,
                seed ^ (0x820 + i as u64),
            );
            accepts += report.accepts;
        }
        expect(format!("{name}: fuzz-rejects far outputs"), accepts == 0, &mut details);
    }

    // dual-objective decision schemes accept k up to OPT and reject far k
    for name in [
        "edge-cover-adpls",
        "b-matching-adpls",
        "edge-cover-bipartite-dpls",
        "b-matching-bipartite-dpls",
    ] {
        let yes = yes_instances(name, 5, seed ^ 0x830);
        let mut ok = true;
        for inst in &yes {
            match prove(inst.scheme.as_ref(), &inst.cfg) {
                Ok(labels) => ok &= verify(inst.scheme.as_ref(), &inst.cfg, &labels).accept(),
                Err(_) => ok = false,
            }
        }
        expect(format!("{name}: accepts thresholds within OPT"), ok, &mut details);

        let nos = no_instances(name, 2, seed ^ 0x840);
        let mut accepts = 0;
        for (i, inst) in nos.iter().enumerate() {
            let report = fuzz_soundness(
                inst.scheme.as_ref(),
                &inst.cfg,
                2_000,
                16,
                seed ^ (0x850 + i as u64),
            );
            accepts += report.accepts;
        }
        expect(format!("{name}: fuzz-rejects far thresholds"), accepts == 0, &mut details);
    }

    (pass, details)
}
