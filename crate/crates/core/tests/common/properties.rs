//! Property suites, one runner per invariant. Each draws `CASES` inputs from a
//! fixed-seed generator so failures reproduce.

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use statrs::function::gamma::ln_gamma;

use gmm::beliefs::poisson_weights;
use gmm::engine::{replay, run, BeliefMode, GmmConfig};
use gmm::generators::{ba_graph, ba_seed_size, er_graph, ring_lattice, ws_graph, GraphSpec};
use gmm::graph::{
    characteristic_path_length, compose, degree_distribution, mean_clustering, parse_edge_list,
    serialize_edge_list,
};
use gmm::rules::{ba_growth, er_growth, random_growth, ws_growth, TerminationRule};
use gmm::stats::{binomial_fit_report, small_world_stats};
use gmm::{
    brute_force_census, census, enumerate_motifs, explicit_pmf, poisson_pmf, sample_motif,
    GrowthRule, LambdaMode, MotifCensus, MotifSet, NodeId, PmfKind,
};

use super::{arb_graph, arb_sparse_ids, rng};

pub const CASES: u32 = 1000;

pub type Property = (&'static str, fn() -> Result<(), String>);

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(CASES)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn lift<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

fn catalogs() -> &'static [MotifSet] {
    use std::sync::OnceLock;
    static SETS: OnceLock<Vec<MotifSet>> = OnceLock::new();
    SETS.get_or_init(|| (2..=4).map(|t| enumerate_motifs(t).unwrap()).collect())
}

fn catalog(tau: usize) -> &'static MotifSet {
    &catalogs()[tau - 2]
}

/// Connected graph on 2..=max_n nodes.
fn arb_connected(max_n: usize) -> impl Strategy<Value = gmm::Graph> {
    (arb_graph(max_n), any::<u64>()).prop_filter_map("needs two nodes", |(mut g, seed)| {
        if g.node_count() < 2 {
            return None;
        }
        g.ensure_connected(&mut rng(seed)).unwrap();
        Some(g)
    })
}

pub fn all() -> Vec<Property> {
    vec![
        ("compose adds node and edge counts", compose_counts),
        (
            "degree density sums to one and degrees sum to 2|E|",
            degree_sums,
        ),
        (
            "path length is at least 1 and equals 1 only on complete graphs",
            path_length_bounds,
        ),
        (
            "ensure_connected adds components minus one edges",
            ensure_connected_edges,
        ),
        ("edge list round trip is the identity", edge_list_round_trip),
        ("census matches brute force for tau 2..4", census_oracle),
        ("census is invariant under relabeling", census_relabel),
        (
            "census is additive over disjoint unions",
            census_disjoint_union,
        ),
        ("dyad count equals edge count", census_dyads),
        ("both pmfs sum to one", pmfs_sum_to_one),
        ("explicit pmf is scale invariant", explicit_scale_invariance),
        (
            "poisson pmf has full support for positive lambda",
            poisson_support,
        ),
        (
            "sampling is reproducible from the seed",
            sampling_reproducible,
        ),
        (
            "growth rules add the motif and keep old edges",
            growth_invariants,
        ),
        (
            "growth rules are deterministic in the seed",
            growth_deterministic,
        ),
        (
            "simulation respects ceiling, trace and replay",
            engine_invariants,
        ),
        (
            "generators yield simple graphs with expected sizes",
            generator_invariants,
        ),
        (
            "binomial fit is consistent and relabel invariant",
            fit_consistency,
        ),
        (
            "small-world stats of the lattice are (1, 1)",
            lattice_normalization,
        ),
    ]
}

fn compose_counts() -> Result<(), String> {
    check((arb_sparse_ids(8), arb_sparse_ids(8)), |(g, h)| {
        let c = compose(&g, &h);
        prop_assert_eq!(c.graph.node_count(), g.node_count() + h.node_count());
        prop_assert_eq!(c.graph.edge_count(), g.edge_count() + h.edge_count());
        for (&old, &new) in &c.mapping {
            prop_assert!(!g.contains_node(new));
            prop_assert_eq!(c.graph.degree(new), h.degree(old));
        }
        for (u, v) in h.edges() {
            prop_assert!(c.graph.has_edge(c.mapping[&u], c.mapping[&v]));
        }
        for (u, v) in g.edges() {
            prop_assert!(c.graph.has_edge(u, v));
        }
        Ok(())
    })
}

fn degree_sums() -> Result<(), String> {
    check(arb_graph(14), |g| {
        let dd = lift(degree_distribution(&g))?;
        let total: f64 = dd.density.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        let n = g.node_count() as f64;
        let degree_sum: f64 = dd
            .density
            .iter()
            .enumerate()
            .map(|(d, p)| d as f64 * p * n)
            .sum();
        prop_assert!((degree_sum - 2.0 * g.edge_count() as f64).abs() < 1e-9);
        Ok(())
    })
}

fn path_length_bounds() -> Result<(), String> {
    check(arb_connected(10), |g| {
        let l = lift(characteristic_path_length(&g))?;
        let n = g.node_count();
        let complete = g.edge_count() == n * (n - 1) / 2;
        prop_assert!(l >= 1.0);
        prop_assert_eq!(l == 1.0, complete);
        Ok(())
    })
}

fn ensure_connected_edges() -> Result<(), String> {
    check((arb_graph(14), any::<u64>()), |(mut g, seed)| {
        let components = g.connected_components().len();
        let edges = g.edge_count();
        let added = lift(g.ensure_connected(&mut rng(seed)))?;
        prop_assert_eq!(added, components - 1);
        prop_assert_eq!(g.edge_count(), edges + added);
        prop_assert!(g.is_connected());
        Ok(())
    })
}

fn edge_list_round_trip() -> Result<(), String> {
    check(arb_sparse_ids(12), |g| {
        let text = serialize_edge_list(&g);
        let back = lift(parse_edge_list(&text))?;
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(serialize_edge_list(&back), text);
        Ok(())
    })
}

fn census_oracle() -> Result<(), String> {
    check((arb_graph(10), 2usize..=4), |(g, tau)| {
        let set = catalog(tau);
        let slow = lift(brute_force_census(set, &g))?;
        prop_assert_eq!(census(set, &g).counts, slow.counts);
        Ok(())
    })
}

fn permuted(g: &gmm::Graph, keys: &[u32]) -> gmm::Graph {
    // sort nodes by random keys to get a uniform relabeling
    let mut order: Vec<(u32, NodeId)> = g.nodes().zip(keys).map(|(v, &k)| (k, v)).collect();
    order.sort();
    let map: BTreeMap<NodeId, NodeId> = order
        .iter()
        .enumerate()
        .map(|(i, &(_, v))| (v, i as NodeId * 3 + 1))
        .collect();
    g.relabel(&map)
}

fn census_relabel() -> Result<(), String> {
    check(
        (arb_graph(11), prop::collection::vec(any::<u32>(), 11)),
        |(g, keys)| {
            let set = catalog(4);
            let h = permuted(&g, &keys);
            prop_assert_eq!(census(set, &g).counts, census(set, &h).counts);
            Ok(())
        },
    )
}

fn census_disjoint_union() -> Result<(), String> {
    check((arb_graph(8), arb_graph(8)), |(g, h)| {
        let set = catalog(4);
        let u = compose(&g, &h).graph;
        let a = census(set, &g).counts;
        let b = census(set, &h).counts;
        let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(census(set, &u).counts, sum);
        Ok(())
    })
}

fn census_dyads() -> Result<(), String> {
    check((arb_graph(14), 2usize..=4), |(g, tau)| {
        prop_assert_eq!(census(catalog(tau), &g).counts[0], g.edge_count() as u64);
        Ok(())
    })
}

fn arb_counts() -> impl Strategy<Value = MotifCensus> {
    prop_oneof![Just(3usize), Just(9usize)].prop_flat_map(|len| {
        let tau = if len == 3 { 3 } else { 4 };
        prop::collection::vec(0u64..10_000, len).prop_map(move |c| MotifCensus::from_counts(tau, c))
    })
}

fn pmfs_sum_to_one() -> Result<(), String> {
    check(arb_counts(), |c| {
        let mut dists = vec![lift(poisson_pmf(&c, LambdaMode::Literal))?];
        if c.total() > 0 {
            dists.push(lift(explicit_pmf(&c))?);
            dists.push(lift(poisson_pmf(&c, LambdaMode::MeanIndex))?);
        }
        for d in dists {
            let s: f64 = d.probs.iter().sum();
            prop_assert!((s - 1.0).abs() < 1e-9, "{:?} sums to {}", d.kind, s);
            prop_assert!(d.probs.iter().all(|p| (0.0..=1.0).contains(p)));
        }
        Ok(())
    })
}

fn explicit_scale_invariance() -> Result<(), String> {
    check((arb_counts(), 1u64..1000), |(c, k)| {
        prop_assume!(c.total() > 0);
        let scaled = MotifCensus::from_counts(c.tau, c.counts.iter().map(|x| x * k).collect());
        let a = lift(explicit_pmf(&c))?.probs;
        let b = lift(explicit_pmf(&scaled))?.probs;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
        Ok(())
    })
}

fn poisson_support() -> Result<(), String> {
    check((1e-3f64..50.0, 1usize..150), |(lambda, len)| {
        let w = lift(poisson_weights(lambda, len))?;
        prop_assert_eq!(w.len(), len);
        // exact weights below ~1e-300 are not representable and may round to 0
        let log_norm = (1.0 - (-lambda).exp()).ln();
        for (i, &p) in w.iter().enumerate() {
            let log_w = i as f64 * lambda.ln() - ln_gamma(i as f64 + 1.0) - lambda - log_norm;
            if log_w > -690.0 {
                prop_assert!(p > 0.0, "index {} has log weight {}", i, log_w);
            }
        }
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        Ok(())
    })
}

fn sampling_reproducible() -> Result<(), String> {
    check((arb_counts(), any::<u64>()), |(c, seed)| {
        prop_assume!(c.total() > 0);
        let d = lift(explicit_pmf(&c))?;
        let draw = |s| {
            let mut r = rng(s);
            (0..20)
                .map(|_| sample_motif(&d, &mut r))
                .collect::<Vec<_>>()
        };
        let a = draw(seed);
        prop_assert_eq!(&a, &draw(seed));
        prop_assert!(a.iter().all(|&i| c.counts[i] > 0));
        Ok(())
    })
}

fn arb_rule() -> impl Strategy<Value = GrowthRule> {
    prop_oneof![
        Just(GrowthRule::Random),
        (0.0f64..=1.0).prop_map(|p| GrowthRule::Er { p }),
        (1usize..5, 0.0f64..=1.0).prop_map(|(k, p)| GrowthRule::Ws { k, p }),
        (1usize..6).prop_map(|m| GrowthRule::Ba { m }),
    ]
}

fn apply(
    rule: GrowthRule,
    g: &mut gmm::Graph,
    motif: &gmm::Graph,
    seed: u64,
) -> gmm::Result<usize> {
    let r = &mut rng(seed);
    match rule {
        GrowthRule::Random => random_growth(g, motif, r),
        GrowthRule::Er { p } => er_growth(g, motif, p, r),
        GrowthRule::Ws { k, p } => ws_growth(g, motif, k, p, r),
        GrowthRule::Ba { m } => ba_growth(g, motif, m, r),
    }
}

fn growth_invariants() -> Result<(), String> {
    check(
        (arb_connected(10), arb_rule(), 0usize..9, any::<u64>()),
        |(host, rule, mi, seed)| {
            let motif = catalog(4).get(mi).unwrap().instantiate();
            let mut g = host.clone();
            let added = lift(apply(rule, &mut g, &motif, seed))?;
            prop_assert_eq!(g.node_count(), host.node_count() + motif.node_count());
            for (u, v) in host.edges() {
                prop_assert!(g.has_edge(u, v));
            }
            prop_assert!(g.edges().all(|(u, v)| u < v));
            prop_assert_eq!(
                g.edge_count(),
                host.edge_count() + motif.edge_count() + added
            );
            let cross = g.edge_count() - host.edge_count() - motif.edge_count();
            match rule {
                GrowthRule::Random => prop_assert_eq!(cross, 1),
                GrowthRule::Ws { .. } => prop_assert!(g.is_connected()),
                GrowthRule::Ba { m } => {
                    let capacity = host.node_count() * motif.node_count();
                    prop_assert_eq!(cross, m.min(capacity));
                }
                GrowthRule::Er { .. } => {
                    prop_assert!(cross <= host.node_count() * motif.node_count())
                }
            }
            if !matches!(rule, GrowthRule::Er { .. }) {
                prop_assert!(g.is_connected());
            }
            Ok(())
        },
    )
}

fn growth_deterministic() -> Result<(), String> {
    check(
        (arb_connected(10), arb_rule(), 0usize..9, any::<u64>()),
        |(host, rule, mi, seed)| {
            let motif = catalog(4).get(mi).unwrap().instantiate();
            let (mut a, mut b) = (host.clone(), host);
            lift(apply(rule, &mut a, &motif, seed))?;
            lift(apply(rule, &mut b, &motif, seed))?;
            prop_assert_eq!(a, b);
            Ok(())
        },
    )
}

fn arb_config() -> impl Strategy<Value = GmmConfig> {
    let base = prop_oneof![
        Just(GraphSpec::Petersen),
        (4usize..10).prop_map(|n| GraphSpec::Cycle { n }),
        (4usize..10).prop_map(|n| GraphSpec::Ba { n, m: 1 }),
    ];
    let rule = prop_oneof![
        Just(GrowthRule::Random),
        (0.05f64..0.5).prop_map(|p| GrowthRule::Er { p }),
        (1usize..4).prop_map(|m| GrowthRule::Ba { m }),
        (1usize..3, 0.0f64..0.5).prop_map(|(k, p)| GrowthRule::Ws { k, p }),
    ];
    let pmf = prop_oneof![
        Just(PmfKind::Explicit),
        Just(PmfKind::PoissonLiteral),
        Just(PmfKind::PoissonMeanIndex)
    ];
    let mode = prop_oneof![Just(BeliefMode::Dynamic), Just(BeliefMode::Static)];
    (base, rule, pmf, mode, 2usize..=4, 11usize..32, any::<u64>()).prop_map(
        |(base, growth, pmf, belief_mode, tau, ceiling, seed)| GmmConfig {
            base,
            tau,
            pmf,
            growth,
            termination: TerminationRule::NodeCeiling { ceiling },
            belief_mode,
            seed,
        },
    )
}

fn engine_invariants() -> Result<(), String> {
    check(arb_config(), |config| {
        let sim = lift(run(&config))?;
        let ceiling = config.termination.ceiling();
        let n = sim.graph.node_count();
        prop_assert!(n >= ceiling && n < ceiling + config.tau, "n = {}", n);
        let records = &sim.trace.records;
        prop_assert!(records.len() <= (ceiling - sim.trace.base_nodes).div_ceil(2));
        for r in records {
            prop_assert!((r.pmf.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        if config.belief_mode == BeliefMode::Static {
            prop_assert!(records.iter().all(|r| r.pmf == records[0].pmf));
            prop_assert_eq!(sim.trace.census_evaluations, 1);
        } else {
            prop_assert_eq!(sim.trace.census_evaluations, records.len());
        }
        let again = lift(run(&config))?;
        prop_assert_eq!(&again.graph, &sim.graph);
        prop_assert_eq!(lift(again.trace.to_json())?, lift(sim.trace.to_json())?);
        prop_assert_eq!(lift(replay(&sim.trace, &config))?, sim.graph);
        Ok(())
    })
}

fn generator_invariants() -> Result<(), String> {
    let spec = (5usize..60, 0.0f64..=1.0, 1usize..8, 2usize..5, any::<u64>());
    check(spec, |(n, p, m, k, seed)| {
        let r = &mut rng(seed);
        let er = lift(er_graph(n, p, r))?;
        prop_assert_eq!(er.node_count(), n);
        prop_assert!(er.edges().all(|(u, v)| u < v));

        let ws = lift(ws_graph(n, k, p, r))?;
        let lattice = lift(ring_lattice(n, k))?;
        prop_assert_eq!(ws.node_count(), n);
        prop_assert_eq!(ws.edge_count(), lattice.edge_count());
        if k % 2 == 0 {
            prop_assert!(lattice.nodes().all(|v| lattice.degree(v) == k));
        }

        let ba_n = n.max(ba_seed_size(m) + 1);
        let ba = lift(ba_graph(ba_n, m, r))?;
        let s = ba_seed_size(m);
        let degree_sum: usize = ba.nodes().map(|v| ba.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * ((s - 1) + m * (ba_n - s)));
        if m <= 3 {
            prop_assert_eq!(degree_sum, 2 * (2 + m * (ba_n - 3)));
        }
        prop_assert!(ba.is_connected());
        Ok(())
    })
}

fn fit_consistency() -> Result<(), String> {
    check(
        (
            arb_graph(14),
            0.05f64..0.95,
            prop::collection::vec(any::<u32>(), 14),
        ),
        |(g, p, keys)| {
            prop_assume!(g.node_count() >= 3);
            let f = lift(binomial_fit_report(&g, p))?;
            let n = f.n_points as f64;
            prop_assert!((f.rmse * f.rmse * n - f.rss).abs() <= 1e-12 * f.rss.max(1.0));
            let dd = lift(degree_distribution(&g))?;
            let mut y = dd.density.clone();
            y.resize(g.node_count(), 0.0);
            let mean = y.iter().sum::<f64>() / n;
            let tss: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
            if tss > 0.0 {
                prop_assert!((f.r_squared - (1.0 - f.rss / tss)).abs() < 1e-9);
            }
            let h = lift(binomial_fit_report(&permuted(&g, &keys), p))?;
            prop_assert!(
                (f.r_squared - h.r_squared).abs() < 1e-12
                    || (f.r_squared.is_nan() && h.r_squared.is_nan())
            );
            prop_assert!((f.coefficient - h.coefficient).abs() < 1e-12 || f.coefficient.is_nan());
            Ok(())
        },
    )
}

fn lattice_normalization() -> Result<(), String> {
    check((6usize..40, 2usize..5), |(n, k)| {
        let g = lift(ring_lattice(n, k))?;
        let c0 = lift(mean_clustering(&g))?;
        prop_assume!(c0 > 0.0);
        let l0 = lift(characteristic_path_length(&g))?;
        let s = lift(small_world_stats(&g, c0, l0))?;
        prop_assert_eq!(
            (s.clustering_normalized, s.path_length_normalized),
            (1.0, 1.0)
        );
        Ok(())
    })
}
