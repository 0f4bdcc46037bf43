//! Helpers shared by the integration tests. Each test binary uses a
//! different subset, hence the blanket allow.
#![allow(dead_code)]

pub mod properties;

use gmm::generators::{ba_graph, er_graph, ws_graph};
use gmm::{Graph, MotifSet, NodeId};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All permutations of `0..n`, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Dense adjacency over the graph's nodes in sorted order.
pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let nodes: Vec<NodeId> = g.nodes().collect();
    nodes
        .iter()
        .map(|&u| nodes.iter().map(|&v| g.has_edge(u, v)).collect())
        .collect()
}

/// Isomorphism by trying every bijection.
pub fn isomorphic(a: &[Vec<bool>], b: &[Vec<bool>], perms: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let ea: usize = a.iter().flatten().filter(|&&x| x).count();
    let eb: usize = b.iter().flatten().filter(|&&x| x).count();
    if ea != eb {
        return false;
    }
    perms
        .iter()
        .any(|p| (0..n).all(|i| (0..n).all(|j| a[i][j] == b[p[i]][p[j]])))
}

/// Graph on `0..n` with edges chosen by `bits` over the upper triangle,
/// row-major.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::with_nodes(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                g.add_edge(i as NodeId, j as NodeId).unwrap();
            }
            k += 1;
        }
    }
    g
}

/// Arbitrary simple graph on 1..=max_n nodes.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Arbitrary graph whose node IDs are scattered rather than `0..n`.
pub fn arb_sparse_ids(max_n: usize) -> impl Strategy<Value = Graph> {
    (arb_graph(max_n), prop::collection::vec(0u32..1000, max_n)).prop_map(|(g, offsets)| {
        let mut next = 0;
        let map = g
            .nodes()
            .zip(offsets)
            .map(|(v, o)| {
                next += o + 1;
                (v, next)
            })
            .collect();
        g.relabel(&map)
    })
}

/// Random host from one of the three classic models, at most `max_n` nodes.
pub fn mixed_host(seed: u64, max_n: usize) -> Graph {
    let mut r = rng(seed);
    let n = r.gen_range(4..=max_n);
    match seed % 3 {
        0 => er_graph(n, r.gen_range(0.1..0.7), &mut r).unwrap(),
        1 => {
            let k = r.gen_range(2..=3.min(n - 2));
            ws_graph(n, k, r.gen_range(0.0..0.5), &mut r).unwrap()
        }
        _ => {
            let m = r.gen_range(1..=2);
            ba_graph(n.max(4), m, &mut r).unwrap()
        }
    }
}

/// Census by enumerating node subsets and testing each induced subgraph
/// against every motif with the brute-force isomorphism check.
pub fn oracle_census(set: &MotifSet, host: &Graph) -> Vec<u64> {
    let nodes: Vec<NodeId> = host.nodes().collect();
    let perms: Vec<Vec<Vec<usize>>> = (0..=set.tau()).map(permutations).collect();
    let motif_adj: Vec<Vec<Vec<bool>>> = set.iter().map(|m| adjacency(m.graph())).collect();
    let mut counts = vec![0u64; set.len()];
    let mut subset = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn walk(
        start: usize,
        nodes: &[NodeId],
        subset: &mut Vec<NodeId>,
        host: &Graph,
        set: &MotifSet,
        perms: &[Vec<Vec<usize>>],
        motif_adj: &[Vec<Vec<bool>>],
        counts: &mut [u64],
    ) {
        if subset.len() >= 2 {
            let sub = adjacency(&host.induced_subgraph(subset));
            for (i, m) in set.iter().enumerate() {
                if m.nodes == subset.len() && isomorphic(&sub, &motif_adj[i], &perms[m.nodes]) {
                    counts[i] += 1;
                }
            }
        }
        if subset.len() == set.tau() {
            return;
        }
        for i in start..nodes.len() {
            subset.push(nodes[i]);
            walk(i + 1, nodes, subset, host, set, perms, motif_adj, counts);
            subset.pop();
        }
    }
    walk(
        0,
        &nodes,
        &mut subset,
        host,
        set,
        &perms,
        &motif_adj,
        &mut counts,
    );
    counts
}

/// One isomorphism class of connected labeled graphs.
pub struct Class {
    pub adj: Vec<Vec<bool>>,
    pub members: usize,
    pub edges: usize,
}

/// Every labeled graph on `v` nodes, connected ones grouped by brute-force
/// isomorphism.
pub fn brute_force_classes(v: usize) -> Vec<Class> {
    let perms = permutations(v);
    let pairs = v * (v - 1) / 2;
    let mut classes: Vec<Class> = Vec::new();
    for mask in 0u32..(1 << pairs) {
        let bits: Vec<bool> = (0..pairs).map(|i| mask >> i & 1 == 1).collect();
        let g = graph_from_bits(v, &bits);
        if !g.is_connected() {
            continue;
        }
        let adj = adjacency(&g);
        match classes
            .iter_mut()
            .find(|c| isomorphic(&c.adj, &adj, &perms))
        {
            Some(c) => c.members += 1,
            None => classes.push(Class {
                adj,
                members: 1,
                edges: g.edge_count(),
            }),
        }
    }
    classes
}

pub fn graph_of(adj: &[Vec<bool>]) -> Graph {
    let mut g = Graph::with_nodes(adj.len());
    for (i, row) in adj.iter().enumerate() {
        for (j, &edge) in row.iter().enumerate().skip(i + 1) {
            if edge {
                g.add_edge(i as u32, j as u32).unwrap();
            }
        }
    }
    g
}
