//! Classic random graph models and named fixture graphs.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GmmError, Result};
use crate::graph::{Graph, NodeId};

/// Binomial random graph: each of the `n choose 2` pairs is an edge with probability `p`.
pub fn er_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(GmmError::invalid("er_graph needs n >= 1"));
    }
    check_probability(p)?;
    let mut g = Graph::with_nodes(n);
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Ring lattice on `n` nodes with mean degree close to `k`.
///
/// Every node links to its `k / 2` nearest neighbors on each side. For odd
/// `k`, even-indexed nodes also link to the node `k / 2 + 1` steps ahead, so
/// half the nodes gain two extra links and the mean degree stays near `k`.
pub fn ring_lattice(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n <= k {
        return Err(GmmError::invalid(format!(
            "ring_lattice needs n > k >= 1, got n={n} k={k}"
        )));
    }
    let mut g = Graph::with_nodes(n);
    let half = k / 2;
    for i in 0..n {
        for step in 1..=half {
            g.add_edge(i as NodeId, ((i + step) % n) as NodeId)?;
        }
        if k % 2 == 1 && i % 2 == 0 {
            let j = (i + half + 1) % n;
            if j != i {
                g.add_edge(i as NodeId, j as NodeId)?;
            }
        }
    }
    Ok(g)
}

/// Watts-Strogatz small world graph: a [`ring_lattice`] whose edges are each
/// rewired with probability `p`.
///
/// A rewired edge `(u, v)` becomes `(u, w)` for `w` drawn uniformly among
/// nodes that are neither `u` nor already adjacent to `u`. With no such
/// node the edge stays put.
pub fn ws_graph<R: Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if k < 2 || n <= k {
        return Err(GmmError::invalid(format!(
            "ws_graph needs n > k >= 2, got n={n} k={k}"
        )));
    }
    check_probability(p)?;
    let lattice = ring_lattice(n, k)?;
    let original: Vec<(NodeId, NodeId)> = lattice.edges().collect();
    let mut g = lattice;
    for (u, v) in original {
        if rng.gen::<f64>() >= p {
            continue;
        }
        let targets: Vec<NodeId> = g.nodes().filter(|&w| w != u && !g.has_edge(u, w)).collect();
        if let Some(&w) = targets.choose(rng) {
            g.remove_edge(u, v);
            g.add_edge(u, w)?;
        }
    }
    Ok(g)
}

/// Size of the path graph that seeds [`ba_graph`] for attachment count `m`.
pub fn ba_seed_size(m: usize) -> usize {
    m.max(3)
}

/// Barabási-Albert preferential attachment graph.
///
/// Growth starts from a path on `max(3, m)` nodes. Each arriving node links
/// to `m` distinct existing nodes drawn with probability proportional to
/// their current degree.
pub fn ba_graph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    let seed = ba_seed_size(m);
    if m == 0 || n <= m || n < seed {
        return Err(GmmError::invalid(format!(
            "ba_graph needs n > m >= 1 and n >= {seed}, got n={n} m={m}"
        )));
    }
    let mut g = path_graph(seed);
    // Each node appears once per incident edge, so a uniform pick is degree-weighted.
    let mut stubs: Vec<NodeId> = g.edges().flat_map(|(u, v)| [u, v]).collect();
    for new in seed..n {
        if m > g.node_count() {
            return Err(GmmError::invalid(format!(
                "m={m} exceeds current graph size {}",
                g.node_count()
            )));
        }
        let mut targets: Vec<NodeId> = Vec::with_capacity(m);
        while targets.len() < m {
            let t = *stubs.choose(rng).expect("seed path has edges");
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        let new = new as NodeId;
        for t in targets {
            g.add_edge(new, t)?;
            stubs.push(new);
            stubs.push(t);
        }
    }
    Ok(g)
}

/// The Petersen graph: outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut g = Graph::new();
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).expect("simple");
        g.add_edge(i, i + 5).expect("simple");
        g.add_edge(5 + i, 5 + (i + 2) % 5).expect("simple");
    }
    g
}

pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::with_nodes(n);
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            g.add_edge(u, v).expect("simple");
        }
    }
    g
}

pub fn path_graph(n: usize) -> Graph {
    let mut g = Graph::with_nodes(n);
    for v in 1..n as NodeId {
        g.add_edge(v - 1, v).expect("simple");
    }
    g
}

pub fn cycle_graph(n: usize) -> Graph {
    let mut g = path_graph(n);
    if n > 2 {
        g.add_edge(0, n as NodeId - 1).expect("simple");
    }
    g
}

/// Star with hub `0` and `leaves` leaves.
pub fn star_graph(leaves: usize) -> Graph {
    let mut g = Graph::with_nodes(leaves + 1);
    for v in 1..=leaves as NodeId {
        g.add_edge(0, v).expect("simple");
    }
    g
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GmmError::invalid(format!("probability {p} outside [0, 1]")))
    }
}

/// Serializable description of a graph source, used for base structures
/// and the `generate` subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSpec {
    Petersen,
    Complete {
        n: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        leaves: usize,
    },
    RingLattice {
        n: usize,
        k: usize,
    },
    Er {
        n: usize,
        p: f64,
    },
    Ws {
        n: usize,
        k: usize,
        p: f64,
    },
    Ba {
        n: usize,
        m: usize,
    },
    /// Edge-list file on disk.
    File {
        path: String,
    },
    /// Inline edge list; `nodes` lists extra (possibly isolated) nodes.
    Edges {
        #[serde(default)]
        nodes: Vec<NodeId>,
        edges: Vec<(NodeId, NodeId)>,
    },
}

impl GraphSpec {
    /// Whether building this graph consumes randomness.
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            GraphSpec::Er { .. } | GraphSpec::Ws { .. } | GraphSpec::Ba { .. }
        )
    }

    pub fn build<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Graph> {
        Ok(match self {
            GraphSpec::Petersen => petersen(),
            GraphSpec::Complete { n } => complete_graph(*n),
            GraphSpec::Path { n } => path_graph(*n),
            GraphSpec::Cycle { n } => cycle_graph(*n),
            GraphSpec::Star { leaves } => star_graph(*leaves),
            GraphSpec::RingLattice { n, k } => ring_lattice(*n, *k)?,
            GraphSpec::Er { n, p } => er_graph(*n, *p, rng)?,
            GraphSpec::Ws { n, k, p } => ws_graph(*n, *k, *p, rng)?,
            GraphSpec::Ba { n, m } => ba_graph(*n, *m, rng)?,
            GraphSpec::File { path } => crate::graph::read_edge_list(path)?,
            GraphSpec::Edges { nodes, edges } => {
                let mut g = Graph::from_edges(edges.iter().copied())?;
                for &v in nodes {
                    g.add_node(v);
                }
                g
            }
        })
    }
}
