//! Induced-subgraph census: how often each catalog motif occurs in a host.
//!
//! The matcher is a VF2-style backtracking search. Motif nodes are matched
//! in a fixed connected order; each candidate host node must be a neighbor
//! of the image of an earlier adjacent motif node, carry at least the motif
//! node's degree, and agree with every earlier image on both edges and
//! non-edges. Every induced occurrence of a motif `m` is reached by exactly
//! `|Aut(m)|` mappings, so the occurrence count is the mapping count divided
//! by the automorphism order.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GmmError, Result};
use crate::graph::{Graph, NodeId};
use crate::motif::{canonical_certificate, Motif, MotifSet};

/// Host size limit for [`brute_force_census`].
pub const BRUTE_FORCE_MAX_NODES: usize = 12;

/// Per-motif census of a host graph, aligned with the catalog order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotifCensus {
    pub tau: usize,
    /// Induced occurrences (distinct node subsets).
    pub counts: Vec<u64>,
    /// Injective induced mappings; `counts[i] * |Aut(motif i)|`.
    pub mapping_counts: Vec<u64>,
    pub host_nodes: usize,
    pub host_edges: usize,
}

impl MotifCensus {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Census with externally supplied counts (mapping counts left at zero).
    pub fn from_counts(tau: usize, counts: Vec<u64>) -> MotifCensus {
        let n = counts.len();
        MotifCensus {
            tau,
            counts,
            mapping_counts: vec![0; n],
            host_nodes: 0,
            host_edges: 0,
        }
    }
}

/// Dense view of a host graph for matching.
pub struct HostIndex {
    words: usize,
    adjacency: Vec<u64>,
    neighbors: Vec<Vec<u32>>,
    degree: Vec<usize>,
}

impl HostIndex {
    pub fn new(host: &Graph) -> HostIndex {
        let ids: Vec<NodeId> = host.nodes().collect();
        let pos: BTreeMap<NodeId, u32> = ids
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let n = ids.len();
        let words = n.div_ceil(64).max(1);
        let mut adjacency = vec![0u64; n * words];
        let mut neighbors = vec![Vec::new(); n];
        for (u, v) in host.edges() {
            let (a, b) = (pos[&u] as usize, pos[&v] as usize);
            adjacency[a * words + b / 64] |= 1 << (b % 64);
            adjacency[b * words + a / 64] |= 1 << (a % 64);
            neighbors[a].push(b as u32);
            neighbors[b].push(a as u32);
        }
        let degree = neighbors.iter().map(Vec::len).collect();
        HostIndex {
            words,
            adjacency,
            neighbors,
            degree,
        }
    }

    fn len(&self) -> usize {
        self.degree.len()
    }

    #[inline]
    fn adjacent(&self, a: u32, b: u32) -> bool {
        let (a, b) = (a as usize, b as usize);
        self.adjacency[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }
}

/// Matching plan for one motif: node order plus per-step constraints.
struct Plan {
    degree: Vec<usize>,
    /// Earlier step whose image anchors candidate generation.
    anchor: Vec<usize>,
    /// For each step, earlier steps paired with whether they must be adjacent.
    checks: Vec<Vec<(usize, bool)>>,
}

impl Plan {
    fn new(motif: &Graph) -> Plan {
        let ids: Vec<NodeId> = motif.nodes().collect();
        let k = ids.len();
        let adj = |a: usize, b: usize| motif.has_edge(ids[a], ids[b]);
        let deg: Vec<usize> = ids.iter().map(|&v| motif.degree(v)).collect();

        // Highest degree first, then greedily the node most tied to the prefix.
        let mut order: Vec<usize> = Vec::with_capacity(k);
        let mut placed = vec![false; k];
        let first = (0..k)
            .max_by_key(|&v| (deg[v], std::cmp::Reverse(v)))
            .expect("motif nonempty");
        order.push(first);
        placed[first] = true;
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let ties = order.iter().filter(|&&u| adj(u, v)).count();
                    (ties, deg[v], std::cmp::Reverse(v))
                })
                .expect("unplaced node remains");
            order.push(next);
            placed[next] = true;
        }

        let mut anchor = vec![0; k];
        let mut checks = vec![Vec::new(); k];
        for step in 1..k {
            let v = order[step];
            anchor[step] = (0..step)
                .find(|&s| adj(order[s], v))
                .expect("motif is connected");
            checks[step] = (0..step).map(|s| (s, adj(order[s], v))).collect();
        }
        Plan {
            degree: order.iter().map(|&v| deg[v]).collect(),
            anchor,
            checks,
        }
    }

    fn count(&self, host: &HostIndex) -> u64 {
        let k = self.degree.len();
        if host.len() < k {
            return 0;
        }
        let mut image = vec![0u32; k];
        let mut used = vec![false; host.len()];
        let mut total = 0;
        for root in 0..host.len() as u32 {
            if host.degree[root as usize] < self.degree[0] {
                continue;
            }
            image[0] = root;
            used[root as usize] = true;
            total += self.extend(host, 1, &mut image, &mut used);
            used[root as usize] = false;
        }
        total
    }

    fn extend(&self, host: &HostIndex, step: usize, image: &mut [u32], used: &mut [bool]) -> u64 {
        if step == self.degree.len() {
            return 1;
        }
        let mut total = 0;
        let anchor = image[self.anchor[step]];
        for &cand in &host.neighbors[anchor as usize] {
            if used[cand as usize] || host.degree[cand as usize] < self.degree[step] {
                continue;
            }
            let consistent = self.checks[step]
                .iter()
                .all(|&(s, want)| host.adjacent(image[s], cand) == want);
            if !consistent {
                continue;
            }
            image[step] = cand;
            used[cand as usize] = true;
            total += self.extend(host, step + 1, image, used);
            used[cand as usize] = false;
        }
        total
    }
}

/// Number of injective maps from the motif onto induced copies in the host.
pub fn count_induced_mappings(motif: &Motif, host: &HostIndex) -> u64 {
    Plan::new(motif.graph()).count(host)
}

/// Number of node subsets of the host inducing a copy of the motif.
pub fn count_induced_occurrences(motif: &Motif, host: &Graph) -> u64 {
    let mappings = count_induced_mappings(motif, &HostIndex::new(host));
    debug_assert_eq!(mappings % motif.automorphisms, 0);
    mappings / motif.automorphisms
}

fn assemble(set: &MotifSet, host: &Graph, mappings: Vec<u64>) -> MotifCensus {
    let counts = set
        .iter()
        .zip(&mappings)
        .map(|(m, &maps)| maps / m.automorphisms)
        .collect();
    MotifCensus {
        tau: set.tau(),
        counts,
        mapping_counts: mappings,
        host_nodes: host.node_count(),
        host_edges: host.edge_count(),
    }
}

/// Census of every catalog motif in `host`, one motif after another.
pub fn census(set: &MotifSet, host: &Graph) -> MotifCensus {
    let index = HostIndex::new(host);
    let mappings = set
        .iter()
        .map(|m| count_induced_mappings(m, &index))
        .collect();
    assemble(set, host, mappings)
}

/// [`census`] with one task per motif on the current rayon pool.
///
/// Counts are gathered positionally, so the result equals [`census`].
pub fn par_census(set: &MotifSet, host: &Graph) -> MotifCensus {
    let index = HostIndex::new(host);
    let mappings = set
        .motifs()
        .par_iter()
        .map(|m| count_induced_mappings(m, &index))
        .collect();
    assemble(set, host, mappings)
}

/// Exhaustive census over all node subsets of a small host.
///
/// Each subset of size `2..=tau` is canonized and looked up in the catalog.
/// Exponential in host size; reserved for cross-checking [`census`].
pub fn brute_force_census(set: &MotifSet, host: &Graph) -> Result<MotifCensus> {
    let n = host.node_count();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(GmmError::GraphTooLarge {
            nodes: n,
            limit: BRUTE_FORCE_MAX_NODES,
        });
    }
    let ids: Vec<NodeId> = host.nodes().collect();
    let mut counts = vec![0u64; set.len()];
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 || size > set.tau() {
            continue;
        }
        let members: Vec<NodeId> = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| ids[i])
            .collect();
        let sub = host.induced_subgraph(&members);
        if !sub.is_connected() {
            continue;
        }
        let cert = canonical_certificate(&sub)?;
        let idx = set
            .lookup(size, &cert)
            .expect("catalog covers every connected graph up to tau nodes");
        counts[idx] += 1;
    }
    let mapping_counts = set
        .iter()
        .zip(&counts)
        .map(|(m, &c)| c * m.automorphisms)
        .collect();
    Ok(MotifCensus {
        tau: set.tau(),
        counts,
        mapping_counts,
        host_nodes: n,
        host_edges: host.edge_count(),
    })
}
