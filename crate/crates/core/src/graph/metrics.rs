use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Graph, NodeId};
use crate::error::{GmmError, Result};

/// Fraction of nodes at each degree `0..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeDistribution {
    pub size: usize,
    pub density: Vec<f64>,
}

impl DegreeDistribution {
    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        let n = degrees.len();
        if n == 0 {
            return Err(GmmError::EmptyGraph);
        }
        let len = n.max(degrees.iter().copied().max().unwrap_or(0) + 1);
        let mut density = vec![0.0; len];
        for &d in degrees {
            density[d] += 1.0;
        }
        for x in &mut density {
            *x /= n as f64;
        }
        Ok(DegreeDistribution { size: n, density })
    }
}

pub fn degree_distribution(g: &Graph) -> Result<DegreeDistribution> {
    let degrees: Vec<usize> = g.nodes().map(|v| g.degree(v)).collect();
    DegreeDistribution::from_degrees(&degrees)
}

/// Closed neighbor pairs over all neighbor pairs; 0 for degree < 2.
pub fn local_clustering(g: &Graph, v: NodeId) -> f64 {
    let nbrs: Vec<NodeId> = g.neighbors(v).collect();
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if g.has_edge(a, b) {
                links += 1;
            }
        }
    }
    2.0 * links as f64 / (k * (k - 1)) as f64
}

pub fn mean_clustering(g: &Graph) -> Result<f64> {
    if g.is_empty() {
        return Err(GmmError::EmptyGraph);
    }
    let total: f64 = g.nodes().map(|v| local_clustering(g, v)).sum();
    Ok(total / g.node_count() as f64)
}

/// Mean shortest-path distance over unordered node pairs.
///
/// A single-node graph has no pairs and yields 0.
pub fn characteristic_path_length(g: &Graph) -> Result<f64> {
    if g.is_empty() {
        return Err(GmmError::EmptyGraph);
    }
    let components = g.connected_components().len();
    if components > 1 {
        return Err(GmmError::Disconnected { components });
    }
    let n = g.node_count();
    if n == 1 {
        return Ok(0.0);
    }
    let index: BTreeMap<NodeId, usize> = g.nodes().enumerate().map(|(i, v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = g
        .nodes()
        .map(|v| g.neighbors(v).map(|w| index[&w]).collect())
        .collect();

    let mut total: u64 = 0;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        dist.fill(usize::MAX);
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        total += dist[s + 1..].iter().map(|&d| d as u64).sum::<u64>();
    }
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(total as f64 / pairs)
}
