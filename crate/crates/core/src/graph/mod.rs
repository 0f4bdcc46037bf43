//! Undirected simple graphs with integer node IDs.
//!
//! Nodes and adjacency are kept in ordered maps so iteration order, and
//! therefore every seeded computation that walks the graph, is stable.

mod edgelist;
mod metrics;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{GmmError, Result};

pub use edgelist::{parse_edge_list, read_edge_list, serialize_edge_list, write_edge_list};
pub use metrics::{
    characteristic_path_length, degree_distribution, local_clustering, mean_clustering,
    DegreeDistribution,
};

pub type NodeId = u32;

/// String-keyed attribute map attached to a node or edge.
pub type Attributes = BTreeMap<String, String>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<NodeId, BTreeSet<NodeId>>,
    edge_count: usize,
    node_attrs: BTreeMap<NodeId, Attributes>,
    edge_attrs: BTreeMap<(NodeId, NodeId), Attributes>,
}

fn ordered(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with nodes `0..n` and no edges.
    pub fn with_nodes(n: usize) -> Self {
        let mut g = Graph::new();
        for v in 0..n as NodeId {
            g.add_node(v);
        }
        g
    }

    /// Builds a graph from an edge list. Endpoints are added as nodes.
    pub fn from_edges<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Graph::new();
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains_node(&self, v: NodeId) -> bool {
        self.adj.contains_key(&v)
    }

    /// Adds `v`; returns false if it was already present.
    pub fn add_node(&mut self, v: NodeId) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds the undirected edge `{u, v}`, creating missing endpoints.
    ///
    /// Returns `Ok(false)` when the edge already exists; self-loops are
    /// rejected.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        if u == v {
            return Err(GmmError::SelfLoop(u));
        }
        self.add_node(u);
        self.add_node(v);
        let inserted = self.adj.get_mut(&u).expect("node present").insert(v);
        if inserted {
            self.adj.get_mut(&v).expect("node present").insert(u);
            self.edge_count += 1;
        }
        Ok(inserted)
    }

    /// Removes the edge `{u, v}`; returns false if it was absent.
    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        let removed = self.adj.get_mut(&u).is_some_and(|n| n.remove(&v));
        if removed {
            self.adj.get_mut(&v).expect("node present").remove(&u);
            self.edge_attrs.remove(&ordered(u, v));
            self.edge_count -= 1;
        }
        removed
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Neighbors of `v` in ascending order (empty if `v` is absent).
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    /// Nodes in ascending order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nbrs)| nbrs.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn max_node_id(&self) -> Option<NodeId> {
        self.adj.keys().next_back().copied()
    }

    pub fn node_attrs(&self, v: NodeId) -> Option<&Attributes> {
        self.node_attrs.get(&v)
    }

    pub fn edge_attrs(&self, u: NodeId, v: NodeId) -> Option<&Attributes> {
        self.edge_attrs.get(&ordered(u, v))
    }

    pub fn set_node_attr(&mut self, v: NodeId, key: impl Into<String>, value: impl Into<String>) {
        self.add_node(v);
        self.node_attrs
            .entry(v)
            .or_default()
            .insert(key.into(), value.into());
    }

    /// Sets an attribute on an existing edge; returns false if the edge is absent.
    pub fn set_edge_attr(
        &mut self,
        u: NodeId,
        v: NodeId,
        key: impl Into<String>,
        value: impl Into<String>,
    ) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.edge_attrs
            .entry(ordered(u, v))
            .or_default()
            .insert(key.into(), value.into());
        true
    }

    /// Subgraph induced by `nodes` (IDs preserved, attributes dropped).
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Graph {
        let keep: BTreeSet<NodeId> = nodes
            .iter()
            .copied()
            .filter(|v| self.contains_node(*v))
            .collect();
        let mut g = Graph::new();
        for &u in &keep {
            g.add_node(u);
            for v in self.neighbors(u) {
                if v > u && keep.contains(&v) {
                    g.add_edge(u, v).expect("source graph is simple");
                }
            }
        }
        g
    }

    /// Relabels nodes to `0..n` in ascending ID order.
    pub fn relabel_sorted(&self) -> Graph {
        let map: BTreeMap<NodeId, NodeId> = self
            .nodes()
            .enumerate()
            .map(|(i, v)| (v, i as NodeId))
            .collect();
        self.relabel(&map)
    }

    /// Applies a node relabeling. `map` must be injective and cover every node.
    pub fn relabel(&self, map: &BTreeMap<NodeId, NodeId>) -> Graph {
        let mut g = Graph::new();
        for v in self.nodes() {
            g.add_node(map[&v]);
        }
        for (u, v) in self.edges() {
            g.add_edge(map[&u], map[&v])
                .expect("relabel map is injective");
        }
        for (v, attrs) in &self.node_attrs {
            g.node_attrs.insert(map[v], attrs.clone());
        }
        for ((u, v), attrs) in &self.edge_attrs {
            g.edge_attrs.insert(ordered(map[u], map[v]), attrs.clone());
        }
        g
    }

    /// Connected components, each sorted; components ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = BTreeSet::new();
        let mut components = Vec::new();
        for start in self.nodes() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.connected_components().len() == 1
    }

    /// Disjoint union: `other` is relabeled onto fresh IDs above this
    /// graph's maximum ID, in ascending order of its original IDs.
    ///
    /// Returns the mapping from `other`'s IDs to the fresh IDs.
    pub fn compose(&mut self, other: &Graph) -> BTreeMap<NodeId, NodeId> {
        let base = self.max_node_id().map_or(0, |m| m + 1);
        let map: BTreeMap<NodeId, NodeId> = other
            .nodes()
            .enumerate()
            .map(|(i, v)| (v, base + i as NodeId))
            .collect();
        let shifted = other.relabel(&map);
        for v in shifted.nodes() {
            self.add_node(v);
        }
        for (u, v) in shifted.edges() {
            self.add_edge(u, v).expect("fresh IDs cannot collide");
        }
        self.node_attrs.extend(shifted.node_attrs);
        self.edge_attrs.extend(shifted.edge_attrs);
        map
    }

    /// Bridges components until the graph is connected.
    ///
    /// Each bridge joins a uniformly random node of the largest component
    /// to a uniformly random node of a uniformly random other component.
    /// Returns the number of edges added.
    pub fn ensure_connected<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<usize> {
        if self.is_empty() {
            return Err(GmmError::EmptyGraph);
        }
        let mut added = 0;
        loop {
            let mut components = self.connected_components();
            if components.len() <= 1 {
                return Ok(added);
            }
            // Largest first; ties keep the smallest-member order.
            let largest_idx = components
                .iter()
                .enumerate()
                .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
                .map(|(i, _)| i)
                .expect("nonempty");
            let largest = components.swap_remove(largest_idx);
            let other = components
                .choose(rng)
                .expect("at least one other component");
            let u = *largest.choose(rng).expect("component nonempty");
            let v = *other.choose(rng).expect("component nonempty");
            self.add_edge(u, v)?;
            added += 1;
        }
    }
}

/// Result of [`compose`]: the union graph and the relabeling of the second operand.
#[derive(Debug, Clone)]
pub struct Composition {
    pub graph: Graph,
    pub mapping: BTreeMap<NodeId, NodeId>,
}

/// Disjoint union of `g` and `h` without mutating either.
pub fn compose(g: &Graph, h: &Graph) -> Composition {
    let mut graph = g.clone();
    let mapping = graph.compose(h);
    Composition { graph, mapping }
}
