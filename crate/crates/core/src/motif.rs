//! The ordered catalog of connected motifs on `2..=tau` nodes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GmmError, Result};
use crate::graph::{Graph, NodeId};

/// Largest graph [`canonical_certificate`] will canonize.
pub const MAX_CERTIFICATE_NODES: usize = 8;
/// Largest supported motif size.
pub const MAX_TAU: usize = 6;

/// Upper-triangular adjacency bit-string, minimized over node permutations.
///
/// Bits run row by row over pairs `(0,1), (0,2), .., (0,n-1), (1,2), ..`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Certificate(String);

impl Certificate {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Canonical form of a small graph: the certificate, the relabeling that
/// realizes it and the automorphism group order.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub certificate: Certificate,
    /// `labeling[v]` is the canonical position of the `v`-th node in ascending ID order.
    pub labeling: Vec<usize>,
    pub automorphisms: u64,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Row-major adjacency bitmask over `n <= 8` nodes, bit `n*u + v`.
fn adjacency_rows(g: &Graph) -> (usize, Vec<u8>) {
    let ids: Vec<NodeId> = g.nodes().collect();
    let pos: BTreeMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut rows = vec![0u8; ids.len()];
    for (u, v) in g.edges() {
        let (a, b) = (pos[&u], pos[&v]);
        rows[a] |= 1 << b;
        rows[b] |= 1 << a;
    }
    (ids.len(), rows)
}

/// Code of the graph relabeled so that node `v` sits at position `perm[v]`;
/// the first pair is the most significant bit.
fn code_under(rows: &[u8], inverse: &[usize]) -> u32 {
    let n = rows.len();
    let mut code = 0u32;
    for i in 0..n {
        let row = rows[inverse[i]];
        for &src in &inverse[i + 1..n] {
            code = (code << 1) | u32::from(row >> src & 1);
        }
    }
    code
}

pub fn canonicalize(g: &Graph) -> Result<Canonical> {
    let n = g.node_count();
    if n > MAX_CERTIFICATE_NODES {
        return Err(GmmError::GraphTooLarge {
            nodes: n,
            limit: MAX_CERTIFICATE_NODES,
        });
    }
    let (_, rows) = adjacency_rows(g);
    // `inverse[i]` is the original node placed at canonical position i.
    let mut inverse: Vec<usize> = (0..n).collect();
    let mut best = code_under(&rows, &inverse);
    let mut best_inverse = inverse.clone();
    let mut ties = 1u64;

    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                inverse.swap(0, i);
            } else {
                inverse.swap(c[i], i);
            }
            let code = code_under(&rows, &inverse);
            match code.cmp(&best) {
                std::cmp::Ordering::Less => {
                    best = code;
                    best_inverse.copy_from_slice(&inverse);
                    ties = 1;
                }
                std::cmp::Ordering::Equal => ties += 1,
                std::cmp::Ordering::Greater => {}
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }

    let width = pair_count(n);
    let bits: String = (0..width)
        .rev()
        .map(|shift| if best >> shift & 1 == 1 { '1' } else { '0' })
        .collect();
    let mut labeling = vec![0usize; n];
    for (position, &node) in best_inverse.iter().enumerate() {
        labeling[node] = position;
    }
    Ok(Canonical {
        certificate: Certificate(bits),
        labeling,
        // Permutations reaching the minimum form one coset of the automorphism group.
        automorphisms: ties,
    })
}

/// Lexicographically minimal adjacency bit-string over all node orderings.
pub fn canonical_certificate(g: &Graph) -> Result<Certificate> {
    canonicalize(g).map(|c| c.certificate)
}

/// Rebuilds the graph on nodes `0..n` encoded by a certificate.
fn graph_from_certificate(n: usize, cert: &Certificate) -> Graph {
    let mut g = Graph::with_nodes(n);
    let mut bits = cert.as_str().chars();
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if bits.next() == Some('1') {
                g.add_edge(u, v).expect("simple");
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Motif {
    pub index: usize,
    pub nodes: usize,
    pub edges: usize,
    pub certificate: Certificate,
    /// Order of the automorphism group.
    pub automorphisms: u64,
    #[serde(skip)]
    graph: Graph,
}

impl Motif {
    fn from_canonical(n: usize, certificate: Certificate, automorphisms: u64) -> Motif {
        let graph = graph_from_certificate(n, &certificate);
        Motif {
            index: 0,
            nodes: n,
            edges: graph.edge_count(),
            certificate,
            automorphisms,
            graph,
        }
    }

    /// The motif in canonical labeling on nodes `0..V`.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// A fresh copy for growth.
    pub fn instantiate(&self) -> Graph {
        self.graph.clone()
    }

    fn order_key(&self) -> (usize, usize, &Certificate) {
        (self.nodes, self.edges, &self.certificate)
    }
}

/// All connected graphs on `2..=tau` nodes up to isomorphism, ordered by
/// `(nodes, edges, certificate)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MotifSet {
    tau: usize,
    motifs: Vec<Motif>,
    by_shape: BTreeMap<(usize, Certificate), usize>,
}

impl MotifSet {
    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.motifs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.motifs.is_empty()
    }

    pub fn motifs(&self) -> &[Motif] {
        &self.motifs
    }

    pub fn get(&self, index: usize) -> Option<&Motif> {
        self.motifs.get(index)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Motif> {
        self.motifs.iter()
    }

    /// Index of the motif with this node count and certificate.
    pub fn lookup(&self, nodes: usize, certificate: &Certificate) -> Option<usize> {
        self.by_shape.get(&(nodes, certificate.clone())).copied()
    }

    /// Index of the motif isomorphic to `g`, if `g` is a catalog shape.
    pub fn classify(&self, g: &Graph) -> Result<Option<usize>> {
        if g.node_count() < 2 || g.node_count() > self.tau {
            return Ok(None);
        }
        let cert = canonical_certificate(g)?;
        Ok(self.lookup(g.node_count(), &cert))
    }
}

impl<'a> IntoIterator for &'a MotifSet {
    type Item = &'a Motif;
    type IntoIter = std::slice::Iter<'a, Motif>;

    fn into_iter(self) -> Self::IntoIter {
        self.motifs.iter()
    }
}

pub fn check_tau(tau: usize) -> Result<()> {
    if tau < 2 {
        Err(GmmError::TauTooSmall(tau))
    } else if tau > MAX_TAU {
        Err(GmmError::TauTooLarge(tau))
    } else {
        Ok(())
    }
}

/// Builds the motif catalog for `tau`.
///
/// Every connected graph on `k` nodes has a vertex whose removal leaves it
/// connected, so the `k`-node classes all arise from a `(k-1)`-node class
/// plus one vertex joined to a nonempty subset of its nodes.
pub fn enumerate_motifs(tau: usize) -> Result<MotifSet> {
    check_tau(tau)?;
    let mut all: Vec<Motif> = Vec::new();
    let dyad = Graph::from_edges([(0, 1)])?;
    let canon = canonicalize(&dyad)?;
    let mut level = vec![Motif::from_canonical(
        2,
        canon.certificate,
        canon.automorphisms,
    )];

    for k in 3..=tau {
        let mut next: BTreeMap<Certificate, Motif> = BTreeMap::new();
        for parent in &level {
            let fresh = (k - 1) as NodeId;
            for subset in 1u32..(1 << (k - 1)) {
                let mut g = parent.graph.clone();
                g.add_node(fresh);
                for v in 0..(k - 1) as NodeId {
                    if subset >> v & 1 == 1 {
                        g.add_edge(v, fresh)?;
                    }
                }
                let canon = canonicalize(&g)?;
                next.entry(canon.certificate.clone()).or_insert_with(|| {
                    Motif::from_canonical(k, canon.certificate, canon.automorphisms)
                });
            }
        }
        all.append(&mut level);
        level = next.into_values().collect();
    }
    all.append(&mut level);

    all.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
    let mut by_shape = BTreeMap::new();
    for (i, m) in all.iter_mut().enumerate() {
        m.index = i;
        by_shape.insert((m.nodes, m.certificate.clone()), i);
    }
    Ok(MotifSet {
        tau,
        motifs: all,
        by_shape,
    })
}
