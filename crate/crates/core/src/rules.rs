//! Growth rules that attach a motif instance to the evolving graph, and
//! termination rules that stop the simulation.
//!
//! Every growth rule first composes the motif onto fresh node IDs and then
//! adds cross edges between motif nodes and nodes that existed before the
//! composition. Randomness is drawn in a fixed order from the supplied RNG.

use log::warn;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GmmError, Result};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthRule {
    /// One bridge between a random base node and a random motif node.
    Random,
    /// Each motif/base pair linked independently with probability `p`.
    Er { p: f64 },
    /// `k` shuffled motif nodes linked to each base node with probability `p`,
    /// then components bridged.
    Ws { k: usize, p: f64 },
    /// `m` degree-proportional links from motif nodes into the base.
    Ba { m: usize },
}

impl GrowthRule {
    pub fn validate(&self) -> Result<()> {
        let check_p = |p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(GmmError::invalid(format!(
                    "growth probability {p} outside [0, 1]"
                )))
            }
        };
        match *self {
            GrowthRule::Random => Ok(()),
            GrowthRule::Er { p } => check_p(p),
            GrowthRule::Ws { k, p } => {
                if k == 0 {
                    return Err(GmmError::invalid("ws growth needs k >= 1"));
                }
                check_p(p)
            }
            GrowthRule::Ba { m } => {
                if m == 0 {
                    Err(GmmError::invalid("ba growth needs m >= 1"))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Composes `motif` into `g` and wires it in. Returns the number of edges
    /// added beyond the motif's own.
    pub fn apply<R: Rng + ?Sized>(
        &self,
        g: &mut Graph,
        motif: &Graph,
        rng: &mut R,
    ) -> Result<usize> {
        match *self {
            GrowthRule::Random => random_growth(g, motif, rng),
            GrowthRule::Er { p } => er_growth(g, motif, p, rng),
            GrowthRule::Ws { k, p } => ws_growth(g, motif, k, p, rng),
            GrowthRule::Ba { m } => ba_growth(g, motif, m, rng),
        }
    }
}

/// Composes and returns (pre-existing nodes, fresh motif nodes).
fn attach(g: &mut Graph, motif: &Graph) -> (Vec<NodeId>, Vec<NodeId>) {
    let base: Vec<NodeId> = g.nodes().collect();
    let mapping = g.compose(motif);
    (base, mapping.into_values().collect())
}

pub fn random_growth<R: Rng + ?Sized>(g: &mut Graph, motif: &Graph, rng: &mut R) -> Result<usize> {
    if g.is_empty() {
        return Err(GmmError::EmptyGraph);
    }
    let (base, fresh) = attach(g, motif);
    let r1 = *base.choose(rng).expect("base nonempty");
    let r2 = *fresh
        .choose(rng)
        .ok_or_else(|| GmmError::invalid("motif has no nodes"))?;
    g.add_edge(r1, r2)?;
    Ok(1)
}

pub fn er_growth<R: Rng + ?Sized>(
    g: &mut Graph,
    motif: &Graph,
    p: f64,
    rng: &mut R,
) -> Result<usize> {
    GrowthRule::Er { p }.validate()?;
    let (base, fresh) = attach(g, motif);
    let mut added = 0;
    for &i in &fresh {
        for &j in &base {
            if rng.gen::<f64>() < p {
                g.add_edge(i, j)?;
                added += 1;
            }
        }
    }
    Ok(added)
}

pub fn ws_growth<R: Rng + ?Sized>(
    g: &mut Graph,
    motif: &Graph,
    k: usize,
    p: f64,
    rng: &mut R,
) -> Result<usize> {
    GrowthRule::Ws { k, p }.validate()?;
    let before = g.edge_count() + motif.edge_count();
    let (base, mut fresh) = attach(g, motif);
    fresh.shuffle(rng);
    for &i in fresh.iter().take(k) {
        for &j in &base {
            if rng.gen::<f64>() < p {
                g.add_edge(i, j)?;
            }
        }
    }
    g.ensure_connected(rng)?;
    Ok(g.edge_count() - before)
}

/// Preferential attachment by rejection sampling.
///
/// A base node `j` is proposed uniformly and accepted with probability
/// `deg(j) / max_deg`, degrees taken before composition, which selects
/// targets proportionally to degree. The motif endpoint is uniform. A
/// proposal that repeats an existing edge is discarded and both endpoints
/// are re-drawn.
pub fn ba_growth<R: Rng + ?Sized>(
    g: &mut Graph,
    motif: &Graph,
    m: usize,
    rng: &mut R,
) -> Result<usize> {
    GrowthRule::Ba { m }.validate()?;
    let max_deg = g.max_degree();
    if max_deg == 0 {
        return Err(GmmError::invalid(
            "ba growth needs a base graph with at least one edge",
        ));
    }
    let degree: Vec<(NodeId, usize)> = g.nodes().map(|v| (v, g.degree(v))).collect();
    let reachable = degree.iter().filter(|(_, d)| *d > 0).count();
    let (_, fresh) = attach(g, motif);
    if fresh.is_empty() {
        return Err(GmmError::invalid("motif has no nodes"));
    }
    let capacity = reachable * fresh.len();

    let mut added = 0;
    while added < m {
        if added == capacity {
            warn!("ba growth: all {capacity} motif/base pairs linked after {added} of {m} edges");
            break;
        }
        let (j, deg) = *degree.choose(rng).expect("base nonempty");
        let u: f64 = rng.gen();
        if u * max_deg as f64 >= deg as f64 {
            continue;
        }
        let i = *fresh.choose(rng).expect("motif nonempty");
        if g.add_edge(i, j)? {
            added += 1;
        }
    }
    Ok(added)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TerminationRule {
    NodeCeiling { ceiling: usize },
}

impl TerminationRule {
    pub fn is_satisfied(&self, g: &Graph) -> bool {
        match *self {
            TerminationRule::NodeCeiling { ceiling } => node_ceiling(g, ceiling),
        }
    }

    pub fn ceiling(&self) -> usize {
        match *self {
            TerminationRule::NodeCeiling { ceiling } => ceiling,
        }
    }
}

/// True once the graph holds at least `ceiling` nodes.
pub fn node_ceiling(g: &Graph, ceiling: usize) -> bool {
    g.node_count() >= ceiling
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete_graph, path_graph, petersen, star_graph};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn node_ceiling_examples() {
        assert!(node_ceiling(&Graph::with_nodes(250), 250));
        assert!(!node_ceiling(&Graph::with_nodes(249), 250));
        assert!(!node_ceiling(&Graph::new(), 1));
        let t = TerminationRule::NodeCeiling { ceiling: 10 };
        assert!(t.is_satisfied(&petersen()));
    }

    #[test]
    fn random_growth_bookkeeping() {
        let mut g = petersen();
        let added = random_growth(&mut g, &path_graph(2), &mut rng(0)).unwrap();
        assert_eq!(added, 1);
        assert_eq!((g.node_count(), g.edge_count()), (12, 17));
        assert!(g.is_connected());
        assert!(random_growth(&mut Graph::new(), &path_graph(2), &mut rng(0)).is_err());
    }

    #[test]
    fn er_growth_extremes() {
        let mut g = petersen();
        er_growth(&mut g, &complete_graph(3), 1.0, &mut rng(1)).unwrap();
        assert_eq!(g.edge_count(), 15 + 3 + 30);

        let mut g = petersen();
        er_growth(&mut g, &complete_graph(3), 0.0, &mut rng(1)).unwrap();
        assert_eq!(g.edge_count(), 18);
        assert_eq!(g.connected_components().len(), 2);
    }

    #[test]
    fn er_growth_mean_cross_edges() {
        let runs = 2000;
        let total: usize = (0..runs)
            .map(|s| {
                let mut g = Graph::with_nodes(10);
                er_growth(&mut g, &path_graph(3), 0.5, &mut rng(s)).unwrap()
            })
            .sum();
        let mean = total as f64 / runs as f64;
        assert!((mean - 15.0).abs() < 0.5, "mean {mean}");
    }

    #[test]
    fn ws_growth_stays_connected() {
        let mut g = petersen();
        ws_growth(&mut g, &complete_graph(3), 3, 0.0, &mut rng(2)).unwrap();
        assert_eq!(g.edge_count(), 15 + 3 + 1);
        assert!(g.is_connected());
        for s in 0..50 {
            let mut g = path_graph(5);
            ws_growth(&mut g, &path_graph(3), 10, 0.3, &mut rng(s)).unwrap();
            assert!(g.is_connected());
            assert_eq!(g.node_count(), 8);
        }
    }

    #[test]
    fn ws_growth_oversized_k_matches_full_k() {
        for s in 0..20 {
            let mut a = petersen();
            let mut b = petersen();
            ws_growth(&mut a, &complete_graph(3), 3, 0.4, &mut rng(s)).unwrap();
            ws_growth(&mut b, &complete_graph(3), 99, 0.4, &mut rng(s)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ba_growth_adds_m_edges() {
        let mut g = petersen();
        assert_eq!(
            ba_growth(&mut g, &complete_graph(3), 4, &mut rng(5)).unwrap(),
            4
        );
        assert_eq!(g.edge_count(), 15 + 3 + 4);

        let mut tree = path_graph(6);
        ba_growth(&mut tree, &path_graph(2), 1, &mut rng(6)).unwrap();
        assert_eq!(tree.edge_count(), tree.node_count() - 1);
        assert!(tree.is_connected());
    }

    #[test]
    fn ba_growth_exhaustion_stops() {
        // 2 base nodes x 2 motif nodes = 4 possible cross edges
        let mut g = path_graph(2);
        assert_eq!(
            ba_growth(&mut g, &path_graph(2), 10, &mut rng(0)).unwrap(),
            4
        );
    }

    #[test]
    fn ba_growth_rejects_edgeless_base() {
        let mut g = Graph::with_nodes(4);
        assert!(ba_growth(&mut g, &path_graph(2), 1, &mut rng(0)).is_err());
    }

    #[test]
    fn ba_growth_prefers_hubs() {
        let runs = 5000;
        let hub_hits = (0..runs)
            .filter(|&s| {
                let mut g = star_graph(9);
                ba_growth(&mut g, &path_graph(2), 1, &mut rng(s)).unwrap();
                g.degree(0) == 10
            })
            .count();
        let share = hub_hits as f64 / runs as f64;
        assert!((share - 0.5).abs() < 0.03, "hub share {share}");
    }

    #[test]
    fn validation() {
        assert!(GrowthRule::Er { p: 1.2 }.validate().is_err());
        assert!(GrowthRule::Ws { k: 0, p: 0.1 }.validate().is_err());
        assert!(GrowthRule::Ba { m: 0 }.validate().is_err());
        let rule: GrowthRule = serde_json::from_str(r#"{"kind":"ws","k":3,"p":0.1}"#).unwrap();
        assert_eq!(rule, GrowthRule::Ws { k: 3, p: 0.1 });
    }
}
