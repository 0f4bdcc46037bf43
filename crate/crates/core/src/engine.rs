//! The motif-model growth loop: census, beliefs, draw, grow, repeat until
//! the termination rule fires.
//!
//! A simulation owns one ChaCha8 stream seeded from the config. The base
//! graph (when randomly generated) draws from it first; each iteration then
//! draws one uniform for the motif choice followed by whatever the growth
//! rule consumes. [`replay`] relies on this order.

use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::beliefs::{sample_motif, MotifDistribution, PmfKind};
use crate::census::{census, par_census};
use crate::error::{GmmError, Result};
use crate::generators::GraphSpec;
use crate::graph::Graph;
use crate::motif::{check_tau, enumerate_motifs, MotifSet};
use crate::rules::{GrowthRule, TerminationRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BeliefMode {
    /// Census and PMF recomputed from the whole current graph every iteration.
    #[default]
    Dynamic,
    /// Census and PMF computed once from the base graph.
    Static,
}

fn default_tau() -> usize {
    3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GmmConfig {
    pub base: GraphSpec,
    #[serde(default = "default_tau")]
    pub tau: usize,
    #[serde(default)]
    pub pmf: PmfKind,
    pub growth: GrowthRule,
    pub termination: TerminationRule,
    #[serde(default)]
    pub belief_mode: BeliefMode,
    #[serde(default)]
    pub seed: u64,
}

impl GmmConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: GmmConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&crate::error::read_file(path)?)
    }

    /// Checks everything that does not require building the base graph.
    pub fn validate(&self) -> Result<()> {
        check_tau(self.tau)?;
        self.growth.validate()?;
        if self.termination.ceiling() == 0 {
            return Err(GmmError::Config("node ceiling must be positive".into()));
        }
        Ok(())
    }
}

/// One growth step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub motif_index: usize,
    pub pmf: Vec<f64>,
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationTrace {
    pub seed: u64,
    pub tau: usize,
    pub pmf: PmfKind,
    pub belief_mode: BeliefMode,
    pub base_nodes: usize,
    pub base_edges: usize,
    pub census_evaluations: usize,
    pub records: Vec<TraceRecord>,
    /// Not serialized, so trace files depend only on the config.
    #[serde(skip)]
    pub wall_time: Option<Duration>,
}

impl SimulationTrace {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Internal consistency: consecutive iterations, growing node counts,
    /// in-range motif indices and normalized PMFs.
    pub fn validate(&self, catalog_len: usize) -> Result<()> {
        let mut last_nodes = self.base_nodes;
        for (i, r) in self.records.iter().enumerate() {
            let bad = |msg: String| GmmError::TraceMismatch(format!("record {}: {msg}", i + 1));
            if r.iteration != i + 1 {
                return Err(bad(format!("iteration {} out of sequence", r.iteration)));
            }
            if r.nodes <= last_nodes {
                return Err(bad(format!(
                    "node count {} does not exceed previous {last_nodes}",
                    r.nodes
                )));
            }
            if r.motif_index >= catalog_len {
                return Err(bad(format!(
                    "motif index {} outside catalog of {catalog_len}",
                    r.motif_index
                )));
            }
            if r.pmf.len() != catalog_len {
                return Err(bad(format!("pmf has {} entries", r.pmf.len())));
            }
            let sum: f64 = r.pmf.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(bad(format!("pmf sums to {sum}")));
            }
            last_nodes = r.nodes;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Fan the per-iteration census out over the current rayon pool.
    pub parallel_census: bool,
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub graph: Graph,
    pub trace: SimulationTrace,
}

pub fn run(config: &GmmConfig) -> Result<Simulation> {
    run_with(config, RunOptions::default())
}

pub fn run_with(config: &GmmConfig, options: RunOptions) -> Result<Simulation> {
    let started = Instant::now();
    config.validate()?;
    let set = enumerate_motifs(config.tau)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut graph = config.base.build(&mut rng)?;
    if graph.is_empty() {
        return Err(GmmError::EmptyGraph);
    }
    if config.termination.is_satisfied(&graph) {
        return Err(GmmError::Config(format!(
            "node ceiling {} must exceed the base graph's {} nodes",
            config.termination.ceiling(),
            graph.node_count()
        )));
    }

    let beliefs = |g: &Graph| -> Result<MotifDistribution> {
        let c = if options.parallel_census {
            par_census(&set, g)
        } else {
            census(&set, g)
        };
        MotifDistribution::from_census(&c, config.pmf)
    };

    let mut trace = SimulationTrace {
        seed: config.seed,
        tau: config.tau,
        pmf: config.pmf,
        belief_mode: config.belief_mode,
        base_nodes: graph.node_count(),
        base_edges: graph.edge_count(),
        census_evaluations: 0,
        records: Vec::new(),
        wall_time: None,
    };

    let fixed = match config.belief_mode {
        BeliefMode::Static => {
            trace.census_evaluations += 1;
            Some(beliefs(&graph)?)
        }
        BeliefMode::Dynamic => None,
    };

    while !config.termination.is_satisfied(&graph) {
        let dist = match &fixed {
            Some(d) => d.clone(),
            None => {
                trace.census_evaluations += 1;
                beliefs(&graph)?
            }
        };
        let index = sample_motif(&dist, &mut rng);
        let motif = set
            .get(index)
            .expect("sampled index in catalog")
            .instantiate();
        config.growth.apply(&mut graph, &motif, &mut rng)?;
        trace.records.push(TraceRecord {
            iteration: trace.records.len() + 1,
            motif_index: index,
            pmf: dist.probs,
            nodes: graph.node_count(),
            edges: graph.edge_count(),
        });
    }
    trace.wall_time = Some(started.elapsed());
    Ok(Simulation { graph, trace })
}

/// Rebuilds the final graph from recorded motif choices without any census.
pub fn replay(trace: &SimulationTrace, config: &GmmConfig) -> Result<Graph> {
    config.validate()?;
    let mismatch = |what: &str| GmmError::TraceMismatch(what.to_string());
    if trace.seed != config.seed {
        return Err(mismatch("seed differs"));
    }
    if trace.tau != config.tau {
        return Err(mismatch("tau differs"));
    }
    if trace.pmf != config.pmf || trace.belief_mode != config.belief_mode {
        return Err(mismatch("belief settings differ"));
    }
    let set: MotifSet = enumerate_motifs(config.tau)?;
    trace.validate(set.len())?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut graph = config.base.build(&mut rng)?;
    if graph.node_count() != trace.base_nodes || graph.edge_count() != trace.base_edges {
        return Err(mismatch("base graph differs"));
    }
    for r in &trace.records {
        // the motif draw
        let _: f64 = rng.gen();
        let motif = set
            .get(r.motif_index)
            .expect("validated index")
            .instantiate();
        config.growth.apply(&mut graph, &motif, &mut rng)?;
        if graph.node_count() != r.nodes || graph.edge_count() != r.edges {
            return Err(GmmError::TraceMismatch(format!(
                "iteration {}: rebuilt {} nodes / {} edges, trace has {} / {}",
                r.iteration,
                graph.node_count(),
                graph.edge_count(),
                r.nodes,
                r.edges
            )));
        }
    }
    if !config.termination.is_satisfied(&graph) {
        return Err(mismatch("trace ends before the termination rule fires"));
    }
    Ok(graph)
}
