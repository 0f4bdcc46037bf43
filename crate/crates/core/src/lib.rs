//! Graph motif model.
//!
//! Networks grow by repeatedly drawing a connected motif from a belief
//! distribution formed over the motif census of the current graph, then
//! wiring the motif in with a growth rule until a termination rule fires.
//!
//! * [`motif`] builds the ordered catalog of connected motifs up to `tau` nodes.
//! * [`census`] counts induced motif occurrences in a host graph.
//! * [`beliefs`] turns a census into a probability distribution over the catalog.
//! * [`rules`] holds growth and termination rules; [`engine`] runs the loop.
//! * [`generators`], [`stats`] and [`experiments`] cover the classic
//!   baselines and their evaluation.

pub mod beliefs;
pub mod census;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod motif;
pub mod rules;
pub mod stats;

pub use beliefs::{
    explicit_pmf, poisson_pmf, sample_motif, LambdaMode, MotifDistribution, PmfKind,
};
pub use census::{brute_force_census, census, count_induced_occurrences, par_census, MotifCensus};
pub use engine::{
    replay, run, run_with, BeliefMode, GmmConfig, RunOptions, Simulation, SimulationTrace,
};
pub use error::{GmmError, Result};
pub use graph::{Graph, NodeId};
pub use motif::{canonical_certificate, enumerate_motifs, Certificate, Motif, MotifSet};
pub use rules::{GrowthRule, TerminationRule};
