//! Recovery experiments against the classic Erdős-Rényi, Watts-Strogatz and
//! Barabási-Albert models, plus the Petersen demonstration run.
//!
//! Every run gets its own seed derived from the master seed and the run's
//! coordinates, so runs are independent of each other and of scheduling.
//! Rows come back ordered by (model, parameter, replicate).

use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beliefs::PmfKind;
use crate::engine::{run, BeliefMode, GmmConfig, Simulation};
use crate::error::{GmmError, Result};
use crate::generators::{ba_graph, er_graph, ring_lattice, ws_graph, GraphSpec};
use crate::graph::{characteristic_path_length, mean_clustering, Graph};
use crate::rules::{GrowthRule, TerminationRule};
use crate::stats::{binomial_fit_report, mean, powerlaw_fit, small_world_stats};

const TAG_ER: u64 = 1;
const TAG_WS: u64 = 2;
const TAG_BA: u64 = 3;
const MODEL_CLASSIC: u64 = 0;
const MODEL_GMM: u64 = 1;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the run at `coords` under `master`.
pub fn derive_seed(master: u64, coords: &[u64]) -> u64 {
    coords
        .iter()
        .fold(splitmix64(master), |h, &c| splitmix64(h ^ splitmix64(c)))
}

/// Runs `f` over `items` on a pool of `jobs` threads, keeping input order.
fn par_map<T, U, F>(items: Vec<T>, jobs: usize, f: F) -> Result<Vec<U>>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Result<U> + Send + Sync,
{
    if jobs <= 1 {
        return items.into_iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| GmmError::Config(format!("thread pool: {e}")))?;
    pool.install(|| items.into_par_iter().map(f).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Classic,
    Gmm,
}

fn default_tau() -> usize {
    3
}

// ---------------------------------------------------------------- ER

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ErExperimentConfig {
    pub sizes: Vec<usize>,
    pub p: f64,
    /// The GMM base has `n - base_offset` nodes.
    pub base_offset: usize,
    pub seeds: usize,
    #[serde(default = "default_tau")]
    pub tau: usize,
    pub pmf: PmfKind,
    pub master_seed: u64,
}

impl Default for ErExperimentConfig {
    fn default() -> Self {
        ErExperimentConfig {
            sizes: vec![50, 75, 100],
            p: 0.5,
            base_offset: 25,
            seeds: 50,
            tau: 3,
            pmf: PmfKind::Explicit,
            master_seed: 2012,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErRow {
    pub model: Model,
    pub n: usize,
    pub seed: u64,
    pub coefficient: f64,
    pub std_error: f64,
    pub r2: f64,
    pub rmse: f64,
    pub aic: f64,
}

pub fn er_gmm_config(cfg: &ErExperimentConfig, n: usize, seed: u64) -> GmmConfig {
    GmmConfig {
        base: GraphSpec::Er {
            n: n - cfg.base_offset,
            p: cfg.p,
        },
        tau: cfg.tau,
        pmf: cfg.pmf,
        growth: GrowthRule::Er { p: cfg.p },
        termination: TerminationRule::NodeCeiling { ceiling: n },
        belief_mode: BeliefMode::Dynamic,
        seed,
    }
}

pub fn experiment_er(cfg: &ErExperimentConfig, jobs: usize) -> Result<Vec<ErRow>> {
    if cfg.sizes.iter().any(|&n| n <= cfg.base_offset) {
        return Err(GmmError::Config(
            "every ER size must exceed base_offset".into(),
        ));
    }
    let mut runs = Vec::new();
    for model in [Model::Classic, Model::Gmm] {
        for &n in &cfg.sizes {
            for rep in 0..cfg.seeds {
                let tag = if model == Model::Classic {
                    MODEL_CLASSIC
                } else {
                    MODEL_GMM
                };
                runs.push((
                    model,
                    n,
                    derive_seed(cfg.master_seed, &[TAG_ER, tag, n as u64, rep as u64]),
                ));
            }
        }
    }
    par_map(runs, jobs, |(model, n, seed)| {
        let g = match model {
            Model::Classic => er_graph(n, cfg.p, &mut ChaCha8Rng::seed_from_u64(seed))?,
            Model::Gmm => run(&er_gmm_config(cfg, n, seed))?.graph,
        };
        let fit = binomial_fit_report(&g, cfg.p)?;
        Ok(ErRow {
            model,
            n,
            seed,
            coefficient: fit.coefficient,
            std_error: fit.std_error,
            r2: fit.r_squared,
            rmse: fit.rmse,
            aic: fit.aic,
        })
    })
}

// ---------------------------------------------------------------- WS

/// 13 log-spaced probabilities in (1e-4, 1]: `10^(-4 + 4i/13)` for `i = 1..=13`.
pub fn default_p_grid() -> Vec<f64> {
    (1..=13)
        .map(|i| 10f64.powf(-4.0 + 4.0 * f64::from(i) / 13.0))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WsExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub n_base: usize,
    pub p_grid: Vec<f64>,
    pub seeds: usize,
    #[serde(default = "default_tau")]
    pub tau: usize,
    pub pmf: PmfKind,
    pub master_seed: u64,
}

impl Default for WsExperimentConfig {
    fn default() -> Self {
        WsExperimentConfig {
            n: 100,
            k: 3,
            n_base: 25,
            p_grid: default_p_grid(),
            seeds: 20,
            tau: 3,
            pmf: PmfKind::Explicit,
            master_seed: 2012,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WsRow {
    pub model: Model,
    pub p: f64,
    pub seed: u64,
    pub clustering: f64,
    pub path_length: f64,
    pub clustering_normalized: f64,
    pub path_length_normalized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WsSummaryRow {
    pub model: Model,
    pub p: f64,
    pub runs: usize,
    pub mean_clustering_normalized: f64,
    pub mean_path_length_normalized: f64,
}

pub fn ws_gmm_config(cfg: &WsExperimentConfig, p: f64, seed: u64) -> GmmConfig {
    GmmConfig {
        base: GraphSpec::RingLattice {
            n: cfg.n_base,
            k: cfg.k,
        },
        tau: cfg.tau,
        pmf: cfg.pmf,
        growth: GrowthRule::Ws { k: cfg.k, p },
        termination: TerminationRule::NodeCeiling { ceiling: cfg.n },
        belief_mode: BeliefMode::Dynamic,
        seed,
    }
}

/// Classic rewired lattice, regenerated from the same stream until connected
/// (path length is undefined otherwise). After 100 failures the last draw is
/// bridged instead.
pub fn connected_ws_graph(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = ws_graph(n, k, p, &mut rng)?;
    for _ in 0..100 {
        if g.is_connected() {
            return Ok(g);
        }
        g = ws_graph(n, k, p, &mut rng)?;
    }
    g.ensure_connected(&mut rng)?;
    Ok(g)
}

pub struct WsOutput {
    pub runs: Vec<WsRow>,
    pub summary: Vec<WsSummaryRow>,
    pub c0: f64,
    pub l0: f64,
}

pub fn experiment_ws(cfg: &WsExperimentConfig, jobs: usize) -> Result<WsOutput> {
    let lattice = ring_lattice(cfg.n, cfg.k)?;
    let c0 = mean_clustering(&lattice)?;
    let l0 = characteristic_path_length(&lattice)?;
    let mut runs = Vec::new();
    for model in [Model::Classic, Model::Gmm] {
        for (pi, &p) in cfg.p_grid.iter().enumerate() {
            for rep in 0..cfg.seeds {
                let tag = if model == Model::Classic {
                    MODEL_CLASSIC
                } else {
                    MODEL_GMM
                };
                runs.push((
                    model,
                    p,
                    derive_seed(cfg.master_seed, &[TAG_WS, tag, pi as u64, rep as u64]),
                ));
            }
        }
    }
    let rows = par_map(runs, jobs, |(model, p, seed)| {
        let g = match model {
            Model::Classic => connected_ws_graph(cfg.n, cfg.k, p, seed)?,
            Model::Gmm => run(&ws_gmm_config(cfg, p, seed))?.graph,
        };
        let s = small_world_stats(&g, c0, l0)?;
        Ok(WsRow {
            model,
            p,
            seed,
            clustering: s.clustering,
            path_length: s.path_length,
            clustering_normalized: s.clustering_normalized,
            path_length_normalized: s.path_length_normalized,
        })
    })?;
    let summary = summarize_ws(&rows);
    Ok(WsOutput {
        runs: rows,
        summary,
        c0,
        l0,
    })
}

fn summarize_ws(rows: &[WsRow]) -> Vec<WsSummaryRow> {
    let mut out: Vec<WsSummaryRow> = Vec::new();
    for chunk in rows.chunk_by(|a, b| a.model == b.model && a.p == b.p) {
        let c: Vec<f64> = chunk.iter().map(|r| r.clustering_normalized).collect();
        let l: Vec<f64> = chunk.iter().map(|r| r.path_length_normalized).collect();
        out.push(WsSummaryRow {
            model: chunk[0].model,
            p: chunk[0].p,
            runs: chunk.len(),
            mean_clustering_normalized: mean(&c),
            mean_path_length_normalized: mean(&l),
        });
    }
    out
}

// ---------------------------------------------------------------- BA

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaExperimentConfig {
    pub n: usize,
    pub ms: Vec<usize>,
    pub classic_runs: usize,
    pub base_sizes: Vec<usize>,
    pub gmm_runs_per_base: usize,
    #[serde(default = "default_tau")]
    pub tau: usize,
    pub pmf: PmfKind,
    pub x_min: usize,
    pub master_seed: u64,
}

impl Default for BaExperimentConfig {
    fn default() -> Self {
        BaExperimentConfig {
            n: 100,
            ms: vec![1, 3, 5, 7],
            classic_runs: 100,
            base_sizes: vec![20, 40, 60, 80],
            gmm_runs_per_base: 25,
            tau: 3,
            pmf: PmfKind::Explicit,
            x_min: 1,
            master_seed: 2012,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaRow {
    pub model: Model,
    pub m: usize,
    /// Base size for GMM runs; absent for the classic model.
    pub n_base: Option<usize>,
    pub seed: u64,
    pub alpha_graphical: f64,
    pub alpha_mle: f64,
    pub x_min: usize,
    pub n_tail: usize,
}

pub fn ba_gmm_config(cfg: &BaExperimentConfig, m: usize, n_base: usize, seed: u64) -> GmmConfig {
    GmmConfig {
        base: GraphSpec::Ba { n: n_base, m },
        tau: cfg.tau,
        pmf: cfg.pmf,
        growth: GrowthRule::Ba { m },
        termination: TerminationRule::NodeCeiling { ceiling: cfg.n },
        belief_mode: BeliefMode::Dynamic,
        seed,
    }
}

pub fn experiment_ba(cfg: &BaExperimentConfig, jobs: usize) -> Result<Vec<BaRow>> {
    let mut runs = Vec::new();
    for &m in &cfg.ms {
        for rep in 0..cfg.classic_runs {
            let seed = derive_seed(
                cfg.master_seed,
                &[TAG_BA, MODEL_CLASSIC, m as u64, 0, rep as u64],
            );
            runs.push((Model::Classic, m, None, seed));
        }
        for &nb in &cfg.base_sizes {
            for rep in 0..cfg.gmm_runs_per_base {
                let seed = derive_seed(
                    cfg.master_seed,
                    &[TAG_BA, MODEL_GMM, m as u64, nb as u64, rep as u64],
                );
                runs.push((Model::Gmm, m, Some(nb), seed));
            }
        }
    }
    // Group by model first, then m, then base size.
    runs.sort_by_key(|&(model, m, nb, _)| (model == Model::Gmm, m, nb));
    par_map(runs, jobs, |(model, m, n_base, seed)| {
        let g = match n_base {
            None => ba_graph(cfg.n, m, &mut ChaCha8Rng::seed_from_u64(seed))?,
            Some(nb) => run(&ba_gmm_config(cfg, m, nb, seed))?.graph,
        };
        let fit = powerlaw_fit(&g, cfg.x_min)?;
        Ok(BaRow {
            model,
            m,
            n_base,
            seed,
            alpha_graphical: fit.alpha_graphical,
            alpha_mle: fit.alpha_mle,
            x_min: fit.x_min,
            n_tail: fit.n_tail,
        })
    })
}

// ---------------------------------------------------------------- demo

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DemoConfig {
    pub ceiling: usize,
    #[serde(default = "default_tau")]
    pub tau: usize,
    pub pmf: PmfKind,
    pub seed: u64,
}

impl Default for DemoConfig {
    fn default() -> Self {
        DemoConfig {
            ceiling: 250,
            tau: 3,
            pmf: PmfKind::Explicit,
            seed: 2012,
        }
    }
}

impl DemoConfig {
    pub fn gmm_config(&self) -> GmmConfig {
        GmmConfig {
            base: GraphSpec::Petersen,
            tau: self.tau,
            pmf: self.pmf,
            growth: GrowthRule::Random,
            termination: TerminationRule::NodeCeiling {
                ceiling: self.ceiling,
            },
            belief_mode: BeliefMode::Dynamic,
            seed: self.seed,
        }
    }
}

/// Petersen base, random attachment, node ceiling.
pub fn demo_simple(cfg: &DemoConfig) -> Result<Simulation> {
    run(&cfg.gmm_config())
}

// ---------------------------------------------------------------- output

/// Settings file for the `experiment` subcommand. Every section is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSuiteConfig {
    pub output_dir: Option<PathBuf>,
    pub er: ErExperimentConfig,
    pub ws: WsExperimentConfig,
    pub ba: BaExperimentConfig,
    pub demo: DemoConfig,
}

impl ExperimentSuiteConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&crate::error::read_file(path)?)?)
    }
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| GmmError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a, C: Serialize> {
    pub experiment: &'a str,
    pub version: &'a str,
    pub jobs_independent: bool,
    pub config: &'a C,
    pub outputs: Vec<ManifestEntry>,
}

#[derive(Debug, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub rows: usize,
}

/// Writes CSV files plus `<name>_manifest.json` into `dir`.
pub fn write_outputs<C: Serialize>(
    dir: &Path,
    name: &str,
    config: &C,
    files: &[(String, String, usize)],
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut outputs = Vec::new();
    for (file, body, rows) in files {
        let path = dir.join(file);
        fs::write(&path, body)?;
        written.push(path);
        outputs.push(ManifestEntry {
            file: file.clone(),
            rows: *rows,
        });
    }
    let manifest = Manifest {
        experiment: name,
        version: env!("CARGO_PKG_VERSION"),
        jobs_independent: true,
        config,
        outputs,
    };
    let path = dir.join(format!("{name}_manifest.json"));
    fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    written.push(path);
    Ok(written)
}
