use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use gmm::engine::{replay, run_with, GmmConfig, RunOptions, SimulationTrace};
use gmm::experiments::{
    demo_simple, experiment_ba, experiment_er, experiment_ws, to_csv, write_outputs,
    ExperimentSuiteConfig,
};
use gmm::generators::GraphSpec;
use gmm::graph::{read_edge_list, serialize_edge_list, write_edge_list, DegreeDistribution, Graph};
use gmm::motif::enumerate_motifs;
use gmm::stats::{binomial_fit_from_distribution, powerlaw_graphical, powerlaw_mle};
use gmm::{census, par_census, GmmError, Result};

#[derive(Parser)]
#[command(
    name = "gmm",
    version,
    about = "Grow networks from graph motif beliefs"
)]
struct Cli {
    /// Worker threads for census and experiments. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Increase log verbosity (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Print the motif catalog for a given tau.
    Motifs {
        #[arg(long, default_value_t = 3)]
        tau: usize,
    },
    /// Count induced motif occurrences in a graph.
    Census {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        tau: usize,
        /// Report injective mapping counts instead of occurrences.
        #[arg(long)]
        mappings: bool,
    },
    /// Run one simulation from a JSON config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Rebuild a simulated graph from its trace.
    Replay {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit a degree distribution.
    Fit(FitArgs),
    /// Run a recovery experiment.
    Experiment {
        #[arg(value_enum)]
        which: Experiment,
        #[command(flatten)]
        opts: ExperimentArgs,
    },
    /// Petersen base, random attachment, 250-node ceiling.
    Demo(ExperimentArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    model: GenModel,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenModel {
    Er,
    Ws,
    Ba,
    RingLattice,
    Petersen,
    Complete,
    Path,
    Cycle,
    Star,
}

#[derive(Args)]
struct FitArgs {
    /// Edge-list input.
    #[arg(long, conflicts_with = "degrees", required_unless_present = "degrees")]
    graph: Option<PathBuf>,
    /// One degree per line.
    #[arg(long)]
    degrees: Option<PathBuf>,
    #[arg(long, value_enum)]
    method: FitMethod,
    /// Edge probability for the binomial reference.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    x_min: usize,
    /// Also write the report as a one-row CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FitMethod {
    Binomial,
    PowerlawGraphical,
    PowerlawMle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    Er,
    Ws,
    Ba,
    Demo,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON overriding the defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be at least 1");
        return ExitCode::from(1);
    }
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    let jobs = cli.jobs;
    match cli.command {
        Command::Generate(args) => generate(args),
        Command::Motifs { tau } => motifs(tau),
        Command::Census {
            graph,
            tau,
            mappings,
        } => census_cmd(&graph, tau, mappings, jobs),
        Command::Simulate {
            config,
            out,
            trace,
            seed,
        } => simulate(&config, &out, trace.as_deref(), seed, jobs),
        Command::Replay { config, trace, out } => {
            let config = GmmConfig::load(config)?;
            let trace = SimulationTrace::from_json(&gmm::error::read_file(trace)?)?;
            write_edge_list(&replay(&trace, &config)?, out)
        }
        Command::Fit(args) => fit(args),
        Command::Experiment { which, opts } => experiment(which, opts, jobs),
        Command::Demo(opts) => experiment(Experiment::Demo, opts, jobs),
    }
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| GmmError::InvalidParameter(format!("--{flag} is required for this model")))
}

fn generate(a: GenerateArgs) -> Result<()> {
    let spec = match a.model {
        GenModel::Er => GraphSpec::Er {
            n: need(a.n, "n")?,
            p: need(a.p, "p")?,
        },
        GenModel::Ws => GraphSpec::Ws {
            n: need(a.n, "n")?,
            k: need(a.k, "k")?,
            p: need(a.p, "p")?,
        },
        GenModel::Ba => GraphSpec::Ba {
            n: need(a.n, "n")?,
            m: need(a.m, "m")?,
        },
        GenModel::RingLattice => GraphSpec::RingLattice {
            n: need(a.n, "n")?,
            k: need(a.k, "k")?,
        },
        GenModel::Petersen => GraphSpec::Petersen,
        GenModel::Complete => GraphSpec::Complete { n: need(a.n, "n")? },
        GenModel::Path => GraphSpec::Path { n: need(a.n, "n")? },
        GenModel::Cycle => GraphSpec::Cycle { n: need(a.n, "n")? },
        GenModel::Star => GraphSpec::Star {
            leaves: need(a.n, "n")?,
        },
    };
    let g = spec.build(&mut ChaCha8Rng::seed_from_u64(a.seed))?;
    emit(a.out.as_deref(), &serialize_edge_list(&g))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn motifs(tau: usize) -> Result<()> {
    let set = enumerate_motifs(tau)?;
    let mut out = String::from("index,V,E,certificate,edges\n");
    for m in &set {
        let edges: Vec<String> = m.graph().edges().map(|(u, v)| format!("{u}-{v}")).collect();
        out += &format!(
            "{},{},{},{},{}\n",
            m.index,
            m.nodes,
            m.edges,
            m.certificate,
            edges.join(" ")
        );
    }
    emit(None, &out)
}

fn census_cmd(path: &Path, tau: usize, mappings: bool, jobs: usize) -> Result<()> {
    let host = read_edge_list(path)?;
    let set = enumerate_motifs(tau)?;
    let c = if jobs > 1 {
        pool(jobs)?.install(|| par_census(&set, &host))
    } else {
        census(&set, &host)
    };
    let counts = if mappings {
        &c.mapping_counts
    } else {
        &c.counts
    };
    let mut out = String::from("index,V,E,count\n");
    for (m, n) in set.iter().zip(counts) {
        out += &format!("{},{},{},{}\n", m.index, m.nodes, m.edges, n);
    }
    emit(None, &out)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| GmmError::Config(format!("thread pool: {e}")))
}

fn simulate(
    config: &Path,
    out: &Path,
    trace: Option<&Path>,
    seed: Option<u64>,
    jobs: usize,
) -> Result<()> {
    let mut config = GmmConfig::load(config)?;
    if let Some(s) = seed {
        config.seed = s;
    }
    let options = RunOptions {
        parallel_census: jobs > 1,
    };
    let sim = pool(jobs)?.install(|| run_with(&config, options))?;
    info!(
        "{} iterations, {} nodes, {} edges, {:?}",
        sim.trace.records.len(),
        sim.graph.node_count(),
        sim.graph.edge_count(),
        sim.trace.wall_time.unwrap_or_default()
    );
    write_edge_list(&sim.graph, out)?;
    if let Some(path) = trace {
        fs::write(path, sim.trace.to_json()? + "\n")?;
    }
    Ok(())
}

fn read_degrees(path: &Path) -> Result<Vec<usize>> {
    let text = gmm::error::read_file(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        out.push(t.parse().map_err(|_| GmmError::Parse {
            line: i + 1,
            message: format!("expected a degree, found {t:?}"),
        })?);
    }
    Ok(out)
}

#[derive(Serialize)]
struct FitOutput {
    method: &'static str,
    nodes: usize,
    #[serde(flatten)]
    body: FitBody,
}

#[derive(Serialize)]
#[serde(untagged)]
enum FitBody {
    Binomial(gmm::stats::FitReport),
    Alpha { alpha: f64, x_min: Option<usize> },
}

fn fit(a: FitArgs) -> Result<()> {
    let degrees = match (&a.graph, &a.degrees) {
        (Some(g), _) => {
            let g: Graph = read_edge_list(g)?;
            g.nodes().map(|v| g.degree(v)).collect()
        }
        (None, Some(d)) => read_degrees(d)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let dd = DegreeDistribution::from_degrees(&degrees)?;
    let (method, body) = match a.method {
        FitMethod::Binomial => (
            "binomial",
            FitBody::Binomial(binomial_fit_from_distribution(&dd, a.p)?),
        ),
        FitMethod::PowerlawGraphical => (
            "powerlaw-graphical",
            FitBody::Alpha {
                alpha: powerlaw_graphical(&dd)?,
                x_min: None,
            },
        ),
        FitMethod::PowerlawMle => (
            "powerlaw-mle",
            FitBody::Alpha {
                alpha: powerlaw_mle(&degrees, a.x_min)?,
                x_min: Some(a.x_min),
            },
        ),
    };
    let report = FitOutput {
        method,
        nodes: degrees.len(),
        body,
    };
    emit(None, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    if let Some(path) = a.csv {
        let row = serde_json::to_value(&report)?;
        let obj = row.as_object().expect("report is an object");
        let header: Vec<&str> = obj.keys().map(String::as_str).collect();
        let values: Vec<String> = obj
            .values()
            .map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_string))
            .collect();
        fs::write(
            path,
            format!("{}\n{}\n", header.join(","), values.join(",")),
        )?;
    }
    Ok(())
}

fn experiment(which: Experiment, opts: ExperimentArgs, jobs: usize) -> Result<()> {
    let mut suite = match &opts.config {
        Some(p) => ExperimentSuiteConfig::load(p)?,
        None => ExperimentSuiteConfig::default(),
    };
    if let Some(s) = opts.seed {
        suite.er.master_seed = s;
        suite.ws.master_seed = s;
        suite.ba.master_seed = s;
        suite.demo.seed = s;
    }
    let dir = opts
        .out_dir
        .or_else(|| suite.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("results"));
    let written = match which {
        Experiment::Er => {
            let rows = experiment_er(&suite.er, jobs)?;
            write_outputs(
                &dir,
                "er",
                &suite.er,
                &[("er.csv".into(), to_csv(&rows)?, rows.len())],
            )?
        }
        Experiment::Ws => {
            let out = experiment_ws(&suite.ws, jobs)?;
            write_outputs(
                &dir,
                "ws",
                &suite.ws,
                &[
                    ("ws_runs.csv".into(), to_csv(&out.runs)?, out.runs.len()),
                    (
                        "ws_summary.csv".into(),
                        to_csv(&out.summary)?,
                        out.summary.len(),
                    ),
                ],
            )?
        }
        Experiment::Ba => {
            let rows = experiment_ba(&suite.ba, jobs)?;
            write_outputs(
                &dir,
                "ba",
                &suite.ba,
                &[("ba.csv".into(), to_csv(&rows)?, rows.len())],
            )?
        }
        Experiment::Demo => {
            let sim = demo_simple(&suite.demo)?;
            write_outputs(
                &dir,
                "demo",
                &suite.demo,
                &[
                    (
                        "demo.edges".into(),
                        serialize_edge_list(&sim.graph),
                        sim.graph.edge_count(),
                    ),
                    (
                        "demo_trace.json".into(),
                        sim.trace.to_json()? + "\n",
                        sim.trace.records.len(),
                    ),
                ],
            )?
        }
    };
    for path in written {
        info!("wrote {}", path.display());
    }
    Ok(())
}
