//! `dpdepth` command-line front end.
//!
//! Exit status: 0 on success, 2 on a usage error, 1 on a runtime error.
//! Each run echoes its resolved configuration, seed included, to stderr.

mod output;
mod parse;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dpdepth::data::{load_dataset, sample_directions, DataFormat};
use dpdepth::depth::SimplicialPlan;
use dpdepth::harness::{figure1_data, run_experiment, ExperimentConfig};
use dpdepth::mechanisms::{
    exact_grid_mechanism, nonprivate_median, private_depth_value, private_median, ChainConfig,
    DirectionSpec, MechanismConfig, OptimizerConfig, SamplerKind,
};
use dpdepth::theory::{
    alpha_dversion, alpha_gaussian, concentration_bound, default_vgrid, direction_budget,
    sample_complexity, BoundInputs, PopulationModel, PriorGeometry, UniversalConstants,
};
use dpdepth::{Dataset, DepthEvaluator, DepthKind, DirectionSet, RngStream};

use output::{Cell, Format, Output, Record};
use parse::{GridArg, PriorArg};

const DIRECTIONS_STREAM: u64 = 1;
const SIMPLICES_STREAM: u64 = 2;
const NOISE_STREAM: u64 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "dpdepth",
    version,
    about = "Differentially private depth-based medians"
)]
struct Cli {
    /// Root seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Depth of one point with respect to a dataset.
    Depth(DepthArgs),
    /// Non-private smoothed IDD median.
    Median(MedianArgs),
    /// Exponential-mechanism median.
    PrivateMedian(PrivateMedianArgs),
    /// Depth value released through the Laplace mechanism.
    PrivateDepth(PrivateDepthArgs),
    /// Discrepancy function alpha(t) of a population model.
    Alpha(AlphaArgs),
    /// Concentration bound on the private median's error.
    Bound(BoundArgs),
    /// Sample size sufficient for a target accuracy.
    SampleComplexity(SampleComplexityArgs),
    /// Number of Monte Carlo directions for a target sup-error.
    DirectionsBudget(DirectionsBudgetArgs),
    /// Contamination experiment grid.
    Experiment(ExperimentArgs),
    /// log(1/alpha(t)) under Cauchy marginals across dimensions.
    Figure1(Figure1Args),
}

#[derive(Args, Debug)]
struct DataArgs {
    /// CSV (comma-separated reals) or JSONL (one array per line).
    #[arg(long)]
    data: PathBuf,
    /// Skip the first CSV line.
    #[arg(long)]
    header: bool,
}

impl DataArgs {
    fn load(&self) -> Result<Dataset> {
        load_dataset(&self.data, DataFormat::from_path(&self.data), self.header)
            .with_context(|| format!("reading {}", self.data.display()))
    }
}

#[derive(Args, Debug)]
struct DepthSetup {
    /// Random directions for projection depths (unused in one dimension).
    #[arg(long, default_value_t = 1000)]
    dirs: usize,
    /// Smoothing parameter of sidd.
    #[arg(long, default_value_t = 10.0)]
    s: f64,
    /// Sampled vertex tuples for simplicial depth.
    #[arg(long, default_value_t = 2000)]
    trials: usize,
    /// Enumerate every tuple for simplicial depth.
    #[arg(long)]
    exact: bool,
}

impl DepthSetup {
    fn kind(&self, label: &str) -> Result<DepthKind> {
        Ok(DepthKind::parse_with(label, self.s)?)
    }

    fn evaluator<'a>(
        &self,
        data: &'a Dataset,
        kind: DepthKind,
        root: RngStream,
    ) -> Result<DepthEvaluator<'a>> {
        let d = data.d();
        let dirs = if kind.uses_directions() && d > 1 {
            Some(sample_directions(
                d,
                self.dirs,
                root.derive(&[DIRECTIONS_STREAM]),
            )?)
        } else {
            None
        };
        let plan = if self.exact {
            SimplicialPlan::Exact
        } else {
            SimplicialPlan::Sampled {
                trials: self.trials,
                stream: root.derive(&[SIMPLICES_STREAM]),
            }
        };
        Ok(DepthEvaluator::new(data, kind, dirs.as_ref(), plan)?)
    }

    fn echo(&self) -> serde_json::Value {
        json!({ "dirs": self.dirs, "s": self.s, "trials": self.trials, "exact": self.exact })
    }
}

#[derive(Args, Debug)]
struct DepthArgs {
    #[command(flatten)]
    data: DataArgs,
    /// hd, smd, sd, msd, idd, irw or sidd.
    #[arg(long)]
    kind: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Vec<f64>,
    #[command(flatten)]
    setup: DepthSetup,
}

#[derive(Args, Debug)]
struct MedianArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, default_value_t = 100)]
    dirs: usize,
    #[arg(long, default_value_t = 10.0)]
    s: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// Initial learning rate (default: the dimension).
    #[arg(long)]
    learning_rate: Option<f64>,
    /// Starting point (default: coordinate-wise median).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    init: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct PrivateMedianArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long, default_value = "sidd")]
    depth: String,
    #[arg(long)]
    epsilon: f64,
    /// gauss:<center>:<sigma> or cube:<center>:<side>; center 0 is the origin.
    #[arg(long, value_parser = PriorArg::parse, default_value = "gauss:0:sqrt(25d)")]
    prior: PriorArg,
    /// mala, rwm or exact-grid.
    #[arg(long, default_value = "mala")]
    sampler: String,
    /// Grid lo:hi:count per axis for the exact-grid sampler.
    #[arg(long, value_parser = GridArg::parse, allow_hyphen_values = true)]
    grid: Option<GridArg>,
    #[arg(long, default_value_t = 2000)]
    burn_in: usize,
    #[arg(long, default_value_t = 500)]
    kept: usize,
    #[arg(long, default_value_t = 1)]
    thinning: usize,
    /// Fixed proposal scale (default: tuned).
    #[arg(long)]
    step_size: Option<f64>,
    #[arg(long, default_value_t = 100)]
    dirs: usize,
    #[arg(long, default_value_t = 10.0)]
    s: f64,
    #[arg(long, default_value_t = 2000)]
    trials: usize,
}

#[derive(Args, Debug)]
struct PrivateDepthArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    kind: String,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Vec<f64>,
    #[arg(long)]
    epsilon: f64,
    #[command(flatten)]
    setup: DepthSetup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ModelKind {
    Gaussian,
    Cauchy,
}

#[derive(Args, Debug)]
struct AlphaArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    /// hd, irw or idd.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    t: f64,
    /// Dimension; implied by --eigenvalues or --scales when given.
    #[arg(long)]
    d: Option<usize>,
    /// Covariance eigenvalues of the Gaussian model (default: all 1).
    #[arg(long, value_delimiter = ',')]
    eigenvalues: Option<Vec<f64>>,
    /// Cauchy marginal scales (default: all 1).
    #[arg(long, value_delimiter = ',')]
    scales: Option<Vec<f64>>,
    #[arg(long, default_value_t = 10_000)]
    dirs: usize,
    /// Random candidates for the maximizing direction (Cauchy model).
    #[arg(long, default_value_t = 256)]
    vgrid: usize,
}

#[derive(Args, Debug)]
struct ConstantArgs {
    #[arg(long, default_value_t = 1.0)]
    c1: f64,
    #[arg(long, default_value_t = 1.0)]
    c2: f64,
    #[arg(long = "C", default_value_t = 1.0)]
    big_c: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
}

impl ConstantArgs {
    fn resolve(&self) -> UniversalConstants {
        UniversalConstants {
            c1: self.c1,
            c2: self.c2,
            big_c: self.big_c,
            c: self.c,
        }
    }
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long)]
    n: f64,
    #[arg(long)]
    d: f64,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 0.05)]
    gamma: f64,
    #[arg(long = "K")]
    k: f64,
    #[arg(long)]
    vc: f64,
    #[arg(long = "L", default_value_t = 1.0)]
    lipschitz: f64,
    /// alpha(t).
    #[arg(long)]
    alpha: f64,
    /// Prior rate function I(t).
    #[arg(long)]
    rate: f64,
    /// Calibration psi(beta).
    #[arg(long, allow_hyphen_values = true)]
    psi: f64,
    #[command(flatten)]
    constants: ConstantArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum PriorKind {
    Gauss,
    Cube,
}

#[derive(Args, Debug)]
struct SampleComplexityArgs {
    #[arg(long, value_enum)]
    prior: PriorKind,
    #[arg(long)]
    d: usize,
    /// alpha(t) at the target accuracy.
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    gamma: f64,
    #[arg(long = "K")]
    k: f64,
    #[arg(long)]
    vc: f64,
    #[arg(long = "L", default_value_t = 1.0)]
    lipschitz: f64,
    /// Gaussian prior standard deviation.
    #[arg(long, default_value_t = 1.0)]
    sigma_p: f64,
    /// Distance from the prior center to the median set.
    #[arg(long, default_value_t = 0.0)]
    dist: f64,
    /// Cube prior side length.
    #[arg(long, default_value_t = 1.0)]
    side: f64,
    /// Distance from the median set to the nearest cube face.
    #[arg(long, default_value_t = 0.5)]
    face_distance: f64,
    #[command(flatten)]
    constants: ConstantArgs,
}

#[derive(Args, Debug)]
struct DirectionsBudgetArgs {
    #[arg(long)]
    t: f64,
    #[arg(long)]
    gamma: f64,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    c1: f64,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// TOML experiment config; missing keys take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    replications: Option<usize>,
    /// Record zero wall time so the table is reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct Figure1Args {
    #[arg(long, value_delimiter = ',', default_value = "1,2,5,10,20,50,100")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, default_value_t = 10_000)]
    dirs: usize,
    #[arg(long, default_value_t = 256)]
    vgrid: usize,
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
}

fn echo(command: &str, seed: u64, params: serde_json::Value) {
    eprintln!(
        "{}",
        json!({ "command": command, "seed": seed, "params": params })
    );
}

fn real(k: &str, v: f64) -> (String, Cell) {
    (k.to_string(), Cell::Real(v))
}

fn count(k: &str, v: u64) -> (String, Cell) {
    (k.to_string(), Cell::Count(v))
}

fn label(k: &str, v: &str) -> (String, Cell) {
    (k.to_string(), Cell::Label(v.to_string()))
}

fn vector(k: &str, v: Vec<f64>) -> (String, Cell) {
    (k.to_string(), Cell::Vector(v))
}

fn run(cli: &Cli) -> Result<Output> {
    let seed = cli.seed.unwrap_or(0);
    let root = RngStream::new(seed, 0);
    match &cli.command {
        Command::Depth(a) => {
            let data = a.data.load()?;
            let kind = a.setup.kind(&a.kind)?;
            echo(
                "depth",
                seed,
                json!({ "data": a.data.data, "kind": kind.to_string(), "point": a.point, "setup": a.setup.echo() }),
            );
            let ev = a.setup.evaluator(&data, kind, root)?;
            check_point(&a.point, &data)?;
            Ok(Output::single(
                vec![real("depth", ev.depth(&a.point))],
                &["depth"],
            ))
        }
        Command::Median(a) => {
            let data = a.data.load()?;
            let opt = OptimizerConfig {
                steps: a.steps,
                learning_rate: a.learning_rate,
                init: a.init.clone(),
                ..OptimizerConfig::default()
            };
            echo(
                "median",
                seed,
                json!({ "data": a.data.data, "dirs": a.dirs, "s": a.s, "optimizer": opt }),
            );
            let dirs = if data.d() > 1 {
                Some(sample_directions(
                    data.d(),
                    a.dirs,
                    root.derive(&[DIRECTIONS_STREAM]),
                )?)
            } else {
                None
            };
            let m = nonprivate_median(&data, dirs.as_ref(), a.s, &opt)?;
            Ok(Output::single(vec![vector("median", m)], &["median"]))
        }
        Command::PrivateMedian(a) => private_median_cmd(a, seed, root),
        Command::PrivateDepth(a) => {
            let data = a.data.load()?;
            let kind = a.setup.kind(&a.kind)?;
            echo(
                "private-depth",
                seed,
                json!({ "data": a.data.data, "kind": kind.to_string(), "point": a.point, "epsilon": a.epsilon, "setup": a.setup.echo() }),
            );
            let ev = a.setup.evaluator(&data, kind, root)?;
            check_point(&a.point, &data)?;
            let r = private_depth_value(&a.point, &ev, a.epsilon, root.derive(&[NOISE_STREAM]))?;
            Ok(Output::single(
                vec![
                    real("value", r.value),
                    real("noise_scale", r.noise_scale),
                    count("seed", seed),
                ],
                &["value"],
            ))
        }
        Command::Alpha(a) => alpha_cmd(a, seed, root),
        Command::Bound(a) => {
            let inputs = BoundInputs {
                n: a.n,
                d: a.d,
                epsilon: a.epsilon,
                t: a.t,
                gamma: a.gamma,
                k: a.k,
                vc: a.vc,
                lipschitz: a.lipschitz,
                constants: a.constants.resolve(),
            };
            echo(
                "bound",
                seed,
                json!({ "inputs": inputs, "alpha": a.alpha, "rate": a.rate, "psi": a.psi }),
            );
            let b = concentration_bound(&inputs, a.alpha, a.rate, a.psi)?;
            Ok(Output::single(vec![real("bound", b)], &["bound"]))
        }
        Command::SampleComplexity(a) => {
            let geometry = match a.prior {
                PriorKind::Gauss => PriorGeometry::Gaussian {
                    sigma_p: a.sigma_p,
                    dist: a.dist,
                },
                PriorKind::Cube => PriorGeometry::Cube {
                    side: a.side,
                    face_distance: a.face_distance,
                },
            };
            let constants = a.constants.resolve();
            let inputs = BoundInputs {
                n: 1.0,
                d: a.d as f64,
                epsilon: a.epsilon,
                t: 0.0,
                gamma: a.gamma,
                k: a.k,
                vc: a.vc,
                lipschitz: a.lipschitz,
                constants,
            };
            echo(
                "sample-complexity",
                seed,
                json!({ "geometry": geometry, "inputs": inputs, "alpha": a.alpha }),
            );
            let n = sample_complexity(geometry, &inputs, a.alpha)?;
            let note = format!(
                "up to universal constants (c1={}, c2={}, C={}, c={})",
                constants.c1, constants.c2, constants.big_c, constants.c
            );
            let mut out = Output::single(vec![count("n", n), label("note", &note)], &["n"]);
            out.text.push(note);
            Ok(out)
        }
        Command::DirectionsBudget(a) => {
            echo(
                "directions-budget",
                seed,
                json!({ "t": a.t, "gamma": a.gamma, "d": a.d, "n": a.n, "c1": a.c1 }),
            );
            let m = direction_budget(a.t, a.gamma, a.d, a.n, a.c1)?;
            Ok(Output::single(
                vec![count("directions", m)],
                &["directions"],
            ))
        }
        Command::Experiment(a) => experiment_cmd(a, cli.seed),
        Command::Figure1(a) => {
            echo(
                "figure1",
                seed,
                json!({ "dims": a.dims, "t": a.t, "dirs": a.dirs, "vgrid": a.vgrid, "scale": a.scale }),
            );
            let rows = figure1_data(&a.dims, a.t, a.dirs, a.vgrid, a.scale, root)?;
            Ok(Output::table(
                rows.into_iter()
                    .map(|r| {
                        vec![
                            count("d", r.d as u64),
                            label("depth", &r.depth),
                            real("alpha", r.alpha),
                            real("log_inverse_alpha", r.log_inverse_alpha),
                        ]
                    })
                    .collect(),
            ))
        }
    }
}

fn check_point(x: &[f64], data: &Dataset) -> Result<()> {
    anyhow::ensure!(
        x.len() == data.d(),
        "point has {} coordinates but the data has dimension {}",
        x.len(),
        data.d()
    );
    Ok(())
}

fn private_median_cmd(a: &PrivateMedianArgs, seed: u64, root: RngStream) -> Result<Output> {
    let data = a.data.load()?;
    let kind = DepthKind::parse_with(&a.depth, a.s)?;
    let sampler: SamplerKind = a.sampler.parse()?;
    let prior = a.prior.resolve(data.d())?;
    let mut cfg = MechanismConfig::new(a.epsilon, kind, prior, sampler);
    cfg.chain = ChainConfig {
        burn_in: a.burn_in,
        kept: a.kept,
        step_size: a.step_size,
        thinning: a.thinning,
        init: None,
    };
    cfg.directions = DirectionSpec::Sampled { count: a.dirs };
    cfg.simplicial_trials = a.trials;
    echo(
        "private-median",
        seed,
        json!({ "data": a.data.data, "config": cfg, "grid": a.grid.map(|g| [g.lo, g.hi, g.count as f64]) }),
    );

    if sampler == SamplerKind::ExactGrid {
        let grid = a
            .grid
            .context("the exact-grid sampler needs --grid lo:hi:count")?
            .points(data.d())?;
        let draw = exact_grid_mechanism(&grid, &data, &cfg, root)?;
        let theta = grid[draw.index].clone();
        let diagnostics = json!({ "beta": draw.beta, "grid_index": draw.index, "grid_points": grid.len(), "sampler": sampler.label(), "seed": seed });
        let mut out = Output::single(
            vec![
                vector("theta", theta),
                real("beta", draw.beta),
                count("grid_index", draw.index as u64),
                count("grid_points", grid.len() as u64),
                label("sampler", sampler.label()),
                count("seed", seed),
            ],
            &["theta"],
        );
        out.text.push(diagnostics.to_string());
        return Ok(out);
    }

    let r = private_median(&data, &cfg, root)?;
    let mut out = Output::single(
        vec![
            vector("theta", r.theta.clone()),
            real("beta", r.beta),
            real("acceptance_rate", r.acceptance_rate),
            count("chain_length", r.chain_length as u64),
            real("step_size", r.step_size),
            label("sampler", r.sampler.label()),
            count("seed", seed),
        ],
        &["theta"],
    );
    let mut diag = serde_json::Map::new();
    for (k, c) in out.records[0].iter().skip(1) {
        let v = match c {
            Cell::Real(x) => json!(dpdepth::format::sig10(*x).parse::<f64>()?),
            Cell::Count(x) => json!(x),
            Cell::Label(s) => json!(s),
            Cell::Vector(_) => continue,
        };
        diag.insert(k.clone(), v);
    }
    out.text.push(serde_json::Value::Object(diag).to_string());
    Ok(out)
}

fn alpha_cmd(a: &AlphaArgs, seed: u64, root: RngStream) -> Result<Output> {
    let kind: DepthKind = a.kind.parse()?;
    let given = match a.model {
        ModelKind::Gaussian => a.eigenvalues.as_ref(),
        ModelKind::Cauchy => a.scales.as_ref(),
    };
    let d = match (a.d, given) {
        (Some(d), Some(v)) if d != v.len() => {
            anyhow::bail!("--d {d} disagrees with {} listed values", v.len())
        }
        (_, Some(v)) => v.len(),
        (Some(d), None) => d,
        (None, None) => anyhow::bail!("give --d or the model's per-axis values"),
    };
    let values = given.cloned().unwrap_or_else(|| vec![1.0; d]);
    echo(
        "alpha",
        seed,
        json!({ "model": format!("{:?}", a.model).to_lowercase(), "kind": kind.label(), "t": a.t, "values": values, "dirs": a.dirs, "vgrid": a.vgrid }),
    );
    let dirs = if d == 1 {
        DirectionSet::signs_1d()
    } else {
        sample_directions(d, a.dirs, root.derive(&[DIRECTIONS_STREAM]))?
    };
    let alpha = match a.model {
        ModelKind::Gaussian => alpha_gaussian(
            kind,
            a.t,
            &PopulationModel::gaussian(vec![0.0; d], values)?,
            &dirs,
        )?,
        ModelKind::Cauchy => {
            let model = PopulationModel::cauchy_marginals(values)?;
            let vgrid = default_vgrid(&model, a.vgrid, root.derive(&[SIMPLICES_STREAM]))?;
            alpha_dversion(kind, a.t, &model, &dirs, &vgrid)?
        }
    };
    Ok(Output::single(vec![real("alpha", alpha)], &["alpha"]))
}

fn experiment_cmd(a: &ExperimentArgs, seed: Option<u64>) -> Result<Output> {
    let mut cfg = match &a.config {
        Some(path) => {
            ExperimentConfig::load(path).with_context(|| format!("reading {}", path.display()))?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(d) = &a.dims {
        cfg.dims = d.clone();
    }
    if let Some(n) = a.n {
        cfg.n = n;
    }
    if let Some(r) = a.replications {
        cfg.replications = r;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if a.no_timing {
        cfg.timing = false;
    }
    echo("experiment", cfg.seed, serde_json::to_value(&cfg)?);
    let table = run_experiment(&cfg)?;
    for d in &table.diagnostics {
        eprintln!(
            "diagnostic: d={} replication={} estimator={}: {}",
            d.d, d.replication, d.estimator, d.message
        );
    }
    let records: Vec<Record> = table
        .rows
        .iter()
        .map(|r| {
            vec![
                count("d", r.d as u64),
                label("estimator", &r.estimator),
                real("ermse", r.ermse),
                count("reps", r.reps as u64),
                real("wall_ms", r.wall_ms),
                count("seed", r.seed),
            ]
        })
        .collect();
    Ok(Output::table(records))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|out| {
        match &cli.output {
            Some(path) => {
                let mut w = BufWriter::new(
                    File::create(path).with_context(|| format!("creating {}", path.display()))?,
                );
                out.write(&mut w, cli.format)?;
                w.flush()?;
            }
            None => {
                let stdout = std::io::stdout();
                let mut w = stdout.lock();
                out.write(&mut w, cli.format)?;
            }
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
