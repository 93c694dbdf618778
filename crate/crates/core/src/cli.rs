//! `statemetric` command line.
//!
//! Exit status: 0 success, 1 domain failure, 2 usage or parse failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    classify, gauss_curvature, metric_field, rank_analysis, Classification, MetricField, Sweep,
    CURVATURE_STEP, FLAT_CURVATURE_TOL,
};
use crate::liealg::validate_algebra;
use crate::manifest::{AlgebraHint, DeclaredKind, Manifest};
use crate::manifold::{MetricTensor, ParameterPoint, StateManifold};
use crate::models::{
    oscillator_model, spin_model, two_spin_model, OscillatorModelSpec, SpinModelSpec,
    TwoSpinInitial, TwoSpinModelSpec, TwoSpinVariant, CATALOG,
};
use crate::oracle::{compare, fd_metric, DEFAULT_STEP};
use crate::verify::{run_suite, Fault, SuiteConfig};

/// Environment variable capping grid parallelism.
pub const THREADS_ENV: &str = "STATEMETRIC_THREADS";
/// Half-width of the local patch classified by `metric` and `curvature`.
pub const PATCH_HALF_WIDTH: f64 = 0.05;

#[derive(Parser, Debug)]
#[command(
    name = "statemetric",
    version,
    about = "Fubini-Study geometry of Lie-algebra state manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check Hermiticity, closure and Jacobi identity of a manifest's generators.
    Validate { manifest: PathBuf },
    /// Metric tensor at one point, with a finite-difference cross-check.
    Metric {
        manifest: PathBuf,
        #[command(flatten)]
        point: PointArgs,
        /// Oracle step.
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
    },
    /// Metric tensors on a rectangular parameter grid.
    Grid {
        manifest: PathBuf,
        /// name=min:max:count, repeatable.
        #[arg(long, required = true)]
        sweep: Vec<Sweep>,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Gaussian curvature of a two-parameter section and a local classification.
    Curvature {
        manifest: PathBuf,
        #[command(flatten)]
        point: PointArgs,
        /// Two parameter names, p,q.
        #[arg(long, value_delimiter = ',', required = true)]
        section: Vec<String>,
    },
    /// Run the acceptance suite.
    Verify {
        /// Run one group only.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<FaultArg>,
    },
    /// Built-in model catalog.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
}

#[derive(Args, Debug)]
struct PointArgs {
    /// name=value, repeatable.
    #[arg(long = "at")]
    at: Vec<String>,
    /// Bind every unlisted parameter to 0.
    #[arg(long)]
    defaults_zero: bool,
    /// Override the manifest's gamma.
    #[arg(long)]
    gamma: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    FlipSy,
}

#[derive(Subcommand, Debug)]
enum ModelsAction {
    /// Print the catalog ids.
    List,
    /// Write the manifest of a catalog model.
    Emit(EmitArgs),
}

#[derive(Args, Debug)]
struct EmitArgs {
    id: String,
    #[arg(long, default_value_t = 0.5)]
    s: f64,
    /// Spin projection; defaults to s.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<f64>,
    /// Fock level.
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 64)]
    trunc: usize,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long = "J1", default_value_t = 1.0, allow_hyphen_values = true)]
    j1: f64,
    #[arg(long = "J2", default_value_t = 1.0, allow_hyphen_values = true)]
    j2: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    hz: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    h: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_hyphen_values = true)]
    eta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    chi: f64,
    /// Two-spin initial state.
    #[arg(long, value_enum)]
    initial: Option<InitialArg>,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InitialArg {
    UpUp,
    UpDown,
    DownUp,
    DownDown,
    PlusMinus,
    MinusPlus,
}

impl From<InitialArg> for TwoSpinInitial {
    fn from(a: InitialArg) -> Self {
        match a {
            InitialArg::UpUp => TwoSpinInitial::UpUp,
            InitialArg::UpDown => TwoSpinInitial::UpDown,
            InitialArg::DownUp => TwoSpinInitial::DownUp,
            InitialArg::DownDown => TwoSpinInitial::DownDown,
            InitialArg::PlusMinus => TwoSpinInitial::PlusMinus,
            InitialArg::MinusPlus => TwoSpinInitial::MinusPlus,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Validate { manifest } => cmd_validate(&manifest, out),
        Command::Metric {
            manifest,
            point,
            step,
        } => cmd_metric(&manifest, &point, step, out),
        Command::Grid {
            manifest,
            sweep,
            point,
            out: path,
            format,
        } => cmd_grid(&manifest, &sweep, &point, path.as_deref(), format, out),
        Command::Curvature {
            manifest,
            point,
            section,
        } => cmd_curvature(&manifest, &point, &section, out),
        Command::Verify { only, inject_fault } => {
            let cfg = SuiteConfig {
                fault: inject_fault.map(|FaultArg::FlipSy| Fault::FlipSy),
                ..SuiteConfig::default()
            };
            cmd_verify(only.as_deref(), &cfg, out)
        }
        Command::Models { action } => match action {
            ModelsAction::List => {
                for id in CATALOG {
                    writeln!(out, "{id}")?;
                }
                Ok(0)
            }
            ModelsAction::Emit(args) => cmd_emit(&args, out),
        },
    }
}

fn load(path: &Path, gamma: Option<f64>) -> Result<StateManifold> {
    let manifold = Manifest::from_path(path)?.build()?;
    match gamma {
        Some(g) if !(g.is_finite() && g > 0.0) => {
            Err(Error::Parse(format!("--gamma must be positive, got {g}")))
        }
        Some(g) => Ok(manifold.with_gamma(g)),
        None => Ok(manifold),
    }
}

fn parse_point(
    args: &PointArgs,
    manifold: &StateManifold,
    free: &[String],
) -> Result<ParameterPoint> {
    let names = manifold.parameter_names();
    let mut point = ParameterPoint::new();
    for item in &args.at {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("--at `{item}` is not name=value")))?;
        let name = name.trim();
        if !names.iter().any(|n| n == name) {
            return Err(Error::Parse(format!(
                "--at names unknown parameter `{name}`"
            )));
        }
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("--at `{item}`: `{value}` is not a number")))?;
        if point.get(name).is_some() {
            return Err(Error::Parse(format!("--at binds `{name}` twice")));
        }
        point.insert(name, v);
    }
    for n in &names {
        if point.get(n).is_none() && !free.contains(n) {
            if args.defaults_zero {
                point.insert(n.clone(), 0.0);
            } else {
                return Err(Error::MissingParameter(n.clone()));
            }
        }
    }
    Ok(point)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn cmd_validate(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let manifest = Manifest::from_path(path)?;
    let rep = manifest.algebra_rep()?;
    manifest.build_with(std::sync::Arc::new(rep.clone()))?;
    let kind = manifest.kind(&rep);
    let report = validate_algebra(&rep, kind);
    writeln!(out, "manifest: {}", manifest.name)?;
    writeln!(out, "dimension: {}", rep.dim())?;
    for (name, g) in rep.names().iter().zip(rep.generators()) {
        writeln!(out, "hermiticity {name}: {:.3e}", g.hermiticity_residual())?;
    }
    writeln!(out, "closure residual: {:.3e}", rep.max_closure_residual())?;
    if rep.is_truncation_aware() {
        writeln!(
            out,
            "closure window: leading {} states",
            rep.closure_window()
        )?;
    }
    for b in &report.brackets {
        writeln!(
            out,
            "bracket {}: {:.3e} {}",
            b.label,
            b.residual,
            if b.passed { "ok" } else { "FAIL" }
        )?;
    }
    writeln!(out, "jacobi residual: {:.3e}", report.jacobi_residual)?;
    writeln!(
        out,
        "structure constants imaginary: {:.3e}",
        report.purity_residual
    )?;
    writeln!(out, "algebra: {kind}")?;
    let passed = report.passed();
    writeln!(out, "result: {}", if passed { "pass" } else { "FAIL" })?;
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct MetricOutput<'a> {
    manifold: &'a str,
    point: &'a ParameterPoint,
    gamma: f64,
    parameters: &'a [String],
    metric: Vec<Vec<f64>>,
    rank: usize,
    eigenvalues: Vec<f64>,
    flat: bool,
    oracle_step: f64,
    oracle_max_diff: f64,
}

fn rows(g: &MetricTensor) -> Vec<Vec<f64>> {
    (0..g.dim())
        .map(|i| (0..g.dim()).map(|j| g.get(i, j)).collect())
        .collect()
}

/// Classifies the cube of half-width [`PATCH_HALF_WIDTH`] around `point`.
fn local_classification(
    manifold: &StateManifold,
    point: &ParameterPoint,
) -> Result<Classification> {
    let sweeps: Vec<Sweep> = manifold
        .parameter_names()
        .into_iter()
        .map(|name| {
            let v = point.get(&name).unwrap_or_default();
            Sweep::new(name, v - PATCH_HALF_WIDTH, v + PATCH_HALF_WIDTH, 3)
        })
        .collect();
    Ok(classify(&metric_field(manifold, &sweeps, point)?)?.classification)
}

fn cmd_metric(path: &Path, args: &PointArgs, step: f64, out: &mut dyn Write) -> Result<i32> {
    let manifold = load(path, args.gamma)?;
    let point = parse_point(args, &manifold, &[])?;
    let g = manifold.metric(&point)?;
    let oracle = fd_metric(
        &manifold.circuit,
        &point,
        &manifold.initial,
        manifold.gamma,
        step,
    )?;
    let diff = compare(&g, &oracle, 0.0)?.max_abs_diff;
    let analysis = rank_analysis(&g);
    let output = MetricOutput {
        manifold: &manifold.label,
        point: g.point(),
        gamma: g.gamma(),
        parameters: g.parameters(),
        metric: rows(&g),
        rank: analysis.rank,
        eigenvalues: analysis.eigenvalues,
        flat: local_classification(&manifold, &point)? == Classification::Flat,
        oracle_step: step,
        oracle_max_diff: diff,
    };
    out.write_all(json(&output).as_bytes())?;
    Ok(0)
}

#[derive(Serialize)]
struct GridNode<'a> {
    point: &'a ParameterPoint,
    metric: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct GridOutput<'a> {
    manifold: &'a str,
    gamma: f64,
    parameters: Vec<String>,
    sweeps: &'a [Sweep],
    nodes: Vec<GridNode<'a>>,
}

fn number(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| "NaN".into())
}

/// CSV text: swept parameters, then upper-triangle metric components.
pub fn grid_csv(field: &MetricField) -> String {
    let dim = field.tensors.first().map_or(0, MetricTensor::dim);
    let mut header: Vec<String> = field.sweeps.iter().map(|s| s.name.clone()).collect();
    for i in 0..dim {
        for j in i..dim {
            header.push(format!("g_{}{}", i + 1, j + 1));
        }
    }
    let mut text = header.join(",");
    text.push('\n');
    for (node, g) in field.nodes.iter().zip(&field.tensors) {
        let mut cells: Vec<String> = field
            .sweeps
            .iter()
            .map(|s| number(node.get(&s.name).unwrap_or_default()))
            .collect();
        for i in 0..dim {
            for j in i..dim {
                cells.push(number(g.get(i, j)));
            }
        }
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    text
}

fn grid_json(field: &MetricField) -> String {
    json(&GridOutput {
        manifold: &field.label,
        gamma: field.gamma,
        parameters: field.manifold().parameter_names(),
        sweeps: &field.sweeps,
        nodes: field
            .nodes
            .iter()
            .zip(&field.tensors)
            .map(|(p, g)| GridNode {
                point: p,
                metric: rows(g),
            })
            .collect(),
    })
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{THREADS_ENV}=`{v}` is not a thread count")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Error::Numerical(e.to_string()))
}

fn cmd_grid(
    path: &Path,
    sweeps: &[Sweep],
    args: &PointArgs,
    target: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let manifold = load(path, args.gamma)?;
    let swept: Vec<String> = sweeps.iter().map(|s| s.name.clone()).collect();
    let base = parse_point(args, &manifold, &swept)?;
    let field = thread_pool()?.install(|| metric_field(&manifold, sweeps, &base))?;
    let text = match format {
        Format::Json => grid_json(&field),
        Format::Csv => grid_csv(&field),
    };
    match target {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct CurvatureOutput<'a> {
    manifold: &'a str,
    point: &'a ParameterPoint,
    gamma: f64,
    section: [&'a str; 2],
    gaussian_curvature: f64,
    radius: Option<f64>,
    rank: usize,
    null_directions: Vec<Vec<f64>>,
    scalar_curvature: Option<f64>,
    classification: Classification,
}

fn cmd_curvature(
    path: &Path,
    args: &PointArgs,
    section: &[String],
    out: &mut dyn Write,
) -> Result<i32> {
    let manifold = load(path, args.gamma)?;
    let point = parse_point(args, &manifold, &[])?;
    let [p, q] = match section {
        [p, q] => [p.as_str(), q.as_str()],
        _ => {
            return Err(Error::Parse(
                "--section takes two parameter names, p,q".into(),
            ))
        }
    };
    let k = gauss_curvature(&manifold, &point, (p, q), CURVATURE_STEP)?;
    let sweeps: Vec<Sweep> = [p, q]
        .iter()
        .map(|name| {
            let v = point.get(name).unwrap_or_default();
            Sweep::new(*name, v - PATCH_HALF_WIDTH, v + PATCH_HALF_WIDTH, 3)
        })
        .collect();
    let report = classify(&metric_field(&manifold, &sweeps, &point)?)?;
    let analysis = rank_analysis(&manifold.metric(&point)?);
    let output = CurvatureOutput {
        manifold: &manifold.label,
        point: &point,
        gamma: manifold.gamma,
        section: [p, q],
        gaussian_curvature: k,
        radius: (k > FLAT_CURVATURE_TOL).then(|| 1.0 / k.sqrt()),
        rank: analysis.rank,
        null_directions: analysis
            .null_directions
            .iter()
            .map(|v| v.iter().copied().collect())
            .collect(),
        scalar_curvature: report.scalar_curvature,
        classification: report.classification,
    };
    out.write_all(json(&output).as_bytes())?;
    Ok(0)
}

fn cmd_verify(only: Option<&str>, cfg: &SuiteConfig, out: &mut dyn Write) -> Result<i32> {
    let outcomes = run_suite(only, cfg)?;
    let mut failed = Vec::new();
    for o in &outcomes {
        writeln!(out, "{o}")?;
        if !o.passed {
            failed.push(format!("[{}] {}", o.criterion.id, o.criterion.name));
        }
    }
    if failed.is_empty() {
        writeln!(
            out,
            "{} of {} criteria passed",
            outcomes.len(),
            outcomes.len()
        )?;
        Ok(0)
    } else {
        writeln!(out, "failed: {}", failed.join(", "))?;
        Ok(1)
    }
}

fn emit_manifest(args: &EmitArgs) -> Result<Manifest> {
    let so3 = Some(AlgebraHint {
        kind: DeclaredKind::So3,
        truncation_aware: false,
    });
    let two_spin =
        |variant: TwoSpinVariant, default: TwoSpinInitial, field: f64| -> Result<Manifest> {
            let spec = TwoSpinModelSpec {
                variant,
                j1: args.j1,
                j2: args.j2,
                field,
                initial: args.initial.map_or(default, Into::into),
                gamma: args.gamma,
            };
            let mut m = Manifest::from_manifold(&two_spin_model(&spec)?, so3.clone());
            m.name = match variant {
                TwoSpinVariant::Directional { eta, chi } => format!(
                    "{} J1={} J2={} h={} eta={} chi={}",
                    variant.id(),
                    number(args.j1),
                    number(args.j2),
                    number(field),
                    number(eta),
                    number(chi)
                ),
                _ => format!(
                    "{} J1={} J2={} hz={}",
                    variant.id(),
                    number(args.j1),
                    number(args.j2),
                    number(field)
                ),
            };
            Ok(m)
        };
    match args.id.as_str() {
        "spin" => {
            let spec =
                SpinModelSpec::eigenstate(args.s, args.m.unwrap_or(args.s)).with_gamma(args.gamma);
            Ok(Manifest::from_manifold(&spin_model(&spec)?, so3))
        }
        "oscillator" => {
            let spec = OscillatorModelSpec {
                mass: args.mass,
                omega: args.omega,
                gamma: args.gamma,
                ..OscillatorModelSpec::new(args.n, args.trunc)
            };
            Ok(Manifest::from_manifold(
                &oscillator_model(&spec)?,
                Some(AlgebraHint {
                    kind: DeclaredKind::Heisenberg,
                    truncation_aware: true,
                }),
            ))
        }
        "two_spin_dm_xx" => two_spin(TwoSpinVariant::DmXx, TwoSpinInitial::UpDown, args.hz),
        "two_spin_sum" => two_spin(TwoSpinVariant::Sum, TwoSpinInitial::UpUp, args.hz),
        "two_spin_directional" => two_spin(
            TwoSpinVariant::Directional {
                eta: args.eta,
                chi: args.chi,
            },
            TwoSpinInitial::PlusMinus,
            args.h,
        ),
        other => Err(Error::UnknownModel(other.to_string())),
    }
}

fn cmd_emit(args: &EmitArgs, out: &mut dyn Write) -> Result<i32> {
    let text = emit_manifest(args)?.to_json();
    match &args.out {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}
