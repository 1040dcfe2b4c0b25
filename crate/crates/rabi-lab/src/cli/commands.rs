//! Subcommand drivers: configuration merge, sweep execution, and bit-exact
//! CSV/JSON emission.
//!
//! Exit codes: 0 success, 2 usage/config errors, 3 convergence failure
//! (manifest still written), 4 negative SUSY detection.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{
    resolvent_distance, run_sweep, ActionReport, ActionValue, SweepPoint, SweepSchedule,
};
use crate::error::RabiError;
use crate::hamiltonians::ModelKind;
use crate::operators::{ModelParams, C64};
use crate::oracle::{oracle_spectrum, GridSpec, StencilOrder};
use crate::spectra::{converged_spectrum, detect_susy, SpectrumResult, TruncationSpec};

use super::config::Config;
use super::format::{fmt_g, fmt_opt};
use super::manifest::{
    run_id, GridSettings, OutputPaths, PointOutcome, RunManifest, TruncationSettings,
};

pub const LEVELS_HEADER: &str =
    "sweep_param,level_index,energy,parity_sector,converged_dim,residual";
pub const ACTION_HEADER: &str = "sweep_param,e0,e1,gap,s_euc,g_of_g,self_energy,q0";
pub const RESOLVENT_HEADER: &str = "g,z_real,z_imag,distance";
pub const SUSY_HEADER: &str = "g,is_susy_n2,spacing";
pub const ORACLE_HEADER: &str = "level_index,fock_energy,grid_energy,abs_dev";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
    Compute(RabiError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Compute(_) => 1,
        }
    }
}

/// User-input errors exit 2; genuine numeric failures exit 1.
fn physics_err(e: RabiError) -> CliError {
    match e {
        RabiError::InvalidParams(_)
        | RabiError::Domain(_)
        | RabiError::Dimension { .. }
        | RabiError::GridCoverage(_)
        | RabiError::UndefinedInput(_) => CliError::Usage(e.to_string()),
        other => CliError::Compute(other),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "rabi-lab",
    version,
    about = "Quantum Rabi model laboratory: spectra, symmetry breaking, instanton observables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Converged spectrum of a single parameter point
    Spectrum(SpectrumArgs),
    /// LMT1/LMT2 parameter sweep with spectra and instanton reports
    Sweep(SweepArgs),
    /// Instanton action report (gap, S_euc, G, q0) for one point
    Action(ActionArgs),
    /// Norm-resolvent distance between the renormalized transformed model
    /// and the free boson
    Resolvent(ResolventArgs),
    /// N=2 SUSY pattern detection; exits 0 when present, 4 when absent
    Susy(SusyArgs),
    /// Cross-check the Fock pipeline against the position-grid oracle
    OracleCompare(OracleCompareArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Qubit transition frequency (units of the reference omega)
    #[arg(long)]
    pub omega_a: Option<f64>,
    /// Boson frequency (units of the reference omega)
    #[arg(long)]
    pub omega_c: Option<f64>,
    /// Reduced Planck constant
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Coefficient C of the A^2-term hbar*C*g^2*(a+a†)^2
    #[arg(long)]
    pub a2_coeff: Option<f64>,
    /// Reference frequency multiplying omega_a, omega_c and g
    #[arg(long)]
    pub omega_unit: Option<f64>,
    /// key=value config file (fallback: $RABI_LAB_CONFIG)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output prefix; files are <out>.<kind>.csv and <out>.manifest.json
    #[arg(long)]
    pub out: Option<String>,
    /// Starting boson truncation
    #[arg(long)]
    pub initial_dim: Option<usize>,
    /// Truncation growth factor
    #[arg(long)]
    pub growth_factor: Option<f64>,
    /// Truncation cap
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Convergence tolerance on the reported levels
    #[arg(long)]
    pub level_tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Model: qr, qr-ren, transformed, transformed-ren, free
    #[arg(long)]
    pub model: Option<String>,
    /// Coupling strength
    #[arg(long)]
    pub g: Option<f64>,
    /// Number of levels to report
    #[arg(long)]
    pub levels: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Sweep family: lmt1 or lmt2
    #[arg(long)]
    pub mode: Option<String>,
    /// Model: qr, qr-ren, transformed, transformed-ren, free
    #[arg(long)]
    pub model: Option<String>,
    /// Number of levels per point
    #[arg(long)]
    pub levels: Option<usize>,
    /// LMT1 grid start
    #[arg(long)]
    pub g_start: Option<f64>,
    /// LMT1 grid end
    #[arg(long)]
    pub g_end: Option<f64>,
    /// LMT1 grid size
    #[arg(long)]
    pub steps: Option<usize>,
    /// LMT2 schedule CSV (r,omega_a,g); default is the linear schedule
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    /// Worker pool size (default: number of processors)
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Quartic double-well coefficient for the q0 column
    #[arg(long)]
    pub c_dw: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ActionArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Coupling strength
    #[arg(long)]
    pub g: Option<f64>,
    /// Quartic double-well coefficient for the q0 column
    #[arg(long)]
    pub c_dw: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ResolventArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Coupling strength
    #[arg(long)]
    pub g: Option<f64>,
    /// Re z (energy units)
    #[arg(long)]
    pub z_real: Option<f64>,
    /// Im z (energy units); defaults to hbar*omega_c
    #[arg(long)]
    pub z_imag: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SusyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Coupling strength
    #[arg(long)]
    pub g: Option<f64>,
    /// Model: qr, qr-ren, transformed, transformed-ren, free
    #[arg(long)]
    pub model: Option<String>,
    /// Number of levels inspected
    #[arg(long)]
    pub levels: Option<usize>,
    /// Pattern tolerance
    #[arg(long)]
    pub susy_tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct OracleCompareArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Coupling strength
    #[arg(long)]
    pub g: Option<f64>,
    /// Grid points per component
    #[arg(long)]
    pub grid_m: Option<usize>,
    /// Grid half-width
    #[arg(long)]
    pub grid_l: Option<f64>,
    /// Kinetic stencil order: 2 or 4
    #[arg(long)]
    pub stencil_order: Option<String>,
    /// Number of levels compared
    #[arg(long)]
    pub levels: Option<usize>,
}

/// Parse the process arguments and run; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Action(args) => cmd_action(args),
        Command::Resolvent(args) => cmd_resolvent(args),
        Command::Susy(args) => cmd_susy(args),
        Command::OracleCompare(args) => cmd_oracle_compare(args),
    }
}

/// Everything the common flags resolve into.
struct Resolved {
    params_base: ResolvedParams,
    trunc: TruncationSpec,
    out: OutputPaths,
    parameters: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Copy)]
struct ResolvedParams {
    omega_a: f64,
    omega_c: f64,
    hbar: f64,
    a2_coeff: f64,
    omega_unit: f64,
}

impl ResolvedParams {
    fn model_params(&self, g: f64) -> Result<ModelParams, CliError> {
        let u = self.omega_unit;
        ModelParams::new(self.omega_a * u, self.omega_c * u, g * u)
            .and_then(|p| p.with_hbar(self.hbar))
            .and_then(|p| p.with_a2_coeff(self.a2_coeff))
            .map_err(physics_err)
    }
}

fn resolve_common(common: &CommonArgs, cfg: &Config) -> Result<Resolved, CliError> {
    let omega_a = cfg.resolve_required::<f64>(common.omega_a, "omega_a")?;
    let omega_c = cfg.resolve_required::<f64>(common.omega_c, "omega_c")?;
    let hbar = cfg.resolve(common.hbar, "hbar", 1.0)?;
    let a2_coeff = cfg.resolve(common.a2_coeff, "a2_coeff", 0.0)?;
    let omega_unit = cfg.resolve(common.omega_unit, "omega_unit", 1.0)?;
    let defaults = TruncationSpec::default();
    let trunc = TruncationSpec::new(
        cfg.resolve(common.initial_dim, "initial_dim", defaults.initial_dim)?,
        cfg.resolve(
            common.growth_factor,
            "growth_factor",
            defaults.growth_factor,
        )?,
        cfg.resolve(common.max_dim, "max_dim", defaults.max_dim)?,
        cfg.resolve(common.level_tol, "level_tol", defaults.level_tol)?,
    )
    .map_err(physics_err)?;
    let out_prefix = cfg
        .resolve_opt::<String>(common.out.clone(), "out")?
        .unwrap_or_else(|| "run".to_string());

    let mut parameters = BTreeMap::new();
    let mut put = |k: &str, v: serde_json::Value| {
        parameters.insert(k.to_string(), v);
    };
    put("omega_a", serde_json::json!(omega_a));
    put("omega_c", serde_json::json!(omega_c));
    put("hbar", serde_json::json!(hbar));
    put("a2_coeff", serde_json::json!(a2_coeff));
    put("omega_unit", serde_json::json!(omega_unit));

    Ok(Resolved {
        params_base: ResolvedParams {
            omega_a,
            omega_c,
            hbar,
            a2_coeff,
            omega_unit,
        },
        trunc,
        out: OutputPaths::new(&out_prefix),
        parameters,
    })
}

fn write_csv(path: &Path, header: &str, rows: &[String]) -> Result<(), CliError> {
    let mut text =
        String::with_capacity(header.len() + 1 + rows.iter().map(|r| r.len() + 1).sum::<usize>());
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(row);
        text.push('\n');
    }
    std::fs::write(path, text).map_err(CliError::Io)
}

fn level_rows(sweep_param: f64, spectrum: &SpectrumResult, rows: &mut Vec<String>) {
    for (i, level) in spectrum.levels.iter().enumerate() {
        rows.push(format!(
            "{},{},{},{},{},{}",
            fmt_g(sweep_param),
            i,
            fmt_g(*level),
            spectrum.parity_sector[i],
            spectrum.converged_dim,
            fmt_g(spectrum.residual[i]),
        ));
    }
}

fn action_row(sweep_param: f64, report: &ActionReport) -> String {
    let s_euc = match report.s_euc {
        ActionValue::Finite(v) => fmt_g(v),
        ActionValue::Infinite => "inf".to_string(),
    };
    let q0 = match &report.q0 {
        None => "nan".to_string(),
        Some(ActionValue::Infinite) => "inf".to_string(),
        Some(ActionValue::Finite(v)) => fmt_g(*v),
    };
    format!(
        "{},{},{},{},{},{},{},{}",
        fmt_g(sweep_param),
        fmt_g(report.e0),
        fmt_g(report.e1),
        fmt_g(report.gap),
        s_euc,
        fmt_opt(report.g_of_g),
        fmt_g(report.self_energy),
        q0,
    )
}

fn outcome_ok(sweep_param: f64, spectrum: &SpectrumResult, gap_zero: Option<bool>) -> PointOutcome {
    PointOutcome {
        sweep_param,
        converged: true,
        converged_dim: Some(spectrum.converged_dim),
        max_residual: Some(spectrum.residual.iter().fold(0.0f64, |m, &r| m.max(r))),
        gap_zero,
        error: None,
    }
}

fn outcome_err(sweep_param: f64, err: &RabiError) -> PointOutcome {
    PointOutcome {
        sweep_param,
        converged: false,
        converged_dim: None,
        max_residual: None,
        gap_zero: None,
        error: Some(err.to_string()),
    }
}

fn finish_manifest(
    command: &str,
    resolved: &Resolved,
    grid: Option<GridSettings>,
    files: Vec<String>,
    points: Vec<PointOutcome>,
    started: Instant,
) -> Result<(), CliError> {
    let manifest = RunManifest {
        run_id: run_id(command, &resolved.parameters),
        command: command.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        parameters: resolved.parameters.clone(),
        truncation: Some(TruncationSettings::from(&resolved.trunc)),
        grid,
        duration_ms: started.elapsed().as_millis(),
        files,
        points,
    };
    manifest.write(&resolved.out.manifest())
}

fn parse_model(cfg: &Config, flag: Option<String>, default: &str) -> Result<ModelKind, CliError> {
    let name = cfg
        .resolve_opt::<String>(flag, "model")?
        .unwrap_or_else(|| default.to_string());
    name.parse::<ModelKind>().map_err(physics_err)
}

pub fn cmd_spectrum(args: SpectrumArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let cfg = Config::load(args.common.config.as_deref())?;
    let mut resolved = resolve_common(&args.common, &cfg)?;
    let kind = parse_model(&cfg, args.model, "qr")?;
    let g = cfg.resolve_required::<f64>(args.g, "g")?;
    let levels = cfg.resolve(args.levels, "levels", 10usize)?;
    resolved.parameters.insert("g".into(), serde_json::json!(g));
    resolved
        .parameters
        .insert("model".into(), serde_json::json!(kind.as_str()));
    resolved
        .parameters
        .insert("levels".into(), serde_json::json!(levels));

    let params = resolved.params_base.model_params(g)?;
    let trunc = resolved.trunc.seeded_for(&params);
    let levels_path = resolved.out.data("levels");
    let mut rows = Vec::new();
    let (points, code) = match converged_spectrum(&params, kind, levels, &trunc) {
        Ok(spectrum) => {
            level_rows(g, &spectrum, &mut rows);
            (vec![outcome_ok(g, &spectrum, None)], 0)
        }
        Err(e @ RabiError::ConvergenceFailure { .. }) => (vec![outcome_err(g, &e)], 3),
        Err(e) => return Err(physics_err(e)),
    };
    write_csv(&levels_path, LEVELS_HEADER, &rows)?;
    finish_manifest(
        "spectrum",
        &resolved,
        None,
        vec![levels_path.display().to_string()],
        points,
        started,
    )?;
    Ok(code)
}

fn load_schedule_csv(
    path: &Path,
    omega_c: f64,
    hbar: f64,
    unit: f64,
) -> Result<SweepSchedule, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Usage(format!("cannot read schedule file {}: {e}", path.display()))
    })?;
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if lineno == 0 && line.starts_with("r,") {
            continue; // header row
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 3 {
            return Err(CliError::Usage(format!(
                "schedule line {} must be r,omega_a,g: '{raw}'",
                lineno + 1
            )));
        }
        let parse = |s: &str, what: &str| -> Result<f64, CliError> {
            s.parse::<f64>().map_err(|_| {
                CliError::Usage(format!(
                    "schedule line {}: cannot parse {what} '{s}'",
                    lineno + 1
                ))
            })
        };
        points.push(SweepPoint {
            value: parse(cols[0], "r")?,
            omega_a: parse(cols[1], "omega_a")? * unit,
            g: parse(cols[2], "g")? * unit,
        });
    }
    SweepSchedule::lmt2_from_points(points, omega_c, hbar).map_err(physics_err)
}

pub fn cmd_sweep(args: SweepArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let cfg = Config::load(args.common.config.as_deref())?;
    let mut resolved = resolve_common(&args.common, &cfg)?;
    let kind = parse_model(&cfg, args.model, "qr-ren")?;
    let levels = cfg.resolve(args.levels, "levels", 10usize)?;
    let mode = cfg.resolve_required::<String>(args.mode, "mode")?;
    let jobs = cfg.resolve_opt::<usize>(args.jobs, "jobs")?;
    let c_dw = cfg.resolve_opt::<f64>(args.c_dw, "c_dw")?;
    let base = resolved.params_base;
    let unit = base.omega_unit;

    let schedule = match mode.as_str() {
        "lmt1" => {
            let g_start = cfg.resolve(args.g_start, "g_start", 0.0)?;
            let g_end = cfg.resolve(args.g_end, "g_end", 3.0)?;
            let steps = cfg.resolve(args.steps, "steps", 61usize)?;
            resolved
                .parameters
                .insert("g_start".into(), serde_json::json!(g_start));
            resolved
                .parameters
                .insert("g_end".into(), serde_json::json!(g_end));
            resolved
                .parameters
                .insert("steps".into(), serde_json::json!(steps));
            SweepSchedule::lmt1(
                g_start * unit,
                g_end * unit,
                steps,
                base.omega_a * unit,
                base.omega_c * unit,
                base.hbar,
            )
            .map_err(physics_err)?
        }
        "lmt2" => match cfg.resolve_opt::<PathBuf>(args.schedule.clone(), "schedule")? {
            Some(path) => {
                resolved.parameters.insert(
                    "schedule".into(),
                    serde_json::json!(path.display().to_string()),
                );
                load_schedule_csv(&path, base.omega_c * unit, base.hbar, unit)?
            }
            None => {
                SweepSchedule::lmt2_default(base.omega_a * unit, base.omega_c * unit, base.hbar)
                    .map_err(physics_err)?
            }
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown sweep mode '{other}' (expected lmt1 or lmt2)"
            )))
        }
    };
    let schedule = schedule.with_a2_coeff(base.a2_coeff);
    resolved
        .parameters
        .insert("mode".into(), serde_json::json!(mode));
    resolved
        .parameters
        .insert("model".into(), serde_json::json!(kind.as_str()));
    resolved
        .parameters
        .insert("levels".into(), serde_json::json!(levels));
    if let Some(c) = c_dw {
        resolved
            .parameters
            .insert("c_dw".into(), serde_json::json!(c));
    }

    // For LMT1 the sweep parameter is g; LMT1 sweeps ignore the single-point
    // g flag entirely. a2_coeff rides along for the A^2-term counterexample.
    let results = run_sweep(&schedule, kind, levels, &resolved.trunc, c_dw, jobs);

    let mut level_rows_out = Vec::new();
    let mut action_rows = Vec::new();
    let mut points = Vec::new();
    let mut any_convergence_failure = false;
    let mut any_other_failure = false;
    for r in &results {
        match &r.outcome {
            Ok((spectrum, report)) => {
                level_rows(r.point.value, spectrum, &mut level_rows_out);
                action_rows.push(action_row(r.point.value, report));
                points.push(outcome_ok(r.point.value, spectrum, Some(report.gap_zero)));
            }
            Err(e) => {
                if matches!(e, RabiError::ConvergenceFailure { .. }) {
                    any_convergence_failure = true;
                } else {
                    any_other_failure = true;
                }
                points.push(outcome_err(r.point.value, e));
            }
        }
    }

    let levels_path = resolved.out.data("levels");
    let action_path = resolved.out.data("action");
    write_csv(&levels_path, LEVELS_HEADER, &level_rows_out)?;
    write_csv(&action_path, ACTION_HEADER, &action_rows)?;
    finish_manifest(
        "sweep",
        &resolved,
        None,
        vec![
            levels_path.display().to_string(),
            action_path.display().to_string(),
        ],
        points,
        started,
    )?;
    Ok(if any_other_failure {
        1
    } else if any_convergence_failure {
        3
    } else {
        0
    })
}

pub fn cmd_action(args: ActionArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let cfg = Config::load(args.common.config.as_deref())?;
    let mut resolved = resolve_common(&args.common, &cfg)?;
    let g = cfg.resolve_required::<f64>(args.g, "g")?;
    let c_dw = cfg.resolve_opt::<f64>(args.c_dw, "c_dw")?;
    resolved.parameters.insert("g".into(), serde_json::json!(g));
    if let Some(c) = c_dw {
        resolved
            .parameters
            .insert("c_dw".into(), serde_json::json!(c));
    }

    let params = resolved.params_base.model_params(g)?;
    let action_path = resolved.out.data("action");
    let mut rows = Vec::new();
    let (points, code) = match crate::analysis::action_report(&params, &resolved.trunc, c_dw) {
        Ok(report) => {
            rows.push(action_row(g, &report));
            let spectrum_stub = SpectrumResult {
                levels: vec![report.e0, report.e1],
                parity_sector: vec![],
                converged_dim: 0,
                residual: vec![0.0, 0.0],
            };
            let mut outcome = outcome_ok(g, &spectrum_stub, Some(report.gap_zero));
            outcome.converged_dim = None;
            outcome.max_residual = None;
            (vec![outcome], 0)
        }
        Err(e @ RabiError::ConvergenceFailure { .. }) => (vec![outcome_err(g, &e)], 3),
        Err(e) => return Err(physics_err(e)),
    };
    write_csv(&action_path, ACTION_HEADER, &rows)?;
    finish_manifest(
        "action",
        &resolved,
        None,
        vec![action_path.display().to_string()],
        points,
        started,
    )?;
    Ok(code)
}

pub fn cmd_resolvent(args: ResolventArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let cfg = Config::load(args.common.config.as_deref())?;
    let mut resolved = resolve_common(&args.common, &cfg)?;
    let g = cfg.resolve_required::<f64>(args.g, "g")?;
    let params = resolved.params_base.model_params(g)?;
    let z_real = cfg.resolve(args.z_real, "z_real", 0.0)?;
    let z_imag = cfg.resolve(args.z_imag, "z_imag", params.hbar * params.omega_c)?;
    resolved.parameters.insert("g".into(), serde_json::json!(g));
    resolved
        .parameters
        .insert("z_real".into(), serde_json::json!(z_real));
    resolved
        .parameters
        .insert("z_imag".into(), serde_json::json!(z_imag));

    let resolvent_path = resolved.out.data("resolvent");
    let z = C64::new(z_real, z_imag);
    let mut rows = Vec::new();
    let (points, code) = match resolvent_distance(&params, z, &resolved.trunc) {
        Ok(distance) => {
            rows.push(format!(
                "{},{},{},{}",
                fmt_g(g),
                fmt_g(z_real),
                fmt_g(z_imag),
                fmt_g(distance)
            ));
            (
                vec![PointOutcome {
                    sweep_param: g,
                    converged: true,
                    converged_dim: None,
                    max_residual: None,
                    gap_zero: None,
                    error: None,
                }],
                0,
            )
        }
        Err(e @ RabiError::ConvergenceFailure { .. }) => (vec![outcome_err(g, &e)], 3),
        Err(e) => return Err(physics_err(e)),
    };
    write_csv(&resolvent_path, RESOLVENT_HEADER, &rows)?;
    finish_manifest(
        "resolvent",
        &resolved,
        None,
        vec![resolvent_path.display().to_string()],
        points,
        started,
    )?;
    Ok(code)
}

pub fn cmd_susy(args: SusyArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let cfg = Config::load(args.common.config.as_deref())?;
    let mut resolved = resolve_common(&args.common, &cfg)?;
    let kind = parse_model(&cfg, args.model, "qr")?;
    let g = cfg.resolve_required::<f64>(args.g, "g")?;
    let levels = cfg.resolve(args.levels, "levels", 10usize)?;
    let susy_tol = cfg.resolve(args.susy_tol, "susy_tol", 1e-8)?;
    resolved.parameters.insert("g".into(), serde_json::json!(g));
    resolved
        .parameters
        .insert("model".into(), serde_json::json!(kind.as_str()));
    resolved
        .parameters
        .insert("levels".into(), serde_json::json!(levels));
    resolved
        .parameters
        .insert("susy_tol".into(), serde_json::json!(susy_tol));

    let params = resolved.params_base.model_params(g)?;
    let trunc = resolved.trunc.seeded_for(&params);
    let susy_path = resolved.out.data("susy");
    let mut rows = Vec::new();
    let (points, code) = match converged_spectrum(&params, kind, levels, &trunc) {
        Ok(spectrum) => {
            let report = detect_susy(&spectrum, susy_tol);
            rows.push(format!(
                "{},{},{}",
                fmt_g(g),
                report.is_susy_n2,
                fmt_opt(report.spacing)
            ));
            let exit = if report.is_susy_n2 { 0 } else { 4 };
            (vec![outcome_ok(g, &spectrum, None)], exit)
        }
        Err(e @ RabiError::ConvergenceFailure { .. }) => (vec![outcome_err(g, &e)], 3),
        Err(e) => return Err(physics_err(e)),
    };
    write_csv(&susy_path, SUSY_HEADER, &rows)?;
    finish_manifest(
        "susy",
        &resolved,
        None,
        vec![susy_path.display().to_string()],
        points,
        started,
    )?;
    Ok(code)
}

pub fn cmd_oracle_compare(args: OracleCompareArgs) -> Result<i32, CliError> {
    let started = Instant::now();
    let cfg = Config::load(args.common.config.as_deref())?;
    let mut resolved = resolve_common(&args.common, &cfg)?;
    let g = cfg.resolve_required::<f64>(args.g, "g")?;
    let levels = cfg.resolve(args.levels, "levels", 4usize)?;
    let grid_m = cfg.resolve(args.grid_m, "grid_m", 1024usize)?;
    let grid_l = cfg.resolve(args.grid_l, "grid_l", 12.0)?;
    let stencil = cfg
        .resolve_opt::<String>(args.stencil_order, "stencil_order")?
        .unwrap_or_else(|| "2".to_string())
        .parse::<StencilOrder>()
        .map_err(physics_err)?;
    resolved.parameters.insert("g".into(), serde_json::json!(g));
    resolved
        .parameters
        .insert("levels".into(), serde_json::json!(levels));
    resolved
        .parameters
        .insert("grid_m".into(), serde_json::json!(grid_m));
    resolved
        .parameters
        .insert("grid_l".into(), serde_json::json!(grid_l));
    resolved.parameters.insert(
        "stencil_order".into(),
        serde_json::json!(stencil.to_string()),
    );

    let params = resolved.params_base.model_params(g)?;
    let grid = GridSpec::new(grid_l, grid_m, stencil).map_err(physics_err)?;
    let trunc = resolved.trunc.seeded_for(&params);

    let oracle_path = resolved.out.data("oracle");
    let mut rows = Vec::new();
    let (points, code) = match (
        converged_spectrum(&params, ModelKind::Transformed, levels, &trunc),
        oracle_spectrum(&params, &grid, levels).map_err(physics_err),
    ) {
        (Ok(fock), Ok(grid_result)) => {
            for i in 0..levels {
                let dev = (fock.levels[i] - grid_result.levels[i]).abs();
                rows.push(format!(
                    "{},{},{},{}",
                    i,
                    fmt_g(fock.levels[i]),
                    fmt_g(grid_result.levels[i]),
                    fmt_g(dev)
                ));
            }
            (vec![outcome_ok(g, &fock, None)], 0)
        }
        (Err(e @ RabiError::ConvergenceFailure { .. }), _) => (vec![outcome_err(g, &e)], 3),
        (Err(e), _) => return Err(physics_err(e)),
        (_, Err(e)) => return Err(e),
    };
    write_csv(&oracle_path, ORACLE_HEADER, &rows)?;
    finish_manifest(
        "oracle-compare",
        &resolved,
        Some(GridSettings {
            half_width: grid_l,
            points: grid_m,
            stencil_order: stencil.to_string(),
        }),
        vec![oracle_path.display().to_string()],
        points,
        started,
    )?;
    Ok(code)
}
