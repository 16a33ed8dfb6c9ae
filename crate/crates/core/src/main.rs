//! Command-line front end.
//!
//! Subcommands mirror the stages of the tomography workflow — `state`,
//! `simulate`, `reconstruct`, `oracle`, `compare` — plus the one-shot
//! pipelines `figure1` (quadrature channel) and `figure2` (displaced-number
//! channel). A TOML configuration file supplies defaults for anything not
//! given as a flag; flags win over the file.
//!
//! Exit codes: 0 on success, 1 for usage problems (bad flags, unreadable or
//! malformed files, unknown configuration keys), 2 for violated numerical or
//! physical constraints (cutoff too small, s out of range, efficiency
//! outside (0, 1], ...).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclotomo::config::{
    join_output, resolve_output_dir, GridChoice, RunConfig, StateSpec, OUT_DIR_ENV,
};
use cyclotomo::error::{Error, Result};
use cyclotomo::fock::QuantumState;
use cyclotomo::grid::GridSpec;
use cyclotomo::io::{self, GridFile, MeasurementFile, ReportFile, StateFile, FORMAT_VERSION};
use cyclotomo::measure::{run_protocol, MeasurementSet, Protocol};
use cyclotomo::pipeline::{self, FigureResult};
use cyclotomo::pnt;
use cyclotomo::radon::{build_marginals, default_r_max, inverse_radon};
use cyclotomo::{compare, oracle_wigner};

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "cyclotomo",
    version,
    about = "Simulated tomography of a trapped electron's cyclotron state",
    long_about = "Simulates quadrature and displaced-excitation-number measurements of a \
                  trapped electron's cyclotron mode and reconstructs s-parametrized \
                  quasiprobability functions from them, with analytic oracles for \
                  validation.",
    after_help = format!(
        "Output files land in --out-dir, else the config `output` key, else ${OUT_DIR_ENV}, \
         else the current directory.\n\
         Exit codes: 0 success, 1 usage error, 2 numerical/constraint error."
    )
)]
struct Cli {
    /// TOML configuration file supplying defaults (flags override it).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Directory that relative output paths are resolved against.
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize a state specification to a JSON state file.
    State(StateArgs),
    /// Run a measurement protocol and write the records to a JSON file.
    Simulate(SimulateArgs),
    /// Reconstruct a quasiprobability grid from a measurement file.
    Reconstruct(ReconstructArgs),
    /// Evaluate the analytic quasiprobability of a state on a grid.
    Oracle(OracleArgs),
    /// Compare two grid files and write an agreement report.
    Compare(CompareArgs),
    /// One-shot quadrature-channel pipeline (27 phases × 10³ samples,
    /// s = −0.25) with oracle comparison.
    Figure1(FigureArgs),
    /// One-shot displaced-number-channel pipeline (255 points × 10³ events,
    /// s = 0) with oracle comparison.
    Figure2(FigureArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StateKind {
    /// Coherent state |α⟩.
    Coherent,
    /// Odd coherent superposition |α⟩ − |−α⟩.
    OddCat,
    /// Number eigenstate |n⟩.
    Fock,
    /// Thermal mixture with mean excitation n̄.
    Thermal,
}

#[derive(Args)]
struct StateArgs {
    /// State kind; falls back to the config [state] section, then to the
    /// canonical odd cat.
    #[arg(long, value_enum)]
    kind: Option<StateKind>,

    /// Re α for coherent / odd-cat states.
    #[arg(long, value_name = "X")]
    alpha_re: Option<f64>,

    /// Im α for coherent / odd-cat states.
    #[arg(long, value_name = "Y")]
    alpha_im: Option<f64>,

    /// Excitation number for a Fock state.
    #[arg(long, value_name = "N")]
    n: Option<usize>,

    /// Mean excitation for a thermal state.
    #[arg(long, value_name = "NBAR")]
    nbar: Option<f64>,

    /// Fock-space cutoff.
    #[arg(long, value_name = "DIM")]
    dim: Option<usize>,

    /// Output file.
    #[arg(long, default_value = "state.json", value_name = "FILE")]
    output: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProtocolKind {
    /// Quadrature sampling over uniformly spaced phases.
    Oht,
    /// Excitation-number sampling over a displacement grid.
    Pnt,
}

#[derive(Args)]
struct SimulateArgs {
    /// Measurement channel; falls back to the config [protocol] section.
    #[arg(long, value_enum)]
    protocol: Option<ProtocolKind>,

    /// Number of quadrature phases, uniform over [0, π) (oht; default 27).
    #[arg(long, value_name = "N")]
    phases: Option<usize>,

    /// Samples per phase / events per displacement point (default 1000).
    #[arg(long, value_name = "N")]
    samples: Option<usize>,

    /// Displacement grid preset (pnt; default "default255").
    #[arg(long, value_name = "NAME")]
    grid: Option<String>,

    /// Master seed for the random streams (default 7).
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,

    /// Detection efficiency η ∈ (0, 1] (default 1).
    #[arg(long, value_name = "ETA")]
    efficiency: Option<f64>,

    /// Output file.
    #[arg(long, default_value = "measurements.json", value_name = "FILE")]
    output: PathBuf,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Measurement file to reconstruct from; the channel is inferred from
    /// the records.
    #[arg(long, value_name = "FILE")]
    input: PathBuf,

    /// Ordering parameter s (default −0.25 for the quadrature channel,
    /// 0 for the displaced-number channel).
    #[arg(long, allow_hyphen_values = true, value_name = "S")]
    s: Option<f64>,

    /// Histogram bins per quadrature marginal (default 64).
    #[arg(long, value_name = "N")]
    n_bins: Option<usize>,

    /// Histogram lower edge (default −6).
    #[arg(long, allow_hyphen_values = true, value_name = "X")]
    x_min: Option<f64>,

    /// Histogram upper edge (default 6).
    #[arg(long, allow_hyphen_values = true, value_name = "X")]
    x_max: Option<f64>,

    /// Radial cutoff of the back-projection integral (default: where the
    /// kernel has decayed to 1e−6).
    #[arg(long, value_name = "R")]
    r_max: Option<f64>,

    /// Radial grid points (default 512).
    #[arg(long, value_name = "N")]
    n_r: Option<usize>,

    /// Output grid half-width (quadrature channel; default 3).
    #[arg(long, value_name = "X")]
    extent: Option<f64>,

    /// Output grid points per axis (quadrature channel; default 41).
    #[arg(long, value_name = "N")]
    n_grid: Option<usize>,

    /// Series truncation (displaced-number channel; default: largest
    /// observed excitation number).
    #[arg(long, value_name = "N")]
    n_max: Option<usize>,

    /// Output file (.csv and _matrix.txt siblings are written next to it).
    #[arg(long, default_value = "wigner.json", value_name = "FILE")]
    output: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    /// State file to evaluate; falls back to the config [state] section.
    #[arg(long, value_name = "FILE")]
    state: Option<PathBuf>,

    /// Ordering parameter s < 1 (default 0).
    #[arg(long, allow_hyphen_values = true, value_name = "S")]
    s: Option<f64>,

    /// Grid preset name (e.g. "default255"); overrides --extent/--n-grid.
    #[arg(long, value_name = "NAME")]
    grid: Option<String>,

    /// Square grid half-width (default 3).
    #[arg(long, value_name = "X")]
    extent: Option<f64>,

    /// Square grid points per axis (default 41).
    #[arg(long, value_name = "N")]
    n_grid: Option<usize>,

    /// Output file (.csv and _matrix.txt siblings are written next to it).
    #[arg(long, default_value = "oracle.json", value_name = "FILE")]
    output: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    /// Reference grid file (sets the sign-agreement noise floor).
    #[arg(value_name = "REFERENCE")]
    reference: PathBuf,

    /// Candidate grid file.
    #[arg(value_name = "CANDIDATE")]
    candidate: PathBuf,

    /// Output report file.
    #[arg(long, default_value = "report.json", value_name = "FILE")]
    output: PathBuf,
}

#[derive(Args)]
struct FigureArgs {
    /// Master seed for the random streams.
    #[arg(long, default_value_t = 7, value_name = "SEED")]
    seed: u64,

    /// Detection efficiency η ∈ (0, 1].
    #[arg(long, default_value_t = 1.0, value_name = "ETA")]
    efficiency: f64,
}

// ---------------------------------------------------------------------------
// Entry point and dispatch
// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors by default; this tool reserves 2
            // for constraint violations, so print and map to the documented
            // codes instead
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let out_dir = resolve_output_dir(cli.out_dir.as_deref(), &config);
    match cli.command {
        Command::State(args) => cmd_state(args, &config, &out_dir),
        Command::Simulate(args) => cmd_simulate(args, &config, &out_dir),
        Command::Reconstruct(args) => cmd_reconstruct(args, &config, &out_dir),
        Command::Oracle(args) => cmd_oracle(args, &config, &out_dir),
        Command::Compare(args) => cmd_compare(args, &out_dir),
        Command::Figure1(args) => cmd_figure(args, &out_dir, Figure::One),
        Command::Figure2(args) => cmd_figure(args, &out_dir, Figure::Two),
    }
}

// ---------------------------------------------------------------------------
// state
// ---------------------------------------------------------------------------

/// Resolves the state spec from flags (strongest), the config file, or the
/// canonical odd cat at the channel-appropriate cutoff.
fn resolve_state_spec(
    args: &StateArgs,
    config: &RunConfig,
    default_dim: usize,
) -> Result<StateSpec> {
    if let Some(kind) = args.kind {
        let dim = args.dim.unwrap_or(default_dim);
        let alpha_re = args.alpha_re.unwrap_or(pipeline::CAT_ALPHA);
        let alpha_im = args.alpha_im.unwrap_or(0.0);
        return Ok(match kind {
            StateKind::Coherent => StateSpec::Coherent { alpha_re, alpha_im, dim },
            StateKind::OddCat => StateSpec::OddCat { alpha_re, alpha_im, dim },
            StateKind::Fock => {
                let n = args.n.ok_or_else(|| {
                    Error::Config("state kind `fock` requires --n".into())
                })?;
                StateSpec::Fock { n, dim }
            }
            StateKind::Thermal => {
                let nbar = args.nbar.ok_or_else(|| {
                    Error::Config("state kind `thermal` requires --nbar".into())
                })?;
                StateSpec::Thermal { nbar, dim }
            }
        });
    }
    if let Some(spec) = &config.state {
        return Ok(spec.clone());
    }
    Ok(StateSpec::OddCat {
        alpha_re: pipeline::CAT_ALPHA,
        alpha_im: 0.0,
        dim: args.dim.unwrap_or(default_dim),
    })
}

fn cmd_state(args: StateArgs, config: &RunConfig, out_dir: &Path) -> Result<()> {
    let spec = resolve_state_spec(&args, config, pipeline::FIG1_DIM)?;
    let state = spec.build()?;
    let file = StateFile::from_state(&state, Some(serde_json::to_value(&spec)?));
    let path = join_output(out_dir, &args.output);
    io::write_json(&path, &file)?;
    println!(
        "state: dim = {}, mean excitation = {:.6}",
        state.dim(),
        state.mean_excitation()
    );
    println!("wrote {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

/// Default samples per setting in both channels.
const DEFAULT_SAMPLES: usize = 1000;
/// Default master seed.
const DEFAULT_SEED: u64 = 7;

fn cmd_simulate(args: SimulateArgs, config: &RunConfig, out_dir: &Path) -> Result<()> {
    // channel: flag > config > error
    let config_protocol = config.protocol.clone();
    let kind = match (args.protocol, &config_protocol) {
        (Some(k), _) => k,
        (None, Some(cyclotomo::config::ProtocolSpec::Oht { .. })) => ProtocolKind::Oht,
        (None, Some(cyclotomo::config::ProtocolSpec::Pnt { .. })) => ProtocolKind::Pnt,
        (None, None) => {
            return Err(Error::Config(
                "no protocol given: pass --protocol oht|pnt or a [protocol] config section"
                    .into(),
            ))
        }
    };

    let samples = args
        .samples
        .or(match &config_protocol {
            Some(cyclotomo::config::ProtocolSpec::Oht { samples, .. })
            | Some(cyclotomo::config::ProtocolSpec::Pnt { samples, .. }) => Some(*samples),
            None => None,
        })
        .unwrap_or(DEFAULT_SAMPLES);
    let seed = args.seed.or(config.seed).unwrap_or(DEFAULT_SEED);
    let efficiency = args.efficiency.or(config.efficiency).unwrap_or(1.0);

    // the protocol and the grid layout behind it (displacement scans only)
    let (protocol, grid_spec) = match kind {
        ProtocolKind::Oht => {
            let phases = args
                .phases
                .or(match &config_protocol {
                    Some(cyclotomo::config::ProtocolSpec::Oht { phases, .. }) => Some(*phases),
                    _ => None,
                })
                .unwrap_or(pipeline::FIG1_PHASES);
            (Protocol::Oht { n_phases: phases, samples_per_phase: samples }, None)
        }
        ProtocolKind::Pnt => {
            let choice = match (&args.grid, &config_protocol) {
                (Some(name), _) => GridChoice::Named(name.clone()),
                (None, Some(cyclotomo::config::ProtocolSpec::Pnt { grid, .. })) => grid.clone(),
                _ => GridChoice::Named("default255".into()),
            };
            let spec = choice.resolve()?;
            (
                Protocol::Pnt { points: spec.points(), samples_per_point: samples },
                Some(spec),
            )
        }
    };

    // subject state: config [state] else the canonical cat; the
    // displaced-number channel needs the deep cutoff because displacement
    // pushes the distribution far up the ladder
    let default_dim = match kind {
        ProtocolKind::Oht => pipeline::FIG1_DIM,
        ProtocolKind::Pnt => pipeline::FIG2_DIM,
    };
    let state_spec = config.state.clone().unwrap_or(StateSpec::OddCat {
        alpha_re: pipeline::CAT_ALPHA,
        alpha_im: 0.0,
        dim: default_dim,
    });
    let state = state_spec.build()?;

    // resolved-config echo for the audit trail
    let resolved = RunConfig {
        state: Some(state_spec),
        protocol: Some(match &protocol {
            Protocol::Oht { n_phases, samples_per_phase } => {
                cyclotomo::config::ProtocolSpec::Oht {
                    phases: *n_phases,
                    samples: *samples_per_phase,
                }
            }
            Protocol::Pnt { samples_per_point, .. } => cyclotomo::config::ProtocolSpec::Pnt {
                grid: match (&args.grid, &config_protocol) {
                    (Some(name), _) => GridChoice::Named(name.clone()),
                    (None, Some(cyclotomo::config::ProtocolSpec::Pnt { grid, .. })) => {
                        grid.clone()
                    }
                    _ => GridChoice::Named("default255".into()),
                },
                samples: *samples_per_point,
            },
        }),
        seed: Some(seed),
        efficiency: Some(efficiency),
        ..RunConfig::default()
    };

    let set = run_protocol(&state, &protocol, efficiency, seed)?;
    let n_records = match &set {
        MeasurementSet::Oht { records } => records.len(),
        MeasurementSet::Pnt { records } => records.len(),
    };
    let file = MeasurementFile {
        format_version: FORMAT_VERSION,
        master_seed: seed,
        efficiency,
        protocol,
        grid: grid_spec,
        set,
        config: Some(serde_json::to_value(&resolved)?),
    };
    let path = join_output(out_dir, &args.output);
    io::write_json(&path, &file)?;
    println!("simulated {n_records} records (seed {seed}, efficiency {efficiency})");
    println!("wrote {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// reconstruct
// ---------------------------------------------------------------------------

/// Derives the `.csv` and `_matrix.txt` sibling paths of a `.json` output.
fn sibling_paths(json_path: &Path) -> (PathBuf, PathBuf) {
    let stem = json_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "grid".into());
    let csv = json_path.with_file_name(format!("{stem}.csv"));
    let matrix = json_path.with_file_name(format!("{stem}_matrix.txt"));
    (csv, matrix)
}

/// Writes a grid as JSON + CSV (+ matrix when the layout is Cartesian) and
/// reports the paths on stdout.
fn write_grid_products(path: &Path, grid: &cyclotomo::WignerGrid) -> Result<()> {
    let file = GridFile { format_version: FORMAT_VERSION, grid: grid.clone() };
    io::write_json(path, &file)?;
    println!("wrote {}", path.display());
    let (csv, matrix) = sibling_paths(path);
    io::write_grid_csv(&csv, grid)?;
    println!("wrote {}", csv.display());
    if matches!(grid.spec, GridSpec::Cartesian { .. }) {
        io::write_grid_matrix(&matrix, grid)?;
        println!("wrote {}", matrix.display());
    }
    Ok(())
}

fn cmd_reconstruct(args: ReconstructArgs, config: &RunConfig, out_dir: &Path) -> Result<()> {
    let input = join_output(out_dir, &args.input);
    let file: MeasurementFile = io::read_json(&input)?;
    let settings = config.reconstruction.unwrap_or_default();
    let path = join_output(out_dir, &args.output);

    let mut grid = match &file.set {
        MeasurementSet::Oht { records } => {
            let s = args.s.or(settings.s).unwrap_or(pipeline::FIG1_S);
            let n_bins = args.n_bins.or(settings.n_bins).unwrap_or(pipeline::FIG1_N_BINS);
            let x_min = args.x_min.or(settings.x_min).unwrap_or(pipeline::FIG1_X_RANGE.0);
            let x_max = args.x_max.or(settings.x_max).unwrap_or(pipeline::FIG1_X_RANGE.1);
            let n_r = args.n_r.or(settings.n_r).unwrap_or(pipeline::FIG1_N_R);
            let extent = args.extent.or(settings.extent).unwrap_or(pipeline::FIG1_EXTENT);
            let n_grid = args.n_grid.or(settings.n_grid).unwrap_or(pipeline::FIG1_N_GRID);
            // the default radial cutoff depends on s, so it resolves last
            let r_max = args
                .r_max
                .or(settings.r_max)
                .unwrap_or_else(|| if s < 0.0 { default_r_max(s) } else { 0.0 });

            let marginals = build_marginals(records, n_bins, (x_min, x_max))?;
            let clipped = marginals.clipped_fraction();
            if clipped > 0.0 {
                eprintln!(
                    "note: {:.3}% of quadrature samples fell outside [{x_min}, {x_max}] \
                     and were clipped",
                    100.0 * clipped
                );
            }
            let out_grid = GridSpec::square(extent, n_grid);
            let mut g = inverse_radon(&marginals, s, &out_grid, r_max, n_r)?;
            g.meta.efficiency = Some(file.efficiency);
            g.meta.smoothed = file.efficiency < 1.0;
            g
        }
        MeasurementSet::Pnt { records } => {
            let s = args.s.or(settings.s).unwrap_or(pipeline::FIG2_S);
            let observed_max = records
                .iter()
                .flat_map(|r| r.counts.keys().copied().max())
                .max()
                .unwrap_or(0) as usize;
            let n_max = args.n_max.or(settings.n_max).unwrap_or(observed_max);
            match &file.grid {
                Some(spec) => pnt::reconstruct_grid_on(records, s, n_max, spec)?,
                None => pnt::reconstruct_grid(records, s, n_max)?,
            }
        }
    };
    grid.meta.seed = Some(file.master_seed);
    grid.meta.config_echo = file.config.clone();

    for w in &grid.meta.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "reconstructed {} points at s = {} ({})",
        grid.values.len(),
        grid.meta.s,
        match grid.meta.method {
            Some(cyclotomo::Method::Oht) => "quadrature channel",
            Some(cyclotomo::Method::Pnt) => "displaced-number channel",
            _ => "unknown channel",
        }
    );
    write_grid_products(&path, &grid)
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

fn cmd_oracle(args: OracleArgs, config: &RunConfig, out_dir: &Path) -> Result<()> {
    let state: QuantumState = match &args.state {
        Some(path) => {
            let file: StateFile = io::read_json(&join_output(out_dir, path))?;
            file.to_state()?
        }
        None => match &config.state {
            Some(spec) => spec.build()?,
            None => {
                return Err(Error::Config(
                    "no state given: pass --state FILE or a [state] config section".into(),
                ))
            }
        },
    };
    let s = args.s.or(config.reconstruction.unwrap_or_default().s).unwrap_or(pipeline::FIG2_S);
    let grid_spec = match &args.grid {
        Some(name) => GridChoice::Named(name.clone()).resolve()?,
        None => GridSpec::square(
            args.extent.unwrap_or(pipeline::FIG1_EXTENT),
            args.n_grid.unwrap_or(pipeline::FIG1_N_GRID),
        ),
    };
    let grid = oracle_wigner(&state, &grid_spec, s)?;
    println!("oracle: {} points at s = {s}", grid.values.len());
    write_grid_products(&join_output(out_dir, &args.output), &grid)
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

fn cmd_compare(args: CompareArgs, out_dir: &Path) -> Result<()> {
    let a: GridFile = io::read_json(&join_output(out_dir, &args.reference))?;
    let b: GridFile = io::read_json(&join_output(out_dir, &args.candidate))?;
    let report = compare(&a.grid, &b.grid)?;
    let file = ReportFile {
        format_version: FORMAT_VERSION,
        report,
        smoothed: a.grid.meta.smoothed || b.grid.meta.smoothed,
        config: b.grid.meta.config_echo.clone().or(a.grid.meta.config_echo.clone()),
    };
    let path = join_output(out_dir, &args.output);
    io::write_json(&path, &file)?;
    println!(
        "rmse = {:.6}, max_abs_err = {:.6}, sign_agreement = {:.4} \
         ({} points, {} above floor)",
        report.rmse,
        report.max_abs_err,
        report.sign_agreement,
        report.n_points,
        report.n_above_floor
    );
    if let Some(z) = report.pointwise_z_pass {
        println!("pointwise 3σ agreement: {:.4}", z);
    }
    println!("wrote {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// figures
// ---------------------------------------------------------------------------

enum Figure {
    One,
    Two,
}

fn cmd_figure(args: FigureArgs, out_dir: &Path, which: Figure) -> Result<()> {
    let (result, prefix): (FigureResult, &str) = match which {
        Figure::One => (pipeline::figure_one(args.seed, args.efficiency)?, "fig1"),
        Figure::Two => (pipeline::figure_two(args.seed, args.efficiency)?, "fig2"),
    };
    let written = pipeline::write_figure_outputs(out_dir, prefix, &result)?;
    let r = &result.report;
    println!(
        "rmse = {:.6} (oracle max {:.6}), sign_agreement = {:.4}",
        r.rmse,
        result.oracle.max_abs(),
        r.sign_agreement
    );
    if let Some(z) = r.pointwise_z_pass {
        println!("pointwise 3σ agreement: {:.4}", z);
    }
    if result.reconstruction.meta.smoothed {
        println!("note: efficiency < 1 — the reconstruction estimates a smoothed function");
    }
    for p in &written {
        println!("wrote {}", p.display());
    }
    Ok(())
}
