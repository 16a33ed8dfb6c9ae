//! One-shot reproduction pipelines for the two headline reconstructions.
//!
//! Each pipeline runs state preparation → simulated measurement →
//! reconstruction → oracle comparison with the canonical parameter set and
//! hands back every intermediate product, so a single call yields the state
//! file, the raw measurement campaign, the reconstructed grid, the analytic
//! reference, and the agreement report.
//!
//! * [`figure_one`] exercises the quadrature channel: an odd cat (α = 1.5)
//!   sampled over 27 phases × 10³ quadrature draws, histogrammed and fed
//!   through the inverse Radon transform at s = −0.25 onto a 41×41 grid of
//!   extent 3.
//! * [`figure_two`] exercises the displaced-number channel: the same cat
//!   scanned over the canonical 255-point displacement grid with 10³ events
//!   per point, alternating-series summation at s = 0.
//!
//! Reconstruction grids are annotated with the master seed, the detection
//! efficiency, and a full configuration echo, so every file written by
//! [`write_figure_outputs`] carries its own provenance.

use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;

use crate::analysis::{compare, oracle_wigner, ComparisonReport};
use crate::config::{
    default255, GridChoice, ProtocolSpec, ReconstructionSettings, RunConfig, StateSpec,
};
use crate::error::Result;
use crate::fock::{odd_cat_state, QuantumState};
use crate::grid::{GridSpec, WignerGrid};
use crate::io::{self, GridFile, MeasurementFile, ReportFile, StateFile, FORMAT_VERSION};
use crate::measure::{run_protocol, MeasurementSet, Protocol};
use crate::pnt::reconstruct_grid_on;
use crate::radon::{build_marginals, default_r_max, inverse_radon};

// ---------------------------------------------------------------------------
// Canonical parameters
// ---------------------------------------------------------------------------

/// Cat amplitude shared by both pipelines.
pub const CAT_ALPHA: f64 = 1.5;

/// Fock cutoff for the quadrature pipeline. The cat itself needs ~16
/// levels; 32 leaves the tail far below the serialization tolerances.
pub const FIG1_DIM: usize = 32;
/// Number of quadrature phases scanned uniformly over [0, π).
pub const FIG1_PHASES: usize = 27;
/// Quadrature samples drawn per phase.
pub const FIG1_SAMPLES: usize = 1000;
/// Ordering parameter of the quadrature reconstruction.
pub const FIG1_S: f64 = -0.25;
/// Histogram bins per marginal.
pub const FIG1_N_BINS: usize = 64;
/// Histogram support (whole-line quadrature range kept by the binner).
pub const FIG1_X_RANGE: (f64, f64) = (-6.0, 6.0);
/// Radial grid points of the back-projection integral.
pub const FIG1_N_R: usize = 512;
/// Half-width of the square output grid.
pub const FIG1_EXTENT: f64 = 3.0;
/// Points per axis of the square output grid.
pub const FIG1_N_GRID: usize = 41;

/// Fock cutoff for the displaced-number pipeline. The displaced cat at the
/// far grid corner centres near n ≈ 33, so the series needs a much deeper
/// space than the state itself; 96 keeps the truncated tail negligible.
pub const FIG2_DIM: usize = 96;
/// Detection events per displacement point.
pub const FIG2_SAMPLES: usize = 1000;
/// Ordering parameter of the displaced-number reconstruction.
pub const FIG2_S: f64 = 0.0;

// ---------------------------------------------------------------------------
// Pipeline product
// ---------------------------------------------------------------------------

/// Everything a figure pipeline produces.
#[derive(Clone, Debug)]
pub struct FigureResult {
    /// The prepared cat state.
    pub state: QuantumState,
    /// The simulated measurement campaign, config echo included.
    pub measurements: MeasurementFile,
    /// The reconstructed quasiprobability grid.
    pub reconstruction: WignerGrid,
    /// The analytic reference on the same grid.
    pub oracle: WignerGrid,
    /// Agreement metrics, oracle as reference.
    pub report: ComparisonReport,
}

fn echo_value(config: &RunConfig) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(config)?)
}

// ---------------------------------------------------------------------------
// Quadrature pipeline
// ---------------------------------------------------------------------------

/// Runs the quadrature (homodyne-style) pipeline end to end.
///
/// # Errors
/// Propagates state-construction, sampling, and reconstruction errors
/// unchanged; with the canonical parameters none of them fire.
pub fn figure_one(seed: u64, efficiency: f64) -> Result<FigureResult> {
    let state = odd_cat_state(C64::new(CAT_ALPHA, 0.0), FIG1_DIM)?;

    let protocol = Protocol::Oht {
        n_phases: FIG1_PHASES,
        samples_per_phase: FIG1_SAMPLES,
    };
    let resolved = RunConfig {
        state: Some(StateSpec::OddCat {
            alpha_re: CAT_ALPHA,
            alpha_im: 0.0,
            dim: FIG1_DIM,
        }),
        protocol: Some(ProtocolSpec::Oht { phases: FIG1_PHASES, samples: FIG1_SAMPLES }),
        reconstruction: Some(ReconstructionSettings {
            s: Some(FIG1_S),
            n_bins: Some(FIG1_N_BINS),
            x_min: Some(FIG1_X_RANGE.0),
            x_max: Some(FIG1_X_RANGE.1),
            r_max: Some(default_r_max(FIG1_S)),
            n_r: Some(FIG1_N_R),
            extent: Some(FIG1_EXTENT),
            n_grid: Some(FIG1_N_GRID),
            n_max: None,
        }),
        seed: Some(seed),
        efficiency: Some(efficiency),
        ..RunConfig::default()
    };
    let echo = echo_value(&resolved)?;

    let set = run_protocol(&state, &protocol, efficiency, seed)?;
    let measurements = MeasurementFile {
        format_version: FORMAT_VERSION,
        master_seed: seed,
        efficiency,
        protocol,
        grid: None,
        set,
        config: Some(echo.clone()),
    };

    let records = match &measurements.set {
        MeasurementSet::Oht { records } => records,
        MeasurementSet::Pnt { .. } => unreachable!("quadrature protocol produced count records"),
    };
    let marginals = build_marginals(records, FIG1_N_BINS, FIG1_X_RANGE)?;

    let grid_spec = GridSpec::square(FIG1_EXTENT, FIG1_N_GRID);
    let mut reconstruction =
        inverse_radon(&marginals, FIG1_S, &grid_spec, default_r_max(FIG1_S), FIG1_N_R)?;
    reconstruction.meta.seed = Some(seed);
    reconstruction.meta.efficiency = Some(efficiency);
    reconstruction.meta.smoothed = efficiency < 1.0;
    reconstruction.meta.config_echo = Some(echo.clone());

    let mut oracle = oracle_wigner(&state, &grid_spec, FIG1_S)?;
    oracle.meta.config_echo = Some(echo);

    let report = compare(&oracle, &reconstruction)?;
    Ok(FigureResult { state, measurements, reconstruction, oracle, report })
}

// ---------------------------------------------------------------------------
// Displaced-number pipeline
// ---------------------------------------------------------------------------

/// Runs the displaced-number (photon-number-style) pipeline end to end.
///
/// # Errors
/// Propagates state-construction, sampling, and reconstruction errors
/// unchanged; with the canonical parameters none of them fire.
pub fn figure_two(seed: u64, efficiency: f64) -> Result<FigureResult> {
    let state = odd_cat_state(C64::new(CAT_ALPHA, 0.0), FIG2_DIM)?;

    let grid_spec = default255();
    let protocol = Protocol::Pnt {
        points: grid_spec.points(),
        samples_per_point: FIG2_SAMPLES,
    };
    let n_max = FIG2_DIM - 1;
    let resolved = RunConfig {
        state: Some(StateSpec::OddCat {
            alpha_re: CAT_ALPHA,
            alpha_im: 0.0,
            dim: FIG2_DIM,
        }),
        protocol: Some(ProtocolSpec::Pnt {
            grid: GridChoice::Named("default255".into()),
            samples: FIG2_SAMPLES,
        }),
        reconstruction: Some(ReconstructionSettings {
            s: Some(FIG2_S),
            n_max: Some(n_max),
            ..ReconstructionSettings::default()
        }),
        seed: Some(seed),
        efficiency: Some(efficiency),
        ..RunConfig::default()
    };
    let echo = echo_value(&resolved)?;

    let set = run_protocol(&state, &protocol, efficiency, seed)?;
    let measurements = MeasurementFile {
        format_version: FORMAT_VERSION,
        master_seed: seed,
        efficiency,
        protocol,
        grid: Some(grid_spec.clone()),
        set,
        config: Some(echo.clone()),
    };

    let records = match &measurements.set {
        MeasurementSet::Pnt { records } => records,
        MeasurementSet::Oht { .. } => unreachable!("count protocol produced quadrature records"),
    };
    let mut reconstruction = reconstruct_grid_on(records, FIG2_S, n_max, &grid_spec)?;
    reconstruction.meta.seed = Some(seed);
    reconstruction.meta.config_echo = Some(echo.clone());

    let mut oracle = oracle_wigner(&state, &grid_spec, FIG2_S)?;
    oracle.meta.config_echo = Some(echo);

    let report = compare(&oracle, &reconstruction)?;
    Ok(FigureResult { state, measurements, reconstruction, oracle, report })
}

// ---------------------------------------------------------------------------
// Output writer
// ---------------------------------------------------------------------------

/// Writes a figure result into `dir` under `prefix`, returning the paths.
///
/// Emitted files (all JSON writes are atomic):
/// `{prefix}_state.json`, `{prefix}_measurements.json`,
/// `{prefix}_wigner.json` / `.csv` / `_matrix.txt`, `{prefix}_oracle.json`,
/// `{prefix}_oracle_matrix.txt`, `{prefix}_report.json`.
pub fn write_figure_outputs(
    dir: &Path,
    prefix: &str,
    result: &FigureResult,
) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let path = |name: &str| dir.join(format!("{prefix}_{name}"));

    let state_file = StateFile::from_state(
        &result.state,
        result.measurements.config.clone(),
    );
    let p = path("state.json");
    io::write_json(&p, &state_file)?;
    written.push(p);

    let p = path("measurements.json");
    io::write_json(&p, &result.measurements)?;
    written.push(p);

    let grid_file = GridFile {
        format_version: FORMAT_VERSION,
        grid: result.reconstruction.clone(),
    };
    let p = path("wigner.json");
    io::write_json(&p, &grid_file)?;
    written.push(p);

    let p = path("wigner.csv");
    io::write_grid_csv(&p, &result.reconstruction)?;
    written.push(p);

    let p = path("wigner_matrix.txt");
    io::write_grid_matrix(&p, &result.reconstruction)?;
    written.push(p);

    let oracle_file = GridFile {
        format_version: FORMAT_VERSION,
        grid: result.oracle.clone(),
    };
    let p = path("oracle.json");
    io::write_json(&p, &oracle_file)?;
    written.push(p);

    let p = path("oracle_matrix.txt");
    io::write_grid_matrix(&p, &result.oracle)?;
    written.push(p);

    let report_file = ReportFile {
        format_version: FORMAT_VERSION,
        report: result.report,
        smoothed: result.reconstruction.meta.smoothed,
        config: result.measurements.config.clone(),
    };
    let p = path("report.json");
    io::write_json(&p, &report_file)?;
    written.push(p);

    Ok(written)
}
