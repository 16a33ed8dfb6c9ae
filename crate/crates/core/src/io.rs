//! On-disk formats and atomic file output.
//!
//! Everything structured is JSON with a top-level `format_version` field;
//! grids are additionally exportable as CSV (`re,im,value[,stderr]`) and as a
//! plain matrix text block for plotting tools (gnuplot `matrix` mode). All
//! writes go through a temp-file-plus-rename so a crashed run never leaves a
//! half-written artifact behind.
//!
//! Reading a state file re-validates the state through the same constructors
//! used everywhere else — a hand-edited file with a broken norm or a
//! non-Hermitian matrix is rejected, not repaired.

use std::fs;
use std::io::Write;
use std::path::Path;

use ndarray as nd;
use num_complex::Complex64 as C64;
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::QuantumState;
use crate::grid::{GridSpec, WignerGrid};
use crate::measure::{MeasurementSet, Protocol};
use crate::analysis::ComparisonReport;

/// Version stamp of every file this crate writes.
pub const FORMAT_VERSION: u32 = 1;

/// Serialized quantum state: exactly one of `amplitudes` (pure) or `matrix`
/// (mixed) is present.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub format_version: u32,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub amplitudes: Option<Vec<C64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matrix: Option<Vec<Vec<C64>>>,
    /// Free-form record of how the state was produced.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<serde_json::Value>,
}

impl StateFile {
    /// Captures a state for writing.
    pub fn from_state(state: &QuantumState, provenance: Option<serde_json::Value>) -> Self {
        match state.amplitudes() {
            Some(amps) => StateFile {
                format_version: FORMAT_VERSION,
                dim: state.dim(),
                amplitudes: Some(amps.to_vec()),
                matrix: None,
                provenance,
            },
            None => {
                let rho = state.density_matrix();
                let rows = (0..state.dim())
                    .map(|i| rho.row(i).to_vec())
                    .collect();
                StateFile {
                    format_version: FORMAT_VERSION,
                    dim: state.dim(),
                    amplitudes: None,
                    matrix: Some(rows),
                    provenance,
                }
            }
        }
    }

    /// Reconstitutes and re-validates the state.
    ///
    /// # Errors
    /// `InvalidState` for a file carrying both or neither representation,
    /// inconsistent dimensions, or content that fails state validation.
    pub fn to_state(&self) -> Result<QuantumState> {
        match (&self.amplitudes, &self.matrix) {
            (Some(amps), None) => {
                if amps.len() != self.dim {
                    return Err(Error::InvalidState(format!(
                        "file claims dim = {} but carries {} amplitudes",
                        self.dim,
                        amps.len()
                    )));
                }
                QuantumState::from_vector(amps.clone())
            }
            (None, Some(rows)) => {
                if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                    return Err(Error::InvalidState(format!(
                        "file claims dim = {} but carries a ragged or mismatched matrix",
                        self.dim
                    )));
                }
                let mut m = nd::Array2::zeros((self.dim, self.dim));
                for (i, row) in rows.iter().enumerate() {
                    for (j, &v) in row.iter().enumerate() {
                        m[(i, j)] = v;
                    }
                }
                QuantumState::from_matrix(m)
            }
            _ => Err(Error::InvalidState(
                "state file must carry exactly one of `amplitudes` or `matrix`".into(),
            )),
        }
    }
}

/// Serialized measurement campaign.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeasurementFile {
    pub format_version: u32,
    /// Master seed the per-record seeds were split from.
    pub master_seed: u64,
    /// Detection efficiency the campaign ran at.
    pub efficiency: f64,
    /// The protocol that was executed.
    pub protocol: Protocol,
    /// Grid layout behind a displaced-number campaign's points, when the
    /// points came from a structured grid (lets reconstruction rebind the
    /// layout for matrix output).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grid: Option<GridSpec>,
    /// The measured records.
    pub set: MeasurementSet,
    /// Echo of the resolved configuration that produced the file.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config: Option<serde_json::Value>,
}

/// Serialized reconstructed or oracle grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridFile {
    pub format_version: u32,
    pub grid: WignerGrid,
}

/// Serialized comparison outcome.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub format_version: u32,
    pub report: ComparisonReport,
    /// True when either compared grid estimates a smoothed (lossy-detection)
    /// function.
    pub smoothed: bool,
    /// Echo of the resolved configuration.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config: Option<serde_json::Value>,
}

/// Writes bytes atomically: temp file in the destination directory, then
/// rename. The destination directory is created if missing.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    fs::create_dir_all(&parent)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&parent)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Serializes a value as pretty JSON and writes it atomically.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    atomic_write(path, &bytes)
}

/// Reads and deserializes a JSON file.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let bytes = fs::read(path)?;
    Ok(serde_json::from_slice(&bytes)?)
}

/// Writes a grid as CSV: header `re,im,value` (plus `,stderr` when the grid
/// carries standard errors), one row per point in storage order. Numbers use
/// shortest-round-trip formatting, so the CSV is lossless.
pub fn write_grid_csv(path: &Path, grid: &WignerGrid) -> Result<()> {
    let points = grid.spec.points();
    if points.len() != grid.values.len() {
        return Err(Error::Constraint("grid values do not match the spec".into()));
    }
    let mut out = String::new();
    match &grid.stderr {
        Some(se) => {
            if se.len() != grid.values.len() {
                return Err(Error::Constraint("stderr length does not match the grid".into()));
            }
            out.push_str("re,im,value,stderr\n");
            for ((p, v), e) in points.iter().zip(&grid.values).zip(se) {
                out.push_str(&format!("{},{},{},{}\n", p.re, p.im, v, e));
            }
        }
        None => {
            out.push_str("re,im,value\n");
            for (p, v) in points.iter().zip(&grid.values) {
                out.push_str(&format!("{},{},{}\n", p.re, p.im, v));
            }
        }
    }
    atomic_write(path, out.as_bytes())
}

/// Writes a Cartesian grid as a plain matrix text block: `#`-prefixed header
/// lines describing the axes, then `n_im` rows of `n_re` space-separated
/// values (row i = i-th imaginary-axis value, ascending). Plot directly with
/// e.g. gnuplot's `matrix` mode.
///
/// # Errors
/// `Constraint` for a non-Cartesian spec — an explicit point list has no
/// matrix layout.
pub fn write_grid_matrix(path: &Path, grid: &WignerGrid) -> Result<()> {
    let GridSpec::Cartesian { re_min, re_max, n_re, im_min, im_max, n_im } = grid.spec else {
        return Err(Error::Constraint(
            "matrix output requires a Cartesian grid; this grid is an explicit point list".into(),
        ));
    };
    if grid.values.len() != n_re * n_im {
        return Err(Error::Constraint("grid values do not match the spec".into()));
    }
    let mut out = String::new();
    out.push_str(&format!(
        "# s = {}  method = {}\n",
        grid.meta.s,
        grid.meta
            .method
            .map(|m| format!("{m:?}").to_uppercase())
            .unwrap_or_else(|| "UNKNOWN".into())
    ));
    out.push_str(&format!("# re axis: {re_min} .. {re_max} ({n_re} columns)\n"));
    out.push_str(&format!("# im axis: {im_min} .. {im_max} ({n_im} rows)\n"));
    for i in 0..n_im {
        let row: Vec<String> =
            grid.values[i * n_re..(i + 1) * n_re].iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    atomic_write(path, out.as_bytes())
}
