//! Phase-space evaluation grids and the reconstructed-function container.
//!
//! Every reconstruction routine and the analytic oracle produce a
//! [`WignerGrid`]: a flat list of real values (plus optional standard
//! errors) bound to a [`GridSpec`] naming the complex phase-space points the
//! values live on, and a [`GridMeta`] recording how the values were obtained.
//! Keeping the point layout in the spec rather than in per-point structs
//! makes grid comparison a cheap equality check on the spec.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Where in phase space a grid's values are evaluated.
///
/// `Cartesian` enumerates a row-major rectangle: the imaginary axis is the
/// outer loop (starting at `im_min`), the real axis the inner one; axis
/// coordinates are `min + j·(max − min)/(n − 1)` so both endpoints are
/// included exactly. `Points` is an explicit list for irregular layouts
/// (e.g. a calibration ring).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridSpec {
    Cartesian {
        re_min: f64,
        re_max: f64,
        n_re: usize,
        im_min: f64,
        im_max: f64,
        n_im: usize,
    },
    Points { points: Vec<C64> },
}

impl GridSpec {
    /// Square grid centered on the origin: `n × n` points over
    /// `[−extent, extent]` on both axes.
    pub fn square(extent: f64, n: usize) -> Self {
        GridSpec::Cartesian {
            re_min: -extent,
            re_max: extent,
            n_re: n,
            im_min: -extent,
            im_max: extent,
            n_im: n,
        }
    }

    /// Number of evaluation points.
    pub fn len(&self) -> usize {
        match self {
            GridSpec::Cartesian { n_re, n_im, .. } => n_re * n_im,
            GridSpec::Points { points } => points.len(),
        }
    }

    /// True when the grid holds no points.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Materializes the evaluation points in storage order (row-major for
    /// `Cartesian`: im outer, re inner).
    pub fn points(&self) -> Vec<C64> {
        match self {
            GridSpec::Cartesian { re_min, re_max, n_re, im_min, im_max, n_im } => {
                let axis = |min: f64, max: f64, n: usize, j: usize| -> f64 {
                    if n <= 1 {
                        min
                    } else {
                        min + j as f64 * (max - min) / (n - 1) as f64
                    }
                };
                let mut pts = Vec::with_capacity(n_re * n_im);
                for i in 0..*n_im {
                    let im = axis(*im_min, *im_max, *n_im, i);
                    for j in 0..*n_re {
                        pts.push(C64::new(axis(*re_min, *re_max, *n_re, j), im));
                    }
                }
                pts
            }
            GridSpec::Points { points } => points.clone(),
        }
    }
}

/// Which channel produced a grid's values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Quadrature histograms + inverse Radon transform.
    #[serde(rename = "OHT")]
    Oht,
    /// Displaced excitation-number statistics.
    #[serde(rename = "PNT")]
    Pnt,
    /// Analytic evaluation from a known state (no sampling).
    #[serde(rename = "ORACLE")]
    Oracle,
}

/// Provenance and diagnostics attached to a [`WignerGrid`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GridMeta {
    /// Ordering parameter s of the quasiprobability family.
    pub s: f64,
    /// Producing channel; `None` for hand-built grids.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method: Option<Method>,
    /// Master seed of the simulated data behind the values, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// Per-record sample counts of the underlying data, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sample_counts: Option<Vec<u64>>,
    /// Detection efficiency the data were simulated at, if any (< 1 marks
    /// the grid as smoothed rather than faithful).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub efficiency: Option<f64>,
    /// Largest imaginary part discarded when taking the real part of an
    /// inverse-Radon integral — a consistency diagnostic that should sit at
    /// the statistical-noise scale.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub imag_residue: Option<f64>,
    /// True when the values estimate a smoothed (lossy-detection) function
    /// rather than the ideal one.
    #[serde(default)]
    pub smoothed: bool,
    /// Non-fatal diagnostics (e.g. a radial cutoff too coarse for the
    /// requested damping).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
    /// Excitation-number cutoff used in a series reconstruction, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n_max: Option<usize>,
    /// Echo of the run configuration that produced the grid, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config_echo: Option<serde_json::Value>,
}

/// A quasiprobability function sampled on a grid.
///
/// `values[k]` belongs to `spec.points()[k]`; `stderr`, when present, is the
/// per-point one-sigma statistical uncertainty and has the same length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WignerGrid {
    pub spec: GridSpec,
    pub values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stderr: Option<Vec<f64>>,
    pub meta: GridMeta,
}

impl WignerGrid {
    /// Largest absolute value on the grid (0 for an empty grid).
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}
