//! Run configuration: a TOML file describing state, trap, protocol,
//! reconstruction knobs, and output routing.
//!
//! Every section is optional — commands fill in their own defaults — but
//! unknown keys are rejected by name anywhere in the tree, so a typo like
//! `feild_tesla` fails loudly instead of silently falling back to a default.
//!
//! Output routing precedence: an explicit command-line flag wins, then the
//! config file's `output` entry, then the `CYCLOTOMO_OUT_DIR` environment
//! variable, then the current directory. Relative output paths are joined
//! onto the resolved directory; absolute paths are used verbatim.

use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{self, QuantumState};
use crate::grid::GridSpec;
use crate::measure::Protocol;
use crate::trap::TrapConfig;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "CYCLOTOMO_OUT_DIR";

/// Declarative state recipe.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Coherent {
        alpha_re: f64,
        #[serde(default)]
        alpha_im: f64,
        dim: usize,
    },
    OddCat {
        alpha_re: f64,
        #[serde(default)]
        alpha_im: f64,
        dim: usize,
    },
    Fock {
        n: usize,
        dim: usize,
    },
    Thermal {
        nbar: f64,
        dim: usize,
    },
}

impl StateSpec {
    /// Materializes the state (validating through the normal constructors).
    pub fn build(&self) -> Result<QuantumState> {
        match *self {
            StateSpec::Coherent { alpha_re, alpha_im, dim } => {
                fock::coherent_state(C64::new(alpha_re, alpha_im), dim)
            }
            StateSpec::OddCat { alpha_re, alpha_im, dim } => {
                fock::odd_cat_state(C64::new(alpha_re, alpha_im), dim)
            }
            StateSpec::Fock { n, dim } => fock::fock_state(n, dim),
            StateSpec::Thermal { nbar, dim } => fock::thermal_state(nbar, dim),
        }
    }
}

/// Grid selection: a named preset or an explicit spec.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridChoice {
    Named(String),
    Spec(GridSpec),
}

/// The default displaced-number scan layout: 17 × 15 Cartesian points over
/// Re E ∈ [−3.2, 3.2], Im E ∈ [−2.8, 2.8] — 255 points with the origin at
/// the exact center.
pub fn default255() -> GridSpec {
    GridSpec::Cartesian {
        re_min: -3.2,
        re_max: 3.2,
        n_re: 17,
        im_min: -2.8,
        im_max: 2.8,
        n_im: 15,
    }
}

impl GridChoice {
    /// Resolves the choice to a concrete spec.
    ///
    /// # Errors
    /// `Config` naming the preset for an unknown name.
    pub fn resolve(&self) -> Result<GridSpec> {
        match self {
            GridChoice::Named(name) if name == "default255" => Ok(default255()),
            GridChoice::Named(name) => Err(Error::Config(format!(
                "unknown grid preset `{name}`; available: default255"
            ))),
            GridChoice::Spec(spec) => Ok(spec.clone()),
        }
    }
}

/// Declarative measurement campaign.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProtocolSpec {
    Oht { phases: usize, samples: usize },
    Pnt { grid: GridChoice, samples: usize },
}

impl ProtocolSpec {
    /// Resolves to the executable protocol (and the grid layout behind a
    /// displaced-number scan, for later rebinding).
    pub fn to_protocol(&self) -> Result<(Protocol, Option<GridSpec>)> {
        match self {
            ProtocolSpec::Oht { phases, samples } => Ok((
                Protocol::Oht { n_phases: *phases, samples_per_phase: *samples },
                None,
            )),
            ProtocolSpec::Pnt { grid, samples } => {
                let spec = grid.resolve()?;
                Ok((
                    Protocol::Pnt { points: spec.points(), samples_per_point: *samples },
                    Some(spec),
                ))
            }
        }
    }
}

/// Numerical knobs for reconstruction; anything unset falls back to the
/// command's documented default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReconstructionSettings {
    /// Ordering parameter s.
    pub s: Option<f64>,
    /// Histogram bins for quadrature marginals.
    pub n_bins: Option<usize>,
    /// Histogram range (lower edge).
    pub x_min: Option<f64>,
    /// Histogram range (upper edge).
    pub x_max: Option<f64>,
    /// Radial cutoff of the back-projection integral.
    pub r_max: Option<f64>,
    /// Radial grid points.
    pub n_r: Option<usize>,
    /// Series truncation for displaced-number reconstruction.
    pub n_max: Option<usize>,
    /// Output grid half-width (quadrature channel).
    pub extent: Option<f64>,
    /// Output grid points per axis (quadrature channel).
    pub n_grid: Option<usize>,
}

/// Top-level run configuration.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// State to simulate.
    pub state: Option<StateSpec>,
    /// Trap parameters (defaults supplied when absent).
    pub trap: Option<TrapConfig>,
    /// Measurement campaign.
    pub protocol: Option<ProtocolSpec>,
    /// Reconstruction knobs.
    pub reconstruction: Option<ReconstructionSettings>,
    /// Master seed for the random streams.
    pub seed: Option<u64>,
    /// Detection efficiency η ∈ (0, 1].
    pub efficiency: Option<f64>,
    /// Output directory.
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Parses a TOML document, rejecting unknown keys by name.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Loads and parses a TOML file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    /// Serializes back to TOML (used for config echoes and round-trip
    /// checks).
    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }
}

/// Resolves the output directory: flag > config > environment > current dir.
pub fn resolve_output_dir(flag: Option<&Path>, config: &RunConfig) -> PathBuf {
    if let Some(dir) = flag {
        return dir.to_path_buf();
    }
    if let Some(dir) = &config.output {
        return dir.clone();
    }
    if let Some(dir) = std::env::var_os(OUT_DIR_ENV) {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    PathBuf::from(".")
}

/// Joins a possibly-relative output path onto the resolved directory;
/// absolute paths pass through verbatim.
pub fn join_output(dir: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        dir.join(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config_parses_and_round_trips() {
        let text = r#"
seed = 7
efficiency = 0.8
output = "out/run1"

[state]
kind = "odd_cat"
alpha_re = 1.5
dim = 32

[trap]
field_tesla = 1.0
potential_volt = 10.0
trap_size_m = 0.0033
bottle_t_per_m2 = 1.0
coupling_g = 1e6
temperature_k = 4.2
particle = "electron"

[protocol]
kind = "oht"
phases = 27
samples = 1000

[reconstruction]
s = -0.25
n_bins = 64
x_min = -6.0
x_max = 6.0
"#;
        let cfg = RunConfig::from_toml_str(text).unwrap();
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.efficiency, Some(0.8));
        assert_eq!(
            cfg.state,
            Some(StateSpec::OddCat { alpha_re: 1.5, alpha_im: 0.0, dim: 32 })
        );
        assert_eq!(
            cfg.protocol,
            Some(ProtocolSpec::Oht { phases: 27, samples: 1000 })
        );
        assert_eq!(cfg.reconstruction.unwrap().s, Some(-0.25));
        assert_eq!(cfg.trap.unwrap().field_tesla, 1.0);

        // round trip through TOML is stable
        let echoed = cfg.to_toml_string().unwrap();
        let back = RunConfig::from_toml_str(&echoed).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn unknown_keys_are_rejected_by_name() {
        let err = RunConfig::from_toml_str("fieldd_tesla = 1.0").unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(err.to_string().contains("fieldd_tesla"), "message: {err}");

        let err = RunConfig::from_toml_str(
            "[trap]\nfield_tesla = 1.0\nbottle_strength = 2.0\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("bottle_strength"), "message: {err}");

        let err = RunConfig::from_toml_str(
            "[state]\nkind = \"fock\"\nn = 1\ndim = 8\nphase = 0.5\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("phase"), "message: {err}");
    }

    #[test]
    fn trap_section_fills_defaults_for_missing_keys() {
        let cfg = RunConfig::from_toml_str("[trap]\nfield_tesla = 2.0\n").unwrap();
        let trap = cfg.trap.unwrap();
        assert_eq!(trap.field_tesla, 2.0);
        assert_eq!(trap.potential_volt, 10.0); // default
    }

    #[test]
    fn named_grid_resolves_and_unknown_name_errors() {
        let spec = GridChoice::Named("default255".into()).resolve().unwrap();
        assert_eq!(spec.len(), 255);
        assert_eq!(spec, default255());

        let err = GridChoice::Named("default999".into()).resolve().unwrap_err();
        assert!(err.to_string().contains("default999"));
    }

    #[test]
    fn pnt_protocol_with_named_grid_parses() {
        let text = r#"
[protocol]
kind = "pnt"
grid = "default255"
samples = 1000
"#;
        let cfg = RunConfig::from_toml_str(text).unwrap();
        let (protocol, grid) = cfg.protocol.unwrap().to_protocol().unwrap();
        let Protocol::Pnt { points, samples_per_point } = protocol else {
            panic!("wrong channel")
        };
        assert_eq!(points.len(), 255);
        assert_eq!(samples_per_point, 1000);
        assert_eq!(grid, Some(default255()));
    }

    #[test]
    fn pnt_protocol_with_explicit_grid_parses() {
        let text = r#"
[protocol]
kind = "pnt"
samples = 500

[protocol.grid]
kind = "cartesian"
re_min = -1.0
re_max = 1.0
n_re = 3
im_min = -1.0
im_max = 1.0
n_im = 3
"#;
        let cfg = RunConfig::from_toml_str(text).unwrap();
        let (protocol, grid) = cfg.protocol.unwrap().to_protocol().unwrap();
        let Protocol::Pnt { points, .. } = protocol else { panic!("wrong channel") };
        assert_eq!(points.len(), 9);
        assert!(matches!(grid, Some(GridSpec::Cartesian { n_re: 3, n_im: 3, .. })));
    }

    #[test]
    fn state_specs_build_the_right_states() {
        let vac = StateSpec::Coherent { alpha_re: 0.0, alpha_im: 0.0, dim: 16 }.build().unwrap();
        assert!((vac.populations()[0] - 1.0).abs() < 1e-12);

        let cat = StateSpec::OddCat { alpha_re: 1.5, alpha_im: 0.0, dim: 32 }.build().unwrap();
        assert!(cat.populations()[0] < 1e-30);

        assert!(StateSpec::Fock { n: 40, dim: 32 }.build().is_err());
    }

    #[test]
    fn output_dir_precedence() {
        let cfg = RunConfig { output: Some(PathBuf::from("cfgdir")), ..RunConfig::default() };
        assert_eq!(
            resolve_output_dir(Some(Path::new("flagdir")), &cfg),
            PathBuf::from("flagdir")
        );
        assert_eq!(resolve_output_dir(None, &cfg), PathBuf::from("cfgdir"));
        // environment fallback is exercised in the CLI integration tests,
        // where the process environment can be controlled per invocation

        assert_eq!(
            join_output(Path::new("base"), Path::new("file.json")),
            PathBuf::from("base/file.json")
        );
        assert_eq!(
            join_output(Path::new("base"), Path::new("/abs/file.json")),
            PathBuf::from("/abs/file.json")
        );
    }
}
