//! Tomographic reconstruction of the cyclotron quantum state of a trapped
//! electron, simulated end to end.
//!
//! A single electron in a Penning trap carries a fast circular cyclotron
//! motion that is, quantum mechanically, a harmonic oscillator — and its
//! quantum state can be measured. This crate simulates two complementary
//! tomography channels for that oscillator and reconstructs s-parametrized
//! quasiprobability (Wigner-family) functions from the simulated data:
//!
//! * **Quadrature channel** (`measure` → `radon`): an axial-gradient drive
//!   couples one cyclotron quadrature `X(φ)` to the axial meter; scanning φ
//!   and histogramming the readouts gives tomographic projections, inverted
//!   by filtered back-projection (s < 0).
//! * **Displaced-number channel** (`measure` → `pnt`): a resonant drive
//!   displaces the state in phase space and a magnetic bottle reads the
//!   excitation number nondestructively; the displaced-number statistics at
//!   each displacement E give the function value at E directly through an
//!   alternating series (s ≤ 0, including s = 0).
//!
//! Both reconstructions are validated against the analytic oracle in
//! [`analysis`], which evaluates the same series from the exact state. The
//! trap physics justifying the two couplings — mode frequencies, field
//! synthesis, kick readout, bottle shifts — lives in [`trap`], in SI units.
//!
//! Conventions, fixed crate-wide:
//! * quadrature `X(φ) = a e^{−iφ} + a† e^{iφ}`, vacuum variance 1;
//! * quasiprobability normalization without 1/π: `∫ W d²E = π`, vacuum
//!   Wigner value 2 at the origin;
//! * states live in a truncated Fock space and constructors refuse cutoffs
//!   that clip their tails (see [`fock`]).
//!
//! The [`pipeline`] module packages the two reference workloads — an odd
//! cat state reconstructed through each channel — and the `cyclotomo` binary
//! exposes everything as subcommands with reproducible seeding and atomic
//! file output.

pub mod analysis;
pub mod config;
pub mod error;
pub mod fock;
pub mod grid;
pub mod io;
pub mod measure;
pub mod pipeline;
pub mod pnt;
pub mod radon;
pub mod trap;

pub use analysis::{compare, oracle_wigner, ComparisonReport};
pub use error::{Error, Result};
pub use fock::QuantumState;
pub use grid::{GridMeta, GridSpec, Method, WignerGrid};
pub use measure::{run_protocol, MeasurementSet, Protocol};
pub use radon::{build_marginals, inverse_radon, MarginalSet};
pub use trap::{derive_frequencies, TrapConfig, TrapFrequencies};
