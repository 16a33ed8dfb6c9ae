//! Error taxonomy shared by every module.
//!
//! Errors split into two process-level classes, mirrored by
//! [`Error::exit_code`]:
//!
//! * **usage errors** (exit code 1): bad invocations, unreadable or malformed
//!   files, unknown configuration keys — problems with how the program was
//!   asked to run;
//! * **constraint errors** (exit code 2): violations of a numerical or
//!   physical precondition — a Fock cutoff too small for the requested state,
//!   a reconstruction parameter outside its convergence region, a detector
//!   efficiency outside (0, 1], and so on.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// The Fock-space truncation cannot hold the requested state to the
    /// declared tail tolerance.
    #[error("fock cutoff too small: {0}")]
    CutoffTooSmall(String),

    /// A state whose defining limit degenerates (e.g. an odd cat at α = 0,
    /// whose normalization constant diverges).
    #[error("degenerate state: {0}")]
    DegenerateState(String),

    /// A quantum-state invariant (normalization, hermiticity, finiteness)
    /// does not hold.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Detector efficiency outside (0, 1].
    #[error("invalid efficiency: η must lie in (0, 1], got {0}")]
    InvalidEfficiency(f64),

    /// The impulsive-readout approximation requires the interaction time to
    /// be a small fraction of the axial period.
    #[error(
        "kick too slow: interaction time {tau:.3e} s exceeds {max_tau:.3e} s \
         (1% of the axial period); the impulsive readout model does not apply"
    )]
    KickTooSlow { tau: f64, max_tau: f64 },

    /// The magnetic-bottle strength violates the weak-bottle validity proxy.
    #[error(
        "magnetic bottle too strong: b·d = {bd:.3e} exceeds 0.01·B = {limit:.3e}; \
         the rotating-wave treatment of the bottle requires b ≪ B"
    )]
    BottleTooStrong { bd: f64, limit: f64 },

    /// No measurement records were supplied where at least one is required.
    #[error("no measurement records supplied")]
    EmptyRecords,

    /// Two quadrature records claim the same phase.
    #[error("duplicate phase {0} in quadrature records")]
    DuplicatePhase(f64),

    /// Back-projection requested at s ≥ 0, where the kernel exp(s r²/8)
    /// does not decay and the inversion integral diverges.
    #[error(
        "inverse Radon reconstruction requires s < 0 (the back-projection kernel \
         exp(s r²/8) diverges for s ≥ 0), got s = {0}"
    )]
    SNonNegative(f64),

    /// The displaced-number series is only defined for s < 1.
    #[error("series parameter out of range: s must satisfy s < 1, got s = {0}")]
    InvalidS(f64),

    /// Counts were observed above the requested series truncation.
    #[error("n_max = {n_max} too small: an excitation number {observed} was observed")]
    NMaxTooSmall { observed: usize, n_max: usize },

    /// Two grids that must match (spec and s) do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Any other violated numerical or physical precondition.
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// Malformed configuration: unknown keys, bad values, missing sections.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Filesystem failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failure.
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code class: 1 for usage/configuration/i/o problems,
    /// 2 for numerical or physical constraint violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Io(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_split_usage_from_constraint() {
        assert_eq!(Error::Config("x".into()).exit_code(), 1);
        assert_eq!(Error::SNonNegative(0.0).exit_code(), 2);
        assert_eq!(Error::CutoffTooSmall("x".into()).exit_code(), 2);
        assert_eq!(Error::InvalidEfficiency(0.0).exit_code(), 2);
    }

    #[test]
    fn messages_name_the_failing_quantity() {
        let msg = Error::SNonNegative(0.25).to_string();
        assert!(msg.contains("s < 0"));
        assert!(msg.contains("0.25"));
        let msg = Error::NMaxTooSmall { observed: 9, n_max: 4 }.to_string();
        assert!(msg.contains('9') && msg.contains('4'));
    }
}
