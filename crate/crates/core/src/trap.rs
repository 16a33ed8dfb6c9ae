//! Physical Penning-trap model in SI units.
//!
//! A single charged particle in a uniform magnetic field `B ẑ` plus the
//! quadrupolar electrostatic potential `V = V₀ (x² + y² − 2z²)/(4d²)` splits
//! its motion into a fast cyclotron mode (GHz for an electron at ~1 T), the
//! axial oscillation along ẑ (MHz), and the slow magnetron drift (neglected
//! here). This module derives the mode frequencies, the measurement
//! back-action formulas that let the axial mode act as a meter for the
//! cyclotron mode, and the synthesized field configurations that realize the
//! two measurement couplings. No equation of motion is integrated: the field
//! synthesis is a symbolic coefficient record demonstrating experimental
//! realizability, not a field solver.
//!
//! # Unit mapping
//!
//! The source expressions for these couplings are conventionally written in
//! Gaussian units, where the minimal coupling is `p − (q/c)A`. This module is
//! SI-native (`p − qA`), so every Gaussian formula drops its factor of `c`:
//!
//! * cyclotron frequency `|e|B/mc → |e|B/m`,
//! * bottle coupling `κ = |e|b/2mc → |e|b/2m`,
//! * drive amplitudes `(mc/|e|β)·(…) → (m/|e|β)·(…)`.
//!
//! CODATA values of the constants are compiled in below.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Elementary charge, C (exact, 2019 SI).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Electron mass, kg (CODATA 2018).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Reduced Planck constant, J·s (from the exact h).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (exact, 2019 SI).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Which particle species sits in the trap. Electron and positron share a
/// mass; only the sign of the charge differs, which flips the sign of the
/// scalar correction in the synthesized fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Particle {
    Electron,
    Positron,
}

impl Particle {
    /// Signed charge in coulombs.
    pub fn charge(self) -> f64 {
        match self {
            Particle::Electron => -ELEMENTARY_CHARGE,
            Particle::Positron => ELEMENTARY_CHARGE,
        }
    }

    /// Rest mass in kilograms.
    pub fn mass(self) -> f64 {
        ELECTRON_MASS
    }
}

/// Physical trap parameters.
///
/// Field names double as the configuration-file keys.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrapConfig {
    /// Uniform magnetic field, tesla.
    pub field_tesla: f64,
    /// Electrode potential, volt.
    pub potential_volt: f64,
    /// Characteristic trap dimension d, meter.
    pub trap_size_m: f64,
    /// Magnetic-bottle strength b, tesla/meter².
    pub bottle_t_per_m2: f64,
    /// Quadrature-readout coupling strength g, 1/(meter·second) — chosen so
    /// that g·z has frequency units in the interaction `ħ g X(φ) z`.
    pub coupling_g: f64,
    /// Axial-bath temperature, kelvin.
    pub temperature_k: f64,
    /// Trapped species.
    pub particle: Particle,
}

impl Default for TrapConfig {
    /// A representative electron trap: 1 T field, 10 V on 3.3 mm electrodes,
    /// a weak bottle compliant with the b·d ≤ 0.01·B synthesis precondition,
    /// and a 4.2 K axial bath.
    fn default() -> Self {
        TrapConfig {
            field_tesla: 1.0,
            potential_volt: 10.0,
            trap_size_m: 3.3e-3,
            bottle_t_per_m2: 1.0,
            coupling_g: 1.0e6,
            temperature_k: 4.2,
            particle: Particle::Electron,
        }
    }
}

impl TrapConfig {
    /// Checks the static invariants: B > 0, V₀ > 0, d > 0, b ≥ 0, g ≥ 0,
    /// T ≥ 0, all finite.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            (self.field_tesla, "field_tesla"),
            (self.potential_volt, "potential_volt"),
            (self.trap_size_m, "trap_size_m"),
        ];
        for (v, name) in positive {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::Constraint(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        let nonneg = [
            (self.bottle_t_per_m2, "bottle_t_per_m2"),
            (self.coupling_g, "coupling_g"),
            (self.temperature_k, "temperature_k"),
        ];
        for (v, name) in nonneg {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Constraint(format!("{name} must be finite and ≥ 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// Frequencies and scales derived from a [`TrapConfig`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrapFrequencies {
    /// Cyclotron angular frequency ω_c = |e|B/m, rad/s.
    pub omega_c: f64,
    /// Axial angular frequency ω_z = √(|e|V₀/(m d²)), rad/s.
    pub omega_z: f64,
    /// Bottle coupling κ = |e|b/(2m), rad/(s·m²).
    pub kappa: f64,
    /// Cyclotron length scale β = √(m ω_c / 2ħ), 1/m.
    pub beta: f64,
}

impl TrapFrequencies {
    /// Particle mass recovered from the stored scales, m = 2ħβ²/ω_c — exact
    /// algebraic inversion of the β definition, so operations that only
    /// receive frequencies stay consistent with the config they came from.
    pub fn mass(&self) -> f64 {
        2.0 * HBAR * self.beta * self.beta / self.omega_c
    }
}

/// Derives the trap frequencies, enforcing the hierarchy ω_c > ω_z that the
/// mode separation (and everything downstream) assumes.
pub fn derive_frequencies(config: &TrapConfig) -> Result<TrapFrequencies> {
    config.validate()?;
    let m = config.particle.mass();
    let e = ELEMENTARY_CHARGE;
    let omega_c = e * config.field_tesla / m;
    let omega_z = (e * config.potential_volt / (m * config.trap_size_m * config.trap_size_m)).sqrt();
    let kappa = e * config.bottle_t_per_m2 / (2.0 * m);
    let beta = (m * omega_c / (2.0 * HBAR)).sqrt();
    if omega_c <= omega_z {
        return Err(Error::Constraint(format!(
            "frequency hierarchy violated: ω_c = {omega_c:.3e} ≤ ω_z = {omega_z:.3e}"
        )));
    }
    Ok(TrapFrequencies { omega_c, omega_z, kappa, beta })
}

/// Deterministic meter-shift model of the impulsive quadrature readout: a
/// kick of duration τ imprints the cyclotron quadrature value on the axial
/// momentum,
///
/// ```text
/// ⟨p_z(t+τ)⟩ = ⟨p_z(t)⟩ + ħ g τ ⟨X_c(φ)⟩ cos(ω_z t).
/// ```
///
/// This is the justification for the sampling shortcut in `measure`: reading
/// p_z immediately after the kick reads the quadrature directly.
///
/// # Errors
/// `KickTooSlow` unless `τ ≤ 0.01 · 2π/ω_z` — the impulsive approximation
/// needs the kick to be a small fraction of the axial period (the 1% factor
/// is this crate's conservative reading of "much shorter").
pub fn kick_readout(
    pz_mean_before: f64,
    g: f64,
    tau: f64,
    xc_value: f64,
    t: f64,
    omega_z: f64,
) -> Result<f64> {
    let max_tau = 0.01 * std::f64::consts::TAU / omega_z;
    if !tau.is_finite() || tau < 0.0 || tau > max_tau {
        return Err(Error::KickTooSlow { tau, max_tau });
    }
    Ok(pz_mean_before + HBAR * g * tau * xc_value * (omega_z * t).cos())
}

/// Axial frequency in the presence of `n_c` cyclotron quanta coupled through
/// the magnetic bottle: `Ω_z(n_c) = √(ω_z² + 2 ħ κ n_c / m)`.
///
/// `Ω_z²` is affine in `n_c` with slope `2ħκ/m`; resolving adjacent values of
/// `n_c` in the axial resonance is what makes the excitation-number channel a
/// quantum-nondemolition readout.
pub fn axial_frequency_shift(freqs: &TrapFrequencies, n_c: u32) -> f64 {
    let m = freqs.mass();
    (freqs.omega_z * freqs.omega_z + 2.0 * HBAR * freqs.kappa * n_c as f64 / m).sqrt()
}

/// Thermally shifted cyclotron frequency: the bottle couples the cyclotron
/// energy to z², so the thermal axial motion pulls the cyclotron line to
/// `ω_c + κ ⟨z²⟩` with `⟨z²⟩ = k_B T/(m ω_z²)` (equipartition of the free
/// axial oscillator).
pub fn cyclotron_shift(freqs: &TrapFrequencies, config: &TrapConfig) -> f64 {
    let m = config.particle.mass();
    let z2 = BOLTZMANN * config.temperature_k / (m * freqs.omega_z * freqs.omega_z);
    freqs.omega_c + freqs.kappa * z2
}

/// Measurement scheme selector for the field synthesis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scheme {
    /// Quadrature channel: continuous drive selecting the quadrature phase φ.
    Oht { phi: f64 },
    /// Displaced-number channel: a resonant drive of complex amplitude ε for
    /// `t ≤ τ`, then the magnetic bottle for `t > τ`.
    Pnt { epsilon: C64, tau: f64 },
}

/// Spatial profile of the drive part of a synthesized vector potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveProfile {
    /// No drive energized.
    None,
    /// Drive components proportional to ẑ (quadrature-channel coupling).
    AxialGradient,
    /// Spatially uniform drive (dipole-approximation displacement drive).
    Uniform,
}

/// Symbolic coefficient record of a synthesized field configuration.
///
/// The vector potential is
///
/// ```text
/// A = ( −static_b_half·y + profile(z)·drive_x − bottle_half·(y z² − y³/3),
///        static_b_half·x + profile(z)·drive_y + bottle_half·(x z² − x³/3),
///        0 )
/// ```
///
/// where `profile(z)` is `z` for [`DriveProfile::AxialGradient`], `1` for
/// [`DriveProfile::Uniform`], and absent for [`DriveProfile::None`]; the
/// scalar potential is
///
/// ```text
/// V = quad_coeff·(x² + y² − 2z²) + scalar_z2·z².
/// ```
///
/// `drive_{x,y}` are evaluated at the synthesis time `t`; `drive_omega` and
/// `drive_phase` record the underlying oscillation for provenance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    /// B/2, tesla — the uniform-field part of A.
    pub static_b_half: f64,
    /// V₀/(4d²), volt/m² — the quadrupole scalar coefficient.
    pub quad_coeff: f64,
    /// Drive x-coefficient at time t (tesla for an axial-gradient drive,
    /// tesla·meter for a uniform one).
    pub drive_x: f64,
    /// Drive y-coefficient at time t.
    pub drive_y: f64,
    /// Spatial profile of the drive term.
    pub drive_profile: DriveProfile,
    /// Angular frequency of the drive oscillation, rad/s.
    pub drive_omega: f64,
    /// Phase offset of the drive oscillation, rad.
    pub drive_phase: f64,
    /// b/2, tesla/m² — coefficient of the bottle's cubic terms.
    pub bottle_half: f64,
    /// Coefficient of the z² scalar correction, volt/m².
    pub scalar_z2: f64,
}

/// The unmodified trap: uniform field plus quadrupole, nothing energized.
pub fn bare_fields(config: &TrapConfig) -> FieldConfig {
    FieldConfig {
        static_b_half: config.field_tesla / 2.0,
        quad_coeff: config.potential_volt / (4.0 * config.trap_size_m * config.trap_size_m),
        drive_x: 0.0,
        drive_y: 0.0,
        drive_profile: DriveProfile::None,
        drive_omega: 0.0,
        drive_phase: 0.0,
        bottle_half: 0.0,
        scalar_z2: 0.0,
    }
}

/// Synthesizes the applied field configuration realizing the requested
/// measurement coupling at time `t`.
///
/// For the quadrature channel the drive is the z-proportional pair
/// `(m g/(|e|β))·(sin(φ − ω_c t), cos(φ − ω_c t))` plus a scalar z²
/// correction chosen to cancel the `(m g²/2β²) z²` energy term that arises
/// from squaring the drive part of the vector potential:
/// `scalar_z2 = −m g²/(2 q β²)` with q the *signed* charge. (The sign
/// convention of the charge in the source expression is ambiguous; this
/// implementation fixes it by that cancellation requirement, which makes the
/// correction positive for an electron.)
///
/// For the displaced-number channel the drive is spatially uniform,
/// `2(m/(|e|β))·(Im, Re){ε e^{−iω_c t}}` while `t ≤ τ`, after which the drive
/// is off and the magnetic bottle (coefficient b/2) is on. The scalar
/// potential is unchanged.
///
/// # Errors
/// `BottleTooStrong` for the displaced-number channel when `b·d > 0.01·B`,
/// the conservative weak-bottle proxy under which the rotating-wave
/// reduction of the bottle coupling is trusted.
pub fn synthesize_fields(config: &TrapConfig, scheme: Scheme, t: f64) -> Result<FieldConfig> {
    config.validate()?;
    let freqs = derive_frequencies(config)?;
    let m = config.particle.mass();
    let q = config.particle.charge();
    let mut fields = bare_fields(config);
    match scheme {
        Scheme::Oht { phi } => {
            let amp = m * config.coupling_g / (ELEMENTARY_CHARGE * freqs.beta);
            if amp != 0.0 {
                let theta = phi - freqs.omega_c * t;
                fields.drive_x = amp * theta.sin();
                fields.drive_y = amp * theta.cos();
                fields.drive_profile = DriveProfile::AxialGradient;
                fields.drive_omega = freqs.omega_c;
                fields.drive_phase = phi;
                // cancels the A²-induced (m g²/2β²) z² energy term exactly
                fields.scalar_z2 =
                    -m * config.coupling_g * config.coupling_g / (2.0 * q * freqs.beta * freqs.beta);
            }
        }
        Scheme::Pnt { epsilon, tau } => {
            let bd = config.bottle_t_per_m2 * config.trap_size_m;
            let limit = 0.01 * config.field_tesla;
            if bd > limit {
                return Err(Error::BottleTooStrong { bd, limit });
            }
            if t <= tau {
                let w = epsilon * C64::from_polar(1.0, -freqs.omega_c * t);
                let amp = 2.0 * m / (ELEMENTARY_CHARGE * freqs.beta);
                if epsilon.norm() != 0.0 {
                    fields.drive_x = amp * w.im;
                    fields.drive_y = amp * w.re;
                    fields.drive_profile = DriveProfile::Uniform;
                    fields.drive_omega = freqs.omega_c;
                    fields.drive_phase = epsilon.arg();
                }
            } else {
                fields.bottle_half = config.bottle_t_per_m2 / 2.0;
            }
        }
    }
    Ok(fields)
}
