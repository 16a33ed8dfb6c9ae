//! Property suite for the trap physics: algebraic identities of the derived
//! frequencies, the affine number-dependence of the squared axial frequency,
//! reduction of every synthesized field configuration to the bare trap when
//! the couplings vanish, and the validity gates on the synthesis inputs.

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use cyclotomo::error::Error;
use cyclotomo::trap::{
    axial_frequency_shift, bare_fields, cyclotron_shift, derive_frequencies, kick_readout,
    synthesize_fields, Particle, Scheme, TrapConfig, ELECTRON_MASS, ELEMENTARY_CHARGE,
};

/// Trap configurations inside the physically valid window: the frequency
/// hierarchy ω_c ≫ ω_z holds across the whole range by construction.
fn valid_configs() -> impl Strategy<Value = TrapConfig> {
    (
        0.5..5.0_f64,     // field, T
        5.0..50.0_f64,    // potential, V
        1e-3..5e-3_f64,   // trap size, m
        0.2..2.0_f64,     // bottle, T/m²
        1e5..1e7_f64,     // coupling g
        0.0..10.0_f64,    // temperature, K
    )
        .prop_map(|(b, v, d, bottle, g, t)| TrapConfig {
            field_tesla: b,
            potential_volt: v,
            trap_size_m: d,
            bottle_t_per_m2: bottle,
            coupling_g: g,
            temperature_k: t,
            particle: Particle::Electron,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The cyclotron relation inverts exactly: m = eB/ω_c recovers the
    /// electron mass from any derived frequency set.
    #[test]
    fn mass_recovers_from_the_cyclotron_relation(cfg in valid_configs()) {
        let f = derive_frequencies(&cfg).unwrap();
        let m = ELEMENTARY_CHARGE * cfg.field_tesla / f.omega_c;
        prop_assert!((m - ELECTRON_MASS).abs() / ELECTRON_MASS < 1e-12);
        prop_assert!((f.mass() - ELECTRON_MASS).abs() / ELECTRON_MASS < 1e-12);
    }

    /// The frequency hierarchy holds across the valid window.
    #[test]
    fn frequency_hierarchy(cfg in valid_configs()) {
        let f = derive_frequencies(&cfg).unwrap();
        prop_assert!(f.omega_c > 10.0 * f.omega_z, "ω_c = {}, ω_z = {}", f.omega_c, f.omega_z);
        prop_assert!(f.kappa > 0.0 && f.beta > 0.0);
    }

    /// Ω_z²(n_c) is affine in the excitation number: equal increments for
    /// every step, anchored at Ω_z(0) = ω_z. (The tolerance accommodates the
    /// ~16-digit cancellation in forming the increments.)
    #[test]
    fn squared_axial_frequency_is_affine_in_the_number(cfg in valid_configs()) {
        let f = derive_frequencies(&cfg).unwrap();
        prop_assert_eq!(axial_frequency_shift(&f, 0), f.omega_z);
        let sq = |n| {
            let w = axial_frequency_shift(&f, n);
            w * w
        };
        let slope = sq(1) - sq(0);
        prop_assert!(slope > 0.0);
        // each squared frequency is ~ω_z², so forming increments cancels
        // ~16 digits; a few ulps of ω_z² is the honest noise scale
        let noise = 16.0 * f64::EPSILON * f.omega_z * f.omega_z;
        prop_assert!(noise < 0.05 * slope, "increments would drown in noise");
        for n in [1u32, 2, 5, 17, 100] {
            let inc = sq(n + 1) - sq(n);
            prop_assert!(
                (inc - slope).abs() <= noise,
                "n = {n}: increment {inc} vs slope {slope} (noise {noise})"
            );
        }
    }

    /// The thermally pulled cyclotron line sits above the bare one, and
    /// collapses onto it as T → 0.
    #[test]
    fn thermal_pull_is_nonnegative_and_vanishes_at_zero_temperature(cfg in valid_configs()) {
        let f = derive_frequencies(&cfg).unwrap();
        prop_assert!(cyclotron_shift(&f, &cfg) >= f.omega_c);
        let cold = TrapConfig { temperature_k: 0.0, ..cfg };
        prop_assert_eq!(cyclotron_shift(&f, &cold), f.omega_c);
    }

    /// With both couplings off, every synthesized configuration — either
    /// channel, any phase, any time — is exactly the bare trap.
    #[test]
    fn zero_couplings_reduce_to_the_bare_trap(
        cfg in valid_configs(),
        phi in 0.0..std::f64::consts::PI,
        t in 0.0..1e-6_f64,
    ) {
        let off = TrapConfig { coupling_g: 0.0, bottle_t_per_m2: 0.0, ..cfg };
        let bare = bare_fields(&off);
        prop_assert_eq!(synthesize_fields(&off, Scheme::Oht { phi }, t).unwrap(), bare);
        let pnt = Scheme::Pnt { epsilon: C64::new(0.0, 0.0), tau: 1e-7 };
        let after = synthesize_fields(&off, pnt, t).unwrap();
        // after the drive window the (zero) bottle is switched in; both
        // cases must still be the bare trap
        prop_assert_eq!(after, bare);
    }

    /// The quadrature-channel drive pair traces a circle of radius
    /// mg/(e β): its two components always have that fixed norm.
    #[test]
    fn quadrature_drive_amplitude_is_phase_independent(
        cfg in valid_configs(),
        phi in 0.0..std::f64::consts::PI,
        t in 0.0..1e-9_f64,
    ) {
        let f = derive_frequencies(&cfg).unwrap();
        let fields = synthesize_fields(&cfg, Scheme::Oht { phi }, t).unwrap();
        let amp = (fields.drive_x * fields.drive_x + fields.drive_y * fields.drive_y).sqrt();
        let expect = ELECTRON_MASS * cfg.coupling_g / (ELEMENTARY_CHARGE * f.beta);
        prop_assert!((amp - expect).abs() <= 1e-12 * expect.abs());
    }

    /// The weak-bottle gate fires exactly when b·d exceeds 1% of B.
    #[test]
    fn bottle_gate_trips_on_the_documented_boundary(cfg in valid_configs()) {
        let strong = TrapConfig {
            bottle_t_per_m2: 0.02 * cfg.field_tesla / cfg.trap_size_m,
            ..cfg
        };
        let scheme = Scheme::Pnt { epsilon: C64::new(0.1, 0.0), tau: 1e-7 };
        let tripped = matches!(
            synthesize_fields(&strong, scheme, 0.0),
            Err(Error::BottleTooStrong { .. })
        );
        prop_assert!(tripped);
        let weak = TrapConfig {
            bottle_t_per_m2: 0.005 * cfg.field_tesla / cfg.trap_size_m,
            ..cfg
        };
        prop_assert!(synthesize_fields(&weak, scheme, 0.0).is_ok());
    }

    /// The impulsive-readout gate: kicks beyond 1% of the axial period are
    /// rejected, instantaneous kicks transfer the quadrature linearly.
    #[test]
    fn kick_gate_and_linearity(cfg in valid_configs(), xc in -3.0..3.0_f64) {
        let f = derive_frequencies(&cfg).unwrap();
        let max_tau = 0.01 * std::f64::consts::TAU / f.omega_z;
        let rejected = matches!(
            kick_readout(0.0, cfg.coupling_g, 2.0 * max_tau, xc, 0.0, f.omega_z),
            Err(Error::KickTooSlow { .. })
        );
        prop_assert!(rejected);
        let tau = 0.5 * max_tau;
        let p0 = kick_readout(0.0, cfg.coupling_g, tau, 0.0, 0.0, f.omega_z).unwrap();
        prop_assert_eq!(p0, 0.0);
        let p1 = kick_readout(0.0, cfg.coupling_g, tau, xc, 0.0, f.omega_z).unwrap();
        let p2 = kick_readout(0.0, cfg.coupling_g, tau, 2.0 * xc, 0.0, f.omega_z).unwrap();
        prop_assert!((p2 - 2.0 * p1).abs() <= 1e-12 * p1.abs().max(1e-300));
    }
}
