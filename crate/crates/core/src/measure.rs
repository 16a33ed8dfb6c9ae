//! Monte-Carlo simulation of the two measurement channels.
//!
//! Both channels are simulated at the level of their ideal single-shot
//! statistics: the quadrature channel draws from the exact marginal
//! distribution `P(X, φ)` of the state (the impulsive axial-kick readout in
//! `trap` transfers the quadrature value faithfully, so sampling the marginal
//! is the honest shortcut), and the number channel draws from the exact
//! displaced excitation-number distribution. Detection inefficiency is an
//! optional degradation applied per shot: additive Gaussian noise of variance
//! `(1 − η)/η` on quadrature values, binomial thinning on excitation counts.
//!
//! Reproducibility policy: every record carries the seed that generated it,
//! derived from a master seed with [`split_seed`]; re-running a protocol with
//! the same master seed reproduces records bit for bit.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{self, QuantumState};

/// One phase's worth of quadrature data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OhtRecord {
    /// Quadrature phase φ ∈ [0, π).
    pub phi: f64,
    /// Sampled quadrature values.
    pub samples: Vec<f64>,
    /// Seed that produced `samples`.
    pub seed: u64,
    /// Detection efficiency the samples were drawn at.
    pub efficiency: f64,
}

/// JSON object keys are strings, so the sparse count histogram serializes
/// its excitation numbers as decimal strings explicitly. (Leaving the
/// conversion to the JSON layer breaks inside internally-tagged enums, whose
/// content is re-deserialized from a generic buffer without the JSON-specific
/// integer-key support.)
mod count_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<u32, u64>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_map(map.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<BTreeMap<u32, u64>, D::Error> {
        let raw = BTreeMap::<String, u64>::deserialize(de)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.parse::<u32>()
                    .map(|k| (k, v))
                    .map_err(|_| D::Error::custom(format!("count key `{k}` is not a u32")))
            })
            .collect()
    }
}

/// One displacement's worth of excitation-number data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PntRecord {
    /// Displacement amplitude E applied before counting.
    pub e: C64,
    /// Histogram of observed excitation numbers (sparse; absent keys are 0).
    #[serde(with = "count_keys")]
    pub counts: BTreeMap<u32, u64>,
    /// Total number of shots (= sum of `counts` values).
    pub total: u64,
    /// Seed that produced `counts`.
    pub seed: u64,
    /// Detection efficiency the counts were drawn at.
    pub efficiency: f64,
}

/// Derives the seed for record `index` from a protocol's master seed.
///
/// SplitMix64 finalizer over `master + (index+1)·γ` with the usual 64-bit
/// golden-ratio increment γ — adjacent indices land in uncorrelated streams,
/// and the master seed itself is never used directly, so a record seed never
/// collides with the master by construction.
pub fn split_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Number of points the quadrature CDF is tabulated on.
const CDF_POINTS: usize = 4096;
/// Quadrature values are drawn from [−X_RANGE, X_RANGE]; beyond ±10 every
/// state this crate can represent has negligible marginal mass.
const X_RANGE: f64 = 10.0;

/// Tabulates `(x, CDF(x))` for the quadrature marginal at phase `phi` on a
/// uniform grid over [−10, 10] (trapezoid accumulation, normalized to end at
/// exactly 1). Exposed for distribution-level tests of the sampler.
pub fn quadrature_cdf_table(state: &QuantumState, phi: f64) -> (Vec<f64>, Vec<f64>) {
    let xs: Vec<f64> = (0..CDF_POINTS)
        .map(|i| -X_RANGE + 2.0 * X_RANGE * i as f64 / (CDF_POINTS - 1) as f64)
        .collect();
    let pdf = fock::quadrature_pdf(state, phi, &xs);
    let dx = xs[1] - xs[0];
    let mut cdf = Vec::with_capacity(CDF_POINTS);
    let mut acc = 0.0;
    cdf.push(0.0);
    for i in 1..CDF_POINTS {
        acc += 0.5 * (pdf[i - 1] + pdf[i]) * dx;
        cdf.push(acc);
    }
    let norm = *cdf.last().unwrap();
    for c in &mut cdf {
        *c /= norm;
    }
    (xs, cdf)
}

/// Draws one value from a tabulated CDF by inverse-transform sampling with
/// linear interpolation between grid points.
fn inverse_cdf_draw(xs: &[f64], cdf: &[f64], u: f64) -> f64 {
    // binary search for the first index with cdf[i] ≥ u
    let mut lo = 0usize;
    let mut hi = cdf.len() - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if cdf[mid] < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let span = cdf[hi] - cdf[lo];
    if span <= 0.0 {
        return xs[lo];
    }
    let t = (u - cdf[lo]) / span;
    xs[lo] + t * (xs[hi] - xs[lo])
}

/// Simulates `n_samples` quadrature measurements at phase `phi`.
///
/// Ideal values are drawn from the exact marginal of `state` by tabulated
/// inverse-CDF sampling; at efficiency η < 1 each value gains independent
/// Gaussian noise of variance `(1 − η)/η` (the heterodyne-style noise
/// penalty of a lossy quadrature detector, in the vacuum-variance-1
/// convention).
///
/// # Errors
/// - `Constraint` if `phi ∉ [0, π)` or `n_samples == 0`;
/// - `InvalidEfficiency` if `efficiency ∉ (0, 1]`.
pub fn sample_quadrature(
    state: &QuantumState,
    phi: f64,
    n_samples: usize,
    efficiency: f64,
    seed: u64,
) -> Result<OhtRecord> {
    if !phi.is_finite() || !(0.0..std::f64::consts::PI).contains(&phi) {
        return Err(Error::Constraint(format!("quadrature phase must lie in [0, π), got {phi}")));
    }
    if n_samples == 0 {
        return Err(Error::Constraint("n_samples must be ≥ 1".into()));
    }
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(Error::InvalidEfficiency(efficiency));
    }
    let (xs, cdf) = quadrature_cdf_table(state, phi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n_samples);
    if efficiency < 1.0 {
        let noise = Normal::new(0.0, ((1.0 - efficiency) / efficiency).sqrt())
            .expect("noise sigma is finite and positive");
        for _ in 0..n_samples {
            let u: f64 = rng.random();
            samples.push(inverse_cdf_draw(&xs, &cdf, u) + noise.sample(&mut rng));
        }
    } else {
        for _ in 0..n_samples {
            let u: f64 = rng.random();
            samples.push(inverse_cdf_draw(&xs, &cdf, u));
        }
    }
    Ok(OhtRecord { phi, samples, seed, efficiency })
}

/// Simulates `n_samples` excitation-number measurements after displacing the
/// state by `e`.
///
/// Outcomes are drawn from the exact displaced distribution
/// `p_n = ⟨n|D†(e) ρ D(e)|n⟩` by categorical sampling; at efficiency η < 1
/// each outcome n is replaced by a Binomial(n, η) draw (each quantum is
/// detected independently with probability η).
///
/// # Errors
/// - `CutoffTooSmall` if the displaced distribution leaks more than 1e−6 of
///   its mass past the state's cutoff (the categorical table would be
///   unfaithful);
/// - `Constraint` if `n_samples == 0`;
/// - `InvalidEfficiency` if `efficiency ∉ (0, 1]`.
pub fn sample_excitation_number(
    state: &QuantumState,
    e: C64,
    n_samples: usize,
    efficiency: f64,
    seed: u64,
) -> Result<PntRecord> {
    if n_samples == 0 {
        return Err(Error::Constraint("n_samples must be ≥ 1".into()));
    }
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(Error::InvalidEfficiency(efficiency));
    }
    let probs = fock::number_distribution(state, e);
    let mass: f64 = probs.iter().sum();
    if mass < 1.0 - 1e-6 {
        return Err(Error::CutoffTooSmall(format!(
            "displaced number distribution at E = {e} retains only {mass:.9} of unit mass \
             within dim = {}; enlarge the state's cutoff",
            state.dim()
        )));
    }
    // cumulative table, normalized so the last entry is exactly 1
    let mut cum = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for &p in probs.iter() {
        acc += p;
        cum.push(acc);
    }
    for c in &mut cum {
        *c /= acc;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for _ in 0..n_samples {
        let u: f64 = rng.random();
        let n = cum.partition_point(|&c| c < u).min(probs.len() - 1) as u32;
        let observed = if efficiency < 1.0 && n > 0 {
            Binomial::new(n as u64, efficiency)
                .expect("efficiency is a valid probability")
                .sample(&mut rng) as u32
        } else {
            n
        };
        *counts.entry(observed).or_insert(0) += 1;
    }
    Ok(PntRecord { e, counts, total: n_samples as u64, seed, efficiency })
}

/// A full measurement campaign: which channel, how many settings, how many
/// shots per setting.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Protocol {
    /// `n_phases` quadrature phases `φ_k = kπ/n_phases`, `samples_per_phase`
    /// shots each.
    Oht { n_phases: usize, samples_per_phase: usize },
    /// One displacement per point, `samples_per_point` shots each.
    Pnt { points: Vec<C64>, samples_per_point: usize },
}

/// The records a protocol produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasurementSet {
    Oht { records: Vec<OhtRecord> },
    Pnt { records: Vec<PntRecord> },
}

/// Runs a whole protocol against a state. Record `k` uses
/// `split_seed(master_seed, k)`, so any record can be reproduced in
/// isolation.
///
/// # Errors
/// `Constraint` for an empty protocol (`n_phases == 0` or no points);
/// otherwise whatever the per-record samplers raise.
pub fn run_protocol(
    state: &QuantumState,
    protocol: &Protocol,
    efficiency: f64,
    master_seed: u64,
) -> Result<MeasurementSet> {
    match protocol {
        Protocol::Oht { n_phases, samples_per_phase } => {
            if *n_phases == 0 {
                return Err(Error::Constraint("protocol needs at least one phase".into()));
            }
            let mut records = Vec::with_capacity(*n_phases);
            for k in 0..*n_phases {
                let phi = k as f64 * std::f64::consts::PI / *n_phases as f64;
                let seed = split_seed(master_seed, k as u64);
                records.push(sample_quadrature(state, phi, *samples_per_phase, efficiency, seed)?);
            }
            Ok(MeasurementSet::Oht { records })
        }
        Protocol::Pnt { points, samples_per_point } => {
            if points.is_empty() {
                return Err(Error::Constraint("protocol needs at least one point".into()));
            }
            let mut records = Vec::with_capacity(points.len());
            for (k, &e) in points.iter().enumerate() {
                let seed = split_seed(master_seed, k as u64);
                records.push(sample_excitation_number(
                    state,
                    e,
                    *samples_per_point,
                    efficiency,
                    seed,
                )?);
            }
            Ok(MeasurementSet::Pnt { records })
        }
    }
}
