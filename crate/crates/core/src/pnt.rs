//! Displaced-number reconstruction: from excitation-count histograms to
//! pointwise s-parametrized quasiprobability values.
//!
//! The underlying identity is the series
//!
//! ```text
//! W(E, s) = (2/(1−s)) Σ_n q^n p_n(E),   q = (s+1)/(s−1),
//! ```
//!
//! where `p_n(E) = ⟨n|D†(E) ρ D(E)|n⟩` is the excitation-number distribution
//! of the state displaced by −E. Estimating `p_n` from counts at one E gives
//! the function at that single point, so a grid is scanned one displacement
//! at a time — no inversion step, no coupling between points.
//!
//! Conventions (shared with the analytic oracle in `analysis`): no 1/π
//! prefactor, so the function integrates to π over the complex plane and the
//! vacuum at the origin sits at exactly 2 for s = 0.
//!
//! The series ratio obeys |q| ≤ 1 exactly when s ≤ 0; at s = 0 (q = −1) the
//! truncated sum over observed frequencies is exact for the empirical
//! distribution (unobserved levels have frequency zero), which is how the
//! alternating series is meaningful. For 0 < s < 1 the ratio exceeds 1 and
//! the point evaluation is refused.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridMeta, GridSpec, Method, WignerGrid};
use crate::measure::PntRecord;

/// Empirical displaced-number distribution at one displacement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisplacedNumberEstimate {
    /// Displacement amplitude the counts were taken at.
    pub e: C64,
    /// Empirical frequencies p_0 … p_{n_max} (length n_max + 1, summing to 1).
    pub probs: Vec<f64>,
    /// Binomial standard errors √(p(1−p)/total), same length as `probs`.
    pub stderr: Vec<f64>,
    /// Number of shots behind the frequencies.
    pub total: u64,
}

/// Converts a count record into padded empirical frequencies with binomial
/// standard errors.
///
/// # Errors
/// - `Constraint` if the record holds no shots;
/// - `NMaxTooSmall` if any observed excitation number exceeds `n_max`.
pub fn estimate_probs(record: &PntRecord, n_max: usize) -> Result<DisplacedNumberEstimate> {
    if record.total == 0 {
        return Err(Error::Constraint("count record holds no shots".into()));
    }
    if let Some(&observed) = record.counts.keys().max() {
        if observed as usize > n_max {
            return Err(Error::NMaxTooSmall { observed: observed as usize, n_max });
        }
    }
    let total = record.total as f64;
    let mut probs = vec![0.0; n_max + 1];
    for (&n, &c) in &record.counts {
        probs[n as usize] = c as f64 / total;
    }
    let stderr = probs.iter().map(|&p| (p * (1.0 - p) / total).sqrt()).collect();
    Ok(DisplacedNumberEstimate { e: record.e, probs, stderr, total: record.total })
}

/// One reconstructed value with its uncertainty budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WignerPoint {
    /// Series value (2/(1−s)) Σ qⁿ pₙ.
    pub value: f64,
    /// Statistical standard error, propagated in quadrature with weights
    /// |2 qⁿ/(1−s)|.
    pub stderr: f64,
    /// Bound on the truncation error from levels above n_max: for |q| < 1
    /// the geometric tail |2/(1−s)|·|q|^{n_max+1}/(1−|q|); for |q| = 1 the
    /// empirical-zero-tail convention 2·max(0, 1 − Σ pₙ), which is exactly 0
    /// for frequency inputs.
    pub tail_bound: f64,
}

/// Evaluates the series at one estimate.
///
/// # Errors
/// `InvalidS` for s ≥ 1 (the prefactor pole) and for 0 < s < 1 (series
/// ratio |q| > 1, no convergent evaluation).
pub fn wigner_point(estimate: &DisplacedNumberEstimate, s: f64) -> Result<WignerPoint> {
    if !s.is_finite() || s >= 1.0 {
        return Err(Error::InvalidS(s));
    }
    let q = (s + 1.0) / (s - 1.0);
    if q.abs() > 1.0 {
        return Err(Error::InvalidS(s));
    }
    let pref = 2.0 / (1.0 - s);
    let mut value = 0.0;
    let mut var = 0.0;
    let mut qn = 1.0;
    for (p, se) in estimate.probs.iter().zip(&estimate.stderr) {
        let w = pref * qn;
        value += w * p;
        var += w * w * se * se;
        qn *= q;
    }
    let tail_bound = if q.abs() < 1.0 {
        // |qn| is now |q|^{n_max+1}
        pref.abs() * qn.abs() / (1.0 - q.abs())
    } else {
        let mass: f64 = estimate.probs.iter().sum();
        2.0 * (1.0 - mass).max(0.0)
    };
    Ok(WignerPoint { value, stderr: var.sqrt(), tail_bound })
}

/// Reconstructs a whole grid from one count record per point, binding the
/// values to an explicit grid spec whose points must enumerate the record
/// displacements in storage order.
///
/// # Errors
/// - `EmptyRecords` for no records;
/// - `GridMismatch` if the spec's points differ from the record
///   displacements (count or position);
/// - whatever [`estimate_probs`] / [`wigner_point`] raise.
pub fn reconstruct_grid_on(
    records: &[PntRecord],
    s: f64,
    n_max: usize,
    spec: &GridSpec,
) -> Result<WignerGrid> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let points = spec.points();
    if points.len() != records.len() {
        return Err(Error::GridMismatch(format!(
            "grid has {} points but {} records were provided",
            points.len(),
            records.len()
        )));
    }
    for (k, (&pt, rec)) in points.iter().zip(records).enumerate() {
        if (pt - rec.e).norm() > 1e-12 {
            return Err(Error::GridMismatch(format!(
                "record {k} was measured at E = {} but the grid point is {pt}",
                rec.e
            )));
        }
    }

    let mut values = Vec::with_capacity(records.len());
    let mut stderr = Vec::with_capacity(records.len());
    let mut sample_counts = Vec::with_capacity(records.len());
    for rec in records {
        let est = estimate_probs(rec, n_max)?;
        let pt = wigner_point(&est, s)?;
        values.push(pt.value);
        stderr.push(pt.stderr);
        sample_counts.push(rec.total);
    }
    let eff0 = records[0].efficiency;
    let uniform_eff = records.iter().all(|r| r.efficiency == eff0);
    Ok(WignerGrid {
        spec: spec.clone(),
        values,
        stderr: Some(stderr),
        meta: GridMeta {
            s,
            method: Some(Method::Pnt),
            sample_counts: Some(sample_counts),
            efficiency: uniform_eff.then_some(eff0),
            smoothed: uniform_eff && eff0 < 1.0,
            n_max: Some(n_max),
            ..GridMeta::default()
        },
    })
}

/// Reconstructs a grid whose spec is the explicit list of the record
/// displacements, in record order.
pub fn reconstruct_grid(records: &[PntRecord], s: f64, n_max: usize) -> Result<WignerGrid> {
    let spec = GridSpec::Points { points: records.iter().map(|r| r.e).collect() };
    reconstruct_grid_on(records, s, n_max, &spec)
}
