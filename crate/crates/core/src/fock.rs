//! Truncated Fock-space numerics for a single bosonic mode.
//!
//! Everything downstream — sampling, back-projection, series reconstruction —
//! reduces to the quantities computed here: state amplitudes, quadrature
//! wavefunctions, displacement matrix elements, and displaced-number
//! distributions.
//!
//! # Conventions
//!
//! * Natural units, ħ = 1. All amplitudes are dimensionless.
//! * The quadrature at phase φ is `X(φ) = a e^{−iφ} + a† e^{iφ}` with **no**
//!   1/√2 normalization, so the vacuum has ⟨X²⟩ = 1 and its marginal is a
//!   unit-variance Gaussian, `P(x) = (2π)^{−1/2} e^{−x²/2}`.
//! * The displacement operator is `D(E) = exp(E a† − E* a)`, and the
//!   displaced-number distribution of a state ρ is
//!   `p_n(E) = ⟨n| D†(E) ρ D(E) |n⟩`.
//! * A state lives on the levels `0 .. dim−1`. The truncation is only
//!   trustworthy while the top of the ladder stays empty; constructors
//!   enforce a tail-mass bound (see [`TAIL_TOL`]) and refuse parameters the
//!   cutoff cannot hold.

use ndarray as nd;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Maximum tolerated population on the two highest Fock levels.
///
/// States whose exact tail beyond the cutoff would exceed this are rejected
/// at construction; operators built on the truncation (displacements, in
/// particular) are accurate only against states that respect it.
pub const TAIL_TOL: f64 = 1e-8;

/// Maximum tolerated deviation from hermiticity, `max |ρ_mn − conj(ρ_nm)|`.
pub const HERM_TOL: f64 = 1e-12;

/// Maximum tolerated deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-10;

/// `2^{−1/4}`, the rescaling of the standard Hermite functions into the
/// vacuum-variance-1 quadrature convention.
const QUARTER_ROOT_HALF: f64 = 0.840_896_415_253_714_5;

/// Natural-log factorial table: returns `t` with `t[k] = ln(k!)` for
/// `k = 0 .. n−1`, built by direct accumulation (exact to rounding, no
/// special functions needed at these sizes).
pub(crate) fn ln_factorials(n: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(n.max(1));
    t.push(0.0);
    let mut acc = 0.0;
    for k in 1..n {
        acc += (k as f64).ln();
        t.push(acc);
    }
    t
}

/// Internal storage: pure states keep their amplitude vector (cheaper and
/// more accurate paths exist for them); mixed states hold the full density
/// matrix.
#[derive(Clone, Debug, PartialEq)]
enum Repr {
    Pure(nd::Array1<C64>),
    Mixed(nd::Array2<C64>),
}

/// A state of the cyclotron mode on the truncated Fock basis `|0⟩ .. |dim−1⟩`.
///
/// Invariants, enforced at construction:
/// * unit trace within [`TRACE_TOL`] (pure vectors are normalized exactly);
/// * hermiticity within [`HERM_TOL`] for matrix states;
/// * all entries finite;
/// * tail mass `ρ[dim−2][dim−2] + ρ[dim−1][dim−1]` at most [`TAIL_TOL`].
///
/// Positive semidefiniteness is *not* verified on every construction (it is
/// an O(dim³) eigenvalue problem); the test suite checks it for every state
/// family this crate produces.
///
/// Values are immutable after construction; all operations on them are pure
/// functions, so states are safe to share freely across threads.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    dim: usize,
    repr: Repr,
}

impl QuantumState {
    /// Builds a pure state from Fock amplitudes, normalizing to unit norm.
    pub fn from_vector(amps: Vec<C64>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 {
            return Err(Error::InvalidState(format!(
                "need at least 2 Fock levels, got {dim}"
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState(format!("vector norm {norm} is not positive")));
        }
        let v: nd::Array1<C64> = amps.into_iter().map(|a| a / norm).collect();
        let state = QuantumState { dim, repr: Repr::Pure(v) };
        state.check_tail()?;
        Ok(state)
    }

    /// Builds a mixed state from a density matrix.
    ///
    /// The matrix must already be normalized (trace within [`TRACE_TOL`] of
    /// one) and Hermitian within [`HERM_TOL`]; this constructor verifies
    /// rather than repairs, so violations surface instead of being silently
    /// rescaled away.
    pub fn from_matrix(rho: nd::Array2<C64>) -> Result<Self> {
        let (r, c) = rho.dim();
        if r != c {
            return Err(Error::InvalidState(format!("density matrix must be square, got {r}×{c}")));
        }
        if r < 2 {
            return Err(Error::InvalidState(format!("need at least 2 Fock levels, got {r}")));
        }
        if rho.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidState("non-finite matrix entry".into()));
        }
        let trace: C64 = (0..r).map(|i| rho[(i, i)]).sum();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "trace {trace} deviates from 1 by more than {TRACE_TOL:e}"
            )));
        }
        let mut herm_dev = 0.0_f64;
        for m in 0..r {
            for n in m..r {
                let dev = (rho[(m, n)] - rho[(n, m)].conj()).norm();
                herm_dev = herm_dev.max(dev);
            }
        }
        if herm_dev > HERM_TOL {
            return Err(Error::InvalidState(format!(
                "hermiticity deviation {herm_dev:e} exceeds {HERM_TOL:e}"
            )));
        }
        let state = QuantumState { dim: r, repr: Repr::Mixed(rho) };
        state.check_tail()?;
        Ok(state)
    }

    fn check_tail(&self) -> Result<()> {
        let tail = self.tail_mass();
        if tail > TAIL_TOL {
            return Err(Error::CutoffTooSmall(format!(
                "tail mass {tail:.3e} on the two highest levels exceeds {TAIL_TOL:e} \
                 (dim = {}); increase the Fock cutoff",
                self.dim
            )));
        }
        Ok(())
    }

    /// Number of Fock levels (the cutoff N; levels are `0 .. N−1`).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether the state is stored as a pure amplitude vector.
    pub fn is_pure(&self) -> bool {
        matches!(self.repr, Repr::Pure(_))
    }

    /// Fock amplitudes for pure states; `None` for mixed ones.
    pub fn amplitudes(&self) -> Option<&nd::Array1<C64>> {
        match &self.repr {
            Repr::Pure(v) => Some(v),
            Repr::Mixed(_) => None,
        }
    }

    /// The density matrix (promoting pure states to |ψ⟩⟨ψ|).
    pub fn density_matrix(&self) -> nd::Array2<C64> {
        match &self.repr {
            Repr::Pure(v) => {
                let mut rho = nd::Array2::zeros((self.dim, self.dim));
                for m in 0..self.dim {
                    for n in 0..self.dim {
                        rho[(m, n)] = v[m] * v[n].conj();
                    }
                }
                rho
            }
            Repr::Mixed(rho) => rho.clone(),
        }
    }

    /// Level populations `ρ_nn`.
    pub fn populations(&self) -> Vec<f64> {
        match &self.repr {
            Repr::Pure(v) => v.iter().map(|a| a.norm_sqr()).collect(),
            Repr::Mixed(rho) => (0..self.dim).map(|n| rho[(n, n)].re).collect(),
        }
    }

    /// Mean excitation number ⟨n⟩ = Σ n ρ_nn.
    pub fn mean_excitation(&self) -> f64 {
        self.populations()
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    /// Population on the two highest levels — the truncation-health measure.
    pub fn tail_mass(&self) -> f64 {
        let p = self.populations();
        p[self.dim - 2] + p[self.dim - 1]
    }

    /// Phase-space rotation by φ: amplitudes pick up `e^{−inφ}`, matrix
    /// elements `e^{−i(m−n)φ}`. The quadrature distribution of the rotated
    /// state at phase 0 equals that of the original at phase φ.
    pub fn rotate(&self, phi: f64) -> Self {
        let phase = |n: usize| C64::from_polar(1.0, -(n as f64) * phi);
        match &self.repr {
            Repr::Pure(v) => {
                let w: nd::Array1<C64> =
                    v.iter().enumerate().map(|(n, a)| a * phase(n)).collect();
                QuantumState { dim: self.dim, repr: Repr::Pure(w) }
            }
            Repr::Mixed(rho) => {
                let mut out = rho.clone();
                for m in 0..self.dim {
                    for n in 0..self.dim {
                        out[(m, n)] = rho[(m, n)] * C64::from_polar(1.0, -((m as f64) - (n as f64)) * phi);
                    }
                }
                QuantumState { dim: self.dim, repr: Repr::Mixed(out) }
            }
        }
    }

    /// The charge-conjugation map on the mode: complex conjugation of the
    /// state in the Fock basis (the antiunitary candidate expressible on a
    /// single mode; in phase space it reflects E → E*).
    ///
    /// Applying it twice returns the original state bit-exactly.
    pub fn conjugate(&self) -> Self {
        match &self.repr {
            Repr::Pure(v) => QuantumState {
                dim: self.dim,
                repr: Repr::Pure(v.iter().map(|a| a.conj()).collect()),
            },
            Repr::Mixed(rho) => QuantumState {
                dim: self.dim,
                repr: Repr::Mixed(rho.map(|a| a.conj())),
            },
        }
    }
}

/// Tail-safety heuristic shared by the coherent-family constructors: a
/// coherent component of modulus |α| needs `|α|² + 6|α| + 10` levels before
/// the Poisson tail drops below [`TAIL_TOL`] (the 6√λ-and-slack reading of
/// the Poisson concentration around λ = |α|²).
fn coherent_dim_needed(alpha: C64) -> f64 {
    let a = alpha.norm();
    a * a + 6.0 * a + 10.0
}

/// Coherent state |α⟩ with amplitudes `c_n = e^{−|α|²/2} α^n / √(n!)`,
/// renormalized over the truncated basis.
///
/// # Errors
/// `CutoffTooSmall` when `|α|² + 6|α| + 10 > dim` (the truncation could not
/// hold the Poisson tail) or `dim < 2`.
pub fn coherent_state(alpha: C64, dim: usize) -> Result<QuantumState> {
    if dim < 2 {
        return Err(Error::CutoffTooSmall(format!("dim = {dim} < 2")));
    }
    let needed = coherent_dim_needed(alpha);
    if needed > dim as f64 {
        return Err(Error::CutoffTooSmall(format!(
            "coherent amplitude |α| = {:.4} needs dim ≥ {}, got {dim}",
            alpha.norm(),
            needed.ceil() as usize
        )));
    }
    QuantumState::from_vector(coherent_amplitudes(alpha, dim))
}

/// Unnormalized-in-truncation coherent amplitudes, computed in log space to
/// stay finite at large n: `ln|c_n| = −|α|²/2 + n ln|α| − ln(n!)/2`.
fn coherent_amplitudes(alpha: C64, dim: usize) -> Vec<C64> {
    if alpha.norm() == 0.0 {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[0] = C64::new(1.0, 0.0);
        return v;
    }
    let lnf = ln_factorials(dim);
    let ln_mod = alpha.norm().ln();
    let arg = alpha.arg();
    (0..dim)
        .map(|n| {
            let ln_mag = -alpha.norm_sqr() / 2.0 + n as f64 * ln_mod - 0.5 * lnf[n];
            C64::from_polar(ln_mag.exp(), n as f64 * arg)
        })
        .collect()
}

/// Odd coherent (cat) state `N_−(|α⟩ − |−α⟩)`: only odd Fock levels are
/// populated. The normalization constant is computed numerically on the
/// truncated basis (it agrees with the closed form `[2(1−e^{−2|α|²})]^{−1/2}`
/// within the tail tolerance).
///
/// # Errors
/// `DegenerateState` for α = 0 (the superposition vanishes and N_− diverges);
/// `CutoffTooSmall` as for [`coherent_state`].
pub fn odd_cat_state(alpha: C64, dim: usize) -> Result<QuantumState> {
    if alpha.norm() == 0.0 {
        return Err(Error::DegenerateState(
            "odd cat state is undefined at α = 0 (normalization diverges)".into(),
        ));
    }
    if dim < 2 {
        return Err(Error::CutoffTooSmall(format!("dim = {dim} < 2")));
    }
    let needed = coherent_dim_needed(alpha);
    if needed > dim as f64 {
        return Err(Error::CutoffTooSmall(format!(
            "cat amplitude |α| = {:.4} needs dim ≥ {}, got {dim}",
            alpha.norm(),
            needed.ceil() as usize
        )));
    }
    // |α⟩ − |−α⟩ doubles the odd coefficients and cancels the even ones
    // exactly; build only the survivors so even levels are exact zeros.
    let mut amps = coherent_amplitudes(alpha, dim);
    for (n, a) in amps.iter_mut().enumerate() {
        if n % 2 == 0 {
            *a = C64::new(0.0, 0.0);
        } else {
            *a *= 2.0;
        }
    }
    QuantumState::from_vector(amps)
}

/// Number state |n⟩.
///
/// # Errors
/// `CutoffTooSmall` unless `n ≤ dim − 3` (the two highest levels must stay
/// below the tail tolerance, so the populated level cannot sit on them).
pub fn fock_state(n: usize, dim: usize) -> Result<QuantumState> {
    if dim < 2 || n + 3 > dim {
        return Err(Error::CutoffTooSmall(format!(
            "fock level n = {n} needs dim ≥ {}, got {dim}",
            n + 3
        )));
    }
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[n] = C64::new(1.0, 0.0);
    QuantumState::from_vector(v)
}

/// Thermal state with mean excitation `nbar`: the geometric distribution
/// `p_n = nbar^n / (1+nbar)^{n+1}`, renormalized over the truncation.
///
/// # Errors
/// `CutoffTooSmall` when the exact geometric tail beyond level `dim − 3`,
/// `(nbar/(1+nbar))^{dim−2}`, exceeds [`TAIL_TOL`]; `Constraint` for
/// negative or non-finite `nbar`.
pub fn thermal_state(nbar: f64, dim: usize) -> Result<QuantumState> {
    if !nbar.is_finite() || nbar < 0.0 {
        return Err(Error::Constraint(format!(
            "thermal occupation must be finite and ≥ 0, got {nbar}"
        )));
    }
    if dim < 2 {
        return Err(Error::CutoffTooSmall(format!("dim = {dim} < 2")));
    }
    let q = nbar / (1.0 + nbar);
    let exact_tail = q.powi(dim as i32 - 2);
    if exact_tail > TAIL_TOL {
        return Err(Error::CutoffTooSmall(format!(
            "thermal nbar = {nbar} leaves tail mass {exact_tail:.3e} beyond the cutoff \
             (dim = {dim}); increase dim"
        )));
    }
    let weights: Vec<f64> = (0..dim).map(|n| (1.0 - q) * q.powi(n as i32)).collect();
    let total: f64 = weights.iter().sum();
    let mut rho = nd::Array2::zeros((dim, dim));
    for (n, w) in weights.iter().enumerate() {
        rho[(n, n)] = C64::new(w / total, 0.0);
    }
    QuantumState::from_matrix(rho)
}

/// Matrix elements of the displacement operator `D(E) = exp(E a† − E* a)` on
/// the truncated basis, by the associated-Laguerre closed form
///
/// ```text
/// ⟨m|D(E)|n⟩ = √(n!/m!) E^{m−n}   e^{−|E|²/2} L_n^{(m−n)}(|E|²)   for m ≥ n,
/// ⟨m|D(E)|n⟩ = √(m!/n!) (−E*)^{n−m} e^{−|E|²/2} L_m^{(n−m)}(|E|²)  for m < n,
/// ```
///
/// with magnitudes assembled in log space (factorial ratios would overflow
/// long before n ≈ 30 otherwise) and the Laguerre values by the stable
/// three-term recursion along each diagonal.
///
/// Each element equals the exact untruncated matrix element. The truncated
/// matrix is therefore unitary only up to the column tail mass: columns n
/// with `coherent-tail-safe` headroom (roughly `n + 6√n·|E|`-ish below dim)
/// carry unit norm to high accuracy, while columns near the cutoff lose the
/// mass displaced past it. Tests pin this quantitatively.
pub fn displacement_matrix(e: C64, dim: usize) -> nd::Array2<C64> {
    let mut d = nd::Array2::zeros((dim, dim));
    let x = e.norm_sqr();
    if x == 0.0 {
        for n in 0..dim {
            d[(n, n)] = C64::new(1.0, 0.0);
        }
        return d;
    }
    let lnf = ln_factorials(dim);
    let ln_mod = e.norm().ln();
    let arg = e.arg();
    // Walk diagonals of fixed offset k = m − n ≥ 0; on each, the Laguerre
    // order is the smaller index and recurs upward:
    //   (j+1) L_{j+1}^{(k)} = (2j + 1 + k − x) L_j^{(k)} − (j + k) L_{j−1}^{(k)}.
    for k in 0..dim {
        let mut l_prev = 0.0_f64;
        let mut l = 1.0_f64; // L_0^{(k)}(x) = 1
        for j in 0..dim - k {
            if j > 0 {
                let jf = (j - 1) as f64;
                let l_next = ((2.0 * jf + 1.0 + k as f64 - x) * l - (jf + k as f64) * l_prev)
                    / (jf + 1.0);
                l_prev = l;
                l = l_next;
            }
            // magnitude: √(min!/max!)·|E|^k·e^{−x/2}, assembled in log space
            let ln_mag = 0.5 * (lnf[j] - lnf[j + k]) + k as f64 * ln_mod - x / 2.0;
            let mag = ln_mag.exp() * l;
            // upper index larger: ⟨j+k|D|j⟩ carries E^{k}
            let phase = C64::from_polar(1.0, k as f64 * arg);
            d[(j + k, j)] = phase * mag;
            if k > 0 {
                // lower index larger: ⟨j|D|j+k⟩ carries (−E*)^{k}
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                d[(j, j + k)] = phase.conj() * (sign * mag);
            }
        }
    }
    d
}

/// Quadrature position wavefunctions `⟨x|n⟩` for `n = 0 .. dim−1` in the
/// vacuum-variance-1 convention: `u_n(x) = 2^{−1/4} h_n(x/√2)`, where `h_n`
/// are the orthonormal Hermite functions, generated by the stable
/// normalized three-term recursion
///
/// ```text
/// h_0(y) = π^{−1/4} e^{−y²/2},
/// h_1(y) = √2 · y · h_0(y),
/// h_{n+1}(y) = √(2/(n+1)) · y · h_n(y) − √(n/(n+1)) · h_{n−1}(y)
/// ```
///
/// (recursion on the *functions*, not the raw polynomials, so no overflow at
/// n ≈ 30, x ≈ ±6). Odd-n values at x = 0 are exact zeros.
pub fn quadrature_wavefunctions(x: f64, dim: usize) -> Vec<f64> {
    let y = x / std::f64::consts::SQRT_2;
    let mut u = vec![0.0; dim];
    u[0] = QUARTER_ROOT_HALF * std::f64::consts::PI.powf(-0.25) * (-y * y / 2.0).exp();
    if dim > 1 {
        u[1] = std::f64::consts::SQRT_2 * y * u[0];
    }
    for n in 1..dim.saturating_sub(1) {
        let nf = n as f64;
        u[n + 1] = (2.0 / (nf + 1.0)).sqrt() * y * u[n] - (nf / (nf + 1.0)).sqrt() * u[n - 1];
    }
    u
}

/// Probability density of the quadrature `X(φ)` at each requested point:
/// `P(x, φ) = |Σ_n c_n e^{−inφ} ⟨x|n⟩|²` for pure states and the
/// corresponding trace form `Σ_{mn} ρ_mn u_m u_n e^{−i(m−n)φ}` for mixed
/// ones.
pub fn quadrature_pdf(state: &QuantumState, phi: f64, xs: &[f64]) -> Vec<f64> {
    let dim = state.dim;
    let phases: Vec<C64> = (0..dim)
        .map(|n| C64::from_polar(1.0, -(n as f64) * phi))
        .collect();
    match &state.repr {
        Repr::Pure(c) => xs
            .iter()
            .map(|&x| {
                let u = quadrature_wavefunctions(x, dim);
                let amp: C64 = (0..dim).map(|n| c[n] * phases[n] * u[n]).sum();
                amp.norm_sqr()
            })
            .collect(),
        Repr::Mixed(rho) => xs
            .iter()
            .map(|&x| {
                let u = quadrature_wavefunctions(x, dim);
                // v_n = u_n e^{inφ};  P = v† ρ v  (real by hermiticity)
                let v: Vec<C64> = (0..dim).map(|n| phases[n].conj() * u[n]).collect();
                let mut acc = C64::new(0.0, 0.0);
                for m in 0..dim {
                    let mut row = C64::new(0.0, 0.0);
                    for n in 0..dim {
                        row += rho[(m, n)] * v[n];
                    }
                    acc += v[m].conj() * row;
                }
                acc.re.max(0.0)
            })
            .collect(),
    }
}

/// Displaced-number distribution `p_n = ⟨n| D†(E) ρ D(E) |n⟩`.
///
/// For pure states this is `|[D†ψ]_n|²`, an O(dim²) transform; for mixed
/// states the diagonal of the full sandwich. Entries are clamped to zero
/// from rounding-level negatives (never below −1e−12 for a valid state).
///
/// The sum over n equals one minus the mass displaced past the cutoff, so it
/// is close to 1 only while `E` keeps the displaced state inside the
/// truncation; callers that *sample* from the distribution must check this
/// (see `measure::sample_excitation_number`).
pub fn number_distribution(state: &QuantumState, e: C64) -> Vec<f64> {
    let dim = state.dim;
    let d = displacement_matrix(e, dim);
    let clamp = |p: f64| {
        debug_assert!(p >= -1e-12, "displaced-number probability {p} below clamp floor");
        p.max(0.0)
    };
    match &state.repr {
        Repr::Pure(c) => (0..dim)
            .map(|n| {
                // (D†ψ)_n = Σ_k conj(D_{kn}) ψ_k
                let amp: C64 = (0..dim).map(|k| d[(k, n)].conj() * c[k]).sum();
                clamp(amp.norm_sqr())
            })
            .collect(),
        Repr::Mixed(rho) => {
            // columns of D: p_n = d_n† ρ d_n
            (0..dim)
                .map(|n| {
                    let mut acc = C64::new(0.0, 0.0);
                    for m in 0..dim {
                        let mut row = C64::new(0.0, 0.0);
                        for k in 0..dim {
                            row += rho[(m, k)] * d[(k, n)];
                        }
                        acc += d[(m, n)].conj() * row;
                    }
                    clamp(acc.re)
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_2PI_INV: f64 = 0.398_942_280_401_432_7;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn vacuum_coherent_is_ground_state() {
        let s = coherent_state(c(0.0, 0.0), 16).unwrap();
        let a = s.amplitudes().unwrap();
        assert_eq!(a[0], c(1.0, 0.0));
        assert!(a.iter().skip(1).all(|&x| x == c(0.0, 0.0)));
    }

    #[test]
    fn coherent_mean_excitation_is_alpha_squared() {
        let s = coherent_state(c(1.5, 0.0), 32).unwrap();
        assert!((s.mean_excitation() - 2.25).abs() <= 1e-9);
    }

    #[test]
    fn coherent_rejects_small_cutoff() {
        assert!(matches!(
            coherent_state(c(1.5, 0.0), 4),
            Err(Error::CutoffTooSmall(_))
        ));
    }

    #[test]
    fn odd_cat_even_levels_are_exactly_empty() {
        let s = odd_cat_state(c(1.5, 0.0), 32).unwrap();
        let a = s.amplitudes().unwrap();
        for n in (0..32).step_by(2) {
            assert_eq!(a[n], c(0.0, 0.0));
        }
        let even_mass: f64 = s
            .populations()
            .iter()
            .step_by(2)
            .sum();
        assert!(even_mass <= 1e-12);
    }

    #[test]
    fn odd_cat_mean_excitation_matches_closed_form() {
        // ⟨n⟩ = |α|² coth(|α|²) for the odd cat, against the brute-force
        // population sum.
        let a2 = 2.25_f64;
        let closed = a2 * (a2.tanh()).recip();
        let s = odd_cat_state(c(1.5, 0.0), 32).unwrap();
        assert!((s.mean_excitation() - closed).abs() <= 1e-9);
        // pin the value so a convention drift cannot slip by silently
        assert!((closed - 2.300_552_067_161).abs() < 5e-10);
    }

    #[test]
    fn odd_cat_rejects_alpha_zero() {
        assert!(matches!(
            odd_cat_state(c(0.0, 0.0), 16),
            Err(Error::DegenerateState(_))
        ));
    }

    #[test]
    fn fock_state_respects_cutoff() {
        assert!(matches!(fock_state(40, 32), Err(Error::CutoffTooSmall(_))));
        let s = fock_state(3, 8).unwrap();
        assert_eq!(s.populations()[3], 1.0);
        assert!((s.mean_excitation() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn thermal_state_matches_geometric_law() {
        let s = thermal_state(0.5, 32).unwrap();
        assert!(!s.is_pure());
        assert!((s.mean_excitation() - 0.5).abs() < 1e-7);
        let p = s.populations();
        // p_{n+1}/p_n = nbar/(1+nbar) = 1/3
        assert!((p[1] / p[0] - 1.0 / 3.0).abs() < 1e-12);
        assert!(matches!(thermal_state(5.0, 8), Err(Error::CutoffTooSmall(_))));
        assert!(thermal_state(-1.0, 8).is_err());
    }

    #[test]
    fn displacement_at_zero_is_identity() {
        let d = displacement_matrix(c(0.0, 0.0), 12);
        for m in 0..12 {
            for n in 0..12 {
                let expect = if m == n { c(1.0, 0.0) } else { c(0.0, 0.0) };
                assert_eq!(d[(m, n)], expect);
            }
        }
    }

    #[test]
    fn displacement_vacuum_to_vacuum_amplitude() {
        // ⟨0|D(E)|0⟩ = e^{−|E|²/2}
        let d = displacement_matrix(c(1.0, 0.0), 32);
        let expect = (-0.5_f64).exp();
        assert!((d[(0, 0)].re - expect).abs() < 1e-12);
        assert!(d[(0, 0)].im.abs() < 1e-15);
    }

    #[test]
    fn displacement_moves_coherent_to_vacuum() {
        // D(−α)|α⟩ = |0⟩ up to phase
        let alpha = c(1.5, 0.0);
        let s = coherent_state(alpha, 32).unwrap();
        let d = displacement_matrix(-alpha, 32);
        let a = s.amplitudes().unwrap();
        let mut p0 = c(0.0, 0.0);
        for k in 0..32 {
            p0 += d[(0, k)] * a[k];
        }
        assert!(p0.norm_sqr() >= 1.0 - 1e-8);
    }

    #[test]
    fn vacuum_quadrature_density_is_standard_gaussian() {
        let s = coherent_state(c(0.0, 0.0), 16).unwrap();
        for phi in [0.0, 0.7, 2.9] {
            let p = quadrature_pdf(&s, phi, &[0.0, 1.0]);
            assert!((p[0] - SQRT_2PI_INV).abs() < 1e-12);
            assert!((p[1] - SQRT_2PI_INV * (-0.5_f64).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_cat_quadrature_has_node_at_origin() {
        let s = odd_cat_state(c(1.5, 0.0), 32).unwrap();
        for phi in [0.0, 0.3, 1.2, 3.0] {
            let p = quadrature_pdf(&s, phi, &[0.0]);
            assert!(p[0] <= 1e-10, "node violated at phi={phi}: {}", p[0]);
        }
    }

    #[test]
    fn quadrature_density_integrates_to_one() {
        let xs: Vec<f64> = (0..=2000).map(|i| -10.0 + i as f64 * 0.01).collect();
        let states = [
            coherent_state(c(1.5, 0.0), 32).unwrap(),
            odd_cat_state(c(1.5, 0.0), 32).unwrap(),
            thermal_state(0.8, 32).unwrap(),
        ];
        for s in &states {
            let p = quadrature_pdf(s, 0.4, &xs);
            let mut integral = 0.0;
            for i in 1..xs.len() {
                integral += 0.5 * (p[i] + p[i - 1]) * (xs[i] - xs[i - 1]);
            }
            assert!((integral - 1.0).abs() <= 1e-6, "integral {integral}");
        }
    }

    #[test]
    fn number_distribution_trivials() {
        let vac = coherent_state(c(0.0, 0.0), 16).unwrap();
        let p = number_distribution(&vac, c(0.0, 0.0));
        assert_eq!(p[0], 1.0);
        assert!(p.iter().skip(1).all(|&x| x == 0.0));

        let cat = odd_cat_state(c(1.5, 0.0), 32).unwrap();
        let p = number_distribution(&cat, c(0.0, 0.0));
        let even_mass: f64 = p.iter().step_by(2).sum();
        assert!(even_mass <= 1e-10);
    }

    #[test]
    fn number_distribution_cancels_at_matching_displacement() {
        // p = diag(D†(E) ρ D(E)): for ρ = |α⟩⟨α|, D†(α)|α⟩ = |0⟩, so the
        // displaced-number distribution at E = α concentrates on n = 0.
        let s = coherent_state(c(1.5, 0.0), 32).unwrap();
        let p = number_distribution(&s, c(1.5, 0.0));
        assert!(p[0] >= 1.0 - 1e-8, "p0 = {}", p[0]);
    }

    #[test]
    fn number_distribution_pure_and_mixed_paths_agree() {
        let s = odd_cat_state(c(1.2, 0.4), 32).unwrap();
        let mixed = QuantumState::from_matrix(s.density_matrix()).unwrap();
        let e = c(0.6, -0.9);
        let a = number_distribution(&s, e);
        let b = number_distribution(&mixed, e);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn rotation_matches_phase_convention() {
        let s = odd_cat_state(c(1.5, 0.0), 32).unwrap();
        let phi = 0.83;
        let xs: Vec<f64> = (-30..=30).map(|i| i as f64 * 0.2).collect();
        let direct = quadrature_pdf(&s, phi, &xs);
        let rotated = quadrature_pdf(&s.rotate(phi), 0.0, &xs);
        for (a, b) in direct.iter().zip(&rotated) {
            assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn conjugation_is_involutive_bitwise() {
        let s = odd_cat_state(c(1.1, 0.7), 32).unwrap();
        assert_eq!(s.conjugate().conjugate(), s);
        let t = thermal_state(0.5, 24).unwrap();
        assert_eq!(t.conjugate().conjugate(), t);
    }

    #[test]
    fn from_matrix_rejects_bad_inputs() {
        let mut rho = nd::Array2::<C64>::zeros((4, 4));
        rho[(0, 0)] = c(0.7, 0.0);
        rho[(1, 1)] = c(0.3, 0.0);
        rho[(0, 1)] = c(0.1, 0.05);
        rho[(1, 0)] = c(0.1, 0.05); // not the conjugate
        assert!(matches!(
            QuantumState::from_matrix(rho),
            Err(Error::InvalidState(_))
        ));

        let mut rho = nd::Array2::<C64>::zeros((4, 4));
        rho[(0, 0)] = c(0.5, 0.0); // trace 0.5
        assert!(matches!(
            QuantumState::from_matrix(rho),
            Err(Error::InvalidState(_))
        ));
    }
}
