//! Shared helpers for the integration suites: a brute-force matrix
//! exponential (the independent route to the displacement operator) and a
//! minimum-eigenvalue probe for positive-semidefiniteness checks.

// each integration target compiles its own copy; not every target uses
// every helper
#![allow(dead_code)]

use ndarray as nd;
use num_complex::Complex64 as C64;

/// Dense complex matrix product.
pub fn matmul(a: &nd::Array2<C64>, b: &nd::Array2<C64>) -> nd::Array2<C64> {
    a.dot(b)
}

/// Maximum-absolute-column-sum norm (the induced 1-norm).
fn one_norm(m: &nd::Array2<C64>) -> f64 {
    let (rows, cols) = m.dim();
    (0..cols)
        .map(|j| (0..rows).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0_f64, f64::max)
}

/// Brute-force matrix exponential by scaling-and-squaring over a plain
/// Taylor series. Deliberately written from the definition — it shares no
/// code path with the library's recurrence-based displacement operator, so
/// agreement between the two is meaningful evidence.
pub fn expm(m: &nd::Array2<C64>) -> nd::Array2<C64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "expm needs a square matrix");

    // scale until the norm is comfortably inside the series' fast-convergence
    // region
    let norm = one_norm(m);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = m.mapv(|x| x / C64::new(f64::powi(2.0, squarings as i32), 0.0));

    // Taylor series Σ Aᵏ/k! until the term norm underflows the target
    let mut result = nd::Array2::<C64>::eye(n);
    let mut term = nd::Array2::<C64>::eye(n);
    for k in 1..200 {
        term = matmul(&term, &scaled);
        term.mapv_inplace(|x| x / C64::new(k as f64, 0.0));
        result += &term;
        if one_norm(&term) < 1e-18 {
            break;
        }
    }

    // undo the scaling by repeated squaring
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// The generator `E a† − E* a` of the displacement operator, dim × dim.
pub fn displacement_generator(e: C64, dim: usize) -> nd::Array2<C64> {
    let mut g = nd::Array2::<C64>::zeros((dim, dim));
    for n in 0..dim - 1 {
        let root = ((n + 1) as f64).sqrt();
        // a†: ⟨n+1|a†|n⟩ = √(n+1); a: ⟨n|a|n+1⟩ = √(n+1)
        g[(n + 1, n)] += e * root;
        g[(n, n + 1)] -= e.conj() * root;
    }
    g
}

/// Smallest eigenvalue of a Hermitian matrix, via the real-symmetric
/// doubling [[Re H, −Im H], [Im H, Re H]], whose spectrum is that of H with
/// every eigenvalue doubled in multiplicity.
///
/// Entries below `1e−18·max|H|` are flushed to exact zero first: physical
/// density matrices can span ~150 orders of magnitude (a near-vacuum
/// coherent projector does), which drives the tridiagonalization into
/// underflow-generated NaN/Inf, while by Weyl's perturbation bound the flush
/// moves no eigenvalue by more than `n·1e−18·max|H|` — invisible at any
/// tolerance this suite uses.
pub fn min_eigenvalue(h: &nd::Array2<C64>) -> f64 {
    let n = h.nrows();
    assert_eq!(n, h.ncols(), "eigenvalue probe needs a square matrix");
    let scale = h.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    if scale == 0.0 {
        return 0.0;
    }
    let floor = 1e-18 * scale;
    let clip = |x: f64| if x.abs() < floor { 0.0 } else { x };
    let mut doubled = nalgebra::DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            doubled[(i, j)] = clip(z.re);
            doubled[(i, j + n)] = clip(-z.im);
            doubled[(i + n, j)] = clip(z.im);
            doubled[(i + n, j + n)] = clip(z.re);
        }
    }
    doubled
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}
