//! Entanglement measures contrasting symmetric three-qubit states:
//! pairwise concurrence and the three-tangle.

use num_complex::Complex64;

use crate::cmatrix::{hermitian_eigensystem, kron, ComplexMatrix};
use crate::density::{partial_trace_pure, DensityMatrix};
use crate::error::{Error, Result};
use crate::symmetric::SymmetricState;
use crate::tol::{Tolerances, TOL};

/// Tangle and pairwise concurrences of a three-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    /// Three-tangle τ ∈ [0, 1].
    pub tangle: f64,
    /// Concurrences (C₁₂, C₁₃, C₂₃), each in [0, 1].
    pub concurrences: [f64; 3],
}

/// Wootters concurrence of a two-qubit state:
/// C = max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄) with λᵢ the (descending) eigenvalues
/// of ρρ̃, ρ̃ = (σy⊗σy) ρ* (σy⊗σy).
///
/// The non-Hermitian product is avoided by taking the equal-spectrum
/// Hermitian proxy √ρ·ρ̃·√ρ, which keeps everything inside the Jacobi
/// eigensolver.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    concurrence_with(rho, &TOL)
}

/// [`concurrence`] with explicit tolerances.
pub fn concurrence_with(rho: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    if rho.n_qubits() != 2 {
        return Err(Error::WrongSize { expected: 2, got: rho.n_qubits() });
    }
    let yy = kron(&[pauli_y(), pauli_y()]);
    let sqrt_rho = crate::cmatrix::hermitian_function(
        &rho.matrix().hermitian_part(),
        |lambda| lambda.max(0.0).sqrt(),
        tol,
    )?;
    // √λᵢ of ρρ̃ = singular values of √ρ̃·√ρ with ρ̃ = (σy⊗σy)ρ*(σy⊗σy).
    // Taking them from the Hermitian dilation [[0, M], [M†, 0]] keeps full
    // absolute accuracy for the small ones, where squaring would not.
    let sqrt_rho_tilde = yy.mul(&sqrt_rho.conj()).mul(&yy);
    let m = sqrt_rho_tilde.mul(&sqrt_rho);
    let dim = m.rows();
    let mut dilation = ComplexMatrix::zeros(2 * dim, 2 * dim);
    for i in 0..dim {
        for j in 0..dim {
            dilation[(i, dim + j)] = m[(i, j)];
            dilation[(dim + i, j)] = m[(j, i)].conj();
        }
    }
    let (vals, _) = hermitian_eigensystem(&dilation, tol)?;
    // Eigenvalues come in ±σ pairs; the top `dim` are the singular values.
    let sigma: Vec<f64> = vals[dim..].iter().rev().map(|&v| v.max(0.0)).collect();
    let raw: f64 = sigma[0] - sigma[1] - sigma[2] - sigma[3];
    Ok(clamp_measure(raw.max(0.0), tol))
}

/// Three-tangle of a pure three-qubit state via the degree-4
/// hyperdeterminant of the amplitude tensor: τ = 4|d₁ − 2d₂ + 4d₃|.
pub fn three_tangle(psi: &[Complex64]) -> Result<f64> {
    three_tangle_with(psi, &TOL)
}

/// [`three_tangle`] with explicit tolerances.
pub fn three_tangle_with(psi: &[Complex64], tol: &Tolerances) -> Result<f64> {
    if psi.len() != 8 {
        return Err(Error::WrongSize { expected: 3, got: psi.len().trailing_zeros() as usize });
    }
    let norm_sq: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() > 1e-8 {
        return Err(Error::BadParams {
            reason: format!("state norm² = {norm_sq}"),
        });
    }
    // a[ijk] = psi[4i + 2j + k]
    let a = |i: usize, j: usize, k: usize| psi[4 * i + 2 * j + k];

    let d1 = a(0, 0, 0).powu(2) * a(1, 1, 1).powu(2)
        + a(0, 0, 1).powu(2) * a(1, 1, 0).powu(2)
        + a(0, 1, 0).powu(2) * a(1, 0, 1).powu(2)
        + a(1, 0, 0).powu(2) * a(0, 1, 1).powu(2);
    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
        + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);

    let tau = 4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm();
    Ok(clamp_measure(tau, tol))
}

/// Tangle plus all three pairwise concurrences of a symmetric state.
pub fn measure_report(s: &SymmetricState) -> Result<MeasureReport> {
    if s.n_qubits() != 3 {
        return Err(Error::WrongSize { expected: 3, got: s.n_qubits() });
    }
    let psi = s.to_full_vector()?;
    let tangle = three_tangle(&psi)?;
    let pairs = [[0usize, 1], [0, 2], [1, 2]];
    let mut concurrences = [0.0; 3];
    for (slot, pair) in concurrences.iter_mut().zip(pairs) {
        let rho = partial_trace_pure(&psi, 3, &pair)?;
        *slot = concurrence(&rho)?;
    }
    Ok(MeasureReport { tangle, concurrences })
}

/// Snaps round-off to exact 0, clamps into [0, 1].
fn clamp_measure(value: f64, tol: &Tolerances) -> f64 {
    if value.abs() < tol.measure_floor {
        0.0
    } else {
        value.clamp(0.0, 1.0)
    }
}

fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(
        2,
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .expect("2×2 shape")
}
