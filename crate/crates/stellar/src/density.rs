//! Density matrices on one to three qubits and the partial trace.
//!
//! Qubits are numbered from 0, with qubit 0 the most significant bit of the
//! computational-basis index (so |q₀q₁q₂⟩ has index q₀·4 + q₁·2 + q₂).

use num_complex::Complex64;

use crate::cmatrix::{hermitian_eigensystem, ComplexMatrix, CVector};
use crate::error::{Error, Result};
use crate::tol::{Tolerances, TOL};

/// A validated Hermitian, unit-trace, positive-semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates and wraps a candidate density matrix.
    pub fn new(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if !(1..=3).contains(&n_qubits) {
            return Err(Error::BadParams {
                reason: format!("{n_qubits} qubits outside the supported 1..=3"),
            });
        }
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::BadParams {
                reason: format!(
                    "matrix is {}×{}, expected {dim}×{dim}",
                    matrix.rows(),
                    matrix.cols()
                ),
            });
        }
        let herm = matrix.hermitian_residual();
        if herm > TOL.density_hermitian {
            return Err(Error::InvalidDensityMatrix {
                reason: "not Hermitian".into(),
                residual: herm,
            });
        }
        let trace_dev = (matrix.trace() - Complex64::new(1.0, 0.0)).norm();
        if trace_dev > TOL.density_trace {
            return Err(Error::InvalidDensityMatrix {
                reason: "trace differs from 1".into(),
                residual: trace_dev,
            });
        }
        let (vals, _) = hermitian_eigensystem(&matrix.hermitian_part(), &TOL)?;
        if vals[0] < TOL.density_eigen_floor {
            return Err(Error::InvalidDensityMatrix {
                reason: "negative eigenvalue".into(),
                residual: vals[0],
            });
        }
        Ok(Self { n_qubits, matrix })
    }

    /// The projector |ψ⟩⟨ψ| of a unit pure state.
    pub fn from_pure(n_qubits: usize, psi: &[Complex64]) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if psi.len() != dim {
            return Err(Error::BadParams {
                reason: format!("vector length {} for {n_qubits} qubits", psi.len()),
            });
        }
        let norm_sq: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-8 {
            return Err(Error::BadParams {
                reason: format!("pure state norm² = {norm_sq}"),
            });
        }
        Ok(Self {
            n_qubits,
            matrix: ComplexMatrix::outer(psi, psi),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self, tol: &Tolerances) -> Result<Vec<f64>> {
        Ok(hermitian_eigensystem(&self.matrix.hermitian_part(), tol)?.0)
    }

    /// Rank at the configured eigenvalue cutoff.
    pub fn rank(&self, tol: &Tolerances) -> Result<usize> {
        Ok(self
            .eigenvalues(tol)?
            .iter()
            .filter(|&&v| v > tol.rank_cutoff)
            .count())
    }
}

/// Partial trace of a density matrix onto the `keep` qubits.
///
/// `keep` must be a nonempty strict subset of 0..n; its order is ignored
/// and the kept qubits appear in ascending order in the result.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let reduced = partial_trace_matrix(rho.matrix(), rho.n_qubits(), keep)?;
    DensityMatrix::new(keep.len(), reduced)
}

/// Partial trace of a pure state |ψ⟩⟨ψ| onto the `keep` qubits.
pub fn partial_trace_pure(psi: &[Complex64], n_qubits: usize, keep: &[usize]) -> Result<DensityMatrix> {
    let keep = checked_subset(n_qubits, keep)?;
    let traced: Vec<usize> = (0..n_qubits).filter(|q| !keep.contains(q)).collect();
    let kd = 1usize << keep.len();
    let td = 1usize << traced.len();
    if psi.len() != 1 << n_qubits {
        return Err(Error::BadParams {
            reason: format!("vector length {} for {n_qubits} qubits", psi.len()),
        });
    }
    let mut out = ComplexMatrix::zeros(kd, kd);
    for ki in 0..kd {
        for kj in 0..kd {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..td {
                let i = weave(n_qubits, &keep, ki, &traced, t);
                let j = weave(n_qubits, &keep, kj, &traced, t);
                acc += psi[i] * psi[j].conj();
            }
            out[(ki, kj)] = acc;
        }
    }
    DensityMatrix::new(keep.len(), out)
}

/// Partial trace on a raw matrix (trace need not be 1).
pub fn partial_trace_matrix(
    mat: &ComplexMatrix,
    n_qubits: usize,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    let keep = checked_subset(n_qubits, keep)?;
    let traced: Vec<usize> = (0..n_qubits).filter(|q| !keep.contains(q)).collect();
    let kd = 1usize << keep.len();
    let td = 1usize << traced.len();
    let mut out = ComplexMatrix::zeros(kd, kd);
    for ki in 0..kd {
        for kj in 0..kd {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..td {
                let i = weave(n_qubits, &keep, ki, &traced, t);
                let j = weave(n_qubits, &keep, kj, &traced, t);
                acc += mat[(i, j)];
            }
            out[(ki, kj)] = acc;
        }
    }
    Ok(out)
}

fn checked_subset(n_qubits: usize, keep: &[usize]) -> Result<Vec<usize>> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::BadSubset {
            reason: "empty keep set".into(),
        });
    }
    if keep.iter().any(|&q| q >= n_qubits) {
        return Err(Error::BadSubset {
            reason: format!("qubit index out of range for n = {n_qubits}"),
        });
    }
    if keep.len() == n_qubits {
        return Err(Error::BadSubset {
            reason: "keep set must be a strict subset".into(),
        });
    }
    Ok(keep)
}

/// Basis index with the bits of `ki` on the `keep` qubits and `t` on the rest.
fn weave(n_qubits: usize, keep: &[usize], ki: usize, traced: &[usize], t: usize) -> usize {
    let mut idx = 0usize;
    for (pos, &q) in keep.iter().enumerate() {
        let bit = (ki >> (keep.len() - 1 - pos)) & 1;
        idx |= bit << (n_qubits - 1 - q);
    }
    for (pos, &q) in traced.iter().enumerate() {
        let bit = (t >> (traced.len() - 1 - pos)) & 1;
        idx |= bit << (n_qubits - 1 - q);
    }
    idx
}

/// Trace distance ½‖ρ − σ‖₁ between two states of equal size.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    if a.n_qubits() != b.n_qubits() {
        return Err(Error::WrongSize {
            expected: a.n_qubits(),
            got: b.n_qubits(),
        });
    }
    let diff = a.matrix().sub(b.matrix()).hermitian_part();
    let (vals, _) = hermitian_eigensystem(&diff, tol)?;
    Ok(0.5 * vals.iter().map(|v| v.abs()).sum::<f64>())
}

/// Mixes states: Σ p_i ρ_i with Σ p_i = 1.
pub fn mix(parts: &[(f64, &DensityMatrix)]) -> Result<DensityMatrix> {
    let Some(((_, first), rest)) = parts.split_first() else {
        return Err(Error::BadParams { reason: "empty mixture".into() });
    };
    let n = first.n_qubits();
    let mut acc = ComplexMatrix::zeros(first.dim(), first.dim());
    for &(p, rho) in parts {
        if rho.n_qubits() != n {
            return Err(Error::WrongSize { expected: n, got: rho.n_qubits() });
        }
        acc = acc.add(&rho.matrix().scale(Complex64::new(p, 0.0)));
    }
    let _ = rest;
    DensityMatrix::new(n, acc)
}

/// Computational-basis vector |index⟩ on `n` qubits.
pub fn basis_vector(n_qubits: usize, index: usize) -> CVector {
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
    v[index] = Complex64::new(1.0, 0.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::TOL;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_state_marginal() {
        // |000⟩ keep {0,1} → |00⟩⟨00|
        let psi = basis_vector(3, 0);
        let rho = partial_trace_pure(&psi, 3, &[0, 1]).unwrap();
        assert_eq!(rho.n_qubits(), 2);
        assert!((rho.matrix()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((rho.matrix().trace() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn ghz_marginal_is_dephased_mixture() {
        let s = 1.0 / 2f64.sqrt();
        let mut psi = vec![c(0.0, 0.0); 8];
        psi[0] = c(s, 0.0);
        psi[7] = c(s, 0.0);
        let rho = partial_trace_pure(&psi, 3, &[0, 1]).unwrap();
        // ½(|00⟩⟨00| + |11⟩⟨11|)
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j && (i == 0 || i == 3) { 0.5 } else { 0.0 };
                assert!((rho.matrix()[(i, j)] - c(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn eta_marginal_matches_rank_two_decomposition() {
        // ϱ₁₂ of (W + W̄)/√2 equals |χ₀⟩⟨χ₀| + |χ₁⟩⟨χ₁| with
        // χ₀ = (|10⟩+|01⟩+|11⟩)/√6 and χ₁ = (|00⟩+|01⟩+|10⟩)/√6.
        let a = 1.0 / 6f64.sqrt();
        let mut psi = vec![c(0.0, 0.0); 8];
        for idx in [1, 2, 4, 3, 5, 6] {
            psi[idx] = c(a, 0.0);
        }
        let rho = partial_trace_pure(&psi, 3, &[0, 1]).unwrap();
        let s6 = 1.0 / 6f64.sqrt();
        let chi0 = vec![c(0.0, 0.0), c(s6, 0.0), c(s6, 0.0), c(s6, 0.0)];
        let chi1 = vec![c(s6, 0.0), c(s6, 0.0), c(s6, 0.0), c(0.0, 0.0)];
        let want = ComplexMatrix::outer(&chi0, &chi0).add(&ComplexMatrix::outer(&chi1, &chi1));
        assert!(rho.matrix().sub(&want).max_abs() < 1e-14);
        assert_eq!(rho.rank(&TOL).unwrap(), 2);
        // The two nonzero eigenvalues are positive and sum to 1.
        let eigs = rho.eigenvalues(&TOL).unwrap();
        assert!((eigs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(eigs[2] > 1e-3 && eigs[3] > 1e-3);
        assert!(eigs[0].abs() < 1e-12 && eigs[1].abs() < 1e-12);
    }

    #[test]
    fn keep_subset_validation() {
        let psi = basis_vector(3, 0);
        assert!(matches!(
            partial_trace_pure(&psi, 3, &[]),
            Err(Error::BadSubset { .. })
        ));
        assert!(matches!(
            partial_trace_pure(&psi, 3, &[0, 1, 2]),
            Err(Error::BadSubset { .. })
        ));
        assert!(matches!(
            partial_trace_pure(&psi, 3, &[3]),
            Err(Error::BadSubset { .. })
        ));
    }

    #[test]
    fn partial_trace_preserves_trace_and_mixing() {
        let s = 1.0 / 2f64.sqrt();
        let mut ghz = vec![c(0.0, 0.0); 8];
        ghz[0] = c(s, 0.0);
        ghz[7] = c(s, 0.0);
        let mut w = vec![c(0.0, 0.0); 8];
        let t = 1.0 / 3f64.sqrt();
        for idx in [1, 2, 4] {
            w[idx] = c(t, 0.0);
        }
        let rho_g = DensityMatrix::from_pure(3, &ghz).unwrap();
        let rho_w = DensityMatrix::from_pure(3, &w).unwrap();
        let mixed = mix(&[(0.25, &rho_g), (0.75, &rho_w)]).unwrap();
        let reduced = partial_trace(&mixed, &[1, 2]).unwrap();
        assert!((reduced.matrix().trace() - c(1.0, 0.0)).norm() < 1e-12);
        // Linearity: trace of a mixture is the mixture of traces.
        let lhs = reduced.matrix();
        let rhs = partial_trace(&rho_g, &[1, 2])
            .unwrap()
            .matrix()
            .scale(c(0.25, 0.0))
            .add(&partial_trace(&rho_w, &[1, 2]).unwrap().matrix().scale(c(0.75, 0.0)));
        assert!(lhs.sub(&rhs).max_abs() < 1e-13);
    }

    #[test]
    fn trace_distance_pure_vs_dephased_ghz() {
        let s = 1.0 / 2f64.sqrt();
        let mut ghz = vec![c(0.0, 0.0); 8];
        ghz[0] = c(s, 0.0);
        ghz[7] = c(s, 0.0);
        let pure = DensityMatrix::from_pure(3, &ghz).unwrap();
        let dephased = mix(&[
            (0.5, &DensityMatrix::from_pure(3, &basis_vector(3, 0)).unwrap()),
            (0.5, &DensityMatrix::from_pure(3, &basis_vector(3, 7)).unwrap()),
        ])
        .unwrap();
        let d = trace_distance(&pure, &dephased, &TOL).unwrap();
        assert!((d - 0.5).abs() < 1e-12);
    }
}
