//! Crate-wide error type.
//!
//! Checks that compare against a tolerance carry the measured residual so
//! that callers (and test logs) can see how far off an input actually was.

use thiserror::Error;

/// Errors produced by state construction, numerics, and analysis routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input matrix failed the Hermitian symmetry check.
    #[error("matrix is not Hermitian (max |M - M†| entry = {residual:.3e})")]
    NonHermitianInput { residual: f64 },

    /// All polynomial coefficients are below the leading-coefficient threshold.
    #[error("zero polynomial: no coefficient above threshold")]
    ZeroPolynomial,

    /// Eigenvalue iteration failed to converge within its sweep budget.
    #[error("eigenvalue iteration did not converge (off-diagonal residual {residual:.3e})")]
    NoConvergence { residual: f64 },

    /// Partial-trace subset is empty or not a strict subset of the qubits.
    #[error("bad qubit subset for partial trace: {reason}")]
    BadSubset { reason: String },

    /// Dicke index k outside 0..=N.
    #[error("Dicke index {k} out of range for {n} qubits")]
    IndexOutOfRange { k: usize, n: usize },

    /// Vector has a component outside the symmetric subspace.
    #[error("state is not permutation symmetric (residual {residual:.3e})")]
    NotSymmetric { residual: f64 },

    /// Symmetrized superposition collapsed to (numerical) zero.
    #[error("symmetrized state has vanishing norm ({norm:.3e})")]
    DegenerateSum { norm: f64 },

    /// Triple of points on the sphere is not pairwise distinct.
    #[error("Möbius triple is degenerate (min pairwise chordal distance {min_gap:.3e})")]
    DegenerateTriple { min_gap: f64 },

    /// State does not belong to the family required by this operation.
    #[error("wrong SLOCC family: expected {expected}, found {found}")]
    WrongFamily { expected: String, found: String },

    /// Spinor components invalid for the requested construction.
    #[error("bad spinor: {reason}")]
    BadSpinor { reason: String },

    /// Local operation is singular (determinant below threshold).
    #[error("singular local operation (|det| = {det:.3e})")]
    SingularOperation { det: f64 },

    /// Applied operation does not map the source state onto the target.
    #[error("states are not proportional under the operation (residual {residual:.3e})")]
    NotProportional { residual: f64 },

    /// Gram extension constraints admit no solution at the required residual.
    #[error("marginal constraints are inconsistent (residual {residual:.3e})")]
    InconsistentMarginals { residual: f64 },

    /// Operation requires a specific qubit count.
    #[error("wrong system size: expected {expected} qubits, got {got}")]
    WrongSize { expected: usize, got: usize },

    /// Invalid parameters for a constructor or operation.
    #[error("bad parameters: {reason}")]
    BadParams { reason: String },

    /// Density matrix failed a positivity/trace/Hermiticity invariant.
    #[error("invalid density matrix: {reason} (residual {residual:.3e})")]
    InvalidDensityMatrix { reason: String, residual: f64 },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
