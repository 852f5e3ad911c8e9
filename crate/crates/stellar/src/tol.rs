//! Centralized numerical tolerances.
//!
//! Every threshold used by the crate lives here so that "zero" means the
//! same thing everywhere. The values are sized for desk-scale problems:
//! operators up to 8×8, polynomials up to degree 20, states up to a few
//! dozen qubits in the symmetric subspace.

/// Tolerance configuration shared by all numerical routines.
///
/// The [`Default`] instance is what the library uses unless a caller
/// passes an explicit override (only the clustering tolerance is commonly
/// overridden, via the CLI `--tol` flag or the `STELLAR_TOL` variable).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative threshold below which a leading polynomial coefficient is
    /// treated as zero; also decides the multiplicity of the root at
    /// infinity for Majorana polynomials.
    pub leading_coeff: f64,
    /// Max entrywise |M − M†| accepted by the Hermitian eigensolver.
    pub hermitian_input: f64,
    /// Residual bound for the eigen decomposition, relative to ‖H‖.
    pub eigen_residual: f64,
    /// Residual bound for polynomial roots, relative to the coefficient scale.
    pub root_residual: f64,
    /// Hermiticity bound for density matrices (entrywise).
    pub density_hermitian: f64,
    /// Trace deviation bound for density matrices.
    pub density_trace: f64,
    /// Lower bound on density-matrix eigenvalues (round-off floor).
    pub density_eigen_floor: f64,
    /// Norm deviation allowed for state vectors and Dicke coefficients.
    pub state_norm: f64,
    /// Modulus below which a coefficient does not anchor the global phase.
    pub phase_anchor: f64,
    /// Residual above which a vector is rejected as non-symmetric (strict mode).
    pub symmetric_residual: f64,
    /// Default chordal-distance threshold for star clustering.
    pub cluster: f64,
    /// Minimum chordal separation for Möbius anchor triples.
    pub mobius_triple: f64,
    /// Verification bound for constructed Möbius maps.
    pub mobius_residual: f64,
    /// Relative |det| floor for invertible local operations.
    pub singular_det: f64,
    /// Residual bound for ILO proportionality checks.
    pub ilo_residual: f64,
    /// Floor under which measure values snap to exactly zero.
    pub measure_floor: f64,
    /// Eigenvalues of a reduced state below this count as rank-zero.
    pub rank_cutoff: f64,
    /// Relative singular-value cutoff for constraint-kernel extraction.
    pub kernel_cutoff: f64,
    /// Residual bound for the Gram special solution.
    pub gram_residual: f64,
    /// Marginal deviation allowed for a non-uniqueness witness.
    pub witness_marginal: f64,
    /// Eigenvalue floor for a non-uniqueness witness.
    pub witness_eigen_floor: f64,
    /// Minimum trace distance separating a witness from the input state.
    pub witness_distance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            leading_coeff: 1e-12,
            hermitian_input: 1e-10,
            eigen_residual: 1e-9,
            root_residual: 1e-8,
            density_hermitian: 1e-12,
            density_trace: 1e-10,
            density_eigen_floor: -1e-10,
            state_norm: 1e-10,
            phase_anchor: 1e-10,
            symmetric_residual: 1e-8,
            cluster: 1e-6,
            mobius_triple: 1e-9,
            mobius_residual: 1e-9,
            singular_det: 1e-10,
            ilo_residual: 1e-8,
            measure_floor: 1e-10,
            rank_cutoff: 1e-10,
            kernel_cutoff: 1e-9,
            gram_residual: 1e-7,
            witness_marginal: 1e-8,
            witness_eigen_floor: -1e-9,
            witness_distance: 1e-4,
        }
    }
}

impl Tolerances {
    /// The shared default instance.
    pub const fn default_const() -> Self {
        Self {
            leading_coeff: 1e-12,
            hermitian_input: 1e-10,
            eigen_residual: 1e-9,
            root_residual: 1e-8,
            density_hermitian: 1e-12,
            density_trace: 1e-10,
            density_eigen_floor: -1e-10,
            state_norm: 1e-10,
            phase_anchor: 1e-10,
            symmetric_residual: 1e-8,
            cluster: 1e-6,
            mobius_triple: 1e-9,
            mobius_residual: 1e-9,
            singular_det: 1e-10,
            ilo_residual: 1e-8,
            measure_floor: 1e-10,
            rank_cutoff: 1e-10,
            kernel_cutoff: 1e-9,
            gram_residual: 1e-7,
            witness_marginal: 1e-8,
            witness_eigen_floor: -1e-9,
            witness_distance: 1e-4,
        }
    }
}

/// Default tolerances used when no explicit configuration is passed.
pub const TOL: Tolerances = Tolerances::default_const();

/// Qubit cap for operations that materialize the full 2^N state vector.
pub const MAX_FULL_VECTOR_QUBITS: usize = 20;

/// Qubit cap for operations confined to the (N+1)-dimensional Dicke space.
pub const MAX_DICKE_QUBITS: usize = 64;
