//! Majorana stellar representation of permutation-symmetric qubit states.
//!
//! A pure symmetric state of N qubits is fixed by N points ("stars") on the
//! Bloch sphere: the roots of its Majorana polynomial on the extended
//! complex plane. This crate extracts and manipulates that representation
//! and builds the analyses that come with it:
//!
//! - [`symmetric`]: Dicke-basis states, star extraction and reconstruction,
//!   collective rotations, and the standard named states (GHZ, W, W̄, and
//!   the W-superposition state η).
//! - [`slocc`]: degeneracy-family classification of star multisets and
//!   interconversion of equivalent states by an identical invertible local
//!   operation, realized as a Möbius map on the stars.
//! - [`measures`]: pairwise concurrence and the three-tangle.
//! - [`marginals`]: whether a three-qubit pure state is the unique density
//!   matrix compatible with its two-party reduced states, decided through a
//!   Gram-matrix parametrization of all extensions, with a numerical
//!   witness search for the non-unique case.
//! - [`cmatrix`], [`poly`], [`density`], [`sphere`]: the self-contained
//!   numerical kernel (complex Jacobi eigensolver, companion-matrix root
//!   finder, partial traces, chordal geometry and Möbius maps).
//!
//! The `stellar` binary exposes the same analyses on JSON state files; see
//! the crate examples for more library usage.
//!
//! ```
//! use stellar::{classify, measure_report, slocc_equivalent, uniqueness_check,
//!               SymmetricState, UniquenessOptions, TOL};
//!
//! let eta = SymmetricState::eta();
//! let ghz = SymmetricState::ghz();
//!
//! // Same star-degeneracy family…
//! assert_eq!(classify(&eta.majorana_stars()), classify(&ghz.majorana_stars()));
//! // …and interconvertible by an identical invertible local operation,
//! let op = slocc_equivalent(&eta, &ghz, TOL.cluster).unwrap();
//! // …yet with different entanglement measures,
//! let m = measure_report(&eta).unwrap();
//! assert!((m.tangle - 1.0 / 3.0).abs() < 1e-9);
//! // …and opposite answers to "do the two-party marginals pin the state?"
//! let verdict = uniqueness_check(
//!     &eta.to_full_vector().unwrap(),
//!     &UniquenessOptions::default(),
//! ).unwrap();
//! assert_eq!(verdict.label(), "unique");
//! # let _ = op;
//! ```

pub mod cli;
pub mod cmatrix;
pub mod density;
pub mod error;
pub mod marginals;
pub mod measures;
pub mod poly;
pub mod slocc;
pub mod sphere;
pub mod symmetric;
pub mod tol;

pub use cmatrix::{hermitian_eigensystem, kron, ComplexMatrix, CVector};
pub use density::{partial_trace, partial_trace_pure, trace_distance, DensityMatrix};
pub use error::{Error, Result};
pub use marginals::{uniqueness_check, UniquenessOptions, UniquenessVerdict};
pub use measures::{concurrence, measure_report, three_tangle, MeasureReport};
pub use poly::poly_roots;
pub use slocc::{classify, slocc_equivalent, verify_ilo, LocalOperation, SloccFamily};
pub use sphere::{chordal_distance, ExtPoint, Mobius, Spinor};
pub use symmetric::{StarSet, SymmetricState};
pub use tol::{Tolerances, TOL};
