//! Permutation-symmetric qubit states in the Dicke basis and their
//! Majorana stars.
//!
//! An N-qubit symmetric state is stored as the N+1 Dicke coefficients
//! d_0..d_N, where d_k multiplies the Dicke state with k qubits up: the
//! normalized equal superposition of all basis strings with exactly k zeros
//! and N−k ones. So d_N is the |00…0⟩ amplitude and d_0 the |11…1⟩ one.
//!
//! The same state is fixed by the multiset of N roots of its Majorana
//! polynomial P(z) = Σ_k (−1)^k √(N choose k) d_k z^k on the extended
//! complex plane, each root z = tan(β/2)e^{iα} naming the spinor of one
//! constituent qubit. Degree lost to vanishing leading coefficients comes
//! back as roots at infinity (spinors at |1⟩), so a state always has
//! exactly N stars.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

use crate::cmatrix::{apply_kron_power, inner, vec_norm, ComplexMatrix, CVector};
use crate::error::{Error, Result};
use crate::poly::poly_roots;
use crate::sphere::{compare_points, ExtPoint, Spinor};
use crate::tol::{Tolerances, MAX_DICKE_QUBITS, MAX_FULL_VECTOR_QUBITS, TOL};

/// Binomial coefficient as a float (exact in f64 well past the sizes used).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// The multiset of N Majorana stars of a symmetric state.
///
/// Points are kept in the canonical order: ascending (β, α) of the
/// corresponding spinor, with the point at infinity last.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSet {
    points: Vec<ExtPoint>,
}

impl StarSet {
    /// Wraps and canonically sorts a star multiset.
    pub fn new(mut points: Vec<ExtPoint>) -> Self {
        points.sort_by(compare_points);
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ExtPoint] {
        &self.points
    }

    /// Spinors of the stars, in star order.
    pub fn spinors(&self) -> Vec<Spinor> {
        self.points.iter().map(|&p| Spinor::from_point(p)).collect()
    }
}

/// A normalized pure symmetric state of `n` qubits.
///
/// Constructors normalize the coefficients and fix the global phase so the
/// first coefficient with modulus above the phase-anchor tolerance is real
/// and nonnegative, which makes states directly comparable.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    n: usize,
    d: Vec<Complex64>,
}

impl SymmetricState {
    /// Builds a state from Dicke coefficients d_0..d_n (renormalized).
    pub fn new(n: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_DICKE_QUBITS {
            return Err(Error::BadParams {
                reason: format!("qubit count {n} outside 1..={MAX_DICKE_QUBITS}"),
            });
        }
        if coeffs.len() != n + 1 {
            return Err(Error::BadParams {
                reason: format!("{} coefficients for {n} qubits", coeffs.len()),
            });
        }
        let norm = vec_norm(&coeffs);
        if norm < 1e-12 {
            return Err(Error::DegenerateSum { norm });
        }
        let mut d: Vec<Complex64> = coeffs.into_iter().map(|c| c / norm).collect();
        fix_phase(&mut d);
        Ok(Self { n, d })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Dicke coefficients d_0..d_n (d_n multiplies |00…0⟩).
    pub fn dicke_coeffs(&self) -> &[Complex64] {
        &self.d
    }

    /// |⟨self|other⟩|², a phase-free equality measure.
    pub fn fidelity(&self, other: &SymmetricState) -> f64 {
        if self.n != other.n {
            return 0.0;
        }
        inner(&self.d, &other.d).norm_sqr()
    }

    /// Expands the state onto the full 2^n computational basis.
    pub fn to_full_vector(&self) -> Result<CVector> {
        if self.n > MAX_FULL_VECTOR_QUBITS {
            return Err(Error::BadParams {
                reason: format!(
                    "full vector for {} qubits exceeds the {MAX_FULL_VECTOR_QUBITS}-qubit cap",
                    self.n
                ),
            });
        }
        let dim = 1usize << self.n;
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        for (idx, amp) in v.iter_mut().enumerate() {
            let k = self.n - (idx.count_ones() as usize);
            *amp = self.d[k] / binomial(self.n, k).sqrt();
        }
        Ok(v)
    }

    /// Majorana stars: all n roots of the Majorana polynomial.
    pub fn majorana_stars(&self) -> StarSet {
        self.majorana_stars_with(&TOL)
            .expect("normalized states have a nonzero Majorana polynomial")
    }

    /// Star extraction with explicit tolerances.
    pub fn majorana_stars_with(&self, tol: &Tolerances) -> Result<StarSet> {
        let coeffs = self.majorana_coeffs();
        Ok(StarSet::new(poly_roots(&coeffs, self.n, tol)?))
    }

    /// Coefficients c_k = (−1)^k √(n choose k) d_k of the Majorana polynomial.
    pub fn majorana_coeffs(&self) -> Vec<Complex64> {
        (0..=self.n)
            .map(|k| {
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                self.d[k] * Complex64::new(sign * binomial(self.n, k).sqrt(), 0.0)
            })
            .collect()
    }

    /// Rebuilds the state from its stars (up to the phase convention).
    pub fn from_stars(stars: &StarSet) -> Result<Self> {
        symmetrize(&stars.spinors())
    }

    /// Applies the collective rotation R⁻¹(α, β, 0) ⊗ … ⊗ R⁻¹(α, β, 0),
    /// realized directly on the (n+1)-dimensional Dicke space.
    pub fn collective_rotate(&self, alpha: f64, beta: f64) -> SymmetricState {
        let r = rotation_2x2(alpha, beta);
        let u = dagger_2x2(&r);
        self.apply_collective(&u)
            .expect("unitary rotation preserves the norm")
    }

    /// Applies R(α, β, 0) ⊗ … ⊗ R(α, β, 0), the inverse of
    /// [`SymmetricState::collective_rotate`].
    pub fn collective_unrotate(&self, alpha: f64, beta: f64) -> SymmetricState {
        let r = rotation_2x2(alpha, beta);
        self.apply_collective(&r)
            .expect("unitary rotation preserves the norm")
    }

    /// Applies an arbitrary identical single-qubit operator on the Dicke
    /// space and renormalizes (for unitary u this is norm-preserving; a
    /// near-singular u can collapse the state and errors out).
    pub fn apply_collective(&self, u: &[[Complex64; 2]; 2]) -> Result<SymmetricState> {
        let m = dicke_operator_matrix(self.n, u);
        let d = m.matvec(&self.d);
        SymmetricState::new(self.n, d)
    }

    /// Amplitude ⟨1,1,…,1| of the state rotated by R⁻¹(α, β, 0)^{⊗n}.
    ///
    /// Vanishes exactly when (α, β) points at one of the state's stars.
    pub fn rotated_all_down_amplitude(&self, alpha: f64, beta: f64) -> Complex64 {
        (0..=self.n)
            .map(|k| self.d[k] * wigner_d_element(self.n, k, alpha, beta))
            .sum()
    }

    /// Three-qubit GHZ state (|000⟩ + |111⟩)/√2.
    pub fn ghz() -> Self {
        let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(3, vec![s, zero, zero, s]).expect("static state")
    }

    /// Three-qubit W state (|100⟩ + |010⟩ + |001⟩)/√3.
    pub fn w() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Self::new(3, vec![zero, zero, one, zero]).expect("static state")
    }

    /// Obverse W state (|011⟩ + |101⟩ + |110⟩)/√3.
    pub fn wbar() -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Self::new(3, vec![zero, one, zero, zero]).expect("static state")
    }

    /// The W-superposition state η = (|W⟩ + |W̄⟩)/√2.
    pub fn eta() -> Self {
        let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(3, vec![zero, s, s, zero]).expect("static state")
    }

    /// Product state of n copies of one spinor.
    pub fn product(n: usize, sp: &Spinor) -> Result<Self> {
        symmetrize(&vec![*sp; n])
    }

    /// Two-distinct-star canonical state a|000⟩ + √3 b|W⟩ built from the
    /// spinor (c0, c1) of its non-degenerate star; requires c1 ≠ 0.
    pub fn d21_from_spinor(c0: Complex64, c1: Complex64) -> Result<Self> {
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if norm < 1e-12 {
            return Err(Error::BadSpinor { reason: "vanishing spinor".into() });
        }
        if c1.norm() / norm < 1e-12 {
            return Err(Error::BadSpinor {
                reason: "c1 = 0 puts all three stars at |0⟩ (separable state)".into(),
            });
        }
        let a = Complex64::new(3f64.sqrt(), 0.0) * c0
            / Complex64::new((3.0 * c0.norm_sqr() + c1.norm_sqr()).sqrt(), 0.0);
        let b = c1 / Complex64::new((9.0 * c0.norm_sqr() + 3.0 * c1.norm_sqr()).sqrt(), 0.0);
        Self::d21_from_ab(a, b)
    }

    /// Canonical D_{2,1} state from amplitudes with |a|² + 3|b|² = 1.
    pub fn d21_from_ab(a: Complex64, b: Complex64) -> Result<Self> {
        let norm = (a.norm_sqr() + 3.0 * b.norm_sqr()).sqrt();
        if norm < 1e-12 {
            return Err(Error::BadParams { reason: "a = b = 0".into() });
        }
        if b.norm() / norm < 1e-12 {
            return Err(Error::BadParams {
                reason: "b = 0 degenerates to the separable state |000⟩".into(),
            });
        }
        let zero = Complex64::new(0.0, 0.0);
        let a = a / norm;
        let b = b / norm;
        Self::new(3, vec![zero, zero, Complex64::new(3f64.sqrt(), 0.0) * b, a])
    }

    /// Random symmetric state with Gaussian Dicke coefficients.
    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        let d: Vec<Complex64> = (0..=n)
            .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
            .collect();
        Self::new(n, d)
    }
}

fn fix_phase(d: &mut [Complex64]) {
    if let Some(k) = d.iter().position(|c| c.norm() > TOL.phase_anchor) {
        let m = d[k].norm();
        let u = d[k].conj() / m;
        for c in d.iter_mut() {
            *c *= u;
        }
        d[k] = Complex64::new(m, 0.0);
    }
}

/// Standard Gaussian via Box–Muller.
fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// The Dicke state of `n` qubits with exactly `k` zeros, as a full vector.
pub fn dicke_state(n: usize, k: usize) -> Result<CVector> {
    if k > n {
        return Err(Error::IndexOutOfRange { k, n });
    }
    if n > MAX_FULL_VECTOR_QUBITS {
        return Err(Error::BadParams {
            reason: format!("full vector for {n} qubits exceeds the cap"),
        });
    }
    let amp = Complex64::new(1.0 / binomial(n, k).sqrt(), 0.0);
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (idx, slot) in v.iter_mut().enumerate() {
        if n - (idx.count_ones() as usize) == k {
            *slot = amp;
        }
    }
    Ok(v)
}

/// Projects a full state vector onto the symmetric subspace.
///
/// Returns the renormalized symmetric component and the norm of the part
/// outside the subspace (a value in [0, 1] for unit input).
pub fn project_symmetric(v: &[Complex64]) -> Result<(SymmetricState, f64)> {
    let dim = v.len();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::BadParams {
            reason: format!("vector length {dim} is not 2^n"),
        });
    }
    let n = dim.trailing_zeros() as usize;
    let mut d = vec![Complex64::new(0.0, 0.0); n + 1];
    for (idx, amp) in v.iter().enumerate() {
        let k = n - (idx.count_ones() as usize);
        d[k] += amp / Complex64::new(binomial(n, k).sqrt(), 0.0);
    }
    // Residual as ‖v − P_sym v‖ directly; the √(‖v‖² − ‖Pv‖²) form loses
    // all accuracy when the residual is near zero.
    let mut residual_sq = 0.0;
    for (idx, amp) in v.iter().enumerate() {
        let k = n - (idx.count_ones() as usize);
        residual_sq += (amp - d[k] / Complex64::new(binomial(n, k).sqrt(), 0.0)).norm_sqr();
    }
    let residual = residual_sq.sqrt();
    if vec_norm(&d) < 1e-12 {
        return Err(Error::NotSymmetric { residual });
    }
    Ok((SymmetricState::new(n, d)?, residual))
}

/// Like [`project_symmetric`] but rejects vectors whose non-symmetric
/// component exceeds `threshold`.
pub fn project_symmetric_strict(
    v: &[Complex64],
    threshold: f64,
) -> Result<(SymmetricState, f64)> {
    let (state, residual) = project_symmetric(v)?;
    if residual > threshold {
        return Err(Error::NotSymmetric { residual });
    }
    Ok((state, residual))
}

/// Symmetrized product state of the given spinors.
///
/// The normalized symmetrization 𝒩 Σ_P P̂|ε₁,…,ε_N⟩ expands in the Dicke
/// basis with d_k ∝ e_k/√(N choose k), where Σ_k (−1)^k e_k z^k is the
/// expansion of Π_s (c1_s − c0_s z) — which is why the stars of the result
/// are exactly the input points. Inputs are pre-sorted by a total key so
/// the result is bit-identical under any reordering.
pub fn symmetrize(spinors: &[Spinor]) -> Result<SymmetricState> {
    let n = spinors.len();
    if n == 0 {
        return Err(Error::BadParams { reason: "no spinors".into() });
    }
    let mut sorted = spinors.to_vec();
    sorted.sort_by(|a, b| {
        let (aa, ab) = a.angles();
        let (ba, bb) = b.angles();
        ab.total_cmp(&bb)
            .then(aa.total_cmp(&ba))
            .then(a.c0.re.total_cmp(&b.c0.re))
            .then(a.c0.im.total_cmp(&b.c0.im))
            .then(a.c1.re.total_cmp(&b.c1.re))
            .then(a.c1.im.total_cmp(&b.c1.im))
    });

    // Π_s (c1_s − c0_s z), expanded by repeated convolution.
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for sp in &sorted {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (i, &coeff) in poly.iter().enumerate() {
            next[i] += coeff * sp.c1;
            next[i + 1] -= coeff * sp.c0;
        }
        poly = next;
    }

    let d: Vec<Complex64> = (0..=n)
        .map(|k| {
            let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            poly[k] * Complex64::new(sign / binomial(n, k).sqrt(), 0.0)
        })
        .collect();
    let norm = vec_norm(&d);
    if norm < 1e-12 {
        return Err(Error::DegenerateSum { norm });
    }
    SymmetricState::new(n, d)
}

/// Closed form of the rotation element
/// D^{N/2*}_{k−N/2,−N/2}(α, β, 0) =
/// (−1)^k √(N choose k) cos^{N−k}(β/2) sin^k(β/2) e^{i(k−N/2)α}.
pub fn wigner_d_element(n: usize, k: usize, alpha: f64, beta: f64) -> Complex64 {
    assert!(k <= n, "Dicke index out of range");
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let half = 0.5 * beta;
    let magnitude =
        sign * binomial(n, k).sqrt() * half.cos().powi((n - k) as i32) * half.sin().powi(k as i32);
    Complex64::from_polar(1.0, (k as f64 - 0.5 * n as f64) * alpha) * magnitude
}

/// Single-qubit rotation R(α, β, 0) = e^{−iαJz} e^{−iβJy}; maps |0⟩ to the
/// spinor with angles (α, β).
pub fn rotation_2x2(alpha: f64, beta: f64) -> [[Complex64; 2]; 2] {
    let c = (0.5 * beta).cos();
    let s = (0.5 * beta).sin();
    let em = Complex64::from_polar(1.0, -0.5 * alpha);
    let ep = Complex64::from_polar(1.0, 0.5 * alpha);
    [[em * c, -(em * s)], [ep * s, ep * c]]
}

fn dagger_2x2(m: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [
        [m[0][0].conj(), m[1][0].conj()],
        [m[0][1].conj(), m[1][1].conj()],
    ]
}

/// Matrix of u ⊗ … ⊗ u restricted to the symmetric subspace, in the Dicke
/// basis ordered by the number of zeros k = 0..n.
///
/// Each element is an exact binomial convolution of single-qubit entries:
/// ⟨D_{k′}|u^{⊗n}|D_k⟩ = √(C(n,k′)/C(n,k)) Σ_a C(k′,a) C(n−k′,k−a)
/// u₀₀^a u₀₁^{k′−a} u₁₀^{k−a} u₁₁^{n−k′−k+a}.
pub fn dicke_operator_matrix(n: usize, u: &[[Complex64; 2]; 2]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n + 1, n + 1);
    for kp in 0..=n {
        for k in 0..=n {
            let lo = k.saturating_sub(n - kp);
            let hi = k.min(kp);
            let mut acc = Complex64::new(0.0, 0.0);
            for a in lo..=hi {
                let comb = binomial(kp, a) * binomial(n - kp, k - a);
                acc += Complex64::new(comb, 0.0)
                    * u[0][0].powu(a as u32)
                    * u[0][1].powu((kp - a) as u32)
                    * u[1][0].powu((k - a) as u32)
                    * u[1][1].powu((n - kp - (k - a)) as u32);
            }
            m[(kp, k)] = acc * Complex64::new((binomial(n, kp) / binomial(n, k)).sqrt(), 0.0);
        }
    }
    m
}

/// Full-space realization of the collective rotation R⁻¹(α, β, 0)^{⊗n},
/// for cross-checking the Dicke-space path.
pub fn rotate_full_vector(v: &[Complex64], n: usize, alpha: f64, beta: f64) -> CVector {
    let r = rotation_2x2(alpha, beta);
    let u = dagger_2x2(&r);
    let op = ComplexMatrix::from_rows(2, 2, vec![u[0][0], u[0][1], u[1][0], u[1][1]])
        .expect("2×2 shape");
    apply_kron_power(&op, n, v)
}
