//! SLOCC entanglement families of symmetric states and their
//! interconversion by identical invertible local operations.
//!
//! The degeneracy list of the Majorana star multiset (how many stars
//! coincide, sorted non-increasing) labels the family D_{n₁,…,n_d}. An
//! identical ILO A ⊗ … ⊗ A moves every star by the Möbius action of A, so
//! two states are interconvertible exactly when some Möbius map carries one
//! star multiset onto the other — a finite search over cluster assignments
//! once three anchor points pin the map down.

use num_complex::Complex64;
use std::fmt;

use crate::cmatrix::{apply_kron_power, inner, vec_norm, ComplexMatrix};
use crate::error::{Error, Result};
use crate::sphere::{chordal_distance, ExtPoint, Mobius, Spinor};
use crate::symmetric::{project_symmetric_strict, rotation_2x2, StarSet, SymmetricState};
use crate::tol::{Tolerances, TOL};

/// Degeneracy-family label D_{n₁,…,n_d} with n₁ ≥ … ≥ n_d and Σnᵢ = N.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SloccFamily {
    degeneracies: Vec<usize>,
}

impl SloccFamily {
    pub fn new(mut degeneracies: Vec<usize>) -> Self {
        degeneracies.sort_unstable_by(|a, b| b.cmp(a));
        Self { degeneracies }
    }

    /// Non-increasing star multiplicities.
    pub fn degeneracies(&self) -> &[usize] {
        &self.degeneracies
    }

    /// Number of distinct stars.
    pub fn distinct_stars(&self) -> usize {
        self.degeneracies.len()
    }

    pub fn total_qubits(&self) -> usize {
        self.degeneracies.iter().sum()
    }

    /// The label string, e.g. `D_{2,1}`.
    pub fn label(&self) -> String {
        let list: Vec<String> = self.degeneracies.iter().map(|n| n.to_string()).collect();
        format!("D_{{{}}}", list.join(","))
    }
}

impl fmt::Display for SloccFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Full clustering result behind a family label.
#[derive(Debug, Clone)]
pub struct Classification {
    pub family: SloccFamily,
    /// Star indices per cluster, ordered by (size desc, representative key).
    pub clusters: Vec<Vec<usize>>,
    /// One representative point per cluster, same order as `clusters`.
    pub representatives: Vec<ExtPoint>,
    /// Smallest chordal distance between stars of different clusters.
    pub min_intercluster_gap: Option<f64>,
    /// Set when the gap is within a factor 10 of the clustering tolerance,
    /// i.e. the degeneracy split is sensitive to the threshold.
    pub ambiguous: bool,
}

/// Family of a star multiset at the default clustering tolerance.
pub fn classify(stars: &StarSet) -> SloccFamily {
    classify_detailed(stars, TOL.cluster).family
}

/// Single-linkage clustering of the stars at chordal threshold `tol`.
pub fn classify_detailed(stars: &StarSet, tol: f64) -> Classification {
    let points = stars.points();
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    for i in 0..n {
        for j in (i + 1)..n {
            if chordal_distance(points[i], points[j]) <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }

    let mut groups: std::collections::HashMap<usize, Vec<usize>> =
        std::collections::HashMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut clusters: Vec<Vec<usize>> = groups.into_values().collect();

    clusters.sort_by(|a, b| {
        b.len().cmp(&a.len()).then_with(|| {
            let (ba, aa) = key_of(representative_point(a, points));
            let (bb, ab) = key_of(representative_point(b, points));
            ba.total_cmp(&bb).then(aa.total_cmp(&ab))
        })
    });
    let representatives: Vec<ExtPoint> = clusters
        .iter()
        .map(|c| representative_point(c, points))
        .collect();

    let mut min_gap: Option<f64> = None;
    for (ci, a) in clusters.iter().enumerate() {
        for b in clusters.iter().skip(ci + 1) {
            for &i in a {
                for &j in b {
                    let d = chordal_distance(points[i], points[j]);
                    min_gap = Some(min_gap.map_or(d, |g: f64| g.min(d)));
                }
            }
        }
    }
    let ambiguous = min_gap.is_some_and(|g| g < 10.0 * tol);

    Classification {
        family: SloccFamily::new(clusters.iter().map(|c| c.len()).collect()),
        clusters,
        representatives,
        min_intercluster_gap: min_gap,
        ambiguous,
    }
}

fn key_of(p: ExtPoint) -> (f64, f64) {
    let (alpha, beta) = p.angles();
    (beta, alpha)
}

/// Cluster representative via the principal axis of Σ |ε⟩⟨ε| over the
/// member spinors — stable on the sphere even for clusters near infinity.
fn representative_point(cluster: &[usize], points: &[ExtPoint]) -> ExtPoint {
    if cluster.len() == 1 {
        return points[cluster[0]];
    }
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for &i in cluster {
        let sp = Spinor::from_point(points[i]);
        let v = sp.to_vector();
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] += v[r] * v[c].conj();
            }
        }
    }
    // Principal eigenvector of the 2×2 Hermitian accumulator.
    let a = m[0][0].re;
    let d = m[1][1].re;
    let b = m[0][1];
    let half_tr = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let lam = half_tr + disc;
    let v = if b.norm() > 1e-15 {
        [b, Complex64::new(lam - a, 0.0)]
    } else if a >= d {
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
    } else {
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
    };
    match Spinor::new(v[0], v[1]) {
        Ok(sp) => sp.point(),
        Err(_) => points[cluster[0]],
    }
}

/// An invertible 2×2 operator applied identically to every qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperation {
    m: [[Complex64; 2]; 2],
}

impl LocalOperation {
    /// Wraps an invertible matrix (relative |det| check).
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let scale = m
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(f64::MIN_POSITIVE);
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.norm() <= TOL.singular_det * scale * scale {
            return Err(Error::SingularOperation { det: det.norm() });
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self {
            m: [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            ],
        }
    }

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// The induced Möbius action on stars.
    pub fn mobius(&self) -> Mobius {
        Mobius::from_matrix(self.m).expect("operation was validated as invertible")
    }

    /// From a Möbius map's projective matrix.
    pub fn from_mobius(map: &Mobius) -> Result<Self> {
        Self::new(*map.matrix())
    }

    /// Det-normalized form with the (0,0) entry's phase made nonnegative
    /// real (anchoring on the first significant entry when a₀₀ ≈ 0).
    pub fn canonical(&self) -> LocalOperation {
        let det = self.det();
        let scale = det.sqrt();
        let mut m = self.m;
        for row in &mut m {
            for entry in row.iter_mut() {
                *entry /= scale;
            }
        }
        let flat = [m[0][0], m[0][1], m[1][0], m[1][1]];
        let anchor = flat
            .iter()
            .find(|c| c.norm() > 1e-9)
            .copied()
            .unwrap_or(Complex64::new(1.0, 0.0));
        let u = anchor.conj() / anchor.norm();
        for row in &mut m {
            for entry in row.iter_mut() {
                *entry *= u;
            }
        }
        LocalOperation { m }
    }

    /// Raw column action A·(c0, c1)ᵀ without normalization.
    pub fn apply_raw(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    /// Matrix product self · other.
    pub fn compose(&self, other: &LocalOperation) -> LocalOperation {
        let a = &self.m;
        let b = &other.m;
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        LocalOperation { m }
    }

    /// Projective inverse (adjugate).
    pub fn inverse(&self) -> LocalOperation {
        let [[a, b], [c, d]] = self.m;
        LocalOperation { m: [[d, -b], [-c, a]] }
    }

    /// A ⊗ … ⊗ A applied to a symmetric state, renormalized.
    ///
    /// Identical factors preserve exchange symmetry, so the image projects
    /// back onto the symmetric subspace with negligible residual.
    pub fn apply_to_state(&self, s: &SymmetricState) -> Result<SymmetricState> {
        let full = s.to_full_vector()?;
        let op = self.as_complex_matrix();
        let mut image = apply_kron_power(&op, s.n_qubits(), &full);
        let norm = vec_norm(&image);
        if norm < 1e-12 {
            return Err(Error::SingularOperation { det: self.det().norm() });
        }
        for amp in &mut image {
            *amp /= norm;
        }
        let (state, _residual) = project_symmetric_strict(&image, 1e-8)?;
        Ok(state)
    }

    pub fn as_complex_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_rows(
            2,
            2,
            vec![self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]],
        )
        .expect("2×2 shape")
    }

    /// Entrywise distance between canonical forms; two operations are
    /// projectively equal when this is small.
    pub fn projective_distance(&self, other: &LocalOperation) -> f64 {
        let a = self.canonical();
        let b = other.canonical();
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((a.m[i][j] - b.m[i][j]).norm());
            }
        }
        worst
    }

    /// Deterministic tie-break key: canonical entries compared by
    /// (modulus, argument) in row-major order.
    fn canonical_key(&self) -> [(f64, f64); 4] {
        let c = self.canonical();
        let mut key = [(0.0, 0.0); 4];
        for (slot, entry) in key
            .iter_mut()
            .zip([c.m[0][0], c.m[0][1], c.m[1][0], c.m[1][1]])
        {
            let modulus = entry.norm();
            let arg = if modulus < 1e-12 {
                0.0
            } else {
                entry.arg().rem_euclid(std::f64::consts::TAU)
            };
            *slot = (modulus, arg);
        }
        key
    }
}

fn key_less(a: &[(f64, f64); 4], b: &[(f64, f64); 4]) -> bool {
    for ((ma, aa), (mb, ab)) in a.iter().zip(b.iter()) {
        if (ma - mb).abs() > 1e-9 {
            return ma < mb;
        }
        if (aa - ab).abs() > 1e-9 {
            return aa < ab;
        }
    }
    false
}

/// Successful ILO proportionality check: A^{⊗N}|s₁⟩ = λ|s₂⟩.
#[derive(Debug, Clone, Copy)]
pub struct IloProof {
    pub factor: Complex64,
    pub residual: f64,
}

/// Checks A ⊗ … ⊗ A |s₁⟩ = λ |s₂⟩ and returns λ on success.
pub fn verify_ilo(
    op: &LocalOperation,
    s1: &SymmetricState,
    s2: &SymmetricState,
) -> Result<IloProof> {
    verify_ilo_with(op, s1, s2, &TOL)
}

/// [`verify_ilo`] with explicit tolerances.
pub fn verify_ilo_with(
    op: &LocalOperation,
    s1: &SymmetricState,
    s2: &SymmetricState,
    tol: &Tolerances,
) -> Result<IloProof> {
    if s1.n_qubits() != s2.n_qubits() {
        return Err(Error::WrongSize {
            expected: s1.n_qubits(),
            got: s2.n_qubits(),
        });
    }
    let scale = op
        .matrix()
        .iter()
        .flatten()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    if op.det().norm() <= TOL.singular_det * scale * scale {
        return Err(Error::SingularOperation { det: op.det().norm() });
    }
    let n = s1.n_qubits();
    let v = apply_kron_power(&op.as_complex_matrix(), n, &s1.to_full_vector()?);
    let target = s2.to_full_vector()?;
    let lambda = inner(&target, &v);
    let norm_v = vec_norm(&v);
    let mut residual_sq = 0.0;
    for (a, b) in v.iter().zip(&target) {
        residual_sq += (a - lambda * b).norm_sqr();
    }
    let residual = residual_sq.sqrt() / norm_v;
    if residual < tol.ilo_residual {
        Ok(IloProof { factor: lambda, residual })
    } else {
        Err(Error::NotProportional { residual })
    }
}

/// Searches for an identical ILO carrying `s1` onto `s2`.
///
/// Returns `None` when the states sit in different degeneracy families (or
/// when no candidate map verifies, which can happen for N ≥ 4 states that
/// share a family without being Möbius-related). Among all verified
/// candidate assignments the canonically smallest operation is returned,
/// so the result does not depend on enumeration order.
pub fn slocc_equivalent(
    s1: &SymmetricState,
    s2: &SymmetricState,
    cluster_tol: f64,
) -> Option<LocalOperation> {
    if s1.n_qubits() != s2.n_qubits() {
        return None;
    }
    let stars1 = s1.majorana_stars();
    let stars2 = s2.majorana_stars();
    let c1 = classify_detailed(&stars1, cluster_tol);
    let c2 = classify_detailed(&stars2, cluster_tol);
    if c1.family != c2.family {
        return None;
    }

    let candidates = candidate_maps(&stars1, &stars2, &c1, &c2, cluster_tol);
    let mut best: Option<LocalOperation> = None;
    for map in candidates {
        let Ok(op) = LocalOperation::from_mobius(&map) else { continue };
        if verify_ilo(&op, s1, s2).is_err() {
            continue;
        }
        let op = op.canonical();
        best = match best {
            None => Some(op),
            Some(cur) => {
                if key_less(&op.canonical_key(), &cur.canonical_key()) {
                    Some(op)
                } else {
                    Some(cur)
                }
            }
        };
    }
    best
}

fn candidate_maps(
    stars1: &StarSet,
    stars2: &StarSet,
    c1: &Classification,
    c2: &Classification,
    cluster_tol: f64,
) -> Vec<Mobius> {
    let d = c1.clusters.len();
    let mut maps = Vec::new();
    match d {
        1 => {
            // Product states: rotate spinor 1 onto spinor 2.
            let (a1, b1) = c1.representatives[0].angles();
            let (a2, b2) = c2.representatives[0].angles();
            let r1 = rotation_2x2(a1, b1);
            let r2 = rotation_2x2(a2, b2);
            // R(α₂,β₂,0) · R(α₁,β₁,0)†
            let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for (k, r1k) in r1.iter().enumerate() {
                        m[i][j] += r2[i][k] * r1k[j].conj();
                    }
                }
            }
            if let Ok(map) = Mobius::from_matrix(m) {
                maps.push(map);
            }
        }
        2 => {
            // Two anchor pairs leave a residual family; any member works
            // because every source star sits in one of the two clusters.
            let assignments: Vec<[usize; 2]> = if c1.clusters[0].len() == c1.clusters[1].len() {
                vec![[0, 1], [1, 0]]
            } else {
                vec![[0, 1]]
            };
            for assign in assignments {
                if c1.clusters[0].len() != c2.clusters[assign[0]].len() {
                    continue;
                }
                let s_pair = [c1.representatives[0], c1.representatives[1]];
                let t_pair = [c2.representatives[assign[0]], c2.representatives[assign[1]]];
                let Some(x) = auxiliary_point(&s_pair) else { continue };
                let Some(y) = auxiliary_point(&t_pair) else { continue };
                if let Ok(map) =
                    Mobius::from_triples([s_pair[0], s_pair[1], x], [t_pair[0], t_pair[1], y])
                {
                    maps.push(map);
                }
            }
        }
        _ => {
            let src = [
                c1.representatives[0],
                c1.representatives[1],
                c1.representatives[2],
            ];
            let sizes1: Vec<usize> = c1.clusters.iter().map(|c| c.len()).collect();
            let sizes2: Vec<usize> = c2.clusters.iter().map(|c| c.len()).collect();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        if i == j || j == k || i == k {
                            continue;
                        }
                        if sizes2[i] != sizes1[0]
                            || sizes2[j] != sizes1[1]
                            || sizes2[k] != sizes1[2]
                        {
                            continue;
                        }
                        let dst = [
                            c2.representatives[i],
                            c2.representatives[j],
                            c2.representatives[k],
                        ];
                        let Ok(map) = Mobius::from_triples(src, dst) else { continue };
                        if maps_multiset(&map, stars1, stars2, cluster_tol) {
                            maps.push(map);
                        }
                    }
                }
            }
        }
    }
    maps
}

/// Cheap prefilter: does the map carry every source star onto the target
/// multiset (with multiplicity) at a loose tolerance? Final acceptance is
/// always by the state-level proportionality check.
fn maps_multiset(map: &Mobius, stars1: &StarSet, stars2: &StarSet, cluster_tol: f64) -> bool {
    let match_tol = (100.0 * cluster_tol).min(0.2);
    let mut used = vec![false; stars2.len()];
    for &p in stars1.points() {
        let image = map.apply(p);
        let mut found = false;
        for (slot, &q) in used.iter_mut().zip(stars2.points()) {
            if !*slot && chordal_distance(image, q) <= match_tol {
                *slot = true;
                found = true;
                break;
            }
        }
        if !found {
            return false;
        }
    }
    true
}

/// A palette point chordally separated from both anchors.
fn auxiliary_point(avoid: &[ExtPoint; 2]) -> Option<ExtPoint> {
    let palette = [
        ExtPoint::finite(0.0, 0.0),
        ExtPoint::Infinity,
        ExtPoint::finite(1.0, 0.0),
        ExtPoint::finite(-1.0, 0.0),
        ExtPoint::finite(0.0, 1.0),
        ExtPoint::finite(0.0, -1.0),
        ExtPoint::finite(2.0, 0.0),
        ExtPoint::finite(0.5, 0.5),
    ];
    palette
        .into_iter()
        .find(|&p| avoid.iter().all(|&q| chordal_distance(p, q) > 0.05))
}

/// Canonical parameters of a D_{2,1} state: the rotation that aligns the
/// doubly-degenerate star with |0⟩ and the amplitudes of
/// a|000⟩ + √3 b|W⟩ with |a|² + 3|b|² = 1.
#[derive(Debug, Clone, Copy)]
pub struct CanonicalD21 {
    pub a: Complex64,
    pub b: Complex64,
    /// (α, β) of the doubly-degenerate star; the collective rotation by
    /// these angles produced the canonical form.
    pub rotation: (f64, f64),
    /// Leakage into the d₀, d₁ coefficients after the rotation.
    pub residual: f64,
}

/// Brings a D_{2,1} state to the canonical a|000⟩ + √3 b|W⟩ form.
pub fn canonical_d21(s: &SymmetricState) -> Result<CanonicalD21> {
    if s.n_qubits() != 3 {
        return Err(Error::WrongSize { expected: 3, got: s.n_qubits() });
    }
    let stars = s.majorana_stars();
    let class = classify_detailed(&stars, TOL.cluster);
    if class.family.degeneracies() != [2, 1] {
        return Err(Error::WrongFamily {
            expected: "D_{2,1}".into(),
            found: class.family.label(),
        });
    }
    let (alpha, beta) = class.representatives[0].angles();
    let rotated = s.collective_rotate(alpha, beta);
    let d = rotated.dicke_coeffs();
    let residual = (d[0].norm_sqr() + d[1].norm_sqr()).sqrt();
    let mut a = d[3];
    let mut b = d[2] / Complex64::new(3f64.sqrt(), 0.0);
    let norm = (a.norm_sqr() + 3.0 * b.norm_sqr()).sqrt();
    a /= norm;
    b /= norm;
    Ok(CanonicalD21 { a, b, rotation: (alpha, beta), residual })
}

/// Rebuilds the original state from its canonical D_{2,1} data.
pub fn reconstruct_d21(canon: &CanonicalD21) -> Result<SymmetricState> {
    let state = SymmetricState::d21_from_ab(canon.a, canon.b)?;
    Ok(state.collective_unrotate(canon.rotation.0, canon.rotation.1))
}

/// The ILO sending the canonical state a|000⟩ + √3 b|W⟩ (with
/// non-degenerate spinor (c0, c1)) to the W state: stars {0, 0, c1/c0}
/// map to {0, 0, ∞}.
///
/// Built as A = [[c1, −c0], [0, c1]] (so A|0⟩ ∝ |0⟩ and A(c0,c1)ᵀ ∝ (0,1)ᵀ)
/// and certified by the proportionality check rather than trusted from its
/// entries.
pub fn ilo_to_w(c0: Complex64, c1: Complex64) -> Result<LocalOperation> {
    let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
    if norm < 1e-12 {
        return Err(Error::BadSpinor { reason: "vanishing spinor".into() });
    }
    if c1.norm() / norm < 1e-12 {
        return Err(Error::BadSpinor {
            reason: "c1 = 0: the state is the |000⟩ direction, no W image".into(),
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    Ok(LocalOperation::new([[c1, -c0], [zero, c1]])?.canonical())
}
