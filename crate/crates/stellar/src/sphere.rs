//! Points on the extended complex plane, spinors, and Möbius maps.
//!
//! A point z on the Riemann sphere corresponds to the single-qubit state
//! |ε⟩ = cos(β/2)e^{−iα/2}|0⟩ + sin(β/2)e^{iα/2}|1⟩ through
//! z = tan(β/2)e^{iα}, with the point at infinity standing for |1⟩.
//! Distances are measured in the chordal metric, which treats infinity like
//! any other point and is the natural scale for clustering Majorana roots.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tol::TOL;

/// A point of the extended complex plane C ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtPoint {
    Finite(Complex64),
    Infinity,
}

impl ExtPoint {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtPoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtPoint::Infinity)
    }

    /// Spherical angles (α, β) of the corresponding spinor, with
    /// α ∈ [0, 2π) and β ∈ [0, π]. Infinity maps to (0, π).
    pub fn angles(&self) -> (f64, f64) {
        match self {
            ExtPoint::Infinity => (0.0, PI),
            ExtPoint::Finite(z) => {
                let beta = 2.0 * z.norm().atan();
                let alpha = if z.norm() == 0.0 {
                    0.0
                } else {
                    // + 0.0 turns a negative zero into a plain one.
                    z.arg().rem_euclid(TAU) + 0.0
                };
                (alpha, beta)
            }
        }
    }

    /// Cartesian Bloch-sphere coordinates (x, y, z) of the point.
    pub fn bloch(&self) -> (f64, f64, f64) {
        match self {
            ExtPoint::Infinity => (0.0, 0.0, -1.0),
            ExtPoint::Finite(_) => {
                let (alpha, beta) = self.angles();
                (beta.sin() * alpha.cos(), beta.sin() * alpha.sin(), beta.cos())
            }
        }
    }

    /// Sort key ordering points by (β, α) with infinity last.
    pub fn sort_key(&self) -> (f64, f64) {
        let (alpha, beta) = self.angles();
        (beta, alpha)
    }
}

impl From<(f64, f64)> for ExtPoint {
    fn from((re, im): (f64, f64)) -> Self {
        ExtPoint::finite(re, im)
    }
}

fn tuple_from_angles((alpha, beta): (f64, f64)) -> (f64, f64) {
    (beta, alpha)
}

impl ExtPoint {
    fn key(&self) -> (f64, f64) {
        tuple_from_angles(self.angles())
    }
}

/// Total order by (β, α); deterministic star ordering for reports and tests.
pub fn compare_points(a: &ExtPoint, b: &ExtPoint) -> std::cmp::Ordering {
    let (ba, aa) = a.key();
    let (bb, ab) = b.key();
    ba.total_cmp(&bb).then(aa.total_cmp(&ab))
}

/// Chordal distance on the Riemann sphere, normalized to [0, 1].
///
/// d(z, w) = |z − w| / √((1+|z|²)(1+|w|²)), with d(z, ∞) = 1/√(1+|z|²);
/// antipodal points are at distance 1.
pub fn chordal_distance(a: ExtPoint, b: ExtPoint) -> f64 {
    match (a, b) {
        (ExtPoint::Infinity, ExtPoint::Infinity) => 0.0,
        (ExtPoint::Finite(z), ExtPoint::Infinity) | (ExtPoint::Infinity, ExtPoint::Finite(z)) => {
            1.0 / (1.0 + z.norm_sqr()).sqrt()
        }
        (ExtPoint::Finite(z), ExtPoint::Finite(w)) => {
            (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
        }
    }
}

/// A normalized single-qubit state (c0|0⟩ + c1|1⟩, |c0|² + |c1|² = 1).
///
/// The crate standardizes on unit spinors with the modulus normalization
/// |c0|² + |c1|² = 1; constructions from angles use the phase split
/// c0 = cos(β/2)e^{−iα/2}, c1 = sin(β/2)e^{iα/2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    pub c0: Complex64,
    pub c1: Complex64,
}

impl Spinor {
    /// Normalizes the pair (c0, c1) into a unit spinor.
    pub fn new(c0: Complex64, c1: Complex64) -> Result<Self> {
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if norm < 1e-12 {
            return Err(Error::BadSpinor {
                reason: format!("vanishing norm {norm:.3e}"),
            });
        }
        Ok(Self { c0: c0 / norm, c1: c1 / norm })
    }

    /// Spinor pointing along the (α, β) direction.
    pub fn from_angles(alpha: f64, beta: f64) -> Self {
        let half = 0.5 * beta;
        Self {
            c0: Complex64::from_polar(half.cos(), -0.5 * alpha),
            c1: Complex64::from_polar(half.sin(), 0.5 * alpha),
        }
    }

    /// |0⟩.
    pub fn up() -> Self {
        Self { c0: Complex64::new(1.0, 0.0), c1: Complex64::new(0.0, 0.0) }
    }

    /// |1⟩.
    pub fn down() -> Self {
        Self { c0: Complex64::new(0.0, 0.0), c1: Complex64::new(1.0, 0.0) }
    }

    /// Angles (α, β) with α ∈ [0, 2π), β ∈ [0, π].
    pub fn angles(&self) -> (f64, f64) {
        let beta = 2.0 * self.c1.norm().atan2(self.c0.norm());
        if self.c1.norm() < 1e-300 || self.c0.norm() < 1e-300 {
            return (0.0, beta);
        }
        let alpha = (self.c1.arg() - self.c0.arg()).rem_euclid(TAU) + 0.0;
        (alpha, beta)
    }

    /// Stereographic image z = c1/c0 (∞ for |1⟩).
    pub fn point(&self) -> ExtPoint {
        if self.c0.norm() == 0.0 {
            ExtPoint::Infinity
        } else {
            ExtPoint::Finite(self.c1 / self.c0)
        }
    }

    /// Spinor of a point on the extended plane.
    pub fn from_point(p: ExtPoint) -> Self {
        match p {
            ExtPoint::Infinity => Self::down(),
            ExtPoint::Finite(z) => {
                if z.norm() == 0.0 {
                    Self::up()
                } else {
                    Self::from_angles(z.arg().rem_euclid(TAU), 2.0 * z.norm().atan())
                }
            }
        }
    }

    /// Components as a column vector.
    pub fn to_vector(&self) -> [Complex64; 2] {
        [self.c0, self.c1]
    }
}

/// A Möbius transformation in the spinor-action convention.
///
/// The projective class of a 2×2 matrix A acts on points by
/// z ↦ (A₁₀ + A₁₁z)/(A₀₀ + A₀₁z), which is exactly the point image of the
/// column action A·(c0, c1)ᵀ on spinors.
#[derive(Debug, Clone, PartialEq)]
pub struct Mobius {
    m: [[Complex64; 2]; 2],
}

impl Mobius {
    pub fn identity() -> Self {
        Self {
            m: [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            ],
        }
    }

    /// Wraps a matrix; fails when the matrix is (numerically) singular.
    pub fn from_matrix(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let scale = m
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(f64::MIN_POSITIVE);
        if det.norm() <= TOL.singular_det * scale * scale {
            return Err(Error::SingularOperation { det: det.norm() });
        }
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    /// Image of an extended point.
    pub fn apply(&self, p: ExtPoint) -> ExtPoint {
        let [[a00, a01], [a10, a11]] = self.m;
        let (num, den) = match p {
            ExtPoint::Finite(z) => (a10 + a11 * z, a00 + a01 * z),
            ExtPoint::Infinity => (a11, a01),
        };
        if den.norm() == 0.0 {
            ExtPoint::Infinity
        } else {
            ExtPoint::Finite(num / den)
        }
    }

    /// Image spinor A·(c0, c1)ᵀ, renormalized.
    pub fn apply_spinor(&self, sp: &Spinor) -> Result<Spinor> {
        let [[a00, a01], [a10, a11]] = self.m;
        Spinor::new(a00 * sp.c0 + a01 * sp.c1, a10 * sp.c0 + a11 * sp.c1)
    }

    /// Composition (self ∘ other): apply `other` first.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        let a = &self.m;
        let b = &other.m;
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mobius { m }
    }

    /// Projective inverse (adjugate matrix).
    pub fn inverse(&self) -> Mobius {
        let [[a, b], [c, d]] = self.m;
        Mobius { m: [[d, -b], [-c, a]] }
    }

    /// The unique Möbius map with src_i ↦ dst_i for two pairwise-distinct
    /// triples, built from the standard map onto (0, 1, ∞).
    ///
    /// The construction is verified: the maximum chordal error over the
    /// triple must come out below the configured bound.
    pub fn from_triples(src: [ExtPoint; 3], dst: [ExtPoint; 3]) -> Result<Mobius> {
        for triple in [&src, &dst] {
            let mut min_gap = f64::INFINITY;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    min_gap = min_gap.min(chordal_distance(triple[i], triple[j]));
                }
            }
            if min_gap <= TOL.mobius_triple {
                return Err(Error::DegenerateTriple { min_gap });
            }
        }
        let s = to_standard(src);
        let t = to_standard(dst);
        let map = t.inverse().compose(&s);
        let mut worst = 0.0f64;
        for k in 0..3 {
            worst = worst.max(chordal_distance(map.apply(src[k]), dst[k]));
        }
        if worst > TOL.mobius_residual {
            return Err(Error::DegenerateTriple { min_gap: worst });
        }
        Ok(map)
    }

    pub fn as_complex_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_rows(
            2,
            2,
            vec![self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]],
        )
        .expect("2×2 shape")
    }
}

/// Möbius map sending (z1, z2, z3) to (0, 1, ∞).
fn to_standard([z1, z2, z3]: [ExtPoint; 3]) -> Mobius {
    use ExtPoint::{Finite, Infinity};
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    // In the (az + b)/(cz + d) convention; the matrix layout below is
    // [[d, c], [b, a]] so that the action reads (m10 + m11 z)/(m00 + m01 z).
    let (a, b, c, d) = match (z1, z2, z3) {
        (Infinity, Finite(w2), Finite(w3)) => (zero, w2 - w3, one, -w3),
        (Finite(w1), Infinity, Finite(w3)) => (one, -w1, one, -w3),
        (Finite(w1), Finite(w2), Infinity) => (one, -w1, zero, w2 - w1),
        (Finite(w1), Finite(w2), Finite(w3)) => (w2 - w3, -w1 * (w2 - w3), w2 - w1, -w3 * (w2 - w1)),
        // Pairwise distinctness rules out two infinities.
        _ => unreachable!("degenerate triple slipped through the distinctness check"),
    };
    Mobius { m: [[d, c], [b, a]] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const OMEGA_RE: f64 = -0.5;
    const OMEGA_IM: f64 = 0.866_025_403_784_438_6;

    #[test]
    fn chordal_basics() {
        let zero = ExtPoint::finite(0.0, 0.0);
        assert_eq!(chordal_distance(zero, zero), 0.0);
        assert_eq!(chordal_distance(zero, ExtPoint::Infinity), 1.0);
        // d(1, ω) = |1 − ω| / 2 = √3/2
        let one = ExtPoint::finite(1.0, 0.0);
        let omega = ExtPoint::finite(OMEGA_RE, OMEGA_IM);
        assert!((chordal_distance(one, omega) - 3f64.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn chordal_triangle_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let mut pts = Vec::new();
            for _ in 0..3 {
                if rng.gen_bool(0.1) {
                    pts.push(ExtPoint::Infinity);
                } else {
                    pts.push(ExtPoint::finite(
                        rng.gen_range(-5.0..5.0),
                        rng.gen_range(-5.0..5.0),
                    ));
                }
            }
            let dab = chordal_distance(pts[0], pts[1]);
            let dbc = chordal_distance(pts[1], pts[2]);
            let dac = chordal_distance(pts[0], pts[2]);
            assert!(dac <= dab + dbc + 1e-12);
            assert!((dab - chordal_distance(pts[1], pts[0])).abs() < 1e-15);
        }
    }

    #[test]
    fn spinor_point_correspondence() {
        assert_eq!(Spinor::from_point(ExtPoint::finite(0.0, 0.0)).to_vector()[1].norm(), 0.0);
        assert_eq!(Spinor::from_point(ExtPoint::Infinity).to_vector()[0].norm(), 0.0);
        // z = 1 ↦ (|0⟩ + |1⟩)/√2
        let sp = Spinor::from_point(ExtPoint::finite(1.0, 0.0));
        assert!((sp.c0.norm() - 1.0 / 2f64.sqrt()).abs() < 1e-14);
        assert!((sp.c1 / sp.c0 - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn point_spinor_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            let p = if rng.gen_bool(0.05) {
                ExtPoint::Infinity
            } else {
                ExtPoint::finite(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0))
            };
            let back = Spinor::from_point(p).point();
            assert!(chordal_distance(p, back) < 1e-12);
        }
    }

    #[test]
    fn mobius_identity_and_swap() {
        let triple = [
            ExtPoint::finite(0.0, 0.0),
            ExtPoint::finite(1.0, 0.0),
            ExtPoint::Infinity,
        ];
        let id = Mobius::from_triples(triple, triple).unwrap();
        let z = ExtPoint::finite(0.3, -0.7);
        assert!(chordal_distance(id.apply(z), z) < 1e-12);

        // (0, 1, ∞) → (∞, 1, 0) is z ↦ 1/z.
        let swap = Mobius::from_triples(
            triple,
            [ExtPoint::Infinity, ExtPoint::finite(1.0, 0.0), ExtPoint::finite(0.0, 0.0)],
        )
        .unwrap();
        let img = swap.apply(ExtPoint::finite(2.0, 0.0));
        match img {
            ExtPoint::Finite(w) => assert!((w - Complex64::new(0.5, 0.0)).norm() < 1e-12),
            ExtPoint::Infinity => panic!("expected 1/2"),
        }
    }

    #[test]
    fn mobius_matches_ghz_eta_map() {
        // (0, 1, ∞) → (1, ω², ω) must be z ↦ (1 + ω²z)/(1 + ωz),
        // i.e. the matrix [[1, ω], [1, ω²]] projectively.
        let omega = Complex64::new(OMEGA_RE, OMEGA_IM);
        let omega2 = omega * omega;
        let map = Mobius::from_triples(
            [
                ExtPoint::finite(0.0, 0.0),
                ExtPoint::finite(1.0, 0.0),
                ExtPoint::Infinity,
            ],
            [
                ExtPoint::Finite(Complex64::new(1.0, 0.0)),
                ExtPoint::Finite(omega2),
                ExtPoint::Finite(omega),
            ],
        )
        .unwrap();
        let m = map.matrix();
        // Compare projectively against [[1, ω], [1, ω²]].
        let reference = [[Complex64::new(1.0, 0.0), omega], [Complex64::new(1.0, 0.0), omega2]];
        let scale = m[0][0] / reference[0][0];
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[i][j] - scale * reference[i][j]).norm() < 1e-10 * scale.norm());
            }
        }
    }

    #[test]
    fn mobius_agrees_with_spinor_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let m = [
                [
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                ],
                [
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                ],
            ];
            let Ok(map) = Mobius::from_matrix(m) else { continue };
            for _ in 0..10 {
                let sp = Spinor::from_angles(
                    rng.gen_range(0.0..TAU),
                    rng.gen_range(0.0..PI),
                );
                let direct = map.apply(sp.point());
                let via_spinor = map.apply_spinor(&sp).unwrap().point();
                assert!(chordal_distance(direct, via_spinor) < 1e-10);
            }
        }
    }

    #[test]
    fn degenerate_triple_rejected() {
        let p = ExtPoint::finite(0.5, 0.5);
        let err = Mobius::from_triples(
            [p, p, ExtPoint::Infinity],
            [
                ExtPoint::finite(0.0, 0.0),
                ExtPoint::finite(1.0, 0.0),
                ExtPoint::Infinity,
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegenerateTriple { .. }));
    }
}
