//! Polynomial root finding on the extended complex plane.
//!
//! Roots are taken as eigenvalues of the balanced companion matrix of the
//! monic deflated polynomial, computed by a shifted complex QR iteration on
//! the (already Hessenberg) companion form, then polished with a few Newton
//! steps. Leading coefficients below the relative threshold are stripped and
//! each stripped degree contributes one root at infinity, which is how a
//! Majorana polynomial of formal degree N keeps exactly N roots.

use num_complex::Complex64;

use crate::cmatrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::sphere::{compare_points, ExtPoint};
use crate::tol::Tolerances;

/// All `formal_degree` roots of Σ c_k z^k, as a multiset on C ∪ {∞}.
///
/// `coeffs` lists c_0..c_d with d ≤ formal_degree; missing high-order
/// coefficients count as zero. The result always has exactly
/// `formal_degree` entries, sorted by (β, α) with infinity last.
pub fn poly_roots(
    coeffs: &[Complex64],
    formal_degree: usize,
    tol: &Tolerances,
) -> Result<Vec<ExtPoint>> {
    if formal_degree < 1 {
        return Err(Error::BadParams {
            reason: "formal degree must be at least 1".into(),
        });
    }
    if coeffs.len() > formal_degree + 1 {
        return Err(Error::BadParams {
            reason: format!(
                "{} coefficients exceed formal degree {}",
                coeffs.len(),
                formal_degree
            ),
        });
    }
    let mut c = coeffs.to_vec();
    c.resize(formal_degree + 1, Complex64::new(0.0, 0.0));

    let max_c = c.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if max_c < f64::MIN_POSITIVE {
        return Err(Error::ZeroPolynomial);
    }
    let thresh = tol.leading_coeff * max_c;

    let eff = (0..=formal_degree)
        .rev()
        .find(|&k| c[k].norm() > thresh)
        .expect("max coefficient exceeds its own threshold");
    let low = (0..=eff).find(|&k| c[k].norm() > thresh).unwrap();

    let n_inf = formal_degree - eff;
    let n_zero = low;
    let work = &c[low..=eff];

    let mut dense = dense_roots(work)?;
    for root in &mut dense {
        *root = newton_polish(work, *root);
    }
    consolidate_multiple_roots(&mut dense, work);
    let mut finite = vec![Complex64::new(0.0, 0.0); n_zero];
    finite.extend(dense);

    let mut points: Vec<ExtPoint> = finite.into_iter().map(ExtPoint::Finite).collect();
    points.extend(std::iter::repeat_n(ExtPoint::Infinity, n_inf));
    points.sort_by(compare_points);
    Ok(points)
}

/// Normalized residual |P(r)| / (max|c_k| · max(1, |r|)^deg) of a finite root.
pub fn poly_residual(coeffs: &[Complex64], root: Complex64) -> f64 {
    let max_c = coeffs.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if max_c == 0.0 {
        return 0.0;
    }
    let deg = coeffs
        .iter()
        .rposition(|z| z.norm() > 0.0)
        .unwrap_or(0);
    let (value, _) = horner(coeffs, root);
    value.norm() / (max_c * root.norm().max(1.0).powi(deg as i32))
}

/// Roots of a dense polynomial with nonzero first and last coefficient.
fn dense_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = c.len() - 1;
    match m {
        0 => Ok(Vec::new()),
        1 => Ok(vec![-c[0] / c[1]]),
        2 => Ok(quadratic_roots(c[2], c[1], c[0])),
        _ => {
            let lead = c[m];
            let monic: Vec<Complex64> = c[..m].iter().map(|&z| z / lead).collect();
            let mut h = companion(&monic);
            balance(&mut h);
            hessenberg_eigenvalues(&mut h)
        }
    }
}

/// Numerically stable roots of a z² + b z + c with a ≠ 0 and c ≠ 0.
fn quadratic_roots(a: Complex64, b: Complex64, c: Complex64) -> Vec<Complex64> {
    let disc = (b * b - 4.0 * a * c).sqrt();
    // Pick the sign that avoids cancellation in b ± disc.
    let s = if (b.conj() * disc).re >= 0.0 { disc } else { -disc };
    let q = -0.5 * (b + s);
    if q.norm() == 0.0 {
        // b = 0 and c = 0; excluded by the trailing-coefficient strip.
        return vec![Complex64::new(0.0, 0.0); 2];
    }
    vec![q / a, c / q]
}

/// Companion matrix of the monic polynomial z^m + Σ a_k z^k.
fn companion(a: &[Complex64]) -> ComplexMatrix {
    let m = a.len();
    let mut h = ComplexMatrix::zeros(m, m);
    for i in 1..m {
        h[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..m {
        h[(i, m - 1)] = -a[i];
    }
    h
}

/// Osborne balancing by powers of two (a diagonal similarity, so the
/// eigenvalues and the Hessenberg zero pattern are preserved).
fn balance(h: &mut ComplexMatrix) {
    let n = h.rows();
    const RADIX: f64 = 2.0;
    for _ in 0..32 {
        let mut done = true;
        for i in 0..n {
            let mut r: f64 = (0..n).filter(|&j| j != i).map(|j| h[(i, j)].norm()).sum();
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| h[(j, i)].norm()).sum();
            if r == 0.0 || c == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            while c < r / RADIX {
                c *= RADIX;
                r /= RADIX;
                f *= RADIX;
            }
            while c >= r * RADIX {
                c /= RADIX;
                r *= RADIX;
                f /= RADIX;
            }
            if f != 1.0 && (c + r) < 0.95 * s {
                done = false;
                for j in 0..n {
                    h[(i, j)] /= f;
                }
                for j in 0..n {
                    h[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by shifted complex QR.
fn hessenberg_eigenvalues(h: &mut ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let hnorm = h.frobenius().max(f64::MIN_POSITIVE);
    let eps = 2.0 * f64::EPSILON;
    let mut iters = 0usize;
    let mut stall = 0usize;
    let budget = 60 * n;

    'outer: loop {
        // Deflate converged trailing eigenvalues.
        loop {
            if hi == 0 {
                eigs.push(h[(0, 0)]);
                break 'outer;
            }
            let mut t = eps * (h[(hi - 1, hi - 1)].norm() + h[(hi, hi)].norm());
            if t == 0.0 {
                t = eps * hnorm;
            }
            if h[(hi, hi - 1)].norm() <= t {
                eigs.push(h[(hi, hi)]);
                hi -= 1;
                stall = 0;
            } else {
                break;
            }
        }

        // Active block [lo, hi].
        let mut lo = hi;
        while lo > 0 {
            let mut t = eps * (h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm());
            if t == 0.0 {
                t = eps * hnorm;
            }
            if h[(lo, lo - 1)].norm() <= t {
                break;
            }
            lo -= 1;
        }

        iters += 1;
        stall += 1;
        if iters > budget {
            return Err(Error::NoConvergence { residual: h[(hi, hi - 1)].norm() });
        }

        let mu = if stall.is_multiple_of(12) {
            // Exceptional shift to break symmetric stalls.
            let kick = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + Complex64::new(1.5 * kick, 0.5 * kick)
        } else {
            wilkinson_shift(h, hi)
        };

        qr_step(h, lo, hi, mu);
    }
    Ok(eigs)
}

/// Eigenvalue of the trailing 2×2 block closest to the corner entry.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let x = h[(hi - 1, hi - 1)];
    let y = h[(hi - 1, hi)];
    let z = h[(hi, hi - 1)];
    let w = h[(hi, hi)];
    let half = 0.5 * (x + w);
    let disc = (0.25 * (x - w) * (x - w) + y * z).sqrt();
    let l1 = half + disc;
    let l2 = half - disc;
    if (l1 - w).norm() <= (l2 - w).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR sweep on the decoupled block [lo, hi].
fn qr_step(h: &mut ComplexMatrix, lo: usize, hi: usize, mu: Complex64) {
    let nb = hi - lo + 1;
    for k in lo..=hi {
        h[(k, k)] -= mu;
    }
    // Left pass: Givens rotations zero the subdiagonal of (H − μI).
    let mut rot = Vec::with_capacity(nb - 1);
    for k in lo..hi {
        let a = h[(k, k)];
        let b = h[(k + 1, k)];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (u, v) = if r == 0.0 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (a / r, b / r)
        };
        rot.push((u, v));
        for j in k..=hi {
            let top = h[(k, j)];
            let bot = h[(k + 1, j)];
            h[(k, j)] = u.conj() * top + v.conj() * bot;
            h[(k + 1, j)] = -v * top + u * bot;
        }
    }

    // Right pass: H ← R Q + μI, which stays upper Hessenberg.
    for (k, &(u, v)) in rot.iter().enumerate() {
        let col = lo + k;
        let last = (col + 2).min(hi);
        for i in lo..=last {
            let left = h[(i, col)];
            let right = h[(i, col + 1)];
            h[(i, col)] = left * u + right * v;
            h[(i, col + 1)] = -left * v.conj() + right * u.conj();
        }
    }
    for k in lo..=hi {
        h[(k, k)] += mu;
    }
}

/// Merges numerically split multiple roots back into exact multiplicities.
///
/// An exact m-fold root computed through the companion matrix scatters into
/// a ring of radius ~ε^{1/m}, which would break degeneracy counting much
/// later. Candidate clusters (coarse chordal grouping) are re-centered by
/// Newton on P^{(m−1)} and merged only when every derivative P^{(j)},
/// j < m, vanishes at the center relative to its own coefficient scale —
/// genuinely distinct roots fail that certificate and are left alone.
fn consolidate_multiple_roots(roots: &mut [Complex64], c: &[Complex64]) {
    let n = roots.len();
    if n < 2 {
        return;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let chordal = |a: Complex64, b: Complex64| {
        (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
    };
    for i in 0..n {
        for j in (i + 1)..n {
            if chordal(roots[i], roots[j]) <= 0.05 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut clusters: std::collections::HashMap<usize, Vec<usize>> =
        std::collections::HashMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        clusters.entry(root).or_default().push(i);
    }

    for members in clusters.values() {
        let m = members.len();
        if m < 2 {
            continue;
        }
        let mut center = members
            .iter()
            .map(|&i| roots[i])
            .fold(Complex64::new(0.0, 0.0), |acc, z| acc + z)
            / m as f64;
        // The (m−1)-th derivative has a simple root at an m-fold root.
        let dm1 = derivative_coeffs(c, m - 1);
        let dm = derivative_coeffs(c, m);
        for _ in 0..30 {
            let (num, _) = horner(&dm1, center);
            let (den, _) = horner(&dm, center);
            if den.norm() < 1e-300 {
                break;
            }
            let step = num / den;
            center -= step;
            if step.norm() <= 1e-16 * (1.0 + center.norm()) {
                break;
            }
        }
        let certified = (0..m).all(|j| {
            let dj = derivative_coeffs(c, j);
            let (value, _) = horner(&dj, center);
            let scale: f64 = dj
                .iter()
                .enumerate()
                .map(|(k, ck)| ck.norm() * center.norm().max(1.0).powi(k as i32))
                .sum();
            value.norm() <= 1e-8 * scale.max(f64::MIN_POSITIVE)
        });
        if certified {
            for &i in members {
                roots[i] = center;
            }
        }
    }
}

/// Coefficients of the j-th derivative of Σ c_k z^k.
fn derivative_coeffs(c: &[Complex64], j: usize) -> Vec<Complex64> {
    let mut cur = c.to_vec();
    for _ in 0..j {
        if cur.len() <= 1 {
            return vec![Complex64::new(0.0, 0.0)];
        }
        cur = cur
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, ck)| ck * k as f64)
            .collect();
    }
    cur
}

/// Value and derivative of Σ c_k z^k at z (Horner form).
fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = c[c.len() - 1];
    let mut dp = Complex64::new(0.0, 0.0);
    for k in (0..c.len() - 1).rev() {
        dp = dp * z + p;
        p = p * z + c[k];
    }
    (p, dp)
}

/// A few guarded Newton steps; keeps the best iterate by residual.
fn newton_polish(c: &[Complex64], mut root: Complex64) -> Complex64 {
    let (mut best_val, _) = horner(c, root);
    let mut best = root;
    for _ in 0..8 {
        let (p, dp) = horner(c, root);
        if p.norm() == 0.0 || dp.norm() < 1e-300 {
            break;
        }
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        root -= step;
        let (p_new, _) = horner(c, root);
        if p_new.norm() < best_val.norm() {
            best_val = p_new;
            best = root;
        } else {
            break;
        }
        if step.norm() <= 1e-16 * (1.0 + root.norm()) {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::chordal_distance;
    use crate::tol::TOL;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_finite(points: &[ExtPoint]) -> Vec<Complex64> {
        points
            .iter()
            .filter_map(|p| match p {
                ExtPoint::Finite(z) => Some(*z),
                ExtPoint::Infinity => None,
            })
            .collect()
    }

    #[test]
    fn ghz_polynomial_cube_roots() {
        // (1/√2)(1 − z³)
        let s = 1.0 / 2f64.sqrt();
        let roots = poly_roots(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-s, 0.0)], 3, &TOL).unwrap();
        assert_eq!(roots.len(), 3);
        let expect = [
            ExtPoint::finite(1.0, 0.0),
            ExtPoint::finite(-0.5, 0.75f64.sqrt()),
            ExtPoint::finite(-0.5, -0.75f64.sqrt()),
        ];
        for e in expect {
            assert!(
                roots.iter().any(|r| chordal_distance(*r, e) < 1e-10),
                "missing cube root {e:?}"
            );
        }
    }

    #[test]
    fn eta_polynomial_zero_one_infinity() {
        // √(3/2)(z² − z)
        let s = (1.5f64).sqrt();
        let roots = poly_roots(&[c(0.0, 0.0), c(-s, 0.0), c(s, 0.0)], 3, &TOL).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(matches!(roots[0], ExtPoint::Finite(z) if z.norm() == 0.0));
        assert!(matches!(roots[1], ExtPoint::Finite(z) if (z - c(1.0, 0.0)).norm() < 1e-12));
        assert!(roots[2].is_infinity());
    }

    #[test]
    fn w_polynomial_double_zero_and_infinity() {
        // √3 z² with formal degree 3
        let roots = poly_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(3f64.sqrt(), 0.0)], 3, &TOL).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(matches!(roots[0], ExtPoint::Finite(z) if z.norm() == 0.0));
        assert!(matches!(roots[1], ExtPoint::Finite(z) if z.norm() == 0.0));
        assert!(roots[2].is_infinity());
    }

    #[test]
    fn zero_polynomial_rejected() {
        let err = poly_roots(&[c(0.0, 0.0), c(0.0, 0.0)], 2, &TOL).unwrap_err();
        assert!(matches!(err, Error::ZeroPolynomial));
    }

    #[test]
    fn multiplicity_equals_formal_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let deg = rng.gen_range(1..=12usize);
            let n_coeff = rng.gen_range(1..=deg + 1);
            let coeffs: Vec<Complex64> = (0..n_coeff)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            if coeffs.iter().all(|z| z.norm() < 1e-3) {
                continue;
            }
            let roots = poly_roots(&coeffs, deg, &TOL).unwrap();
            assert_eq!(roots.len(), deg);
            let mut full = coeffs.clone();
            full.resize(deg + 1, c(0.0, 0.0));
            for z in sorted_finite(&roots) {
                assert!(
                    poly_residual(&full, z) < 1e-8,
                    "residual {} too large for root {z}",
                    poly_residual(&full, z)
                );
            }
        }
    }

    #[test]
    fn known_factored_roots() {
        // (z − 2)(z + 1)(z − i) = z³ + (−1 − i)z² + (−2 + i) z + 2i
        let coeffs = [c(0.0, 2.0), c(-2.0, 1.0), c(-1.0, -1.0), c(1.0, 0.0)];
        let roots = poly_roots(&coeffs, 3, &TOL).unwrap();
        for e in [c(2.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)] {
            assert!(
                sorted_finite(&roots).iter().any(|z| (z - e).norm() < 1e-10),
                "missing root {e}"
            );
        }
    }

    #[test]
    fn high_multiplicity_cluster() {
        // (z − 1)⁴ = z⁴ − 4z³ + 6z² − 4z + 1: the cluster may split at the
        // √ε scale but every reported root must stay residual-bounded.
        let coeffs = [c(1.0, 0.0), c(-4.0, 0.0), c(6.0, 0.0), c(-4.0, 0.0), c(1.0, 0.0)];
        let roots = poly_roots(&coeffs, 4, &TOL).unwrap();
        assert_eq!(roots.len(), 4);
        for p in &roots {
            let ExtPoint::Finite(z) = p else { panic!("unexpected infinity") };
            assert!((z - c(1.0, 0.0)).norm() < 1e-3);
            assert!(poly_residual(&coeffs, *z) < 1e-8);
        }
    }

    #[test]
    fn wilkinson_degree_12() {
        // Π (z − k) for k = 1..12; root residuals stay within the contract.
        let mut coeffs = vec![c(1.0, 0.0)];
        for k in 1..=12 {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (i, &a) in coeffs.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * c(k as f64, 0.0);
            }
            coeffs = next;
        }
        let roots = poly_roots(&coeffs, 12, &TOL).unwrap();
        for k in 1..=12 {
            let target = c(k as f64, 0.0);
            let nearest = sorted_finite(&roots)
                .iter()
                .map(|z| (z - target).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-5, "root {k} off by {nearest}");
        }
        for z in sorted_finite(&roots) {
            assert!(poly_residual(&coeffs, z) < 1e-8);
        }
    }
}
