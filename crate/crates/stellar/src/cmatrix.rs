//! Dense complex matrices and vectors sized for small quantum systems.
//!
//! Everything here is plain row-major storage over [`Complex64`] with
//! value semantics: operations return new matrices, nothing mutates shared
//! state. The eigensolver is a cyclic Jacobi iteration on complex Hermitian
//! matrices, which converges unconditionally and is bit-stable across
//! platforms at the sizes this crate cares about (≤ 8×8 operators, plus the
//! somewhat larger real symmetric systems produced by the marginal module).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::Tolerances;

/// Complex column vector.
pub type CVector = Vec<Complex64>;

/// Inner product ⟨a|b⟩ = Σ conj(a_i) b_i.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from a row-major entry list.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadParams {
                reason: format!(
                    "entry count {} does not match {}×{}",
                    entries.len(),
                    rows,
                    cols
                ),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a diagonal matrix from real values.
    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Rank-1 projector |v⟩⟨v|.
    pub fn outer(v: &[Complex64], w: &[Complex64]) -> Self {
        let mut m = Self::zeros(v.len(), w.len());
        for i in 0..v.len() {
            for j in 0..w.len() {
                m[(i, j)] = v[i] * w[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Raw row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|c| c.conj()).collect(),
        }
    }

    /// Matrix product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn matvec(&self, v: &[Complex64]) -> CVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matvec");
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|c| c * s).collect(),
        }
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Max entrywise deviation from the conjugate transpose.
    pub fn hermitian_residual(&self) -> f64 {
        assert!(self.is_square());
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Replaces the matrix with its Hermitian part (M + M†)/2.
    pub fn hermitian_part(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in i..self.cols {
                let avg = 0.5 * (self[(i, j)] + self[(j, i)].conj());
                m[(i, j)] = avg;
                m[(j, i)] = avg.conj();
            }
            m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        }
        m
    }

    /// True if every entry is finite.
    pub fn all_finite(&self) -> bool {
        self.entries.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> CVector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// 2×2 determinant (panics for other shapes).
    pub fn det2(&self) -> Complex64 {
        assert_eq!((self.rows, self.cols), (2, 2));
        self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)]
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Kronecker product of a nonempty list of factors.
///
/// `kron(&[a, b])[(i1*rb + i2, j1*cb + j2)] = a[(i1,j1)] * b[(i2,j2)]`, so
/// the first factor is the most significant index block.
pub fn kron(factors: &[ComplexMatrix]) -> ComplexMatrix {
    assert!(!factors.is_empty(), "kron of an empty factor list");
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        let (ra, ca) = (acc.rows(), acc.cols());
        let (rb, cb) = (f.rows(), f.cols());
        let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
        for i1 in 0..ra {
            for j1 in 0..ca {
                let a = acc[(i1, j1)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for i2 in 0..rb {
                    for j2 in 0..cb {
                        out[(i1 * rb + i2, j1 * cb + j2)] = a * f[(i2, j2)];
                    }
                }
            }
        }
        acc = out;
    }
    acc
}

/// Applies `op` on every qubit of an n-qubit state vector, i.e. op⊗…⊗op · v.
pub fn apply_kron_power(op: &ComplexMatrix, n: usize, v: &[Complex64]) -> CVector {
    assert_eq!((op.rows(), op.cols()), (2, 2));
    assert_eq!(v.len(), 1 << n);
    let mut cur = v.to_vec();
    // Apply the single-qubit factor to each tensor slot in turn.
    for q in 0..n {
        let stride = 1 << (n - 1 - q);
        let mut next = vec![Complex64::new(0.0, 0.0); cur.len()];
        for (idx, slot) in next.iter_mut().enumerate() {
            let bit = (idx / stride) % 2;
            let base = idx - bit * stride;
            *slot = op[(bit, 0)] * cur[base] + op[(bit, 1)] * cur[base + stride];
        }
        cur = next;
    }
    cur
}

/// Full eigensystem of a complex Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvectors as columns of a unitary matrix, so that `H v_i = λ_i v_i`.
pub fn hermitian_eigensystem(
    h: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !h.is_square() {
        return Err(Error::BadParams {
            reason: format!("eigensystem of a {}×{} matrix", h.rows(), h.cols()),
        });
    }
    let residual = h.hermitian_residual();
    let scale = h.max_abs().max(1.0);
    if residual > tol.hermitian_input * scale.max(1.0) {
        return Err(Error::NonHermitianInput { residual });
    }

    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    if n == 1 {
        return Ok((vec![a[(0, 0)].re], v));
    }

    let norm = a.frobenius().max(f64::MIN_POSITIVE);
    let target = 1e-14 * norm;
    let max_sweeps = 100;
    let mut converged = false;

    for _ in 0..max_sweeps {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[(i, j)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let m = apq.norm();
                if m <= 1e-300 {
                    continue;
                }
                // Factor the phase out of a_pq, then solve the remaining
                // real 2×2 rotation exactly as in the symmetric Jacobi step.
                let phase = apq / m;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * m);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = diag(1, conj(phase)) · [[c, s], [−s, c]]
                let u00 = Complex64::new(c, 0.0);
                let u01 = Complex64::new(s, 0.0);
                let u10 = -s * phase.conj();
                let u11 = c * phase.conj();

                // A ← U† A U on rows/columns p and q.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * u00 + aiq * u10;
                    a[(i, q)] = aip * u01 + aiq * u11;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = u00.conj() * apj + u10.conj() * aqj;
                    a[(q, j)] = u01.conj() * apj + u11.conj() * aqj;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * u00 + viq * u10;
                    v[(i, q)] = vip * u01 + viq * u11;
                }
            }
        }
    }

    if !converged {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[(i, j)].norm_sqr();
            }
        }
        let off = (2.0 * off).sqrt();
        if off > tol.eigen_residual * norm {
            return Err(Error::NoConvergence { residual: off });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eig: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| eig[i].total_cmp(&eig[j]));

    let values: Vec<f64> = order.iter().map(|&i| eig[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, new_col)] = v[(i, old_col)];
        }
    }
    Ok((values, vectors))
}

/// Orthonormal basis of the nullspace of a real `rows × cols` matrix.
///
/// Works on the symmetric dilation [[0, A], [Aᵀ, 0]], whose spectrum is
/// ±(singular values) plus exact zeros — so small singular values keep
/// absolute accuracy, unlike the squared spectrum of AᵀA. Singular values
/// at or below `rel_cutoff · σ_max` count as zero.
pub fn real_nullspace(
    a: &[Vec<f64>],
    cols: usize,
    rel_cutoff: f64,
    tol: &Tolerances,
) -> Result<Vec<Vec<f64>>> {
    let rows = a.len();
    let n = rows + cols;
    let mut dilation = ComplexMatrix::zeros(n, n);
    for (i, row) in a.iter().enumerate() {
        debug_assert_eq!(row.len(), cols);
        for (j, &v) in row.iter().enumerate() {
            dilation[(i, rows + j)] = Complex64::new(v, 0.0);
            dilation[(rows + j, i)] = Complex64::new(v, 0.0);
        }
    }
    let (vals, vecs) = hermitian_eigensystem(&dilation, tol)?;
    let sigma_max = vals.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let cutoff = rel_cutoff * sigma_max.max(f64::MIN_POSITIVE);

    // The kernel of the dilation is null(Aᵀ) ⊕ null(A); the second (column)
    // components of its eigenvectors span null(A). Orthonormalize them,
    // re-projecting twice for stability, and keep the independent ones.
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for (k, &lam) in vals.iter().enumerate() {
        if lam.abs() > cutoff {
            continue;
        }
        let col = vecs.column(k);
        let mut v: Vec<f64> = (0..cols).map(|j| col[rows + j].re).collect();
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= dot * bi;
                }
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for x in &mut v {
                *x /= norm;
            }
            basis.push(v);
        }
    }
    Ok(basis)
}

/// Hermitian matrix function f(H) = V f(Λ) V† from the Jacobi eigensystem.
pub fn hermitian_function(
    h: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let (vals, vecs) = hermitian_eigensystem(h, tol)?;
    let n = h.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in vals.iter().enumerate() {
        let fl = f(lambda);
        if fl == 0.0 {
            continue;
        }
        let col = vecs.column(k);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += Complex64::new(fl, 0.0) * col[i] * col[j].conj();
            }
        }
    }
    Ok(out)
}
