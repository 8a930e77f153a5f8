//! Dense symmetric linear algebra: a small row-major matrix type, an
//! EISPACK-style symmetric eigendecomposition (Householder reduction to
//! tridiagonal form followed by implicit-shift QL iteration), and the
//! positive-semidefinite matrix square root built on it.

use alloc::vec;
use alloc::vec::Vec;

use crate::fmath::{hypot, sqrt};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(rows * cols, data.len());
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * out.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                worst = worst.max((self.get(r, c) - self.get(c, r)).abs());
            }
        }
        worst
    }

    /// Adds `eps` to every diagonal entry.
    pub fn add_diagonal(&mut self, eps: f64) {
        for i in 0..self.rows.min(self.cols) {
            let v = self.get(i, i);
            self.set(i, i, v + eps);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinalgError {
    NotSquare,
    /// Off-diagonal mismatch beyond the caller's tolerance.
    Asymmetric,
    /// QL iteration failed to converge (pathological input).
    NoConvergence,
}

impl core::fmt::Display for LinalgError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::NotSquare => write!(f, "matrix is not square"),
            Self::Asymmetric => write!(f, "matrix is not symmetric"),
            Self::NoConvergence => write!(f, "eigenvalue iteration did not converge"),
        }
    }
}

impl core::error::Error for LinalgError {}

/// Eigendecomposition of a symmetric matrix.
///
/// Returns eigenvalues in ascending order and the orthonormal
/// eigenvectors as matching columns, so `m = Q diag(w) Q^T`.
pub fn sym_eigen(m: &Matrix) -> Result<(Vec<f64>, Matrix), LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::NotSquare);
    }
    let n = m.rows;
    // Work on the symmetrized average so tiny float asymmetries from the
    // caller cannot bias the reduction.
    let mut z = Matrix::from_fn(n, n, |r, c| 0.5 * (m.get(r, c) + m.get(c, r)));
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    tred2(&mut z, &mut d, &mut e);
    tql2(&mut z, &mut d, &mut e)?;

    // Sort ascending, carrying eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| z.get(r, order[c]));
    Ok((values, vectors))
}

/// Householder reduction of a real symmetric matrix to tridiagonal form,
/// accumulating the orthogonal transformation in place (EISPACK tred2).
#[allow(clippy::needless_range_loop)] // index form follows the reference algorithm
fn tred2(z: &mut Matrix, d: &mut [f64], e: &mut [f64]) {
    let n = z.rows;
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0f64;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| z.get(i, k).abs()).sum();
            if scale == 0.0 {
                e[i] = z.get(i, l);
            } else {
                for k in 0..=l {
                    let v = z.get(i, k) / scale;
                    z.set(i, k, v);
                    h += v * v;
                }
                let f = z.get(i, l);
                let g = if f >= 0.0 { -sqrt(h) } else { sqrt(h) };
                e[i] = scale * g;
                h -= f * g;
                z.set(i, l, f - g);
                let mut f_acc = 0.0f64;
                for j in 0..=l {
                    z.set(j, i, z.get(i, j) / h);
                    let mut g_acc = 0.0f64;
                    for k in 0..=j {
                        g_acc += z.get(j, k) * z.get(i, k);
                    }
                    for k in (j + 1)..=l {
                        g_acc += z.get(k, j) * z.get(i, k);
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * z.get(i, j);
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = z.get(i, j);
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        let v = z.get(j, k) - f * e[k] - g * z.get(i, k);
                        z.set(j, k, v);
                    }
                }
            }
        } else {
            e[i] = z.get(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0f64;
                for k in 0..i {
                    g += z.get(i, k) * z.get(k, j);
                }
                for k in 0..i {
                    let v = z.get(k, j) - g * z.get(k, i);
                    z.set(k, j, v);
                }
            }
        }
        d[i] = z.get(i, i);
        z.set(i, i, 1.0);
        for j in 0..i {
            z.set(j, i, 0.0);
            z.set(i, j, 0.0);
        }
    }
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix,
/// accumulating eigenvectors into `z` (EISPACK tql2).
fn tql2(z: &mut Matrix, d: &mut [f64], e: &mut [f64]) -> Result<(), LinalgError> {
    let n = z.rows;
    if n == 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(LinalgError::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(if g == 0.0 { 1.0 } else { g }));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let t = (d[i] - g) * s + 2.0 * c * b;
                p = s * t;
                d[i + 1] = g + p;
                g = c * t - b;
                for k in 0..n {
                    let f = z.get(k, i + 1);
                    z.set(k, i + 1, s * z.get(k, i) + c * f);
                    z.set(k, i, c * z.get(k, i) - s * f);
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Square root of a symmetric positive-semidefinite matrix.
///
/// Eigendecomposes, clamps negative eigenvalues to zero, and rebuilds
/// `Q sqrt(L) Q^T`. Inputs asymmetric beyond 1e-6 are rejected.
pub fn psd_sqrt(m: &Matrix) -> Result<Matrix, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::NotSquare);
    }
    if m.max_asymmetry() > 1e-6 {
        return Err(LinalgError::Asymmetric);
    }
    let n = m.rows;
    let (values, q) = sym_eigen(m)?;
    let roots: Vec<f64> = values.iter().map(|&w| sqrt(w.max(0.0))).collect();
    let mut out = Matrix::zeros(n, n);
    for r in 0..n {
        for c in r..n {
            let mut acc = 0.0f64;
            for (k, root) in roots.iter().enumerate() {
                acc += q.get(r, k) * root * q.get(c, k);
            }
            out.set(r, c, acc);
            out.set(c, r, acc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn eigen_residual(m: &Matrix, values: &[f64], q: &Matrix) -> f64 {
        let n = m.rows();
        let mut worst = 0.0f64;
        for c in 0..n {
            for r in 0..n {
                let mut av = 0.0;
                for k in 0..n {
                    av += m.get(r, k) * q.get(k, c);
                }
                worst = worst.max((av - values[c] * q.get(r, c)).abs());
            }
        }
        worst
    }

    fn random_symmetric(n: usize, rng: &mut SplitMix64) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in r..n {
                let v = rng.next_range(-2.0, 2.0);
                m.set(r, c, v);
                m.set(c, r, v);
            }
        }
        m
    }

    #[test]
    fn diagonal_matrix_eigenvalues() {
        let mut m = Matrix::zeros(3, 3);
        m.set(0, 0, 4.0);
        m.set(1, 1, 1.0);
        m.set(2, 2, 9.0);
        let (w, q) = sym_eigen(&m).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-12);
        assert!((w[1] - 4.0).abs() < 1e-12);
        assert!((w[2] - 9.0).abs() < 1e-12);
        assert!(eigen_residual(&m, &w, &q) < 1e-12);
    }

    #[test]
    fn two_by_two_analytic() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let m = Matrix::from_rows(2, 2, alloc::vec![2.0, 1.0, 1.0, 2.0]);
        let (w, _) = sym_eigen(&m).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-12);
        assert!((w[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn random_matrices_decompose() {
        let mut rng = SplitMix64::new(99);
        for n in [1usize, 2, 3, 5, 8, 13, 25, 40] {
            let m = random_symmetric(n, &mut rng);
            let (w, q) = sym_eigen(&m).unwrap();
            assert!(
                eigen_residual(&m, &w, &q) < 1e-9,
                "residual too large at n={n}"
            );
            // Orthonormal columns.
            for a in 0..n {
                for b in 0..n {
                    let dot: f64 = (0..n).map(|k| q.get(k, a) * q.get(k, b)).sum();
                    let expect = if a == b { 1.0 } else { 0.0 };
                    assert!((dot - expect).abs() < 1e-10, "Q'Q at ({a},{b}) = {dot}");
                }
            }
            // Eigenvalues ascending.
            for i in 1..n {
                assert!(w[i] >= w[i - 1]);
            }
        }
    }

    #[test]
    fn psd_sqrt_identity_and_diag() {
        let id = Matrix::identity(4);
        let root = psd_sqrt(&id).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r == c { 1.0 } else { 0.0 };
                assert!((root.get(r, c) - expect).abs() < 1e-12);
            }
        }
        let mut d = Matrix::zeros(2, 2);
        d.set(0, 0, 4.0);
        d.set(1, 1, 9.0);
        let root = psd_sqrt(&d).unwrap();
        assert!((root.get(0, 0) - 2.0).abs() < 1e-12);
        assert!((root.get(1, 1) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let mut rng = SplitMix64::new(5);
        for n in [2usize, 3, 6, 12] {
            // Build a PSD matrix as B B^T.
            let b = Matrix::from_fn(n, n, |_, _| rng.next_range(-1.0, 1.0));
            let m = b.matmul(&b.transpose());
            let root = psd_sqrt(&m).unwrap();
            let square = root.matmul(&root);
            let mut frob = 0.0f64;
            for r in 0..n {
                for c in 0..n {
                    frob += (square.get(r, c) - m.get(r, c)).powi(2);
                }
            }
            assert!(sqrt(frob) < 1e-8, "frobenius error {}", sqrt(frob));
        }
    }

    #[test]
    fn psd_sqrt_output_symmetric_psd() {
        let mut rng = SplitMix64::new(17);
        let b = Matrix::from_fn(5, 5, |_, _| rng.next_range(-1.0, 1.0));
        let m = b.matmul(&b.transpose());
        let root = psd_sqrt(&m).unwrap();
        assert!(root.max_asymmetry() < 1e-9);
        let (w, _) = sym_eigen(&root).unwrap();
        assert!(w[0] > -1e-9, "min eigenvalue {}", w[0]);
    }

    #[test]
    fn asymmetric_rejected() {
        let m = Matrix::from_rows(2, 2, alloc::vec![1.0, 0.5, 0.0, 1.0]);
        assert_eq!(psd_sqrt(&m), Err(LinalgError::Asymmetric));
    }

    #[test]
    fn clamps_negative_eigenvalues() {
        // -I has eigenvalues -1; the clamped root is the zero matrix.
        let mut m = Matrix::identity(3);
        for i in 0..3 {
            m.set(i, i, -1.0);
        }
        let root = psd_sqrt(&m).unwrap();
        for v in root.data() {
            assert_eq!(*v, 0.0);
        }
    }
}
