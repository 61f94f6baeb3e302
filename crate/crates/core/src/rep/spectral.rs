use nalgebra::{DMatrix, SymmetricEigen, SVD};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::SparseMatrix;
use crate::error::{IsgError, Result};

/// Largest dimension handled by the dense eigensolver.
pub const DENSE_LIMIT: usize = 2000;

const HERMITIAN_TOL: f64 = 1e-12;

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eig(m: &SparseMatrix<Complex64>) -> Result<f64> {
    min_eig_with(m, DENSE_LIMIT)
}

/// As [`min_eig`], switching to Lanczos above `dense_limit`.
pub fn min_eig_with(m: &SparseMatrix<Complex64>, dense_limit: usize) -> Result<f64> {
    if let Some((row, col)) = m.hermitian_defect(HERMITIAN_TOL) {
        return Err(IsgError::NotHermitian { row, col });
    }
    if m.dim() == 0 {
        return Ok(0.0);
    }
    if m.dim() <= dense_limit {
        let eig = SymmetricEigen::new(m.to_dense());
        Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
    } else {
        Ok(lanczos_min(m, 1e-11))
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Lanczos with full reorthogonalization from a seeded random start.
fn lanczos_min(m: &SparseMatrix<Complex64>, tol: f64) -> f64 {
    let n = m.dim();
    let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); n];
    for (&(r, c), v) in m.entries() {
        rows[r].push((c, *v));
    }
    let apply = |x: &[Complex64]| -> Vec<Complex64> {
        rows.iter().map(|row| row.iter().map(|&(c, v)| v * x[c]).sum()).collect()
    };

    let mut rng = ChaCha8Rng::seed_from_u64(0x1a2c);
    let mut v: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);

    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let (mut alphas, mut betas) = (Vec::new(), Vec::new());
    let mut ritz = f64::INFINITY;
    for j in 0..n {
        let mut w = apply(&v);
        let alpha = dot(&v, &w).re;
        basis.push(v.clone());
        alphas.push(alpha);
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let beta = norm(&w);
        let k = alphas.len();
        let last = beta < 1e-14 || j + 1 == n;
        if k % 8 != 0 && !last {
            betas.push(beta);
            v = w.iter().map(|x| x / beta).collect();
            continue;
        }
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alphas[i];
            if i + 1 < k {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (idx, &theta) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty");
        ritz = theta;
        let residual = beta * eig.eigenvectors[(k - 1, idx)].abs();
        if residual < tol || last {
            break;
        }
        betas.push(beta);
        v = w.iter().map(|x| x / beta).collect();
    }
    ritz
}

/// Evidence that an operator is not positive semidefinite.
#[derive(Debug, Clone, Serialize)]
pub struct PsdCertificate {
    pub claim: String,
    pub value: f64,
    pub tolerance: f64,
    pub basis_size: usize,
    pub refuted: bool,
}

/// Refutes positivity when the smallest eigenvalue lies below `-1e-9·dim`.
pub fn psd_refute(m: &SparseMatrix<Complex64>) -> Result<PsdCertificate> {
    let value = min_eig(m)?;
    let tolerance = 1e-9 * m.dim() as f64;
    let refuted = value < -tolerance;
    let claim = if refuted { "not positive" } else { "no negative eigenvalue beyond tolerance" };
    Ok(PsdCertificate { claim: claim.into(), value, tolerance, basis_size: m.dim(), refuted })
}

/// Largest singular value of the compressed matrix.
pub fn norm_lower_bound(m: &SparseMatrix<Complex64>) -> f64 {
    if m.dim() == 0 {
        return 0.0;
    }
    let svd = SVD::new(m.to_dense(), false, false);
    svd.singular_values.iter().copied().fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn path_matrix(n: usize, diag: f64, off: f64) -> SparseMatrix<Complex64> {
        let mut m = SparseMatrix::zeros(n);
        for i in 0..n {
            m.add(i, i, Complex64::new(diag, 0.0));
            if i + 1 < n {
                m.add(i, i + 1, Complex64::new(off, 0.0));
                m.add(i + 1, i, Complex64::new(off, 0.0));
            }
        }
        m
    }

    #[test]
    fn identity_has_min_one() {
        assert!((min_eig(&SparseMatrix::identity(7)).unwrap() - 1.0).abs() < 1e-14);
        assert!((norm_lower_bound(&SparseMatrix::identity(7)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn tridiagonal_closed_form() {
        for n in [2usize, 6, 30] {
            let got = min_eig(&path_matrix(n, 1.0, -1.0)).unwrap();
            let want = 1.0 - 2.0 * (PI / (n as f64 + 1.0)).cos();
            assert!((got - want).abs() < 1e-12, "{n}: {got} vs {want}");
        }
    }

    #[test]
    fn lanczos_matches_dense() {
        let mut m = path_matrix(120, 1.0, -1.0);
        m.add(3, 70, Complex64::new(0.0, 0.5));
        m.add(70, 3, Complex64::new(0.0, -0.5));
        let dense = min_eig(&m).unwrap();
        let lanczos = min_eig_with(&m, 10).unwrap();
        assert!((dense - lanczos).abs() < 1e-9, "{dense} vs {lanczos}");
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = SparseMatrix::zeros(2);
        m.add(0, 1, Complex64::new(1.0, 0.0));
        assert_eq!(min_eig(&m), Err(IsgError::NotHermitian { row: 0, col: 1 }));
    }

    #[test]
    fn psd_certificate() {
        let c = psd_refute(&path_matrix(6, 1.0, -1.0)).unwrap();
        assert!(c.refuted);
        assert_eq!(c.basis_size, 6);
        let ok = psd_refute(&path_matrix(6, 2.0, -1.0)).unwrap();
        assert!(!ok.refuted);
    }
}
