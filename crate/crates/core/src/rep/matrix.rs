use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{Coefficient, Scalar};

/// A sparse square matrix with at most one stored entry per position and
/// no stored zeros.
#[derive(Clone, PartialEq)]
pub struct SparseMatrix<K: Coefficient = Scalar> {
    dim: usize,
    entries: BTreeMap<(usize, usize), K>,
}

impl<K: Coefficient> std::fmt::Debug for SparseMatrix<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SparseMatrix").field("dim", &self.dim).field("entries", &self.entries).finish()
    }
}

impl<K: Coefficient> SparseMatrix<K> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.add(i, i, K::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&mut self, row: usize, col: usize, c: K) {
        assert!(row < self.dim && col < self.dim, "entry ({row},{col}) outside dimension {}", self.dim);
        let slot = self.entries.entry((row, col)).or_insert_with(K::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn get(&self, row: usize, col: usize) -> K {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(K::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &K)> {
        self.entries.iter()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut by_row: BTreeMap<usize, Vec<(usize, &K)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zeros(self.dim);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in by_row.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                out.add(i, j, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let entries = self.entries.iter().map(|(&(r, c), v)| ((c, r), v.conj())).collect();
        Self { dim: self.dim, entries }
    }

    /// The principal submatrix on `idx`, in that order.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(i, &j)| (j, i)).collect();
        let mut out = Self::zeros(idx.len());
        for (&(r, c), v) in &self.entries {
            if let (Some(&i), Some(&j)) = (pos.get(&r), pos.get(&c)) {
                out.add(i, j, v.clone());
            }
        }
        out
    }

    pub fn to_float(&self) -> SparseMatrix<Complex64> {
        SparseMatrix { dim: self.dim, entries: self.entries.iter().map(|(&k, v)| (k, v.to_c64())).collect() }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (&(r, c), v) in &self.entries {
            m[(r, c)] = v.to_c64();
        }
        m
    }

    /// Coordinate triplets `[row, col, re, im]` for export.
    pub fn triplets(&self) -> MatrixExport {
        MatrixExport {
            dim: self.dim,
            entries: self.entries.iter().map(|(&(r, c), v)| Triplet { row: r, col: c, value: v.to_string() }).collect(),
        }
    }
}

impl SparseMatrix<Complex64> {
    /// First position where the matrix differs from its adjoint by more
    /// than `tol`.
    pub fn hermitian_defect(&self, tol: f64) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .map(|(&(r, c), v)| ((r, c), (*v - self.get(c, r).conj()).norm()))
            .find(|&(_, d)| d > tol)
            .map(|(p, _)| p)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Triplet {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixExport {
    pub dim: usize,
    pub entries: Vec<Triplet>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_adjoint() {
        let mut a: SparseMatrix = SparseMatrix::zeros(2);
        a.add(0, 1, Scalar::i());
        let b = a.adjoint();
        assert_eq!(b.get(1, 0), Scalar::gaussian(0, -1));
        let ab = a.mul(&b);
        assert_eq!(ab.get(0, 0), Scalar::from_int(1));
        assert_eq!(ab.nnz(), 1);
        assert!(a.mul(&a).is_zero());
    }

    #[test]
    fn cancelling_entries_vanish() {
        let mut a: SparseMatrix = SparseMatrix::identity(3);
        a.add(1, 1, Scalar::from_int(-1));
        assert_eq!(a.nnz(), 2);
        assert_eq!(a.submatrix(&[2, 0]), SparseMatrix::identity(2));
    }

    #[test]
    fn hermitian_defect_found() {
        let mut a: SparseMatrix = SparseMatrix::zeros(2);
        a.add(0, 1, Scalar::from_int(1));
        assert_eq!(a.to_float().hermitian_defect(1e-12), Some((0, 1)));
        a.add(1, 0, Scalar::from_int(1));
        assert_eq!(a.to_float().hermitian_defect(1e-12), None);
    }
}
