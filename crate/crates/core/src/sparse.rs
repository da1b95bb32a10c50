//! Sparse complex operators on enumerated chain bases.
//!
//! Triplet storage with a fixed accumulation order keeps assembled matrices
//! bit-reproducible; algebra at desk scale goes through dense conversion.

use crate::linalg::{czero, dagger, CMat};
use num_complex::Complex64 as C64;

/// Sparse operator as a triplet list; rows index the target space.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    pub rows: usize,
    pub cols: usize,
    pub triplets: Vec<(u32, u32, C64)>,
}

impl SparseOperator {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseOperator {
            rows,
            cols,
            triplets: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseOperator {
            rows: n,
            cols: n,
            triplets: (0..n as u32).map(|i| (i, i, C64::new(1.0, 0.0))).collect(),
        }
    }

    pub fn push(&mut self, row: usize, col: usize, v: C64) {
        if v.norm() > 1e-15 {
            self.triplets.push((row as u32, col as u32, v));
        }
    }

    /// Sum duplicate entries and order triplets row-major.
    pub fn normalize(&mut self) {
        self.triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut out: Vec<(u32, u32, C64)> = Vec::with_capacity(self.triplets.len());
        for &(r, c, v) in &self.triplets {
            match out.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => out.push((r, c, v)),
            }
        }
        out.retain(|&(_, _, v)| v.norm() > 1e-14);
        self.triplets = out;
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.rows, self.cols);
        for &(r, c, v) in &self.triplets {
            m[(r as usize, c as usize)] += v;
        }
        m
    }

    pub fn from_dense(m: &CMat) -> Self {
        let mut op = SparseOperator::new(m.nrows(), m.ncols());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                op.push(r, c, m[(r, c)]);
            }
        }
        op
    }

    pub fn dagger(&self) -> Self {
        let mut op = SparseOperator::new(self.cols, self.rows);
        for &(r, c, v) in &self.triplets {
            op.triplets.push((c, r, v.conj()));
        }
        op.normalize();
        op
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut op = self.clone();
        for t in op.triplets.iter_mut() {
            t.2 *= s;
        }
        op
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut op = self.clone();
        op.triplets.extend_from_slice(&other.triplets);
        op.normalize();
        op
    }

    /// `self ∘ other` (apply `other` first).
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let d = self.to_dense() * other.to_dense();
        Self::from_dense(&d)
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![czero(); self.rows];
        for &(r, c, a) in &self.triplets {
            out[r as usize] += a * v[c as usize];
        }
        out
    }

    pub fn max_norm(&self) -> f64 {
        let mut m = self.clone();
        m.normalize();
        m.triplets.iter().map(|t| t.2.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        crate::linalg::max_diff(&self.to_dense(), &dagger(&self.to_dense()))
    }

    pub fn commutator_norm(&self, other: &Self) -> f64 {
        let a = self.to_dense();
        let b = other.to_dense();
        crate::linalg::max_diff(&(&a * &b), &(&b * &a))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn trace(&self) -> C64 {
        let mut m = self.clone();
        m.normalize();
        m.triplets
            .iter()
            .filter(|&&(r, c, _)| r == c)
            .map(|&(_, _, v)| v)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_merges_duplicates() {
        let mut op = SparseOperator::new(2, 2);
        op.push(0, 1, C64::new(1.0, 0.0));
        op.push(0, 1, C64::new(2.0, 0.5));
        op.push(1, 0, C64::new(-1.0, 0.0));
        op.normalize();
        assert_eq!(op.triplets.len(), 2);
        assert_eq!(op.triplets[0], (0, 1, C64::new(3.0, 0.5)));
    }

    #[test]
    fn dagger_of_product() {
        let mut a = SparseOperator::new(2, 2);
        a.push(0, 1, C64::new(0.0, 1.0));
        a.push(1, 1, C64::new(2.0, 0.0));
        let mut b = SparseOperator::new(2, 2);
        b.push(1, 0, C64::new(1.0, -1.0));
        let lhs = a.matmul(&b).dagger().to_dense();
        let rhs = b.dagger().matmul(&a.dagger()).to_dense();
        assert!(crate::linalg::max_diff(&lhs, &rhs) < 1e-14);
    }
}
