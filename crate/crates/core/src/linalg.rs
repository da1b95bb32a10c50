//! Dense complex linear algebra helpers shared by the symbol-table engine
//! and the operator layer.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

pub type CMat = DMatrix<C64>;

pub fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

pub fn cone() -> C64 {
    C64::new(1.0, 0.0)
}

pub fn cr(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Identity matrix of dimension `n`.
pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Conjugate transpose.
pub fn dagger(a: &CMat) -> CMat {
    a.adjoint()
}

/// Hilbert-Schmidt inner product `tr(a† b)`.
pub fn hs_inner(a: &CMat, b: &CMat) -> C64 {
    let mut acc = czero();
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            acc += a[(i, j)].conj() * b[(i, j)];
        }
    }
    acc
}

/// Largest entry magnitude.
pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max-norm distance between two matrices of equal shape.
pub fn max_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Deviation of `a` from being a coisometry, `‖a a† − 1‖_max`.
pub fn coisometry_defect(a: &CMat) -> f64 {
    let p = a * dagger(a);
    max_diff(&p, &eye(a.nrows()))
}

/// Orthonormal basis of the joint null space of a stack of linear
/// constraints on vectors of length `n`.
///
/// `constraints` holds rows; an empty stack returns the standard basis.
/// Vectors are orthonormalized deterministically by projecting the standard
/// basis onto the null space and running Gram-Schmidt in index order, so the
/// result is reproducible across runs.
pub fn nullspace(constraints: &CMat, n: usize, tol: f64) -> Vec<Vec<C64>> {
    assert_eq!(constraints.ncols(), n);
    // Null projector from the Hermitian Gram matrix of the constraints.
    let gram = dagger(constraints) * constraints;
    let eig = nalgebra::SymmetricEigen::new(gram);
    let mut proj = CMat::zeros(n, n);
    for (k, lam) in eig.eigenvalues.iter().enumerate() {
        if lam.abs() < tol {
            let v = eig.eigenvectors.column(k);
            for i in 0..n {
                for j in 0..n {
                    proj[(i, j)] += v[i] * v[j].conj();
                }
            }
        }
    }
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for k in 0..n {
        let mut v: Vec<C64> = (0..n).map(|i| proj[(i, k)]).collect();
        for b in &basis {
            let ov: C64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= ov * bi;
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-7 {
            for vi in v.iter_mut() {
                *vi /= cr(norm);
            }
            phase_fix(&mut v);
            basis.push(v);
        }
    }
    basis
}

/// Rotate a vector by a global phase so its first entry of significant
/// magnitude is real positive.
pub fn phase_fix(v: &mut [C64]) {
    let lead = v.iter().find(|z| z.norm() > 1e-9);
    if let Some(z) = lead {
        let ph = z / cr(z.norm());
        for vi in v.iter_mut() {
            *vi /= ph;
        }
    }
}

/// Eigendecomposition of a Hermitian matrix with deterministic ordering:
/// ascending eigenvalue, eigenvector phases pinned to the pivot entry.
pub fn eigh(a: &CMat) -> (Vec<f64>, CMat) {
    let n = a.nrows();
    let herm_defect = max_diff(a, &dagger(a));
    assert!(
        herm_defect < 1e-8,
        "eigh called on non-Hermitian input (defect {herm_defect:.3e})"
    );
    let sym = (a + dagger(a)).scale(0.5);
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .unwrap()
            .then(i.cmp(&j))
    });
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        let mut col: Vec<C64> = eig.eigenvectors.column(old).iter().copied().collect();
        // Pivot on the largest-magnitude component for a stable phase.
        let pivot = col
            .iter()
            .enumerate()
            .max_by(|(i, x), (j, y)| x.norm().partial_cmp(&y.norm()).unwrap().then(j.cmp(i)))
            .map(|(i, _)| i)
            .unwrap();
        let ph = col[pivot] / cr(col[pivot].norm().max(1e-300));
        for c in col.iter_mut() {
            *c /= ph;
        }
        for i in 0..n {
            vecs[(i, new)] = col[i];
        }
    }
    (vals, vecs)
}

/// Hermitian square root pseudo-inverse, used by the polar construction of
/// cross-sector isometries. Eigenvalues below `cut` are discarded.
pub fn inv_sqrt_psd(a: &CMat, cut: f64) -> CMat {
    let (vals, vecs) = eigh(a);
    let n = a.nrows();
    let mut out = CMat::zeros(n, n);
    for (k, lam) in vals.iter().enumerate() {
        if *lam > cut {
            let s = cr(1.0 / lam.sqrt());
            let v = vecs.column(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += s * v[i] * v[j].conj();
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one_constraint() {
        // constraint x0 + x1 = 0 in C^2
        let mut c = CMat::zeros(1, 2);
        c[(0, 0)] = cone();
        c[(0, 1)] = cone();
        let ns = nullspace(&c, 2, 1e-12);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!((v[0] + v[1]).norm() < 1e-12);
        assert!(v[0].im.abs() < 1e-12 && v[0].re > 0.0);
    }

    #[test]
    fn eigh_orders_and_reconstructs() {
        let mut a = CMat::zeros(3, 3);
        a[(0, 0)] = cr(2.0);
        a[(1, 1)] = cr(-1.0);
        a[(2, 2)] = cr(0.5);
        a[(0, 1)] = C64::new(0.0, 0.3);
        a[(1, 0)] = C64::new(0.0, -0.3);
        let (vals, vecs) = eigh(&a);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let mut recon = CMat::zeros(3, 3);
        for k in 0..3 {
            let v = vecs.column(k);
            for i in 0..3 {
                for j in 0..3 {
                    recon[(i, j)] += cr(vals[k]) * v[i] * v[j].conj();
                }
            }
        }
        assert!(max_diff(&recon, &a) < 1e-10);
    }
}
