//! Dense complex linear algebra helpers shared by the other modules.
//!
//! Superoperators act on column-major vectorized operators, so
//! `vec(L X R) = (Rᵀ ⊗ L) vec(X)` with the standard Kronecker product.

use nalgebra::{Complex, ComplexField, DMatrix, SymmetricEigen, SVD};

use crate::{CMatrix, CVector, Real};

pub fn zeros<T: Real>(rows: usize, cols: usize) -> CMatrix<T> {
    DMatrix::zeros(rows, cols)
}

pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    DMatrix::identity(n, n)
}

pub fn from_real<T: Real>(m: &DMatrix<T>) -> CMatrix<T> {
    m.map(|x| Complex::new(x, T::zero()))
}

/// Kronecker product `a ⊗ b`; `a` is the outer factor.
pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.kronecker(b)
}

pub fn frobenius<T: Real>(m: &CMatrix<T>) -> T {
    m.norm()
}

/// Largest singular value; zero for an empty matrix.
pub fn op_norm<T: Real>(m: &CMatrix<T>) -> T {
    if m.is_empty() {
        return T::zero();
    }
    let svd = SVD::new(m.clone(), false, false);
    svd.singular_values.iter().fold(T::zero(), |acc, &s| acc.max(s))
}

pub fn adjoint<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    m.adjoint()
}

pub fn hermitian_part<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    (m + m.adjoint()).scale(crate::real(0.5))
}

/// `‖m − m†‖₂`.
pub fn hermiticity_residual<T: Real>(m: &CMatrix<T>) -> T {
    op_norm(&(m - m.adjoint()))
}

pub fn commutator<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a * b - b * a
}

pub fn trace<T: Real>(m: &CMatrix<T>) -> Complex<T> {
    m.trace()
}

/// Hilbert–Schmidt inner product `⟨x, y⟩ = Tr(y† x)`.
pub fn hs_inner<T: Real>(x: &CMatrix<T>, y: &CMatrix<T>) -> Complex<T> {
    x.iter()
        .zip(y.iter())
        .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + b.conj() * a)
}

/// Column-major vectorization.
pub fn vectorize<T: Real>(m: &CMatrix<T>) -> CVector<T> {
    CVector::from_column_slice(m.as_slice())
}

pub fn unvectorize<T: Real>(v: &[Complex<T>], n: usize) -> CMatrix<T> {
    DMatrix::from_column_slice(n, n, v)
}

/// Superoperator matrix of `X ↦ L X R` on column-major vectorized operators.
pub fn sandwich_superop<T: Real>(left: &CMatrix<T>, right: &CMatrix<T>) -> CMatrix<T> {
    kron(&right.transpose(), left)
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order and eigenvectors as matching columns.
///
/// Only the Hermitian part of `h` is used; callers check hermiticity first.
pub fn hermitian_eigen<T: Real>(h: &CMatrix<T>) -> (Vec<T>, CMatrix<T>) {
    let n = h.nrows();
    if n == 0 {
        return (Vec::new(), zeros(0, 0));
    }
    let eig = SymmetricEigen::new(hermitian_part(h));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

pub fn hermitian_eigenvalues<T: Real>(h: &CMatrix<T>) -> Vec<T> {
    hermitian_eigen(h).0
}

/// Orthonormal basis (as columns) of the column space of `m`.
///
/// Singular values at or below `rel_cutoff · σ_max` count as zero.
pub fn column_space<T: Real>(m: &CMatrix<T>, rel_cutoff: T) -> CMatrix<T> {
    let rows = m.nrows();
    if m.is_empty() {
        return zeros(rows, 0);
    }
    let svd = SVD::new(m.clone(), true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd
        .singular_values
        .iter()
        .fold(T::zero(), |acc, &s| acc.max(s));
    if smax <= T::zero() {
        return zeros(rows, 0);
    }
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > rel_cutoff * smax)
        .map(|(i, _)| i)
        .collect();
    let mut out = zeros(rows, keep.len());
    for (dst, &src) in keep.iter().enumerate() {
        out.set_column(dst, &u.column(src));
    }
    out
}

/// Smallest eigenvalue of the Hermitian part of `h`.
pub fn min_eigenvalue<T: Real>(h: &CMatrix<T>) -> T {
    hermitian_eigenvalues(h)
        .last()
        .copied()
        .unwrap_or_else(T::zero)
}

pub fn max_eigenvalue<T: Real>(h: &CMatrix<T>) -> T {
    hermitian_eigenvalues(h)
        .first()
        .copied()
        .unwrap_or_else(T::zero)
}

/// Modulus of a complex scalar as a real.
pub fn modulus<T: Real>(z: Complex<T>) -> T {
    ComplexField::abs(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn complex_hermitian_eigenvalues() {
        // Pauli Y has spectrum {1, -1}.
        let y = CMatrix::<f64>::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let (vals, vecs) = hermitian_eigen(&y);
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] + 1.0).abs() < 1e-12);
        let recon = &vecs * CMatrix::from_diagonal(&CVector::from_iterator(2, vals.iter().map(|&v| c(v, 0.)))) * vecs.adjoint();
        assert!(frobenius(&(recon - y)) < 1e-12);
    }

    #[test]
    fn sandwich_matches_direct_product() {
        let l = CMatrix::<f64>::from_fn(3, 3, |i, j| c(i as f64 + 1.0, j as f64 - 0.5));
        let r = CMatrix::<f64>::from_fn(3, 3, |i, j| c((i * j) as f64, 1.0));
        let x = CMatrix::<f64>::from_fn(3, 3, |i, j| c(i as f64 - j as f64, 0.25));
        let direct = vectorize(&(&l * &x * &r));
        let via = sandwich_superop(&l, &r) * vectorize(&x);
        assert!((direct - via).norm() < 1e-10);
    }

    #[test]
    fn column_space_drops_dependent_columns() {
        let m = CMatrix::<f64>::from_row_slice(3, 3, &[
            c(1., 0.), c(2., 0.), c(0., 0.),
            c(0., 0.), c(0., 0.), c(1., 0.),
            c(1., 0.), c(2., 0.), c(0., 0.),
        ]);
        let q = column_space(&m, 1e-9);
        assert_eq!(q.ncols(), 2);
        assert!((q.adjoint() * &q - identity::<f64>(2)).norm() < 1e-12);
    }

    #[test]
    fn op_norm_of_empty_is_zero() {
        assert_eq!(op_norm(&zeros::<f64>(0, 0)), 0.0);
    }
}
