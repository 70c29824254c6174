//! Translation between operator subspaces `S`, bimodule projections `P` and
//! quantum adjacency operators `A`.
//!
//! * `A ↦ P`: `P(X) = δ⁻² m (A ⊗ X) m*`.
//! * `P ↦ A`: expand `P = Σ c_ab L(u_a)(·)L(v_b)` over the GNS basis
//!   (the image of `M ⊗ M^op`), then `A(x) = δ² Σ c_ab ψ(u_a x) v_b`.
//! * `S ↦ P`: orthogonal projection onto `S` for the trace inner product.
//! * `P ↦ S`: the range of `P`.

use std::sync::Arc;

use nalgebra::Complex;

use crate::algebra::AlgebraContext;
use crate::linalg::{
    column_space, frobenius, hs_inner, kron, modulus, op_norm, sandwich_superop, unvectorize,
    vectorize, zeros,
};
use crate::{to_f64, CMatrix, Error, Real, Result};

/// Whether a subspace may meet `M′` (loops allowed).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Loops {
    Forbidden,
    Allowed,
}

/// A self-adjoint `M′`-bimodule `S ⊆ B(L²(M))` with an orthonormal basis
/// for `⟨X, Y⟩ = Tr(Y† X)`.
#[derive(Clone, Debug)]
pub struct OperatorSubspace<T: Real> {
    ctx: Arc<AlgebraContext<T>>,
    basis: Vec<CMatrix<T>>,
}

impl<T: Real> OperatorSubspace<T> {
    /// Orthonormalizes `spanning` and checks the quantum-graph conditions.
    pub fn from_spanning(
        ctx: Arc<AlgebraContext<T>>,
        spanning: &[CMatrix<T>],
        loops: Loops,
    ) -> Result<Self> {
        Self::from_spanning_with_tolerance(ctx, spanning, loops, T::default_tolerance())
    }

    pub fn from_spanning_with_tolerance(
        ctx: Arc<AlgebraContext<T>>,
        spanning: &[CMatrix<T>],
        loops: Loops,
        tolerance: T,
    ) -> Result<Self> {
        for x in spanning {
            ctx.check_operator(x)?;
        }
        let s = Self {
            basis: orthonormalize(ctx.dim(), spanning, tolerance),
            ctx,
        };
        let residual = s.adjoint_residual();
        if residual >= tolerance {
            return Err(Error::NotSelfAdjoint {
                residual: to_f64(residual),
            });
        }
        let residual = s.bimodule_residual();
        if residual >= tolerance {
            return Err(Error::NotBimodule {
                residual: to_f64(residual),
            });
        }
        if loops == Loops::Forbidden {
            let residual = s.commutant_overlap();
            if residual >= tolerance {
                return Err(Error::NotIrreflexive {
                    residual: to_f64(residual),
                });
            }
        }
        Ok(s)
    }

    /// The smallest self-adjoint `M′`-bimodule containing `generators`.
    ///
    /// With [`Loops::Forbidden`] the generators are first projected onto
    /// `(M′)^⊥`, which is itself a bimodule, so the result is irreflexive.
    pub fn generated_by(
        ctx: Arc<AlgebraContext<T>>,
        generators: &[CMatrix<T>],
        loops: Loops,
    ) -> Result<Self> {
        let tolerance = T::default_tolerance();
        let comm = ctx.commutant_basis();
        let comm_onb = orthonormalize(ctx.dim(), &comm, tolerance);
        let mut spanning = Vec::new();
        for g in generators {
            ctx.check_operator(g)?;
            let mut x = g.clone();
            if loops == Loops::Forbidden {
                for e in &comm_onb {
                    x -= e * hs_inner(&x, e);
                }
            }
            for e in &comm {
                for f in &comm {
                    let y = e * &x * f;
                    spanning.push(y.adjoint());
                    spanning.push(y);
                }
            }
        }
        Self::from_spanning(ctx, &spanning, loops)
    }

    pub fn ctx(&self) -> &AlgebraContext<T> {
        &self.ctx
    }

    pub fn shared_ctx(&self) -> Arc<AlgebraContext<T>> {
        Arc::clone(&self.ctx)
    }

    pub fn basis(&self) -> &[CMatrix<T>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Distance from `x` to the subspace, `‖x − P_S x‖_F`.
    pub fn distance(&self, x: &CMatrix<T>) -> T {
        let mut r = x.clone();
        for b in &self.basis {
            r -= b * hs_inner(x, b);
        }
        frobenius(&r)
    }

    pub fn contains(&self, x: &CMatrix<T>, tolerance: T) -> bool {
        self.distance(x) < tolerance
    }

    fn adjoint_residual(&self) -> T {
        self.basis
            .iter()
            .map(|b| self.distance(&b.adjoint()))
            .fold(T::zero(), |a, b| a.max(b))
    }

    // Closure under left and right multiplication by a basis of M′ is
    // enough: E S F ⊆ S follows by applying them one at a time.
    fn bimodule_residual(&self) -> T {
        let comm = self.ctx.commutant_basis();
        let mut worst = T::zero();
        for b in &self.basis {
            for e in &comm {
                worst = worst.max(self.distance(&(e * b)));
                worst = worst.max(self.distance(&(b * e)));
            }
        }
        worst
    }

    fn commutant_overlap(&self) -> T {
        let comm = self.ctx.commutant_basis();
        let mut worst = T::zero();
        for e in &comm {
            let norm = frobenius(e);
            for b in &self.basis {
                worst = worst.max(modulus(hs_inner(b, e)) / norm);
            }
        }
        worst
    }
}

/// A linear map on `B(L²(M))` as a `dim² × dim²` matrix acting on
/// column-major vectorized operators.
#[derive(Clone, Debug)]
pub struct Superoperator<T: Real> {
    ctx: Arc<AlgebraContext<T>>,
    matrix: CMatrix<T>,
}

impl<T: Real> Superoperator<T> {
    pub fn new(ctx: Arc<AlgebraContext<T>>, matrix: CMatrix<T>) -> Result<Self> {
        let n = ctx.dim() * ctx.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::shape(
                format!("{n}x{n} superoperator"),
                format!("{}x{}", matrix.nrows(), matrix.ncols()),
            ));
        }
        Ok(Self { ctx, matrix })
    }

    pub fn ctx(&self) -> &AlgebraContext<T> {
        &self.ctx
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn apply(&self, x: &CMatrix<T>) -> Result<CMatrix<T>> {
        self.ctx.check_operator(x)?;
        let v = &self.matrix * vectorize(x);
        Ok(unvectorize(v.as_slice(), self.ctx.dim()))
    }

    /// `Tr P`; equals the rank of an orthogonal projection.
    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    /// `‖P² − P‖₂`.
    pub fn idempotent_residual(&self) -> T {
        op_norm(&(&self.matrix * &self.matrix - &self.matrix))
    }

    /// `‖P − P†‖₂` for the trace inner product.
    pub fn self_adjoint_residual(&self) -> T {
        op_norm(&(&self.matrix - self.matrix.adjoint()))
    }

    /// Largest defect of `P(E X) = E P(X)` and `P(X E) = P(X) E` over the
    /// commutant basis.
    pub fn bimodule_residual(&self) -> T {
        let d = self.ctx.dim();
        let id = crate::linalg::identity::<T>(d);
        let mut worst = T::zero();
        for e in self.ctx.commutant_basis() {
            let left = sandwich_superop(&e, &id);
            let right = sandwich_superop(&id, &e);
            worst = worst.max(op_norm(&(&self.matrix * &left - &left * &self.matrix)));
            worst = worst.max(op_norm(&(&self.matrix * &right - &right * &self.matrix)));
        }
        worst
    }

    /// `‖P − Q‖₂`.
    pub fn distance(&self, other: &Self) -> T {
        op_norm(&(&self.matrix - &other.matrix))
    }
}

/// Orthogonal projection `P(X) = Σ_j B_j Tr(B_j† X)` onto `S`.
pub fn projection_onto<T: Real>(s: &OperatorSubspace<T>) -> Superoperator<T> {
    let d = s.ctx.dim();
    let mut q = zeros::<T>(d * d, s.dim());
    for (j, b) in s.basis.iter().enumerate() {
        q.set_column(j, &vectorize(b));
    }
    Superoperator {
        ctx: Arc::clone(&s.ctx),
        matrix: &q * q.adjoint(),
    }
}

/// `X ↦ δ⁻² m (A ⊗ X) m*`.
pub fn projection_from_adjacency<T: Real>(
    ctx: Arc<AlgebraContext<T>>,
    a: &CMatrix<T>,
) -> Result<Superoperator<T>> {
    ctx.check_operator(a)?;
    let d = ctx.dim();
    let mut matrix = zeros::<T>(d * d, d * d);
    let mut unit = zeros::<T>(d, d);
    for col in 0..d {
        for row in 0..d {
            unit[(row, col)] = Complex::new(T::one(), T::zero());
            let image = ctx.m_sandwich(a, &unit)?.unscale(ctx.delta_sq());
            matrix.set_column(col * d + row, &vectorize(&image));
            unit[(row, col)] = Complex::new(T::zero(), T::zero());
        }
    }
    Ok(Superoperator { ctx, matrix })
}

/// Coefficients `c_ab` of `P = Σ c_ab L(u_a)(·)L(v_b)` by least squares, with
/// the relative residual of the fit.
pub fn bimodule_coefficients<T: Real>(p: &Superoperator<T>) -> (CMatrix<T>, T) {
    let ctx = &p.ctx;
    let d = ctx.dim();
    let left = ctx.left_basis_ops();
    let terms: Vec<CMatrix<T>> = (0..d * d)
        .map(|idx| {
            let (a, b) = (idx / d, idx % d);
            sandwich_superop(&left[a], &left[b])
        })
        .collect();

    // Normal equations G c = r with G_{ij} = ⟨E_j, E_i⟩, r_i = ⟨P, E_i⟩.
    // The Gram matrix factorizes as g ⊗ g with g_{ab} = Tr(L_a† L_b).
    let g = CMatrix::from_fn(d, d, |i, j| hs_inner(&left[j], &left[i]));
    let gram = kron(&g, &g);
    let rhs = nalgebra::DVector::from_iterator(d * d, terms.iter().map(|e| hs_inner(&p.matrix, e)));
    let coeffs = match gram.clone().lu().solve(&rhs) {
        Some(c) => c,
        None => {
            let svd = gram.svd(true, true);
            svd.solve(&rhs, T::default_tolerance())
                .expect("SVD was computed with both factors")
        }
    };

    let mut fit = zeros::<T>(d * d, d * d);
    for (e, c) in terms.iter().zip(coeffs.iter()) {
        fit += e * *c;
    }
    let scale = frobenius(&p.matrix);
    let residual = if scale > T::zero() {
        frobenius(&(&p.matrix - fit)) / scale
    } else {
        T::zero()
    };
    let c = CMatrix::from_fn(d, d, |a, b| coeffs[a * d + b]);
    (c, residual)
}

/// The quantum adjacency matrix `A(x) = δ² Σ c_ab ψ(u_a x) v_b` of a bimodule
/// projection.
pub fn adjacency_from_projection<T: Real>(p: &Superoperator<T>) -> Result<CMatrix<T>> {
    adjacency_from_projection_with_tolerance(p, T::default_tolerance())
}

pub fn adjacency_from_projection_with_tolerance<T: Real>(
    p: &Superoperator<T>,
    tolerance: T,
) -> Result<CMatrix<T>> {
    let (c, residual) = bimodule_coefficients(p);
    if residual >= tolerance {
        return Err(Error::DecompositionResidualTooLarge {
            residual: to_f64(residual),
        });
    }
    // A[q, x] = δ² Σ_a c[a, q] ψ(u_a u_x)
    let w = p.ctx.psi_product_matrix();
    Ok((c.transpose() * w).scale(p.ctx.delta_sq()))
}

/// Orthonormal basis of the range of `P` (numerical rank at cutoff
/// `tolerance · σ_max`).
pub fn range_of<T: Real>(p: &Superoperator<T>) -> OperatorSubspace<T> {
    range_of_with_tolerance(p, T::default_tolerance())
}

pub fn range_of_with_tolerance<T: Real>(p: &Superoperator<T>, tolerance: T) -> OperatorSubspace<T> {
    let d = p.ctx.dim();
    let q = column_space(&p.matrix, tolerance);
    let basis = q
        .column_iter()
        .map(|col| unvectorize(col.as_slice(), d))
        .collect();
    OperatorSubspace {
        ctx: Arc::clone(&p.ctx),
        basis,
    }
}

fn orthonormalize<T: Real>(d: usize, spanning: &[CMatrix<T>], tolerance: T) -> Vec<CMatrix<T>> {
    if spanning.is_empty() {
        return Vec::new();
    }
    let mut stacked = zeros::<T>(d * d, spanning.len());
    for (j, x) in spanning.iter().enumerate() {
        stacked.set_column(j, &vectorize(x));
    }
    column_space(&stacked, tolerance)
        .column_iter()
        .map(|col| unvectorize(col.as_slice(), d))
        .collect()
}
