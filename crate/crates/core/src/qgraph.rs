//! Quantum adjacency operators and their axioms.
//!
//! A quantum adjacency matrix on `(M, ψ)` is a self-adjoint operator `A` on
//! `L²(M)` with `m(A ⊗ A)m* = δ² A` (Schur idempotent) and
//! `(I ⊗ η*m)(I ⊗ A ⊗ I)(m*η ⊗ I) = A` (undirected). It is reflexive when
//! `m(A ⊗ I)m* = δ² I` and irreflexive when `m(A ⊗ I)m* = 0`.

use std::fmt;
use std::sync::Arc;

use nalgebra::Complex;

use crate::algebra::{AlgebraContext, AlgebraElement, AlgebraSpec};
use crate::classical::ClassicalGraph;
use crate::linalg::{hermitian_eigenvalues, hermiticity_residual, identity, kron, op_norm, zeros};
use crate::{CMatrix, Real, Result};

/// Quantum Schur product `δ⁻² m (X ⊗ Y) m*`.
///
/// For a classical context this is the entrywise product.
pub fn schur_product<T: Real>(
    ctx: &AlgebraContext<T>,
    x: &CMatrix<T>,
    y: &CMatrix<T>,
) -> Result<CMatrix<T>> {
    let out = ctx.m_sandwich(x, y)?;
    Ok(out.unscale(ctx.delta_sq()))
}

/// Residuals of every axiom, with verdicts at `tolerance`.
///
/// All residuals are operator norms of the defect, except
/// `completely_positive`, which is the amount by which the Choi matrix of
/// `A: M → M` fails to be positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<T: Real> {
    pub tolerance: T,
    pub schur_idempotent: T,
    pub undirected: T,
    pub self_adjoint: T,
    pub star_preserving: T,
    pub reflexive: T,
    pub irreflexive: T,
    pub completely_positive: T,
}

/// Names of the axioms in report order.
pub const AXIOM_NAMES: [&str; 7] = [
    "schur_idempotent",
    "undirected",
    "self_adjoint",
    "star_preserving",
    "reflexive",
    "irreflexive",
    "completely_positive",
];

impl<T: Real> AxiomReport<T> {
    pub fn entries(&self) -> [(&'static str, T, bool); 7] {
        let vals = [
            self.schur_idempotent,
            self.undirected,
            self.self_adjoint,
            self.star_preserving,
            self.reflexive,
            self.irreflexive,
            self.completely_positive,
        ];
        let mut out = [("", T::zero(), false); 7];
        for (i, (&name, &v)) in AXIOM_NAMES.iter().zip(vals.iter()).enumerate() {
            out[i] = (name, v, self.passes(v));
        }
        out
    }

    fn passes(&self, residual: T) -> bool {
        residual < self.tolerance
    }

    pub fn is_schur_idempotent(&self) -> bool {
        self.passes(self.schur_idempotent)
    }

    pub fn is_undirected(&self) -> bool {
        self.passes(self.undirected)
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.passes(self.self_adjoint)
    }

    pub fn is_star_preserving(&self) -> bool {
        self.passes(self.star_preserving)
    }

    pub fn is_reflexive(&self) -> bool {
        self.passes(self.reflexive)
    }

    pub fn is_irreflexive(&self) -> bool {
        self.passes(self.irreflexive)
    }

    pub fn is_completely_positive(&self) -> bool {
        self.passes(self.completely_positive)
    }

    /// The axioms an undirected quantum graph must satisfy.
    pub fn is_quantum_adjacency(&self) -> bool {
        self.is_schur_idempotent()
            && self.is_self_adjoint()
            && self.is_undirected()
            && self.is_star_preserving()
    }
}

pub fn validate<T: Real>(ctx: &AlgebraContext<T>, a: &CMatrix<T>) -> Result<AxiomReport<T>> {
    validate_with_tolerance(ctx, a, T::default_tolerance())
}

pub fn validate_with_tolerance<T: Real>(
    ctx: &AlgebraContext<T>,
    a: &CMatrix<T>,
    tolerance: T,
) -> Result<AxiomReport<T>> {
    ctx.check_operator(a)?;
    let d = ctx.dim();
    let id = identity::<T>(d);

    let schur = schur_product(ctx, a, a)?;
    let schur_idempotent = op_norm(&(schur - a));

    let literal = undirected_composition(ctx, a);
    let undirected = op_norm(&(literal - a));

    let self_adjoint = hermiticity_residual(a);

    let k = ctx.star_matrix();
    let star_preserving = op_norm(&(a * &k - &k * a.conjugate()));

    let loops = ctx.m_sandwich(a, &id)?;
    let reflexive = op_norm(&(&loops - id.scale(ctx.delta_sq())));
    let irreflexive = op_norm(&loops);

    let choi = choi_matrix(ctx, a);
    let asym = hermiticity_residual(&choi);
    let min_eig = hermitian_eigenvalues(&choi).last().copied().unwrap_or_else(T::zero);
    let completely_positive = (-min_eig).max(T::zero()) + asym;

    Ok(AxiomReport {
        tolerance,
        schur_idempotent,
        undirected,
        self_adjoint,
        star_preserving,
        reflexive,
        irreflexive,
        completely_positive,
    })
}

/// `(I ⊗ η*m)(I ⊗ A ⊗ I)(m*η ⊗ I)` as a `dim × dim` matrix.
pub fn undirected_composition<T: Real>(ctx: &AlgebraContext<T>, a: &CMatrix<T>) -> CMatrix<T> {
    let d = ctx.dim();
    let v = ctx.m_star_matrix() * ctx.unit_gns();
    // v = Σ V[a,b] b_a ⊗ b_b with the left factor outer.
    let vmat = CMatrix::from_fn(d, d, |r, c| v[r * d + c]);
    let w = ctx.psi_product_matrix();
    vmat * a.transpose() * w
}

/// Choi matrix `Σ e_{jk} ⊗ A(e_{jk})` of `A` as a map `M → M`, with `M`
/// embedded block-diagonally in `M_{Σ n_i}`.
pub fn choi_matrix<T: Real>(ctx: &AlgebraContext<T>, a: &CMatrix<T>) -> CMatrix<T> {
    let spec = ctx.spec();
    let size = spec.matrix_size();
    let mut choi = zeros::<T>(size * size, size * size);
    let mut row_off = 0;
    for (block, &n) in spec.blocks().iter().enumerate() {
        let scale = Complex::new(ctx.block_scale(block), T::zero());
        for j in 0..n {
            for k in 0..n {
                let col = ctx.gns_position(block, j, k);
                // to_gns(e_jk) is the basis vector divided by the block scale.
                let image = a.column(col).into_owned() / scale;
                let image_elem = ctx.from_gns(&image).expect("GNS vector has context length");
                let mut unit = zeros::<T>(size, size);
                unit[(row_off + j, row_off + k)] = Complex::new(T::one(), T::zero());
                choi += kron(&unit, &image_elem.to_block_diagonal());
            }
        }
        row_off += n;
    }
    choi
}

/// An (undirected) quantum graph `(M, ψ, A)` with its axiom report.
#[derive(Clone, Debug)]
pub struct QuantumGraph<T: Real> {
    ctx: Arc<AlgebraContext<T>>,
    adjacency: CMatrix<T>,
    axioms: AxiomReport<T>,
}

impl<T: Real> QuantumGraph<T> {
    /// Wraps `a` and validates it; failing axioms are recorded, not rejected.
    pub fn new(ctx: Arc<AlgebraContext<T>>, adjacency: CMatrix<T>) -> Result<Self> {
        Self::with_tolerance(ctx, adjacency, T::default_tolerance())
    }

    pub fn with_tolerance(
        ctx: Arc<AlgebraContext<T>>,
        adjacency: CMatrix<T>,
        tolerance: T,
    ) -> Result<Self> {
        let axioms = validate_with_tolerance(&ctx, &adjacency, tolerance)?;
        Ok(Self {
            ctx,
            adjacency,
            axioms,
        })
    }

    /// Embeds a classical graph on `n ≥ 1` vertices over `ℂⁿ`.
    pub fn from_classical(graph: &ClassicalGraph) -> Result<Self> {
        let ctx = Arc::new(AlgebraContext::new(AlgebraSpec::classical(graph.order())?));
        Self::new(ctx, graph.adjacency())
    }

    /// `A = δ² ψ(·) 𝟙`, minus the identity when irreflexive.
    pub fn complete(ctx: Arc<AlgebraContext<T>>, reflexive: bool) -> Self {
        let d = ctx.dim();
        let u = ctx.unit_gns();
        let mut a = (u * u.adjoint()).scale(ctx.delta_sq());
        if !reflexive {
            a -= identity::<T>(d);
        }
        Self::new(ctx, a).expect("operator has context shape")
    }

    pub fn empty(ctx: Arc<AlgebraContext<T>>) -> Self {
        let d = ctx.dim();
        Self::new(ctx, zeros(d, d)).expect("operator has context shape")
    }

    pub fn ctx(&self) -> &AlgebraContext<T> {
        &self.ctx
    }

    pub fn shared_ctx(&self) -> Arc<AlgebraContext<T>> {
        Arc::clone(&self.ctx)
    }

    pub fn adjacency(&self) -> &CMatrix<T> {
        &self.adjacency
    }

    pub fn axioms(&self) -> &AxiomReport<T> {
        &self.axioms
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    /// `A 𝟙` as an element of `M`.
    pub fn degree_element(&self) -> AlgebraElement<T> {
        self.ctx
            .from_gns(&(&self.adjacency * self.ctx.unit_gns()))
            .expect("GNS vector has context length")
    }
}

impl<T: Real + fmt::LowerExp> fmt::Display for AxiomReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, residual, pass) in self.entries() {
            writeln!(
                f,
                "{name:<20} {:<4} {residual:e}",
                if pass { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}
