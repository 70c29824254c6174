//! Spectra of quantum graphs and the spectral lower bounds on the quantum
//! chromatic number.
//!
//! For an irreflexive quantum graph with adjacency `A`, degree matrix `D`
//! (right multiplication by `A𝟙`), Laplacian `L = D − A` and signless
//! Laplacian `Q = D + A`, each of the following is a lower bound on `χ_q`:
//!
//! * Hoffman: `1 + λ_max / |λ_min|`
//! * edge: `1 + dim S / (dim S − dim M · γ_min)`
//! * sum of squares: `1 + max(s⁺/s⁻, s⁻/s⁺)`
//! * inertia: `1 + max(n⁺/n⁻, n⁻/n⁺)`
//! * Laplacian: `1 + λ_max / (λ_max − γ_max + θ_max)`
//!
//! where `γ` and `θ` are eigenvalues of `Q` and `L`. Eigenvalue signs are
//! decided against `τ = ε · max(1, |λ_1|, |λ_d|)`.

use std::fmt;

use crate::linalg::{frobenius, hermitian_eigen, hermiticity_residual};
use crate::qgraph::QuantumGraph;
use crate::translate::{projection_from_adjacency, range_of_with_tolerance};
use crate::{real, to_f64, CMatrix, Error, Real, Result};

/// Eigenvalues of a self-adjoint operator in descending order.
#[derive(Clone, Debug)]
pub struct Spectrum<T: Real> {
    eigenvalues: Vec<T>,
    eigenvectors: CMatrix<T>,
}

/// Counts of positive, zero and negative eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl<T: Real> Spectrum<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors as columns, matching [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &CMatrix<T> {
        &self.eigenvectors
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max(&self) -> T {
        self.eigenvalues.first().copied().unwrap_or_else(T::zero)
    }

    pub fn min(&self) -> T {
        self.eigenvalues.last().copied().unwrap_or_else(T::zero)
    }

    pub fn sum(&self) -> T {
        self.eigenvalues.iter().fold(T::zero(), |acc, &x| acc + x)
    }

    /// Sign threshold `ε · max(1, |λ_1|, |λ_d|)`.
    pub fn threshold(&self, tolerance: T) -> T {
        tolerance * T::one().max(self.max().abs()).max(self.min().abs())
    }

    pub fn inertia(&self, tolerance: T) -> Inertia {
        let tau = self.threshold(tolerance);
        let n_plus = self.eigenvalues.iter().filter(|&&x| x > tau).count();
        let n_minus = self.eigenvalues.iter().filter(|&&x| x < -tau).count();
        Inertia {
            n_plus,
            n_zero: self.len() - n_plus - n_minus,
            n_minus,
        }
    }

    /// `(s⁺, s⁻)`: sums of squares of the positive and negative eigenvalues.
    pub fn square_sums(&self, tolerance: T) -> (T, T) {
        let tau = self.threshold(tolerance);
        let mut plus = T::zero();
        let mut minus = T::zero();
        for &x in &self.eigenvalues {
            if x > tau {
                plus += x * x;
            } else if x < -tau {
                minus += x * x;
            }
        }
        (plus, minus)
    }
}

/// Eigen-decomposition of `h`, rejecting operators that are not Hermitian to
/// `tolerance` (operator norm of `h − h†`, relative to `max(1, ‖h‖_F)`).
pub fn eig_hermitian<T: Real>(h: &CMatrix<T>, tolerance: T) -> Result<Spectrum<T>> {
    if h.nrows() != h.ncols() {
        return Err(Error::shape("square matrix", format!("{}x{}", h.nrows(), h.ncols())));
    }
    let residual = hermiticity_residual(h);
    if residual >= tolerance * T::one().max(frobenius(h)) {
        return Err(Error::NotHermitian {
            residual: to_f64(residual),
        });
    }
    let (eigenvalues, eigenvectors) = hermitian_eigen(h);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// `D = R(A𝟙)`, right multiplication by the degree element. It lies in `M′`.
pub fn degree_matrix<T: Real>(g: &QuantumGraph<T>) -> CMatrix<T> {
    g.ctx()
        .right_mult_op(&g.degree_element())
        .expect("degree element has context shape")
}

/// `(L, Q) = (D − A, D + A)`.
pub fn laplacians<T: Real>(g: &QuantumGraph<T>) -> (CMatrix<T>, CMatrix<T>) {
    let d = degree_matrix(g);
    let a = g.adjacency();
    (&d - a, &d + a)
}

/// A single lower bound. Inapplicable bounds carry the trivial value 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bound<T: Real> {
    pub value: T,
    pub applicable: bool,
}

impl<T: Real> Bound<T> {
    fn ratio(numerator: T, denominator: T, cutoff: T) -> Self {
        if denominator > cutoff {
            Self {
                value: T::one() + numerator / denominator,
                applicable: true,
            }
        } else {
            Self::trivial()
        }
    }

    fn trivial() -> Self {
        Self {
            value: T::one(),
            applicable: false,
        }
    }
}

/// Names of the bounds in report order.
pub const BOUND_NAMES: [&str; 5] = ["hoffman", "edge", "sum_squares", "inertia", "laplacian"];

/// Every spectral quantity entering the bounds, and the bounds themselves.
#[derive(Clone, Debug)]
pub struct BoundsReport<T: Real> {
    pub tolerance: T,
    pub lambda_max: T,
    pub lambda_min: T,
    pub s_plus: T,
    pub s_minus: T,
    pub inertia: Inertia,
    pub gamma_max: T,
    pub gamma_min: T,
    pub theta_max: T,
    /// `dim S`, the quantum analogue of twice the edge count. Not rounded.
    pub edge_number_2m: T,
    pub dim_m: T,
    pub hoffman: Bound<T>,
    pub edge: Bound<T>,
    pub sum_squares: Bound<T>,
    pub inertia_bound: Bound<T>,
    pub laplacian: Bound<T>,
    pub best: T,
}

impl<T: Real> BoundsReport<T> {
    pub fn bounds(&self) -> [(&'static str, Bound<T>); 5] {
        [
            (BOUND_NAMES[0], self.hoffman),
            (BOUND_NAMES[1], self.edge),
            (BOUND_NAMES[2], self.sum_squares),
            (BOUND_NAMES[3], self.inertia_bound),
            (BOUND_NAMES[4], self.laplacian),
        ]
    }
}

/// All five bounds at the graph's own tolerance.
pub fn all_bounds<T: Real>(g: &QuantumGraph<T>) -> Result<BoundsReport<T>> {
    all_bounds_with_tolerance(g, g.axioms().tolerance)
}

pub fn all_bounds_with_tolerance<T: Real>(
    g: &QuantumGraph<T>,
    tolerance: T,
) -> Result<BoundsReport<T>> {
    let axioms = g.axioms();
    for (name, residual, ok) in axioms.entries() {
        let required = matches!(name, "schur_idempotent" | "undirected" | "self_adjoint" | "star_preserving");
        if required && !ok {
            return Err(Error::NotQuantumAdjacency {
                axiom: name.to_string(),
                residual: to_f64(residual),
            });
        }
    }
    if !axioms.is_irreflexive() {
        return Err(Error::GraphNotIrreflexive {
            residual: to_f64(axioms.irreflexive),
        });
    }

    let spec_a = eig_hermitian(g.adjacency(), tolerance)?;
    let (lap, signless) = laplacians(g);
    let spec_l = eig_hermitian(&lap, tolerance)?;
    let spec_q = eig_hermitian(&signless, tolerance)?;

    let tau = spec_a.threshold(tolerance);
    let lambda_max = spec_a.max();
    let lambda_min = spec_a.min();
    let (s_plus, s_minus) = spec_a.square_sums(tolerance);
    let inertia = spec_a.inertia(tolerance);
    let gamma_max = spec_q.max();
    let gamma_min = spec_q.min();
    let theta_max = spec_l.max();

    let p = projection_from_adjacency(g.shared_ctx(), g.adjacency())?;
    let dim_s: T = real(range_of_with_tolerance(&p, tolerance).dim() as f64);
    let dim_m: T = real(g.dim() as f64);

    let hoffman = Bound::ratio(lambda_max, lambda_min.abs(), tau);
    let edge_tau = tolerance * T::one().max(dim_s);
    let edge = Bound::ratio(dim_s, dim_s - dim_m * gamma_min, edge_tau);
    let sum_squares = if s_plus > tau * tau && s_minus > tau * tau {
        Bound {
            value: T::one() + (s_plus / s_minus).max(s_minus / s_plus),
            applicable: true,
        }
    } else {
        Bound::trivial()
    };
    let inertia_bound = if inertia.n_plus > 0 && inertia.n_minus > 0 {
        let (p, m) = (inertia.n_plus as f64, inertia.n_minus as f64);
        Bound {
            value: real::<T>(1.0 + (p / m).max(m / p)),
            applicable: true,
        }
    } else {
        Bound::trivial()
    };
    let lap_tau = tolerance * T::one().max(gamma_max).max(theta_max).max(lambda_max.abs());
    let laplacian = Bound::ratio(lambda_max, lambda_max - gamma_max + theta_max, lap_tau);

    let best = [hoffman, edge, sum_squares, inertia_bound, laplacian]
        .iter()
        .filter(|b| b.applicable)
        .fold(T::one(), |acc, b| acc.max(b.value));

    Ok(BoundsReport {
        tolerance,
        lambda_max,
        lambda_min,
        s_plus,
        s_minus,
        inertia,
        gamma_max,
        gamma_min,
        theta_max,
        edge_number_2m: dim_s,
        dim_m,
        hoffman,
        edge,
        sum_squares,
        inertia_bound,
        laplacian,
        best,
    })
}

/// Slacks of the two block-matrix inequalities behind the Hoffman and
/// sum-of-squares bounds. Each slack is nonnegative when the inequality holds.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockLemmaReport<T: Real> {
    /// `Σ λ_max(H_ii) − ((r − 1) λ_min(H) + λ_max(H))`.
    pub block_eigen_slack: T,
    /// `(r − 1) Tr(C²) − Tr(B²)` where `B − C` is the spectral split of `H`
    /// with its diagonal blocks removed.
    pub square_trace_slack: T,
    /// `(r − 1) Tr(B²) − Tr(C²)`, the same inequality with the roles swapped.
    pub square_trace_slack_swapped: T,
    /// `‖B C‖_F`, which vanishes for an exact spectral split.
    pub orthogonality_residual: T,
}

impl<T: Real> BlockLemmaReport<T> {
    pub fn min_slack(&self) -> T {
        self.block_eigen_slack
            .min(self.square_trace_slack)
            .min(self.square_trace_slack_swapped)
    }
}

/// Evaluates both block inequalities on `h` partitioned by `sizes`.
pub fn check_block_lemma<T: Real>(h: &CMatrix<T>, sizes: &[usize]) -> Result<BlockLemmaReport<T>> {
    let n = h.nrows();
    if h.ncols() != n {
        return Err(Error::shape("square matrix", format!("{}x{}", n, h.ncols())));
    }
    if sizes.is_empty() || sizes.contains(&0) || sizes.iter().sum::<usize>() != n {
        return Err(Error::BadPartition {
            sizes: sizes.to_vec(),
            size: n,
        });
    }
    let h = crate::linalg::hermitian_part(h);
    let r: T = real((sizes.len() - 1) as f64);

    let (values, _) = hermitian_eigen(&h);
    let lmax = values.first().copied().unwrap_or_else(T::zero);
    let lmin = values.last().copied().unwrap_or_else(T::zero);
    let mut diag_sum = T::zero();
    let mut hollow = h.clone();
    let mut off = 0;
    for &s in sizes {
        let block = h.view((off, off), (s, s)).into_owned();
        diag_sum += hermitian_eigen(&block).0[0];
        hollow.view_mut((off, off), (s, s)).fill(nalgebra::Complex::new(T::zero(), T::zero()));
        off += s;
    }
    let block_eigen_slack = diag_sum - (r * lmin + lmax);

    let (values, vectors) = hermitian_eigen(&hollow);
    let mut pos = CMatrix::<T>::zeros(n, n);
    let mut neg = CMatrix::<T>::zeros(n, n);
    for (i, &x) in values.iter().enumerate() {
        let v = vectors.column(i);
        let outer = v * v.adjoint();
        if x > T::zero() {
            pos += outer.scale(x);
        } else if x < T::zero() {
            neg += outer.scale(-x);
        }
    }
    let tb = frobenius(&pos).powi(2);
    let tc = frobenius(&neg).powi(2);
    Ok(BlockLemmaReport {
        block_eigen_slack,
        square_trace_slack: r * tc - tb,
        square_trace_slack_swapped: r * tb - tc,
        orthogonality_residual: frobenius(&(&pos * &neg)),
    })
}

impl<T: Real + fmt::Display> fmt::Display for BoundsReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, b) in self.bounds() {
            let note = if b.applicable { "" } else { "  (inapplicable)" };
            writeln!(f, "{name:<12} {}{note}", b.value)?;
        }
        write!(f, "{:<12} {}", "best", self.best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use std::sync::Arc;

    use crate::algebra::AlgebraContext;
    use crate::classical::ClassicalGraph;
    use crate::linalg::{commutator, identity, op_norm, trace};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(blocks: &[usize]) -> Arc<AlgebraContext<f64>> {
        Arc::new(AlgebraContext::from_blocks(blocks).unwrap())
    }

    fn close(xs: &[f64], ys: &[f64], tol: f64) {
        assert_eq!(xs.len(), ys.len());
        for (x, y) in xs.iter().zip(ys) {
            assert!((x - y).abs() < tol, "{xs:?} vs {ys:?}");
        }
    }

    fn classical(g: &ClassicalGraph) -> QuantumGraph<f64> {
        QuantumGraph::from_classical(g).unwrap()
    }

    #[test]
    fn eig_examples() {
        let k4 = classical(&ClassicalGraph::complete(4));
        let s = eig_hermitian(k4.adjacency(), 1e-9).unwrap();
        close(s.eigenvalues(), &[3.0, -1.0, -1.0, -1.0], 1e-9);

        let zero = eig_hermitian(&CMatrix::<f64>::zeros(3, 3), 1e-9).unwrap();
        close(zero.eigenvalues(), &[0.0; 3], 1e-15);

        let p3 = classical(&ClassicalGraph::path(3));
        let r2 = 2f64.sqrt();
        close(eig_hermitian(p3.adjacency(), 1e-9).unwrap().eigenvalues(), &[r2, 0.0, -r2], 1e-12);

        let mut bad = CMatrix::<f64>::zeros(2, 2);
        bad[(0, 1)] = nalgebra::Complex::new(1.0, 0.0);
        assert!(matches!(eig_hermitian(&bad, 1e-9), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn complete_ctx2_spectra_and_bounds() {
        let g = QuantumGraph::complete(ctx(&[2]), false);
        let (l, q) = laplacians(&g);
        close(eig_hermitian(g.adjacency(), 1e-9).unwrap().eigenvalues(), &[3.0, -1.0, -1.0, -1.0], 1e-9);
        close(eig_hermitian(&q, 1e-9).unwrap().eigenvalues(), &[6.0, 2.0, 2.0, 2.0], 1e-9);
        close(eig_hermitian(&l, 1e-9).unwrap().eigenvalues(), &[4.0, 4.0, 4.0, 0.0], 1e-9);

        let d = degree_matrix(&g);
        assert!(op_norm(&(d.clone() - identity::<f64>(4).scale(3.0))) < 1e-9);
        assert!((trace(&d).re - 12.0).abs() < 1e-9);

        let r = all_bounds(&g).unwrap();
        assert!((r.lambda_max - 3.0).abs() < 1e-9);
        assert!((r.lambda_min + 1.0).abs() < 1e-9);
        assert!((r.s_plus - 9.0).abs() < 1e-9);
        assert!((r.s_minus - 3.0).abs() < 1e-9);
        assert_eq!(r.inertia, Inertia { n_plus: 1, n_zero: 0, n_minus: 3 });
        assert!((r.gamma_max - 6.0).abs() < 1e-9);
        assert!((r.gamma_min - 2.0).abs() < 1e-9);
        assert!((r.theta_max - 4.0).abs() < 1e-9);
        assert!((r.edge_number_2m - 12.0).abs() < 1e-9);
        for (name, b) in r.bounds() {
            assert!(b.applicable, "{name}");
            assert!((b.value - 4.0).abs() < 1e-6, "{name} = {}", b.value);
        }
        assert!((r.best - 4.0).abs() < 1e-6);
    }

    #[test]
    fn empty_graph_bounds_are_trivial() {
        for blocks in [&[1usize][..], &[2], &[1, 2]] {
            let g = QuantumGraph::empty(ctx(blocks));
            let r = all_bounds(&g).unwrap();
            for (name, b) in r.bounds() {
                assert_eq!(b.value, 1.0, "{name}");
                assert!(!b.applicable, "{name}");
            }
            assert_eq!(r.best, 1.0);
            assert_eq!(op_norm(&degree_matrix(&g)), 0.0);
            let (l, q) = laplacians(&g);
            assert_eq!(op_norm(&l) + op_norm(&q), 0.0);
        }
    }

    #[test]
    fn five_cycle_against_closed_form() {
        // Circulant oracle: eigenvalues of C5 are 2cos(2πk/5).
        let lam: Vec<f64> = (0..5).map(|k| 2.0 * (2.0 * PI * k as f64 / 5.0).cos()).collect();
        let lmax = lam.iter().cloned().fold(f64::MIN, f64::max);
        let lmin = lam.iter().cloned().fold(f64::MAX, f64::min);
        let sp: f64 = lam.iter().filter(|&&x| x > 1e-12).map(|x| x * x).sum();
        let sm: f64 = lam.iter().filter(|&&x| x < -1e-12).map(|x| x * x).sum();
        let gmin = lam.iter().map(|x| 2.0 + x).fold(f64::MAX, f64::min);
        let gmax = lam.iter().map(|x| 2.0 + x).fold(f64::MIN, f64::max);
        let tmax = lam.iter().map(|x| 2.0 - x).fold(f64::MIN, f64::max);

        let g = classical(&ClassicalGraph::cycle(5));
        let d = degree_matrix(&g);
        assert!(op_norm(&(d.clone() - identity::<f64>(5).scale(2.0))) < 1e-12);
        assert!((trace(&d).re - 10.0).abs() < 1e-9);

        let r = all_bounds(&g).unwrap();
        let hoffman = 1.0 + lmax / lmin.abs();
        assert!((hoffman - (1.0 + 2.0 / (2.0 * (PI / 5.0).cos()))).abs() < 1e-12);
        assert!((r.hoffman.value - hoffman).abs() < 1e-9);
        assert!((r.edge.value - (1.0 + 10.0 / (10.0 - 5.0 * gmin))).abs() < 1e-9);
        assert!((r.sum_squares.value - (1.0 + (sp / sm).max(sm / sp))).abs() < 1e-9);
        assert_eq!(r.inertia, Inertia { n_plus: 3, n_zero: 0, n_minus: 2 });
        assert!((r.inertia_bound.value - 2.5).abs() < 1e-12);
        assert!((r.laplacian.value - (1.0 + lmax / (lmax - gmax + tmax))).abs() < 1e-9);
        assert!(r.best.ceil() <= 3.0);
    }

    #[test]
    fn degree_matrix_is_in_commutant_and_traces_to_dim_s() {
        for blocks in [&[2usize][..], &[1, 1, 2], &[3]] {
            let c = ctx(blocks);
            let g = QuantumGraph::complete(c.clone(), false);
            let d = degree_matrix(&g);
            for l in c.left_basis_ops() {
                assert!(op_norm(&commutator(&d, &l)) < 1e-9);
            }
            let r = all_bounds(&g).unwrap();
            assert!((trace(&d).re - r.edge_number_2m).abs() < 1e-9);
            let (l, _) = laplacians(&g);
            assert!((&l * c.unit_gns()).norm() < 1e-9);
        }
    }

    #[test]
    fn reflexive_graph_is_rejected() {
        let g = QuantumGraph::complete(ctx(&[2]), true);
        assert!(matches!(all_bounds(&g), Err(Error::GraphNotIrreflexive { .. })));
    }

    #[test]
    fn block_lemma_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = CMatrix::<f64>::from_fn(4, 4, |_, _| {
                nalgebra::Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            let h = &m + m.adjoint();
            let rep = check_block_lemma(&h, &[2, 2]).unwrap();
            assert!(rep.min_slack() >= -1e-9, "{rep:?}");
            assert!(rep.orthogonality_residual < 1e-9);
            // One block: equality in the eigenvalue inequality.
            let one = check_block_lemma(&h, &[4]).unwrap();
            assert!(one.block_eigen_slack.abs() < 1e-9);
        }
        let h = CMatrix::<f64>::identity(3, 3);
        assert!(matches!(check_block_lemma(&h, &[2, 2]), Err(Error::BadPartition { .. })));
        assert!(matches!(check_block_lemma(&h, &[3, 0]), Err(Error::BadPartition { .. })));
    }

    #[test]
    fn f32_bounds_smoke() {
        let c = Arc::new(AlgebraContext::<f32>::from_blocks(&[2]).unwrap());
        let g = QuantumGraph::complete(c, false);
        let r = all_bounds(&g).unwrap();
        assert!((r.best - 4.0).abs() < 1e-3);
    }
}
