//! Quantum colorings.
//!
//! A `c`-coloring of a quantum graph `S ⊆ B(L²(M))` with auxiliary algebra
//! `N = M_h` is a family of projections `P_1, …, P_c ∈ M ⊗ M_h` with
//! `Σ P_a = I` and `P_a (X ⊗ I_h) P_a = 0` for every `X ∈ S`. Operators on
//! `L²(M) ⊗ ℂ^h` use `L²(M)` as the outer tensor factor, so GNS index `g`
//! and auxiliary index `t` combine to `g·h + t`.
//!
//! Membership in `M ⊗ M_h` is tested as commutation with `M′ ⊗ I_h`, which
//! is its commutant.

use std::sync::Arc;

use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraContext;
use crate::classical::ClassicalGraph;
use crate::linalg::{adjoint, commutator, identity, kron, op_norm, zeros};
use crate::qgraph::QuantumGraph;
use crate::translate::OperatorSubspace;
use crate::{cplx, real, to_f64, CMatrix, Error, Real, Result};

/// Largest graph accepted by [`classical_chromatic`].
pub const CHROMATIC_CAP: usize = 20;

/// Projections `P_a` on `L²(M) ⊗ ℂ^h`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoringCertificate<T: Real> {
    aux_dim: usize,
    projections: Vec<CMatrix<T>>,
}

impl<T: Real> ColoringCertificate<T> {
    /// Checks only that the shapes agree; validity is the verifier's job.
    pub fn new(aux_dim: usize, projections: Vec<CMatrix<T>>) -> Result<Self> {
        if aux_dim == 0 {
            return Err(Error::shape("auxiliary dimension >= 1", 0));
        }
        if projections.is_empty() {
            return Err(Error::shape("at least one projection", 0));
        }
        let size = projections[0].nrows();
        if !size.is_multiple_of(aux_dim) {
            return Err(Error::shape(format!("size divisible by {aux_dim}"), size));
        }
        for p in &projections {
            if p.nrows() != size || p.ncols() != size {
                return Err(Error::shape(
                    format!("{size}x{size}"),
                    format!("{}x{}", p.nrows(), p.ncols()),
                ));
            }
        }
        Ok(Self {
            aux_dim,
            projections,
        })
    }

    pub fn colors(&self) -> usize {
        self.projections.len()
    }

    pub fn aux_dim(&self) -> usize {
        self.aux_dim
    }

    pub fn projections(&self) -> &[CMatrix<T>] {
        &self.projections
    }

    pub fn projections_mut(&mut self) -> &mut [CMatrix<T>] {
        &mut self.projections
    }

    /// `dim M · h`.
    pub fn size(&self) -> usize {
        self.projections[0].nrows()
    }
}

/// Residuals of the two pinching identities.
#[derive(Clone, Debug, PartialEq)]
pub struct PinchingReport<T: Real> {
    /// `‖Σ P_k (A ⊗ I) P_k‖`.
    pub adjacency: T,
    /// `max_E ‖Σ P_k (E ⊗ I) P_k − E ⊗ I‖` over a basis of `M′`.
    pub commutant: T,
    /// `max_k ‖P_k (A ⊗ I) P_k‖`: every diagonal block of `A ⊗ I` vanishes.
    pub diagonal_blocks: T,
}

/// Residuals of the twirling identities for `U = Σ ωˡ P_l`, `ω = e^{2πi/c}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwirlingReport<T: Real> {
    /// `‖U U† − I‖`.
    pub unitary: T,
    /// `‖U^c − I‖`.
    pub order: T,
    /// `‖Σ_k U^k (A ⊗ I) U^{-k}‖`.
    pub adjacency: T,
    /// `max_E ‖Σ_k U^k (E ⊗ I) U^{-k} − c (E ⊗ I)‖` over a basis of `M′`.
    pub commutant: T,
    /// `max_X ‖Σ_k U^k (X ⊗ I) U^{-k} − c Σ_k P_k (X ⊗ I) P_k‖` over random `X`.
    pub probes: T,
}

/// Residuals of a certificate check. Per-color lists are indexed by color.
#[derive(Clone, Debug, PartialEq)]
pub struct CertReport<T: Real> {
    pub tolerance: T,
    pub idempotent: Vec<T>,
    pub self_adjoint: Vec<T>,
    pub sum_to_identity: T,
    pub membership: Vec<T>,
    /// `annihilation[a][j] = ‖P_a (X_j ⊗ I) P_a‖` for basis element `X_j` of `S`.
    pub annihilation: Vec<Vec<T>>,
    pub pinching: Option<PinchingReport<T>>,
    pub twirling: Option<TwirlingReport<T>>,
}

impl<T: Real> CertReport<T> {
    /// Largest residual across every check that was run.
    pub fn worst(&self) -> T {
        let mut all: Vec<T> = Vec::new();
        all.extend(&self.idempotent);
        all.extend(&self.self_adjoint);
        all.push(self.sum_to_identity);
        all.extend(&self.membership);
        for row in &self.annihilation {
            all.extend(row);
        }
        if let Some(p) = &self.pinching {
            all.extend([p.adjacency, p.commutant, p.diagonal_blocks]);
        }
        if let Some(t) = &self.twirling {
            all.extend([t.unitary, t.order, t.adjacency, t.commutant, t.probes]);
        }
        all.into_iter().fold(T::zero(), |acc, x| acc.max(x))
    }

    /// True iff every residual is below the tolerance.
    pub fn verdict(&self) -> bool {
        self.worst() < self.tolerance
    }

    /// Largest annihilation residual for color `a`.
    pub fn annihilation_max(&self, a: usize) -> T {
        self.annihilation[a]
            .iter()
            .fold(T::zero(), |acc, &x| acc.max(x))
    }
}

fn check_cert_shape<T: Real>(ctx: &AlgebraContext<T>, cert: &ColoringCertificate<T>) -> Result<()> {
    let expected = ctx.dim() * cert.aux_dim();
    if cert.size() != expected {
        return Err(Error::shape(format!("{expected}x{expected}"), format!("{0}x{0}", cert.size())));
    }
    Ok(())
}

fn lift<T: Real>(x: &CMatrix<T>, h: usize) -> CMatrix<T> {
    kron(x, &identity::<T>(h))
}

/// Checks the coloring conditions against the orthonormal basis of `S`.
pub fn verify_certificate<T: Real>(
    g: &QuantumGraph<T>,
    s: &OperatorSubspace<T>,
    cert: &ColoringCertificate<T>,
) -> Result<CertReport<T>> {
    verify_certificate_with_tolerance(g, s, cert, g.axioms().tolerance)
}

pub fn verify_certificate_with_tolerance<T: Real>(
    g: &QuantumGraph<T>,
    s: &OperatorSubspace<T>,
    cert: &ColoringCertificate<T>,
    tolerance: T,
) -> Result<CertReport<T>> {
    if s.ctx().spec() != g.ctx().spec() {
        return Err(Error::shape(g.ctx().spec(), s.ctx().spec()));
    }
    verify_against(g.ctx(), s.basis(), cert, tolerance)
}

/// Like [`verify_certificate`] but against an arbitrary list of operators,
/// which need not span a bimodule.
pub fn verify_against<T: Real>(
    ctx: &AlgebraContext<T>,
    operators: &[CMatrix<T>],
    cert: &ColoringCertificate<T>,
    tolerance: T,
) -> Result<CertReport<T>> {
    check_cert_shape(ctx, cert)?;
    for x in operators {
        ctx.check_operator(x)?;
    }
    let h = cert.aux_dim();
    let size = cert.size();
    let lifted_comm: Vec<CMatrix<T>> = ctx.commutant_basis().iter().map(|e| lift(e, h)).collect();
    let lifted_s: Vec<CMatrix<T>> = operators.iter().map(|x| lift(x, h)).collect();

    let mut idempotent = Vec::new();
    let mut self_adjoint = Vec::new();
    let mut membership = Vec::new();
    let mut annihilation = Vec::new();
    let mut total = zeros::<T>(size, size);
    for p in cert.projections() {
        idempotent.push(op_norm(&(p * p - p)));
        self_adjoint.push(op_norm(&(p - adjoint(p))));
        membership.push(
            lifted_comm
                .iter()
                .map(|e| op_norm(&commutator(p, e)))
                .fold(T::zero(), |acc, x| acc.max(x)),
        );
        annihilation.push(lifted_s.iter().map(|x| op_norm(&(p * x * p))).collect());
        total += p;
    }
    Ok(CertReport {
        tolerance,
        idempotent,
        self_adjoint,
        sum_to_identity: op_norm(&(total - identity::<T>(size))),
        membership,
        annihilation,
        pinching: None,
        twirling: None,
    })
}

/// Verification plus the pinching and twirling residuals.
pub fn verify_with_lemmas<T: Real>(
    g: &QuantumGraph<T>,
    s: &OperatorSubspace<T>,
    cert: &ColoringCertificate<T>,
    seed: u64,
) -> Result<CertReport<T>> {
    let mut report = verify_certificate(g, s, cert)?;
    report.pinching = Some(check_pinching(g, cert)?);
    report.twirling = Some(check_twirling(g, cert, seed)?);
    Ok(report)
}

fn pinch<T: Real>(cert: &ColoringCertificate<T>, y: &CMatrix<T>) -> CMatrix<T> {
    let mut out = zeros::<T>(y.nrows(), y.ncols());
    for p in cert.projections() {
        out += p * y * p;
    }
    out
}

pub fn check_pinching<T: Real>(
    g: &QuantumGraph<T>,
    cert: &ColoringCertificate<T>,
) -> Result<PinchingReport<T>> {
    check_cert_shape(g.ctx(), cert)?;
    let h = cert.aux_dim();
    let a = lift(g.adjacency(), h);
    let commutant = g
        .ctx()
        .commutant_basis()
        .iter()
        .map(|e| {
            let e = lift(e, h);
            op_norm(&(pinch(cert, &e) - e))
        })
        .fold(T::zero(), |acc, x| acc.max(x));
    let diagonal_blocks = cert
        .projections()
        .iter()
        .map(|p| op_norm(&(p * &a * p)))
        .fold(T::zero(), |acc, x| acc.max(x));
    Ok(PinchingReport {
        adjacency: op_norm(&pinch(cert, &a)),
        commutant,
        diagonal_blocks,
    })
}

/// `U = Σ_l ω^l P_l` with `ω = e^{2πi/c}`.
pub fn twirl_unitary<T: Real>(cert: &ColoringCertificate<T>) -> CMatrix<T> {
    let c = cert.colors();
    let size = cert.size();
    let mut u = zeros::<T>(size, size);
    for (l, p) in cert.projections().iter().enumerate() {
        let angle = 2.0 * std::f64::consts::PI * l as f64 / c as f64;
        u += p * cplx::<T>(angle.cos(), angle.sin());
    }
    u
}

pub fn check_twirling<T: Real>(
    g: &QuantumGraph<T>,
    cert: &ColoringCertificate<T>,
    seed: u64,
) -> Result<TwirlingReport<T>> {
    check_cert_shape(g.ctx(), cert)?;
    let h = cert.aux_dim();
    let c = cert.colors();
    let size = cert.size();
    let id = identity::<T>(size);
    let u = twirl_unitary(cert);
    let u_adj = adjoint(&u);
    let powers: Vec<(CMatrix<T>, CMatrix<T>)> = {
        let mut out = Vec::with_capacity(c);
        let (mut uk, mut uk_adj) = (id.clone(), id.clone());
        for _ in 0..c {
            out.push((uk.clone(), uk_adj.clone()));
            uk = &uk * &u;
            uk_adj = &u_adj * &uk_adj;
        }
        out
    };
    let u_c = powers
        .last()
        .map(|(uk, _)| uk * &u)
        .unwrap_or_else(|| id.clone());
    let twirl = |y: &CMatrix<T>| {
        let mut out = zeros::<T>(size, size);
        for (uk, uk_adj) in &powers {
            out += uk * y * uk_adj;
        }
        out
    };
    let cf: T = real(c as f64);

    let a = lift(g.adjacency(), h);
    let commutant = g
        .ctx()
        .commutant_basis()
        .iter()
        .map(|e| {
            let e = lift(e, h);
            op_norm(&(twirl(&e) - e.scale(cf)))
        })
        .fold(T::zero(), |acc, x| acc.max(x));

    let d = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probes = T::zero();
    for _ in 0..4 {
        let x = CMatrix::<T>::from_fn(d, d, |_, _| {
            cplx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let x = lift(&x, h);
        probes = probes.max(op_norm(&(twirl(&x) - pinch(cert, &x).scale(cf))));
    }

    Ok(TwirlingReport {
        unitary: op_norm(&(&u * &u_adj - &id)),
        order: op_norm(&(u_c - &id)),
        adjacency: op_norm(&twirl(&a)),
        commutant,
        probes,
    })
}

/// Exact chromatic number by DSATUR branch and bound.
pub fn classical_chromatic(g: &ClassicalGraph) -> Result<usize> {
    Ok(optimal_coloring(g)?.iter().map(|&c| c + 1).max().unwrap_or(0))
}

/// A proper coloring with the minimum number of colors, labelled `0..χ`.
pub fn optimal_coloring(g: &ClassicalGraph) -> Result<Vec<usize>> {
    let n = g.order();
    if n > CHROMATIC_CAP {
        return Err(Error::TooLarge {
            n,
            cap: CHROMATIC_CAP,
        });
    }
    let nbrs: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u)))
        .collect();
    let mut search = Dsatur {
        nbrs: &nbrs,
        colors: vec![usize::MAX; n],
        best: greedy_dsatur(&nbrs),
        lower: max_clique(&nbrs),
    };
    let best_count = count_colors(&search.best);
    if best_count > search.lower {
        search.branch(0, 0, best_count);
    }
    Ok(search.best)
}

fn count_colors(colors: &[usize]) -> usize {
    colors.iter().map(|&c| c + 1).max().unwrap_or(0)
}

/// Vertex with the most distinct neighbor colors; ties go to higher degree,
/// then lower index.
fn pick_vertex(nbrs: &[u32], colors: &[usize]) -> Option<usize> {
    let mut best: Option<(usize, u32, usize)> = None;
    for v in 0..nbrs.len() {
        if colors[v] != usize::MAX {
            continue;
        }
        let mut seen = 0u32;
        let mut m = nbrs[v];
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            if colors[u] != usize::MAX {
                seen |= 1 << colors[u];
            }
        }
        let key = (seen.count_ones() as usize, nbrs[v].count_ones(), v);
        let better = match best {
            None => true,
            Some((s, d, _)) => (key.0, key.1) > (s, d),
        };
        if better {
            best = Some(key);
        }
    }
    best.map(|(_, _, v)| v)
}

fn color_is_free(nbrs: &[u32], colors: &[usize], v: usize, c: usize) -> bool {
    let mut m = nbrs[v];
    while m != 0 {
        let u = m.trailing_zeros() as usize;
        m &= m - 1;
        if colors[u] == c {
            return false;
        }
    }
    true
}

fn greedy_dsatur(nbrs: &[u32]) -> Vec<usize> {
    let mut colors = vec![usize::MAX; nbrs.len()];
    while let Some(v) = pick_vertex(nbrs, &colors) {
        colors[v] = (0..).find(|&c| color_is_free(nbrs, &colors, v, c)).unwrap();
    }
    colors
}

fn max_clique(nbrs: &[u32]) -> usize {
    fn grow(nbrs: &[u32], candidates: u32, size: usize, best: &mut usize) {
        if candidates == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + candidates.count_ones() as usize <= *best {
            return;
        }
        let mut rest = candidates;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow(nbrs, rest & nbrs[v], size + 1, best);
        }
    }
    let n = nbrs.len();
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best = 0;
    grow(nbrs, all, 0, &mut best);
    best
}

struct Dsatur<'a> {
    nbrs: &'a [u32],
    colors: Vec<usize>,
    best: Vec<usize>,
    lower: usize,
}

impl Dsatur<'_> {
    /// Returns true once a coloring meeting the clique lower bound is found.
    fn branch(&mut self, colored: usize, used: usize, mut best_count: usize) -> bool {
        if colored == self.nbrs.len() {
            self.best = self.colors.clone();
            return used <= self.lower;
        }
        let v = pick_vertex(self.nbrs, &self.colors).expect("uncolored vertex remains");
        for c in 0..(used + 1).min(best_count - 1) {
            if !color_is_free(self.nbrs, &self.colors, v, c) {
                continue;
            }
            self.colors[v] = c;
            if self.branch(colored + 1, used.max(c + 1), best_count) {
                self.colors[v] = usize::MAX;
                return true;
            }
            best_count = best_count.min(count_colors(&self.best));
            self.colors[v] = usize::MAX;
        }
        false
    }
}

/// `P_a = Σ_{v : colors[v] = a} e_vv` with `h = 1`; colors are `0..c`.
pub fn cert_from_classical_coloring<T: Real>(
    g: &ClassicalGraph,
    colors: &[usize],
) -> Result<ColoringCertificate<T>> {
    let n = g.order();
    if colors.len() != n {
        return Err(Error::ColoringLength {
            expected: n,
            found: colors.len(),
        });
    }
    if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| colors[u] == colors[v]) {
        return Err(Error::ImproperColoring {
            u,
            v,
            color: colors[u],
        });
    }
    let c = count_colors(colors).max(1);
    let mut projections = vec![zeros::<T>(n, n); c];
    for (v, &a) in colors.iter().enumerate() {
        projections[a][(v, v)] = cplx(1.0, 0.0);
    }
    ColoringCertificate::new(1, projections)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least common multiple of the block sizes: the smallest auxiliary
/// dimension for which [`cert_for_complete`] has a construction.
pub fn complete_aux_dim(ctx: &AlgebraContext<impl Real>) -> usize {
    ctx.spec().blocks().iter().fold(1, |acc, &n| acc / gcd(acc, n) * n)
}

/// A `dim M`-coloring of the irreflexive complete quantum graph, with
/// `h = lcm(n_i)`.
pub fn cert_for_complete<T: Real>(ctx: Arc<AlgebraContext<T>>) -> Result<ColoringCertificate<T>> {
    let h = complete_aux_dim(&ctx);
    cert_for_complete_with_aux(ctx, h)
}

/// As [`cert_for_complete`] with auxiliary dimension `h`, a multiple of
/// every block size.
///
/// Colors come in one group per block `M_n`, indexed by the `n²` shift and
/// clock unitaries `U = X^α Z^β`. Splitting `ℂ^h` into `h/n` copies of
/// `ℂ^n`, the color `(α, β)` is the sum over copies of the projection onto
/// the maximally entangled vector `(U ⊗ I)Ω` between the row index of the
/// block and that copy, tensored with the identity on the column index.
/// Such a projection compresses `Y ⊗ I_h` to `Tr(Y)/n` times itself, which
/// kills everything orthogonal to `M′`.
pub fn cert_for_complete_with_aux<T: Real>(
    ctx: Arc<AlgebraContext<T>>,
    h: usize,
) -> Result<ColoringCertificate<T>> {
    let blocks = ctx.spec().blocks().to_vec();
    if h == 0 || blocks.iter().any(|&n| !h.is_multiple_of(n)) {
        return Err(Error::shape(format!("a multiple of {}", complete_aux_dim(&ctx)), h));
    }
    let size = ctx.dim() * h;
    let mut projections = Vec::with_capacity(ctx.dim());
    for (block, &n) in blocks.iter().enumerate() {
        let inv_n = 1.0 / n as f64;
        for alpha in 0..n {
            for beta in 0..n {
                // U e_p = ω^{βp} e_{p+α}
                let u = |j: usize, p: usize| -> Complex<f64> {
                    if j != (p + alpha) % n {
                        return Complex::new(0.0, 0.0);
                    }
                    let angle = 2.0 * std::f64::consts::PI * (beta * p) as f64 / n as f64;
                    Complex::new(angle.cos(), angle.sin())
                };
                let mut proj = zeros::<T>(size, size);
                for r in 0..h / n {
                    for k in 0..n {
                        for j in 0..n {
                            for p in 0..n {
                                let row = ctx.gns_position(block, j, k) * h + r * n + p;
                                for j2 in 0..n {
                                    for p2 in 0..n {
                                        let col = ctx.gns_position(block, j2, k) * h + r * n + p2;
                                        let z = u(j, p) * u(j2, p2).conj() * inv_n;
                                        proj[(row, col)] = cplx(z.re, z.im);
                                    }
                                }
                            }
                        }
                    }
                }
                projections.push(proj);
            }
        }
    }
    let cert = ColoringCertificate::new(h, projections)?;

    let g = QuantumGraph::complete(Arc::clone(&ctx), false);
    let s = crate::translate::range_of(&crate::translate::projection_from_adjacency(
        Arc::clone(&ctx),
        g.adjacency(),
    )?);
    let report = verify_certificate(&g, &s, &cert)?;
    if !report.verdict() {
        return Err(Error::ConstructionFailed {
            residual: to_f64(report.worst()),
        });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;
    use crate::translate::{projection_from_adjacency, range_of};

    fn setup(g: &ClassicalGraph) -> (QuantumGraph<f64>, OperatorSubspace<f64>) {
        let q = QuantumGraph::from_classical(g).unwrap();
        let s = range_of(&projection_from_adjacency(q.shared_ctx(), q.adjacency()).unwrap());
        (q, s)
    }

    fn complete_setup(blocks: &[usize]) -> (QuantumGraph<f64>, OperatorSubspace<f64>) {
        let ctx = Arc::new(AlgebraContext::from_blocks(blocks).unwrap());
        let q = QuantumGraph::complete(ctx.clone(), false);
        let s = range_of(&projection_from_adjacency(ctx, q.adjacency()).unwrap());
        (q, s)
    }

    #[test]
    fn triangle_three_coloring_verifies() {
        let k3 = ClassicalGraph::complete(3);
        let (g, s) = setup(&k3);
        let cert = cert_from_classical_coloring(&k3, &[0, 1, 2]).unwrap();
        assert_eq!(cert.colors(), 3);
        assert_eq!(cert.aux_dim(), 1);
        let rep = verify_with_lemmas(&g, &s, &cert, 0).unwrap();
        assert!(rep.verdict(), "{rep:?}");
        let tw = rep.twirling.unwrap();
        assert!(tw.unitary < 1e-12 && tw.order < 1e-12 && tw.adjacency < 1e-12 && tw.probes < 1e-12);
    }

    #[test]
    fn triangle_has_no_two_coloring_with_trivial_aux() {
        // With h = 1 membership forces diagonal 0/1 projections, so the
        // search over vertex assignments is exhaustive.
        let k3 = ClassicalGraph::complete(3);
        let (g, s) = setup(&k3);
        for mask in 0u32..8 {
            let mut p0 = zeros::<f64>(3, 3);
            let mut p1 = zeros::<f64>(3, 3);
            for v in 0..3 {
                let target = if mask & (1 << v) != 0 { &mut p0 } else { &mut p1 };
                target[(v, v)] = cplx(1.0, 0.0);
            }
            let cert = ColoringCertificate::new(1, vec![p0, p1]).unwrap();
            assert!(!verify_certificate(&g, &s, &cert).unwrap().verdict());
        }
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(classical_chromatic(&ClassicalGraph::cycle(5)).unwrap(), 3);
        assert_eq!(classical_chromatic(&ClassicalGraph::cycle(6)).unwrap(), 2);
        assert_eq!(classical_chromatic(&ClassicalGraph::complete(4)).unwrap(), 4);
        assert_eq!(classical_chromatic(&ClassicalGraph::petersen()).unwrap(), 3);
        assert_eq!(classical_chromatic(&ClassicalGraph::empty(4)).unwrap(), 1);
        assert_eq!(classical_chromatic(&ClassicalGraph::empty(0)).unwrap(), 0);
        assert!(matches!(
            classical_chromatic(&ClassicalGraph::empty(21)),
            Err(Error::TooLarge { n: 21, cap: 20 })
        ));
        // Grötzsch graph: triangle-free with χ = 4.
        let mut grotzsch = ClassicalGraph::empty(11);
        for i in 0..5 {
            grotzsch.add_edge(i, (i + 1) % 5);
            grotzsch.add_edge(5 + i, (i + 1) % 5);
            grotzsch.add_edge(5 + i, (i + 4) % 5);
            grotzsch.add_edge(10, 5 + i);
        }
        assert_eq!(classical_chromatic(&grotzsch).unwrap(), 4);
    }

    #[test]
    fn optimal_coloring_matches_exhaustive_search() {
        fn brute(g: &ClassicalGraph) -> usize {
            let n = g.order();
            (1..=n.max(1))
                .find(|&k| {
                    (0..k.pow(n as u32)).any(|code| {
                        let colors: Vec<usize> = (0..n).map(|v| code / k.pow(v as u32) % k).collect();
                        g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
                    })
                })
                .unwrap()
        }
        for n in 1..=6 {
            for g in ClassicalGraph::all_nonisomorphic(n) {
                let colors = optimal_coloring(&g).unwrap();
                assert!(g.edges().iter().all(|&(u, v)| colors[u] != colors[v]));
                assert_eq!(count_colors(&colors), brute(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn classical_certificates() {
        let k2 = ClassicalGraph::complete(2);
        let cert = cert_from_classical_coloring::<f64>(&k2, &[0, 1]).unwrap();
        assert_eq!(cert.projections()[0][(0, 0)].re, 1.0);
        assert_eq!(cert.projections()[1][(1, 1)].re, 1.0);

        let c5 = ClassicalGraph::cycle(5);
        let (g, s) = setup(&c5);
        let cert = cert_from_classical_coloring(&c5, &optimal_coloring(&c5).unwrap()).unwrap();
        assert_eq!(cert.colors(), 3);
        assert!(verify_with_lemmas(&g, &s, &cert, 1).unwrap().verdict());

        assert!(matches!(
            cert_from_classical_coloring::<f64>(&c5, &[0, 1, 0, 1, 1]),
            Err(Error::ImproperColoring { u: 3, v: 4, color: 1 })
        ));
        assert!(matches!(
            cert_from_classical_coloring::<f64>(&c5, &[0, 1]),
            Err(Error::ColoringLength { .. })
        ));
    }

    #[test]
    fn petersen_pinching_and_perturbation() {
        let p = ClassicalGraph::petersen();
        let (g, s) = setup(&p);
        let mut cert = cert_from_classical_coloring(&p, &optimal_coloring(&p).unwrap()).unwrap();
        assert!(verify_certificate(&g, &s, &cert).unwrap().verdict());
        let pin = check_pinching(&g, &cert).unwrap();
        assert!(pin.adjacency < 1e-12 && pin.commutant < 1e-12 && pin.diagonal_blocks < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let noise = CMatrix::<f64>::from_fn(10, 10, |_, _| cplx(rng.random_range(-1.0..1.0), 0.0));
        cert.projections_mut()[0] += (&noise + noise.transpose()).scale(0.5e-3);
        assert!(check_pinching(&g, &cert).unwrap().adjacency > 1e-4);
        assert!(!verify_certificate(&g, &s, &cert).unwrap().verdict());
    }

    #[test]
    fn empty_graph_single_color() {
        let g = QuantumGraph::<f64>::from_classical(&ClassicalGraph::empty(3)).unwrap();
        let s = range_of(&projection_from_adjacency(g.shared_ctx(), g.adjacency()).unwrap());
        assert_eq!(s.dim(), 0);
        let cert = ColoringCertificate::new(1, vec![identity::<f64>(3)]).unwrap();
        let rep = verify_with_lemmas(&g, &s, &cert, 0).unwrap();
        assert!(rep.verdict());
    }

    #[test]
    fn complete_certificates_verify() {
        for blocks in [&[1usize][..], &[2], &[1, 1, 2], &[3], &[2, 2], &[1, 2]] {
            let (g, s) = complete_setup(blocks);
            let cert = cert_for_complete(g.shared_ctx()).unwrap();
            assert_eq!(cert.colors(), g.dim());
            let rep = verify_with_lemmas(&g, &s, &cert, 5).unwrap();
            assert!(rep.verdict(), "{blocks:?}: worst {}", rep.worst());
        }
        let (g, s) = complete_setup(&[2]);
        let cert = cert_for_complete_with_aux(g.shared_ctx(), 4).unwrap();
        assert_eq!((cert.colors(), cert.aux_dim()), (4, 4));
        assert!(verify_certificate(&g, &s, &cert).unwrap().verdict());
        assert!(cert_for_complete_with_aux(g.shared_ctx(), 3).is_err());
    }

    #[test]
    fn all_ones_context_reduces_to_classical() {
        let (g, _) = complete_setup(&[1, 1, 1, 1]);
        let cert = cert_for_complete(g.shared_ctx()).unwrap();
        let classical = cert_from_classical_coloring::<f64>(&ClassicalGraph::complete(4), &[0, 1, 2, 3]).unwrap();
        assert_eq!(cert, classical);
        let lifted = cert_for_complete_with_aux(g.shared_ctx(), 4).unwrap();
        for (p, q) in lifted.projections().iter().zip(classical.projections()) {
            assert!(op_norm(&(p - lift(q, 4))) < 1e-15);
        }
    }

    #[test]
    fn removing_s_elements_keeps_certificates_valid() {
        let (g, s) = complete_setup(&[2]);
        let cert = cert_for_complete(g.shared_ctx()).unwrap();
        for keep in [0, 1, 5, s.dim() - 1] {
            let rep = verify_against(g.ctx(), &s.basis()[..keep], &cert, 1e-9).unwrap();
            assert!(rep.verdict());
        }
    }

    #[test]
    fn fewer_colors_than_dim_fail_for_complete() {
        // Merging two colors of a valid certificate breaks annihilation.
        let (g, s) = complete_setup(&[2]);
        let cert = cert_for_complete(g.shared_ctx()).unwrap();
        let mut ps = cert.projections().to_vec();
        let last = ps.pop().unwrap();
        ps[0] += last;
        let merged = ColoringCertificate::new(cert.aux_dim(), ps).unwrap();
        assert!(!verify_certificate(&g, &s, &merged).unwrap().verdict());
    }

    #[test]
    fn lifted_spectrum_scales_multiplicities() {
        let (g, _) = complete_setup(&[1, 2]);
        let base = hermitian_eigenvalues(g.adjacency());
        for h in 1..=3 {
            let lifted = hermitian_eigenvalues(&lift(g.adjacency(), h));
            let mut expected: Vec<f64> = base.iter().flat_map(|&x| std::iter::repeat_n(x, h)).collect();
            expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (x, y) in lifted.iter().zip(&expected) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn shape_errors() {
        let (g, s) = complete_setup(&[2]);
        let cert = ColoringCertificate::new(1, vec![identity::<f64>(3)]).unwrap();
        assert!(matches!(verify_certificate(&g, &s, &cert), Err(Error::ShapeMismatch { .. })));
        assert!(ColoringCertificate::new(2, vec![identity::<f64>(3)]).is_err());
        assert!(ColoringCertificate::<f64>::new(1, vec![]).is_err());
    }
}
