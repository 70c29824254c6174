//! Finite-dimensional C*-algebras `M = ⊕ M_{n_i}` with their tracial δ-form.
//!
//! The GNS space `L²(M, ψ)` is `M` with inner product `⟨x, y⟩ = ψ(y* x)`,
//! where `ψ = (1/dim M) ⊕ n_i Tr` is the Plancherel trace and `δ² = dim M`.
//!
//! Canonical GNS basis: blocks in order; inside block `i` the matrix units
//! `e_{jk}` in row-major order (`j` outer), each scaled by `√(dim M / n_i)`.
//! Tensor indices on `L²(M) ⊗ L²(M)` put the left factor outer, so basis
//! pair `(p, q)` sits at `p · dim + q`.

use nalgebra::{Complex, ComplexField};

use crate::linalg::zeros;
use crate::{real, CMatrix, CVector, Error, Real, Result};

/// Block sizes `(n_1, …, n_N)` of `M ≅ ⊕ M_{n_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    blocks: Vec<usize>,
    dim: usize,
}

impl AlgebraSpec {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptyBlocks);
        }
        if let Some(index) = blocks.iter().position(|&n| n == 0) {
            return Err(Error::ZeroBlock { index });
        }
        let dim = blocks.iter().map(|n| n * n).sum();
        Ok(Self { blocks, dim })
    }

    /// The commutative algebra `ℂⁿ` (functions on `n` points).
    pub fn classical(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    /// `dim M = Σ n_i²`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_classical(&self) -> bool {
        self.blocks.iter().all(|&n| n == 1)
    }

    /// Size of the block-diagonal representation, `Σ n_i`.
    pub fn matrix_size(&self) -> usize {
        self.blocks.iter().sum()
    }
}

impl std::fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An element `x = (x_1, …, x_N)` of `M`, one square complex matrix per block.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<T: Real> {
    blocks: Vec<CMatrix<T>>,
}

impl<T: Real> AlgebraElement<T> {
    pub fn new(blocks: Vec<CMatrix<T>>) -> Self {
        Self { blocks }
    }

    pub fn zeros(spec: &AlgebraSpec) -> Self {
        Self::new(spec.blocks().iter().map(|&n| zeros(n, n)).collect())
    }

    /// The unit `𝟙`.
    pub fn unit(spec: &AlgebraSpec) -> Self {
        Self::new(spec.blocks().iter().map(|&n| CMatrix::identity(n, n)).collect())
    }

    /// Matrix unit `e_{jk}` of block `block`.
    pub fn matrix_unit(spec: &AlgebraSpec, block: usize, row: usize, col: usize) -> Self {
        let mut x = Self::zeros(spec);
        x.blocks[block][(row, col)] = Complex::new(T::one(), T::zero());
        x
    }

    /// Diagonal element of a classical algebra.
    pub fn diagonal(values: &[Complex<T>]) -> Self {
        Self::new(values.iter().map(|&v| CMatrix::from_element(1, 1, v)).collect())
    }

    pub fn blocks(&self) -> &[CMatrix<T>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMatrix<T> {
        &self.blocks[i]
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.blocks.iter().map(|a| a * s).collect())
    }

    /// The involution `x ↦ x*` (blockwise conjugate transpose).
    pub fn adjoint(&self) -> Self {
        Self::new(self.blocks.iter().map(|a| a.adjoint()).collect())
    }

    /// Embeds `x` as a block-diagonal `Σ n_i × Σ n_i` matrix.
    pub fn to_block_diagonal(&self) -> CMatrix<T> {
        let size: usize = self.blocks.iter().map(|b| b.nrows()).sum();
        let mut out = zeros(size, size);
        let mut off = 0;
        for b in &self.blocks {
            let n = b.nrows();
            out.view_mut((off, off), (n, n)).copy_from(b);
            off += n;
        }
        out
    }

    pub fn distance(&self, other: &Self) -> T {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a - b).norm_squared())
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt()
    }
}

/// Position of a GNS basis vector: matrix unit `e_{row,col}` of `block`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GnsIndex {
    pub block: usize,
    pub row: usize,
    pub col: usize,
}

/// The quantum set `(M, ψ)` with everything derived from it.
///
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct AlgebraContext<T: Real> {
    spec: AlgebraSpec,
    delta_sq: T,
    offsets: Vec<usize>,
    scales: Vec<T>,
    index: Vec<GnsIndex>,
    m_matrix: CMatrix<T>,
    m_star_matrix: CMatrix<T>,
    // Nonzero entries of m grouped by output index: (left, right, coefficient).
    mult_terms: Vec<Vec<(usize, usize, T)>>,
    unit: CVector<T>,
}

impl<T: Real> AlgebraContext<T> {
    pub fn new(spec: AlgebraSpec) -> Self {
        let dim = spec.dim();
        let dim_t: T = real(dim as f64);
        let mut offsets = Vec::with_capacity(spec.blocks().len());
        let mut index = Vec::with_capacity(dim);
        let mut scales = Vec::with_capacity(spec.blocks().len());
        for (block, &n) in spec.blocks().iter().enumerate() {
            offsets.push(index.len());
            scales.push((dim_t / real(n as f64)).sqrt());
            for row in 0..n {
                for col in 0..n {
                    index.push(GnsIndex { block, row, col });
                }
            }
        }

        // b_{jk} b_{kl} = s e_{jl} s = s b_{jl} inside a block of scale s.
        let mut mult_terms = vec![Vec::new(); dim];
        let mut m_matrix = zeros(dim, dim * dim);
        for (block, &n) in spec.blocks().iter().enumerate() {
            let off = offsets[block];
            let s = scales[block];
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let left = off + j * n + k;
                        let right = off + k * n + l;
                        let out = off + j * n + l;
                        mult_terms[out].push((left, right, s));
                        m_matrix[(out, left * dim + right)] = Complex::new(s, T::zero());
                    }
                }
            }
        }
        let m_star_matrix = m_matrix.adjoint();

        let mut unit = CVector::zeros(dim);
        for (block, &n) in spec.blocks().iter().enumerate() {
            for j in 0..n {
                unit[offsets[block] + j * n + j] = Complex::new(T::one() / scales[block], T::zero());
            }
        }

        Self {
            spec,
            delta_sq: dim_t,
            offsets,
            scales,
            index,
            m_matrix,
            m_star_matrix,
            mult_terms,
            unit,
        }
    }

    pub fn from_blocks(blocks: &[usize]) -> Result<Self> {
        Ok(Self::new(AlgebraSpec::new(blocks.to_vec())?))
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    /// `δ² = dim M`.
    pub fn delta_sq(&self) -> T {
        self.delta_sq
    }

    /// Matrix of `m: L²(M) ⊗ L²(M) → L²(M)`, `dim × dim²`.
    pub fn m_matrix(&self) -> &CMatrix<T> {
        &self.m_matrix
    }

    /// Matrix of `m*`, `dim² × dim`.
    pub fn m_star_matrix(&self) -> &CMatrix<T> {
        &self.m_star_matrix
    }

    pub fn gns_index(&self, i: usize) -> GnsIndex {
        self.index[i]
    }

    pub fn gns_position(&self, block: usize, row: usize, col: usize) -> usize {
        self.offsets[block] + row * self.spec.blocks()[block] + col
    }

    /// Scale factor `√(dim M / n_i)` of the basis vectors in block `i`.
    pub fn block_scale(&self, block: usize) -> T {
        self.scales[block]
    }

    /// GNS vector of the unit `𝟙`.
    pub fn unit_gns(&self) -> &CVector<T> {
        &self.unit
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement<T> {
        let g = self.index[i];
        AlgebraElement::matrix_unit(&self.spec, g.block, g.row, g.col)
            .scale(Complex::new(self.scales[g.block], T::zero()))
    }

    pub fn check_element(&self, x: &AlgebraElement<T>) -> Result<()> {
        let blocks = self.spec.blocks();
        let ok = x.blocks.len() == blocks.len()
            && x
                .blocks
                .iter()
                .zip(blocks)
                .all(|(b, &n)| b.nrows() == n && b.ncols() == n);
        if ok {
            Ok(())
        } else {
            let found: Vec<String> = x
                .blocks
                .iter()
                .map(|b| format!("{}x{}", b.nrows(), b.ncols()))
                .collect();
            Err(Error::shape(
                format!("blocks {}", self.spec),
                format!("[{}]", found.join(", ")),
            ))
        }
    }

    pub fn check_operator(&self, op: &CMatrix<T>) -> Result<()> {
        let d = self.dim();
        if op.nrows() == d && op.ncols() == d {
            Ok(())
        } else {
            Err(Error::shape(
                format!("{d}x{d} operator"),
                format!("{}x{}", op.nrows(), op.ncols()),
            ))
        }
    }

    pub fn check_vector(&self, v: &CVector<T>) -> Result<()> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::shape(
                format!("GNS vector of length {}", self.dim()),
                v.len(),
            ))
        }
    }

    /// The Plancherel trace `ψ(x) = (1/dim M) Σ n_i Tr(x_i)`.
    pub fn psi(&self, x: &AlgebraElement<T>) -> Result<Complex<T>> {
        self.check_element(x)?;
        let mut acc = Complex::new(T::zero(), T::zero());
        for (b, &n) in x.blocks.iter().zip(self.spec.blocks()) {
            acc += b.trace() * real::<T>(n as f64);
        }
        Ok(acc / Complex::new(self.delta_sq, T::zero()))
    }

    /// `ψ` as a functional on GNS coordinates.
    pub fn psi_gns(&self, v: &CVector<T>) -> Complex<T> {
        self.unit.dotc(v)
    }

    pub fn to_gns(&self, x: &AlgebraElement<T>) -> Result<CVector<T>> {
        self.check_element(x)?;
        let mut v = CVector::zeros(self.dim());
        for (i, g) in self.index.iter().enumerate() {
            v[i] = x.blocks[g.block][(g.row, g.col)] / Complex::new(self.scales[g.block], T::zero());
        }
        Ok(v)
    }

    pub fn from_gns(&self, v: &CVector<T>) -> Result<AlgebraElement<T>> {
        self.check_vector(v)?;
        let mut x = AlgebraElement::zeros(&self.spec);
        for (i, g) in self.index.iter().enumerate() {
            x.blocks[g.block][(g.row, g.col)] = v[i] * Complex::new(self.scales[g.block], T::zero());
        }
        Ok(x)
    }

    /// GNS inner product `⟨u, v⟩ = ψ(v* u)` in coordinates.
    pub fn inner(&self, u: &CVector<T>, v: &CVector<T>) -> Complex<T> {
        v.dotc(u)
    }

    /// `m*` applied to `x`, as a `dim²` vector on the tensor GNS basis.
    pub fn mult_adjoint_apply(&self, x: &AlgebraElement<T>) -> Result<CVector<T>> {
        let v = self.to_gns(x)?;
        Ok(&self.m_star_matrix * v)
    }

    /// Matrix of `y ↦ x y` on the GNS basis.
    pub fn left_mult_op(&self, x: &AlgebraElement<T>) -> Result<CMatrix<T>> {
        self.check_element(x)?;
        let d = self.dim();
        let mut out = zeros(d, d);
        // x e_{kl} = Σ_j x_{jk} e_{jl}
        for (block, &n) in self.spec.blocks().iter().enumerate() {
            let xb = &x.blocks[block];
            for j in 0..n {
                for k in 0..n {
                    let val = xb[(j, k)];
                    for l in 0..n {
                        out[(self.gns_position(block, j, l), self.gns_position(block, k, l))] = val;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `y ↦ y x` on the GNS basis.
    pub fn right_mult_op(&self, x: &AlgebraElement<T>) -> Result<CMatrix<T>> {
        self.check_element(x)?;
        let d = self.dim();
        let mut out = zeros(d, d);
        // e_{jk} x = Σ_l x_{kl} e_{jl}
        for (block, &n) in self.spec.blocks().iter().enumerate() {
            let xb = &x.blocks[block];
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        out[(self.gns_position(block, j, l), self.gns_position(block, j, k))] =
                            xb[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Left multiplication by each GNS basis vector, in basis order.
    pub fn left_basis_ops(&self) -> Vec<CMatrix<T>> {
        (0..self.dim())
            .map(|i| {
                self.left_mult_op(&self.basis_element(i))
                    .expect("basis element conforms")
            })
            .collect()
    }

    /// Right multiplications by the GNS basis vectors; spans `M′`.
    pub fn commutant_basis(&self) -> Vec<CMatrix<T>> {
        (0..self.dim())
            .map(|i| {
                self.right_mult_op(&self.basis_element(i))
                    .expect("basis element conforms")
            })
            .collect()
    }

    /// Permutation `K` with `to_gns(x*) = K · conj(to_gns(x))`.
    pub fn star_matrix(&self) -> CMatrix<T> {
        let d = self.dim();
        let mut k = zeros(d, d);
        for (i, g) in self.index.iter().enumerate() {
            k[(self.gns_position(g.block, g.col, g.row), i)] = Complex::new(T::one(), T::zero());
        }
        k
    }

    /// `m (X ⊗ Y) m*` for operators `X, Y` on `L²(M)`, via the sparse form of `m`.
    pub fn m_sandwich(&self, x: &CMatrix<T>, y: &CMatrix<T>) -> Result<CMatrix<T>> {
        self.check_operator(x)?;
        self.check_operator(y)?;
        let d = self.dim();
        let mut out = zeros(d, d);
        for (i, ti) in self.mult_terms.iter().enumerate() {
            for (j, tj) in self.mult_terms.iter().enumerate() {
                let mut acc = Complex::new(T::zero(), T::zero());
                for &(a, b, v) in ti {
                    for &(c, e, w) in tj {
                        acc += x[(a, c)] * y[(b, e)] * (v * w);
                    }
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Matrix `W` with `W[c, x] = ψ(b_c b_x)` for GNS basis vectors `b`.
    pub fn psi_product_matrix(&self) -> CMatrix<T> {
        let d = self.dim();
        let mut w = zeros(d, d);
        for (out, terms) in self.mult_terms.iter().enumerate() {
            let psi_out = self.unit[out].conj();
            if psi_out.modulus() == T::zero() {
                continue;
            }
            for &(a, b, v) in terms {
                w[(a, b)] += psi_out * v;
            }
        }
        w
    }
}
