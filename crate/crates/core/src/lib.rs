//! Quantum graphs on finite-dimensional C*-algebras.
//!
//! A quantum graph here is a finite-dimensional C*-algebra `M = ⊕ M_{n_i}`
//! carrying its tracial δ-form (the Plancherel trace), together with a
//! quantum adjacency operator `A` on the GNS space `L²(M)`, or equivalently
//! an operator subspace `S ⊆ B(L²(M))` that is self-adjoint and a bimodule
//! over the commutant `M′`.
//!
//! The crate provides:
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`algebra`] | block algebra arithmetic, GNS basis, multiplication map `m` and `m*` |
//! | [`qgraph`] | quantum adjacency operators, Schur product, axiom validation |
//! | [`translate`] | the `S ↔ P ↔ A` dictionary (bimodule projections) |
//! | [`spectra`] | degree matrix, Laplacians, inertia and five spectral chromatic bounds |
//! | [`coloring`] | coloring certificates, pinching/twirling checks, exact classical χ |
//! | [`classical`] | classical graphs and named/enumerated graph families |
//!
//! All numerics are generic over the real scalar `T: Real` (`f32` or `f64`);
//! matrices are complex, `DMatrix<Complex<T>>`. The `*64` aliases at the crate
//! root fix `T = f64`, which is what the command-line front end uses.

pub mod algebra;
pub mod classical;
pub mod coloring;
pub mod linalg;
pub mod qgraph;
pub mod spectra;
pub mod translate;

mod error;

pub use error::{Error, Result};

use nalgebra::RealField;
use num_traits::ToPrimitive;

pub use nalgebra::Complex;

/// Real scalar the library is generic over.
pub trait Real: RealField + Copy + ToPrimitive {
    /// Absolute residual tolerance used when a caller does not supply one.
    fn default_tolerance() -> Self;
}

impl Real for f64 {
    fn default_tolerance() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn default_tolerance() -> Self {
        1e-4
    }
}

pub type CMatrix<T> = nalgebra::DMatrix<Complex<T>>;
pub type CVector<T> = nalgebra::DVector<Complex<T>>;

pub type AlgebraContext64 = algebra::AlgebraContext<f64>;
pub type AlgebraElement64 = algebra::AlgebraElement<f64>;
pub type CMatrix64 = CMatrix<f64>;
pub type QuantumGraph64 = qgraph::QuantumGraph<f64>;
pub type AxiomReport64 = qgraph::AxiomReport<f64>;
pub type OperatorSubspace64 = translate::OperatorSubspace<f64>;
pub type Superoperator64 = translate::Superoperator<f64>;
pub type Spectrum64 = spectra::Spectrum<f64>;
pub type BoundsReport64 = spectra::BoundsReport<f64>;
pub type ColoringCertificate64 = coloring::ColoringCertificate<f64>;
pub type CertReport64 = coloring::CertReport<f64>;

pub(crate) fn real<T: Real>(x: f64) -> T {
    nalgebra::convert(x)
}

pub(crate) fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(real(re), real(im))
}

pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
