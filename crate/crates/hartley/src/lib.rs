//! Fast discrete Hartley transforms with minimal multiplication counts.
//!
//! The discrete Hartley transform (DHT) of a real vector `v` of length `N` is
//!
//! ```text
//! V[k] = sum_i v[i] * cas(2*pi*k*i/N),      cas(x) = cos(x) + sin(x)
//! ```
//!
//! This crate computes DHTs of lengths 3, 5, 6, 12 and 24 through layered
//! factorizations of the Hartley matrix into chains of sparse matrices plus
//! optional additive layers. Each kernel is compiled once into a straight-line
//! program whose addition and multiplication tallies match the factorization's
//! operation count exactly, so the cost model is auditable rather than
//! asymptotic folklore.
//!
//! The crate is organized in three levels:
//!
//! * [`dht`] — the naive-summation oracle, the dense Hartley matrix, and the
//!   DHT/DFT bridge. Everything else is checked against this module.
//! * [`sparse`], [`factor`], [`slp`], [`passes`] — the factorization IR:
//!   sparse matrices, staged products with layers, operation counting,
//!   straight-line program emission, and the rewrite passes used to derive
//!   factorizations from dense matrices.
//! * [`kernels`] — the built-in factorizations and the dispatching entry
//!   points [`fast_dht`], [`fast_idht`], [`fast_dft`] and [`batch_transform`].
//!
//! Core types are generic over the scalar via the [`Real`] trait; the aliases
//! below fix `f64`, which is what every stated tolerance refers to.

pub mod dense;
pub mod dht;
pub mod error;
pub mod factor;
pub mod kernels;
pub mod passes;
pub mod scalar;
pub mod slp;
pub mod sparse;

pub use dense::DenseMatrix;
pub use dht::{
    cas, cas_prime, dft_to_dht, dht_to_dft, hartley_matrix, inverse_dht, naive_dht,
    ComplexSpectrum, Signal, Spectrum,
};
pub use error::HartleyError;
pub use factor::{LayeredFactorization, OpCount, Stage, VerificationReport};
pub use kernels::{
    batch_transform, fast_dft, fast_dht, fast_idht, registry, Direction, FastKernel,
    KernelRegistry, SUPPORTED_LENGTHS,
};
pub use scalar::Real;
pub use slp::{Op, StraightLineProgram};
pub use sparse::SparseMatrix;

/// Result alias used throughout the crate.
pub type Result<T, E = HartleyError> = std::result::Result<T, E>;

pub type Signal64 = Signal<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type ComplexSpectrum64 = ComplexSpectrum<f64>;
pub type DenseMatrix64 = DenseMatrix<f64>;
pub type SparseMatrix64 = SparseMatrix<f64>;
pub type LayeredFactorization64 = LayeredFactorization<f64>;
pub type StraightLineProgram64 = StraightLineProgram<f64>;
pub type KernelRegistry64 = KernelRegistry<f64>;
