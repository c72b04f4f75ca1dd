//! Dominant eigenpairs by power iteration and by repeated matrix squaring.
//!
//! Power iteration needs `k` matrix-vector products to suppress the
//! non-dominant components of a start vector by `|λ₂/λ₁|^k`. Squaring the
//! matrix `i` times reaches the power `2^i` instead, so the same suppression
//! costs `O(lg k)` matrix products. Both solvers, a deflation loop for the
//! top `k` pairs of self-adjoint matrices, seeded Gaussian ensembles and a
//! Jacobi reference solver live here.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod deflation;
pub mod dense;
pub mod error;
pub mod oracle;
pub mod randgen;
pub mod scalar;
pub mod solvers;

pub use deflation::{
    deflate, top_k_eigenpairs, top_k_eigenpairs_with, EigenPair, Spectrum, TopKOptions,
};
pub use dense::{DenseMatrix, DenseVector};
pub use error::{Error, Result};
pub use randgen::{random_matrix, random_unit_vector, EnsembleSpec};
pub use scalar::{Complex64, Scalar};
pub use solvers::{
    matrix_power_squaring, power_iteration, power_iteration_from, power_iteration_squared,
    rayleigh_quotient, Algorithm, EigenEstimate, SolverConfig,
};
