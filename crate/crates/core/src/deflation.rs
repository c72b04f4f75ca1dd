//! Top-k eigenpairs of self-adjoint matrices by rank-one deflation.
//!
//! Each round finds the dominant pair `(λ, v)` of the current matrix, scales
//! `v` to unit Euclidean norm and subtracts `λ v v†`. Since the matrix is
//! self-adjoint its eigenvectors are orthonormal, so removing one pair leaves
//! the others untouched and the next round finds the next one.
//!
//! "Largest" means largest in modulus, which is what power iteration finds.
//! Under repeated eigenvalues the returned vectors span the right eigenspace
//! but the basis inside it is arbitrary.

use alloc::vec::Vec;

use crate::dense::{DenseMatrix, DenseVector};
use crate::error::{check_dim, Error, Result};
use crate::randgen::mix_seed;
use crate::scalar::Scalar;
use crate::solvers::{rayleigh_quotient, Algorithm, SolverConfig};

/// Entrywise tolerance (relative to `max(1, max_norm(A))`) of the
/// self-adjointness check.
pub const SELF_ADJOINT_TOL: f64 = 1e-12;

const UNIT_NORM_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair<S> {
    pub value: f64,
    /// Unit Euclidean norm.
    pub vector: DenseVector<S>,
}

/// Why extraction stopped before `k` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundFailure {
    /// One-based round that failed.
    pub round: usize,
    /// Iterations spent by the inner solver, zero if it raised an error.
    pub iterations: usize,
    /// Set when the inner solver raised instead of running out of iterations.
    pub error: Option<Error>,
}

/// Eigenpairs in extraction order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<S> {
    pub pairs: Vec<EigenPair<S>>,
    pub requested: usize,
    pub failure: Option<RoundFailure>,
}

impl<S: Scalar> Spectrum<S> {
    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_complete(&self) -> bool {
        self.failure.is_none() && self.pairs.len() == self.requested
    }

    pub fn values(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    /// Largest `|⟨v_i, v_j⟩|` over distinct pairs, zero for fewer than two.
    pub fn max_overlap(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.pairs.iter().enumerate() {
            for b in &self.pairs[i + 1..] {
                let ip = a
                    .vector
                    .dot(&b.vector)
                    .map(|z| z.modulus())
                    .unwrap_or(f64::INFINITY);
                worst = worst.max(ip);
            }
        }
        worst
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TopKOptions {
    /// Project each new vector against all previously extracted ones before
    /// deflating.
    pub reorthogonalize: bool,
}

/// `A - λ v v†`. `v` must have unit Euclidean norm.
pub fn deflate<S: Scalar>(
    a: &DenseMatrix<S>,
    lambda: S,
    v: &DenseVector<S>,
) -> Result<DenseMatrix<S>> {
    check_dim(a.n(), v.len())?;
    if (v.norm2() - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::InvalidInput(
            "deflation vector must have unit 2-norm",
        ));
    }
    a.sub(&DenseMatrix::outer(v, v)?.scaled(lambda)?)
}

pub fn top_k_eigenpairs<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    cfg: &SolverConfig,
    method: Algorithm,
) -> Result<Spectrum<S>> {
    top_k_eigenpairs_with(a, k, cfg, method, TopKOptions::default())
}

/// Runs exactly `k` extraction rounds, or stops at the first round whose
/// solver does not converge and records it in [`Spectrum::failure`].
///
/// Round `i > 1` draws its start vector from `mix_seed(cfg.seed, i)`.
pub fn top_k_eigenpairs_with<S: Scalar>(
    a: &DenseMatrix<S>,
    k: usize,
    cfg: &SolverConfig,
    method: Algorithm,
    opts: TopKOptions,
) -> Result<Spectrum<S>> {
    if k == 0 || k > a.n() {
        return Err(Error::InvalidInput("k must lie in 1..=n"));
    }
    if !a.is_self_adjoint(SELF_ADJOINT_TOL * a.max_norm().max(1.0)) {
        return Err(Error::InvalidInput(
            "deflation requires a self-adjoint matrix",
        ));
    }
    cfg.validate()?;

    let mut pairs: Vec<EigenPair<S>> = Vec::with_capacity(k);
    let mut current = a.clone();
    for round in 1..=k {
        let round_cfg = SolverConfig {
            seed: if round == 1 {
                cfg.seed
            } else {
                mix_seed(cfg.seed, round as u64)
            },
            ..*cfg
        };
        let est = match method.solve(&current, &round_cfg) {
            Ok(est) => est,
            Err(e) if e.is_rejected_input() => return Err(e),
            Err(e) => {
                return Ok(Spectrum {
                    pairs,
                    requested: k,
                    failure: Some(RoundFailure {
                        round,
                        iterations: 0,
                        error: Some(e),
                    }),
                })
            }
        };
        if !est.converged {
            return Ok(Spectrum {
                pairs,
                requested: k,
                failure: Some(RoundFailure {
                    round,
                    iterations: est.iterations,
                    error: None,
                }),
            });
        }

        let mut value = est.value.re();
        let mut vector = est.vector.normalized2()?;
        if opts.reorthogonalize && !pairs.is_empty() {
            for p in &pairs {
                let overlap = p.vector.dot(&vector)?;
                vector = vector.sub(&p.vector.scaled(overlap))?;
            }
            vector = vector.normalized2()?;
            value = rayleigh_quotient(&current, &vector)?.re();
        }
        current = deflate(&current, S::from_real(value), &vector)?;
        pairs.push(EigenPair { value, vector });
    }
    Ok(Spectrum {
        pairs,
        requested: k,
        failure: None,
    })
}
