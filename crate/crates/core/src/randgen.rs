//! Seeded Gaussian ensembles.
//!
//! All randomness comes from [`ChaCha20Rng`] seeded with
//! `SeedableRng::seed_from_u64`, and normal variates come from
//! `rand_distr::StandardNormal` evaluated with `libm`. Both are
//! platform-independent, so a seed pins the generated values bit for bit.

use alloc::vec::Vec;

use rand_chacha::ChaCha20Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::dense::{DenseMatrix, DenseVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dimension and seed of one random matrix. The ensemble (real symmetric or
/// complex Hermitian) is selected by the scalar type at the call site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub n: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(n: usize, seed: u64) -> Self {
        Self { n, seed }
    }
}

/// SplitMix64 finaliser, used to derive independent child seeds.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct NormalSource {
    rng: ChaCha20Rng,
}

impl NormalSource {
    fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    fn real(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Real scalars take one variate, complex scalars take two (re then im).
    fn scalar<S: Scalar>(&mut self) -> S {
        if S::IS_COMPLEX {
            let re = self.real();
            let im = self.real();
            S::from_parts(re, im)
        } else {
            S::from_real(self.real())
        }
    }
}

/// Draws `(G + G†) / 2` with i.i.d. standard normal `G`.
///
/// `G` is sampled row-major. For complex scalars each entry has standard
/// normal real and imaginary parts. Every off-diagonal entry is computed
/// once and mirrored with conjugation, and diagonal entries keep only the
/// real part, so the result is exactly self-adjoint.
///
/// The scalar type selects the ensemble: `f64` for real symmetric,
/// `Complex64` for complex Hermitian.
pub fn random_matrix<S: Scalar>(spec: EnsembleSpec) -> Result<DenseMatrix<S>> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::InvalidInput("matrix dimension must be positive"));
    }
    let mut src = NormalSource::new(spec.seed);
    let g: Vec<S> = (0..n * n).map(|_| src.scalar::<S>()).collect();
    let mut data = alloc::vec![S::zero(); n * n];
    for r in 0..n {
        data[r * n + r] = S::from_real(g[r * n + r].re());
        for c in r + 1..n {
            let v = (g[r * n + c] + g[c * n + r].conj()).scale(0.5);
            data[r * n + c] = v;
            data[c * n + r] = v.conj();
        }
    }
    DenseMatrix::from_vec(n, data)
}

/// Standard normal start vector scaled to unit max-norm.
pub fn random_unit_vector<S: Scalar>(n: usize, seed: u64) -> Result<DenseVector<S>> {
    if n == 0 {
        return Err(Error::InvalidInput("vector dimension must be positive"));
    }
    let mut src = NormalSource::new(seed);
    let v = DenseVector::from_vec((0..n).map(|_| S::from_real(src.real())).collect())?;
    v.normalized()
}
