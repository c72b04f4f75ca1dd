//! Dominant eigenpair solvers.
//!
//! [`power_iteration`] is classical power iteration driven by matrix-vector
//! products. [`power_iteration_squared`] instead squares the matrix
//! repeatedly, so after `i` steps it holds a normalised `A^(2^i)` and the
//! non-dominant components have been suppressed by `|λ₂/λ₁|^(2^i)`. Both
//! report a Rayleigh quotient against the input matrix and a phase-fixed
//! eigenvector with unit max-norm.
//!
//! Spectra whose dominant eigenvalue is not unique in modulus (for example
//! `λ₁ = -λ₂`) have no dominant eigenvector; both solvers then return
//! `converged == false`.

use crate::dense::{DenseMatrix, DenseVector};
use crate::error::{check_dim, Error, Result};
use crate::randgen::{mix_seed, random_unit_vector};
use crate::scalar::Scalar;

/// Stopping tolerance shared by both solvers unless overridden.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Iteration cap for [`power_iteration`].
pub const DEFAULT_POWER_MAX_ITER: usize = 1_000_000;
/// Squaring cap for [`power_iteration_squared`]. `A^(2^64)` is far past the
/// point where double precision stops changing.
pub const DEFAULT_SQUARED_MAX_ITER: usize = 64;

/// How many times [`power_iteration_squared`] redraws a start vector that
/// the converged power annihilates.
const START_VECTOR_REDRAWS: u64 = 3;

/// A converged eigenpair has residual at most this multiple of
/// `tol * max_norm(A)`.
const RESIDUAL_FACTOR: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    /// Threshold on the max-norm difference between successive normalised
    /// iterates.
    pub tol: f64,
    pub max_iter: usize,
    /// Seed of the random start vector.
    pub seed: u64,
}

impl SolverConfig {
    /// Defaults for [`power_iteration`].
    pub fn power(seed: u64) -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_POWER_MAX_ITER,
            seed,
        }
    }

    /// Defaults for [`power_iteration_squared`].
    pub fn squared(seed: u64) -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_SQUARED_MAX_ITER,
            seed,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidInput("tolerance must be positive and finite"));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidInput("iteration cap must be at least one"));
        }
        Ok(())
    }
}

/// Which dominant-pair solver to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Matrix-vector power iteration.
    Power,
    /// Power iteration through repeated squaring.
    Squared,
}

impl Algorithm {
    pub fn default_config(self, seed: u64) -> SolverConfig {
        match self {
            Algorithm::Power => SolverConfig::power(seed),
            Algorithm::Squared => SolverConfig::squared(seed),
        }
    }

    pub fn solve<S: Scalar>(
        self,
        a: &DenseMatrix<S>,
        cfg: &SolverConfig,
    ) -> Result<EigenEstimate<S>> {
        match self {
            Algorithm::Power => power_iteration(a, cfg),
            Algorithm::Squared => power_iteration_squared(a, cfg),
        }
    }
}

/// Dominant eigenpair estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenEstimate<S> {
    /// Rayleigh quotient of `vector` against the input matrix.
    pub value: S,
    /// Unit max-norm, largest-modulus entry real and positive.
    pub vector: DenseVector<S>,
    /// Matrix-vector products for power iteration, squarings for the
    /// squared variant.
    pub iterations: usize,
    pub converged: bool,
    /// `max_norm(A v - λ v)`.
    pub residual: f64,
}

/// `(x† A x) / (x† x)`.
pub fn rayleigh_quotient<S: Scalar>(a: &DenseMatrix<S>, x: &DenseVector<S>) -> Result<S> {
    check_dim(a.n(), x.len())?;
    let xx = x.dot(x)?;
    if xx == S::zero() {
        return Err(Error::Degenerate("Rayleigh quotient of a zero vector"));
    }
    let ax = a.matvec(x)?;
    Ok(x.dot(&ax)? / xx)
}

/// `max_norm(A v - λ v)`.
pub fn residual<S: Scalar>(a: &DenseMatrix<S>, value: S, v: &DenseVector<S>) -> Result<f64> {
    a.matvec(v)?.max_abs_diff(&v.scaled(value))
}

fn check_nonzero<S: Scalar>(a: &DenseMatrix<S>) -> Result<()> {
    if a.max_norm() == 0.0 {
        Err(Error::Degenerate("zero matrix has no dominant eigenvector"))
    } else {
        Ok(())
    }
}

fn estimate<S: Scalar>(
    a: &DenseMatrix<S>,
    x: &DenseVector<S>,
    iterations: usize,
    converged: bool,
) -> Result<EigenEstimate<S>> {
    let vector = x.normalized()?.phase_fixed();
    let value = rayleigh_quotient(a, &vector)?;
    let residual = residual(a, value, &vector)?;
    Ok(EigenEstimate {
        value,
        vector,
        iterations,
        converged,
        residual,
    })
}

/// Normalised matrix-vector iterates `x_{k+1} = normalize(A x_k)`.
///
/// Each new iterate is rotated by the unit phase that makes `⟨x_k, x_{k+1}⟩`
/// real and positive before it is compared with its predecessor, so a
/// negative (or complex) dominant eigenvalue does not flip the iterate at
/// every step.
#[derive(Clone, Debug)]
pub struct PowerIterates<'a, S> {
    a: &'a DenseMatrix<S>,
    x: DenseVector<S>,
    steps: usize,
}

impl<'a, S: Scalar> PowerIterates<'a, S> {
    pub fn new(a: &'a DenseMatrix<S>, x0: &DenseVector<S>) -> Result<Self> {
        check_dim(a.n(), x0.len())?;
        Ok(Self {
            a,
            x: x0.normalized()?,
            steps: 0,
        })
    }

    /// Advances one step and returns `max_norm(x_{k+1} - x_k)`.
    pub fn step(&mut self) -> Result<f64> {
        let next = self
            .a
            .matvec(&self.x)?
            .normalized()
            .map_err(|_| Error::Degenerate("iterate collapsed to zero; reseed the start vector"))?
            .aligned_to(&self.x)?;
        let diff = next.max_abs_diff(&self.x)?;
        self.x = next;
        self.steps += 1;
        Ok(diff)
    }

    pub fn current(&self) -> &DenseVector<S> {
        &self.x
    }

    pub fn steps(&self) -> usize {
        self.steps
    }
}

/// Power iteration from a random start vector drawn from `cfg.seed`.
pub fn power_iteration<S: Scalar>(
    a: &DenseMatrix<S>,
    cfg: &SolverConfig,
) -> Result<EigenEstimate<S>> {
    let x0 = random_unit_vector(a.n(), cfg.seed)?;
    power_iteration_from(a, &x0, cfg)
}

/// Power iteration from an explicit start vector. `cfg.seed` is ignored.
///
/// Stops once successive aligned iterates differ by at most `cfg.tol` in
/// max-norm, or after `cfg.max_iter` products with `converged == false`.
pub fn power_iteration_from<S: Scalar>(
    a: &DenseMatrix<S>,
    x0: &DenseVector<S>,
    cfg: &SolverConfig,
) -> Result<EigenEstimate<S>> {
    cfg.validate()?;
    check_nonzero(a)?;
    let mut it = PowerIterates::new(a, x0)?;
    let mut converged = false;
    while it.steps() < cfg.max_iter {
        if it.step()? <= cfg.tol {
            converged = true;
            break;
        }
    }
    estimate(a, it.current(), it.steps(), converged)
}

/// `A^(2^j)` by `j` successive squarings, without normalisation.
pub fn matrix_power_squaring<S: Scalar>(a: &DenseMatrix<S>, j: u32) -> Result<DenseMatrix<S>> {
    let mut p = a.clone();
    for _ in 0..j {
        p = p.matmul(&p)?;
    }
    Ok(p)
}

/// Normalised squarings `A_{i+1} = normalize(A_i · A_i)` starting from
/// `A_0 = A`.
#[derive(Clone, Debug)]
pub struct SquaringIterates<S> {
    current: DenseMatrix<S>,
    steps: usize,
}

impl<S: Scalar> SquaringIterates<S> {
    pub fn new(a: &DenseMatrix<S>) -> Self {
        Self {
            current: a.clone(),
            steps: 0,
        }
    }

    /// Advances one squaring and returns `max_norm(A_{i+1} - A_i)`.
    pub fn step(&mut self) -> Result<f64> {
        let next = self
            .current
            .matmul(&self.current)?
            .normalized()
            .map_err(|_| Error::Degenerate("matrix power vanished; the matrix is nilpotent"))?;
        let diff = next.max_abs_diff(&self.current)?;
        self.current = next;
        self.steps += 1;
        Ok(diff)
    }

    pub fn current(&self) -> &DenseMatrix<S> {
        &self.current
    }

    pub fn steps(&self) -> usize {
        self.steps
    }
}

/// Power iteration through repeated squaring.
///
/// Squares and renormalises `A` until successive iterates differ by at most
/// `cfg.tol` in max-norm, then projects a random start vector with the last
/// iterate. The eigenvalue is the Rayleigh quotient against the input `A`.
///
/// A stalled squaring sequence can also mean there is no dominant
/// eigenvector (for example `diag(1, -1)` squares to the identity), so
/// convergence additionally requires the projected vector to be an
/// eigenvector: `max_norm(A v - λ v) <= 100 * tol * max_norm(A)`.
pub fn power_iteration_squared<S: Scalar>(
    a: &DenseMatrix<S>,
    cfg: &SolverConfig,
) -> Result<EigenEstimate<S>> {
    cfg.validate()?;
    check_nonzero(a)?;
    let mut it = SquaringIterates::new(a);
    let mut settled = false;
    while it.steps() < cfg.max_iter {
        if it.step()? <= cfg.tol {
            settled = true;
            break;
        }
    }

    let power = it.current();
    let mut projected = None;
    for attempt in 0..=START_VECTOR_REDRAWS {
        let seed = if attempt == 0 {
            cfg.seed
        } else {
            mix_seed(cfg.seed, attempt)
        };
        let x0 = random_unit_vector(a.n(), seed)?;
        let xf = power.matvec(&x0)?;
        if xf.max_norm() >= cfg.tol {
            projected = Some(xf);
            break;
        }
    }
    let xf = projected.ok_or(Error::Degenerate(
        "start vectors are orthogonal to the dominant eigenvector",
    ))?;

    let mut est = estimate(a, &xf, it.steps(), false)?;
    est.converged = settled && est.residual <= RESIDUAL_FACTOR * cfg.tol * a.max_norm();
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::{random_matrix, EnsembleSpec};
    use crate::scalar::Complex64;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rayleigh_quotient_cases() {
        let d = DenseMatrix::from_diagonal(&[3.0, 1.0]).unwrap();
        assert_eq!(
            rayleigh_quotient(&d, &DenseVector::basis(2, 0)).unwrap(),
            3.0
        );
        let s = DenseMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let ones = DenseVector::from_vec(vec![1.0, 1.0]).unwrap();
        assert_eq!(rayleigh_quotient(&s, &ones).unwrap(), 3.0);
        let zero = DenseVector::from_vec(vec![0.0, 0.0]).unwrap();
        assert!(matches!(
            rayleigh_quotient(&s, &zero),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn config_validation() {
        let a = DenseMatrix::<f64>::identity(2);
        let bad = SolverConfig::power(0).with_tol(0.0);
        assert!(power_iteration(&a, &bad).unwrap_err().is_rejected_input());
        let bad = SolverConfig::squared(0).with_max_iter(0);
        assert!(power_iteration_squared(&a, &bad)
            .unwrap_err()
            .is_rejected_input());
    }

    #[test]
    fn power_iteration_on_diagonal() {
        let a = DenseMatrix::from_diagonal(&[3.0, 1.0, 0.5]).unwrap();
        let est = power_iteration(&a, &SolverConfig::power(1)).unwrap();
        assert!(est.converged);
        assert!(approx(est.value, 3.0, 1e-12));
        assert!(est.vector.max_abs_diff(&DenseVector::basis(3, 0)).unwrap() <= 1e-10);
    }

    #[test]
    fn power_iteration_on_symmetric_pair() {
        let a = DenseMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let est = power_iteration(&a, &SolverConfig::power(3)).unwrap();
        assert!(est.converged);
        assert!(approx(est.value, 3.0, 1e-12));
        assert!(approx(est.vector[0], 1.0, 1e-10) && approx(est.vector[1], 1.0, 1e-10));
    }

    #[test]
    fn power_iteration_negative_dominant() {
        let a = DenseMatrix::from_diagonal(&[-4.0, 1.0, 2.0]).unwrap();
        let est = power_iteration(&a, &SolverConfig::power(7)).unwrap();
        assert!(est.converged);
        assert!(approx(est.value, -4.0, 1e-12));
        assert_eq!(est.vector[0], 1.0);
    }

    #[test]
    fn power_iteration_kernel_start_vector() {
        let a = DenseMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let x0 = DenseVector::basis(2, 1);
        let err = power_iteration_from(&a, &x0, &SolverConfig::power(0)).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }

    #[test]
    fn component_suppression_on_diag_2_1() {
        let a = DenseMatrix::from_diagonal(&[2.0, 1.0]).unwrap();
        let x0 = DenseVector::from_vec(vec![1.0, 1.0]).unwrap();
        let mut it = PowerIterates::new(&a, &x0).unwrap();
        for k in 1..=30 {
            it.step().unwrap();
            let x = it.current();
            assert_eq!(x[0], 1.0);
            assert!(approx(x[1], 0.5f64.powi(k), 1e-12));
        }
    }

    #[test]
    fn squaring_small_cases() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(matrix_power_squaring(&a, 0).unwrap(), a);
        let p = DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(
            matrix_power_squaring(&p, 1).unwrap(),
            DenseMatrix::identity(2)
        );
        let big = DenseMatrix::from_diagonal(&[1e10, 1.0]).unwrap();
        assert!(matches!(
            matrix_power_squaring(&big, 6),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn squared_on_small_cases() {
        let d = DenseMatrix::from_diagonal(&[3.0, 1.0]).unwrap();
        let est = power_iteration_squared(&d, &SolverConfig::squared(2)).unwrap();
        assert!(est.converged);
        assert!(approx(est.value, 3.0, 1e-12));
        assert!(est.vector.max_abs_diff(&DenseVector::basis(2, 0)).unwrap() <= 1e-12);

        let s = DenseMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let est = power_iteration_squared(&s, &SolverConfig::squared(2)).unwrap();
        assert!(est.converged);
        assert!(approx(est.value, 3.0, 1e-12));
        assert!(approx(est.vector[0], 1.0, 1e-12) && approx(est.vector[1], 1.0, 1e-12));
    }

    #[test]
    fn degenerate_spectra_do_not_converge() {
        let a = DenseMatrix::from_diagonal(&[1.0, -1.0]).unwrap();
        let est = power_iteration(&a, &SolverConfig::power(4).with_max_iter(10_000)).unwrap();
        assert!(!est.converged);
        assert_eq!(est.iterations, 10_000);
        let est = power_iteration_squared(&a, &SolverConfig::squared(4)).unwrap();
        assert!(!est.converged);
    }

    #[test]
    fn zero_matrix_is_degenerate() {
        let z = DenseMatrix::<f64>::zeros(3);
        assert!(matches!(
            power_iteration(&z, &SolverConfig::power(0)),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            power_iteration_squared(&z, &SolverConfig::squared(0)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn nilpotent_matrix_is_degenerate() {
        let a = DenseMatrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(
            power_iteration_squared(&a, &SolverConfig::squared(0)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn squared_iterates_match_normalized_powers() {
        for seed in 0..4 {
            let a: DenseMatrix<f64> = random_matrix(EnsembleSpec::new(8, seed)).unwrap();
            let mut it = SquaringIterates::new(&a);
            for j in 1..=4u32 {
                it.step().unwrap();
                let direct = matrix_power_squaring(&a, j).unwrap().normalized().unwrap();
                assert!(direct.max_abs_diff(it.current()).unwrap() <= 1e-10);
            }
        }
    }

    #[test]
    fn complex_hermitian_solves_agree() {
        let a: DenseMatrix<Complex64> = random_matrix(EnsembleSpec::new(12, 77)).unwrap();
        let p = power_iteration(&a, &SolverConfig::power(1)).unwrap();
        let q = power_iteration_squared(&a, &SolverConfig::squared(1)).unwrap();
        assert!(p.converged && q.converged);
        assert!((p.value - q.value).modulus() <= 1e-9 * p.value.modulus());
        assert!(p.value.im.abs() <= 1e-12 * a.max_norm());
        assert!(p.vector.max_abs_diff(&q.vector).unwrap() <= 1e-6);
    }

    #[test]
    fn scale_invariance() {
        let a: DenseMatrix<f64> = random_matrix(EnsembleSpec::new(10, 5)).unwrap();
        let c = 3.7;
        let ca = a.scaled(c).unwrap();
        let cfg = SolverConfig::power(11);
        let e1 = power_iteration(&a, &cfg).unwrap();
        let e2 = power_iteration(&ca, &cfg).unwrap();
        assert!(e1.vector.max_abs_diff(&e2.vector).unwrap() <= 1e-10);
        assert!((e2.value - c * e1.value).abs() <= 1e-10 * (c * e1.value).abs());
    }
}
