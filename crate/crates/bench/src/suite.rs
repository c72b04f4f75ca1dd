use std::time::Instant;

use powersquare::oracle::jacobi_eigen;
use powersquare::randgen::mix_seed;
use powersquare::solvers::{DEFAULT_POWER_MAX_ITER, DEFAULT_SQUARED_MAX_ITER, DEFAULT_TOL};
use powersquare::{
    random_matrix, Algorithm, Complex64, DenseMatrix, EnsembleSpec, Scalar, SolverConfig,
};
use rayon::prelude::*;

use crate::record::{Alg, BenchRecord, Mode};
use crate::{BenchError, Result};

/// Matrix dimension and how many matrices of it to solve.
pub type SizeSpec = (usize, usize);

/// Default desk-scale sizes.
pub const DESK_SCALE: &[SizeSpec] = &[(50, 100), (100, 50), (200, 10)];

/// The long-running sizes behind `bench --full-scale`.
pub const FULL_SCALE: &[SizeSpec] = &[(100, 300), (1000, 5), (3000, 1), (5000, 1)];

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub tol: f64,
    pub power_max_iter: usize,
    pub squared_max_iter: usize,
    /// Worker threads; solves are timed individually.
    pub workers: usize,
    /// Largest `n` for which the Jacobi reference runs.
    pub oracle_cutoff: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            power_max_iter: DEFAULT_POWER_MAX_ITER,
            squared_max_iter: DEFAULT_SQUARED_MAX_ITER,
            workers: 1,
            oracle_cutoff: 200,
        }
    }
}

impl SuiteConfig {
    pub fn solver_config(&self, alg: Alg, seed: u64) -> SolverConfig {
        let max_iter = match alg {
            Alg::Power => self.power_max_iter,
            Alg::Squared => self.squared_max_iter,
        };
        SolverConfig {
            tol: self.tol,
            max_iter,
            seed,
        }
    }
}

/// Seed of matrix `index` of dimension `n`.
pub fn matrix_seed(base_seed: u64, n: usize, index: usize) -> u64 {
    mix_seed(mix_seed(base_seed, n as u64), index as u64)
}

/// Seed of the start vector used with a matrix seed.
pub fn start_seed(matrix_seed: u64) -> u64 {
    mix_seed(matrix_seed, 1)
}

/// Parses `n:count[,n:count...]`.
pub fn parse_sizes(text: &str) -> Result<Vec<SizeSpec>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let bad = || BenchError::InvalidSize(item.to_string());
            let (n, count) = item.trim().split_once(':').ok_or_else(bad)?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            let count: usize = count.trim().parse().map_err(|_| bad())?;
            if n < 2 || count == 0 {
                return Err(bad());
            }
            Ok((n, count))
        })
        .collect()
}

/// Solves every `(n, count)` matrix with every algorithm.
///
/// Matrix `i` of dimension `n` comes from [`matrix_seed`], and all
/// algorithms see the same matrix and start-vector seed. Only the solver call
/// is timed. Records come back sorted by `(n, mode, algorithm,
/// matrix_index)`, independent of scheduling.
pub fn run_suite(
    sizes: &[SizeSpec],
    mode: Mode,
    algorithms: &[Alg],
    cfg: &SuiteConfig,
    base_seed: u64,
) -> Result<Vec<BenchRecord>> {
    for &(n, count) in sizes {
        if n < 2 || count == 0 {
            return Err(BenchError::InvalidSize(format!("{n}:{count}")));
        }
    }
    let tasks: Vec<(usize, usize)> = sizes
        .iter()
        .flat_map(|&(n, count)| (0..count).map(move |i| (n, i)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .expect("failed to build worker pool");
    let nested: Vec<Vec<BenchRecord>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(n, index)| match mode {
                Mode::Real => solve_one::<f64>(n, index, mode, algorithms, cfg, base_seed),
                Mode::Complex => solve_one::<Complex64>(n, index, mode, algorithms, cfg, base_seed),
            })
            .collect::<Result<_>>()
    })?;

    let mut records: Vec<BenchRecord> = nested.into_iter().flatten().collect();
    records.sort_by_key(|r| r.sort_key());
    Ok(records)
}

fn solve_one<S: Scalar>(
    n: usize,
    index: usize,
    mode: Mode,
    algorithms: &[Alg],
    cfg: &SuiteConfig,
    base_seed: u64,
) -> Result<Vec<BenchRecord>> {
    let seed = matrix_seed(base_seed, n, index);
    let a: DenseMatrix<S> = random_matrix(EnsembleSpec::new(n, seed))?;
    let reference = if n <= cfg.oracle_cutoff {
        Some(jacobi_eigen(&a)?.dominant())
    } else {
        None
    };

    let records = algorithms
        .iter()
        .map(|&alg| {
            let solver_cfg = cfg.solver_config(alg, start_seed(seed));
            let start = Instant::now();
            let outcome = Algorithm::from(alg).solve(&a, &solver_cfg);
            let wall_time = start.elapsed().as_secs_f64();
            let (iterations, converged, eigenvalue, residual) = match outcome {
                Ok(est) => (est.iterations, est.converged, est.value.re(), est.residual),
                Err(_) => (0, false, f64::NAN, f64::NAN),
            };
            BenchRecord {
                n,
                mode,
                algorithm: alg,
                matrix_index: index,
                seed,
                wall_time,
                iterations,
                converged,
                eigenvalue,
                residual,
                oracle_error: reference.map(|r| (eigenvalue - r).abs() / r.abs()),
            }
        })
        .collect();
    Ok(records)
}
