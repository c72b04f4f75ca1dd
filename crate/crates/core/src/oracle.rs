//! Reference eigensolver for self-adjoint matrices.
//!
//! Cyclic Jacobi rotations, written against raw arrays so that it shares no
//! code with the iterative solvers it is used to check. Intended for test and
//! benchmark dimensions (a few hundred at most).
//!
//! Complex Hermitian input is handled with complex rotations: the pivot
//! `a[p][q] = |b| e^{iφ}` is first made real by the diagonal phase
//! `diag(1, e^{-iφ})` and then annihilated by an ordinary real rotation. For
//! real input the phase is `±1`, so the arithmetic never leaves the reals.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::{DenseMatrix, DenseVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sweep cap.
pub const MAX_SWEEPS: usize = 100;

/// Full eigendecomposition, sorted by descending modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct FullSpectrum<S> {
    pub values: Vec<f64>,
    /// Orthonormal, unit Euclidean norm. `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<DenseVector<S>>,
    pub sweeps: usize,
}

impl<S: Scalar> FullSpectrum<S> {
    /// Largest-modulus eigenvalue.
    pub fn dominant(&self) -> f64 {
        self.values[0]
    }
}

fn off_diagonal_mass<S: Scalar>(m: &[S], n: usize) -> f64 {
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += m[r * n + c].modulus_sqr();
            }
        }
    }
    libm::sqrt(sum)
}

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius mass drops to
/// `1e-14 * max_norm(A) * n²`.
pub fn jacobi_eigen<S: Scalar>(a: &DenseMatrix<S>) -> Result<FullSpectrum<S>> {
    let n = a.n();
    let scale = a.max_norm();
    if !a.is_self_adjoint(1e-12 * scale.max(1.0)) {
        return Err(Error::InvalidInput(
            "Jacobi oracle requires a self-adjoint matrix",
        ));
    }
    let threshold = 1e-14 * scale * (n * n) as f64;

    let mut m: Vec<S> = a.as_slice().to_vec();
    for i in 0..n {
        m[i * n + i] = S::from_real(m[i * n + i].re());
    }
    let mut v = vec![S::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = S::one();
    }

    let mut sweeps = 0;
    loop {
        if off_diagonal_mass(&m, n) <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[i * n + i].re()).collect();
    order.sort_by(|&i, &j| diag[j].abs().total_cmp(&diag[i].abs()));

    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = order
        .iter()
        .map(|&col| DenseVector::from_vec((0..n).map(|r| v[r * n + col]).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(FullSpectrum {
        values,
        vectors,
        sweeps,
    })
}

fn rotate<S: Scalar>(m: &mut [S], v: &mut [S], n: usize, p: usize, q: usize) {
    let b = m[p * n + q];
    if b == S::zero() {
        return;
    }
    let abs_b = b.modulus();

    // Make the pivot real: column q *= conj(phase), row q *= phase.
    let phase = b.unit_phase();
    if phase != S::one() {
        let cphase = phase.conj();
        for r in 0..n {
            m[r * n + q] *= cphase;
            v[r * n + q] *= cphase;
        }
        for c in 0..n {
            m[q * n + c] *= phase;
        }
        m[q * n + q] = S::from_real(m[q * n + q].re());
    }

    let app = m[p * n + p].re();
    let aqq = m[q * n + q].re();
    let theta = (aqq - app) / (2.0 * abs_b);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;

    for r in 0..n {
        let g = m[r * n + p];
        let h = m[r * n + q];
        m[r * n + p] = g.scale(c) - h.scale(s);
        m[r * n + q] = g.scale(s) + h.scale(c);
        let g = v[r * n + p];
        let h = v[r * n + q];
        v[r * n + p] = g.scale(c) - h.scale(s);
        v[r * n + q] = g.scale(s) + h.scale(c);
    }
    for col in 0..n {
        let g = m[p * n + col];
        let h = m[q * n + col];
        m[p * n + col] = g.scale(c) - h.scale(s);
        m[q * n + col] = g.scale(s) + h.scale(c);
    }
    m[p * n + q] = S::zero();
    m[q * n + p] = S::zero();
    m[p * n + p] = S::from_real(m[p * n + p].re());
    m[q * n + q] = S::from_real(m[q * n + q].re());
}

/// Roots of `λ² - tr(A) λ + det(A)` for a 2×2 self-adjoint `A`, larger first.
pub fn char_poly_eigs_2x2<S: Scalar>(a: &DenseMatrix<S>) -> Result<(f64, f64)> {
    if a.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: a.n(),
        });
    }
    if !a.is_self_adjoint(1e-12 * a.max_norm().max(1.0)) {
        return Err(Error::InvalidInput(
            "closed form requires a self-adjoint matrix",
        ));
    }
    let p = a.get(0, 0).re();
    let d = a.get(1, 1).re();
    let b = a.get(0, 1).modulus();
    let mean = 0.5 * (p + d);
    // Half the discriminant's square root; hypot never goes negative.
    let spread = libm::hypot(0.5 * (p - d), b);
    let far = if mean >= 0.0 {
        mean + spread
    } else {
        mean - spread
    };
    let near = if far == 0.0 {
        0.0
    } else {
        (p * d - b * b) / far
    };
    Ok(if far >= near {
        (far, near)
    } else {
        (near, far)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::{random_matrix, EnsembleSpec};
    use crate::scalar::Complex64;

    fn reconstruct<S: Scalar>(spec: &FullSpectrum<S>) -> DenseMatrix<S> {
        let n = spec.vectors.len();
        let mut acc = DenseMatrix::zeros(n);
        for (&l, v) in spec.values.iter().zip(&spec.vectors) {
            let term = DenseMatrix::outer(v, v)
                .unwrap()
                .scaled(S::from_real(l))
                .unwrap();
            acc = acc.add(&term).unwrap();
        }
        acc
    }

    fn check_orthonormal<S: Scalar>(spec: &FullSpectrum<S>, tol: f64) {
        for (i, a) in spec.vectors.iter().enumerate() {
            for (j, b) in spec.vectors.iter().enumerate() {
                let ip = a.dot(b).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (ip - S::from_real(want)).modulus() <= tol,
                    "<v{i},v{j}> = {ip:?}"
                );
            }
        }
    }

    #[test]
    fn diagonal_input() {
        let a = DenseMatrix::from_diagonal(&[2.0, -5.0, 1.0]).unwrap();
        let s = jacobi_eigen(&a).unwrap();
        assert_eq!(s.values, vec![-5.0, 2.0, 1.0]);
        assert_eq!(s.vectors[0], DenseVector::basis(3, 1));
        assert_eq!(s.vectors[1], DenseVector::basis(3, 0));
        assert_eq!(s.vectors[2], DenseVector::basis(3, 2));
        assert_eq!(s.sweeps, 0);
    }

    #[test]
    fn symmetric_pair() {
        let a = DenseMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let s = jacobi_eigen(&a).unwrap();
        assert!((s.values[0] - 3.0).abs() <= 1e-15);
        assert!((s.values[1] - 1.0).abs() <= 1e-15);
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let v0 = &s.vectors[0];
        assert!((v0[0].abs() - h).abs() <= 1e-15 && (v0[0] - v0[1]).abs() <= 1e-15);
        let v1 = &s.vectors[1];
        assert!((v1[0].abs() - h).abs() <= 1e-15 && (v1[0] + v1[1]).abs() <= 1e-15);
    }

    #[test]
    fn random_real_reconstructs() {
        let a: DenseMatrix<f64> = random_matrix(EnsembleSpec::new(12, 99)).unwrap();
        let s = jacobi_eigen(&a).unwrap();
        check_orthonormal(&s, 1e-10);
        let err = reconstruct(&s).max_abs_diff(&a).unwrap();
        assert!(err <= 1e-9 * a.max_norm() * 12.0);
    }

    #[test]
    fn random_complex_reconstructs() {
        let a: DenseMatrix<Complex64> = random_matrix(EnsembleSpec::new(12, 100)).unwrap();
        let s = jacobi_eigen(&a).unwrap();
        check_orthonormal(&s, 1e-10);
        let err = reconstruct(&s).max_abs_diff(&a).unwrap();
        assert!(err <= 1e-9 * a.max_norm() * 12.0);
    }

    #[test]
    fn trace_and_frobenius_identities() {
        for seed in 0..5 {
            let a: DenseMatrix<Complex64> = random_matrix(EnsembleSpec::new(15, seed)).unwrap();
            let s = jacobi_eigen(&a).unwrap();
            let sum: f64 = s.values.iter().sum();
            assert!((sum - a.trace().re).abs() <= 1e-10 * 15.0 * a.max_norm());
            let sq: f64 = s.values.iter().map(|l| l * l).sum();
            let fro = a.frobenius_norm_sqr();
            assert!((sq - fro).abs() <= 1e-9 * fro);
        }
    }

    #[test]
    fn sorted_by_descending_modulus() {
        let a: DenseMatrix<f64> = random_matrix(EnsembleSpec::new(20, 4)).unwrap();
        let s = jacobi_eigen(&a).unwrap();
        assert!(s.values.windows(2).all(|w| w[0].abs() >= w[1].abs()));
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert!(jacobi_eigen(&a).unwrap_err().is_rejected_input());
        assert!(char_poly_eigs_2x2(&a).unwrap_err().is_rejected_input());
        assert!(char_poly_eigs_2x2(&DenseMatrix::<f64>::identity(3))
            .unwrap_err()
            .is_rejected_input());
    }

    #[test]
    fn closed_form_cases() {
        let a = DenseMatrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        assert_eq!(char_poly_eigs_2x2(&a).unwrap(), (3.0, 1.0));
        for x in [-2.5, 0.0, 4.0] {
            let d = DenseMatrix::from_diagonal(&[x, x]).unwrap();
            assert_eq!(char_poly_eigs_2x2(&d).unwrap(), (x, x));
        }
    }

    #[test]
    fn closed_form_agrees_with_jacobi() {
        for seed in 0..50 {
            let a: DenseMatrix<f64> = random_matrix(EnsembleSpec::new(2, seed)).unwrap();
            let (hi, lo) = char_poly_eigs_2x2(&a).unwrap();
            let s = jacobi_eigen(&a).unwrap();
            let (jhi, jlo) = if s.values[0] >= s.values[1] {
                (s.values[0], s.values[1])
            } else {
                (s.values[1], s.values[0])
            };
            assert!((hi - jhi).abs() <= 1e-12, "seed {seed}: {hi} vs {jhi}");
            assert!((lo - jlo).abs() <= 1e-12, "seed {seed}: {lo} vs {jlo}");
        }
        for seed in 0..20 {
            let a: DenseMatrix<Complex64> = random_matrix(EnsembleSpec::new(2, seed)).unwrap();
            let (hi, lo) = char_poly_eigs_2x2(&a).unwrap();
            let s = jacobi_eigen(&a).unwrap();
            let mut jv = s.values.clone();
            jv.sort_by(|x, y| y.total_cmp(x));
            assert!((hi - jv[0]).abs() <= 1e-12 && (lo - jv[1]).abs() <= 1e-12);
        }
    }
}
