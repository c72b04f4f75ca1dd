//! Row-major dense square matrices and vectors.
//!
//! Every constructor rejects non-finite entries, and every kernel that can
//! overflow re-checks its output, so a value of either type always holds
//! finite numbers only.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{check_dim, Error, Result};
use crate::scalar::Scalar;

fn all_finite<S: Scalar>(data: &[S]) -> bool {
    data.iter().all(|s| s.is_finite())
}

fn max_modulus<S: Scalar>(data: &[S]) -> f64 {
    data.iter().fold(0.0, |m, s| {
        let v = s.modulus();
        if v > m {
            v
        } else {
            m
        }
    })
}

/// An `n × n` matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    /// Wraps row-major `data` of length `n * n`.
    pub fn from_vec(n: usize, data: Vec<S>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be positive"));
        }
        check_dim(n * n, data.len())?;
        if !all_finite(&data) {
            return Err(Error::InvalidInput("matrix entries must be finite"));
        }
        Ok(Self { n, data })
    }

    pub fn from_rows<R: AsRef<[S]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            check_dim(n, row.len())?;
            data.extend_from_slice(row);
        }
        Self::from_vec(n, data)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self::from_vec(n, data)
    }

    pub fn from_diagonal(diag: &[S]) -> Result<Self> {
        Self::from_fn(diag.len(), |r, c| if r == c { diag[r] } else { S::zero() })
    }

    /// # Panics
    ///
    /// If `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Self {
            n,
            data: vec![S::zero(); n * n],
        }
    }

    /// # Panics
    ///
    /// If `n == 0`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    fn from_raw(n: usize, data: Vec<S>) -> Result<Self> {
        if all_finite(&data) {
            Ok(Self { n, data })
        } else {
            Err(Error::Overflow("matrix entries left the finite range"))
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> S {
        self.data[r * self.n + c]
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    /// Naive `O(n³)` product. Each entry accumulates `a[r][j] * b[j][c]` in
    /// ascending `j`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let n = self.n;
        let mut out = vec![S::zero(); n * n];
        for (a_row, out_row) in self.data.chunks_exact(n).zip(out.chunks_exact_mut(n)) {
            for (&a, b_row) in a_row.iter().zip(other.data.chunks_exact(n)) {
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self::from_raw(n, out)
    }

    pub fn matvec(&self, x: &DenseVector<S>) -> Result<DenseVector<S>> {
        check_dim(self.n, x.len())?;
        let out: Vec<S> = self
            .data
            .chunks_exact(self.n)
            .map(|row| {
                let mut acc = S::zero();
                for (&a, &b) in row.iter().zip(&x.data) {
                    acc += a * b;
                }
                acc
            })
            .collect();
        DenseVector::from_raw(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(self.get(c, r).conj());
            }
        }
        Self { n, data }
    }

    /// `u v†`, i.e. `out[r][c] = u[r] * conj(v[c])`.
    pub fn outer(u: &DenseVector<S>, v: &DenseVector<S>) -> Result<Self> {
        check_dim(u.len(), v.len())?;
        let n = u.len();
        let mut data = Vec::with_capacity(n * n);
        for &ur in &u.data {
            for &vc in &v.data {
                data.push(ur * vc.conj());
            }
        }
        Self::from_raw(n, data)
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        max_modulus(&self.data)
    }

    /// Scales the matrix so that its largest entry modulus is one.
    pub fn normalized(&self) -> Result<Self> {
        let m = self.max_norm();
        if m == 0.0 {
            return Err(Error::Degenerate("zero matrix cannot be normalized"));
        }
        Self::from_raw(self.n, self.data.iter().map(|s| s.div_real(m)).collect())
    }

    pub fn scaled(&self, factor: S) -> Result<Self> {
        Self::from_raw(self.n, self.data.iter().map(|&s| s * factor).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::from_raw(self.n, data)
    }

    /// `max_norm(self - other)` without materialising the difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_dim(self.n, other.n)?;
        Ok(self.data.iter().zip(&other.data).fold(0.0, |m, (&a, &b)| {
            let d = (a - b).modulus();
            if d > m {
                d
            } else {
                m
            }
        }))
    }

    pub fn trace(&self) -> S {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|s| s.modulus_sqr()).sum()
    }

    /// `true` when `|a[r][c] - conj(a[c][r])| <= tol` for every pair.
    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        let n = self.n;
        (0..n).all(|r| (r..n).all(|c| (self.get(r, c) - self.get(c, r).conj()).modulus() <= tol))
    }
}

impl<S: Scalar> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;

    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.n + c]
    }
}

/// A dense column vector.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseVector<S> {
    data: Vec<S>,
}

impl<S: Scalar> DenseVector<S> {
    pub fn from_vec(data: Vec<S>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidInput("vector dimension must be positive"));
        }
        if !all_finite(&data) {
            return Err(Error::InvalidInput("vector entries must be finite"));
        }
        Ok(Self { data })
    }

    fn from_raw(data: Vec<S>) -> Result<Self> {
        if all_finite(&data) {
            Ok(Self { data })
        } else {
            Err(Error::Overflow("vector entries left the finite range"))
        }
    }

    /// The `i`-th standard basis vector of length `n`.
    ///
    /// # Panics
    ///
    /// If `i >= n`.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(i < n, "basis index out of range");
        let mut data = vec![S::zero(); n];
        data[i] = S::one();
        Self { data }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always `false`; vectors have positive dimension.
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<S> {
        self.data
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        max_modulus(&self.data)
    }

    /// Scales so that the largest entry modulus is one.
    pub fn normalized(&self) -> Result<Self> {
        let m = self.max_norm();
        if m == 0.0 {
            return Err(Error::Degenerate("zero vector cannot be normalized"));
        }
        Ok(Self {
            data: self.data.iter().map(|s| s.div_real(m)).collect(),
        })
    }

    /// Euclidean norm.
    pub fn norm2(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|s| s.modulus_sqr()).sum())
    }

    /// Scales to unit Euclidean norm.
    pub fn normalized2(&self) -> Result<Self> {
        let m = self.norm2();
        if m == 0.0 {
            return Err(Error::Degenerate("zero vector cannot be normalized"));
        }
        Ok(self.scaled_real(1.0 / m))
    }

    /// Inner product `⟨self, other⟩ = Σ conj(self[i]) * other[i]`.
    pub fn dot(&self, other: &Self) -> Result<S> {
        check_dim(self.len(), other.len())?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a.conj() * b)
            .sum())
    }

    pub fn scaled(&self, factor: S) -> Self {
        Self {
            data: self.data.iter().map(|&s| s * factor).collect(),
        }
    }

    fn scaled_real(&self, factor: f64) -> Self {
        Self {
            data: self.data.iter().map(|s| s.scale(factor)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Self::from_raw(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        )
    }

    /// `max_norm(self - other)`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_dim(self.len(), other.len())?;
        Ok(self.data.iter().zip(&other.data).fold(0.0, |m, (&a, &b)| {
            let d = (a - b).modulus();
            if d > m {
                d
            } else {
                m
            }
        }))
    }

    /// Index of the first entry of largest modulus.
    pub fn argmax_modulus(&self) -> usize {
        let mut best = 0;
        let mut best_mod = self.data[0].modulus();
        for (i, s) in self.data.iter().enumerate().skip(1) {
            let m = s.modulus();
            if m > best_mod {
                best = i;
                best_mod = m;
            }
        }
        best
    }

    /// Rotates the vector by a unit phase so that its largest-modulus entry
    /// (lowest index on ties) is real and positive.
    pub fn phase_fixed(&self) -> Self {
        let pivot = self.data[self.argmax_modulus()];
        if pivot == S::zero() {
            return self.clone();
        }
        let mut out = self.scaled(pivot.unit_phase().conj());
        // Clear the rounding residue left on the pivot.
        let i = self.argmax_modulus();
        out.data[i] = S::from_real(pivot.modulus());
        out
    }

    /// Rotates the vector by the unit phase that makes `⟨reference, self⟩`
    /// real and non-negative.
    pub fn aligned_to(&self, reference: &Self) -> Result<Self> {
        let ip = reference.dot(self)?;
        if ip == S::zero() {
            return Ok(self.clone());
        }
        Ok(self.scaled(ip.unit_phase().conj()))
    }
}

impl<S: Scalar> Index<usize> for DenseVector<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.data[i]
    }
}
